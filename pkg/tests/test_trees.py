import json

import pytest

from ferrtree.trees import (
    DeviceGraph, TreeError, TreeFileError, build_bonsai, build_standard,
    heavy_hex_graph, leaf_origin_axis, load_device, load_tree, naive_tree,
    save_device, save_tree)
from ferrtree.encodings import strings_from_tree, validate, is_vacuum_preserving

from conftest import EQ5_JW4


class TestStandard:
    def test_jw4_reproduces_reference_strings(self):
        enc = strings_from_tree(naive_tree(build_standard("jw", 4)))
        assert enc.labels() == EQ5_JW4

    def test_bk4_structure(self):
        t = build_standard("bk", 4)
        assert t.nodes[0].children == {"x": 1}
        assert t.nodes[1].children == {"x": 2, "z": 3}
        assert t.nodes[2].children == {} and t.nodes[3].children == {}
        assert t.nodes[0].allz_axis == "z"

    @pytest.mark.parametrize("kind", ["jw", "parity", "bk", "jkmn"])
    def test_single_node(self, kind):
        t = build_standard(kind, 1)
        node = t.nodes[0]
        assert sorted(node.leaves) == ["x", "y"]
        assert node.allz_axis == "z"

    def test_zero_modes_rejected(self):
        with pytest.raises(TreeError):
            build_standard("jw", 0)

    def test_unknown_kind(self):
        with pytest.raises(TreeError):
            build_standard("huffman", 4)

    @pytest.mark.parametrize("kind", ["jw", "parity", "bk", "jkmn"])
    @pytest.mark.parametrize("m", [1, 2, 3, 5, 8, 13])
    def test_structural_invariants(self, kind, m):
        t = build_standard(kind, m)
        assert t.n_modes == m
        assert len(t.leaf_loci()) == 2 * m
        assert sum(n.allz_axis is not None for n in t.nodes.values()) == 1


class TestNaive:
    def test_jw_leaf_order(self):
        t = naive_tree(build_standard("jw", 4))
        for k in range(4):
            assert t.nodes[k].leaves["x"] == 2 * k
            assert t.nodes[k].leaves["y"] == 2 * k + 1

    def test_bk4_pairing_matches_reference_table(self):
        t = naive_tree(build_standard("bk", 4))
        leaves = {(nid, a): v for nid in t.nodes
                  for a, v in t.nodes[nid].leaves.items()}
        assert leaves == {(0, "y"): 1, (1, "y"): 3, (2, "x"): 4, (2, "y"): 5,
                          (2, "z"): 2, (3, "x"): 6, (3, "y"): 7, (3, "z"): 0}

    def test_single_node(self):
        t = naive_tree(build_standard("jw", 1))
        assert t.nodes[0].leaves == {"x": 0, "y": 1}

    def test_origin_axis(self):
        t = build_standard("bk", 4)
        assert leaf_origin_axis(t, 3, "z") == "x"  # displaced from root's X
        assert leaf_origin_axis(t, 2, "z") == "x"
        assert leaf_origin_axis(t, 0, "y") == "y"

    @pytest.mark.parametrize("kind", ["jw", "parity", "bk", "jkmn"])
    def test_vacuum_preserving(self, kind):
        for m in (1, 2, 4, 6):
            enc = strings_from_tree(naive_tree(build_standard(kind, m)))
            assert is_vacuum_preserving(enc), (kind, m)


class TestBonsai:
    def test_star_center_root(self):
        g = DeviceGraph(4, {(0, 1), (0, 2), (0, 3)})
        tree, devmap = build_bonsai(g, "heterogeneous", root=0)
        assert len(tree.nodes[0].children) == 3
        assert max(tree.depth(n) for n in tree.nodes) == 1

    def test_path_graph_chain(self):
        g = DeviceGraph(5, {(i, i + 1) for i in range(4)})
        tree, devmap = build_bonsai(g, "homogeneous", root=0)
        assert max(tree.depth(n) for n in tree.nodes) == 4
        assert devmap == [0, 1, 2, 3, 4]

    @pytest.mark.parametrize("heuristic", ["heterogeneous", "homogeneous"])
    def test_heavy_hex_edges_subset_of_device(self, heuristic):
        g = heavy_hex_graph()
        tree, devmap = build_bonsai(g, heuristic)
        for nid, node in tree.nodes.items():
            for child in node.children.values():
                a, b = devmap[nid], devmap[child]
                assert (min(a, b), max(a, b)) in g.edges
        enc = strings_from_tree(naive_tree(tree))
        rep = validate(enc)
        assert rep.valid and rep.constant_one_nto
        assert is_vacuum_preserving(enc)

    def test_truncated_subtree(self):
        g = heavy_hex_graph()
        tree, devmap = build_bonsai(g, "heterogeneous", n_modes=14)
        assert tree.n_modes == 14 and len(devmap) == 14

    def test_degree_caps(self):
        g = heavy_hex_graph()
        tree, _ = build_bonsai(g, "homogeneous")
        for nid, node in tree.nodes.items():
            cap = 3 if nid == tree.root else 2
            assert len(node.children) <= cap

    def test_disconnected_rejected(self):
        g = DeviceGraph(4, {(0, 1), (2, 3)})
        with pytest.raises(TreeError):
            build_bonsai(g, "heterogeneous")

    def test_root_out_of_range(self):
        g = DeviceGraph(2, {(0, 1)})
        with pytest.raises(TreeError):
            build_bonsai(g, "heterogeneous", root=5)

    def test_unspannable_star(self):
        # a 6-leaf star cannot host a ternary tree (root cap 3)
        g = DeviceGraph(7, {(0, k) for k in range(1, 7)})
        with pytest.raises(TreeError):
            build_bonsai(g, "heterogeneous", root=0)


class TestFiles:
    def test_round_trip(self, tmp_path):
        t = naive_tree(build_standard("jkmn", 5))
        path = tmp_path / "t.json"
        save_tree(t, path)
        back = load_tree(path)
        assert back.n_modes == 5
        for nid in t.nodes:
            assert back.nodes[nid].children == t.nodes[nid].children
            assert back.nodes[nid].leaves == t.nodes[nid].leaves

    def test_two_termini_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        doc = {"format": "ttree-1", "n_modes": 2, "root": 0, "nodes": [
            {"id": 0, "qubit": 0, "x": {"child": 1}, "y": {"leaf": None},
             "z": "allz"},
            {"id": 1, "qubit": 1, "x": {"leaf": None}, "y": {"leaf": None},
             "z": "allz"},
        ]}
        path.write_text(json.dumps(doc))
        with pytest.raises(TreeFileError, match="terminus"):
            load_tree(path)

    def test_duplicate_qubit_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        doc = {"format": "ttree-1", "n_modes": 2, "root": 0, "nodes": [
            {"id": 0, "qubit": 0, "x": {"child": 1}, "y": {"leaf": None},
             "z": {"leaf": None}},
            {"id": 1, "qubit": 0, "x": {"leaf": None}, "y": {"leaf": None},
             "z": "allz"},
        ]}
        path.write_text(json.dumps(doc))
        with pytest.raises(TreeFileError, match="bijection"):
            load_tree(path)

    def test_cycle_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        doc = {"format": "ttree-1", "n_modes": 2, "root": 0, "nodes": [
            {"id": 0, "qubit": 0, "x": {"child": 1}, "y": {"leaf": None},
             "z": {"leaf": None}},
            {"id": 1, "qubit": 1, "x": {"child": 0}, "y": {"leaf": None},
             "z": "allz"},
        ]}
        path.write_text(json.dumps(doc))
        with pytest.raises(TreeFileError):
            load_tree(path)

    def test_jkmn5_fixture_depths(self, tmp_path):
        # hand-written five-mode complete ternary tree: only node 4 at depth 2
        doc = {"format": "ttree-1", "n_modes": 5, "root": 0, "nodes": [
            {"id": 0, "qubit": 0, "x": {"child": 1}, "y": {"child": 2},
             "z": {"child": 3}},
            {"id": 1, "qubit": 1, "x": {"child": 4}, "y": {"leaf": None},
             "z": {"leaf": None}},
            {"id": 2, "qubit": 2, "x": {"leaf": None}, "y": {"leaf": None},
             "z": {"leaf": None}},
            {"id": 3, "qubit": 3, "x": {"leaf": None}, "y": {"leaf": None},
             "z": "allz"},
            {"id": 4, "qubit": 4, "x": {"leaf": None}, "y": {"leaf": None},
             "z": {"leaf": None}},
        ]}
        path = tmp_path / "jkmn5.json"
        path.write_text(json.dumps(doc))
        t = load_tree(path)
        assert t.depth(4) == 2
        assert max(t.depth(n) for n in t.nodes) == 2
        built = build_standard("jkmn", 5)
        assert {n: built.nodes[n].children for n in built.nodes} == \
            {n: t.nodes[n].children for n in t.nodes}

    def test_device_round_trip(self, tmp_path):
        g = heavy_hex_graph()
        path = tmp_path / "d.json"
        save_device(g, path)
        back = load_device(path)
        assert back.n_qubits == 36 and back.edges == g.edges
