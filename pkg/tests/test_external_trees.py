"""Externally produced (already indexed) tree files as optimizer input."""

import numpy as np

from ferrtree.baselines import EnumerationEvaluator
from ferrtree.encodings import is_vacuum_preserving, strings_from_tree, validate
from ferrtree.topphatt import optimize
from ferrtree.trees import build_standard, load_tree, naive_tree, save_tree

from test_topphatt import random_majorana


def test_naive_tree_discards_existing_indices():
    t = naive_tree(build_standard("bk", 4))
    again = naive_tree(t)
    for nid in t.nodes:
        assert again.nodes[nid].leaves == t.nodes[nid].leaves


def test_optimize_accepts_indexed_tree_file(tmp_path):
    # an optimized tree saved to disk is a valid structural input again:
    # only its shape is consumed, its enumeration is re-derived
    h = random_majorana(5, np.random.default_rng(21))
    first = optimize(h, build_standard("jkmn", 5))
    path = tmp_path / "opt.json"
    save_tree(first.tree, path)
    loaded = load_tree(path)
    assert loaded.leaves_indexed()
    second = optimize(h, loaded)
    enc = strings_from_tree(second.tree)
    assert validate(enc).valid and is_vacuum_preserving(enc)
    assert second.total_weight == first.total_weight


def test_scatter_treats_file_enumeration_as_reference(tmp_path):
    # the evaluator keeps a loaded tree's own enumeration as the reference
    # point (externally optimized inputs mark their own result)
    h = random_majorana(5, np.random.default_rng(22))
    res = optimize(h, build_standard("jw", 5))
    path = tmp_path / "opt.json"
    save_tree(res.tree, path)
    ev = EnumerationEvaluator(load_tree(path), h)
    assert ev.evaluate(np.arange(5))[0] == res.total_weight
