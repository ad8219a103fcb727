"""Ternary-tree construction: standard families, device-derived trees, I/O.

A tree has one node per fermionic mode.  Every node owns three outward
slots (X, Y, Z); a slot holds a child node, a leaf (optionally carrying a
Majorana index), or the all-Z terminus.  Exactly one terminus exists, at
the end of the all-Z path from the root, leaving 2M leaf slots.

The naive enumeration assigns mode m's Majorana pair to the leaves that
originate from the X and Y slots of the node with qubit index m; a leaf
displaced by a child re-appears at the end of that child's Z-descent.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

AXES = ("x", "y", "z")


class TreeError(ValueError):
    pass


class TreeFileError(TreeError):
    pass


@dataclass
class TreeNode:
    node_id: int
    qubit: int
    children: dict[str, int] = field(default_factory=dict)
    leaves: dict[str, int | None] = field(default_factory=dict)
    allz_axis: str | None = None

    def slot_kind(self, axis: str) -> str:
        if axis in self.children:
            return "child"
        if axis == self.allz_axis:
            return "allz"
        return "leaf"

    def copy(self) -> "TreeNode":
        return TreeNode(self.node_id, self.qubit, dict(self.children),
                        dict(self.leaves), self.allz_axis)


Locus = tuple[int, str]  # (node_id, axis)


class TernaryTree:
    def __init__(self, nodes: list[TreeNode], root: int):
        self.nodes = {n.node_id: n for n in nodes}
        self.root = root
        if len(self.nodes) != len(nodes):
            raise TreeError("duplicate node ids")
        self._fill_slots()
        self.parent: dict[int, Locus] = {}
        for n in nodes:
            for axis, child in n.children.items():
                if child in self.parent:
                    raise TreeError(f"node {child} has two parents")
                self.parent[child] = (n.node_id, axis)
        self.validate_structure()

    def _fill_slots(self):
        """Mark the all-Z terminus and default unindexed leaves."""
        node = self.nodes.get(self.root)
        if node is None:
            raise TreeError(f"root {self.root} not among nodes")
        while "z" in node.children:
            node = self.nodes[node.children["z"]]
        if node.allz_axis is None:
            node.allz_axis = "z"
        for n in self.nodes.values():
            for axis in AXES:
                if axis not in n.children and axis != n.allz_axis:
                    n.leaves.setdefault(axis, None)

    # -- structure ---------------------------------------------------------

    @property
    def n_modes(self) -> int:
        return len(self.nodes)

    def validate_structure(self):
        m = self.n_modes
        qubits = sorted(n.qubit for n in self.nodes.values())
        if qubits != list(range(m)):
            raise TreeError("qubit indices are not a bijection onto [0, M)")
        # connectivity and acyclicity from the root
        seen = set()
        stack = [self.root]
        while stack:
            nid = stack.pop()
            if nid in seen:
                raise TreeError("cycle detected")
            seen.add(nid)
            node = self.nodes.get(nid)
            if node is None:
                raise TreeError(f"edge to unknown node {nid}")
            stack.extend(node.children.values())
        if seen != set(self.nodes):
            raise TreeError("tree is not connected")
        termini = [(n.node_id, n.allz_axis) for n in self.nodes.values()
                   if n.allz_axis is not None]
        if len(termini) != 1:
            raise TreeError(f"expected exactly one all-Z terminus, found {len(termini)}")
        tnode, taxis = termini[0]
        node = self.nodes[self.root]
        while "z" in node.children:
            node = self.nodes[node.children["z"]]
        if (node.node_id, taxis) != (tnode, taxis) or node.allz_axis != taxis:
            raise TreeError("all-Z terminus is not at the end of the all-Z path")
        n_leaves = sum(len(n.leaves) for n in self.nodes.values())
        if n_leaves != 2 * m:
            raise TreeError(f"expected {2 * m} leaf slots, found {n_leaves}")
        for n in self.nodes.values():
            kinds = {a: n.slot_kind(a) for a in AXES}
            for axis in n.children:
                if axis in n.leaves:
                    raise TreeError(f"slot ({n.node_id},{axis}) is both child and leaf")
            if n.allz_axis is not None and n.allz_axis in n.leaves:
                raise TreeError(f"terminus slot ({n.node_id},{n.allz_axis}) also a leaf")
            del kinds

    def copy(self) -> "TernaryTree":
        return TernaryTree([n.copy() for n in self.nodes.values()], self.root)

    def depth(self, node_id: int) -> int:
        d = 0
        while node_id != self.root:
            node_id = self.parent[node_id][0]
            d += 1
        return d

    def dfs_order(self) -> list[int]:
        """Preorder with axis priority X < Y < Z ("left-most first")."""
        order = []
        stack = [self.root]
        while stack:
            nid = stack.pop()
            order.append(nid)
            node = self.nodes[nid]
            for axis in reversed(AXES):
                if axis in node.children:
                    stack.append(node.children[axis])
        return order

    def leaf_loci(self) -> list[Locus]:
        return [(n.node_id, axis) for n in self.nodes.values() for axis in n.leaves]

    def path_to_root(self, node_id: int, axis: str) -> list[tuple[int, str]]:
        """(qubit, axis letter) pairs from a slot up to the root."""
        node = self.nodes[node_id]
        path = [(node.qubit, axis)]
        nid = node_id
        while nid != self.root:
            pid, paxis = self.parent[nid]
            path.append((self.nodes[pid].qubit, paxis))
            nid = pid
        return path

    def descend_z(self, node_id: int) -> Locus:
        """Follow Z-children from a node down to its terminal Z slot."""
        node = self.nodes[node_id]
        while "z" in node.children:
            node = self.nodes[node.children["z"]]
        return (node.node_id, "z")

    def node_by_qubit(self, qubit: int) -> TreeNode:
        for n in self.nodes.values():
            if n.qubit == qubit:
                return n
        raise TreeError(f"no node with qubit {qubit}")

    def leaves_indexed(self) -> bool:
        return all(idx is not None
                   for n in self.nodes.values() for idx in n.leaves.values())


# ---------------------------------------------------------------------------
# standard families


def build_standard(kind: str, n_modes: int) -> TernaryTree:
    """Standard tree shapes: JW and Parity chains, BK binary, JKMN ternary."""
    if n_modes < 1:
        raise TreeError("n_modes must be >= 1")
    kind = kind.lower()
    children: dict[int, dict[str, int]] = {i: {} for i in range(n_modes)}
    if kind == "jw":
        for i in range(n_modes - 1):
            children[i]["z"] = i + 1
    elif kind in ("parity", "pe"):
        for i in range(n_modes - 1):
            children[i]["x"] = i + 1
    elif kind == "bk":
        # one-node stem, then a complete binary tree heap-ordered over 1..M-1
        # with X = left child (2k) and Z = right child (2k+1); reproduces the
        # 4-mode layout of the restriction-table fixture exactly
        if n_modes >= 2:
            children[0]["x"] = 1
        for k in range(1, n_modes):
            if 2 * k < n_modes:
                children[k]["x"] = 2 * k
            if 2 * k + 1 < n_modes:
                children[k]["z"] = 2 * k + 1
    elif kind == "jkmn":
        for k in range(n_modes):
            for axis, c in zip(AXES, (3 * k + 1, 3 * k + 2, 3 * k + 3)):
                if c < n_modes:
                    children[k][axis] = c
    else:
        raise TreeError(f"unknown standard tree kind {kind!r}")
    nodes = [TreeNode(i, i, children[i]) for i in range(n_modes)]
    return TernaryTree(nodes, root=0)


# ---------------------------------------------------------------------------
# naive enumeration


def naive_tree(tree: TernaryTree) -> TernaryTree:
    """Populate leaf indices with the naive (mode = qubit) enumeration.

    Mode m's pair starts on the X and Y slots of the node with qubit m; a
    slot occupied by a child sends the leaf to the end of that child's
    Z-descent.  The even index 2m always lands on the X-side locus, which
    makes every encoded number operator annihilate the all-zeros state.
    Existing leaf indices (e.g. from an externally optimized tree file)
    are discarded: only the structure matters here.
    """
    out = tree.copy()
    for node in out.nodes.values():
        for axis in node.leaves:
            node.leaves[axis] = None
    for node in tree.nodes.values():
        m = node.qubit
        for axis, idx in (("x", 2 * m), ("y", 2 * m + 1)):
            locus = _resolve_leaf(out, node.node_id, axis)
            lnode, laxis = locus
            if out.nodes[lnode].leaves.get(laxis, 0) is not None:
                raise TreeError(f"leaf slot {locus} resolved twice")
            out.nodes[lnode].leaves[laxis] = idx
    if not out.leaves_indexed():
        raise TreeError("naive enumeration left unindexed leaves")
    return out


def _resolve_leaf(tree: TernaryTree, node_id: int, axis: str) -> Locus:
    node = tree.nodes[node_id]
    if axis in node.children:
        return tree.descend_z(node.children[axis])
    if axis == node.allz_axis:
        raise TreeError("pair leaf resolved onto the all-Z terminus")
    return (node_id, axis)


def leaf_origin_axis(tree: TernaryTree, node_id: int, axis: str) -> str:
    """The X/Y slot a leaf slot originates from in the naive construction.

    A leaf sitting on a Z slot was displaced down from the X or Y slot of
    the nearest ancestor along the Z-descent; its origin side fixes the
    index parity (X side even, Y side odd).
    """
    if axis != "z":
        return axis
    nid = node_id
    while True:
        pid, paxis = tree.parent[nid]
        if paxis != "z":
            return paxis
        nid = pid


# ---------------------------------------------------------------------------
# device graphs and the Bonsai construction


@dataclass
class DeviceGraph:
    n_qubits: int
    edges: set[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for a, b in self.edges:
            if a == b or not (0 <= a < self.n_qubits and 0 <= b < self.n_qubits):
                raise TreeError(f"invalid device edge ({a},{b})")
            norm.add((min(a, b), max(a, b)))
        self.edges = norm

    def neighbors(self, q: int) -> list[int]:
        out = [b for a, b in self.edges if a == q]
        out += [a for a, b in self.edges if b == q]
        return sorted(out)

    def degree(self, q: int) -> int:
        return len(self.neighbors(q))

    def is_connected(self) -> bool:
        if self.n_qubits == 0:
            return False
        seen = {0}
        queue = deque([0])
        adj = {q: self.neighbors(q) for q in range(self.n_qubits)}
        while queue:
            q = queue.popleft()
            for nb in adj[q]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return len(seen) == self.n_qubits

    def eccentricity(self, source: int) -> int:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            q = queue.popleft()
            for nb in self.neighbors(q):
                if nb not in dist:
                    dist[nb] = dist[q] + 1
                    queue.append(nb)
        return max(dist.values())


def heavy_hex_graph() -> DeviceGraph:
    """A 36-qubit heavy-hex style lattice: three chains of 10 joined by rungs."""
    edges = set()
    for r in range(3):
        for c in range(9):
            edges.add((10 * r + c, 10 * r + c + 1))
    rungs = [(0, 10), (4, 14), (8, 18), (11, 21), (15, 25), (19, 29)]
    for i, (top, bottom) in enumerate(rungs):
        rung = 30 + i
        edges.add((top, rung))
        edges.add((rung, bottom))
    return DeviceGraph(36, edges)


def build_bonsai(graph: DeviceGraph, heuristic: str = "heterogeneous",
                 root: int | None = None, n_modes: int | None = None,
                 ) -> tuple[TernaryTree, list[int]]:
    """Extract a ternary tree as a spanning subgraph of a device graph.

    BFS from the root adopts unvisited neighbours in ascending qubit order,
    at most 3 children at the root and 2 elsewhere.  ``heuristic`` selects
    the Pauli-axis labelling policy: ``heterogeneous`` hands the Z axis to
    the highest-degree child, ``homogeneous`` cycles the axes with depth.
    With ``n_modes`` set, only the first ``n_modes`` BFS-adopted qubits
    form the tree (a connected subtree); tree qubit indices are
    relabelled 0..M-1 in adoption order and the returned list maps them
    back to device qubits.
    """
    if not graph.is_connected():
        raise TreeError("device graph is not connected")
    if heuristic not in ("heterogeneous", "homogeneous"):
        raise TreeError(f"unknown bonsai heuristic {heuristic!r}")
    if root is None:
        root = min(range(graph.n_qubits), key=lambda q: (graph.eccentricity(q), q))
    elif not 0 <= root < graph.n_qubits:
        raise TreeError(f"root {root} out of range")
    target = graph.n_qubits if n_modes is None else n_modes
    if not 1 <= target <= graph.n_qubits:
        raise TreeError(f"cannot build a {target}-node tree from {graph.n_qubits} qubits")

    adoption = [root]
    visited = {root}
    depths = {root: 0}
    child_lists: dict[int, list[int]] = {root: []}
    queue = deque([root])
    while queue and len(adoption) < target:
        q = queue.popleft()
        cap = 3 if q == root else 2
        for nb in graph.neighbors(q):
            if nb in visited or len(child_lists[q]) >= cap:
                continue
            visited.add(nb)
            adoption.append(nb)
            depths[nb] = depths[q] + 1
            child_lists[q].append(nb)
            child_lists[nb] = []
            queue.append(nb)
            if len(adoption) == target:
                break
    if len(adoption) < target:
        raise TreeError("device graph cannot span a ternary tree under the degree cap")

    index_of = {dev: i for i, dev in enumerate(adoption)}
    nodes = []
    for dev in adoption:
        children = {}
        kids = child_lists[dev]
        if heuristic == "heterogeneous":
            ranked = sorted(kids, key=lambda c: (-graph.degree(c), c))
            for axis, c in zip(("z", "x", "y"), ranked):
                children[axis] = index_of[c]
        else:
            for i, c in enumerate(sorted(kids)):
                children[AXES[(depths[dev] + i) % 3]] = index_of[c]
        i = index_of[dev]
        nodes.append(TreeNode(i, i, children))
    return TernaryTree(nodes, root=0), adoption


# ---------------------------------------------------------------------------
# file formats


def save_tree(tree: TernaryTree, path):
    nodes_doc = []
    for nid in sorted(tree.nodes):
        n = tree.nodes[nid]
        entry: dict = {"id": n.node_id, "qubit": n.qubit}
        for axis in AXES:
            kind = n.slot_kind(axis)
            if kind == "child":
                entry[axis] = {"child": n.children[axis]}
            elif kind == "allz":
                entry[axis] = "allz"
            else:
                entry[axis] = {"leaf": n.leaves[axis]}
        nodes_doc.append(entry)
    doc = {"format": "ttree-1", "n_modes": tree.n_modes, "root": tree.root,
           "nodes": nodes_doc}
    with open(path, "w") as f:
        json.dump(doc, f)


def load_tree(path) -> TernaryTree:
    try:
        with open(path) as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise TreeFileError(f"{path}: {exc}") from exc
    if doc.get("format") != "ttree-1":
        raise TreeFileError(f"{path}: not a ttree-1 file")
    n_modes = doc.get("n_modes")
    nodes = []
    allz_seen = []
    for entry in doc.get("nodes", []):
        try:
            node = TreeNode(int(entry["id"]), int(entry["qubit"]))
            for axis in AXES:
                slot = entry[axis]
                if slot == "allz":
                    node.allz_axis = axis
                    allz_seen.append((node.node_id, axis))
                elif "child" in slot:
                    node.children[axis] = int(slot["child"])
                elif "leaf" in slot:
                    leaf = slot["leaf"]
                    node.leaves[axis] = None if leaf is None else int(leaf)
                else:
                    raise TreeFileError(f"{path}: bad slot {slot!r}")
        except (KeyError, TypeError) as exc:
            raise TreeFileError(f"{path}: malformed node entry {entry!r}") from exc
        nodes.append(node)
    if len(allz_seen) != 1:
        raise TreeFileError(
            f"{path}: expected exactly one all-Z terminus, found {len(allz_seen)}")
    if n_modes != len(nodes):
        raise TreeFileError(f"{path}: n_modes does not match node count")
    try:
        return TernaryTree(nodes, root=doc.get("root", 0))
    except TreeError as exc:
        raise TreeFileError(f"{path}: {exc}") from exc


def save_device(graph: DeviceGraph, path):
    doc = {"format": "device-1", "n_qubits": graph.n_qubits,
           "edges": sorted([a, b] for a, b in graph.edges)}
    with open(path, "w") as f:
        json.dump(doc, f)


def load_device(path) -> DeviceGraph:
    try:
        with open(path) as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise TreeFileError(f"{path}: {exc}") from exc
    if doc.get("format") != "device-1":
        raise TreeFileError(f"{path}: not a device-1 file")
    try:
        return DeviceGraph(int(doc["n_qubits"]),
                           {(int(a), int(b)) for a, b in doc["edges"]})
    except (KeyError, TypeError, TreeError) as exc:
        raise TreeFileError(f"{path}: {exc}") from exc
