"""Topology-preserving, Hamiltonian-adaptive leaf-index assignment.

The optimizer walks a naive ternary tree bottom-up.  Each iteration scans
the active nodes (all children already processed, maximal root distance),
enumerates the allowed index selections for each node's three slots under
the restriction table, scores every selection by the Pauli-weight it
contributes at that node's qubit, and commits the single globally minimal
(node, selection).  Committing a leaf also pins its pair partner's index
at the partner locus, which keeps the leaf-pair set (and with it vacuum
preservation) intact.  The working Hamiltonian is then reduced: committed
indices collapse onto a per-node alias and alias pairs cancel, so each
term ever contributes 0 or 1 weight per node.

Scoring ignores coefficients: terms carry only supports and merge
multiplicities.  The summed per-iteration weights therefore equal the
Pauli-weight of the fully encoded Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .encodings import EnumerationScheme
from .hamiltonians import MajoranaHamiltonian
from .trees import AXES, Locus, TernaryTree, naive_tree


class OptimizeError(ValueError):
    pass


# restriction kinds
FIXED_CHILD = "child"
EVEN_LEAF = "even"
ODD_LEAF = "odd"
EMPTY = "empty"
FIXED_LEAF = "fixed"


@dataclass(frozen=True)
class EdgeRestriction:
    kind: str
    value: int | None = None  # child node id or pinned Majorana index

    def __repr__(self):
        if self.kind == FIXED_CHILD:
            return f"Node({self.value})"
        if self.kind == FIXED_LEAF:
            return f"Fixed({self.value})"
        return {EVEN_LEAF: "EvenLeaf", ODD_LEAF: "OddLeaf", EMPTY: "Empty"}[self.kind]


@dataclass
class LeafPair:
    pair_id: int
    even: Locus
    odd: Locus
    mode: int | None = None

    def partner(self, locus: Locus) -> Locus:
        return self.odd if locus == self.even else self.even


@dataclass
class TraceRow:
    iteration: int
    node_id: int
    selection: tuple[int, int, int]
    weight: int

    def format(self) -> str:
        x, y, z = self.selection
        return (f"iter={self.iteration} node={self.node_id} "
                f"x={x} y={y} z={z} weight={self.weight}")


@dataclass
class OptimizeResult:
    tree: TernaryTree
    scheme: EnumerationScheme
    trace: list[TraceRow]
    total_weight: int


RestrictionTable = dict[Locus, EdgeRestriction]
LeafPairMap = dict[int, LeafPair]


def init_restrictions(naive: TernaryTree) -> tuple[RestrictionTable, LeafPairMap]:
    """Initial per-slot restrictions and the even/odd leaf-pair map.

    Children are pinned in place, the all-Z terminus admits no assignment,
    and each leaf slot carries the index parity of the leaf the naive
    enumeration put there (even parity on X-side loci).
    """
    if not naive.leaves_indexed():
        raise OptimizeError("init_restrictions needs a naive (indexed) tree")
    table: RestrictionTable = {}
    loci_by_index: dict[int, Locus] = {}
    for node in naive.nodes.values():
        for axis in AXES:
            kind = node.slot_kind(axis)
            if kind == "child":
                table[(node.node_id, axis)] = EdgeRestriction(
                    FIXED_CHILD, node.children[axis])
            elif kind == "allz":
                table[(node.node_id, axis)] = EdgeRestriction(EMPTY)
            else:
                idx = node.leaves[axis]
                table[(node.node_id, axis)] = EdgeRestriction(
                    EVEN_LEAF if idx % 2 == 0 else ODD_LEAF)
                loci_by_index[idx] = (node.node_id, axis)
    pairs: LeafPairMap = {}
    for k in range(naive.n_modes):
        pairs[k] = LeafPair(k, even=loci_by_index[2 * k], odd=loci_by_index[2 * k + 1])
    return table, pairs


class Optimizer:
    """Mutable optimizer state; ``run()`` drives the full assignment."""

    def __init__(self, h: MajoranaHamiltonian, tree: TernaryTree):
        if h.n_modes != tree.n_modes:
            raise OptimizeError(
                f"Hamiltonian has {h.n_modes} modes, tree has {tree.n_modes}")
        self.m = tree.n_modes
        self.naive = naive_tree(tree)
        self.tree = self.naive.copy()
        for node in self.tree.nodes.values():
            for axis in node.leaves:
                node.leaves[axis] = None
        self.restrictions, self.pairs = init_restrictions(self.naive)
        self.pair_of: dict[Locus, int] = {}
        for pair in self.pairs.values():
            self.pair_of[pair.even] = pair.pair_id
            self.pair_of[pair.odd] = pair.pair_id
        self.unassigned: list[int] = list(range(self.m))
        self.processed: set[int] = set()
        self._dfs_pos = {nid: i for i, nid in enumerate(tree.dfs_order())}
        self._depth = {nid: tree.depth(nid) for nid in tree.nodes}
        # working Hamiltonian: support tuple -> multiplicity
        self.terms: dict[tuple[int, ...], int] = {}
        for support in h.terms:
            if support:
                self.terms[support] = self.terms.get(support, 0) + 1
        self.allz_alias = 2 * self.m
        self.trace: list[TraceRow] = []
        self.total_weight = 0
        self._membership: np.ndarray | None = None
        self._mult: np.ndarray | None = None

    def node_alias(self, node_id: int) -> int:
        return 2 * self.m + 1 + self.tree.nodes[node_id].qubit

    # -- active nodes -------------------------------------------------------

    def active_nodes(self) -> list[int]:
        """Unprocessed nodes with all children processed, deepest first,
        ordered left-most (DFS with axis priority X < Y < Z) within a depth."""
        eligible = [
            nid for nid, node in self.tree.nodes.items()
            if nid not in self.processed
            and all(c in self.processed for c in node.children.values())
        ]
        if not eligible:
            return []
        deepest = max(self._depth[n] for n in eligible)
        front = [n for n in eligible if self._depth[n] == deepest]
        return sorted(front, key=lambda n: self._dfs_pos[n])

    # -- candidate enumeration ----------------------------------------------

    def allowed_indices(self, node_id: int) -> dict[str, list[int]]:
        """Per-axis candidate indices for one node under the restrictions."""
        out = {}
        for axis in AXES:
            r = self.restrictions[(node_id, axis)]
            if r.kind == FIXED_CHILD:
                out[axis] = [self.node_alias(r.value)]
            elif r.kind == EMPTY:
                out[axis] = [self.allz_alias]
            elif r.kind == FIXED_LEAF:
                out[axis] = [r.value]
            elif r.kind == EVEN_LEAF:
                out[axis] = [2 * m for m in self.unassigned]
            else:
                out[axis] = [2 * m + 1 for m in self.unassigned]
        return out

    def _free_axes(self, node_id: int) -> list[str]:
        return [a for a in AXES
                if self.restrictions[(node_id, a)].kind in (EVEN_LEAF, ODD_LEAF)]

    def candidate_tuples(self, node_id: int) -> list[tuple[int, int, int]]:
        """All admissible (x, y, z) selections, ascending lexicographic.

        Free X and Y slots always form one naive leaf pair and are chosen
        jointly (one fermionic mode feeds both); a free Z slot belongs to a
        different pair and must take a different mode.
        """
        options = self.allowed_indices(node_id)
        free = self._free_axes(node_id)
        xy_free = "x" in free and "y" in free
        if xy_free and self.pair_of[(node_id, "x")] != self.pair_of[(node_id, "y")]:
            raise OptimizeError(
                f"free X and Y slots of node {node_id} are not a naive pair")
        tuples = []
        if xy_free:
            xy_choices = [(2 * m, 2 * m + 1) for m in self.unassigned]
            if "z" in free:
                parity = 0 if self.restrictions[(node_id, "z")].kind == EVEN_LEAF else 1
                for x, y in xy_choices:
                    for mz in self.unassigned:
                        if mz != x // 2:
                            tuples.append((x, y, 2 * mz + parity))
            else:
                z = options["z"][0]
                tuples = [(x, y, z) for x, y in xy_choices]
        else:
            x_opts, y_opts, z_opts = options["x"], options["y"], options["z"]
            frees = set(free)
            for x in x_opts:
                for y in y_opts:
                    if "x" in frees and "y" in frees:
                        raise OptimizeError("unreachable: unpaired free X/Y")
                    for z in z_opts:
                        modes = [v // 2 for a, v in (("x", x), ("y", y), ("z", z))
                                 if a in frees]
                        if len(set(modes)) == len(modes):
                            tuples.append((x, y, z))
        return tuples

    # -- weight evaluation ----------------------------------------------------

    def _rebuild_arrays(self):
        n_terms = len(self.terms)
        size = 3 * self.m + 2
        membership = np.zeros((size, max(n_terms, 1)), dtype=np.uint8)
        mult = np.zeros(max(n_terms, 1), dtype=np.int64)
        for t, (support, k) in enumerate(self.terms.items()):
            mult[t] = k
            for idx in support:
                membership[idx, t] = 1
        self._membership = membership
        self._mult = mult

    def candidate_weight(self, node_id: int, x: int, y: int, z: int) -> int:
        """Pauli-weight node ``node_id`` contributes under selection (x,y,z).

        A term counts once when exactly one or two of the selected indices
        occur in it; zero or all three reduce to the identity on this
        node's qubit.  Coefficients are ignored.  Leaf candidates must
        carry the parity their slot's restriction demands.
        """
        for axis, idx in zip(AXES, (x, y, z)):
            r = self.restrictions[(node_id, axis)]
            if r.kind == EVEN_LEAF and idx % 2 != 0:
                raise OptimizeError(
                    f"candidate {idx} violates even-parity slot ({node_id},{axis})")
            if r.kind == ODD_LEAF and idx % 2 != 1:
                raise OptimizeError(
                    f"candidate {idx} violates odd-parity slot ({node_id},{axis})")
        if self._membership is None:
            self._rebuild_arrays()
        cands = np.array([[x, y, z]], dtype=np.int64)
        return int(_kernels.candidate_weights(self._membership, self._mult, cands)[0])

    # -- iteration ------------------------------------------------------------

    def step(self) -> TraceRow:
        active = self.active_nodes()
        if not active:
            raise OptimizeError("no active nodes left")
        self._rebuild_arrays()
        best: tuple[int, int, tuple[int, int, int]] | None = None
        for node_id in active:
            tuples = self.candidate_tuples(node_id)
            if not tuples:
                raise OptimizeError(f"node {node_id} has no admissible selection")
            cands = np.array(tuples, dtype=np.int64)
            weights = _kernels.candidate_weights(self._membership, self._mult, cands)
            k = int(np.argmin(weights))
            w = int(weights[k])
            if best is None or w < best[0]:
                best = (w, node_id, tuples[k])
        weight, node_id, selection = best
        self._commit(node_id, selection)
        row = TraceRow(len(self.trace), node_id, selection, weight)
        self.trace.append(row)
        self.total_weight += weight
        return row

    def _commit(self, node_id: int, selection: tuple[int, int, int]):
        node = self.tree.nodes[node_id]
        committed_modes = []
        for axis, idx in zip(AXES, selection):
            r = self.restrictions[(node_id, axis)]
            if r.kind in (FIXED_CHILD, EMPTY):
                continue
            node.leaves[axis] = idx
            locus = (node_id, axis)
            pair = self.pairs[self.pair_of[locus]]
            if r.kind == FIXED_LEAF:
                continue  # mode already accounted for when the partner committed
            mode = idx // 2
            pair.mode = mode
            committed_modes.append(mode)
            partner = pair.partner(locus)
            if partner[0] != node_id:
                # remote half of the pair: pin it now (vacuum preservation)
                if partner[0] in self.processed:
                    raise OptimizeError("pair partner already processed")
                self.restrictions[partner] = EdgeRestriction(FIXED_LEAF, idx ^ 1)
                self.tree.nodes[partner[0]].leaves[partner[1]] = idx ^ 1
        self.unassigned = [m for m in self.unassigned if m not in committed_modes]
        self.processed.add(node_id)
        self._reduce(node_id, selection)

    def _reduce(self, node_id: int, selection: tuple[int, int, int]):
        alias = self.node_alias(node_id)
        targets = set(selection) - {self.allz_alias}
        new_terms: dict[tuple[int, ...], int] = {}
        for support, mult in self.terms.items():
            hits = sum(1 for i in support if i in targets)
            if hits == 0:
                new_terms[support] = new_terms.get(support, 0) + mult
                continue
            rest = [i for i in support if i not in targets]
            if hits % 2 == 1:
                rest.append(alias)
                rest.sort()
            if rest:
                key = tuple(rest)
                new_terms[key] = new_terms.get(key, 0) + mult
        self.terms = new_terms
        self._membership = None

    def run(self) -> OptimizeResult:
        for _ in range(self.m):
            self.step()
        if self.unassigned or len(self.processed) != self.m:
            raise OptimizeError("optimization ended with unassigned modes")
        if not self.tree.leaves_indexed():
            raise OptimizeError("optimization left unindexed leaves")
        mode_assignment = tuple(self.pairs[k].mode for k in range(self.m))
        scheme = EnumerationScheme(mode_assignment, tuple(range(self.m)))
        return OptimizeResult(self.tree, scheme, self.trace, self.total_weight)


def optimize(h: MajoranaHamiltonian, tree: TernaryTree) -> OptimizeResult:
    """Run TOPP-HATT on a tree structure; see the module docstring."""
    return Optimizer(h, tree).run()


def write_trace(trace: list[TraceRow], path):
    with open(path, "w") as f:
        for row in trace:
            f.write(row.format() + "\n")
