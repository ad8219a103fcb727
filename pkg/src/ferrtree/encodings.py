"""Majorana-string encodings: generation from trees, validation, MaxNTO.

An encoding is an ordered list of 2M Pauli strings, index j holding the
image of the j-th Majorana operator.  Validity requires pairwise
anticommutation (odd non-trivial overlap counts) plus joint linear and
algebraic independence, which for Pauli strings reduces to full GF(2) rank
of the 2M x 2M symplectic bit matrix: subset products XOR mask vectors, so
two subsets share a product (up to phase) exactly when the rows are
linearly dependent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .pauli import PauliString
from .trees import TernaryTree

__all__ = [
    "Encoding", "EnumerationScheme", "ValidityReport", "EncodingError",
    "strings_from_tree", "apply_enumeration", "apply_enumeration_tree",
    "validate", "nto_matrix", "build_maxnto", "gf2_rank", "jw_strings",
    "vacuum_defects", "is_vacuum_preserving",
]


class EncodingError(ValueError):
    pass


@dataclass
class Encoding:
    n_modes: int
    strings: list[PauliString]

    @property
    def n_qubits(self) -> int:
        return self.strings[0].n_qubits if self.strings else self.n_modes

    def labels(self) -> list[str]:
        return [s.to_label() for s in self.strings]

    def save(self, path):
        doc = {"format": "encoding-1", "n_modes": self.n_modes,
               "strings": self.labels()}
        with open(path, "w") as f:
            json.dump(doc, f)

    @classmethod
    def load(cls, path) -> "Encoding":
        try:
            with open(path) as f:
                doc = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise EncodingError(f"{path}: {exc}") from exc
        if doc.get("format") != "encoding-1":
            raise EncodingError(f"{path}: not an encoding-1 file")
        strings = [PauliString.from_label(lbl) for lbl in doc["strings"]]
        return cls(doc["n_modes"], strings)


@dataclass
class EnumerationScheme:
    """Bijections pair -> fermionic mode and string position -> qubit."""

    mode_assignment: tuple[int, ...]
    qubit_assignment: tuple[int, ...]

    @classmethod
    def identity(cls, n_modes: int) -> "EnumerationScheme":
        ident = tuple(range(n_modes))
        return cls(ident, ident)

    def check(self, n_modes: int):
        for name, perm in (("mode_assignment", self.mode_assignment),
                           ("qubit_assignment", self.qubit_assignment)):
            if sorted(perm) != list(range(n_modes)):
                raise EncodingError(f"{name} is not a bijection on [0,{n_modes})")


def strings_from_tree(tree: TernaryTree) -> Encoding:
    """Read the 2M strings off an indexed tree, one per leaf-to-root path."""
    if not tree.leaves_indexed():
        raise EncodingError("tree has unindexed leaves")
    m = tree.n_modes
    strings: list[PauliString | None] = [None] * (2 * m)
    for node in tree.nodes.values():
        for axis, idx in node.leaves.items():
            x = z = 0
            for qubit, letter in tree.path_to_root(node.node_id, axis):
                bit = 1 << qubit
                if letter == "x":
                    x |= bit
                elif letter == "y":
                    x |= bit
                    z |= bit
                else:
                    z |= bit
            if not 0 <= idx < 2 * m or strings[idx] is not None:
                raise EncodingError(f"bad or duplicate leaf index {idx}")
            strings[idx] = PauliString(m, x, z)
    return Encoding(m, strings)  # type: ignore[arg-type]


def apply_enumeration(enc: Encoding, scheme: EnumerationScheme) -> Encoding:
    """Reorder string pairs by mode and permute string positions by qubit."""
    scheme.check(enc.n_modes)
    new: list[PauliString | None] = [None] * len(enc.strings)
    for k in range(enc.n_modes):
        mode = scheme.mode_assignment[k]
        new[2 * mode] = _permute_qubits(enc.strings[2 * k], scheme.qubit_assignment)
        new[2 * mode + 1] = _permute_qubits(enc.strings[2 * k + 1],
                                            scheme.qubit_assignment)
    return Encoding(enc.n_modes, new)  # type: ignore[arg-type]


def apply_enumeration_tree(tree: TernaryTree, scheme: EnumerationScheme) -> TernaryTree:
    """Apply a scheme to an indexed tree (relabel leaf indices and qubits)."""
    scheme.check(tree.n_modes)
    out = tree.copy()
    for node in out.nodes.values():
        node.qubit = scheme.qubit_assignment[node.qubit]
        for axis, idx in node.leaves.items():
            pair, parity = divmod(idx, 2)
            node.leaves[axis] = 2 * scheme.mode_assignment[pair] + parity
    return out


def _permute_qubits(s: PauliString, perm: tuple[int, ...]) -> PauliString:
    x = z = 0
    for q, p in enumerate(perm):
        x |= ((s.x_mask >> q) & 1) << p
        z |= ((s.z_mask >> q) & 1) << p
    return PauliString(s.n_qubits, x, z)


# ---------------------------------------------------------------------------
# validation


def gf2_rank(rows: list[int], n_cols: int) -> int:
    """Rank over GF(2) of int-encoded bit rows, by Gaussian elimination."""
    work = [r for r in rows if r]
    rank = 0
    pivots: list[int] = []
    for row in work:
        for p in pivots:
            row = min(row, row ^ p)
        cur = row
        for p in pivots:
            low = cur ^ p
            if low < cur:
                cur = low
        if cur:
            pivots.append(cur)
            rank += 1
    return rank


def nto_matrix(enc: Encoding) -> np.ndarray:
    """Symmetric matrix of pairwise non-trivial overlap counts."""
    n = len(enc.strings)
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            v = enc.strings[i].nto(enc.strings[j])
            out[i, j] = out[j, i] = v
    return out


@dataclass
class ValidityReport:
    n_modes: int
    n_strings: int
    count_ok: bool
    pairwise_anticommuting: bool
    gf2_rank: int
    independent: bool
    constant_one_nto: bool
    max_nto: int
    nto_values: list[int] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.count_ok and self.pairwise_anticommuting and self.independent

    def to_json(self) -> str:
        doc = {
            "n_modes": self.n_modes,
            "n_strings": self.n_strings,
            "count_ok": self.count_ok,
            "pairwise_anticommuting": self.pairwise_anticommuting,
            "gf2_rank": self.gf2_rank,
            "independent": self.independent,
            "constant_one_nto": self.constant_one_nto,
            "max_nto": self.max_nto,
            "nto_values": self.nto_values,
            "valid": self.valid,
        }
        return json.dumps(doc, sort_keys=True)


def validate(enc: Encoding) -> ValidityReport:
    m = enc.n_modes
    count_ok = len(enc.strings) == 2 * m
    ntos = nto_matrix(enc)
    n = len(enc.strings)
    off = ntos[np.triu_indices(n, k=1)] if n > 1 else np.array([], dtype=np.int64)
    anticommuting = bool((off % 2 == 1).all()) if off.size else True
    nq = enc.n_qubits
    rows = [s.x_mask | (s.z_mask << nq) for s in enc.strings]
    rank = gf2_rank(rows, 2 * nq)
    return ValidityReport(
        n_modes=m,
        n_strings=n,
        count_ok=count_ok,
        pairwise_anticommuting=anticommuting,
        gf2_rank=rank,
        independent=(rank == 2 * m),
        constant_one_nto=bool((off == 1).all()) if off.size else True,
        max_nto=int(off.max()) if off.size else 0,
        nto_values=sorted(set(int(v) for v in off)),
    )


# ---------------------------------------------------------------------------
# vacuum preservation


def vacuum_defects(enc: Encoding) -> list[int]:
    """Modes whose encoded number operator fails to annihilate |0...0>.

    The test form: i * g_{2m} * g_{2m+1} must be a {I,Z}-only string with
    eigenvalue -1 on the all-zeros state, i.e. the pair product must be
    exactly i**1 times a Z-mask string.
    """
    bad = []
    for m in range(enc.n_modes):
        phase, s = enc.strings[2 * m].multiply(enc.strings[2 * m + 1])
        if s.x_mask != 0 or phase.power_of_i != 1:
            bad.append(m)
    return bad


def is_vacuum_preserving(enc: Encoding) -> bool:
    return not vacuum_defects(enc)


# ---------------------------------------------------------------------------
# JW masks and the MaxNTO family


def jw_strings(n_modes: int) -> Encoding:
    strings = []
    for k in range(n_modes):
        strings.append(PauliString(n_modes, 1 << k, (1 << k) - 1))
        strings.append(PauliString(n_modes, 1 << k, (1 << (k + 1)) - 1))
    return Encoding(n_modes, strings)


def _nto_profile(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    both = x | z
    overlap = both[:, None] & both[None, :]
    differ = (x[:, None] ^ x[None, :]) | (z[:, None] ^ z[None, :])
    return np.bitwise_count(overlap & differ)


def build_maxnto(n_modes: int, seed: int = 2024) -> Encoding:
    """Construct a valid encoding whose NTO multiset spans all odd values.

    Target: maximum pairwise NTO of M-1 for even M (anticommutation forces
    every NTO odd, so odd M caps at M-2), with every odd value up to the
    maximum present.  Starting from the Jordan-Wigner string set, a greedy
    walk over symplectic column operations (CNOT/H/S conjugations, which
    preserve validity exactly) steers the NTO profile onto the target; a
    seeded random kick escapes plateaus and restarts guard dead ends.
    """
    if n_modes < 2:
        raise EncodingError("MaxNTO needs n_modes >= 2")
    if n_modes > 64:
        raise EncodingError("MaxNTO construction guarded to n_modes <= 64")
    target_max = n_modes - 1 if n_modes % 2 == 0 else n_modes - 2
    allowed = frozenset(range(1, target_max + 1, 2))

    base = jw_strings(n_modes)
    x0 = np.array([s.x_mask for s in base.strings], dtype=np.uint64)
    z0 = np.array([s.z_mask for s in base.strings], dtype=np.uint64)

    moves = []
    for c in range(n_modes):
        for t in range(n_modes):
            if c != t:
                moves.append(("cnot", c, t))
    for q in range(n_modes):
        moves.append(("h", q, 0))
        moves.append(("s", q, 0))

    def apply_move(x, z, move):
        x, z = x.copy(), z.copy()
        kind, a, b = move
        if kind == "cnot":
            cbit = (x >> np.uint64(a)) & np.uint64(1)
            x ^= cbit << np.uint64(b)
            tbit = (z >> np.uint64(b)) & np.uint64(1)
            z ^= tbit << np.uint64(a)
        elif kind == "h":
            xb = (x >> np.uint64(a)) & np.uint64(1)
            zb = (z >> np.uint64(a)) & np.uint64(1)
            x ^= (xb ^ zb) << np.uint64(a)
            z ^= (xb ^ zb) << np.uint64(a)
        else:  # s gate: z picks up x
            xb = (x >> np.uint64(a)) & np.uint64(1)
            z ^= xb << np.uint64(a)
        return x, z

    iu = np.triu_indices(2 * n_modes, k=1)

    def score(x, z) -> float:
        vals = _nto_profile(x, z)[iu]
        present = set(int(v) for v in vals)
        missing = len(allowed - present)
        extra = len(present - allowed)
        return missing + extra + float((~np.isin(vals, list(allowed))).mean())

    for restart in range(40):
        rng = np.random.default_rng([seed, n_modes, restart])
        x, z = x0.copy(), z0.copy()
        cur = score(x, z)
        stall = 0
        for _ in range(400):
            if cur == 0.0:
                break
            best = None
            best_score = cur
            for move in moves:
                nx, nz = apply_move(x, z, move)
                s = score(nx, nz)
                if s < best_score:
                    best, best_score = (nx, nz), s
            if best is not None:
                (x, z), cur = best, best_score
                stall = 0
            else:
                stall += 1
                if stall > 4:
                    break
                for _ in range(2):
                    x, z = apply_move(x, z, moves[rng.integers(len(moves))])
                cur = score(x, z)
        if cur == 0.0:
            enc = Encoding(n_modes, [PauliString(n_modes, int(xm), int(zm))
                                     for xm, zm in zip(x, z)])
            report = validate(enc)
            if report.valid and report.max_nto == target_max:
                return enc
    raise EncodingError(f"MaxNTO construction failed for n_modes={n_modes}")
