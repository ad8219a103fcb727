"""Fermionic and Majorana Hamiltonians, their conversion and qubit encoding.

A Majorana Hamiltonian is a set of terms ``c * g_{j1} g_{j2} ... g_{jk}``
with strictly increasing Majorana indices ``j1 < j2 < ... < jk`` in
``[0, 2M)``.  Fermionic ladder operators decompose as

    a_j       = (g_{2j} + i g_{2j+1}) / 2
    a_j^dag   = (g_{2j} - i g_{2j+1}) / 2

so any second-quantized term expands into Majorana monomials; reordering a
monomial into canonical form flips the sign once per transposition of
distinct indices and removes squared operators (g^2 = 1).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

from .pauli import PauliString, Phase, product_of

DEDUP_THRESHOLD = 1e-12

Support = tuple[int, ...]


class HamiltonianError(ValueError):
    pass


class HamiltonianFileError(HamiltonianError):
    """Malformed Hamiltonian file; message carries the offending position."""


def canonical_support(indices) -> tuple[int, Support]:
    """Sort a Majorana index word, tracking the anticommutation sign.

    Returns ``(sign, support)`` where ``sign`` is +1 or -1 and ``support``
    is strictly increasing.  Equal indices annihilate pairwise (g^2 = 1);
    a stable insertion sort never commutes equal operators past each other,
    so the sign is exactly (-1)**(inversions between distinct indices).
    """
    work: list[int] = []
    sign = 1
    for idx in indices:
        pos = len(work)
        while pos > 0 and work[pos - 1] > idx:
            pos -= 1
        if (len(work) - pos) % 2 == 1:
            sign = -sign
        work.insert(pos, idx)
    # cancel adjacent duplicates
    out: list[int] = []
    for idx in work:
        if out and out[-1] == idx:
            out.pop()
        else:
            out.append(idx)
    return sign, tuple(out)


@dataclass
class MajoranaHamiltonian:
    """Merged Majorana terms: one complex coefficient per distinct support."""

    n_modes: int
    terms: dict[Support, complex] = field(default_factory=dict)

    @property
    def n_majorana(self) -> int:
        return 2 * self.n_modes

    def add_term(self, indices, coefficient: complex):
        sign, support = canonical_support(indices)
        for idx in support:
            if not 0 <= idx < self.n_majorana:
                raise HamiltonianError(
                    f"Majorana index {idx} out of range for {self.n_modes} modes")
        self.terms[support] = self.terms.get(support, 0j) + sign * coefficient

    def drop_small(self, threshold: float = DEDUP_THRESHOLD):
        self.terms = {s: c for s, c in self.terms.items() if abs(c) > threshold}

    def __len__(self) -> int:
        return len(self.terms)


@dataclass
class QubitHamiltonian:
    n_qubits: int
    terms: dict[PauliString, complex] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.terms)

    def max_imag(self) -> float:
        return max((abs(c.imag) for c in self.terms.values()), default=0.0)


@dataclass
class WeightMetrics:
    n_terms: int
    w_p: float
    w_cp: float
    avg_w_p: float
    avg_w_cp: float


# ---------------------------------------------------------------------------
# fermionic -> Majorana conversion


def _expand_ladder_product(factors: list[tuple[int, bool]],
                           coefficient: complex,
                           accum: MajoranaHamiltonian):
    """Expand a product of ladder operators into ``accum``.

    ``factors`` lists (mode, is_creation) left to right.  Each factor is a
    two-branch sum over its Majorana components, so a k-factor product
    yields 2**k monomials expanded iteratively.
    """
    # branches: list of (indices, coeff)
    branches: list[tuple[list[int], complex]] = [([], coefficient)]
    for mode, dagger in factors:
        even, odd = 2 * mode, 2 * mode + 1
        odd_coeff = -0.5j if dagger else 0.5j
        new_branches = []
        for indices, c in branches:
            new_branches.append((indices + [even], c * 0.5))
            new_branches.append((indices + [odd], c * odd_coeff))
        branches = new_branches
    for indices, c in branches:
        accum.add_term(indices, c)


def from_fermionic(n_modes: int, one_body, two_body,
                   threshold: float = DEDUP_THRESHOLD) -> MajoranaHamiltonian:
    """Convert integral lists into a merged Majorana Hamiltonian.

    ``one_body`` holds (p, q, v) entries for v * a_p^dag a_q and
    ``two_body`` holds (p, q, r, s, v) for v * a_p^dag a_q^dag a_r a_s
    (physicist ordering, any 1/2 prefactor already absorbed into v).
    Like monomials merge; sub-threshold coefficients are dropped after the
    merge; the empty-support (identity) term is retained.
    """
    h = MajoranaHamiltonian(n_modes)
    for entry in one_body:
        p, q, v = entry
        _check_indices(n_modes, (p, q))
        _check_value(v)
        _expand_ladder_product([(p, True), (q, False)], complex(v), h)
    for entry in two_body:
        p, q, r, s, v = entry
        _check_indices(n_modes, (p, q, r, s))
        _check_value(v)
        _expand_ladder_product(
            [(p, True), (q, True), (r, False), (s, False)], complex(v), h)
    h.drop_small(threshold)
    return h


def _check_indices(n_modes: int, indices):
    for idx in indices:
        if not 0 <= idx < n_modes:
            raise HamiltonianError(f"mode index {idx} out of range (M={n_modes})")


def _check_value(v):
    if not math.isfinite(v):
        raise HamiltonianError(f"non-finite integral value {v!r}")


# ---------------------------------------------------------------------------
# encoding and metrics


def encode(h: MajoranaHamiltonian, strings: list[PauliString]) -> QubitHamiltonian:
    """Map each Majorana term through its phase-tracked string product."""
    if len(strings) != h.n_majorana:
        raise HamiltonianError(
            f"encoding has {len(strings)} strings, expected {h.n_majorana}")
    n_qubits = strings[0].n_qubits if strings else h.n_modes
    out: dict[PauliString, complex] = {}
    identity = PauliString.identity(n_qubits)
    for support, coeff in h.terms.items():
        if support:
            phase, string = product_of([strings[j] for j in support])
            value = coeff * phase.value
        else:
            string, value = identity, coeff
        out[string] = out.get(string, 0j) + value
    return QubitHamiltonian(n_qubits, out)


def lambda_norm(h: QubitHamiltonian) -> float:
    """One-norm of coefficients, identity excluded (global phase only)."""
    return float(sum(abs(c) for s, c in h.terms.items() if not s.is_identity()))


def weight_metrics(h: QubitHamiltonian, include_identity: bool = False) -> WeightMetrics:
    w_p = 0
    w_cp = 0.0
    n = 0
    for s, c in h.terms.items():
        if s.is_identity() and not include_identity:
            continue
        w = s.weight()
        w_p += w
        w_cp += abs(c) * w
        n += 1
    avg_p = w_p / n if n else 0.0
    avg_cp = w_cp / n if n else 0.0
    return WeightMetrics(n, float(w_p), w_cp, avg_p, avg_cp)


# ---------------------------------------------------------------------------
# file formats


@dataclass
class FermionicIntegrals:
    n_modes: int
    one_body: list[tuple[int, int, float]]
    two_body: list[tuple[int, int, int, int, float]]
    convention: str = "physicist"

    def to_majorana(self, threshold: float = DEDUP_THRESHOLD) -> MajoranaHamiltonian:
        return from_fermionic(self.n_modes, self.one_body, self.two_body, threshold)

    def __len__(self) -> int:
        return len(self.one_body) + len(self.two_body)


def save_majorana(h: MajoranaHamiltonian, path):
    doc = {
        "format": "majorana-1",
        "n_modes": h.n_modes,
        "terms": [
            {"support": list(s), "re": c.real, "im": c.imag}
            for s, c in sorted(h.terms.items())
        ],
    }
    with open(path, "w") as f:
        json.dump(doc, f)


def load_majorana(path) -> MajoranaHamiltonian:
    doc = _read_json(path)
    if doc.get("format") != "majorana-1":
        raise HamiltonianFileError(f"{path}: not a majorana-1 file")
    n_modes = _require_count(doc, "n_modes", path)
    h = MajoranaHamiltonian(n_modes)
    for pos, term in enumerate(doc.get("terms", [])):
        try:
            support = term["support"]
            c = complex(term["re"], term["im"])
        except (KeyError, TypeError) as exc:
            raise HamiltonianFileError(f"{path}: malformed term {pos}: {exc}") from exc
        if not cmath.isfinite(c):
            raise HamiltonianFileError(f"{path}: non-finite coefficient in term {pos}")
        try:
            h.add_term(support, c)
        except HamiltonianError as exc:
            raise HamiltonianFileError(f"{path}: term {pos}: {exc}") from exc
    return h


def save_fermionic(fi: FermionicIntegrals, path):
    doc = {
        "format": "fermionic-1",
        "n_modes": fi.n_modes,
        "convention": fi.convention,
        "one_body": [[p, q, v] for p, q, v in fi.one_body],
        "two_body": [[p, q, r, s, v] for p, q, r, s, v in fi.two_body],
    }
    with open(path, "w") as f:
        json.dump(doc, f)


def load_fermionic(path) -> FermionicIntegrals:
    doc = _read_json(path)
    if doc.get("format") != "fermionic-1":
        raise HamiltonianFileError(f"{path}: not a fermionic-1 file")
    n_modes = _require_count(doc, "n_modes", path)
    one, two = [], []
    for pos, entry in enumerate(doc.get("one_body", [])):
        if len(entry) != 3:
            raise HamiltonianFileError(f"{path}: malformed one_body entry {pos}")
        p, q, v = entry
        _validate_entry(n_modes, (p, q), v, path, "one_body", pos)
        one.append((int(p), int(q), float(v)))
    for pos, entry in enumerate(doc.get("two_body", [])):
        if len(entry) != 5:
            raise HamiltonianFileError(f"{path}: malformed two_body entry {pos}")
        p, q, r, s, v = entry
        _validate_entry(n_modes, (p, q, r, s), v, path, "two_body", pos)
        two.append((int(p), int(q), int(r), int(s), float(v)))
    return FermionicIntegrals(n_modes, one, two,
                              doc.get("convention", "physicist"))


def load_any(path) -> tuple[MajoranaHamiltonian, dict]:
    """Load either Hamiltonian format; fermionic input is converted.

    Returns the Majorana Hamiltonian and an info dict with the source
    format and term counts.
    """
    doc = _read_json(path)
    fmt = doc.get("format")
    if fmt == "majorana-1":
        h = load_majorana(path)
        return h, {"format": fmt, "n_terms": len(h)}
    if fmt == "fermionic-1":
        fi = load_fermionic(path)
        h = fi.to_majorana()
        return h, {"format": fmt, "n_terms_fermionic": len(fi),
                   "n_terms": len(h)}
    raise HamiltonianFileError(f"{path}: unknown format {fmt!r}")


def save_qubit(h: QubitHamiltonian, path):
    doc = {
        "format": "qubit-1",
        "n_qubits": h.n_qubits,
        "terms": [
            {"string": s.to_label(), "re": c.real, "im": c.imag}
            for s, c in sorted(h.terms.items(), key=lambda kv: kv[0].to_label())
        ],
    }
    with open(path, "w") as f:
        json.dump(doc, f)


def _read_json(path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise HamiltonianFileError(f"{path}: {exc}") from exc


def _require_count(doc: dict, key: str, path) -> int:
    value = doc.get(key)
    if not isinstance(value, int) or value < 0:
        raise HamiltonianFileError(f"{path}: missing or invalid {key}")
    return value


def _validate_entry(n_modes, indices, v, path, section, pos):
    for idx in indices:
        if not isinstance(idx, int) or not 0 <= idx < n_modes:
            raise HamiltonianFileError(
                f"{path}: {section} entry {pos}: index {idx} out of range")
    if not isinstance(v, (int, float)) or not math.isfinite(v):
        raise HamiltonianFileError(
            f"{path}: {section} entry {pos}: invalid value {v!r}")
