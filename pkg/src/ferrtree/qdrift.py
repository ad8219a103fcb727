"""qDRIFT circuit sampling and untranspiled depth estimation.

Terms of a qubit Hamiltonian are sampled i.i.d. with probability
|c_j| / lambda and each drawn string is lowered to a fixed gate pattern:
per-qubit basis changes into the Z basis for X/Y positions, a fan-in of
w-1 entanglers onto the last support qubit, one rotation through
2*lambda*t*sgn(c_j)/N_s, then the inverse fan-in and basis changes.
Depth is ASAP-layered: a gate occupies its qubits for one step and lands
at 1 + the latest availability among them.

Absolute depths are a model quantity (the decomposition and scheduling
conventions are fixed here, not taken from any external compiler); only
relative comparisons between encodings are calibration-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .hamiltonians import QubitHamiltonian, lambda_norm
from .pauli import PauliString


class QDriftError(ValueError):
    pass


@dataclass(frozen=True)
class BasisChange:
    qubit: int
    axis: str  # "X" or "Y"


@dataclass(frozen=True)
class Entangler:
    control: int
    target: int


@dataclass(frozen=True)
class Rotation:
    qubit: int
    angle: float


Gate = BasisChange | Entangler | Rotation


@dataclass
class QDriftCircuit:
    n_qubits: int
    gates: list[Gate]


@dataclass
class DepthStats:
    n_circuits: int
    mean_depth: float
    std_depth: float


def sample_count(lam: float, t: float, epsilon: float) -> int:
    """N_s = ceil(2 * lambda^2 * t^2 / epsilon); 0 for a zero Hamiltonian."""
    if epsilon <= 0:
        raise QDriftError("epsilon must be positive")
    if lam < 0 or t < 0:
        raise QDriftError("lambda and t must be non-negative")
    if lam * t == 0:
        return 0
    return math.ceil(2.0 * lam * lam * t * t / epsilon)


def _sampling_table(h: QubitHamiltonian):
    """Non-identity terms with probabilities |c_j|/lambda, in stable order."""
    entries = [(s, c) for s, c in h.terms.items() if not s.is_identity()]
    entries.sort(key=lambda sc: sc[0].to_label())
    if not entries:
        raise QDriftError("empty Hamiltonian after identity exclusion")
    lam = sum(abs(c) for _, c in entries)
    probs = np.array([abs(c) for _, c in entries]) / lam
    return entries, lam, probs


def _term_gate_arrays(s: PauliString):
    """Gate list for exp(-i theta S) as (q1, q2) rows; q2 = -1 is single-qubit."""
    support = [q for q in range(s.n_qubits) if s.letter(q) != "I"]
    basis = [(q, s.letter(q)) for q in support if s.letter(q) in ("X", "Y")]
    last = support[-1]
    q1, q2 = [], []
    for q, _ in basis:
        q1.append(q)
        q2.append(-1)
    for q in support[:-1]:
        q1.append(q)
        q2.append(last)
    q1.append(last)
    q2.append(-1)
    for q in reversed(support[:-1]):
        q1.append(q)
        q2.append(last)
    for q, _ in reversed(basis):
        q1.append(q)
        q2.append(-1)
    rot_pos = len(basis) + len(support) - 1
    return (np.array(q1, dtype=np.int64), np.array(q2, dtype=np.int64),
            rot_pos, basis, support)


def sample_circuit(h: QubitHamiltonian, t: float, epsilon: float,
                   seed) -> QDriftCircuit:
    """One qDRIFT circuit; ``seed`` feeds numpy's default_rng directly."""
    entries, lam, probs = _sampling_table(h)
    n_s = sample_count(lam, t, epsilon)
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(entries), size=n_s, p=probs) if n_s else []
    gates: list[Gate] = []
    for j in draws:
        s, c = entries[j]
        _, _, _, basis, support = _term_gate_arrays(s)
        last = support[-1]
        angle = 2.0 * lam * t * math.copysign(1.0, c.real) / n_s
        for q, axis in basis:
            gates.append(BasisChange(q, axis))
        for q in support[:-1]:
            gates.append(Entangler(q, last))
        gates.append(Rotation(last, angle))
        for q in reversed(support[:-1]):
            gates.append(Entangler(q, last))
        for q, axis in reversed(basis):
            gates.append(BasisChange(q, axis))
    return QDriftCircuit(h.n_qubits, gates)


def circuit_depth(circuit: QDriftCircuit) -> int:
    q1, q2 = [], []
    for g in circuit.gates:
        if isinstance(g, Entangler):
            q1.append(g.control)
            q2.append(g.target)
        else:
            q1.append(g.qubit)
            q2.append(-1)
    return _kernels.asap_depth(np.array(q1, dtype=np.int64),
                               np.array(q2, dtype=np.int64), circuit.n_qubits)


def depth_samples(h: QubitHamiltonian, t: float, epsilon: float,
                  n_circuits: int, seed: int,
                  threads: int = 1) -> np.ndarray:
    """Depths of n_circuits independent circuits, seeded (seed, index).

    Uses a per-term gate table and the array depth kernel, bypassing gate
    objects; identical draws and depths to ``sample_circuit``.  Circuits
    are independent, so worker threads cannot change the result.
    """
    if n_circuits < 1:
        raise QDriftError("n_circuits must be >= 1")
    entries, lam, probs = _sampling_table(h)
    n_s = sample_count(lam, t, epsilon)
    tables = [_term_gate_arrays(s) for s, _ in entries]
    depths = np.empty(n_circuits, dtype=np.int64)

    def one(i: int) -> int:
        if n_s == 0:
            return 0
        rng = np.random.default_rng((seed, i))
        draws = rng.choice(len(entries), size=n_s, p=probs)
        q1 = np.concatenate([tables[j][0] for j in draws])
        q2 = np.concatenate([tables[j][1] for j in draws])
        return _kernels.asap_depth(q1, q2, h.n_qubits)

    if threads > 1 and n_circuits > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, d in enumerate(pool.map(one, range(n_circuits))):
                depths[i] = d
    else:
        for i in range(n_circuits):
            depths[i] = one(i)
    return depths


def depth_stats(h: QubitHamiltonian, t: float, epsilon: float,
                n_circuits: int, seed: int, threads: int = 1) -> DepthStats:
    depths = depth_samples(h, t, epsilon, n_circuits, seed, threads)
    return DepthStats(n_circuits, float(depths.mean()), float(depths.std()))


def qdrift_lambda(h: QubitHamiltonian) -> float:
    return lambda_norm(h)
