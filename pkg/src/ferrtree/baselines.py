"""Reference enumeration strategies: random sampling, annealing, brute force.

All three move within the space of parity-respecting, vacuum-preserving
enumerations by permuting whole leaf pairs, so every output is a valid
encoding by construction.  Evaluation never multiplies Pauli strings:
string products XOR masks and phases cannot change weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import _kernels
from .encodings import EnumerationScheme, strings_from_tree
from .hamiltonians import MajoranaHamiltonian
from .trees import TernaryTree, naive_tree


class BaselineError(ValueError):
    pass


@dataclass
class ScatterSample:
    sample_id: int
    avg_wp: float
    avg_wcp: float


class EnumerationEvaluator:
    """Fast W_P / W_CP evaluation of mode enumerations on a fixed tree."""

    def __init__(self, tree: TernaryTree, h: MajoranaHamiltonian):
        if tree.n_modes != h.n_modes:
            raise BaselineError("tree and Hamiltonian mode counts differ")
        self.n_modes = tree.n_modes
        self.naive = tree if tree.leaves_indexed() else naive_tree(tree)
        enc = strings_from_tree(self.naive)
        self.x_masks = _kernels.pack_masks([s.x_mask for s in enc.strings],
                                           enc.n_qubits)
        self.z_masks = _kernels.pack_masks([s.z_mask for s in enc.strings],
                                           enc.n_qubits)
        supports = [s for s in h.terms if s]
        self.abs_coeffs = np.array([abs(h.terms[s]) for s in supports])
        self.offsets = np.zeros(len(supports) + 1, dtype=np.int64)
        flat: list[int] = []
        for t, s in enumerate(supports):
            flat.extend(s)
            self.offsets[t + 1] = len(flat)
        self.support_flat = np.array(flat, dtype=np.int64)
        self.n_terms = len(supports)

    def evaluate(self, mode_assignment) -> tuple[int, float, float, float]:
        """Totals and per-term averages (identity excluded) for one scheme.

        ``mode_assignment[k]`` is the fermionic mode assigned to naive leaf
        pair k, so Majorana index 2m+p reads the string at naive position
        2k+p with k the pair holding mode m.
        """
        gather = np.empty(2 * self.n_modes, dtype=np.int64)
        for k, mode in enumerate(mode_assignment):
            gather[2 * mode] = 2 * k
            gather[2 * mode + 1] = 2 * k + 1
        w = _kernels.term_weights(self.x_masks[gather], self.z_masks[gather],
                                  self.support_flat, self.offsets)
        wp = int(w.sum())
        wcp = float(self.abs_coeffs @ w)
        n = max(self.n_terms, 1)
        return wp, wcp, wp / n, wcp / n

    def weight_of(self, scheme: EnumerationScheme) -> int:
        return self.evaluate(scheme.mode_assignment)[0]


def random_scatter(tree: TernaryTree, h: MajoranaHamiltonian, n: int,
                   seed: int) -> list[ScatterSample]:
    """n uniformly random parity-respecting mode enumerations, measured.

    Sample i draws from its own generator seeded ``seed ^ i``, so results
    are reproducible regardless of evaluation order or worker count.
    """
    ev = EnumerationEvaluator(tree, h)
    out = []
    for i in range(n):
        rng = np.random.default_rng(seed ^ i)
        perm = rng.permutation(ev.n_modes)
        _, _, avg_wp, avg_wcp = ev.evaluate(perm)
        out.append(ScatterSample(i, avg_wp, avg_wcp))
    return out


def simulated_annealing(tree: TernaryTree, h: MajoranaHamiltonian,
                        initial_temperature: float | None = None,
                        cooling: float = 0.995,
                        steps: int | None = None,
                        seed: int = 0) -> EnumerationScheme:
    """Metropolis walk over pair swaps minimizing Pauli-weight.

    Moves swap the modes of two leaf pairs, which preserves parity and the
    pair set.  Returns the best enumeration seen.  The default temperature
    is the standard deviation of 50 random-neighbour cost deltas and the
    default step count 200*M.
    """
    ev = EnumerationEvaluator(tree, h)
    m = ev.n_modes
    if steps is None:
        steps = 200 * m
    if steps < 1:
        raise BaselineError("steps must be >= 1")
    if not 0.0 < cooling < 1.0:
        raise BaselineError("cooling factor must lie in (0, 1)")
    if initial_temperature is not None and initial_temperature <= 0:
        raise BaselineError("initial temperature must be positive")
    rng = np.random.default_rng(seed)

    assignment = np.arange(m)
    cost = ev.evaluate(assignment)[0]
    if initial_temperature is None:
        deltas = []
        for _ in range(50):
            i, j = rng.integers(m), rng.integers(m)
            if i == j or m < 2:
                continue
            trial = assignment.copy()
            trial[i], trial[j] = trial[j], trial[i]
            deltas.append(ev.evaluate(trial)[0] - cost)
        spread = float(np.std(deltas)) if deltas else 0.0
        temperature = spread if spread > 0 else 1.0
    else:
        temperature = initial_temperature

    best_assignment, best_cost = assignment.copy(), cost
    for _ in range(steps):
        if m >= 2:
            i, j = rng.choice(m, size=2, replace=False)
            trial = assignment.copy()
            trial[i], trial[j] = trial[j], trial[i]
            trial_cost = ev.evaluate(trial)[0]
            delta = trial_cost - cost
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                assignment, cost = trial, trial_cost
                if cost < best_cost:
                    best_assignment, best_cost = assignment.copy(), cost
        temperature *= cooling
    return EnumerationScheme(tuple(int(v) for v in best_assignment),
                             tuple(range(m)))


def brute_force(tree: TernaryTree, h: MajoranaHamiltonian,
                ) -> tuple[EnumerationScheme, int]:
    """Exhaustive scan of all M! parity-respecting mode enumerations.

    Vacuum preservation and index parity pin each pair's internal order,
    so the search space is exactly the pair-to-mode bijections.  Returns
    the first enumeration attaining the global minimum Pauli-weight.
    """
    ev = EnumerationEvaluator(tree, h)
    m = ev.n_modes
    if m > 7:
        raise BaselineError(f"brute force guarded to M <= 7 (got {m})")
    best_perm: tuple[int, ...] | None = None
    best = None
    for perm in permutations(range(m)):
        wp = ev.evaluate(perm)[0]
        if best is None or wp < best:
            best, best_perm = wp, perm
    return EnumerationScheme(best_perm, tuple(range(m))), int(best)
