"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The implementation is selected once at import time from the environment
variable ``FERRTREE_NUMBA``: any value other than ``"0"`` (or unset) uses
``numba.njit`` kernels with on-disk caching; ``FERRTREE_NUMBA=0`` selects
the numpy versions.  Both paths produce bit-identical results; see
``benchmarks/bench_kernels.py`` for a speed comparison.

Kernels operate on flattened CSR-style term tables:

    support_flat : int64[:]   concatenated Majorana/alias indices, per term
    offsets      : int64[:]   term t occupies support_flat[offsets[t]:offsets[t+1]]
    mult         : int64[:]   term multiplicities
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("FERRTREE_NUMBA", "1") != "0"


# ---------------------------------------------------------------------------
# numpy reference implementations


def _term_weights_numpy(x_masks: np.ndarray, z_masks: np.ndarray,
                        support_flat: np.ndarray,
                        offsets: np.ndarray) -> np.ndarray:
    """Pauli weight of each term's string product.

    Masks hold one row of uint64 words per Majorana index.  A product
    string's masks are the XOR of its factors' masks (phases never matter
    for weights) and its weight is the popcount of x OR z.
    """
    n_terms = len(offsets) - 1
    if len(support_flat) == 0:
        return np.zeros(n_terms, dtype=np.int64)
    # reduceat needs the start index of every segment; empty segments would
    # misbehave but never occur (empty supports are dropped upstream).
    x = np.bitwise_xor.reduceat(x_masks[support_flat], offsets[:-1], axis=0)
    z = np.bitwise_xor.reduceat(z_masks[support_flat], offsets[:-1], axis=0)
    return np.bitwise_count(x | z).sum(axis=1).astype(np.int64)


def _candidate_weights_numpy(membership: np.ndarray, mult: np.ndarray,
                             cands: np.ndarray) -> np.ndarray:
    """Per-candidate Pauli-weight contribution of one node.

    ``membership[i, t]`` is 1 when index ``i`` occurs in term ``t``.  A term
    contributes its multiplicity when 1 or 2 of the candidate's three
    indices occur in it (a lone operator, or a product of two distinct
    Paulis); 0 and 3 occurrences reduce to the identity on this node.
    """
    out = np.empty(len(cands), dtype=np.int64)
    for k, (x, y, z) in enumerate(cands):
        cnt = membership[x].astype(np.int64) + membership[y] + membership[z]
        out[k] = int(mult[(cnt == 1) | (cnt == 2)].sum())
    return out


def _asap_depth_numpy(q1: np.ndarray, q2: np.ndarray, n_qubits: int) -> int:
    """ASAP-layered depth: each gate lands at 1 + max availability of its qubits."""
    avail = np.zeros(n_qubits, dtype=np.int64)
    depth = 0
    for g in range(len(q1)):
        a = q1[g]
        t = avail[a]
        b = q2[g]
        if b >= 0 and avail[b] > t:
            t = avail[b]
        t += 1
        avail[a] = t
        if b >= 0:
            avail[b] = t
        if t > depth:
            depth = t
    return int(depth)


# ---------------------------------------------------------------------------
# numba fast paths

if USE_NUMBA:
    from numba import njit

    @njit(cache=True, nogil=True)
    def _popcount64(v):
        v = v - ((v >> np.uint64(1)) & np.uint64(0x5555555555555555))
        v = (v & np.uint64(0x3333333333333333)) + (
            (v >> np.uint64(2)) & np.uint64(0x3333333333333333))
        v = (v + (v >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return (v * np.uint64(0x0101010101010101)) >> np.uint64(56)

    @njit(cache=True, nogil=True)
    def _term_weights_njit(x_masks, z_masks, support_flat, offsets):
        n_terms = len(offsets) - 1
        n_words = x_masks.shape[1]
        out = np.zeros(n_terms, dtype=np.int64)
        for t in range(n_terms):
            w = 0
            for word in range(n_words):
                ax = np.uint64(0)
                az = np.uint64(0)
                for j in range(offsets[t], offsets[t + 1]):
                    idx = support_flat[j]
                    ax ^= x_masks[idx, word]
                    az ^= z_masks[idx, word]
                w += int(_popcount64(ax | az))
            out[t] = w
        return out

    @njit(cache=True, nogil=True)
    def _candidate_weights_njit(membership, mult, cands):
        n_terms = membership.shape[1]
        out = np.empty(len(cands), dtype=np.int64)
        for k in range(len(cands)):
            x, y, z = cands[k, 0], cands[k, 1], cands[k, 2]
            total = 0
            for t in range(n_terms):
                cnt = membership[x, t] + membership[y, t] + membership[z, t]
                if cnt == 1 or cnt == 2:
                    total += mult[t]
            out[k] = total
        return out

    @njit(cache=True, nogil=True)
    def _asap_depth_njit(q1, q2, n_qubits):
        avail = np.zeros(n_qubits, dtype=np.int64)
        depth = 0
        for g in range(len(q1)):
            a = q1[g]
            t = avail[a]
            b = q2[g]
            if b >= 0 and avail[b] > t:
                t = avail[b]
            t += 1
            avail[a] = t
            if b >= 0:
                avail[b] = t
            if t > depth:
                depth = t
        return depth

    term_weights = _term_weights_njit
    candidate_weights = _candidate_weights_njit

    def asap_depth(q1, q2, n_qubits):
        return int(_asap_depth_njit(q1, q2, n_qubits))
else:
    term_weights = _term_weights_numpy
    candidate_weights = _candidate_weights_numpy
    asap_depth = _asap_depth_numpy


# ---------------------------------------------------------------------------
# mask packing helpers (shared by both paths)


def n_words_for(n_qubits: int) -> int:
    return max(1, (n_qubits + 63) // 64)


def pack_mask(mask: int, n_words: int) -> np.ndarray:
    """Split an arbitrary-precision bitmask into little-endian uint64 words."""
    words = np.zeros(n_words, dtype=np.uint64)
    for w in range(n_words):
        words[w] = (mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return words


def pack_masks(masks: list[int], n_qubits: int) -> np.ndarray:
    nw = n_words_for(n_qubits)
    out = np.zeros((len(masks), nw), dtype=np.uint64)
    for i, m in enumerate(masks):
        out[i] = pack_mask(m, nw)
    return out
