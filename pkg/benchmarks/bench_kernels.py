"""Compare the numba kernels against the pure-numpy fallback.

Run from the repository root:

    python benchmarks/bench_kernels.py

The workloads mirror the hot paths: per-term string weights on the water
fixture, candidate-weight scans of the optimizer inner loop, and ASAP
depth scheduling of a long qDRIFT gate stream.  Set FERRTREE_NUMBA=0 to
verify the fallback alone (the numba columns are then skipped).
"""

from __future__ import annotations

import os
import time
from pathlib import Path

import numpy as np

os.environ.setdefault("FERRTREE_NUMBA", "1")

from ferrtree import _kernels  # noqa: E402
from ferrtree.baselines import EnumerationEvaluator  # noqa: E402
from ferrtree.hamiltonians import load_any  # noqa: E402
from ferrtree.trees import build_standard  # noqa: E402

FIXTURE = Path(__file__).resolve().parents[1] / "fixtures" / "h2o_sto3g.json"


def timeit(fn, *args, reps=5):
    fn(*args)  # warm-up (jit compile / cache load)
    best = np.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    h, _ = load_any(FIXTURE)
    ev = EnumerationEvaluator(build_standard("jw", h.n_modes), h)
    gather = np.arange(2 * h.n_modes)
    x, z = ev.x_masks[gather], ev.z_masks[gather]

    rng = np.random.default_rng(0)
    n_terms = len(ev.offsets) - 1
    membership = np.zeros((3 * h.n_modes + 2, n_terms), dtype=np.uint8)
    for t in range(n_terms):
        for idx in ev.support_flat[ev.offsets[t]:ev.offsets[t + 1]]:
            membership[idx, t] = 1
    mult = np.ones(n_terms, dtype=np.int64)
    cands = rng.integers(0, 2 * h.n_modes, size=(500, 3)).astype(np.int64)

    n_gates = 200_000
    q1 = rng.integers(0, h.n_modes, size=n_gates).astype(np.int64)
    q2 = np.where(rng.random(n_gates) < 0.5, -1,
                  rng.integers(0, h.n_modes, size=n_gates)).astype(np.int64)

    rows = []

    def bench(name, numba_fn, numpy_fn, *args, scale=1):
        t_np = timeit(numpy_fn, *args) / scale
        if _kernels.USE_NUMBA and numba_fn is not None:
            t_nb = timeit(numba_fn, *args) / scale
            rows.append((name, t_nb, t_np, t_np / t_nb))
        else:
            rows.append((name, None, t_np, None))

    def many_term_weights(x, z, flat, offs):
        for _ in range(100):
            _kernels.term_weights(x, z, flat, offs)

    def many_term_weights_np(x, z, flat, offs):
        for _ in range(100):
            _kernels._term_weights_numpy(x, z, flat, offs)

    bench("term_weights (water, x100)",
          many_term_weights if _kernels.USE_NUMBA else None,
          many_term_weights_np, x, z, ev.support_flat, ev.offsets)
    bench("candidate_weights (500 cands)",
          _kernels.candidate_weights if _kernels.USE_NUMBA else None,
          _kernels._candidate_weights_numpy, membership, mult, cands)
    bench("asap_depth (200k gates)",
          _kernels.asap_depth if _kernels.USE_NUMBA else None,
          _kernels._asap_depth_numpy, q1, q2, h.n_modes)

    print(f"{'kernel':34s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, t_nb, t_np, speedup in rows:
        nb = f"{t_nb*1e3:8.2f}ms" if t_nb is not None else "      --"
        sp = f"{speedup:7.1f}x" if speedup is not None else "      --"
        print(f"{name:34s} {nb:>10s} {t_np*1e3:8.2f}ms {sp:>8s}")


if __name__ == "__main__":
    main()
