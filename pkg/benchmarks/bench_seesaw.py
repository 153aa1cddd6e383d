"""Compare the compiled see-saw kernel against the numpy fallback.

Runs the alternating minimizer on the same witnesses and start vectors with
both backends and reports wall time per classify-scale workload. Values must
agree to 1e-9; the script exits nonzero if they do not.

Usage: python benchmarks/bench_seesaw.py [--restarts N] [--dims 2,3,4,5]
"""

import argparse
import sys
import time

import numpy as np

from qwit import _seesaw as py_backend
from qwit._backend import BACKEND
from qwit.certifier import _deterministic_starts
from qwit.witnesses import ChoiParams, choi_witness

try:
    from qwit import _seesaw_ext as cy_backend
except ImportError:
    cy_backend = None


def _workload(dims, per_dim, seed):
    rng = np.random.default_rng(seed)
    jobs = []
    for d in dims:
        for _ in range(per_dim):
            a = rng.uniform(0.0, d, size=d)
            a[0] = rng.uniform(1.0, d - 1.0) if d > 2 else rng.uniform(0.5, 1.5)
            W = choi_witness(ChoiParams(d=d, a=tuple(a)))
            W4 = W.reshape(d, d, d, d)
            starts = _deterministic_starts(d)
            jobs.append((d, W4, starts))
    return jobs


def _run(backend, jobs, iters):
    t0 = time.perf_counter()
    values = []
    for d, W4, starts in jobs:
        best = np.inf
        for alpha, beta in starts:
            val, _, _ = backend.seesaw_run(W4, alpha.copy(), beta.copy(),
                                           iters, 1e-12)
            best = min(best, val)
        values.append(best)
    return time.perf_counter() - t0, np.array(values)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-dim", type=int, default=40,
                    help="witnesses per dimension")
    ap.add_argument("--dims", default="2,3,4,5")
    ap.add_argument("--iters", type=int, default=200)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()

    dims = [int(x) for x in args.dims.split(",")]
    jobs = _workload(dims, args.per_dim, args.seed)
    n_runs = sum(len(starts) for _, _, starts in jobs)
    print("backend at import: %s" % BACKEND)
    print("%d witnesses, %d see-saw runs" % (len(jobs), n_runs))

    t_py, v_py = _run(py_backend, jobs, args.iters)
    print("numpy fallback: %.3f s" % t_py)

    if cy_backend is None:
        print("compiled kernel not available; skipping comparison")
        return 0

    t_cy, v_cy = _run(cy_backend, jobs, args.iters)
    print("compiled kernel: %.3f s  (speedup %.1fx)" % (t_cy, t_py / t_cy))

    worst = float(np.max(np.abs(v_py - v_cy)))
    print("largest value disagreement: %.3g" % worst)
    if worst > 1e-9:
        print("FAIL: backends disagree beyond 1e-9")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
