#!/usr/bin/env python3
"""Compare the compiled decode kernels against the pure-Python fallback.

Times the raw section sweeps and full decodes on the bundled codes. Run
from the repository root:

    python benchmarks/bench_kernels.py [--trials N]
"""

import argparse
import time

import numpy as np

from qtrellis import backend, kernels_py
from qtrellis.code import load_code
from qtrellis.decoder import ChannelModel, dml_decode, ndml_decode
from qtrellis.sim import SimConfig, run_monte_carlo
from qtrellis.trellis import build_min_trellis, build_multigoal_trellis


def time_sweeps(trellis, reps, kernels, use_numpy):
    secs = trellis.arrays() if use_numpy else trellis.list_arrays()
    tables = []
    for _ in range(trellis.depth):
        t = [-1.0, -2.0, -2.5, -3.0]
        tables.append(np.asarray(t) if use_numpy else t)
    start = time.perf_counter()
    for _ in range(reps):
        acc = np.zeros(1) if use_numpy else [0.0]
        for t in range(trellis.depth):
            src, dst, lab = secs[t]
            acc, _, _ = kernels.sumprod_forward(
                acc, src, dst, tables[t], lab, trellis.level_sizes[t + 1])
    return time.perf_counter() - start


def time_decodes(code, trellis_n, trellis_mg, reps):
    ch = ChannelModel.depolarizing(0.1)
    sigma = (1,) + (0,) * (code.n - code.k - 1)
    start = time.perf_counter()
    for _ in range(reps):
        ndml_decode(trellis_n, code, sigma, ch)
        dml_decode(trellis_mg, code, sigma, ch)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=2000,
                        help="simulation trials for the end-to-end row")
    args = parser.parse_args()

    if not backend.COMPILED:
        print("compiled kernels unavailable; build with "
              "'python setup.py build_ext --inplace' to compare")
    from qtrellis import _kernels  # noqa: F401  (fails fast if missing)

    print(f"{'benchmark':<42}{'python':>10}{'compiled':>10}{'speedup':>9}")
    for name in ("steane713", "rm1513"):
        css = load_code(name)
        tm = build_multigoal_trellis(css.base)
        reps = 3000 if name == "steane713" else 300
        t_py = time_sweeps(tm, reps, kernels_py, use_numpy=False)
        t_c = time_sweeps(tm, reps, _kernels, use_numpy=True)
        label = f"sum-product sweep {name} x{reps}"
        print(f"{label:<42}{t_py:>9.3f}s{t_c:>9.3f}s{t_py / t_c:>8.1f}x")

    css = load_code("steane713")
    code = css.base
    tn, tm = build_min_trellis(code), build_multigoal_trellis(code)
    reps = 1000
    backend.kernels, backend.COMPILED = kernels_py, False
    t_py = time_decodes(code, tn, tm, reps)
    backend.kernels, backend.COMPILED = _kernels, True
    t_c = time_decodes(code, tn, tm, reps)
    label = f"ndml+dml decode steane713 x{reps}"
    print(f"{label:<42}{t_py:>9.3f}s{t_c:>9.3f}s{t_py / t_c:>8.1f}x")

    cfg = SimConfig("steane713", ("ndml", "dml", "css"), (0.2,),
                    trials=args.trials, seed=1)
    backend.kernels, backend.COMPILED = kernels_py, False
    t_py = run_monte_carlo(cfg).wall_clock
    backend.kernels, backend.COMPILED = _kernels, True
    t_c = run_monte_carlo(cfg).wall_clock
    label = f"simulate steane713 all modes x{args.trials}"
    print(f"{label:<42}{t_py:>9.3f}s{t_c:>9.3f}s{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
