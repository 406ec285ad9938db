"""Compare the compiled and pure-Python distance kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--resolution 128 256]
"""
from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from voxcurve import kernels
from voxcurve.experiments import ExperimentConfig, run_experiment


def _micro(repeat: int) -> dict[str, float]:
    params = (50.0, 50.0, 24.0, 40.0, 40.0, 4.0)
    phis = np.linspace(-np.pi, np.pi, 20000)
    cases = {
        "cyl_scan_min (100 samples)": lambda: kernels.cyl_scan_min(params, 85.5, 69.5, 68.5, 0.5, 0.4, 0.6, 0.002),
        "cyl_sqdist1": lambda: kernels.cyl_sqdist1(params, 85.5, 69.5, 68.5, 0.5),
        "cyl_sqdist (20000 samples)": lambda: kernels.cyl_sqdist(params, 85.5, 69.5, 68.5, phis),
    }
    out = {}
    for name, fn in cases.items():
        t = timeit.Timer(fn)
        n, _ = t.autorange()
        out[name] = min(t.repeat(repeat, n)) / n
    return out


def _traces(resolutions: list[int]) -> float:
    total = 0.0
    for H in resolutions:
        for omega in (2.0, 4.0):
            for variant in ("V1", "V2", "V3"):
                cfg = ExperimentConfig(resolution=H, omega=omega, variant=variant)
                row = run_experiment(cfg, verify=False)
                total += row.wall_time
    return total


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--resolution", type=int, nargs="+", default=[128, 256])
    args = ap.parse_args(argv)

    if not kernels.COMPILED_AVAILABLE:
        print("compiled kernels are not built; only the Python backend can run", file=sys.stderr)
        return 1

    results = {}
    for name in ("compiled", "python"):
        kernels.set_backend(name)
        results[name] = (_micro(args.repeat), _traces(args.resolution))

    print(f"{'kernel':32s} {'compiled':>12s} {'python':>12s} {'speedup':>8s}")
    for key in results["compiled"][0]:
        c, p = results["compiled"][0][key], results["python"][0][key]
        print(f"{key:32s} {c * 1e6:10.2f}us {p * 1e6:10.2f}us {p / c:7.1f}x")
    c, p = results["compiled"][1], results["python"][1]
    print(f"{'traces (' + str(6 * len(args.resolution)) + ')':32s} {c:11.3f}s {p:11.3f}s {p / c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
