"""Compare the compiled and pure-Python Numerov backends.

Times one outward sweep on a production-size grid and one full eigenvalue
solve per backend, and checks that both give the same level.

    python benchmarks/bench_numerov.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from mrsolve import PotentialParams, QuantumState, SolverConfig, kernels, numerov_eigenvalue
from mrsolve import _numerov_py
from mrsolve.oracle import reduced_potential

try:
    from mrsolve import _numerov as _compiled
except ImportError:
    _compiled = None


def _use(backend) -> None:
    kernels.integrate_outward = backend.integrate_outward
    kernels.integrate_inward = backend.integrate_inward


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    s, p = QuantumState.from_label("3d"), PotentialParams(80.0, 0.75, 40.0)
    cfg = SolverConfig.for_state(s, p, "exact")
    x = np.geomspace(cfg.r_min / p.b, cfg.r_max / p.b, cfg.n_points)
    h2 = (np.log(x[-1] / x[0]) / (x.size - 1)) ** 2
    g = x * x * (reduced_potential(x, p, s.l, "exact") + 0.01) + 0.25
    out = np.empty_like(x)

    backends = {"python": _numerov_py}
    if _compiled is not None:
        backends["cython"] = _compiled
    else:
        print("compiled extension not built; timing the Python fallback only")

    print(f"grid: {x.size} points, state {s.label}, A={p.A:g}, alpha={p.alpha:g}, b={p.b:g}")
    print(f"{'backend':<8} {'sweep [ms]':>11} {'solve [s]':>10}  level")
    timings = {}
    for name, mod in backends.items():
        sweep = min(timeit.repeat(lambda: mod.integrate_outward(g, h2, 1e-9, 2e-9, x.size - 1, out),
                                  number=1, repeat=args.repeat))
        _use(mod)
        solve = min(timeit.repeat(lambda: numerov_eigenvalue(p, s.l, s.n, "exact", cfg),
                                  number=1, repeat=args.repeat))
        level = numerov_eigenvalue(p, s.l, s.n, "exact", cfg)
        timings[name] = (sweep, solve, level)
        print(f"{name:<8} {sweep * 1e3:>11.2f} {solve:>10.3f}  {level:.12f}")
    if len(timings) == 2:
        py, cy = timings["python"], timings["cython"]
        print(f"speed-up: sweep x{py[0] / cy[0]:.0f}, solve x{py[1] / cy[1]:.0f}; "
              f"level difference {abs(py[2] - cy[2]):.1e}")


if __name__ == "__main__":
    main()
