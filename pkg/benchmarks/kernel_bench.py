"""Time the numba kernels against their numpy fallbacks.

Both implementations of every kernel are importable side by side (the
public names are bound once at import time from HARTREE_LAB_NUMBA), so a
single process can race them directly.  The end-to-end Strang-step timing
at the bottom runs under whichever backend this process imported; rerun
with ``HARTREE_LAB_NUMBA=0`` to see the full-solver cost on the fallback.

Usage: python3 benchmarks/kernel_bench.py [--size 262144] [--repeats 7]
"""

import argparse
import time

import numpy as np

from hartree_lab import _kernels
from hartree_lab.grid import Grid, field_from_function
from hartree_lab.admissibility import EquationParams
from hartree_lab.solver import default_dt, step_strang


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512 * 512, help="flat array length")
    ap.add_argument("--repeats", type=int, default=7, help="timing repeats (best is kept)")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    values = (rng.normal(size=args.size) + 1j * rng.normal(size=args.size)).astype(np.complex128)
    weights = rng.uniform(0.1, 3.0, size=args.size)
    potential = rng.normal(size=args.size)

    races = [
        ("weighted_abs_pow_sum(r=2)",
         lambda: _kernels._weighted_abs_pow_sum_numba(values, weights, 2.0),
         lambda: _kernels._weighted_abs_pow_sum_numpy(values, weights, 2.0)),
        ("weighted_abs_pow_sum(r=2.5)",
         lambda: _kernels._weighted_abs_pow_sum_numba(values, weights, 2.5),
         lambda: _kernels._weighted_abs_pow_sum_numpy(values, weights, 2.5)),
        ("weighted_abs_pow(p=2.25)",
         lambda: _kernels._weighted_abs_pow_numba(values, weights, 2.25),
         lambda: _kernels._weighted_abs_pow_numpy(values, weights, 2.25)),
        ("weighted_abs_max",
         lambda: _kernels._weighted_abs_max_numba(values, weights),
         lambda: _kernels._weighted_abs_max_numpy(values, weights)),
        ("phase_kick",
         lambda: _kernels._phase_kick_numba(values, potential, -0.125),
         lambda: _kernels._phase_kick_numpy(values, potential, -0.125)),
        ("hartree_assemble(p-2=0.25)",
         lambda: _kernels._hartree_assemble_numba(values, potential, weights, 0.25),
         lambda: _kernels._hartree_assemble_numpy(values, potential, weights, 0.25)),
    ]

    print(f"active backend: {_kernels.backend_name()}   n = {args.size}")
    if not _kernels.USING_NUMBA:
        print("numba unavailable or disabled: the 'numba' column is the undecorated Python loop")
    print(f"{'kernel':<28} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, f_nb, f_np in races:
        f_nb()  # JIT warm-up outside the timed region
        t_nb = best_of(f_nb, args.repeats)
        t_np = best_of(f_np, args.repeats)
        print(f"{name:<28} {t_nb * 1e3:>8.3f}ms {t_np * 1e3:>8.3f}ms {t_np / t_nb:>7.2f}x")

    # end-to-end: one Strang step on a 2-D grid of comparable size
    n = 512
    g = Grid(2, n, 8.0)
    params = EquationParams(dim=2, alpha="3/2", b="1/2", p="9/4", lam=-1)
    u = field_from_function(g, lambda x, y: 0.1 * np.exp(-(x**2 + y**2) / 2) * np.exp(1j * x))
    dt = default_dt(g)
    step_strang(u, params, dt)  # warm-up
    t = best_of(lambda: step_strang(u, params, dt), max(3, args.repeats // 2))
    print(f"\nstep_strang on {n}x{n} grid [{_kernels.backend_name()}]: {t * 1e3:.1f} ms/step")


if __name__ == "__main__":
    main()
