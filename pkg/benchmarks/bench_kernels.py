"""Compare the compiled subset DP with its pure-python fallback, and both
with the Pfaffian formula, on cylinder and torus lattices.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from mdpfaffian import _kernels
from mdpfaffian.generators import cylinder_lattice, torus_grid
from mdpfaffian.md_pfaffian import boundary_md_partition
from mdpfaffian.oracle import integer_arrays
from mdpfaffian.rings import RATIONAL


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def instances():
    for c, h in [(4, 2), (4, 3), (6, 2), (4, 4), (6, 3), (8, 2)]:
        yield f"cylinder {c}x{h}", cylinder_lattice(c, h)
    for m, n in [(2, 4), (4, 4), (4, 5)]:
        yield f"holed torus {m}x{n}", torus_grid(m, n, RATIONAL, hole=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels.md_sum_numba is None:
        raise SystemExit("numba is disabled; unset MDPFAFFIAN_DISABLE_NUMBA to compare")
    _kernels.warmup()
    print(f"{'graph':<18} {'|V|':>4} {'numba_s':>9} {'python_s':>9} {'speedup':>8} {'pfaffian_s':>10}  agree")
    for name, g in instances():
        arrays = integer_arrays(g)
        t_nb, z_nb = best_of(lambda: _kernels.md_sum_numba(g.n_vertices, *arrays), args.repeat)
        t_py, z_py = best_of(lambda: _kernels.md_sum_python(g.n_vertices, *arrays), args.repeat)
        t_pf, res = best_of(lambda: boundary_md_partition(g), args.repeat)
        agree = z_nb == z_py == res.total
        print(f"{name:<18} {g.n_vertices:>4} {t_nb:>9.4f} {t_py:>9.4f} {t_py / t_nb:>8.1f} {t_pf:>10.4f}  {agree}")


if __name__ == "__main__":
    main()
