"""Compare the compiled and pure-Python rank kernels.

    python benchmarks/bench_rank.py [--manifold Sigma2] [--k 12 14 16]

Times the rank of every differential block of the chosen complexes with both
kernels (same integer rows, so only the kernel differs) and checks that the
ranks agree.
"""
import argparse
import time

from confbetti import _rank_py, catalog
from confbetti._backend import _rank_ext
from confbetti.cecomplex import build_complex, build_generators


def blocks(name, ks):
    m = catalog(name)
    gs = build_generators(m)
    for k in ks:
        cx = build_complex(m, k, gs)
        yield k, [(mat.integer_rows(), mat.cols) for mat in cx.diff.values() if not mat.is_zero()]


def timed(fn, mats):
    start = time.perf_counter()
    ranks = [fn(rows, ncols) for rows, ncols in mats]
    return time.perf_counter() - start, ranks


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--manifold", default="Sigma2")
    ap.add_argument("--k", type=int, nargs="+", default=[10, 14, 18, 22])
    args = ap.parse_args()
    if _rank_ext is None:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'k':>3} {'blocks':>6} {'nnz':>8} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for k, mats in blocks(args.manifold, args.k):
        nnz = sum(sum(len(r) for r in rows) for rows, _ in mats)
        t_py, r_py = timed(_rank_py.rank_int_rows, mats)
        if _rank_ext is None:
            print(f"{k:>3} {len(mats):>6} {nnz:>8} {t_py:>9.3f} {'-':>9} {'-':>8}")
            continue
        t_c, r_c = timed(_rank_ext.rank_int_rows, mats)
        assert r_py == r_c, "kernels disagree"
        print(f"{k:>3} {len(mats):>6} {nnz:>8} {t_py:>9.3f} {t_c:>9.3f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
