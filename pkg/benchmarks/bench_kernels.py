"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat R]

Times sow_keys on a kernel-sized block, poly_mul on packed enumerator terms,
and an end-to-end Monte Carlo run with each backend swapped in.
"""

import argparse
import timeit

import numpy as np

from sowdist import _pykernels, kernels, oracle
from sowdist.gf import field_of_order
from sowdist.ldpc import EnsembleSpec, check_enumerator
from sowdist.orbits import build_orbit_table
from sowdist.poly import power

try:
    from sowdist import _kernels
except ImportError:
    _kernels = None


def sow_keys_case(q=3, n=8, words=729):
    t = build_orbit_table(field_of_order(q))
    rng = np.random.default_rng(0)
    W = rng.integers(0, q, size=(words, n))
    weights = np.array([(n + 1) ** s for s in range(t.nvars)], dtype=np.int64)
    return (W, W, t.lookup, q, weights)


def poly_mul_case(q=3, d=4, k=3):
    t = build_orbit_table(field_of_order(q))
    A = power(check_enumerator(d, t), k)
    radix = A.degree() * 2 + 1
    keys = [sum(e * radix**s for s, e in enumerate(exp)) for exp in A._num]
    coefs = list(A._num.values())
    return (keys, coefs, keys, coefs)


def monte_carlo(impl, trials):
    saved = kernels.sow_keys
    oracle.kernels.sow_keys = impl.sow_keys
    try:
        F = field_of_order(2)
        spec = EnsembleSpec("I", F, 3, 6, 12)
        oracle.monte_carlo_ldpc(spec, trials, seed=1)
    finally:
        oracle.kernels.sow_keys = saved


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--trials", type=int, default=300)
    args = ap.parse_args()

    backends = [("python", _pykernels)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled extension not built; timing the fallback only")

    sk, pm = sow_keys_case(), poly_mul_case()
    rows = []
    for name, impl in backends:
        rows.append((
            name,
            best(lambda: impl.sow_keys(*sk), args.repeat),
            best(lambda: impl.poly_mul(*pm), args.repeat),
            best(lambda: monte_carlo(impl, args.trials), max(1, args.repeat // 2)),
        ))
    print(f"{'backend':8s} {'sow_keys':>10s} {'poly_mul':>10s} {'mc':>10s}   (seconds, best of {args.repeat})")
    for name, a, b, c in rows:
        print(f"{name:8s} {a:10.4f} {b:10.4f} {c:10.4f}")
    if len(rows) == 2:
        base, fast = rows
        print("speedup  " + " ".join(f"{x / y:10.2f}" for x, y in zip(base[1:], fast[1:])))


if __name__ == "__main__":
    main()
