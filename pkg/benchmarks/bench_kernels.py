"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Micro-benchmarks call both kernel modules directly on the same inputs and
check that they agree. The end-to-end rows time ``gkm examples`` in a
subprocess, once per backend (``GKM_PURE_PYTHON=1`` forces the fallback).
"""
import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from gkm import _kernels_py

try:
    from gkm import _kernels
except ImportError:
    _kernels = None


def random_terms(rng, nvars, nterms, deg):
    return {tuple(rng.randint(-deg, deg) for _ in range(nvars)): rng.randint(-9, 9) or 1 for _ in range(nterms)}


def random_matrix(rng, nrows, ncols):
    return [[rng.randint(-5, 5) for _ in range(ncols)] for _ in range(nrows)]


def micro(repeat):
    rng = random.Random(1)
    a, b = random_terms(rng, 2, 60, 6), random_terms(rng, 2, 60, 6)
    m = random_matrix(rng, 30, 40)
    cases = [
        ("mul_terms 60x60 terms", lambda k: k.mul_terms(a, b)),
        ("add_terms 60+60 terms", lambda k: k.add_terms(a, b, -3)),
        ("row_reduce 30x40", lambda k: k.row_reduce(m, 40)),
    ]
    rows = []
    for name, fn in cases:
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=20, repeat=repeat)) / 20
        if _kernels is None:
            rows.append((name, t_py, None))
            continue
        if fn(_kernels) != fn(_kernels_py):
            raise SystemExit(f"{name}: backends disagree")
        t_cy = min(timeit.repeat(lambda: fn(_kernels), number=20, repeat=repeat)) / 20
        rows.append((name, t_py, t_cy))
    return rows


def end_to_end(suite, theory):
    out = {}
    for backend, extra in (("python", {"GKM_PURE_PYTHON": "1"}), ("cython", {})):
        env = {**os.environ, **extra}
        t0 = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "gkm.cli", "examples", suite, "--theory", theory],
            env=env, capture_output=True, text=True,
        )
        out[backend] = (time.perf_counter() - t0, proc.stdout, proc.returncode)
    if out["python"][1:] != out["cython"][1:]:
        raise SystemExit(f"examples {suite}: backends disagree")
    return out["python"][0], out["cython"][0]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'case':32} {'python':>12} {'cython':>12} {'speedup':>8}")
    rows = micro(args.repeat)
    if _kernels is not None:
        rows += [(f"examples {s} {t}", *end_to_end(s, t)) for s, t in (("g2", "K"), ("omega-su2", "K"))]
    for name, t_py, t_cy in rows:
        if t_cy is None:
            print(f"{name:32} {t_py * 1e3:10.3f}ms {'n/a':>12}")
        else:
            print(f"{name:32} {t_py * 1e3:10.3f}ms {t_cy * 1e3:10.3f}ms {t_py / t_cy:7.2f}x")


if __name__ == "__main__":
    main()
