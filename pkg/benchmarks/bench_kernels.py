"""Backend benchmark: compiled kernels vs the NumPy/Python fallback.

Runs each kernel on a representative workload, times both backends and
reports the speedup plus the maximum cross-backend deviation.

    python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from dihedral_bessel import _kernels_py

try:
    from dihedral_bessel import _core
except ImportError:
    _core = None


def _time(fn, repeats):
    best = math.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _deviation(a, b):
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    scale = np.maximum(1.0, np.abs(a))
    return float(np.max(np.abs(a - b) / scale))


def workloads():
    rng = np.random.Generator(np.random.Philox(7))

    # Horn degree scan: n = 5 rows, moderate argument size
    n, d, k = 5, 256, 0.7
    zs = 3.0 * rng.uniform(-1.0, 1.0, size=n)
    coefs = np.empty((n, d))
    coefs[:, 0] = 1.0
    m = np.arange(1, d, dtype=float)
    for s in range(n):
        coefs[s, 1:] = np.cumprod(zs[s] * (k + m - 1.0) / m)
    yield ("horn_degree_sum", lambda mod: mod.horn_degree_sum(coefs, n * k, 1e-14, 5),
           lambda out: out[0])

    # composition sum at N = 12, n = 5
    big_n, jcap = 12, 3
    coef_j = rng.uniform(-1.0, 1.0, size=jcap)
    tables = rng.uniform(-1.0, 1.0, size=(jcap, n, big_n + 1))
    yield ("s_n_closed_sum", lambda mod: mod.s_n_closed_sum(big_n, coef_j, tables),
           lambda out: out)

    # 0F over a Monte Carlo batch
    params = np.array([1.4, 0.7, 0.7])
    z = rng.uniform(-2.0, 2.0, size=1_000_000)
    yield ("hyp0f_vec", lambda mod: mod.hyp0f_vec(params, z, 1e-12, 256, 5),
           lambda out: out[0])

    # normalized Bessel over a Monte Carlo batch
    v = rng.uniform(0.0, 6.0, size=1_000_000)
    yield ("bessel_i_norm_vec", lambda mod: mod.bessel_i_norm_vec(1.75, v, 1e-12, 512),
           lambda out: out[0])

    # Gegenbauer recurrence scan
    yield ("gegenbauer_scan", lambda mod: mod.gegenbauer_scan(2000, 0.7, 0.3),
           lambda out: out)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    if _core is None:
        print("compiled backend not available; build the extension first "
              "(pip install -e . --no-build-isolation)")
        return 1

    print(f"{'kernel':<20} {'python':>10} {'cython':>10} {'speedup':>9} {'max dev':>10}")
    for name, call, extract in workloads():
        t_py, out_py = _time(lambda: call(_kernels_py), args.repeats)
        t_cy, out_cy = _time(lambda: call(_core), args.repeats)
        dev = _deviation(extract(out_py), extract(out_cy))
        print(f"{name:<20} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms "
              f"{t_py / t_cy:>8.1f}x {dev:>10.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
