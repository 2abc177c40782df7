"""Acceptance gate: the headline guarantees of the library, each with its
documented tolerance and time budget.  One criterion per test, one summary
line per run (visible with ``pytest -s`` or in captured output).

These deliberately re-state parameter grids instead of reusing fixtures,
so a change that silently narrows coverage elsewhere cannot weaken them.
"""

import math
import time

import numpy as np
import pytest

from dihedral_bessel.config import EvalConfig
from dihedral_bessel.identities import (check_2f1_closed, check_alt_pochhammer,
                                        check_chebyshev_factorization,
                                        check_dirichlet, check_disk_bessel,
                                        check_duplication, check_idgeg,
                                        check_poisson_kernel, check_sn)
from dihedral_bessel.laplace import (EvenDihedralParams, density_h,
                                     eval_boundary_bessel, eval_laplace)
from dihedral_bessel.series import (DihedralParams, PolarPoint,
                                    eval_gegenbauer_series, eval_horn_series)
from dihedral_bessel.simplex import QuadratureScheme, eval_simplex_integral


def _conclude(name: str, worst: float, tol: float, t0: float, budget: float) -> None:
    elapsed = time.perf_counter() - t0
    status = "PASS" if worst <= tol else "FAIL"
    print(f"[acceptance] {name:<26} {status}  worst {worst:.3e}  "
          f"tol {tol:.1e}  ({elapsed:.1f}s / budget {budget:.0f}s)")
    assert worst <= tol, f"{name}: worst deviation {worst:.3e} > {tol:.1e}"
    assert elapsed < budget, f"{name}: {elapsed:.1f}s exceeded budget {budget:.0f}s"


def test_degree_identity_grid():
    # closed form vs direct enumeration of the degree-N coefficients:
    # n in {3,4,5,6}, k in {0.3,0.7,1.0,1.5,2.5}, N <= 10, 20 angle pairs
    t0 = time.perf_counter()
    report = check_sn(tolerance=1e-10)
    assert report.checks == 4 * 5 * 20 * 11
    _conclude("degree-identity", report.max_deviation, 1e-10, t0, 60.0)


def test_boundary_enumeration_identity():
    t0 = time.perf_counter()
    report = check_idgeg(tolerance=1e-12)
    _conclude("boundary-enumeration", report.max_deviation, 1e-12, t0, 10.0)


def test_gegenbauer_vs_horn():
    # 50 random points per (n, k) with rho * r <= 4, raw angles
    t0 = time.perf_counter()
    rng = np.random.Generator(np.random.Philox(2024))
    worst = 0.0
    for n in (3, 4, 5, 6):
        for k in (0.5, 1.0, 2.5):
            params = DihedralParams(n, k)
            for _ in range(50):
                rho, r = rng.uniform(0.1, 2.0, size=2)
                phi, theta = rng.uniform(0.0, 2.0 * math.pi, size=2)
                x = PolarPoint(float(rho), float(phi))
                y = PolarPoint(float(r), float(theta))
                a = eval_gegenbauer_series(params, x, y)
                b = eval_horn_series(params, x, y)
                worst = max(worst, abs(a.value - b.value) / max(1e-12, abs(a.value)))
    _conclude("gegenbauer-vs-horn", worst, 1e-9, t0, 120.0)


def test_series_vs_simplex_integral():
    # 15 points at one million Dirichlet samples each
    t0 = time.perf_counter()
    rng = np.random.Generator(np.random.Philox(2025))
    worst = 0.0
    for i, (n, k) in enumerate([(3, 0.6), (3, 1.0), (4, 1.0), (5, 2.5), (6, 1.5)]):
        params = DihedralParams(n, k)
        scheme = QuadratureScheme("dirichlet-mc", 1_000_000, 900 + i)
        for _ in range(3):
            rho, r = rng.uniform(0.2, 1.5, size=2)
            phi = float(rng.uniform(0.0, math.pi / n))
            theta = float(rng.uniform(0.0, math.pi / n))
            x = PolarPoint(float(rho), phi)
            y = PolarPoint(float(r), theta)
            ref = eval_gegenbauer_series(params, x, y)
            mc = eval_simplex_integral(params, x, y, scheme)
            tol = max(3.0 * mc.error, 1e-2)
            worst = max(worst, abs(mc.value - ref.value) / tol)
    _conclude("series-vs-simplex", worst, 1.0, t0, 600.0)


def test_boundary_bessel_and_laplace():
    # even groups on the wedge boundary: the Bessel average against the
    # series, then the Laplace form against the Bessel average
    t0 = time.perf_counter()
    points = [(1.1, (0.9, 0.5)), (0.7, (1.3, -0.4)), (1.5, (0.3, 0.8))]
    worst_series = 0.0
    for p, k in [(1, 0.8), (1, 2.0), (2, 0.7), (2, 1.5), (3, 1.2)]:
        even = EvenDihedralParams(p, k)
        params = DihedralParams(2 * p, k)
        scheme = QuadratureScheme("dirichlet-mc", 400_000, 7000 + p)
        for rho, y in points:
            res = eval_boundary_bessel(even, rho, y, scheme)
            ref = eval_gegenbauer_series(params, PolarPoint(rho, 0.0),
                                         PolarPoint(math.hypot(*y), math.atan2(y[1], y[0])))
            tol = max(3.0 * res.error, 1e-3)
            worst_series = max(worst_series, abs(res.value - ref.value) / tol)
    worst_pair = 0.0
    for p, k in [(2, 0.7), (2, 1.5), (3, 1.2)]:
        even = EvenDihedralParams(p, k)
        scheme = QuadratureScheme("dirichlet-mc", 200_000, 7100 + p)
        for rho, y in points:
            a = eval_boundary_bessel(even, rho, y, scheme)
            b = eval_laplace(even, rho, y, scheme)
            worst_pair = max(worst_pair, abs(a.value - b.value) / max(1.0, abs(a.value)))
    _conclude("boundary-vs-series", worst_series, 1.0, t0, 600.0)
    _conclude("laplace-vs-boundary", worst_pair, 1e-4, t0, 600.0)


def test_disk_bessel_identity():
    t0 = time.perf_counter()
    report = check_disk_bessel(tolerance=1e-6)
    _conclude("disk-bessel", report.max_deviation, 1e-6, t0, 30.0)


def test_normalization_and_invariance():
    t0 = time.perf_counter()
    worst_norm = 0.0
    for n in (2, 3, 4, 5, 6):
        for k in (0.5, 1.3, 2.5):
            params = DihedralParams(n, k)
            res = eval_gegenbauer_series(params, PolarPoint(0.0, 0.0), PolarPoint(1.2, 0.7))
            worst_norm = max(worst_norm, abs(res.value - 1.0))
    _conclude("normalization", worst_norm, 1e-12, t0, 30.0)

    t1 = time.perf_counter()
    raw = EvalConfig(reduce_angles=False)
    rng = np.random.Generator(np.random.Philox(31))
    worst = 0.0
    for n in (3, 4, 5, 6):
        params = DihedralParams(n, 1.1)
        for _ in range(5):
            rho, r = rng.uniform(0.3, 1.5, size=2)
            phi, theta = rng.uniform(0.0, 2.0 * math.pi, size=2)
            for evaluate in (eval_gegenbauer_series, eval_horn_series):
                base = evaluate(params, PolarPoint(rho, phi), PolarPoint(r, theta), raw).value
                scale = max(1.0, abs(base))
                # argument swap, group rotation by 2 pi / n, reflection
                variants = [
                    evaluate(params, PolarPoint(r, theta), PolarPoint(rho, phi), raw),
                    evaluate(params, PolarPoint(rho, phi + 2.0 * math.pi / n),
                             PolarPoint(r, theta), raw),
                    evaluate(params, PolarPoint(rho, -phi), PolarPoint(r, -theta), raw),
                ]
                for v in variants:
                    worst = max(worst, abs(v.value - base) / scale)
    _conclude("group-invariance", worst, 1e-10, t1, 30.0)


def test_density_support_and_mass():
    t0 = time.perf_counter()
    rho = 1.3
    rng = np.random.Generator(np.random.Philox(88))
    worst_support = 0.0
    for p, k, scheme in [
        (2, 1.1, QuadratureScheme("product-rule", 40)),
        (3, 0.6, QuadratureScheme("dirichlet-mc", 50_000, 41)),
    ]:
        params = EvenDihedralParams(p, k)
        for _ in range(1000):
            rad = rho * (1.0 + float(rng.uniform(1e-3, 2.0)))
            ang = float(rng.uniform(0.0, 2.0 * math.pi))
            z = (rad * math.cos(ang), rad * math.sin(ang))
            worst_support = max(worst_support, abs(density_h(params, rho, z, scheme)))
    _conclude("density-support", worst_support, 0.0, t0, 300.0)

    t1 = time.perf_counter()
    worst_mass = 0.0
    for p, k in [(2, 1.1), (3, 0.6)]:
        params = EvenDihedralParams(p, k)
        res = eval_laplace(params, rho, (0.0, 0.0),
                           QuadratureScheme("dirichlet-mc", 50_000, 42))
        worst_mass = max(worst_mass, abs(res.value - 1.0))
    _conclude("density-mass", worst_mass, 1e-4, t1, 300.0)


def test_auxiliary_identities():
    t0 = time.perf_counter()
    reports = [
        check_duplication(tolerance=1e-12),
        check_alt_pochhammer(tolerance=1e-12),
        check_poisson_kernel(tolerance=1e-8),
        check_chebyshev_factorization(tolerance=1e-12),
        check_dirichlet(tolerance_det=1e-8, tolerance_mc=1e-3),
        check_2f1_closed(tolerance=1e-10),
    ]
    for rep in reports:
        assert rep.passed, f"{rep.name}: {rep.max_deviation:.3e} > {rep.tolerance:.1e}"
    worst_ratio = max(rep.max_deviation / rep.tolerance for rep in reports)
    _conclude("auxiliary-identities", worst_ratio, 1.0, t0, 60.0)
