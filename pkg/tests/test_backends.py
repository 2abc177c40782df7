"""The Cython kernels and the pure-Python fallback must agree.

Four of the five kernels are expected to match bit for bit; the Horn
degree sum may differ by a few ulp because the two backends use different
lgamma implementations.
"""

import subprocess
import sys

import numpy as np
import pytest

from dihedral_bessel import _kernels_py as py

core = pytest.importorskip("dihedral_bessel._core")


def test_gegenbauer_scan_bitwise():
    for k in (0.3, 1.0, 2.5):
        for z in (-1.0, -0.3, 0.0, 0.7, 1.0):
            a = py.gegenbauer_scan(60, k, z)
            b = core.gegenbauer_scan(60, k, z)
            np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


def test_s_n_closed_sum_bitwise():
    from dihedral_bessel.series import DihedralParams, _closed_tables

    params = DihedralParams(5, 0.7)
    for big_n in (0, 1, 7, 12):
        coef_j, tables = _closed_tables(params, 0.9, 2.3, big_n)
        a = py.s_n_closed_sum(big_n, coef_j, tables)
        b = core.s_n_closed_sum(big_n, coef_j, tables)
        assert a == b


def test_s_n_closed_sum_fsum_delegates():
    from dihedral_bessel.series import DihedralParams, _closed_tables

    params = DihedralParams(4, 1.3)
    coef_j, tables = _closed_tables(params, 0.4, 1.1, 9)
    a = py.s_n_closed_sum(9, coef_j, tables, use_fsum=True)
    b = core.s_n_closed_sum(9, coef_j, tables, use_fsum=True)
    assert a == b


def test_hyp0f_vec_bitwise():
    rng = np.random.Generator(np.random.Philox(3))
    z = rng.uniform(-3.0, 3.0, size=(40, 7))
    params = [1.4, 0.7, 0.7]
    va, ta, oa = py.hyp0f_vec(params, z, 1e-14, 400, 3)
    vb, tb, ob = core.hyp0f_vec(params, z, 1e-14, 400, 3)
    assert oa and ob and ta == tb
    np.testing.assert_array_equal(va, vb)


def test_bessel_i_norm_vec_bitwise():
    rng = np.random.Generator(np.random.Philox(4))
    v = rng.uniform(0.0, 6.0, size=5000)
    va, ta, oa = py.bessel_i_norm_vec(1.75, v, 1e-14, 600)
    vb, tb, ob = core.bessel_i_norm_vec(1.75, v, 1e-14, 600)
    assert oa and ob and ta == tb
    np.testing.assert_array_equal(va, vb)


def test_horn_degree_sum_close():
    # coefs[s, m] = (beta)_m z_s^m / m! for four variables, 64 degrees
    rng = np.random.Generator(np.random.Philox(5))
    beta, degrees = 0.7, np.arange(64, dtype=float)
    poch = np.concatenate(([1.0], np.cumprod((beta + degrees[:-1]) / (degrees[:-1] + 1.0))))
    z = rng.uniform(-1.5, 1.5, size=4)
    coefs = poch[None, :] * z[:, None] ** degrees[None, :]
    va, taila, ua, oka = py.horn_degree_sum(coefs, 3.5, 1e-14, 4)
    vb, tailb, ub, okb = core.horn_degree_sum(coefs, 3.5, 1e-14, 4)
    assert oka and okb
    assert ua == ub
    assert vb == pytest.approx(va, rel=1e-14)
    assert tailb == pytest.approx(taila, rel=1e-12, abs=1e-300)


def test_env_var_selects_backend():
    code = ("import dihedral_bessel as m; print(m.backend_name())")
    for want in ("python", "cython"):
        out = subprocess.run([sys.executable, "-c", code],
                             env={"PATH": "/usr/bin:/bin", "DIHEDRAL_BESSEL_BACKEND": want},
                             capture_output=True, text=True)
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == want


def test_env_var_rejects_unknown():
    out = subprocess.run([sys.executable, "-c", "import dihedral_bessel"],
                         env={"PATH": "/usr/bin:/bin", "DIHEDRAL_BESSEL_BACKEND": "fortran"},
                         capture_output=True, text=True)
    assert out.returncode != 0
    assert "DIHEDRAL_BESSEL_BACKEND" in out.stderr
