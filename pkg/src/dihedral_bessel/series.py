"""Series representations of the dihedral-group generalized Bessel function
with equal multiplicities, plus the finite-sum identity they hinge on.

Conventions: the group has 2n reflections (n >= 2), the multiplicity is a
single k > 0, and points are polar, x = rho e^{i phi}, y = r e^{i theta},
with the fundamental wedge [0, pi/n].  With the normalization chosen so
that D(0, y) = 1, the Gegenbauer expansion reads

    D(x, y) = Gamma(nk) sum_j n (j+k) (rho r / 2)^{nj} / Gamma(nj+nk+1)
              * i_{nj+nk}(rho r) * C_j(cos n phi) C_j(cos n theta) / C_j(1)

and its rearrangement by powers of (rho r / 2) has coefficients
S_N(n, k, phi, theta), which the closed form re-expresses as a sum over
compositions of N (the degree-N identity verified by s_n_direct vs
s_n_closed).
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .config import EvalConfig, EvalResult
from .special import ConvergenceError, HornArgs, bessel_i_norm, gegenbauer_table, horn_phi2

_DEFAULT_CFG = EvalConfig()


@dataclass(frozen=True)
class DihedralParams:
    """Even dihedral group of order 4p is n = 2p; odd groups use n odd."""

    n: int
    k: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise ValueError(f"k must be a finite positive real, got {self.k!r}")

    @property
    def gamma_exp(self) -> float:
        return self.n * self.k


@dataclass(frozen=True)
class PolarPoint:
    radius: float
    angle: float

    def __post_init__(self) -> None:
        if not (self.radius >= 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be finite and >= 0, got {self.radius!r}")
        if not math.isfinite(self.angle):
            raise ValueError(f"angle must be finite, got {self.angle!r}")

    def cartesian(self) -> tuple[float, float]:
        return (self.radius * math.cos(self.angle), self.radius * math.sin(self.angle))


def wedge_reduce(point: PolarPoint, n: int) -> PolarPoint:
    """Map the angle into the closed fundamental wedge [0, pi/n] using the
    rotation-reflection symmetries of the group."""
    period = 2.0 * math.pi / n
    a = math.fmod(point.angle, period)
    if a < 0.0:
        a += period
    if a > 0.5 * period:
        a = period - a
    return PolarPoint(point.radius, a)


def b_coeffs(theta: float, n: int) -> np.ndarray:
    """Cosine grid b_s = cos(theta + 2 pi s / n) for s = 1..n.

    These are the roots structure of 2 z^n T_n(1/z) - 2 z^n cos(n theta);
    they always sum to zero.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    s = np.arange(1, n + 1, dtype=float)
    return np.cos(theta + 2.0 * math.pi * s / n)


def normalization_constant(n: int, k: float) -> float:
    """c_{n,k} = n B(k+1/2, 1/2) Gamma(nk), the constant that makes
    D(0, y) = 1."""
    log_beta = math.lgamma(k + 0.5) + math.lgamma(0.5) - math.lgamma(k + 1.0)
    return n * math.exp(log_beta + math.lgamma(n * k))


def s_n_direct(params: DihedralParams, phi: float, theta: float, big_n: int) -> float:
    """Degree-N coefficient of the double series: enumerate (j, m) with
    2m + nj = N."""
    if big_n < 0:
        raise ValueError("N must be >= 0")
    n, k = params.n, params.k
    jmax = big_n // n
    ctab_phi = gegenbauer_table(jmax, k, math.cos(n * phi))
    ctab_theta = gegenbauer_table(jmax, k, math.cos(n * theta))
    ctab_one = gegenbauer_table(jmax, k, 1.0)
    terms = []
    for j in range(jmax + 1):
        rem = big_n - n * j
        if rem % 2 != 0:
            continue
        m = rem // 2
        w = n * (j + k) * math.exp(-math.lgamma(n * (j + k) + m + 1.0)
                                   - math.lgamma(m + 1.0))
        terms.append(w * ctab_phi[j] * ctab_theta[j] / ctab_one[j])
    return math.fsum(terms)


def _closed_tables(params: DihedralParams, phi: float, theta: float, big_n: int):
    """coef_j and (k+j)_m b_s^m / m! tables feeding the composition sum."""
    n, k = params.n, params.k
    jcap = big_n // n + 1 if big_n >= n else 1
    q = -(2.0 ** (2 - n)) * math.sin(n * theta) * math.sin(n * phi)
    coef_j = np.empty(jcap)
    coef_j[0] = 1.0
    for j in range(1, jcap):
        coef_j[j] = coef_j[j - 1] * q * (k + j - 1.0) ** 2 / ((2.0 * k + j - 1.0) * j)
    b = b_coeffs(theta - phi, n)
    m = np.arange(1, big_n + 1, dtype=float)
    tables = np.empty((jcap, n, big_n + 1))
    for j in range(jcap):
        poch = np.concatenate(([1.0], np.cumprod((k + j + m - 1.0) / m)))
        for s in range(n):
            tables[j, s] = poch * b[s] ** np.arange(big_n + 1)
    return coef_j, tables


def s_n_closed(params: DihedralParams, phi: float, theta: float, big_n: int,
               cfg: EvalConfig | None = None) -> float:
    """Closed form of the degree-N coefficient: 2^N / Gamma(nk + N) times a
    sum over weak compositions of N into n parts with an inner Gegenbauer
    product-linearization index."""
    cfg = cfg or _DEFAULT_CFG
    if big_n < 0:
        raise ValueError("N must be >= 0")
    n, k = params.n, params.k
    if n < 3:
        raise ValueError("the closed form needs n >= 3")
    ncomp = math.comb(big_n + n - 1, n - 1)
    if ncomp * (big_n // n + 1) > cfg.composition_cap:
        raise ConvergenceError(
            f"composition count {ncomp} exceeds cap {cfg.composition_cap}")
    coef_j, tables = _closed_tables(params, phi, theta, big_n)
    if cfg.extended_precision:
        from . import _kernels_py
        inner = _kernels_py.s_n_closed_sum(big_n, coef_j, tables, use_fsum=True)
    else:
        inner = kernels.s_n_closed_sum(big_n, coef_j, tables)
    return 2.0 ** big_n * math.exp(-math.lgamma(n * k + big_n)) * inner


def idgeg_sum(params: DihedralParams, theta: float, big_n: int) -> float:
    """Boundary specialization (phi = 0) of the degree-N coefficient as an
    independent enumeration: 2^N / Gamma(nk+N) sum over compositions
    (j_1..j_n) of N of prod_s (k)_{j_s} b_s^{j_s} / j_s!.

    Deliberately avoids the table/kernel machinery of s_n_closed.
    """
    n, k = params.n, params.k
    b = b_coeffs(theta, n)
    terms: list[float] = []

    def rec(s: int, remaining: int, prod: float) -> None:
        if s == n - 1:
            p = prod
            for i in range(remaining):
                p *= (k + i) * b[s] / (i + 1.0)
            terms.append(p)
            return
        p = prod
        for js in range(remaining + 1):
            if js > 0:
                p *= (k + js - 1.0) * b[s] / js
            rec(s + 1, remaining - js, p)

    rec(0, big_n, 1.0)
    return 2.0 ** big_n * math.exp(-math.lgamma(n * k + big_n)) * math.fsum(terms)


def _angles(params: DihedralParams, x: PolarPoint, y: PolarPoint, cfg: EvalConfig):
    if cfg.reduce_angles:
        x = wedge_reduce(x, params.n)
        y = wedge_reduce(y, params.n)
    return x, y


def eval_gegenbauer_series(params: DihedralParams, x: PolarPoint, y: PolarPoint,
                           cfg: EvalConfig | None = None) -> EvalResult:
    """Gegenbauer-Bessel expansion of D(x, y); valid for n >= 2."""
    cfg = cfg or _DEFAULT_CFG
    x, y = _angles(params, x, y, cfg)
    n, k = params.n, params.k
    gamma = n * k
    rr = x.radius * y.radius
    log_half_rr = math.log(0.5 * rr) if rr > 0.0 else 0.0
    cphi = math.cos(n * x.angle)
    ctheta = math.cos(n * y.angle)
    jcap = cfg.max_terms
    tab_phi = gegenbauer_table(jcap, k, cphi)
    tab_theta = gegenbauer_table(jcap, k, ctheta)
    tab_one = gegenbauer_table(jcap, k, 1.0)
    lg_gamma = math.lgamma(gamma)
    exp_rr = math.exp(rr)

    total, comp, err = 0.0, 0.0, 0.0
    run = 0
    inner_terms = 0
    for j in range(jcap + 1):
        if rr > 0.0:
            base = n * (j + k) * math.exp(lg_gamma - math.lgamma(n * j + gamma + 1.0)
                                          + n * j * log_half_rr)
        else:
            base = n * (j + k) * math.exp(lg_gamma - math.lgamma(n * j + gamma + 1.0)) \
                if j == 0 else 0.0
        ib = bessel_i_norm(n * j + gamma, rr, cfg)
        inner_terms += ib.terms_used
        term = base * ib.value * tab_phi[j] * tab_theta[j] / tab_one[j]
        s2 = total + term
        comp += (total - s2) + term if abs(total) >= abs(term) else (term - s2) + total
        total = s2
        err += abs(base) * tab_one[j] * ib.tail_bound
        # |C_j(z)| <= C_j(1) and i_nu(v) <= e^v bound the whole tail term
        bound = abs(base) * tab_one[j] * exp_rr
        if bound <= cfg.tol * max(abs(total + comp), 1e-300):
            run += 1
            if run >= cfg.tail_window:
                return EvalResult(float(total + comp),
                                  float(err + cfg.tail_window * bound),
                                  terms_used=j + 1)
        else:
            run = 0
    raise ConvergenceError(
        f"Gegenbauer series did not converge within {jcap} terms (rho*r = {rr})")


def eval_horn_series(params: DihedralParams, x: PolarPoint, y: PolarPoint,
                     cfg: EvalConfig | None = None) -> EvalResult:
    """Horn-function expansion of D(x, y) for n >= 3.

    With the D(0, y) = 1 normalization the prefactor collapses to 1:

        D = sum_j (k)_j^2 / ((2k)_j (nk)_{nj} j!) q^j
            * Phi2(k+j, .., k+j; nk+nj; rho r b_1, .., rho r b_n),
        q = -4 (rho r / 2)^n sin(n theta) sin(n phi),  b_s = b_s^{theta-phi, n}.
    """
    cfg = cfg or _DEFAULT_CFG
    if params.n < 3:
        raise ValueError("the Horn expansion needs n >= 3")
    x, y = _angles(params, x, y, cfg)
    n, k = params.n, params.k
    rr = x.radius * y.radius
    q = -4.0 * (0.5 * rr) ** n * math.sin(n * y.angle) * math.sin(n * x.angle)
    zs = tuple(rr * b_coeffs(y.angle - x.angle, n))

    coef = 1.0
    total, comp, err = 0.0, 0.0, 0.0
    run = 0
    for j in range(cfg.max_terms):
        phi2 = horn_phi2(HornArgs((k + j,) * n, n * k + n * j, zs), cfg)
        term = coef * phi2.value
        s2 = total + term
        comp += (total - s2) + term if abs(total) >= abs(term) else (term - s2) + total
        total = s2
        err += abs(coef) * phi2.tail_bound
        if abs(term) <= cfg.tol * max(abs(total + comp), 1e-300):
            run += 1
            if run >= cfg.tail_window:
                return EvalResult(total + comp, err + cfg.tail_window * abs(term),
                                  terms_used=j + 1)
        else:
            run = 0
        ratio = q * (k + j) ** 2 / ((2.0 * k + j) * (j + 1.0))
        for i in range(n):
            ratio /= n * k + n * j + i
        coef *= ratio
    raise ConvergenceError(f"Horn expansion did not converge within {cfg.max_terms} terms")


def boundary_horn(params: DihedralParams, rho: float, r: float, theta: float,
                  cfg: EvalConfig | None = None) -> EvalResult:
    """D(rho, y) for x on the wedge boundary phi = 0: a single Horn value
    Phi2(k, .., k; nk; rho r cos(theta + 2 pi s / n), s = 0..n-1)."""
    cfg = cfg or _DEFAULT_CFG
    if params.n < 3:
        raise ValueError("the Horn expansion needs n >= 3")
    if rho < 0.0 or r < 0.0:
        raise ValueError("radii must be >= 0")
    n, k = params.n, params.k
    zs = tuple(rho * r * b_coeffs(theta, n))
    sv = horn_phi2(HornArgs((k,) * n, n * k, zs), cfg)
    return EvalResult(sv.value, sv.tail_bound, terms_used=sv.terms_used)
