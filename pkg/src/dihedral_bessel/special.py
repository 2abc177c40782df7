"""Scalar special functions shared by every representation.

Everything returning a SeriesValue reports the partial-sum value, an
estimated truncation bound and the number of terms consumed, so callers
can propagate honest error estimates.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .config import EvalConfig

_DEFAULT_CFG = EvalConfig()


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to meet its tolerance within its cap."""


@dataclass
class SeriesValue:
    value: float
    tail_bound: float
    terms_used: int


@dataclass(frozen=True)
class HornArgs:
    """Arguments of the confluent Horn function Phi2 in n variables:
    numerator parameters beta_s, one denominator parameter gamma, and the
    variables z_s."""

    betas: tuple[float, ...]
    gamma: float
    zs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.betas) == 0 or len(self.betas) != len(self.zs):
            raise ValueError("betas and zs must be nonempty and of equal length")
        if _is_nonpositive_integer(self.gamma):
            raise ValueError(f"gamma must not be a nonpositive integer, got {self.gamma}")


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def pochhammer(x: float, m: int) -> float:
    """Rising factorial (x)_m = x (x+1) ... (x+m-1); equals 1 for m = 0."""
    if m < 0:
        raise ValueError("m must be >= 0")
    out = 1.0
    for i in range(m):
        out *= x + i
    return out


def gegenbauer(j: int, k: float, z: float) -> float:
    """Gegenbauer polynomial C_j^(k)(z) on [-1, 1], k > 0."""
    if k <= 0.0:
        raise ValueError(f"Gegenbauer index k must be > 0, got {k}")
    if j < 0:
        raise ValueError("degree must be >= 0")
    if abs(z) > 1.0 + 1e-12:
        raise ValueError(f"argument must lie in [-1, 1], got {z}")
    z = min(1.0, max(-1.0, z))
    return float(kernels.gegenbauer_scan(j, k, z)[j])


def gegenbauer_table(jmax: int, k: float, z: float) -> np.ndarray:
    """C_j^(k)(z) for all j = 0..jmax."""
    if k <= 0.0:
        raise ValueError(f"Gegenbauer index k must be > 0, got {k}")
    z = min(1.0, max(-1.0, z))
    return np.asarray(kernels.gegenbauer_scan(jmax, k, z))


def chebyshev_t(n: int, z: float) -> float:
    """Chebyshev polynomial of the first kind, any real argument."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return 1.0
    prev, cur = 1.0, z
    for _ in range(2, n + 1):
        prev, cur = cur, 2.0 * z * cur - prev
    return cur


def chebyshev_t_coeffs(n: int) -> np.ndarray:
    """Monomial coefficients of T_n, index = power of z (exact integers)."""
    if n == 0:
        return np.array([1.0])
    prev = np.zeros(n + 1)
    cur = np.zeros(n + 1)
    prev[0] = 1.0
    cur[1] = 1.0
    for _ in range(2, n + 1):
        nxt = np.zeros(n + 1)
        nxt[1:] = 2.0 * cur[:-1]
        nxt -= prev
        prev, cur = cur, nxt
    return cur


def bessel_i(nu: float, v: float, cfg: EvalConfig | None = None) -> SeriesValue:
    """Modified Bessel I_nu(v) by its ascending series, v >= 0, nu >= 0."""
    cfg = cfg or _DEFAULT_CFG
    if nu < 0.0:
        raise ValueError(f"nu must be >= 0, got {nu}")
    if v < 0.0:
        raise ValueError(f"v must be >= 0, got {v}")
    if v == 0.0:
        return SeriesValue(1.0 if nu == 0.0 else 0.0, 0.0, 1)
    x = (0.5 * v) ** 2
    term = math.exp(nu * math.log(0.5 * v) - math.lgamma(nu + 1.0))
    total, comp = term, 0.0
    for m in range(1, cfg.max_terms + 1):
        term *= x / (m * (nu + m))
        s2 = total + term
        comp += (total - s2) + term if abs(total) >= term else (term - s2) + total
        total = s2
        ratio = x / ((m + 1.0) * (nu + m + 1.0))
        if ratio < 1.0:
            tail = term * ratio / (1.0 - ratio)
            if tail <= cfg.tol * total:
                return SeriesValue(total + comp, tail, m + 1)
    raise ConvergenceError(f"bessel_i({nu}, {v}) did not converge in {cfg.max_terms} terms")


def bessel_i_norm(nu: float, v: float, cfg: EvalConfig | None = None) -> SeriesValue:
    """Normalized Bessel i_nu(v) = Gamma(nu+1) (2/v)^nu I_nu(v), i_nu(0) = 1.

    Series sum_m (v/2)^(2m) / (m! (nu+1)_m), valid for nu > -1.
    """
    cfg = cfg or _DEFAULT_CFG
    if nu <= -1.0:
        raise ValueError(f"nu must be > -1, got {nu}")
    if v < 0.0:
        raise ValueError(f"v must be >= 0, got {v}")
    x = (0.5 * v) ** 2
    term, total, comp = 1.0, 1.0, 0.0
    for m in range(1, cfg.max_terms + 1):
        term *= x / (m * (nu + m))
        s2 = total + term
        comp += (total - s2) + term if abs(total) >= term else (term - s2) + total
        total = s2
        ratio = x / ((m + 1.0) * (nu + m + 1.0))
        if ratio < 1.0:
            tail = term * ratio / (1.0 - ratio)
            if tail <= cfg.tol * total:
                return SeriesValue(total + comp, tail, m + 1)
    raise ConvergenceError(f"bessel_i_norm({nu}, {v}) did not converge in {cfg.max_terms} terms")


def gauss_2f1(a: float, b: float, c: float, z: float,
              cfg: EvalConfig | None = None) -> SeriesValue:
    """Gauss hypergeometric 2F1(a, b; c; z) by its power series, |z| < 1."""
    cfg = cfg or _DEFAULT_CFG
    if _is_nonpositive_integer(c):
        raise ValueError(f"c must not be a nonpositive integer, got {c}")
    if abs(z) >= 1.0:
        raise ConvergenceError(f"2F1 series requires |z| < 1, got z = {z}")
    term, total, comp = 1.0, 1.0, 0.0
    run = 0
    # terms cap scales with 1/log|z| near the radius of convergence
    cap = max(cfg.max_terms, int(60.0 / max(1e-3, -math.log(max(abs(z), 1e-12)))) + 32)
    for j in range(cap):
        nxt = term * (a + j) * (b + j) / ((c + j) * (1.0 + j)) * z
        s2 = total + nxt
        comp += (total - s2) + nxt if abs(total) >= abs(nxt) else (nxt - s2) + total
        total = s2
        term = nxt
        q = abs(z) * abs((a + j + 1) * (b + j + 1) / ((c + j + 1) * (j + 2.0)))
        qhat = max(abs(z), q)
        if qhat < 1.0:
            tail = abs(term) * qhat / (1.0 - qhat)
            if tail <= cfg.tol * max(abs(total + comp), 1e-300):
                run += 1
                if run >= cfg.tail_window:
                    return SeriesValue(total + comp, tail, j + 2)
            else:
                run = 0
    raise ConvergenceError(f"2F1({a}, {b}; {c}; {z}) did not converge in {cap} terms")


def hyp_0f(params: tuple[float, ...], z: float,
           cfg: EvalConfig | None = None) -> SeriesValue:
    """Generalized hypergeometric 0F_q(params; z); entire in z."""
    cfg = cfg or _DEFAULT_CFG
    for a in params:
        if _is_nonpositive_integer(a):
            raise ValueError(f"denominator parameter {a} is a nonpositive integer")
    term, total, comp = 1.0, 1.0, 0.0
    run = 0
    for t in range(1, cfg.max_terms + 1):
        denom = float(t)
        for a in params:
            denom *= a + t - 1.0
        term *= z / denom
        s2 = total + term
        comp += (total - s2) + term if abs(total) >= abs(term) else (term - s2) + total
        total = s2
        if abs(term) <= cfg.tol * max(abs(total + comp), 1e-300):
            run += 1
            if run >= cfg.tail_window:
                return SeriesValue(total + comp, abs(term) * cfg.tail_window, t)
        else:
            run = 0
    raise ConvergenceError(f"0F{len(params)}({params}; {z}) did not converge")


def horn_phi2(args: HornArgs, cfg: EvalConfig | None = None) -> SeriesValue:
    """Confluent Horn function Phi2 in n variables.

    Multiple series sum over multi-indices J of
    prod_s (beta_s)_{j_s} z_s^{j_s} / j_s!  divided by (gamma)_{|J|}.
    Summed by total degree: the degree-N coefficient is an iterated
    convolution of the univariate coefficient rows, and the degree scan
    stops after ``cfg.tail_window`` consecutive negligible degrees.
    """
    cfg = cfg or _DEFAULT_CFG
    n = len(args.betas)
    degree_cap = 32
    while True:
        coefs = np.empty((n, degree_cap + 1))
        coefs[:, 0] = 1.0
        m = np.arange(1, degree_cap + 1, dtype=float)
        for s in range(n):
            coefs[s, 1:] = np.cumprod(args.zs[s] * (args.betas[s] + m - 1.0) / m)
        value, tail, used, ok = kernels.horn_degree_sum(
            coefs, args.gamma, cfg.tol, cfg.tail_window)
        if ok:
            return SeriesValue(float(value), float(tail), int(used))
        if degree_cap >= cfg.max_degree:
            raise ConvergenceError(
                f"Horn Phi2 did not converge by total degree {degree_cap}")
        degree_cap = min(2 * degree_cap, cfg.max_degree)
