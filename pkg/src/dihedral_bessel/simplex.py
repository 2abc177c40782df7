"""Simplex-integral representation and Dirichlet sampling utilities.

The representation integrates an exponential times a 0F_{n-1} kernel
against the weight prod u_s^{k-1} over the standard simplex.  The default
scheme absorbs the weight into Dirichlet(k, .., k) sampling (exact up to
MC error for every k > 0, including the k < 1 singular range); the
deterministic scheme is a Duffy-mapped tanh-sinh product rule.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .config import DEFAULT_SEED, EvalConfig, EvalResult
from .quadrature import simplex_rule
from .series import DihedralParams, PolarPoint, b_coeffs

_DEFAULT_CFG = EvalConfig()

SCHEME_KINDS = ("dirichlet-mc", "product-rule")


class UnsupportedSchemeError(ValueError):
    """The requested quadrature scheme cannot handle the integrand."""


@dataclass(frozen=True)
class QuadratureScheme:
    """kind 'dirichlet-mc' uses ``size`` samples; 'product-rule' uses
    ``size`` tanh-sinh half-nodes per dimension."""

    kind: str = "dirichlet-mc"
    size: int = 100_000
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.kind not in SCHEME_KINDS:
            raise ValueError(f"kind must be one of {SCHEME_KINDS}, got {self.kind!r}")
        if self.size < 1:
            raise ValueError("size must be >= 1")


def as_simplex_point(coords) -> np.ndarray:
    """Validate barycentric coordinates (u_1..u_{n-1}, u_0): nonnegative,
    summing to 1 within 1e-12."""
    u = np.asarray(coords, dtype=float)
    if u.ndim != 1 or u.size < 1:
        raise ValueError("a simplex point is a 1-d coordinate array")
    if np.any(u < -1e-15):
        raise ValueError(f"coordinates must be >= 0, got {u}")
    if abs(float(u.sum()) - 1.0) > 1e-12:
        raise ValueError(f"coordinates must sum to 1, got sum = {u.sum()!r}")
    return u


def dirichlet_sample(alphas, count: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """i.i.d. Dirichlet(alphas) draws as a (count, n) array.

    Implemented as normalized Gamma variates from the counter-based
    Philox generator, so results are reproducible across platforms for a
    fixed seed.  Column s holds the coordinate paired with alphas[s].
    """
    a = np.asarray(alphas, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("alphas must be a 1-d array with at least 2 entries")
    if np.any(a <= 0.0):
        raise ValueError(f"Dirichlet parameters must be > 0, got {a}")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    g = rng.standard_gamma(a, size=(count, a.size))
    return g / g.sum(axis=1, keepdims=True)


def dirichlet_moment_check(betas, scheme: QuadratureScheme) -> float:
    """Ratio of a numerical evaluation of int_simplex prod u_s^(beta_s - 1) du
    to the closed form prod Gamma(beta_s) / Gamma(sum beta_s); 1 if the
    closed form is right.

    The MC route samples the *uniform* law on the simplex (its density,
    (n-1)!, needs only the simplex volume), keeping the closed form out of
    its own verification.  The deterministic route is the tanh-sinh Duffy
    rule, which is singularity-aware and valid for every beta_s > 0.
    """
    b = np.asarray(betas, dtype=float)
    if np.any(b <= 0.0):
        raise ValueError(f"moments need beta_s > 0, got {b}")
    n = b.size
    closed = math.exp(float(np.sum([math.lgamma(x) for x in b])) - math.lgamma(float(b.sum())))
    if scheme.kind == "product-rule":
        u, w = simplex_rule(n, scheme.size)
        integrand = np.prod(u ** (b - 1.0), axis=1)
        value = float(w @ integrand)
    else:
        u = dirichlet_sample(np.ones(n), scheme.size, scheme.seed)
        integrand = np.prod(u ** (b - 1.0), axis=1)
        value = float(integrand.mean()) / math.factorial(n - 1)
    return value / closed


def eval_simplex_integral(params: DihedralParams, x: PolarPoint, y: PolarPoint,
                          scheme: QuadratureScheme | None = None,
                          cfg: EvalConfig | None = None) -> EvalResult:
    """Simplex-integral representation of D(x, y), n >= 3.

    D = Gamma(nk)/Gamma(k)^n int_simplex exp(rho r sum_s u_s b_s)
        * 0F_{n-1}(2k, k..k; -4 (rho r/2)^n u_1..u_n sin(n theta) sin(n phi))
        * prod u_s^{k-1} du

    with b_s = cos(theta - phi + 2 pi s/n), the last coordinate u_0 paired
    with b_n = cos(theta - phi).
    """
    scheme = scheme or QuadratureScheme()
    cfg = cfg or _DEFAULT_CFG
    if params.n < 3:
        raise ValueError("the simplex representation needs n >= 3")
    n, k = params.n, params.k
    rr = x.radius * y.radius
    b = b_coeffs(y.angle - x.angle, n)
    sinfac = math.sin(n * y.angle) * math.sin(n * x.angle)
    zscale = -4.0 * (0.5 * rr) ** n * sinfac
    fparams = np.concatenate(([2.0 * k], np.full(n - 2, k)))

    def integrand(u: np.ndarray) -> np.ndarray:
        expo = u @ b
        zarg = zscale * np.prod(u, axis=1)
        f0, _, ok = kernels.hyp0f_vec(fparams, zarg, cfg.tol, cfg.max_terms, cfg.tail_window)
        if not ok:
            raise RuntimeError("0F kernel failed to converge on a sample batch")
        return np.exp(rr * expo) * f0

    if scheme.kind == "dirichlet-mc":
        u = dirichlet_sample(np.full(n, k), scheme.size, scheme.seed)
        g = integrand(u)
        value = float(g.mean())
        stderr = float(g.std(ddof=1) / math.sqrt(scheme.size)) if scheme.size > 1 else math.inf
        return EvalResult(value, stderr, samples_used=scheme.size)

    if k < 1.0:
        raise UnsupportedSchemeError(
            "product-rule scheme needs k >= 1 (weight u^(k-1) singular); use dirichlet-mc")
    pref = math.exp(math.lgamma(n * k) - n * math.lgamma(k))
    values = []
    for half in (max(8, scheme.size // 2), max(8, scheme.size)):
        u, w = simplex_rule(n, half)
        g = integrand(u) * np.prod(u ** (k - 1.0), axis=1)
        values.append(pref * float(w @ g))
    return EvalResult(values[1], abs(values[1] - values[0]),
                      terms_used=None, samples_used=None)
