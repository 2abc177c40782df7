"""Quadrature rules used by the integral representations.

tanh_sinh_rule       double-exponential rule on (0, 1); absorbs integrable
                     endpoint singularities such as u^(k-1) or (1-r^2)^(pk-3/2)
trapezoid_angles     periodic trapezoid rule on [0, 2 pi); spectrally accurate
                     for entire periodic integrands
gauss_legendre       plain Gauss-Legendre on [a, b]
simplex_rule         Duffy-mapped tanh-sinh tensor rule on the standard simplex
disk_rule            product rule for integrals over the unit disk with the
                     radial weight (1 - r^2)^power
"""

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def tanh_sinh_rule(n_half: int = 60, t_max: float = 3.5):
    """Nodes, weights and stable endpoint distances on (0, 1).

    Returns (x, w, dist0, dist1) where dist0 = x - 0 and dist1 = 1 - x are
    computed without cancellation, so integrands may form expressions like
    (1 - x)^alpha for x exponentially close to 1.
    """
    if n_half < 4:
        raise ValueError("n_half must be >= 4")
    h = t_max / n_half
    t = h * np.arange(-n_half, n_half + 1)
    g = 0.5 * math.pi * np.sinh(t)
    # 1/(1 + e^{2g}) evaluated stably on both tails
    eg = np.exp(-2.0 * np.abs(g))
    far = eg / (1.0 + eg)
    dist1 = np.where(g >= 0, far, 1.0 - far)
    dist0 = np.where(g >= 0, 1.0 - far, far)
    x = 0.5 * (1.0 + np.tanh(g))
    w = 0.25 * h * math.pi * np.cosh(t) / np.cosh(g) ** 2
    return x, w, dist0, dist1


def scale_to_interval(a: float, b: float, n_half: int = 60):
    """tanh-sinh nodes mapped to (a, b); distances are to a and to b."""
    if not b > a:
        raise ValueError(f"need b > a, got [{a}, {b}]")
    x, w, d0, d1 = tanh_sinh_rule(n_half)
    span = b - a
    return a + span * x, span * w, span * d0, span * d1


def trapezoid_angles(m: int):
    if m < 4:
        raise ValueError("m must be >= 4")
    return 2.0 * math.pi * np.arange(m) / m, 2.0 * math.pi / m


def gauss_legendre(a: float, b: float, m: int):
    x, w = np.polynomial.legendre.leggauss(m)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


@lru_cache(maxsize=None)
def simplex_rule(n: int, m_per_dim: int):
    """Product rule on the standard simplex Sigma_n (n coordinates summing
    to 1, so n - 1 integration variables), via the Duffy map

        u_s = x_s prod_{i<s} (1 - x_i)   (s = 1..n-1),   u_0 = prod (1 - x_i)

    from the (n-1)-cube with tanh-sinh nodes per direction.  Returns
    (U, W) with U of shape (M, n), columns ordered (u_1..u_{n-1}, u_0),
    and plain Lebesgue weights W (no simplex weight folded in).  Node
    clustering at the faces makes weights like prod u^(k-1) with k < 1
    integrable term by term.  Capped at n <= 4.
    """
    d = n - 1
    if not 1 <= d <= 3:
        raise ValueError(f"deterministic simplex rule supports n in 2..4, got n = {n}")
    x1, w1, _, dist1 = tanh_sinh_rule(m_per_dim)
    grids = np.meshgrid(*([x1] * d), indexing="ij")
    wgrids = np.meshgrid(*([w1] * d), indexing="ij")
    dgrids = np.meshgrid(*([dist1] * d), indexing="ij")
    xs = [g.ravel() for g in grids]
    one_minus = [g.ravel() for g in dgrids]
    weight = np.ones_like(xs[0])
    for i in range(d):
        weight = weight * wgrids[i].ravel()
        # Jacobian prod_i (1 - x_i)^(d-1-i)
        weight = weight * one_minus[i] ** (d - 1 - i)
    u = np.empty((xs[0].size, n))
    shrink = np.ones_like(xs[0])
    for s in range(d):
        u[:, s] = xs[s] * shrink
        shrink = shrink * one_minus[s]
    u[:, d] = shrink
    return u, weight


@lru_cache(maxsize=None)
def disk_rule(power: float, n_radial: int = 60, n_angular: int = 64):
    """Flattened product rule for int_{|zeta|<1} f(<w, zeta>) (1-|zeta|^2)^power.

    Returns (c, wt) such that the integral of e^{<w, zeta>} (1-|zeta|^2)^power
    is approximately sum wt * exp(|w| * c): radial tanh-sinh (handles
    power > -1) times periodic trapezoid in the angle.
    """
    if power <= -1.0:
        raise ValueError(f"radial weight exponent must be > -1, got {power}")
    r, wr, _, dist1 = tanh_sinh_rule(n_radial)
    alpha, walpha = trapezoid_angles(n_angular)
    radial_w = wr * r * np.exp(power * (np.log(dist1) + np.log1p(r)))
    c = np.outer(r, np.cos(alpha)).ravel()
    wt = np.repeat(radial_w * walpha, n_angular)
    return c, wt


def disk_exp_integral(power: float, wnorm, n_radial: int = 60, n_angular: int = 64):
    """int_{|zeta|<1} e^{<w, zeta>} (1-|zeta|^2)^power d zeta for |w| = wnorm.

    Rotation invariance of the weight reduces the dependence to |w|.
    Vectorized over wnorm; evaluation is chunked to bound memory.
    """
    c, wt = disk_rule(power, n_radial, n_angular)
    v = np.atleast_1d(np.asarray(wnorm, dtype=float))
    out = np.empty_like(v)
    chunk = max(1, 8_000_000 // c.size)
    for lo in range(0, v.size, chunk):
        hi = min(lo + chunk, v.size)
        out[lo:hi] = np.exp(np.multiply.outer(v[lo:hi], c)) @ wt
    if np.isscalar(wnorm) or np.ndim(wnorm) == 0:
        return float(out[0])
    return out
