"""Even dihedral groups at the wedge boundary: the normalized-Bessel
simplex integral, the Laplace-type representation D = int e^{<y,z>} H_p dz,
its planar density H_p, and the unit-disk Bessel identity they rest on.

Everything here is for the group with n = 2p and x = rho on the boundary
ray (phi = 0).  The density machinery needs pk > 1/2; the disk identity

    i_{pk-1/2}(|w|) = (pk - 1/2)/pi * int_{|z|<1} e^{<w,z>} (1-|z|^2)^{pk-3/2} dz

carries the constant K = (pk-1/2)/pi, which is forced by w = 0.
"""

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .config import DEFAULT_SEED, EvalConfig, EvalResult
from .quadrature import disk_exp_integral, scale_to_interval
from .simplex import QuadratureScheme, UnsupportedSchemeError, as_simplex_point, dirichlet_sample
from .special import bessel_i_norm

_DEFAULT_CFG = EvalConfig()

RADICAND_SLACK = 1e-12


@dataclass(frozen=True)
class EvenDihedralParams:
    """Group D_2(2p) with equal multiplicities k on both root classes."""

    p: int
    k: float

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 1:
            raise ValueError(f"p must be an integer >= 1, got {self.p!r}")
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise ValueError(f"k must be a finite positive real, got {self.k!r}")

    @property
    def n(self) -> int:
        return 2 * self.p

    @property
    def nu(self) -> float:
        return self.p * self.k - 0.5

    def cos_sin_grid(self) -> tuple[np.ndarray, np.ndarray]:
        """A_s = cos(2 s pi / p), B_s = -sin(2 s pi / p) for s = 1..p-1."""
        s = np.arange(1, self.p)
        ang = 2.0 * math.pi * s / self.p
        return np.cos(ang), -np.sin(ang)


@dataclass(frozen=True)
class ABCCoeffs:
    """Ellipse coefficients at a simplex point.  The products ab and ac are
    always well defined; b and c themselves are NaN when a = 0."""

    a: float
    b: float
    c: float
    ab: float
    ac: float
    degenerate: bool


def abc(params: EvenDihedralParams, u) -> ABCCoeffs:
    """a(u) = sqrt(1 + u_0 + sum u_s A_s), b = (1/a) sum u_s B_s,
    c = (1/a) sqrt(1 - (u_0 + sum u_s A_s)^2 - (sum u_s B_s)^2)."""
    u = as_simplex_point(u)
    if u.size != params.p:
        raise ValueError(f"expected {params.p} coordinates, got {u.size}")
    big_a, big_b = params.cos_sin_grid()
    sa = float(u[:-1] @ big_a)
    sb = float(u[:-1] @ big_b)
    x = u[-1] + sa
    a2 = 1.0 + x
    rad = 1.0 - x * x - sb * sb
    if a2 < -RADICAND_SLACK or rad < -RADICAND_SLACK:
        raise ValueError(
            f"negative radicand beyond tolerance (a^2 = {a2}, c-radicand = {rad}); "
            "input coordinates are corrupted")
    a2 = max(a2, 0.0)
    rad = max(rad, 0.0)
    a = math.sqrt(a2)
    ac = math.sqrt(rad)
    if a == 0.0:
        return ABCCoeffs(0.0, math.nan, math.nan, sb, ac, True)
    return ABCCoeffs(a, sb / a, ac / a, sb, ac, False)


def _abc_products(params: EvenDihedralParams, u: np.ndarray):
    """Vectorized (a^2, ab, (ac)^2) for sample rows u; a = 0 safe."""
    big_a, big_b = params.cos_sin_grid()
    x = u[:, -1] + u[:, :-1] @ big_a
    ab = u[:, :-1] @ big_b
    a2 = 1.0 + x
    ac2 = 1.0 - x * x - ab * ab
    if float(a2.min(initial=0.0)) < -RADICAND_SLACK or float(ac2.min(initial=0.0)) < -RADICAND_SLACK:
        raise ValueError("negative radicand beyond tolerance in sample batch")
    return np.maximum(a2, 0.0), ab, np.maximum(ac2, 0.0)


def _bessel_argument_sq(params: EvenDihedralParams, rho: float, y1: float, y2: float,
                        u: np.ndarray) -> np.ndarray:
    """|w(u)|^2 = (rho^2/2) [a^2 y1^2 + 2 ab y1 y2 + (2 - a^2) y2^2].

    Equals (rho^2/2) [(a y1 + b y2)^2 + (c y2)^2] but stays finite at a = 0.
    """
    a2, ab, _ = _abc_products(params, u)
    val = a2 * y1 * y1 + 2.0 * ab * y1 * y2 + (2.0 - a2) * y2 * y2
    return 0.5 * rho * rho * np.maximum(val, 0.0)


def eval_boundary_bessel(params: EvenDihedralParams, rho: float, y: tuple[float, float],
                         scheme: QuadratureScheme | None = None,
                         cfg: EvalConfig | None = None) -> EvalResult:
    """D(rho, y) as a simplex average of normalized Bessel values:

        D = E_{u ~ Dir(k..k)}[ i_{pk-1/2}( sqrt(|w(u)|^2) ) ]

    For p = 1 the simplex is a point and the value is i_{k-1/2}(rho |y1|),
    computed without sampling.
    """
    scheme = scheme or QuadratureScheme()
    cfg = cfg or _DEFAULT_CFG
    if rho < 0.0:
        raise ValueError("rho must be >= 0")
    y1, y2 = float(y[0]), float(y[1])
    if params.p == 1:
        sv = bessel_i_norm(params.nu, rho * abs(y1), cfg)
        return EvalResult(sv.value, sv.tail_bound, terms_used=sv.terms_used)
    if scheme.kind != "dirichlet-mc":
        raise UnsupportedSchemeError("eval_boundary_bessel supports dirichlet-mc only for p >= 2")
    u = dirichlet_sample(np.full(params.p, params.k), scheme.size, scheme.seed)
    v = np.sqrt(_bessel_argument_sq(params, rho, y1, y2, u))
    g, _, ok = kernels.bessel_i_norm_vec(params.nu, v, cfg.tol, 4 * cfg.max_terms)
    if not ok:
        raise RuntimeError("normalized Bessel kernel failed to converge on a sample batch")
    value = float(g.mean())
    stderr = float(g.std(ddof=1) / math.sqrt(scheme.size)) if scheme.size > 1 else math.inf
    return EvalResult(value, stderr, samples_used=scheme.size)


def _density_constant(params: EvenDihedralParams) -> float:
    # K Gamma(pk) / Gamma(k)^p with K = (pk - 1/2)/pi
    p, k = params.p, params.k
    return (p * k - 0.5) / math.pi * math.exp(math.lgamma(p * k) - p * math.lgamma(k))


def _density_p2_interval(k: float, rho: float, z1: float, z2: float):
    """Support interval (t-, t+) of the 1-d reduction for p = 2, or None.

    With u = (t, 1-t): a^2 = 2(1-t), (ac)^2 = 4t(1-t), b = 0, and the
    bracket is the concave quadratic q(t) = 2[rho^2 t(1-t) - t z1^2 -
    (1-t) z2^2] = 2 rho^2 (t - t-)(t+ - t).
    """
    coef = rho * rho - z1 * z1 + z2 * z2
    disc = coef * coef - 4.0 * rho * rho * z2 * z2
    if disc <= 0.0:
        return None
    root = math.sqrt(disc)
    tm = (coef - root) / (2.0 * rho * rho)
    tp = (coef + root) / (2.0 * rho * rho)
    if tp <= 0.0 or tm >= 1.0:
        return None
    return max(tm, 0.0), min(tp, 1.0)


def _density_h_p2(params: EvenDihedralParams, rho: float, z1: float, z2: float,
                  n_half: int) -> float:
    k = params.k
    pk = 2.0 * k
    interval = _density_p2_interval(k, rho, z1, z2)
    if interval is None:
        return 0.0
    if pk <= 1.0 and (z1 == 0.0 or z2 == 0.0):
        # collapsed endpoint: integrand ~ t^(k - 3/2) at t = 0 (or 1 - t at 1),
        # not integrable, the density genuinely diverges on the axes
        return math.inf
    tm, tp = interval
    t, w, da, db = scale_to_interval(tm, tp, n_half)
    # node positions saturate at the interval ends; rebuild t and 1 - t from
    # the stable distances so powers with negative exponents cannot overflow
    t_lo = tm + da
    t_hi = (1.0 - tp) + db
    log_t1t = np.log(t_lo) + np.log(t_hi)
    log_2rho2 = math.log(2.0 * rho * rho)
    # log of sqrt(ac2) (2/(rho^2 ac2))^(pk-1/2) bracket^(pk-3/2) (t(1-t))^(k-1)
    # with ac2 = 4 t (1-t) and bracket = 2 rho^2 (t - t-)(t+ - t)
    logv = (0.5 * (math.log(4.0) + log_t1t)
            - (pk - 0.5) * (log_2rho2 + log_t1t)
            + (pk - 1.5) * (log_2rho2 + np.log(da) + np.log(db))
            + (k - 1.0) * log_t1t)
    pref = (pk - 0.5) / math.pi * math.exp(math.lgamma(pk) - 2.0 * math.lgamma(k))
    return pref * float(w @ np.exp(logv))


def _density_mc_contrib(params: EvenDihedralParams, rho: float, z1: float, z2: float,
                        u: np.ndarray) -> np.ndarray:
    """Per-sample integrand of H_p against the Dirichlet(k..k) law."""
    pk = params.p * params.k
    a2, ab, ac2 = _abc_products(params, u)
    bracket_a2 = (0.5 * rho * rho * a2 * ac2
                  - ac2 * z1 * z1
                  - (a2 * z2 - ab * z1) ** 2)
    member = (bracket_a2 > 0.0) & (a2 > 1e-14) & (ac2 > 1e-300)
    out = np.zeros(u.shape[0])
    if member.any():
        sel_ac2 = ac2[member]
        sel_bracket = bracket_a2[member] / a2[member]
        out[member] = (np.sqrt(sel_ac2)
                       * (2.0 / (rho * rho * sel_ac2)) ** (pk - 0.5)
                       * sel_bracket ** (pk - 1.5))
    return out


def density_h(params: EvenDihedralParams, rho: float, z: tuple[float, float],
              scheme: QuadratureScheme | None = None) -> float:
    """Planar density H_p(rho, z) of the Laplace representation.

    Needs pk > 1/2.  Deterministic route (product-rule) exists for p = 2
    and any pk > 1/2; the MC route needs pk > 1 (below that the estimator
    variance is unbounded because of the boundary singularity).
    """
    scheme = scheme or QuadratureScheme()
    p, k = params.p, params.k
    pk = p * k
    if p < 2:
        raise ValueError("the density needs p >= 2 (p = 1 has no planar density)")
    if pk <= 0.5:
        raise ValueError(f"the density needs p k > 1/2, got p k = {pk}")
    if rho <= 0.0:
        raise ValueError("rho must be > 0")
    z1, z2 = float(z[0]), float(z[1])
    if scheme.kind == "product-rule":
        if p != 2:
            raise UnsupportedSchemeError(
                "deterministic density is implemented for p = 2 only; use dirichlet-mc")
        return _density_h_p2(params, rho, z1, z2, max(scheme.size, 24))
    if pk <= 1.0:
        raise UnsupportedSchemeError(
            "dirichlet-mc density needs p k > 1 (unbounded variance); "
            "use the p = 2 product-rule")
    u = dirichlet_sample(np.full(p, k), scheme.size, scheme.seed)
    contrib = _density_mc_contrib(params, rho, z1, z2, u)
    return (pk - 0.5) / math.pi * float(contrib.mean())


def eval_laplace(params: EvenDihedralParams, rho: float, y: tuple[float, float],
                 scheme: QuadratureScheme | None = None,
                 n_radial: int = 60, n_angular: int = 64) -> EvalResult:
    """D(rho, y) = int_{R^2} e^{<y, z>} H_p(rho, z) dz, evaluated with the
    order of integration swapped: for each simplex sample the inner ellipse
    integral reduces, via the unit-disk substitution, to

        K int_{|zeta|<1} e^{<w(u), zeta>} (1 - |zeta|^2)^{pk-3/2} d zeta,

    computed by quadrature (radial tanh-sinh times angular trapezoid), not
    through the Bessel series, so the route stays independent of
    eval_boundary_bessel.
    """
    scheme = scheme or QuadratureScheme()
    p, k = params.p, params.k
    pk = p * k
    if p < 2:
        raise ValueError("the Laplace representation needs p >= 2")
    if pk <= 0.5:
        raise ValueError(f"the Laplace representation needs p k > 1/2, got {pk}")
    if rho <= 0.0:
        raise ValueError("rho must be > 0")
    if scheme.kind != "dirichlet-mc":
        raise UnsupportedSchemeError("eval_laplace supports dirichlet-mc only")
    y1, y2 = float(y[0]), float(y[1])
    u = dirichlet_sample(np.full(p, k), scheme.size, scheme.seed)
    v = np.sqrt(_bessel_argument_sq(params, rho, y1, y2, u))
    raw = disk_exp_integral(pk - 1.5, v, n_radial, n_angular)
    g = (pk - 0.5) / math.pi * raw
    value = float(g.mean())
    stderr = float(g.std(ddof=1) / math.sqrt(scheme.size)) if scheme.size > 1 else math.inf
    return EvalResult(value, stderr, samples_used=scheme.size)


def disk_bessel_identity(nu_exp: float, w: tuple[float, float],
                         n_radial: int = 60, n_angular: int = 64,
                         cfg: EvalConfig | None = None) -> float:
    """Relative deviation between i_{nu_exp - 1/2}(|w|) and the normalized
    disk integral K int e^{<w, zeta>} (1-|zeta|^2)^{nu_exp - 3/2} d zeta,
    K = (nu_exp - 1/2)/pi.  nu_exp plays the role of pk and must be > 1/2.
    """
    cfg = cfg or _DEFAULT_CFG
    if nu_exp <= 0.5:
        raise ValueError(f"need nu_exp > 1/2, got {nu_exp}")
    wnorm = math.hypot(float(w[0]), float(w[1]))
    lhs = (nu_exp - 0.5) / math.pi * disk_exp_integral(nu_exp - 1.5, wnorm,
                                                       n_radial, n_angular)
    rhs = bessel_i_norm(nu_exp - 0.5, wnorm, cfg).value
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def hull_membership(p: int, rho: float, z1, z2, slack: float = 1e-9) -> np.ndarray:
    """Membership in the convex hull of the orbit {rho e^{i s pi / p}}:
    a regular 2p-gon, tested against its edge normals."""
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    inside = np.ones(np.broadcast(z1, z2).shape, dtype=bool)
    margin = rho * math.cos(0.5 * math.pi / p) + slack
    for s in range(2 * p):
        ang = (s + 0.5) * math.pi / p
        inside &= z1 * math.cos(ang) + z2 * math.sin(ang) <= margin
    return inside


@dataclass
class DensityGrid:
    """Tabulated H_p on a square z-grid, with support and hull masks."""

    p: int
    k: float
    rho: float
    extent: float
    resolution: int
    z1: np.ndarray = field(repr=False)
    z2: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    region_mask: np.ndarray = field(repr=False)
    hull_mask: np.ndarray = field(repr=False)
    floor: float = 1e-12

    def summary(self) -> dict:
        zz1, zz2 = np.meshgrid(self.z1, self.z2, indexing="ij")
        radius = np.hypot(zz1, zz2)
        support = self.values > self.floor
        support_radius = float(radius[support].max()) if support.any() else 0.0
        in_hull = self.hull_mask[support]
        return {
            "schema": 1,
            "p": self.p,
            "k": self.k,
            "rho": self.rho,
            "extent": self.extent,
            "resolution": self.resolution,
            "floor": self.floor,
            "support_nodes": int(support.sum()),
            "support_radius": support_radius,
            "support_within_disk": bool(support_radius <= self.rho + 1e-9),
            "hull_fraction": float(in_hull.mean()) if in_hull.size else 1.0,
        }

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["z1", "z2", "H", "in_hull_flag"])
            for i in range(self.resolution):
                for j in range(self.resolution):
                    writer.writerow([repr(float(self.z1[i])), repr(float(self.z2[j])),
                                     repr(float(self.values[i, j])),
                                     int(self.hull_mask[i, j])])

    def to_json(self, path) -> None:
        doc = self.summary()
        doc["z1"] = [float(v) for v in self.z1]
        doc["z2"] = [float(v) for v in self.z2]
        doc["values_row_major"] = [float(v) for v in self.values.ravel()]
        doc["in_hull_row_major"] = [int(v) for v in self.hull_mask.ravel()]
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def support_probe(params: EvenDihedralParams, rho: float, extent: float | None = None,
                  resolution: int = 41, scheme: QuadratureScheme | None = None,
                  floor: float = 1e-12) -> DensityGrid:
    """Tabulate H_p on a grid and flag support against the |z| <= rho bound
    and the orbit convex hull.

    p = 2 uses the deterministic 1-d reduction per node; p >= 3 shares one
    Dirichlet sample set across all nodes (deterministic for a fixed seed).
    """
    scheme = scheme or QuadratureScheme()
    p, k = params.p, params.k
    if extent is None:
        extent = 1.2 * rho
    if resolution < 3:
        raise ValueError("resolution must be >= 3")
    z1 = np.linspace(-extent, extent, resolution)
    z2 = np.linspace(-extent, extent, resolution)
    values = np.zeros((resolution, resolution))
    region = np.zeros((resolution, resolution), dtype=bool)
    if p == 2:
        for i, a in enumerate(z1):
            for j, bb in enumerate(z2):
                region[i, j] = _density_p2_interval(k, rho, float(a), float(bb)) is not None
                if region[i, j]:
                    values[i, j] = _density_h_p2(params, rho, float(a), float(bb), 48)
    else:
        if p * k <= 1.0:
            raise UnsupportedSchemeError("grid tabulation for p >= 3 needs p k > 1")
        u = dirichlet_sample(np.full(p, k), scheme.size, scheme.seed)
        pref = (p * k - 0.5) / math.pi
        for i, a in enumerate(z1):
            for j, bb in enumerate(z2):
                contrib = _density_mc_contrib(params, rho, float(a), float(bb), u)
                nonzero = int(np.count_nonzero(contrib))
                region[i, j] = nonzero > 0
                values[i, j] = pref * float(contrib.mean())
    zz1, zz2 = np.meshgrid(z1, z2, indexing="ij")
    hull = hull_membership(p, rho, zz1, zz2)
    return DensityGrid(p=p, k=k, rho=rho, extent=extent, resolution=resolution,
                       z1=z1, z2=z2, values=values, region_mask=region,
                       hull_mask=hull, floor=floor)
