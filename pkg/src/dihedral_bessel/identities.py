"""Named identity suites.

Each suite exercises one of the supporting identities over its documented
parameter range and reports the worst deviation against its tolerance.
The CLI ``identity`` subcommand and the test suite both run these, so a
failure shows up identically in both places.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_SEED, EvalConfig
from .laplace import disk_bessel_identity
from .series import DihedralParams, b_coeffs, idgeg_sum, s_n_closed, s_n_direct
from .simplex import QuadratureScheme, dirichlet_moment_check
from .special import chebyshev_t_coeffs, gauss_2f1, gegenbauer_table, pochhammer

_IDENTITY_CFG = EvalConfig(extended_precision=True)


@dataclass
class IdentityReport:
    name: str
    max_deviation: float
    tolerance: float
    checks: int
    passed: bool
    details: dict = field(default_factory=dict)


def _report(name: str, dev: float, tol: float, checks: int, **details) -> IdentityReport:
    return IdentityReport(name, dev, tol, checks, dev <= tol, dict(details))


def check_duplication(tolerance: float = 1e-12) -> IdentityReport:
    """(x)_{2l} = 2^{2l} (x/2)_l ((1+x)/2)_l."""
    worst, count = 0.0, 0
    for x in np.linspace(0.05, 10.0, 24):
        for ell in range(0, 21):
            lhs = pochhammer(float(x), 2 * ell)
            rhs = 4.0 ** ell * pochhammer(float(x) / 2.0, ell) * pochhammer((1.0 + float(x)) / 2.0, ell)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
            count += 1
    return _report("duplication", worst, tolerance, count)


def check_alt_pochhammer(tolerance: float = 1e-12) -> IdentityReport:
    """sum_{j=0}^{2m} (-1)^j (k)_j (k)_{2m-j} / (j! (2m-j)!) = (k)_m / m!."""
    worst, count = 0.0, 0
    for k in (0.3, 0.7, 1.0, 1.5, 2.5):
        for m in range(0, 16):
            terms = [(-1.0) ** j * pochhammer(k, j) * pochhammer(k, 2 * m - j)
                     / (math.factorial(j) * math.factorial(2 * m - j))
                     for j in range(2 * m + 1)]
            lhs = math.fsum(terms)
            rhs = pochhammer(k, m) / math.factorial(m)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
            count += 1
    return _report("altsum", worst, tolerance, count)


def check_2f1_closed(tolerance: float = 1e-10) -> IdentityReport:
    """2F1(s/2, (s+1)/2; s+1; z) = 2^s / (1 + sqrt(1-z))^s."""
    worst, count = 0.0, 0
    svals = sorted({n * k + n * j for n in (3, 4, 5, 6)
                    for k in (0.3, 0.7, 1.0, 1.5, 2.5) for j in (0, 1, 2)})
    for s in svals:
        for z in np.linspace(-0.9, 0.9, 13):
            z = float(z)
            lhs = gauss_2f1(s / 2.0, (s + 1.0) / 2.0, s + 1.0, z).value
            rhs = 2.0 ** s / (1.0 + math.sqrt(1.0 - z)) ** s
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
            count += 1
    return _report("2f1closed", worst, tolerance, count)


def check_chebyshev_factorization(tolerance: float = 1e-12) -> IdentityReport:
    """2 z^n T_n(1/z) - 2 cos(xi) z^n = 2^n prod_s (1 - cos(xi/n + 2 pi s/n) z),
    compared coefficient by coefficient."""
    worst, count = 0.0, 0
    for n in range(3, 9):
        tc = chebyshev_t_coeffs(n)
        for xi in np.linspace(0.0, math.pi, 7):
            xi = float(xi)
            lhs = np.zeros(n + 1)
            for m in range(n + 1):
                if tc[m] != 0.0:
                    lhs[n - m] += 2.0 * tc[m]
            lhs[n] -= 2.0 * math.cos(xi)
            rhs = np.array([1.0])
            for bs in b_coeffs(xi / n, n):
                rhs = np.convolve(rhs, np.array([1.0, -bs]))
            rhs *= 2.0 ** n
            scale = max(1.0, float(np.max(np.abs(lhs))))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))) / scale)
            count += 1
    return _report("factorization", worst, tolerance, count)


def check_poisson_kernel(tolerance: float = 1e-8, seed: int = DEFAULT_SEED) -> IdentityReport:
    """sum_j C_j(cos a) C_j(cos b) / C_j(1) t^j equals
    (1 - 2 t cos(a-b) + t^2)^(-k) 2F1(k, k; 2k; -4 t sin a sin b / (...)).

    Angle pairs are sampled with the 2F1 argument kept inside |.| <= 0.9 so
    the Gauss series converges.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    worst, count = 0.0, 0
    for k in (0.3, 1.0, 2.5):
        for t in (-0.6, -0.3, 0.3, 0.6):
            pairs = 0
            while pairs < 8:
                a, b = rng.uniform(0.05, math.pi - 0.05, size=2)
                denom = 1.0 - 2.0 * t * math.cos(a - b) + t * t
                warg = -4.0 * t * math.sin(a) * math.sin(b) / denom
                if abs(warg) > 0.9:
                    continue
                pairs += 1
                rhs = denom ** (-k) * gauss_2f1(k, k, 2.0 * k, warg).value
                # truncation J from the geometric tail of sum C_j(1) |t|^j
                jmax = 64
                while pochhammer(2.0 * k, jmax) / math.factorial(jmax) * abs(t) ** jmax > 1e-14:
                    jmax += 32
                ca = gegenbauer_table(jmax, k, math.cos(a))
                cb = gegenbauer_table(jmax, k, math.cos(b))
                c1 = gegenbauer_table(jmax, k, 1.0)
                lhs = math.fsum(ca[j] * cb[j] / c1[j] * t ** j for j in range(jmax + 1))
                worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
                count += 1
    return _report("poisson", worst, tolerance, count)


def check_sn(tolerance: float = 1e-10, seed: int = DEFAULT_SEED,
             nmax_degree: int = 10) -> IdentityReport:
    """Degree-N identity: s_n_direct vs s_n_closed.  Raw S_N values decay
    like 1/Gamma(nk+N), so the comparison is made in the scaled form
    Gamma(nk+N)/2^N * S_N where the identity is numerically meaningful
    (the raw deviation against a max(1, |direct|) floor is subsumed)."""
    rng = np.random.Generator(np.random.Philox(seed))
    worst, count = 0.0, 0
    for n in (3, 4, 5, 6):
        for k in (0.3, 0.7, 1.0, 1.5, 2.5):
            params = DihedralParams(n, k)
            angles = rng.uniform(0.0, 2.0 * math.pi, size=(20, 2))
            for phi, theta in angles:
                for big_n in range(0, nmax_degree + 1):
                    direct = s_n_direct(params, float(phi), float(theta), big_n)
                    closed = s_n_closed(params, float(phi), float(theta), big_n,
                                        _IDENTITY_CFG)
                    scale = 2.0 ** big_n * math.exp(-math.lgamma(n * k + big_n))
                    dev = abs(direct - closed) / max(scale, abs(direct))
                    worst = max(worst, dev)
                    count += 1
    return _report("sN", worst, tolerance, count)


def check_idgeg(tolerance: float = 1e-12, seed: int = DEFAULT_SEED) -> IdentityReport:
    """Boundary specialization phi = 0: s_n_closed against the independent
    composition enumeration."""
    rng = np.random.Generator(np.random.Philox(seed + 1))
    worst, count = 0.0, 0
    for n in (3, 4, 5, 6):
        for k in (0.3, 1.0, 2.5):
            params = DihedralParams(n, k)
            for theta in rng.uniform(0.0, 2.0 * math.pi, size=6):
                for big_n in range(0, 11):
                    closed = s_n_closed(params, 0.0, float(theta), big_n, _IDENTITY_CFG)
                    enum = idgeg_sum(params, float(theta), big_n)
                    scale = 2.0 ** big_n * math.exp(-math.lgamma(n * k + big_n))
                    dev = abs(closed - enum) / max(scale, abs(enum))
                    worst = max(worst, dev)
                    count += 1
    return _report("idgeg", worst, tolerance, count)


def check_dirichlet(tolerance_det: float = 1e-8, tolerance_mc: float = 1e-3,
                    seed: int = DEFAULT_SEED) -> IdentityReport:
    """Dirichlet integral: numerical integral over the simplex against
    prod Gamma(beta_s)/Gamma(sum beta_s); deterministic rule for beta >= 1,
    uniform-sampling MC for singular beta < 1."""
    worst_det = 0.0
    for betas in ((1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (2.5, 1.5, 2.0), (1.0, 3.0, 1.5, 2.0)):
        ratio = dirichlet_moment_check(betas, QuadratureScheme("product-rule", 48))
        worst_det = max(worst_det, abs(ratio - 1.0))
    worst_mc = 0.0
    for i, betas in enumerate(((0.5, 0.5, 0.5), (0.8, 0.6, 0.9))):
        ratio = dirichlet_moment_check(
            betas, QuadratureScheme("dirichlet-mc", 2_000_000, seed + i))
        worst_mc = max(worst_mc, abs(ratio - 1.0))
    passed = worst_det <= tolerance_det and worst_mc <= tolerance_mc
    report = IdentityReport("dirichlet", max(worst_det, worst_mc),
                            max(tolerance_det, tolerance_mc), 6, passed,
                            {"deterministic_deviation": worst_det,
                             "deterministic_tolerance": tolerance_det,
                             "mc_deviation": worst_mc,
                             "mc_tolerance": tolerance_mc})
    return report


def check_disk_bessel(tolerance: float = 1e-6) -> IdentityReport:
    """Unit-disk exponential integral against the normalized Bessel series."""
    worst, count = 0.0, 0
    for pk in (0.8, 1.0, 1.5, 2.5):
        for wn in (0.0, 0.5, 1.0, 2.0, 4.0):
            worst = max(worst, disk_bessel_identity(pk, (wn, 0.0)))
            count += 1
    return _report("diskbessel", worst, tolerance, count)


def check_gegenbauer_bound(tolerance: float = 1e-12, seed: int = DEFAULT_SEED) -> IdentityReport:
    """|C_j(z)| <= C_j(1) on [-1, 1]."""
    rng = np.random.Generator(np.random.Philox(seed + 2))
    worst, count = 0.0, 0
    for k in (0.3, 1.0, 2.5):
        c1 = gegenbauer_table(40, k, 1.0)
        for z in rng.uniform(-1.0, 1.0, size=25):
            cz = gegenbauer_table(40, k, float(z))
            excess = (np.abs(cz) - c1) / np.maximum(1.0, c1)
            worst = max(worst, float(excess.max()))
            count += 41
    return _report("gegenbauerbound", worst, tolerance, count)


IDENTITY_SUITES = {
    "sN": check_sn,
    "idgeg": check_idgeg,
    "poisson": check_poisson_kernel,
    "factorization": check_chebyshev_factorization,
    "dirichlet": check_dirichlet,
    "altsum": check_alt_pochhammer,
    "duplication": check_duplication,
    "2f1closed": check_2f1_closed,
    "diskbessel": check_disk_bessel,
}
