"""Pure NumPy/Python kernels (fallback backend).

Mirrors the callable surface of the compiled module ``_core``.  The
selection between the two happens in ``_backend``; everything here is
written so that, for the same inputs, both backends agree to roundoff.
"""

import itertools
import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaln


def gegenbauer_scan(jmax: int, k: float, z: float) -> np.ndarray:
    """C_j^(k)(z) for j = 0..jmax by the three-term recurrence."""
    out = np.empty(jmax + 1)
    out[0] = 1.0
    if jmax == 0:
        return out
    out[1] = 2.0 * k * z
    for j in range(2, jmax + 1):
        out[j] = (2.0 * z * (j + k - 1.0) * out[j - 1]
                  - (j + 2.0 * k - 2.0) * out[j - 2]) / j
    return out


def horn_degree_sum(coefs: np.ndarray, gamma: float, tol: float, window: int):
    """Sum the confluent Horn series grouped by total degree.

    coefs[s, m] = (beta_s)_m z_s^m / m!.  The degree-N inner coefficient is
    the N-th entry of the convolution of the rows; the series value is
    sum_N conv[N] / (gamma)_N.  Stops once ``window`` consecutive degree
    contributions fall below tol relative to the running sum.

    Returns (value, tail_estimate, degrees_used, converged).
    """
    coefs = np.ascontiguousarray(coefs, dtype=float)
    n, d = coefs.shape
    cur = coefs[0]
    for s in range(1, n):
        cur = np.convolve(cur, coefs[s])[:d]
    terms = cur * np.exp(gammaln(gamma) - gammaln(gamma + np.arange(d)))

    total = 0.0
    comp = 0.0
    run = 0
    for big_n in range(d):
        t = float(terms[big_n])
        # Neumaier update: works even when |t| exceeds |total|
        s2 = total + t
        if abs(total) >= abs(t):
            comp += (total - s2) + t
        else:
            comp += (t - s2) + total
        total = s2
        if abs(t) <= tol * max(abs(total + comp), 1e-300):
            run += 1
            if run >= window:
                tail = float(np.sum(np.abs(terms[big_n - window + 1:big_n + 1])))
                return total + comp, tail, big_n + 1, True
        else:
            run = 0
    tail = float(abs(terms[-1])) if d else 0.0
    return total + comp, tail, d, False


@lru_cache(maxsize=None)
def _compositions(total: int, nparts: int) -> np.ndarray:
    """All weak compositions of ``total`` into ``nparts`` parts (stars and bars)."""
    if nparts == 1:
        return np.array([[total]], dtype=np.intp)
    rows = []
    for bars in itertools.combinations(range(total + nparts - 1), nparts - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(total + nparts - 2 - prev)
        rows.append(row)
    return np.asarray(rows, dtype=np.intp)


def s_n_closed_sum(total_degree: int, coef_j: np.ndarray, tables: np.ndarray,
                   use_fsum: bool = False) -> float:
    """Inner double sum of the closed form of the degree-N identity.

    tables[j, s, m] = (k+j)_m / m! * b_s^m over the n part positions;
    coef_j[j] = (k)_j^2 / ((2k)_j j!) * q^j with q the shared sign factor.
    Sums over all compositions (m_1..m_n) of total_degree and the inner
    index j <= min_s m_s.
    """
    coef_j = np.asarray(coef_j, dtype=float)
    tables = np.asarray(tables, dtype=float)
    jcap, nparts, _ = tables.shape
    comps = _compositions(total_degree, nparts)
    minp = comps.min(axis=1)

    pieces = []
    for j in range(min(jcap, len(coef_j))):
        rows = np.nonzero(minp >= j)[0]
        if rows.size == 0:
            break
        prod = np.full(rows.size, coef_j[j])
        for s in range(nparts):
            prod = prod * tables[j, s][comps[rows, s] - j]
        pieces.append(prod)
    if not pieces:
        return 0.0
    flat = np.concatenate(pieces)
    if use_fsum:
        return math.fsum(flat.tolist())
    total = 0.0
    comp = 0.0
    for t in flat:
        s2 = total + t
        if abs(total) >= abs(t):
            comp += (total - s2) + t
        else:
            comp += (t - s2) + total
        total = s2
    return total + comp


def hyp0f_vec(params: np.ndarray, z: np.ndarray, tol: float,
              max_terms: int, window: int):
    """0F_q(params; z) elementwise over z.

    All lanes run until every lane has seen ``window`` consecutive
    below-tolerance terms, so per-lane arithmetic is backend independent.
    Returns (values, terms_used, converged).
    """
    params = np.asarray(params, dtype=float)
    z = np.asarray(z, dtype=float)
    out = np.ones_like(z)
    term = np.ones_like(z)
    run = np.zeros(z.shape, dtype=np.int64)
    for t in range(1, max_terms + 1):
        denom = float(t)
        for a in params:
            denom *= a + t - 1.0
        term = term * (z / denom)
        out = out + term
        small = np.abs(term) <= tol * np.maximum(np.abs(out), 1e-300)
        run = np.where(small, run + 1, 0)
        if run.min() >= window:
            return out, t, True
    return out, max_terms, False


def bessel_i_norm_vec(nu: float, v: np.ndarray, tol: float, max_terms: int):
    """Normalized Bessel i_nu(v) = Gamma(nu+1) (2/v)^nu I_nu(v), elementwise.

    Series sum_m (v/2)^(2m) / (m! (nu+1)_m); all terms positive.
    Returns (values, terms_used, converged).
    """
    v = np.asarray(v, dtype=float)
    x = (0.5 * v) ** 2
    out = np.ones_like(x)
    term = np.ones_like(x)
    for m in range(1, max_terms + 1):
        term = term * (x / (m * (nu + m)))
        out = out + term
        if np.all(term <= tol * out):
            return out, m, True
    return out, max_terms, False
