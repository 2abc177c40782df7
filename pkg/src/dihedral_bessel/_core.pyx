# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels (Cython backend).

Same callable surface as ``_kernels_py``; selected by ``_backend`` at
import time.  Summation orders match the fallback so both backends agree
to roundoff for identical inputs.
"""

import numpy as np

from libc.math cimport exp, fabs, lgamma


def gegenbauer_scan(Py_ssize_t jmax, double k, double z):
    """C_j^(k)(z) for j = 0..jmax by the three-term recurrence."""
    out_arr = np.empty(jmax + 1)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t j
    out[0] = 1.0
    if jmax == 0:
        return out_arr
    out[1] = 2.0 * k * z
    for j in range(2, jmax + 1):
        out[j] = (2.0 * z * (j + k - 1.0) * out[j - 1]
                  - (j + 2.0 * k - 2.0) * out[j - 2]) / j
    return out_arr


def horn_degree_sum(coefs, double gamma, double tol, int window):
    """Sum the confluent Horn series grouped by total degree.

    coefs[s, m] = (beta_s)_m z_s^m / m!; see the fallback docstring.
    Returns (value, tail_estimate, degrees_used, converged).
    """
    c_arr = np.ascontiguousarray(coefs, dtype=np.float64)
    cdef double[:, ::1] c = c_arr
    cdef Py_ssize_t n = c.shape[0], d = c.shape[1]
    cdef Py_ssize_t s, i, m
    cur_arr = np.array(c_arr[0], dtype=np.float64, copy=True)
    nxt_arr = np.empty(d)
    cdef double[::1] cur = cur_arr
    cdef double[::1] nxt = nxt_arr
    cdef double acc
    for s in range(1, n):
        for m in range(d):
            acc = 0.0
            for i in range(m + 1):
                acc += cur[i] * c[s, m - i]
            nxt[m] = acc
        for m in range(d):
            cur[m] = nxt[m]

    recent_arr = np.zeros(window if window > 0 else 1)
    cdef double[::1] recent = recent_arr
    cdef double lgam0 = lgamma(gamma)
    cdef double total = 0.0, comp = 0.0, t = 0.0, s2, scale, tail
    cdef int run = 0
    for m in range(d):
        t = cur[m] * exp(lgam0 - lgamma(gamma + m))
        if window > 0:
            recent[m % window] = fabs(t)
        # Neumaier update: works even when |t| exceeds |total|
        s2 = total + t
        if fabs(total) >= fabs(t):
            comp += (total - s2) + t
        else:
            comp += (t - s2) + total
        total = s2
        scale = fabs(total + comp)
        if scale < 1e-300:
            scale = 1e-300
        if fabs(t) <= tol * scale:
            run += 1
            if run >= window:
                tail = 0.0
                for i in range(window):
                    tail += recent[i]
                return total + comp, tail, m + 1, True
        else:
            run = 0
    tail = fabs(t) if d else 0.0
    return total + comp, tail, d, False


def s_n_closed_sum(Py_ssize_t total_degree, coef_j, tables, bint use_fsum=False):
    """Inner double sum of the closed form of the degree-N identity.

    Same composition enumeration order (lexicographic, inner index j
    outermost) as the fallback; see there for the table layout.
    """
    if use_fsum:
        from . import _kernels_py
        return _kernels_py.s_n_closed_sum(total_degree, coef_j, tables, use_fsum=True)
    cj_arr = np.ascontiguousarray(coef_j, dtype=np.float64)
    tb_arr = np.ascontiguousarray(tables, dtype=np.float64)
    cdef double[::1] cj = cj_arr
    cdef double[:, :, ::1] tb = tb_arr
    cdef Py_ssize_t jcap = tb.shape[0], nparts = tb.shape[1]
    cdef Py_ssize_t jmax = jcap if jcap < cj.shape[0] else cj.shape[0]
    m_arr = np.zeros(nparts, dtype=np.intp)
    cdef Py_ssize_t[::1] mv = m_arr
    cdef Py_ssize_t j, s, i, rem, suffix, found
    cdef double total = 0.0, comp = 0.0, prod, s2
    for j in range(jmax):
        rem = total_degree - nparts * j
        if rem < 0:
            break
        for i in range(nparts - 1):
            mv[i] = 0
        mv[nparts - 1] = rem
        while True:
            prod = cj[j]
            for s in range(nparts):
                prod *= tb[j, s, mv[s]]
            s2 = total + prod
            if fabs(total) >= fabs(prod):
                comp += (total - s2) + prod
            else:
                comp += (prod - s2) + total
            total = s2
            # next composition in lexicographic order
            suffix = 0
            found = -1
            for i in range(nparts - 2, -1, -1):
                suffix += mv[i + 1]
                if suffix > 0:
                    found = i
                    break
            if found < 0:
                break
            mv[found] += 1
            for i in range(found + 1, nparts - 1):
                mv[i] = 0
            mv[nparts - 1] = suffix - 1
    return total + comp


def hyp0f_vec(params, z, double tol, int max_terms, int window):
    """0F_q(params; z) elementwise over z, uniform termination across lanes.

    Returns (values, terms_used, converged)."""
    p_arr = np.ascontiguousarray(params, dtype=np.float64)
    z_arr = np.asarray(z, dtype=np.float64)
    shape = z_arr.shape
    flat_arr = np.ascontiguousarray(z_arr.ravel())
    out_arr = np.ones_like(flat_arr)
    term_arr = np.ones_like(flat_arr)
    run_arr = np.zeros(flat_arr.shape[0], dtype=np.int64)
    cdef double[::1] p = p_arr
    cdef double[::1] zv = flat_arr
    cdef double[::1] out = out_arr
    cdef double[::1] term = term_arr
    cdef long long[::1] run = run_arr
    cdef Py_ssize_t size = zv.shape[0], i, a
    cdef int t
    cdef double denom, scale
    cdef long long minrun
    if size == 0:
        return out_arr.reshape(shape), 0, True
    for t in range(1, max_terms + 1):
        denom = <double> t
        for a in range(p.shape[0]):
            denom *= p[a] + t - 1.0
        minrun = window
        for i in range(size):
            term[i] = term[i] * (zv[i] / denom)
            out[i] = out[i] + term[i]
            scale = fabs(out[i])
            if scale < 1e-300:
                scale = 1e-300
            if fabs(term[i]) <= tol * scale:
                run[i] += 1
            else:
                run[i] = 0
            if run[i] < minrun:
                minrun = run[i]
        if minrun >= window:
            return out_arr.reshape(shape), t, True
    return out_arr.reshape(shape), max_terms, False


def bessel_i_norm_vec(double nu, v, double tol, int max_terms):
    """Normalized Bessel i_nu(v) elementwise; all series terms positive.

    Returns (values, terms_used, converged)."""
    v_arr = np.asarray(v, dtype=np.float64)
    shape = v_arr.shape
    flat = np.ascontiguousarray(v_arr.ravel())
    x_arr = (0.5 * flat) ** 2
    out_arr = np.ones_like(x_arr)
    term_arr = np.ones_like(x_arr)
    cdef double[::1] x = x_arr
    cdef double[::1] out = out_arr
    cdef double[::1] term = term_arr
    cdef Py_ssize_t size = x.shape[0], i
    cdef int m
    cdef double fac
    cdef bint all_small
    if size == 0:
        return out_arr.reshape(shape), 0, True
    for m in range(1, max_terms + 1):
        fac = (<double> m) * (nu + m)
        all_small = True
        for i in range(size):
            term[i] = term[i] * (x[i] / fac)
            out[i] = out[i] + term[i]
            if term[i] > tol * out[i]:
                all_small = False
        if all_small:
            return out_arr.reshape(shape), m, True
    return out_arr.reshape(shape), max_terms, False
