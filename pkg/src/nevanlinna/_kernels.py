"""Compiled inner loops: transfer-matrix products and the three-term recurrence."""
import math
import os

import numba
import numpy as np

if "NUMBA_THREADING_LAYER" not in os.environ:
    # prefer layers that need no version check; tbb only as a last resort
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_LN2 = math.log(2.0)


@numba.njit(cache=True, inline="always")
def _renorm(a, b, c, d, log_scale):
    mx = max(abs(a), abs(b), abs(c), abs(d))
    if mx == 0.0 or not math.isfinite(mx):
        return a, b, c, d, log_scale
    _, e = math.frexp(mx)
    if e != 0:
        f = math.ldexp(1.0, -e)
        a *= f
        b *= f
        c *= f
        d *= f
        log_scale += e * _LN2
    return a, b, c, d, log_scale


@numba.njit(cache=True, inline="always")
def _apply(a, b, c, d, zl, co, si):
    # W (I - z l xi xi^T J) = W - z l (W xi)(s, -c)
    u1 = a * co + b * si
    u2 = c * co + d * si
    a = a - zl * u1 * si
    b = b + zl * u1 * co
    c = c - zl * u2 * si
    d = d + zl * u2 * co
    return a, b, c, d


@numba.njit(cache=True)
def product(lengths, cos_phi, sin_phi, z, start, stop):
    """Scaled product of interval factors start..stop-1 at one complex point."""
    a = 1.0 + 0.0j
    b = 0.0j
    c = 0.0j
    d = 1.0 + 0.0j
    log_scale = 0.0
    for j in range(start, stop):
        a, b, c, d = _apply(a, b, c, d, z * lengths[j], cos_phi[j], sin_phi[j])
        a, b, c, d, log_scale = _renorm(a, b, c, d, log_scale)
    return a, b, c, d, log_scale


@numba.njit(cache=True, parallel=True)
def w22_checkpoints(lengths, cos_phi, sin_phi, rs, checkpoints, tails, tol, doubling):
    """log|w22(ir)| at increasing truncation checkpoints, with early stopping.

    For each r the sweep stops at the first checkpoint where
    ``r * tails[k] <= tol * max(1, |v|)`` or, if ``doubling`` is set, where
    the value moved by at most ``tol * max(1, |v|)`` since the previous
    checkpoint.

    Returns (values[nr, nck], stop_index[nr], reason[nr]) where reason is
    0 = ran to the last checkpoint, 1 = tail rule, 2 = doubling rule.
    Entries past the stop index are NaN.
    """
    nr = rs.shape[0]
    nck = checkpoints.shape[0]
    values = np.full((nr, nck), np.nan)
    stop_index = np.full(nr, nck - 1, dtype=np.int64)
    reason = np.zeros(nr, dtype=np.int64)
    for i in numba.prange(nr):
        z = 1j * rs[i]
        a = 1.0 + 0.0j
        b = 0.0j
        c = 0.0j
        d = 1.0 + 0.0j
        log_scale = 0.0
        j = 0
        for k in range(nck):
            stop = checkpoints[k]
            while j < stop:
                a, b, c, d = _apply(a, b, c, d, z * lengths[j], cos_phi[j], sin_phi[j])
                a, b, c, d, log_scale = _renorm(a, b, c, d, log_scale)
                j += 1
            v = log_scale + math.log(abs(d)) if d != 0 else -np.inf
            values[i, k] = v
            scale = max(1.0, abs(v))
            if rs[i] * tails[k] <= tol * scale:
                stop_index[i] = k
                reason[i] = 1
                break
            if doubling and k > 0 and abs(v - values[i, k - 1]) <= tol * scale:
                stop_index[i] = k
                reason[i] = 2
                break
    return values, stop_index, reason


@numba.njit(cache=True)
def poly_recurrence(a, b, big):
    """p_n(0), q_n(0) for n = 0..N with a shared running log-scale.

    Values are stored as mantissa * exp(log_scale[n]); the working pair is
    rescaled by a power of two whenever max(|p_n|, |q_n|) leaves
    [1/big, big].
    """
    n_par = a.shape[0]
    p = np.empty(n_par + 1)
    q = np.empty(n_par + 1)
    log_scale = np.zeros(n_par + 1)
    p[0] = 1.0
    q[0] = 0.0
    p_prev = 0.0
    q_prev = 0.0
    p_cur = 1.0
    q_cur = 0.0
    s = 0.0
    for n in range(n_par):
        if n == 0:
            p_next = -a[0] * p_cur / b[0]
            q_next = (1.0 - a[0] * q_cur) / b[0]
        else:
            p_next = -(a[n] * p_cur + b[n - 1] * p_prev) / b[n]
            q_next = -(a[n] * q_cur + b[n - 1] * q_prev) / b[n]
        p_prev, q_prev = p_cur, q_cur
        p_cur, q_cur = p_next, q_next
        mx = max(abs(p_cur), abs(q_cur))
        if mx > big or (mx < 1.0 / big and mx > 0.0):
            _, e = math.frexp(mx)
            f = math.ldexp(1.0, -e)
            p_cur *= f
            q_cur *= f
            p_prev *= f
            q_prev *= f
            s += e * _LN2
        p[n + 1] = p_cur
        q[n + 1] = q_cur
        log_scale[n + 1] = s
    return p, q, log_scale


@numba.njit(cache=True, inline="always")
def _neumaier(total, comp, x):
    t = total + x
    if abs(total) >= abs(x):
        comp += (total - t) + x
    else:
        comp += (x - t) + total
    return t, comp


@numba.njit(cache=True)
def compensated_sum(x):
    """Neumaier-compensated sum of a 1-d array."""
    total = 0.0
    comp = 0.0
    for v in x:
        total, comp = _neumaier(total, comp, v)
    return total + comp


@numba.njit(cache=True)
def omega_sums(l, phi, shift):
    """Compensated sums of l cos^2, l cos sin, l sin^2 at angles phi - shift."""
    t11 = c11 = t12 = c12 = t22 = c22 = 0.0
    for j in range(l.size):
        co = math.cos(phi[j] - shift)
        si = math.sin(phi[j] - shift)
        t11, c11 = _neumaier(t11, c11, l[j] * co * co)
        t12, c12 = _neumaier(t12, c12, l[j] * co * si)
        t22, c22 = _neumaier(t22, c22, l[j] * si * si)
    return t11 + c11, t12 + c12, t22 + c22


@numba.njit(cache=True)
def window_dets(l, sin_step, cos_step, s):
    """det of s consecutive intervals, sum_{p<q} l_p l_q sin^2(gap), for every start.

    Gap sines are advanced by the addition formula on the step sines and cosines.
    """
    out = np.empty(l.size - s + 1)
    for j in range(out.size):
        det = 0.0
        for p in range(j, j + s - 1):
            sn, cs = 0.0, 1.0
            for q in range(p + 1, j + s):
                sq, cq = sin_step[q - 1], cos_step[q - 1]
                sn, cs = sq * cs + cq * sn, cq * cs - sq * sn
                det += l[p] * l[q] * sn * sn
        out[j] = det
    return out
