"""Numba kernel backend: scalar inner loops compiled per dtype.

Mirrors every public name and signature in ``_kernels_np``.  All kernels
release the GIL so the engine can run segment chunks on real threads.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def dif_fwd(a, tw):
    n = a.shape[0]
    span = n >> 1
    step = 1
    while span >= 1:
        start = 0
        while start < n:
            tj = 0
            for j in range(start, start + span):
                u = a[j]
                v = a[j + span]
                a[j] = u + v
                a[j + span] = (u - v) * tw[tj]
                tj += step
            start += span << 1
        span >>= 1
        step <<= 1


@njit(cache=True, nogil=True)
def dit_inv(a, twc):
    n = a.shape[0]
    span = 1
    step = n >> 1
    while span < n:
        start = 0
        while start < n:
            tj = 0
            for j in range(start, start + span):
                u = a[j]
                v = a[j + span] * twc[tj]
                a[j] = u + v
                a[j + span] = u - v
                tj += step
            start += span << 1
        span <<= 1
        step >>= 1
    inv = 1.0 / n
    for i in range(n):
        a[i] = a[i] * inv


@njit(cache=True, nogil=True)
def dif_fwd_batch(mat, tw):
    for i in range(mat.shape[0]):
        dif_fwd(mat[i], tw)


@njit(cache=True, nogil=True)
def dit_inv_batch(mat, twc):
    for i in range(mat.shape[0]):
        dit_inv(mat[i], twc)


@njit(cache=True, nogil=True)
def _stockham_core(a, b, tw, inverse):
    n = a.shape[0]
    half = n >> 1
    m = 1
    stages = 0
    src = a
    dst = b
    while half >= 1:
        for j in range(half):
            w = tw[j * m]
            bs = j * m
            bd = 2 * j * m
            off = half * m
            for k in range(m):
                c0 = src[bs + k]
                c1 = src[bs + off + k]
                dst[bd + k] = c0 + c1
                dst[bd + m + k] = (c0 - c1) * w
        tmp = src
        src = dst
        dst = tmp
        half >>= 1
        m <<= 1
        stages += 1
    if stages & 1:
        for i in range(n):
            a[i] = b[i]
    if inverse:
        inv = 1.0 / n
        for i in range(n):
            a[i] = a[i] * inv


@njit(cache=True, nogil=True)
def stockham_fwd(a, scratch, tw):
    _stockham_core(a, scratch, tw, False)


@njit(cache=True, nogil=True)
def stockham_inv(a, scratch, twc):
    _stockham_core(a, scratch, twc, True)


@njit(cache=True, nogil=True)
def stockham_fwd_batch(mat, tw):
    scratch = np.empty_like(mat[0])
    for i in range(mat.shape[0]):
        _stockham_core(mat[i], scratch, tw, False)


@njit(cache=True, nogil=True)
def stockham_inv_batch(mat, twc):
    scratch = np.empty_like(mat[0])
    for i in range(mat.shape[0]):
        _stockham_core(mat[i], scratch, twc, True)


# ---------------------------------------------------------------------------
# real-packed transforms
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _rfft_core(rbuf, z, scratch, tw_half, pack_tw, bins):
    n = rbuf.shape[0]
    h = n >> 1
    for j in range(h):
        z[j] = complex(rbuf[2 * j], rbuf[2 * j + 1])
    _stockham_core(z, scratch, tw_half, False)
    for k in range(1, h):
        zk = z[k]
        zc = np.conj(z[h - k])
        e = 0.5 * (zk + zc)
        o = -0.5j * (zk - zc)
        bins[k] = e + pack_tw[k] * o
    bins[0] = complex(z[0].real + z[0].imag, 0.0)
    bins[h] = complex(z[0].real - z[0].imag, 0.0)


@njit(cache=True, nogil=True)
def _irfft_core(bins, z, scratch, tw_half_conj, pack_tw_conj, rbuf):
    h = z.shape[0]
    for k in range(h):
        xk = bins[k]
        xc = np.conj(bins[h - k])
        e = 0.5 * (xk + xc)
        o = (0.5 * (xk - xc)) * pack_tw_conj[k]
        z[k] = e + 1j * o
    _stockham_core(z, scratch, tw_half_conj, True)
    for j in range(h):
        rbuf[2 * j] = z[j].real
        rbuf[2 * j + 1] = z[j].imag


@njit(cache=True, nogil=True)
def rfft_batch(rmat, tw_half, pack_tw, bins_out):
    h = bins_out.shape[1] - 1
    z = np.empty_like(bins_out[0, :h])
    scratch = np.empty_like(z)
    for i in range(rmat.shape[0]):
        _rfft_core(rmat[i], z, scratch, tw_half, pack_tw, bins_out[i])


@njit(cache=True, nogil=True)
def irfft_batch(bins, tw_half_conj, pack_tw_conj, rmat_out):
    h = bins.shape[1] - 1
    z = np.empty_like(bins[0, :h])
    scratch = np.empty_like(z)
    for i in range(bins.shape[0]):
        _irfft_core(bins[i], z, scratch, tw_half_conj, pack_tw_conj,
                    rmat_out[i])


# ---------------------------------------------------------------------------
# direct time-domain convolution (ground-truth path)
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def oracle_conv(x, taps, origin, out):
    n_s = x.shape[0]
    n_fil = taps.shape[0]
    m = taps.shape[1]
    for f in range(n_fil):
        for i in range(n_s):
            klo = i + origin - n_s + 1
            if klo < 0:
                klo = 0
            khi = i + origin
            if khi > m - 1:
                khi = m - 1
            acc = x[0] * 0
            for k in range(klo, khi + 1):
                acc += taps[f, k] * x[i - k + origin]
            out[f, i] = acc


# ---------------------------------------------------------------------------
# fused overlap-save engines
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _gather(x, w0, buf):
    n = buf.shape[0]
    n_s = x.shape[0]
    for t in range(n):
        idx = w0 + t
        if 0 <= idx < n_s:
            buf[t] = x[idx]
        else:
            buf[t] = 0


@njit(cache=True, nogil=True)
def _store(c, t0, g0, span, pp_kind, pp_c, h0f, x, origin, n_s, m, out_row):
    if pp_kind == 0:
        for j in range(span):
            out_row[g0 + j] = c[t0 + j]
    elif pp_kind == 1:
        for j in range(span):
            out_row[g0 + j] = pp_c * c[t0 + j]
    else:
        # central difference; tap length 1 has no halo, so seam neighbors
        # are recomputed straight from the input window
        for j in range(span):
            g = g0 + j
            t = t0 + j
            if g == 0:
                d = c[t + 1] - c[t]
            elif g == n_s - 1:
                if m == 1 and j == 0:
                    gp = g - 1 + origin
                    if 0 <= gp < n_s:
                        prev = h0f * x[gp]
                    else:
                        prev = h0f * 0
                else:
                    prev = c[t - 1]
                d = c[t] - prev
            else:
                if m == 1 and j == 0:
                    gl = g - 1 + origin
                    if 0 <= gl < n_s:
                        left = h0f * x[gl]
                    else:
                        left = h0f * 0
                else:
                    left = c[t - 1]
                if m == 1 and t + 1 >= c.shape[0]:
                    gr = g + 1 + origin
                    if 0 <= gr < n_s:
                        right = h0f * x[gr]
                    else:
                        right = h0f * 0
                else:
                    right = c[t + 1]
                d = 0.5 * (right - left)
            out_row[g] = d


@njit(cache=True, nogil=True)
def fused_c2c(x, spectra, tw, twc, m, origin, l_eff, t0, win_off,
              seg_lo, seg_hi, pp_kind, pp_c, h0, out, buf, spec_buf):
    n = buf.shape[0]
    n_s = x.shape[0]
    n_fil = spectra.shape[0]
    for s in range(seg_lo, seg_hi):
        g0 = s * l_eff
        _gather(x, g0 + win_off, buf)
        dif_fwd(buf, tw)
        for t in range(n):
            spec_buf[t] = buf[t]
        span = l_eff
        if g0 + span > n_s:
            span = n_s - g0
        for f in range(n_fil):
            for t in range(n):
                buf[t] = spec_buf[t] * spectra[f, t]
            dit_inv(buf, twc)
            _store(buf, t0, g0, span, pp_kind, pp_c, h0[f], x, origin,
                   n_s, m, out[f])


@njit(cache=True, nogil=True)
def fused_c2c_abs2(x, spectra, tw, twc, m, origin, l_eff, t0, win_off,
                   seg_lo, seg_hi, h0, out, buf, spec_buf):
    n = buf.shape[0]
    n_s = x.shape[0]
    n_fil = spectra.shape[0]
    for s in range(seg_lo, seg_hi):
        g0 = s * l_eff
        _gather(x, g0 + win_off, buf)
        dif_fwd(buf, tw)
        for t in range(n):
            spec_buf[t] = buf[t]
        span = l_eff
        if g0 + span > n_s:
            span = n_s - g0
        for f in range(n_fil):
            for t in range(n):
                buf[t] = spec_buf[t] * spectra[f, t]
            dit_inv(buf, twc)
            for j in range(span):
                v = buf[t0 + j]
                out[f, g0 + j] = v.real * v.real + v.imag * v.imag


@njit(cache=True, nogil=True)
def fused_r2r(x, spectra, tw_half, tw_half_conj, pack_tw, pack_tw_conj,
              m, origin, l_eff, t0, win_off, seg_lo, seg_hi,
              pp_kind, pp_c, h0, out, rbuf, z_scr, bins, prod):
    h = bins.shape[0] - 1
    n_s = x.shape[0]
    n_fil = spectra.shape[0]
    z = np.empty_like(z_scr)
    for s in range(seg_lo, seg_hi):
        g0 = s * l_eff
        _gather(x, g0 + win_off, rbuf)
        _rfft_core(rbuf, z, z_scr, tw_half, pack_tw, bins)
        span = l_eff
        if g0 + span > n_s:
            span = n_s - g0
        for f in range(n_fil):
            for k in range(h + 1):
                prod[k] = bins[k] * spectra[f, k]
            _irfft_core(prod, z, z_scr, tw_half_conj, pack_tw_conj, rbuf)
            if pp_kind == 2:
                for j in range(span):
                    v = rbuf[t0 + j]
                    out[f, g0 + j] = v * v
            else:
                _store(rbuf, t0, g0, span, pp_kind, pp_c, h0[f], x, origin,
                       n_s, m, out[f])
