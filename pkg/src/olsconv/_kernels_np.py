"""Pure-numpy kernel backend.

Transforms are stage-vectorized with reshape tricks; the fused engines loop
over segments in Python but keep every per-segment step vectorized.  The
numba backend in ``_kernels_nb`` mirrors every public name and signature.
"""

import numpy as np


# ---------------------------------------------------------------------------
# radix-2 transforms
# ---------------------------------------------------------------------------

def dif_fwd_batch(mat, tw):
    """In-place decimation-in-frequency pass over the last axis.

    Natural-order input, bit-reversed output, unscaled.  ``tw`` holds
    e^(-2*pi*i*j/n) for j < n/2.
    """
    n = mat.shape[-1]
    span = n >> 1
    while span >= 1:
        blocks = n // (span << 1)
        v = mat.reshape(-1, blocks, 2, span)
        w = tw[::blocks]
        u = v[:, :, 0, :]
        t = v[:, :, 1, :]
        s = u + t
        d = (u - t) * w
        v[:, :, 0, :] = s
        v[:, :, 1, :] = d
        span >>= 1


def dif_fwd(a, tw):
    dif_fwd_batch(a.reshape(1, -1), tw)


def dit_inv_batch(mat, twc):
    """Inverse of ``dif_fwd_batch``: bit-reversed input, natural output,
    scaled by 1/n.  ``twc`` is the conjugate twiddle table."""
    n = mat.shape[-1]
    span = 1
    while span < n:
        blocks = n // (span << 1)
        v = mat.reshape(-1, blocks, 2, span)
        w = twc[::blocks]
        t = v[:, :, 1, :] * w
        u = v[:, :, 0, :]
        s = u + t
        d = u - t
        v[:, :, 0, :] = s
        v[:, :, 1, :] = d
        span <<= 1
    mat *= 1.0 / n


def dit_inv(a, twc):
    dit_inv_batch(a.reshape(1, -1), twc)


def _stockham_batch(mat2, scratch2, tw, inverse):
    n = mat2.shape[-1]
    a, b = mat2, scratch2
    half = n >> 1
    m = 1
    while half >= 1:
        src = a.reshape(-1, 2, half, m)
        dst = b.reshape(-1, half, 2, m)
        w = tw[::m]
        u = src[:, 0]
        t = src[:, 1]
        dst[:, :, 0, :] = u + t
        dst[:, :, 1, :] = (u - t) * w[:, None]
        a, b = b, a
        half >>= 1
        m <<= 1
    if a is not mat2:
        mat2[:] = a
    if inverse:
        mat2 *= 1.0 / n


def stockham_fwd_batch(mat, tw):
    """Auto-sort transform over the last axis: natural order in and out."""
    mat2 = mat.reshape(-1, mat.shape[-1])
    _stockham_batch(mat2, np.empty_like(mat2), tw, False)


def stockham_inv_batch(mat, twc):
    mat2 = mat.reshape(-1, mat.shape[-1])
    _stockham_batch(mat2, np.empty_like(mat2), twc, True)


def stockham_fwd(a, scratch, tw):
    _stockham_batch(a.reshape(1, -1), scratch.reshape(1, -1), tw, False)


def stockham_inv(a, scratch, twc):
    _stockham_batch(a.reshape(1, -1), scratch.reshape(1, -1), twc, True)


# ---------------------------------------------------------------------------
# real-packed transforms (n reals via one n/2 complex transform)
# ---------------------------------------------------------------------------

def _complex_view(rmat):
    return rmat.view(np.complex64 if rmat.dtype == np.float32 else np.complex128)


def rfft_batch(rmat, tw_half, pack_tw, bins_out):
    """Forward packed real transform of each row of ``rmat`` (length n).

    Adjacent real pairs become one complex value, a half-length auto-sort
    transform runs, and the even/odd split recombines the result into bins
    0..n/2.  ``rmat`` is clobbered (it doubles as the packed work buffer).
    """
    z = _complex_view(rmat)
    stockham_fwd_batch(z, tw_half)
    h = z.shape[-1]
    idx = (h - np.arange(h)) % h
    zc = np.conj(z[:, idx])
    e = 0.5 * (z + zc)
    o = -0.5j * (z - zc)
    bins_out[:, :h] = e + pack_tw[:h] * o
    bins_out[:, 0] = z[:, 0].real + z[:, 0].imag
    bins_out[:, h] = z[:, 0].real - z[:, 0].imag


def irfft_batch(bins, tw_half_conj, pack_tw_conj, rmat_out):
    """Inverse of ``rfft_batch`` including scaling; writes n reals per row."""
    h = bins.shape[-1] - 1
    idx = h - np.arange(h)
    x = bins[:, :h]
    xc = np.conj(bins[:, idx])
    e = 0.5 * (x + xc)
    o = 0.5 * (x - xc) * pack_tw_conj[:h]
    z = _complex_view(rmat_out)
    z[:] = e + 1j * o
    stockham_inv_batch(z, tw_half_conj)


# ---------------------------------------------------------------------------
# direct time-domain convolution (ground-truth path)
# ---------------------------------------------------------------------------

def oracle_conv(x, taps, origin, out):
    """out[f, n] = sum_k taps[f, k] * x[n - k + origin], zero outside bounds.

    One shifted multiply-add per tap; each shift is the literal k-th term of
    the convolution sum.
    """
    n_s = x.shape[0]
    n_fil, m = taps.shape
    out[:] = 0
    for f in range(n_fil):
        for k in range(m):
            sh = k - origin
            lo = max(0, sh)
            hi = min(n_s, n_s + sh)
            if hi > lo:
                out[f, lo:hi] += taps[f, k] * x[lo - sh:hi - sh]


# ---------------------------------------------------------------------------
# fused overlap-save engines
# ---------------------------------------------------------------------------

def _gather(x, w0, buf):
    n = buf.shape[0]
    n_s = x.shape[0]
    buf[:] = 0
    lo = max(0, w0)
    hi = min(n_s, w0 + n)
    if hi > lo:
        buf[lo - w0:hi - w0] = x[lo:hi]


def _store(c, t0, g0, span, pp_kind, pp_c, h0f, x, origin, n_s, m, out_row):
    """Write one segment's valid samples to its output window, applying the
    selected post-processing."""
    seg = c[t0:t0 + span]
    if pp_kind == 0:
        out_row[g0:g0 + span] = seg
    elif pp_kind == 1:
        out_row[g0:g0 + span] = pp_c * seg
    elif pp_kind == 2:
        if np.iscomplexobj(seg):
            out_row[g0:g0 + span] = seg.real * seg.real + seg.imag * seg.imag
        else:
            out_row[g0:g0 + span] = seg * seg
    else:
        out_row[g0:g0 + span] = deriv_values(
            c, t0, g0, span, h0f, x, origin, n_s, m)


def deriv_values(c, t0, g0, span, h0f, x, origin, n_s, m):
    """Central difference over one segment's valid span.

    For tap length 1 there is no aliased halo, so the missing neighbor at
    each seam is recomputed directly from the input window; otherwise the
    segment itself carries one valid neighbor beyond each end of the span.
    Signal edges use one-sided differences.
    """
    left = np.empty(span, dtype=c.dtype)
    right = np.empty(span, dtype=c.dtype)
    if m == 1:
        left[1:] = c[t0:t0 + span - 1]
        gl = g0 - 1 + origin
        left[0] = h0f * x[gl] if 0 <= gl < n_s else 0
        right[:span - 1] = c[t0 + 1:t0 + span]
        gr = g0 + span + origin
        right[span - 1] = h0f * x[gr] if 0 <= gr < n_s else 0
    else:
        left[:] = c[t0 - 1:t0 - 1 + span]
        right[:] = c[t0 + 1:t0 + 1 + span]
    d = 0.5 * (right - left)
    if g0 == 0:
        d[0] = c[t0 + 1] - c[t0]
    if g0 + span == n_s:
        if span >= 2 or m >= 2:
            prev = c[t0 + span - 2]
        else:
            gp = n_s - 2 + origin
            prev = h0f * x[gp] if 0 <= gp < n_s else 0
        d[span - 1] = c[t0 + span - 1] - prev
    return d


def fused_c2c(x, spectra, tw, twc, m, origin, l_eff, t0, win_off,
              seg_lo, seg_hi, pp_kind, pp_c, h0, out, buf, spec_buf):
    """Per segment: gather, one forward transform, then for every filter a
    pointwise multiply, inverse transform, post-processing, and one write to
    the segment's disjoint output window."""
    n_s = x.shape[0]
    n_fil = spectra.shape[0]
    for s in range(seg_lo, seg_hi):
        g0 = s * l_eff
        _gather(x, g0 + win_off, buf)
        dif_fwd(buf, tw)
        spec_buf[:] = buf
        span = min(l_eff, n_s - g0)
        for f in range(n_fil):
            np.multiply(spec_buf, spectra[f], out=buf)
            dit_inv(buf, twc)
            _store(buf, t0, g0, span, pp_kind, pp_c, h0[f], x, origin,
                   n_s, m, out[f])


def fused_c2c_abs2(x, spectra, tw, twc, m, origin, l_eff, t0, win_off,
                   seg_lo, seg_hi, h0, out, buf, spec_buf):
    fused_c2c(x, spectra, tw, twc, m, origin, l_eff, t0, win_off,
              seg_lo, seg_hi, 2, 1.0, h0, out, buf, spec_buf)


def fused_r2r(x, spectra, tw_half, tw_half_conj, pack_tw, pack_tw_conj,
              m, origin, l_eff, t0, win_off, seg_lo, seg_hi,
              pp_kind, pp_c, h0, out, rbuf, z_scr, bins, prod):
    """Real fused engine: half-length packed transforms on real segments."""
    n_s = x.shape[0]
    n_fil = spectra.shape[0]
    rrow = rbuf.reshape(1, -1)
    brow = bins.reshape(1, -1)
    prow = prod.reshape(1, -1)
    for s in range(seg_lo, seg_hi):
        g0 = s * l_eff
        _gather(x, g0 + win_off, rbuf)
        rfft_batch(rrow, tw_half, pack_tw, brow)
        span = min(l_eff, n_s - g0)
        for f in range(n_fil):
            np.multiply(bins, spectra[f], out=prod)
            irfft_batch(prow, tw_half_conj, pack_tw_conj, rrow)
            _store(rbuf, t0, g0, span, pp_kind, pp_c, h0[f], x, origin,
                   n_s, m, out[f])
