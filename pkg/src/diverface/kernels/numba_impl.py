"""Numba @njit implementations of the hot kernels.

Loops parallelize with prange only where every output element has a single
writer, so results do not depend on the thread count.  All reductions
accumulate in float64 regardless of the working dtype.
"""

import numpy as np
from numba import njit, prange

BACKEND_NAME = "numba"


@njit(cache=True, nogil=True, parallel=True)
def conv2d_forward(x, w, b, pad):
    n, c, h, wd = x.shape
    o = w.shape[0]
    kh, kw = w.shape[2], w.shape[3]
    hp = h + 2 * pad - kh + 1
    wp = wd + 2 * pad - kw + 1
    out = np.empty((n, o, hp, wp), dtype=x.dtype)
    for pidx in prange(n * o):
        i = pidx // o
        j = pidx % o
        for y in range(hp):
            for xo in range(wp):
                acc = np.float64(b[j])
                for ci in range(c):
                    for ky in range(kh):
                        yy = y + ky - pad
                        if yy < 0 or yy >= h:
                            continue
                        for kx in range(kw):
                            xx = xo + kx - pad
                            if 0 <= xx < wd:
                                acc += np.float64(x[i, ci, yy, xx]) * np.float64(
                                    w[j, ci, ky, kx]
                                )
                out[i, j, y, xo] = acc
    return out


@njit(cache=True, nogil=True, parallel=True)
def conv2d_backward(x, w, dy, pad):
    n, c, h, wd = x.shape
    o = w.shape[0]
    kh, kw = w.shape[2], w.shape[3]
    hp, wp = dy.shape[2], dy.shape[3]

    db = np.empty(o, dtype=w.dtype)
    for j in prange(o):
        acc = np.float64(0.0)
        for i in range(n):
            for y in range(hp):
                for xo in range(wp):
                    acc += np.float64(dy[i, j, y, xo])
        db[j] = acc

    dw = np.empty_like(w)
    for pidx in prange(o * c):
        j = pidx // c
        ci = pidx % c
        for ky in range(kh):
            for kx in range(kw):
                acc = np.float64(0.0)
                for i in range(n):
                    for y in range(hp):
                        yy = y + ky - pad
                        if yy < 0 or yy >= h:
                            continue
                        for xo in range(wp):
                            xx = xo + kx - pad
                            if 0 <= xx < wd:
                                acc += np.float64(dy[i, j, y, xo]) * np.float64(
                                    x[i, ci, yy, xx]
                                )
                dw[j, ci, ky, kx] = acc

    dx = np.empty_like(x)
    for pidx in prange(n * c):
        i = pidx // c
        ci = pidx % c
        for yy in range(h):
            for xx in range(wd):
                acc = np.float64(0.0)
                for j in range(o):
                    for ky in range(kh):
                        y = yy + pad - ky
                        if y < 0 or y >= hp:
                            continue
                        for kx in range(kw):
                            xo = xx + pad - kx
                            if 0 <= xo < wp:
                                acc += np.float64(dy[i, j, y, xo]) * np.float64(
                                    w[j, ci, ky, kx]
                                )
                dx[i, ci, yy, xx] = acc
    return dx, dw, db


@njit(cache=True, nogil=True, parallel=True)
def dense_forward(x, w, b):
    n, idim = x.shape
    o = w.shape[1]
    out = np.empty((n, o), dtype=x.dtype)
    for i in prange(n):
        for j in range(o):
            acc = np.float64(b[j])
            for k in range(idim):
                acc += np.float64(x[i, k]) * np.float64(w[k, j])
            out[i, j] = acc
    return out


@njit(cache=True, nogil=True, parallel=True)
def dense_backward(x, w, dy):
    n, idim = x.shape
    o = w.shape[1]
    dx = np.empty_like(x)
    for i in prange(n):
        for k in range(idim):
            acc = np.float64(0.0)
            for j in range(o):
                acc += np.float64(dy[i, j]) * np.float64(w[k, j])
            dx[i, k] = acc
    dw = np.empty_like(w)
    for k in prange(idim):
        for j in range(o):
            acc = np.float64(0.0)
            for i in range(n):
                acc += np.float64(x[i, k]) * np.float64(dy[i, j])
            dw[k, j] = acc
    db = np.empty(o, dtype=w.dtype)
    for j in prange(o):
        acc = np.float64(0.0)
        for i in range(n):
            acc += np.float64(dy[i, j])
        db[j] = acc
    return dx, dw, db


@njit(cache=True, nogil=True)
def maxpool2x2_forward(x):
    n, c, h, w = x.shape
    h2, w2 = h // 2, w // 2
    out = np.empty((n, c, h2, w2), dtype=x.dtype)
    idx = np.empty((n, c, h2, w2), dtype=np.uint8)
    for i in range(n):
        for ci in range(c):
            for y in range(h2):
                for xo in range(w2):
                    best = x[i, ci, 2 * y, 2 * xo]
                    bk = 0
                    k = 0
                    for ky in range(2):
                        for kx in range(2):
                            if ky == 0 and kx == 0:
                                k += 1
                                continue
                            v = x[i, ci, 2 * y + ky, 2 * xo + kx]
                            if v > best:
                                best = v
                                bk = k
                            k += 1
                    out[i, ci, y, xo] = best
                    idx[i, ci, y, xo] = bk
    return out, idx


@njit(cache=True, nogil=True)
def maxpool2x2_backward(idx, dy, x_shape):
    dx = np.zeros(x_shape, dtype=dy.dtype)
    n, c, h2, w2 = idx.shape
    for i in range(n):
        for ci in range(c):
            for y in range(h2):
                for xo in range(w2):
                    k = idx[i, ci, y, xo]
                    ky = k // 2
                    kx = k % 2
                    dx[i, ci, 2 * y + ky, 2 * xo + kx] = dy[i, ci, y, xo]
    return dx


@njit(cache=True, nogil=True, parallel=True)
def bilinear_gather(img, xs, ys):
    h, w, c = img.shape
    m = xs.shape[0]
    out = np.empty((m, c), dtype=np.float64)
    wmax = np.float64(w - 1)
    hmax = np.float64(h - 1)
    for p in prange(m):
        x = xs[p]
        y = ys[p]
        if x < 0.0:
            x = 0.0
        elif x > wmax:
            x = wmax
        if y < 0.0:
            y = 0.0
        elif y > hmax:
            y = hmax
        x0 = np.floor(x)
        y0 = np.floor(y)
        fx = x - x0
        fy = y - y0
        x0i = int(x0)
        y0i = int(y0)
        x1i = min(x0i + 1, w - 1)
        y1i = min(y0i + 1, h - 1)
        for ch in range(c):
            v00 = img[y0i, x0i, ch]
            v01 = img[y0i, x1i, ch]
            v10 = img[y1i, x0i, ch]
            v11 = img[y1i, x1i, ch]
            out[p, ch] = (v00 * (1.0 - fx) + v01 * fx) * (1.0 - fy) + (
                v10 * (1.0 - fx) + v11 * fx
            ) * fy
    return out
