"""Pure-numpy implementations of the hot kernels.

Reductions (conv2d, dense) cast operands to float64 before the contraction so
rounding happens once, at the final cast back to the working dtype.  The
bilinear gather evaluates exactly the same expression tree as the jit version
and is therefore bit-identical to it.
"""

import numpy as np

BACKEND_NAME = "numpy"


def conv2d_forward(x, w, b, pad):
    """Stride-1 2-D correlation. x:(N,C,H,W) w:(O,C,KH,KW) b:(O,) -> (N,O,H',W')."""
    n, c, h, wd = x.shape
    o, _, kh, kw = w.shape
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    win = np.lib.stride_tricks.sliding_window_view(xp, (kh, kw), axis=(2, 3))
    hp, wp = h + 2 * pad - kh + 1, wd + 2 * pad - kw + 1
    cols = win.transpose(0, 2, 3, 1, 4, 5).reshape(n * hp * wp, c * kh * kw)
    y = cols.astype(np.float64) @ w.reshape(o, -1).astype(np.float64).T
    y += b.astype(np.float64)
    return np.ascontiguousarray(
        y.reshape(n, hp, wp, o).transpose(0, 3, 1, 2)
    ).astype(x.dtype)


def conv2d_backward(x, w, dy, pad):
    """Gradients of conv2d_forward. Returns (dx, dw, db) in x/w dtype."""
    n, c, h, wd = x.shape
    o, _, kh, kw = w.shape
    dy64 = dy.astype(np.float64)

    db = dy64.sum(axis=(0, 2, 3)).astype(w.dtype)

    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad))).astype(np.float64)
    win = np.lib.stride_tricks.sliding_window_view(xp, (kh, kw), axis=(2, 3))
    # win[n,c,y,x,ky,kx] = xp[n,c,y+ky,x+kx]
    dw = np.einsum("noyx,ncyxij->ocij", dy64, win, optimize=True).astype(w.dtype)

    # dx is the full correlation of dy with the flipped, transposed kernel.
    wt = np.ascontiguousarray(w[:, :, ::-1, ::-1].transpose(1, 0, 2, 3))
    dx = conv2d_forward(
        dy.astype(x.dtype), wt.astype(x.dtype),
        np.zeros(c, dtype=x.dtype), kh - 1 - pad,
    )
    return dx, dw, db


def dense_forward(x, w, b):
    """x:(N,I) w:(I,O) b:(O,) -> (N,O), float64 accumulation."""
    y = x.astype(np.float64) @ w.astype(np.float64) + b.astype(np.float64)
    return y.astype(x.dtype)


def dense_backward(x, w, dy):
    dy64 = dy.astype(np.float64)
    dx = (dy64 @ w.astype(np.float64).T).astype(x.dtype)
    dw = (x.astype(np.float64).T @ dy64).astype(w.dtype)
    db = dy64.sum(axis=0).astype(w.dtype)
    return dx, dw, db


def maxpool2x2_forward(x):
    """2x2/stride-2 max pool; odd trailing rows/cols are dropped.

    Returns (out, idx) where idx in {0,1,2,3} encodes the argmax corner in
    scan order (0,0),(0,1),(1,0),(1,1); ties resolve to the first maximum.
    """
    n, c, h, w = x.shape
    h2, w2 = h // 2, w // 2
    xt = x[:, :, : h2 * 2, : w2 * 2]
    stack = np.stack(
        (xt[:, :, 0::2, 0::2], xt[:, :, 0::2, 1::2],
         xt[:, :, 1::2, 0::2], xt[:, :, 1::2, 1::2])
    )
    idx = stack.argmax(axis=0).astype(np.uint8)
    out = stack.max(axis=0)
    return out, idx


def maxpool2x2_backward(idx, dy, x_shape):
    n, c, h, w = x_shape
    dx = np.zeros(x_shape, dtype=dy.dtype)
    for k, (ky, kx) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        view = dx[:, :, ky : idx.shape[2] * 2 : 2, kx : idx.shape[3] * 2 : 2]
        m = idx == k
        view[m] = dy[m]
    return dx


def bilinear_gather(img, xs, ys):
    """Clamp-to-edge bilinear sampling.

    img: (H,W,C) float64; xs, ys: flat float64 coordinate arrays.
    Returns (len(xs), C) float64 samples.
    """
    h, w, _ = img.shape
    xc = np.clip(xs, 0.0, float(w - 1))
    yc = np.clip(ys, 0.0, float(h - 1))
    x0 = np.floor(xc)
    y0 = np.floor(yc)
    fx = (xc - x0)[:, None]
    fy = (yc - y0)[:, None]
    x0i = x0.astype(np.intp)
    y0i = y0.astype(np.intp)
    x1i = np.minimum(x0i + 1, w - 1)
    y1i = np.minimum(y0i + 1, h - 1)
    v00 = img[y0i, x0i]
    v01 = img[y0i, x1i]
    v10 = img[y1i, x0i]
    v11 = img[y1i, x1i]
    return (v00 * (1.0 - fx) + v01 * fx) * (1.0 - fy) + (
        v10 * (1.0 - fx) + v11 * fx
    ) * fy
