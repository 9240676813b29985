"""Core raster operations: sampling, warping, compositing, color transforms.

All ops are pure (inputs untouched, fresh output buffers) and deterministic.
Out-of-bounds samples clamp to the nearest edge pixel; 8-bit quantization
uses the round-half-up rule from :func:`diverface.imaging.image.quantize_u8`.
"""

from dataclasses import dataclass

import numpy as np

from .. import kernels
from .image import FaceImage, quantize_u8

# Rec.601 luma weights.
_LUMA = (0.299, 0.587, 0.114)


@dataclass(frozen=True)
class AffineTransform:
    """2x3 matrix mapping destination pixel coords to source coords."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (2, 3):
            raise ValueError(f"affine matrix must be 2x3, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("affine matrix has non-finite entries")
        object.__setattr__(self, "matrix", m)

    @staticmethod
    def identity() -> "AffineTransform":
        return AffineTransform(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))

    @staticmethod
    def translation(tx: float, ty: float) -> "AffineTransform":
        return AffineTransform(np.array([[1.0, 0.0, tx], [0.0, 1.0, ty]]))

    def apply(self, xs: np.ndarray, ys: np.ndarray):
        m = self.matrix
        return (
            m[0, 0] * xs + m[0, 1] * ys + m[0, 2],
            m[1, 0] * xs + m[1, 1] * ys + m[1, 2],
        )

    def inverse(self) -> "AffineTransform":
        a = self.matrix[:, :2]
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        if abs(det) < 1e-12:
            raise ValueError("affine transform is singular")
        inv = np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]]) / det
        t = -inv @ self.matrix[:, 2]
        return AffineTransform(np.hstack([inv, t[:, None]]))


def sample_bilinear(img: FaceImage, x: float, y: float) -> tuple:
    """Bilinear sample at (x, y); returns per-channel floats, clamped to edge."""
    src = img.pixels.astype(np.float64)
    out = kernels.bilinear_gather(
        src, np.array([float(x)]), np.array([float(y)])
    )
    return tuple(out[0])


def _gather_image(img: FaceImage, xs: np.ndarray, ys: np.ndarray, out_h, out_w) -> FaceImage:
    src = img.pixels.astype(np.float64)
    samples = kernels.bilinear_gather(src, xs.ravel(), ys.ravel())
    return FaceImage(quantize_u8(samples.reshape(out_h, out_w, img.channels)))


def warp_affine(img: FaceImage, t: AffineTransform, out_w: int, out_h: int) -> FaceImage:
    """Resample img through t (dest -> source); alpha warps with color."""
    if out_w < 1 or out_h < 1:
        raise ValueError("output dimensions must be >= 1")
    ys, xs = np.mgrid[0:out_h, 0:out_w].astype(np.float64)
    sx, sy = t.apply(xs, ys)
    return _gather_image(img, sx, sy, out_h, out_w)


def alpha_composite(base: FaceImage, overlay: FaceImage) -> FaceImage:
    """Blend an RGBA overlay over an RGB base: out = fg*a + bg*(1-a)."""
    if base.channels != 3 or overlay.channels != 4:
        raise ValueError("alpha_composite expects RGB base and RGBA overlay")
    if (base.height, base.width) != (overlay.height, overlay.width):
        raise ValueError(
            f"dimension mismatch: base {base.width}x{base.height} vs "
            f"overlay {overlay.width}x{overlay.height}"
        )
    a = overlay.pixels[:, :, 3:4].astype(np.float64) / 255.0
    fg = overlay.pixels[:, :, :3].astype(np.float64)
    bg = base.pixels.astype(np.float64)
    return FaceImage(quantize_u8(fg * a + bg * (1.0 - a)))


def crop(img: FaceImage, x0: int, y0: int, w: int, h: int) -> FaceImage:
    if w < 1 or h < 1:
        raise ValueError("crop size must be >= 1")
    if x0 < 0 or y0 < 0 or x0 + w > img.width or y0 + h > img.height:
        raise ValueError(
            f"crop rect ({x0},{y0},{w},{h}) outside {img.width}x{img.height} image"
        )
    return FaceImage(img.pixels[y0 : y0 + h, x0 : x0 + w].copy())


def resize(img: FaceImage, w: int, h: int) -> FaceImage:
    """Bilinear resize with half-pixel center alignment."""
    if w < 1 or h < 1:
        raise ValueError("resize target must be >= 1")
    sx = img.width / w
    sy = img.height / h
    xs = (np.arange(w, dtype=np.float64) + 0.5) * sx - 0.5
    ys = (np.arange(h, dtype=np.float64) + 0.5) * sy - 0.5
    gx, gy = np.meshgrid(xs, ys)
    return _gather_image(img, gx, gy, h, w)


def to_grayscale(img: FaceImage) -> FaceImage:
    if img.channels == 1:
        return img.copy()
    rgb = img.pixels[:, :, :3].astype(np.float64)
    luma = _LUMA[0] * rgb[:, :, 0] + _LUMA[1] * rgb[:, :, 1] + _LUMA[2] * rgb[:, :, 2]
    return FaceImage(quantize_u8(luma)[:, :, None])


def gray_world(img: FaceImage, max_gain: float = 2.0) -> FaceImage:
    """Gray-world white balance: scale channels toward a common mean.

    Gains are clamped to [1/max_gain, max_gain] so near-monochrome inputs
    cannot explode.
    """
    if img.channels != 3:
        raise ValueError("gray_world expects an RGB image")
    rgb = img.pixels.astype(np.float64)
    means = rgb.reshape(-1, 3).mean(axis=0)
    target = means.mean()
    gains = np.ones(3) if target == 0 else target / np.maximum(means, 1e-9)
    gains = np.clip(gains, 1.0 / max_gain, max_gain)
    return FaceImage(quantize_u8(rgb * gains))
