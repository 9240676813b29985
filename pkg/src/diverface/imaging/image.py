"""Raster container and the package-wide quantization rule."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class FaceImage:
    """8-bit raster, row-major (height, width, channels).

    channels: 1 (grayscale), 3 (RGB) or 4 (RGBA).  All pipeline stages read
    and write this type; pixel data is owned and never aliased by ops.
    """

    pixels: np.ndarray
    colorspace: str = field(default="srgb")

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim == 2:
            px = px[:, :, None]
        if px.ndim != 3 or px.shape[2] not in (1, 3, 4):
            raise ValueError(f"expected (H, W, {{1,3,4}}) pixel array, got shape {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image dimensions must be >= 1")
        if px.dtype != np.uint8:
            raise ValueError(f"pixel dtype must be uint8, got {px.dtype}")
        if self.colorspace != "srgb":
            raise ValueError(f"unsupported colorspace {self.colorspace!r}")
        self.pixels = np.ascontiguousarray(px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    def copy(self) -> "FaceImage":
        return FaceImage(self.pixels.copy(), self.colorspace)

    def same_pixels(self, other: "FaceImage") -> bool:
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )


def quantize_u8(values: np.ndarray) -> np.ndarray:
    """Float samples -> uint8 with the package rounding rule.

    Clamp to [0, 255], then round half up (floor(v + 0.5)).  This is the one
    rounding rule used everywhere an op writes 8-bit output.
    """
    v = np.clip(np.asarray(values, dtype=np.float64), 0.0, 255.0)
    return np.floor(v + 0.5).astype(np.uint8)
