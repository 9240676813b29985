from .image import FaceImage, quantize_u8
from .io import read_image, write_image
from .ops import (
    AffineTransform,
    alpha_composite,
    crop,
    gray_world,
    resize,
    sample_bilinear,
    to_grayscale,
    warp_affine,
)

__all__ = [
    "FaceImage",
    "quantize_u8",
    "read_image",
    "write_image",
    "AffineTransform",
    "alpha_composite",
    "crop",
    "gray_world",
    "resize",
    "sample_bilinear",
    "to_grayscale",
    "warp_affine",
]
