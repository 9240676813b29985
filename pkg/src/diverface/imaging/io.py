"""Image file I/O: PNG (via Pillow) and the netpbm family (hand-rolled).

PNG carries alpha for mask templates; PPM/PGM/PAM are trivial formats that
make golden-file tests easy to read.  Format is picked by file extension.
"""

from pathlib import Path

import numpy as np
from PIL import Image as _PILImage

from .image import FaceImage

_PNM_EXTS = {".ppm", ".pgm", ".pnm"}


def read_image(path) -> FaceImage:
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".png":
        return _read_png(path)
    if ext in _PNM_EXTS:
        return _read_pnm(path)
    if ext == ".pam":
        return _read_pam(path)
    raise ValueError(f"unsupported image extension {ext!r} ({path})")


def write_image(path, img: FaceImage) -> None:
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".png":
        _write_png(path, img)
    elif ext in _PNM_EXTS:
        _write_pnm(path, img)
    elif ext == ".pam":
        _write_pam(path, img)
    else:
        raise ValueError(f"unsupported image extension {ext!r} ({path})")


def _read_png(path: Path) -> FaceImage:
    with _PILImage.open(path) as im:
        if im.mode not in ("L", "RGB", "RGBA"):
            im = im.convert("RGBA" if "A" in im.mode else "RGB")
        arr = np.asarray(im, dtype=np.uint8)
    return FaceImage(arr)


def _write_png(path: Path, img: FaceImage) -> None:
    arr = img.pixels
    if img.channels == 1:
        _PILImage.fromarray(arr[:, :, 0], mode="L").save(path, format="PNG")
    else:
        mode = "RGB" if img.channels == 3 else "RGBA"
        _PILImage.fromarray(arr, mode=mode).save(path, format="PNG")


def _read_pnm_header(data: bytes, n_fields: int):
    # Returns (fields, offset of binary payload). Comments (#) allowed.
    fields = []
    i = 2
    token = b""
    while len(fields) < n_fields:
        if i >= len(data):
            raise ValueError("truncated netpbm header")
        ch = data[i : i + 1]
        if ch == b"#":
            while i < len(data) and data[i : i + 1] != b"\n":
                i += 1
        elif ch.isspace():
            if token:
                fields.append(int(token))
                token = b""
        else:
            token += ch
        i += 1
    return fields, i


def _read_pnm(path: Path) -> FaceImage:
    data = path.read_bytes()
    magic = data[:2]
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise ValueError(f"unsupported netpbm magic {magic!r} ({path})")
    (w, h, maxval), off = _read_pnm_header(data, 3)
    if maxval != 255:
        raise ValueError(f"only maxval 255 supported, got {maxval}")
    need = w * h * channels
    payload = data[off : off + need]
    if len(payload) != need:
        raise ValueError(f"truncated pixel payload in {path}")
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(h, w, channels)
    return FaceImage(arr.copy())


def _write_pnm(path: Path, img: FaceImage) -> None:
    if img.channels == 4:
        raise ValueError("PPM cannot store alpha; use .pam or .png")
    magic = b"P5" if img.channels == 1 else b"P6"
    header = magic + f"\n{img.width} {img.height}\n255\n".encode()
    path.write_bytes(header + img.pixels.tobytes())


def _read_pam(path: Path) -> FaceImage:
    data = path.read_bytes()
    if not data.startswith(b"P7"):
        raise ValueError(f"not a PAM file: {path}")
    end = data.find(b"ENDHDR\n")
    if end < 0:
        raise ValueError(f"PAM header missing ENDHDR: {path}")
    fields = {}
    for line in data[:end].decode("ascii").splitlines()[1:]:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        fields[key] = value.strip()
    w = int(fields["WIDTH"])
    h = int(fields["HEIGHT"])
    depth = int(fields["DEPTH"])
    if int(fields.get("MAXVAL", "255")) != 255:
        raise ValueError("only maxval 255 supported")
    if depth not in (1, 3, 4):
        raise ValueError(f"unsupported PAM depth {depth}")
    off = end + len(b"ENDHDR\n")
    need = w * h * depth
    payload = data[off : off + need]
    if len(payload) != need:
        raise ValueError(f"truncated pixel payload in {path}")
    return FaceImage(np.frombuffer(payload, dtype=np.uint8).reshape(h, w, depth).copy())


def _write_pam(path: Path, img: FaceImage) -> None:
    tupltype = {1: "GRAYSCALE", 3: "RGB", 4: "RGB_ALPHA"}[img.channels]
    header = (
        f"P7\nWIDTH {img.width}\nHEIGHT {img.height}\nDEPTH {img.channels}\n"
        f"MAXVAL 255\nTUPLTYPE {tupltype}\nENDHDR\n"
    ).encode("ascii")
    path.write_bytes(header + img.pixels.tobytes())
