"""Kernel backend selection.

The hot inner loops (convolution, dense matmul, bilinear gathers) exist twice:
a numba @njit version and a pure-numpy version.  The environment variable
``DIVERFACE_BACKEND`` picks one:

* ``auto`` (default) - numba when importable, numpy otherwise
* ``numba``          - require numba, fail loudly if missing
* ``numpy``          - force the vectorized numpy path

Resampling kernels produce bit-identical output on both backends (same IEEE
expression tree).  Reduction kernels (conv2d, dense) accumulate in float64 on
both backends but in different orders, so their float32 results may differ in
the last ulp; per-backend runs are always bit-deterministic.
"""

import os

_CHOICES = ("auto", "numba", "numpy")


def requested_backend() -> str:
    value = os.environ.get("DIVERFACE_BACKEND", "auto").lower()
    if value not in _CHOICES:
        raise ValueError(
            f"DIVERFACE_BACKEND must be one of {_CHOICES}, got {value!r}"
        )
    return value


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend() -> str:
    """Return the backend name ('numba' or 'numpy') the kernels should use."""
    req = requested_backend()
    if req == "numpy":
        return "numpy"
    if req == "numba":
        if not numba_available():
            raise ImportError(
                "DIVERFACE_BACKEND=numba but numba is not importable; "
                "install numba or set DIVERFACE_BACKEND=numpy"
            )
        return "numba"
    return "numba" if numba_available() else "numpy"
