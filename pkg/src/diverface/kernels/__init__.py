"""Hot-kernel dispatch: numba jit loops or the pure-numpy fallback.

The active backend is resolved once at import from ``DIVERFACE_BACKEND``
(see :mod:`diverface.backend`).  Benchmarks and equivalence tests import
:mod:`~diverface.kernels.numpy_impl` / :mod:`~diverface.kernels.numba_impl`
directly instead of flipping the global choice.
"""

from .. import backend as _backend
from . import numpy_impl

_active = numpy_impl
if _backend.resolve_backend() == "numba":
    from . import numba_impl

    _active = numba_impl

conv2d_forward = _active.conv2d_forward
conv2d_backward = _active.conv2d_backward
dense_forward = _active.dense_forward
dense_backward = _active.dense_backward
maxpool2x2_forward = _active.maxpool2x2_forward
maxpool2x2_backward = _active.maxpool2x2_backward
bilinear_gather = _active.bilinear_gather


def active_backend() -> str:
    """Name of the kernel backend in use: 'numba' or 'numpy'."""
    return _active.BACKEND_NAME
