"""Backend selection for the dense polynomial kernels.

The compiled ``_ckernels`` module is used when it is importable, unless the
environment variable ``QUIVERDT_PURE`` is set to a non-empty value. The
compiled routines signal int64 overflow by returning ``None``, in which case
the pure-Python kernel is rerun on the same input, so results never depend on
the backend.
"""

import os

from . import _pykernels

_c = None
if not os.environ.get("QUIVERDT_PURE"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"


if _c is not None:

    def mul(a, b):
        out = _c.mul(a, b)
        if out is None:
            out = _pykernels.mul(a, b)
        return out

    def div_binomial(p, n):
        out = _c.div_binomial(p, n)
        if out is None:
            return _pykernels.div_binomial(p, n)
        if out is False:
            return None
        return out

    def mul_binomial(p, n):
        out = _c.mul_binomial(p, n)
        if out is None:
            out = _pykernels.mul_binomial(p, n)
        return out

else:
    mul = _pykernels.mul
    div_binomial = _pykernels.div_binomial
    mul_binomial = _pykernels.mul_binomial
