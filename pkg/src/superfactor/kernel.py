"""Orbit-kernel backend selection.

The compiled extension is used when it was built; otherwise (or when
``SUPERFACTOR_PURE_PYTHON=1``) the pure-Python reference is used.  Both expose
``flow`` and ``gauss_step`` with identical signatures and semantics.
"""

import os

from . import _flow_py

if os.environ.get("SUPERFACTOR_PURE_PYTHON") == "1":
    _impl = _flow_py
    BACKEND = "python"
else:
    try:
        from . import _flow as _impl
    except ImportError:
        _impl = _flow_py
        BACKEND = "python"
    else:
        BACKEND = "cython"

flow = _impl.flow
gauss_step = _impl.gauss_step
OK, SINGULAR, NOCONV = _flow_py.OK, _flow_py.SINGULAR, _flow_py.NOCONV

__all__ = ["BACKEND", "flow", "gauss_step", "OK", "SINGULAR", "NOCONV", "_flow_py"]
