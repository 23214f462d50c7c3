"""Kernel selection: the compiled extension when it imports, else pure Python.

Set ``PCNIL_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fallback

if os.environ.get("PCNIL_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _fallback

BACKEND = "python" if _impl is _fallback else "cython"
normalize = _impl.normalize
series_mul = _impl.series_mul
expand_word = _impl.expand_word
