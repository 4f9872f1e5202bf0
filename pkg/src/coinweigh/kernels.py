"""Kernel backend selected at import.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module stands in.  Setting
``COINWEIGH_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("COINWEIGH_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

outcome_codes = _impl.outcome_codes
MaskTable = _impl.MaskTable
AnswerTable = _impl.AnswerTable

LIGHTER = _pykernels.LIGHTER
BALANCED = _pykernels.BALANCED
HEAVIER = _pykernels.HEAVIER
UNDETERMINED = _pykernels.UNDETERMINED
