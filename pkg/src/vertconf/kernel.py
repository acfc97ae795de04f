"""Select the enumeration kernel at import time.

The compiled kernel is used when it was built; otherwise, or when the
environment variable ``VERTCONF_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the pure-Python kernel is used.  Both expose ``histogram``
with identical results.
"""
import os

from . import _pykernel

AGGREGATE = _pykernel.AGGREGATE
FILTERED = _pykernel.FILTERED
BY_COMPONENT = _pykernel.BY_COMPONENT

_force_python = os.environ.get("VERTCONF_PURE_PYTHON", "") not in ("", "0")

_ckernel = None
if not _force_python:
    try:
        from . import _ckernel
    except ImportError:
        _ckernel = None

backend = _ckernel if _ckernel is not None else _pykernel
IMPLEMENTATION = backend.IMPLEMENTATION


def histogram(sizes, p, q, mode=AGGREGATE, target=0, prefix=()):
    if mode == BY_COMPONENT and backend is not _pykernel:
        try:
            return backend.histogram(sizes, p, q, mode, target, prefix)
        except MemoryError:
            return _pykernel.histogram(sizes, p, q, mode, target, prefix)
    return backend.histogram(sizes, p, q, mode, target, prefix)


iter_block_lists = _pykernel.iter_block_lists
