"""Kernel dispatch.

The compiled extension is used when it imported cleanly; the pure-python
reference in ``_pykernels`` is the fallback and is forced by setting
BETAHOLE_PURE in the environment before import.
"""

import os

from . import _pykernels as _pure

if os.environ.get("BETAHOLE_PURE"):
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = "pure" if _impl is _pure else "compiled"

seq_letter = _impl.seq_letter
seq_prefix = _impl.seq_prefix
periodization_vs = _impl.periodization_vs
survivor_count = _impl.survivor_count
survivor_example = _impl.survivor_example
admissible_necklaces = _impl.admissible_necklaces
avoiding_necklace = _impl.avoiding_necklace
avoiding_necklaces = _impl.avoiding_necklaces
