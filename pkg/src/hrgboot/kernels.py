"""Kernel backend selection.

The compiled extension (``hrgboot._speedups``) and the numpy fallback
(``hrgboot._pykernels``) implement the same five kernels with the same
contracts.  The compiled one wins when importable; set
``HRGBOOT_PURE_PYTHON=1`` to force the fallback (used by the equivalence
tests and the benchmark).
"""

import os

_FORCE_PURE = os.environ.get("HRGBOOT_PURE_PYTHON", "").strip().lower() not in (
    "", "0", "false", "no")

if _FORCE_PURE:
    from . import _pykernels as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND_NAME

adjacency_bruteforce = _impl.adjacency_bruteforce
adjacency_windowed = _impl.adjacency_windowed
bootstrap_spread = _impl.bootstrap_spread
peel_to_core = _impl.peel_to_core
local_clustering = _impl.local_clustering
