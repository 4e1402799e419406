"""Kernel backend selection: compiled extension when available, numpy fallback.

Set BQGAMES_BACKEND=python or BQGAMES_BACKEND=compiled to force a choice; by
default the compiled core is used when it imports cleanly.
"""

from __future__ import annotations

import os

from . import _pykernels

_requested = os.environ.get("BQGAMES_BACKEND", "auto")
if _requested not in ("auto", "python", "compiled", ""):
    raise ImportError(
        f"BQGAMES_BACKEND must be 'auto', 'python' or 'compiled', got {_requested!r}"
    )

if _requested == "python":
    _impl = _pykernels
elif _requested == "compiled":
    from . import _ckernels as _impl  # hard failure if the extension is missing
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

payoff_grid = _impl.payoff_grid
mc_counts = _impl.mc_counts
mix_seed = _pykernels.mix_seed


def backend_name() -> str:
    """'compiled' when the extension kernels are active, else 'python'."""
    return "python" if _impl is _pykernels else "compiled"
