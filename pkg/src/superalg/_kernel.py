"""Kernel selection: compiled extension when available, pure Python otherwise.

Set SUPERALG_PURE_PYTHON=1 in the environment to force the fallback (used by
the benchmark and the fallback tests).
"""

from __future__ import annotations

import os

if os.environ.get("SUPERALG_PURE_PYTHON"):
    from superalg import _kernel_py as _impl
else:
    try:
        from superalg import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from superalg import _kernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
odd_merge = _impl.odd_merge
exp_add = _impl.exp_add
exp_sub = _impl.exp_sub
exp_divides = _impl.exp_divides
exp_lcm = _impl.exp_lcm
mul_terms = _impl.mul_terms
scale_terms = _impl.scale_terms
