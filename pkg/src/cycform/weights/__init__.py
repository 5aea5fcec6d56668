"""Numerical graph-weight integration over disk configurations.

The hot per-sample loop exists twice: a compiled Cython kernel
(``_kernel``) and a pure-Python fallback (``_fallback``) with identical
arithmetic.  The compiled kernel is preferred when importable; set
CYCFORM_BACKEND=python to force the fallback (used by the benchmark and
the backend-equality test).
"""

import os

if os.environ.get("CYCFORM_BACKEND", "").lower() == "python":
    from . import _fallback as kernel

    BACKEND = "python"
else:
    try:
        from . import _kernel as kernel  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _fallback as kernel  # type: ignore[no-redef]

        BACKEND = "python"

from .integrate import (  # noqa: E402
    Configuration,
    IntegrationSpec,
    WeightEstimate,
    compute_weight,
    exact_pure_central_weight,
    integrand,
)
from .cache import WeightCache, weight_cache_get_or_compute  # noqa: E402

__all__ = [
    "BACKEND",
    "kernel",
    "Configuration",
    "IntegrationSpec",
    "WeightEstimate",
    "compute_weight",
    "exact_pure_central_weight",
    "integrand",
    "WeightCache",
    "weight_cache_get_or_compute",
]
