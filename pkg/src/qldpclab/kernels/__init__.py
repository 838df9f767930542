"""Hot decoding kernels: compiled extension with a pure-numpy fallback.

The compiled backend is preferred when present; set QLDPCLAB_KERNELS=py or
=cy to force one (the benchmark script compares both).
"""

import os


def get_backend(name: str):
    """Return the kernel module for an explicit backend name."""
    if name == "py":
        from . import _core_py

        return _core_py
    if name == "cy":
        from . import _core

        return _core
    raise ValueError(f"unknown kernel backend {name!r}")


_requested = os.environ.get("QLDPCLAB_KERNELS", "auto")
if _requested == "auto":
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        from . import _core_py as _impl
else:
    _impl = get_backend(_requested)

BACKEND = _impl.BACKEND
wht_rows = _impl.wht_rows
check_pass = _impl.check_pass
var_pass = _impl.var_pass
decide = _impl.decide
syndrome_count = _impl.syndrome_count
