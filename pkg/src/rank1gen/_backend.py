"""Kernel backend selection.

The compiled extension (``rank1gen._core``) is preferred; the pure-Python
module (``rank1gen._pure``) is the always-available fallback and the
semantic reference.  Both expose the same kernel names and produce
bit-identical output for identical seeds.

Set ``RANK1GEN_BACKEND=pure`` or ``RANK1GEN_BACKEND=compiled`` to force a
choice at import time; forcing ``compiled`` raises if the extension is
missing instead of silently falling back.
"""

from __future__ import annotations

import os

from . import _pure

_FORCED = os.environ.get("RANK1GEN_BACKEND", "").strip().lower()

if _FORCED == "pure":
    _default = _pure
elif _FORCED == "compiled":
    from . import _core as _default
elif _FORCED in ("", "auto"):
    try:
        from . import _core as _default
    except ImportError:
        _default = _pure
else:
    raise RuntimeError(
        f"RANK1GEN_BACKEND={_FORCED!r} not recognized; "
        "use 'pure', 'compiled', or 'auto'"
    )


def get_backend() -> str:
    """Name of the backend serving kernel calls: 'compiled' or 'pure'."""
    return _default.BACKEND_NAME


def get_impl(name: str | None = None):
    """Kernel module by name; None selects the import-time default."""
    if name is None or name == "default":
        return _default
    if name == "pure":
        return _pure
    if name == "compiled":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")


def impl_for_size(n: int):
    """Backend able to handle n vertices.

    The compiled kernels pack a canonical pair into one 64-bit key, which
    needs n < 2**32; beyond that the pure backend's arbitrary-precision
    keys take over.
    """
    if n >= (1 << 32):
        return _pure
    return _default
