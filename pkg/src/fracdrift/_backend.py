"""Select the compiled inner loops when available, numpy fallbacks otherwise.

FRACDRIFT_FORCE_FALLBACK=1 forces the numpy path (used by the parity tests
and the benchmark).
"""

from __future__ import annotations

import os

from . import _fallback

_forced = os.getenv("FRACDRIFT_FORCE_FALLBACK", "0") == "1"

if not _forced:
    try:
        from . import _native  # type: ignore[attr-defined]
    except ImportError:
        _native = None
else:
    _native = None

HAVE_NATIVE = _native is not None
BACKEND = "native" if HAVE_NATIVE else "fallback"

if HAVE_NATIVE:
    march_nodes = _native.march_nodes
    uniform_steps = _native.uniform_steps
    coupled_march = _native.coupled_march
else:
    march_nodes = _fallback.march_nodes
    uniform_steps = _fallback.uniform_steps
    coupled_march = _fallback.coupled_march
