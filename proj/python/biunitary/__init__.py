"""Biunitary (complex Hadamard) matrices as commuting-square data."""

try:
    from ._biunitary import *  # noqa: F401,F403
except ImportError:  # in-tree build: extension lives next to the build outputs
    from _biunitary import *  # type: ignore  # noqa: F401,F403
