"""Exact verification engine for multipullback quantum CP^n K-theory."""

from mpkcheck.version import __version__

__all__ = ["__version__"]
