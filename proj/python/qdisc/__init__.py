"""Quantum disc toolkit: Python bindings for the qdisc C++ library."""

import json as _json

from ._qdisc import *  # noqa: F401,F403
from ._qdisc import verify as _verify

__all__ = [name for name in dir() if not name.startswith("_")]


def verify(suite="all", **kwargs):
    """Run verification suites and return the report as a dict."""
    return _json.loads(_verify(suite, **kwargs))
