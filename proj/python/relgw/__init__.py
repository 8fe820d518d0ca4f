"""Exact-rational engine for relative-invariant recursions."""
try:
    from ._relgw import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _relgw import *  # noqa: F401,F403  (in-tree build layout)
