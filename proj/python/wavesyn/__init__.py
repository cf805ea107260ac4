"""Sparse wavelet representations under lp norms.

Thin wrapper over the compiled `_wavesyn` extension.
"""

try:
    from ._wavesyn import *  # noqa: F401,F403
    from ._wavesyn import INF  # noqa: F401
except ImportError:  # extension built out-of-tree (plain CMake build)
    from _wavesyn import *  # noqa: F401,F403
    from _wavesyn import INF  # noqa: F401

__all__ = [
    "INF",
    "Representation",
    "transform",
    "inverse",
    "lp_error",
    "greedy",
    "universal",
    "fptas",
    "hybrid",
    "rest_optimal",
    "oracle",
    "best_basis",
    "gen_saw",
    "greedy2d",
]
