"""Edge-cone reference metrics, curvature expansions and the regularized
Monge-Ampere solver."""

try:
    from ._core import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout used by the smoke tests
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
