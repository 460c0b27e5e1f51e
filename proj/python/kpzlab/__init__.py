"""Point-interacting Brownian motions: simulation, duality, Bethe ansatz and
Fredholm determinants (bindings to the C++ library)."""

from ._kpz import *  # noqa: F401,F403
from ._kpz import KpzError, ModelParams

__all__ = [name for name in dir() if not name.startswith("_")]
