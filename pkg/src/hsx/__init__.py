"""Exact Schubert calculus on rational homogeneous spaces G/P."""

__version__ = "0.1.0"

from .coset import Space, build_space, get_space, space_from_descriptor  # noqa: E402
from .cohomology import CohClass, eff, gram_matrix  # noqa: E402
from .rootsys import RootSystem, build_root_system  # noqa: E402

__all__ = [
    "__version__", "Space", "build_space", "get_space", "space_from_descriptor",
    "CohClass", "eff", "gram_matrix", "RootSystem", "build_root_system",
]
