"""Executable weight structures on bounded homotopy categories of additive categories."""

from .base import BaseCategory, BaseMorphism, BaseObject, Path, Quiver
from .complexes import Complex, GradedMap, cone, shift, twist

__version__ = "0.1.0"

__all__ = [
    "BaseCategory", "BaseMorphism", "BaseObject", "Path", "Quiver",
    "Complex", "GradedMap", "cone", "shift", "twist", "__version__",
]
