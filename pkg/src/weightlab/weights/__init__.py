"""Weight structures: membership oracles, decompositions and certificates."""

from .certificates import CertificateError, Extend, Generator, RetractTower, Shift, Zero, verify_tree
from .decomposition import Triangle, WeightDecomposition, stupid_decomposition
from .spec import (
    NotNegativeError, WeightStructureSpec, construct_from_negative, negativity_check, stalk_generators,
)
from .tower import retract_tower, strict_splitting

__all__ = [
    "CertificateError", "Extend", "Generator", "RetractTower", "Shift", "Zero", "verify_tree",
    "Triangle", "WeightDecomposition", "stupid_decomposition", "NotNegativeError", "WeightStructureSpec",
    "construct_from_negative", "negativity_check", "stalk_generators", "retract_tower", "strict_splitting",
]
