"""Exact linear algebra: fields, matrices, integer normal forms, lattices."""

from .fields import QQ, DEFAULT_PRIME, PrimeField, Rationals, field_from_tag
from .lattice import (
    IntLattice, LatticeError, hnf, hnf_with_transform, int_det, is_hnf,
    lattice_contains, lattice_intersect, lattice_sum, snf,
)
from .matrix import (
    DimensionError, Matrix, block, inverse, kernel_basis, rank,
    rank_factorization, rref, solve,
)
from .kernels import BACKEND as KERNEL_BACKEND
