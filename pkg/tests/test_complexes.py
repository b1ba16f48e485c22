import random

import pytest
from hypothesis import given, settings, strategies as st

from weightlab.complexes import (
    Complex, ComplexError, GradedMap, compose_graded, cone, direct_sum, hom_differential, shift,
)
from weightlab.homotopy import (
    dualize, hom_dimension, hom_space, indecomposable_summands, is_contractible, is_homotopy_equiv,
    is_homotopy_equivalent_objects, is_minimal, is_nullhomotopic, is_retract_tri, minimal_model,
    summand_decompose,
)
from weightlab.sampling import make_rng, random_chain_map, random_complex, scramble_complex
from weightlab.serialize import complex_from_json, complex_to_json

seeds = st.integers(0, 2**32)


def vx(cat, terms, diff=None):
    return complex_from_json({"terms": {str(k): v for k, v in terms.items()},
                              "diff": {str(k): v for k, v in (diff or {}).items()}}, cat)


def dims(m):
    return {i: n for i, n in m.dims().items() if n}


def test_d_squared_is_checked(vect):
    with pytest.raises(Exception):
        vx(vect, {0: 1, 1: 1, 2: 1}, {0: [[1]], 1: [[1]]})


def test_shift_examples(vect):
    M = vx(vect, {0: 1})
    assert shift(M, 0) == M
    assert shift(Complex.zero(vect), 5).is_zero()
    assert shift(M, 1).bounds() == (-1, -1)
    N = vx(vect, {0: 1, 1: 1}, {0: [[2]]})
    assert shift(shift(N, 1), -1) == N
    assert shift(N, 1).diff(-1) == -N.diff(0)


def test_cone_of_identity_is_contractible(any_cat):
    rng = make_rng(1)
    M = random_complex(rng, any_cat)
    assert is_contractible(cone(GradedMap.identity(M)).cone)


def test_cone_of_zero_map_splits(vect):
    M, N = vx(vect, {0: 2}), vx(vect, {0: 1, 1: 1}, {0: [[1]]})
    c = cone(GradedMap.zero(M, N)).cone
    assert c == direct_sum(N, shift(M, 1))


@pytest.mark.parametrize("a,b,r", [(3, 2, 1), (2, 2, 2), (1, 3, 0), (4, 4, 3)])
def test_cone_of_rank_r_map_has_kernel_cokernel_model(vect, a, b, r):
    A, B = vx(vect, {0: a}), vx(vect, {0: b})
    mat = [[int(i == j and i < r) for j in range(a)] for i in range(b)]
    f = GradedMap(A, B, 0, {0: vx(vect, {0: a, 1: b}, {0: mat}).diff(0)})
    mm = minimal_model(cone(f).cone).model
    # Cone(f) = B + A[1]: the cokernel stays in degree 0, the kernel sits in degree -1
    assert dims(mm) == {k: v for k, v in {-1: a - r, 0: b - r}.items() if v}


def test_minimal_model_examples(vect):
    M = vx(vect, {0: 1, 1: 1})
    assert minimal_model(M).model == M
    assert minimal_model(vx(vect, {0: 1, 1: 1}, {0: [[1]]})).model.is_zero()
    mm = minimal_model(vx(vect, {0: 2, 1: 2}, {0: [[1, 2], [2, 4]]})).model
    assert dims(mm) == {0: 1, 1: 1} and not mm.diffs


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_minimal_model_comparisons(seed):
    from weightlab.base import BaseCategory, Quiver
    from weightlab.linalg import PrimeField
    rng = random.Random(seed)
    cat = BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())
    M = random_complex(rng, cat)
    mm = minimal_model(M)
    assert is_minimal(mm.model)
    ident = GradedMap.identity
    assert compose_graded(mm.to_model, mm.from_model) == ident(mm.model)
    assert compose_graded(mm.from_model, mm.to_model) - ident(M) == hom_differential(mm.homotopy)
    assert is_homotopy_equiv(mm.to_model) and is_homotopy_equiv(mm.from_model)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_minimal_model_invariant_under_scrambling(seed):
    from weightlab.base import BaseCategory, Quiver
    from weightlab.linalg import PrimeField
    rng = random.Random(seed)
    cat = BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())
    M = random_complex(rng, cat, scramble=False)
    S = scramble_complex(rng, M)
    a, b = minimal_model(M).model, minimal_model(S).model
    assert a.mult_profile() == b.mult_profile()
    assert is_homotopy_equivalent_objects(M, S)


def test_hom_space_examples(vect):
    k0, k1 = vx(vect, {0: 1}), vx(vect, {1: 1})
    assert hom_dimension(k0, k1) == 0
    assert hom_dimension(k0, k0) == 1
    assert hom_dimension(k0, k1, 1) == 1
    res = hom_space(k0, k0)
    assert is_homotopy_equiv(res.basis[0])


def test_hom_is_homotopy_invariant(a3):
    rng = make_rng(5)
    for _ in range(10):
        A, B = random_complex(rng, a3), random_complex(rng, a3)
        assert hom_dimension(A, B) == hom_dimension(A, B, minimize=False)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_random_chain_maps_are_chain_maps(seed):
    from weightlab.base import BaseCategory, Quiver
    from weightlab.linalg import PrimeField
    rng = random.Random(seed)
    cat = BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())
    A, B = random_complex(rng, cat), random_complex(rng, cat)
    f = random_chain_map(rng, A, B)
    assert hom_differential(f).is_zero()
    c = cone(f)
    assert c.cone.first_d2_failure() is None


def test_homotopy_equivalence_examples(vect):
    M = vx(vect, {0: 1, 1: 2})
    assert is_homotopy_equiv(GradedMap.identity(M))
    assert not is_homotopy_equiv(GradedMap.zero(M, M))
    f = GradedMap.identity(M)
    assert is_nullhomotopic(f - f)


def test_summands_examples(vect, a3):
    M = vx(vect, {0: 2, 1: 1})
    assert len(indecomposable_summands(M)) == 3
    X = complex_from_json({"terms": {"0": ["2"], "1": ["1"]}, "diff": {"0": [{"row": 0, "col": 0, "arrows": [0]}]}}, a3)
    assert len(indecomposable_summands(X)) == 1
    classes = summand_decompose(direct_sum(X, X))
    assert len(classes) == 1 and classes[0][1] == 2


def test_retract_examples(a3):
    X = complex_from_json({"terms": {"0": ["2"], "1": ["1"]}, "diff": {"0": [{"row": 0, "col": 0, "arrows": [0]}]}}, a3)
    Y = complex_from_json({"terms": {"0": ["3"]}}, a3)
    assert is_retract_tri(X, direct_sum(X, Y))
    assert is_retract_tri(Complex.zero(a3), X)
    assert not is_retract_tri(shift(Y, 1), Y)


def test_dualize_examples(vect):
    assert dualize(Complex.zero(vect)).is_zero()
    assert dualize(vx(vect, {3: 1})).bounds() == (-3, -3)
    assert dims(dualize(vx(vect, {0: 2, 1: 5}))) == {-1: 5, 0: 2}


def test_dualize_requires_vect(a3):
    with pytest.raises(ComplexError):
        dualize(complex_from_json({"terms": {"0": ["1"]}}, a3))


def test_json_roundtrip(any_cat):
    rng = make_rng(3)
    for _ in range(10):
        M = random_complex(rng, any_cat)
        assert complex_from_json(complex_to_json(M), any_cat) == M
