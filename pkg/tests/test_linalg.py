from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weightlab import oracles
from weightlab.linalg import (
    QQ, IntLattice, LatticeError, Matrix, PrimeField, field_from_tag, hnf, inverse, kernel_basis,
    rank, rank_factorization, snf, solve,
)
from weightlab.linalg.kernels import rref_mod_p, rref_mod_p_python

small = st.integers(-3, 3)


def matrices(max_rows=3, max_cols=3):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows))


def M(rows, field=QQ):
    return Matrix(field, rows)


# --- fields ------------------------------------------------------------------

def test_field_tags():
    assert field_from_tag("q") is QQ
    assert field_from_tag("fp:7").p == 7
    assert isinstance(field_from_tag("fp"), PrimeField)
    with pytest.raises(ValueError):
        field_from_tag("zz")


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(9)


def test_prime_field_inverse():
    f = PrimeField(7)
    assert all(f.reduce(x * f.inv(x)) == 1 for x in range(1, 7))


# --- rank, kernel, solve -----------------------------------------------------

def test_rank_examples():
    assert rank(Matrix.identity(QQ, 2)) == 2
    assert rank(Matrix.zeros(QQ, 3, 4)) == 0
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 3)).ncols == 0
    assert kernel_basis(Matrix.zeros(QQ, 2, 2)).ncols == 2
    k = kernel_basis(M([[1, 1]]))
    assert k.ncols == 1
    v = k.column(0)
    assert v[0] == -v[1] != 0


def test_solve_examples():
    b = M([[1], [2]])
    assert solve(Matrix.identity(QQ, 2), b) == b
    assert solve(Matrix.zeros(QQ, 2, 2), b) is None
    assert solve(M([[2]]), M([[1]])).rows == ((Fraction(1, 2),),)


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(M([[1, 2], [2, 4]]))


@given(matrices(4, 4))
def test_rank_matches_minor_oracle(rows):
    assert rank(M(rows)) == oracles.rank(rows)


@given(matrices(4, 4))
def test_kernel_is_kernel_of_right_dimension(rows):
    m = M(rows)
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.ncols == m.ncols - rank(m)
    assert rank(k) == k.ncols


@given(matrices(4, 4), st.sampled_from([QQ, PrimeField(5), PrimeField(32003)]))
def test_rank_factorization(rows, field):
    m = M(rows, field)
    c, r = rank_factorization(m)
    assert c @ r == m
    assert rank(c) == c.ncols == r.nrows == rank(r)


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_consistency(rows, x):
    m = M(rows)
    xs = M([[v] for v in x[:m.ncols]])
    b = m @ xs
    sol = solve(m, b)
    assert sol is not None and m @ sol == b


@given(matrices(5, 6), st.sampled_from([2, 3, 7, 32003]))
def test_compiled_and_python_rref_agree(rows, p):
    n = len(rows[0])
    assert rref_mod_p(rows, n, p) == rref_mod_p_python(rows, n, p)


# --- integer normal forms -----------------------------------------------------

def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def diag_of(m):
    return [list(r) for r in snf(m)[1]]


def test_snf_examples():
    assert diag_of([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    assert diag_of([[2, 4], [6, 8]]) == [[2, 0], [0, 4]]
    assert diag_of([[0, 0], [0, 0]]) == [[0, 0], [0, 0]]


def test_snf_terminates_when_pivot_divides_entry():
    assert diag_of([[-3, -3], [0, -3]]) == [[3, 0], [0, 3]]


@given(matrices())
def test_snf_against_determinantal_divisors(rows):
    U, D, V = snf(rows)
    D = [list(r) for r in D]
    assert _matmul(_matmul(U, rows), V) == D
    assert abs(oracles.det(U)) == 1 and abs(oracles.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]
    assert diag == oracles.smith_diagonal(rows)
    assert all(a > 0 for a in diag)


@given(matrices())
def test_hnf_is_canonical_basis_of_row_lattice(rows):
    h = hnf(rows, len(rows[0]))
    if any(map(any, rows)):
        assert oracles.is_row_hnf(h)
        assert oracles.same_lattice(rows, h)
    else:
        assert h == []


@given(matrices())
def test_hnf_is_invariant_under_row_operations(rows):
    n = len(rows[0])
    moved = [list(r) for r in reversed(rows)]
    moved[0] = [x + 2 * y for x, y in zip(moved[0], moved[-1])] if len(moved) > 1 else [-x for x in moved[0]]
    assert hnf(rows, n) == hnf(moved, n)


# --- lattices ----------------------------------------------------------------

def L(*rows, n=2):
    return IntLattice.from_generators(list(rows), n)


def test_lattice_sum_examples():
    a = L((1, 2), (0, 5))
    assert a + a == a
    assert L((2, 0)) + L((0, 3)) == L((2, 0), (0, 3))
    assert (L((2, 0)) + L((0, 3))).basis == ((2, 0), (0, 3))
    assert a + IntLattice.zero(2) == a


def test_lattice_intersection_examples():
    a = L((1, 2), (0, 5))
    assert a & a == a
    assert L((2, 0), (0, 1)) & L((1, 0), (0, 3)) == L((2, 0), (0, 3))
    assert a & IntLattice.full(2) == a


def test_intersection_against_bruteforce_box():
    inter = L((2, 0), (0, 1)) & L((1, 0), (0, 3))
    for x in range(-12, 13):
        for y in range(-12, 13):
            assert inter.contains((x, y)) == (x % 2 == 0 and y % 3 == 0)


def test_lattice_membership_examples():
    assert L((2, 0), (0, 1)).contains((0, 0))
    assert not L((2, 0), (0, 1)).contains((1, 0))
    assert L((2, 0), (0, 3)).contains((4, 3))


def test_ambient_mismatch():
    with pytest.raises(LatticeError):
        L((1, 0)) + L((1, 0, 0), n=3)


@given(matrices(), matrices())
@settings(max_examples=60)
def test_lattice_operations_against_oracles(a, b):
    n = len(a[0])
    b = [(r + [0] * n)[:n] for r in b]
    A, B = IntLattice.from_generators(a, n), IntLattice.from_generators(b, n)
    S = A + B
    if S.basis:
        assert oracles.same_lattice(list(S.basis), a + b)
    assert oracles.check_intersection(a, b, (A & B).basis) == []
    assert (A & B) <= A and (A & B) <= B and A <= S and B <= S


def test_pure_python_fallback_is_selectable():
    import os
    import subprocess
    import sys
    code = "from weightlab.linalg import KERNEL_BACKEND; print(KERNEL_BACKEND)"
    env = dict(os.environ, WEIGHTLAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
