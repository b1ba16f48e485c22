from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weightlab import k0
from weightlab.k0 import InvariantAssignment, ScaledLattice, criterion_check, invariant_image
from weightlab.linalg import LatticeError
from weightlab.slopes import SlopeObject

h = Fraction(1, 2)


def lat(*vs):
    return ScaledLattice.from_vectors(vs)


def test_scaled_lattice_basics():
    a = lat((h, h), (0, 1))
    assert a.contains((h, h)) and a.contains((1, 0)) and not a.contains((h, 0))
    assert a == lat((1, 0), (h, h))
    assert a.reduced().denominator == 2
    assert lat((2, 0)).reduced().denominator == 1
    assert ScaledLattice.zero(2) <= a


def test_mixed_denominators():
    a, b = lat((Fraction(1, 3), 0)), lat((h, 0))
    assert (a + b) == lat((Fraction(1, 6), 0))
    assert (a & b) == lat((1, 0))


def test_ambient_mismatch():
    with pytest.raises(LatticeError):
        lat((1, 0)) + lat((1, 0, 0))


def test_invariant_image_examples():
    assert invariant_image([], InvariantAssignment.slope_pair()) == ScaledLattice.zero(2)
    C = [SlopeObject.with_slopes(1, 0), SlopeObject.with_slopes(0, 1), SlopeObject.finite({0: 3})]
    assert invariant_image(C, InvariantAssignment.slope_pair()) == lat((1, 0), (0, 1))


def test_cprime_image_is_half_lattice_with_integer_difference():
    G, _, _, _ = k0.scenario_lattices("cprime", 2)
    for a2 in range(-4, 5):
        for b2 in range(-4, 5):
            v = (Fraction(a2, 2), Fraction(b2, 2))
            assert G.contains(v) == ((v[1] - v[0]).denominator == 1)


def test_criterion_trivial_case():
    G = lat((1, 0), (0, 1))
    assert criterion_check(G, G, G).satisfied


@pytest.mark.parametrize("P", [2, 3, 4])
def test_criterion_with_axis_lattices(P):
    # K- = (1/P)Z x 0 and K+ = 0 x (1/P)Z give the same verdicts as the full lattices
    p = Fraction(1, P)
    Km, Kp = ScaledLattice.from_vectors([(p, 0)]), ScaledLattice.from_vectors([(0, p)])
    assert criterion_check(lat((1, 0), (0, 1)), Km, Kp).satisfied
    v = criterion_check(lat((1, 0), (0, 1), (h, h)), Km, Kp)
    assert not v.satisfied and v.counterexample == (h, h)


def test_cprime_intersections():
    v = criterion_check(*k0.scenario_lattices("cprime", 2)[:3])
    assert not v.satisfied
    # G & K- : b in Z and b - a in Z force a in Z
    assert v.low == lat((1, 0), (0, 1)) and v.high == lat((1, 0), (0, 1))
    assert v.total == lat((1, 0), (0, 1))
    axis = criterion_check(v.G, ScaledLattice.from_vectors([(h, 0)]), ScaledLattice.from_vectors([(0, h)]))
    assert axis.low == lat((1, 0)) and axis.high == lat((0, 1))
    assert v.counterexample == (h, h)


def test_scenario_reports():
    assert k0.necessary_condition_report("c", 2)["verdict"] == "no obstruction"
    r = k0.necessary_condition_report("cprime", 2)
    assert r["verdict"] == "no extension exists" and r["criterion"]["counterexample"] == ["1/2", "1/2"]
    d = k0.necessary_condition_report("d", 2)
    assert d["verdict"] == "no obstruction" and "pad_to_C" in d["cross_reference"]
    with pytest.raises(ValueError):
        k0.scenario_lattices("x")


@given(st.integers(2, 6))
@settings(max_examples=10)
def test_cprime_fails_for_every_period(P):
    v = criterion_check(*k0.scenario_lattices("cprime", P)[:3])
    assert not v.satisfied
    assert (v.counterexample[1] - v.counterexample[0]).denominator == 1


def test_counterexample_is_outside_the_sum():
    v = criterion_check(*k0.scenario_lattices("cprime", 2)[:3])
    assert v.G.contains(v.counterexample) and not v.total.contains(v.counterexample)


def test_euler_class(a3):
    from weightlab.serialize import complex_from_json
    e = InvariantAssignment.euler_class(a3)
    M = complex_from_json({"terms": {"0": ["1", "2"], "1": ["2"]}}, a3)
    assert e(M) == (1, 0, 0)
