import random
from fractions import Fraction

import pytest

from zetaforge.errors import (
    CharZeroAtomError,
    GradedDataUnavailableError,
    MixedBaseError,
)
from zetaforge.ffengine import (
    ell_adic_check,
    p_part_check,
    point_count,
    trace_formula_check,
    verify_C_finite_char,
)
from zetaforge.intlinalg import rational_valuation
from zetaforge.lfunctions import Q
from zetaforge.scheme_algebra import (
    Affine,
    Cellular,
    Curve,
    Disjoint,
    Glue,
    Minus,
    NumberRing,
    Point,
    Proj,
    weil_order_data,
    zeta_of,
)
from zetaforge.zetarep import evaluate_at

from oracles import count_points_y2_plus_y_eq_x3, gf4_table, series_exp


def nodal_cubic(q=2):
    pt = Point(q)
    return Glue(pt, Minus(Affine(1, pt), pt))


def test_verify_c_point():
    report = verify_C_finite_char(Point(3), -2)
    assert report.passed
    assert report.left == Fraction(1, 8) == report.right
    assert report.context["zeta"] == Fraction(-1, 8)


def test_verify_c_nodal_cubic():
    report = verify_C_finite_char(nodal_cubic(2), -1)
    assert report.passed and report.left == Fraction(1, 3)


def test_verify_c_p1():
    report = verify_C_finite_char(Proj(1, Point(2)), -1)
    assert report.passed and report.left == Fraction(1, 3)
    assert weil_order_data(Proj(1, Point(2)), -1).graded == {-1: 3, 1: 1}


def test_verify_c_rejects_number_rings():
    with pytest.raises(CharZeroAtomError):
        verify_C_finite_char(NumberRing(Q), -1)


def test_point_counts():
    assert point_count(Point(2, 2), 1) == 0
    assert point_count(Point(2, 2), 2) == 2
    assert point_count(Affine(1, Point(2)), 3) == 8
    assert point_count(Proj(2, Point(3)), 1) == 1 + 3 + 9


def test_point_count_curve_vs_enumeration():
    # y^2 + y = x^3 is supersingular over F_2 with L-polynomial 1 + 2t^2
    curve = Curve(2, (1, 0, 2))
    gf2 = ([0, 1], lambda a, b: (a + b) % 2, lambda a, b: (a * b) % 2)
    assert point_count(curve, 1) == count_points_y2_plus_y_eq_x3(*gf2) == 3
    elements, add, mul = gf4_table()
    assert point_count(curve, 2) == count_points_y2_plus_y_eq_x3(elements, add, mul) == 9


def test_point_count_mixed_base_rejected():
    with pytest.raises(MixedBaseError):
        point_count(Disjoint((Point(2), Point(4))), 1)


def test_nodal_cubic_counts_are_powers_of_q():
    for k in range(1, 6):
        assert point_count(nodal_cubic(2), k) == 2**k


def test_trace_formula_atoms():
    assert trace_formula_check(Point(2), 5).passed
    assert trace_formula_check(Point(3, 2), 6).passed
    assert trace_formula_check(Curve(2, (1, 0, 2)), 4).passed
    assert trace_formula_check(nodal_cubic(2), 6).passed
    assert trace_formula_check(Proj(2, Point(2)), 6).passed
    assert trace_formula_check(Minus(Proj(1, Point(3)), Point(3)), 6).passed


def test_trace_formula_against_independent_exp():
    e = Curve(2, (1, 2, 2))
    report = trace_formula_check(e, 8)
    assert report.passed
    counts = {k: point_count(e, k) for k in range(1, 9)}
    oracle = series_exp({k: Fraction(nk, k) for k, nk in counts.items()}, 8)
    assert report.left == oracle


def test_ell_adic_point():
    report = ell_adic_check(Point(3), -2, 2)
    assert report.passed and report.left == 8


def test_ell_adic_trivial_and_p1():
    assert ell_adic_check(Point(2), -1, 3).passed  # both sides 1
    report = ell_adic_check(Proj(1, Point(2)), -1, 3)
    assert report.passed and report.left == 3


def test_ell_adic_requires_graded_data():
    with pytest.raises(GradedDataUnavailableError):
        ell_adic_check(nodal_cubic(2), -1, 3)
    with pytest.raises(ValueError, match="characteristic"):
        ell_adic_check(Point(2), -1, 2)


def test_p_part():
    assert p_part_check(Point(2), -3).passed  # zeta = -1/7
    assert p_part_check(Curve(2, (1, 0, 2)), -1).passed  # value 3
    assert p_part_check(Affine(2, Point(3)), -1).passed  # zeta(point, -3) = -1/26
    assert p_part_check(nodal_cubic(2), -2).passed


def test_ell_reconstruction_from_parts():
    # prod over ell of the ell-parts (signed) recovers |zeta| when all prime
    # factors are below the bound
    e = Curve(2, (1, 0, 2))
    n = -2
    value = evaluate_at(zeta_of(e), n).exact
    recon = Fraction(1)
    for ell in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        recon *= Fraction(ell) ** rational_valuation(value, ell)
    assert recon == abs(value)


def test_battery_on_random_corpus():
    rng = random.Random(1234)
    atoms = [Point(2), Point(2, 2), Curve(2, (1, 0, 2)), Proj(1, Point(2)), nodal_cubic(2)]
    for _ in range(20):
        e = Disjoint(tuple(rng.sample(atoms, rng.randint(1, 3))))
        if rng.random() < 0.5:
            e = Glue(rng.choice(atoms), e)
        for n in (-1, -2, -3):
            assert verify_C_finite_char(e, n).passed
            assert p_part_check(e, n).passed
        assert trace_formula_check(e, 6).passed
