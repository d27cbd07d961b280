import pytest

from zetaforge.archimedean import (
    ELLIPTIC_CURVE_HODGE,
    EquivariantBetti,
    HodgeData,
    P1_HODGE,
    equivariant_dims,
    gamma_factor_order,
    hodge_equivariant_dims,
    secondary_euler_vo,
    vanishing_order_conjectural,
)
from zetaforge.errors import EulerOnlyDataError
from zetaforge.lfunctions import Q, QI, AbelianFieldSpec, dedekind_order
from zetaforge.scheme_algebra import (
    Affine,
    Curve,
    Disjoint,
    Glue,
    Minus,
    NumberRing,
    Point,
    Proj,
)


def test_finite_char_atoms_have_no_complex_points():
    for e in (Point(5), Curve(2, (1, 0, 2))):
        data = equivariant_dims(e, -1)
        assert data.dims_even == {} and data.dims_odd == {}
        assert vanishing_order_conjectural(e, -1) == 0
        assert vanishing_order_conjectural(e, -2) == 0


def test_number_ring_dims():
    data = equivariant_dims(NumberRing(QI), -1)
    assert data.dims_odd == {0: 1}  # r2 = 1 at odd n
    assert data.dims_even == {0: 1}  # r1 + r2 = 1 at even n
    q_data = equivariant_dims(NumberRing(Q), -1)
    assert q_data.dims_odd == {} and q_data.dims_even == {0: 1}


def test_affine_twist_shifts_dims():
    data = equivariant_dims(Affine(1, NumberRing(Q)), -1)
    # base is (Q, n = -2), even case r1 + r2 = 1, shifted into degree 2
    assert data.dims_odd == {2: 1}
    assert vanishing_order_conjectural(Affine(1, NumberRing(Q)), -1) == 1


def test_vanishing_orders():
    assert vanishing_order_conjectural(NumberRing(Q), -2) == 1
    assert vanishing_order_conjectural(Point(7, 2), -3) == 0
    assert vanishing_order_conjectural(Disjoint((NumberRing(QI), Point(2))), -3) == 1


def test_secondary_euler_route():
    assert secondary_euler_vo(NumberRing(Q), -2) == 1
    assert secondary_euler_vo(Point(2), -1) == 0
    assert secondary_euler_vo(NumberRing(QI), -1) == 1
    # agreement wherever full dims exist
    for e in (NumberRing(Q), NumberRing(QI), Proj(2, NumberRing(QI)), Affine(3, NumberRing(Q))):
        for n in (-1, -2, -3, -4):
            assert secondary_euler_vo(e, n) == vanishing_order_conjectural(e, n)


def test_glue_degrades_to_euler_only():
    e = Glue(NumberRing(Q), NumberRing(QI))
    data = equivariant_dims(e, -1)
    assert data.dims_even is None and data.dims_odd is None
    assert data.chi_odd == 0 + 1
    with pytest.raises(EulerOnlyDataError):
        secondary_euler_vo(e, -1)


def test_additivity_over_glue_and_minus():
    a, b = NumberRing(QI), NumberRing(Q)
    for n in (-1, -2):
        assert vanishing_order_conjectural(
            Glue(a, b), n
        ) == vanishing_order_conjectural(a, n) + vanishing_order_conjectural(b, n)
        assert vanishing_order_conjectural(
            Minus(Glue(a, b), a), n
        ) == vanishing_order_conjectural(b, n)


def test_affine_bundle_law():
    for e in (NumberRing(Q), NumberRing(QI), Disjoint((NumberRing(Q), Point(3)))):
        for r in (0, 1, 2):
            for n in (-1, -2):
                assert vanishing_order_conjectural(
                    Affine(r, e), n
                ) == vanishing_order_conjectural(e, n - r)


def test_matches_dedekind_orders():
    fields = [Q, QI, AbelianFieldSpec.from_generators(5, [4]), AbelianFieldSpec(5, (1,))]
    for F in fields:
        for n in range(-4, 0):
            assert vanishing_order_conjectural(NumberRing(F), n) == dedekind_order(F, n)


# ---------------------------------------------------------------------------
# Hodge route


def test_elliptic_curve_table():
    assert hodge_equivariant_dims(ELLIPTIC_CURVE_HODGE, -2) == {0: 1, 1: 1}  # (1,1,0)
    assert hodge_equivariant_dims(ELLIPTIC_CURVE_HODGE, -1) == {1: 1, 2: 1}  # (0,1,1)


def test_p1_dims():
    assert hodge_equivariant_dims(P1_HODGE, -2) == {0: 1}  # n even: (1,0,0)
    assert hodge_equivariant_dims(P1_HODGE, -1) == {2: 1}  # n odd: (0,0,1)


def test_gamma_factor_orders():
    assert gamma_factor_order(ELLIPTIC_CURVE_HODGE, -1) == 0
    assert gamma_factor_order(ELLIPTIC_CURVE_HODGE, -2) == 0
    assert gamma_factor_order(P1_HODGE, -1) == 1  # ord_{s=-1} zeta(s) zeta(s-1)
    assert gamma_factor_order(P1_HODGE, -2) == 1


def test_gamma_census_equals_hodge_chi():
    k3_like = HodgeData.make(
        {(0, 0): 1, (2, 0): 1, (0, 2): 1, (1, 1): 20, (2, 2): 1},
        {0: (1, 0), 1: (11, 9), 2: (1, 0)},
    )
    for H in (P1_HODGE, ELLIPTIC_CURVE_HODGE, k3_like):
        for n in (-1, -2, -3, -4):
            dims = hodge_equivariant_dims(H, n)
            chi = sum((-1) ** (i % 2) * d for i, d in dims.items())
            assert gamma_factor_order(H, n) == chi


def test_hodge_validation():
    with pytest.raises(ValueError, match="symmetry"):
        HodgeData.make({(0, 1): 1}, {})
    with pytest.raises(ValueError, match="h\\{?p,p\\}?|equal"):
        HodgeData.make({(0, 0): 2}, {0: (1, 0)})


def test_equivariant_betti_invariants():
    with pytest.raises(ValueError):
        EquivariantBetti({0: 1}, {}, 2, 0)  # chi mismatch
    with pytest.raises(ValueError):
        EquivariantBetti({0: -1}, {}, -1, 0)
