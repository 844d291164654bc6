import cmath
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from k3stab.boundary import blue_point, vertex_P, vertex_Q
from k3stab.chart import ChartPoint, StabilityPoint
from k3stab.errors import AmbiguousWindow, DomainError, TriangleViolation
from k3stab.mass import (
    CellId,
    CellKind,
    InvertCell,
    MassFunction,
    Tail,
    TriangleStatus,
    canonical_cell,
    classify_mass_point,
    geometric_sum,
    invert_cell,
    invert_residual,
    locate,
    mass_abc,
    mass_from_factors,
    mass_vector,
    triangle_check,
)

SQ2 = math.sqrt(2)
moduli = st.floats(0.1, 10.0)
angles = st.floats(0.02, math.pi - 0.02)
lower = st.builds(lambda r, t: ChartPoint(cmath.rect(r, -t)), moduli, angles)
upper = st.builds(lambda r, t: ChartPoint(cmath.rect(r, t)), moduli, angles)
wall = st.builds(lambda r: ChartPoint(complex(-r, 0.0)), moduli)
qs = st.sampled_from([1.0, 0.5, 2.7])


def test_mass_abc_examples():
    assert mass_abc(-1j) == pytest.approx((1, SQ2, 1), rel=1e-15)
    assert mass_abc(-2) == (1, 3, 2)
    assert mass_abc(-1j, 2.0) == pytest.approx((2, SQ2 * 2**1.25, SQ2), rel=1e-14)


def test_triangle_examples():
    assert triangle_check(1, SQ2, 1) is TriangleStatus.STRICT_INTERIOR
    assert triangle_check(1, 3, 2) is TriangleStatus.ON_WALL
    assert triangle_check(1, 5, 1) is TriangleStatus.VIOLATED


def test_mass_vector_examples():
    f = mass_vector(-1j)
    assert f[3] == pytest.approx(2 + SQ2, rel=1e-15)
    assert f[0] == 1
    assert mass_vector(-1j, 2.0)[2] == pytest.approx(SQ2 * 2**1.25 + SQ2, rel=1e-14)
    assert mass_vector(-1j, 1.0, (-2, 3)).values == pytest.approx((3, 2, 1, SQ2, 1 + SQ2, 2 + SQ2), rel=1e-15)
    assert mass_vector(-2, 1.0, (-1, 1)).values == (3, 1, 3)


def test_mass_from_factors_examples():
    assert mass_from_factors(-1j, -2) == pytest.approx(3, rel=1e-15)
    assert mass_from_factors(-1j, 1) == pytest.approx(SQ2, rel=1e-15)
    assert mass_from_factors(-2, 2) == 5


def test_tails_give_values_outside_window():
    f = mass_vector(-1j, 1.0, (-2, 3))
    g = mass_vector(-1j, 1.0, (-40, 40))
    for k in range(-40, 41):
        assert f.value_at(k) == pytest.approx(g[k], rel=1e-14)


@settings(max_examples=200)
@given(lower, qs)
def test_formula_matches_factor_sum(p, q):
    f = mass_vector(p, q, (-32, 32))
    for n in range(-32, 33):
        assert f[n] == pytest.approx(mass_from_factors(p, n, q), rel=1e-12)


@given(wall, qs)
def test_formula_matches_factor_sum_on_wall(p, q):
    f = mass_vector(p, q, (-32, 32))
    for n in range(-32, 33):
        assert f[n] == pytest.approx(mass_from_factors(p, n, q), rel=1e-12)


@given(upper, qs)
def test_upper_charts_match_factor_sum(p, q):
    f = mass_vector(p, q, (-20, 20))
    for n in range(-20, 21):
        assert f[n] == pytest.approx(mass_from_factors(p, n, q), rel=1e-12)


@given(st.integers(-10, 10), st.one_of(lower, wall, upper), qs)
def test_twist_equivariance(t, p, q):
    here = mass_vector(StabilityPoint(t, p), q)
    there = mass_vector(StabilityPoint(t + 1, p), q)
    assert here.shifted(1).values == there.values


@given(lower)
def test_q_to_one_limit(p):
    f = mass_vector(p, 1.0)
    for q in (1 - 1e-6, 1 + 1e-6):
        g = mass_vector(p, q)
        for x, y in zip(f.values, g.values):
            assert y == pytest.approx(x, rel=1e-4)


@given(lower, st.floats(0.2, 5.0))
def test_strict_triangle_off_wall(p, q):
    assert triangle_check(*mass_abc(p, q), q) is TriangleStatus.STRICT_INTERIOR


@given(wall, st.floats(0.2, 5.0))
def test_wall_equality(p, q):
    a, b, c = mass_abc(p, q)
    assert abs(b - (a + q * c)) <= 1e-12 * b


def test_invert_examples():
    assert abs(invert_cell(1, SQ2, 1, "delta0").z - (-1j)) <= 1e-12
    assert abs(invert_cell(SQ2, 1, 1, "delta-1").z - 1j) <= 1e-12
    assert invert_cell(1, 3, 2, "i0").z == -2
    with pytest.raises(TriangleViolation):
        invert_cell(1, 5, 1, "delta0")
    with pytest.raises(TriangleViolation):
        invert_cell(1, SQ2, 1, "i0")


@settings(max_examples=500)
@given(lower)
def test_round_trip_lower(p):
    assert abs(invert_cell(*mass_abc(p), InvertCell.DELTA0).z - p.z) <= 1e-9


@settings(max_examples=500)
@given(upper)
def test_round_trip_upper(p):
    assert abs(invert_cell(*mass_abc(p), InvertCell.DELTA_MINUS1).z - p.z) <= 1e-9


@settings(max_examples=100)
@given(lower, st.sampled_from([0.5, 2.0, 5.0]))
def test_round_trip_q(p, q):
    back = invert_cell(*mass_abc(p, q), InvertCell.DELTA0, q)
    assert abs(back.z - p.z) <= 1e-7
    assert invert_residual(*mass_abc(p, q), back, q) <= 1e-9


@given(upper, st.sampled_from([0.5, 2.0]))
def test_round_trip_q_upper(p, q):
    assert abs(invert_cell(*mass_abc(p, q), InvertCell.DELTA_MINUS1, q).z - p.z) <= 1e-7


@given(wall, qs)
def test_round_trip_wall(p, q):
    assert abs(invert_cell(*mass_abc(p, q), InvertCell.I0, q).z - p.z) <= 1e-12 * abs(p.z)


def test_classification_examples():
    assert classify_mass_point(mass_vector(-1j)) == CellId(CellKind.DELTA, 0)
    assert classify_mass_point(vertex_Q()) == CellId(CellKind.RED_POINT)
    assert classify_mass_point(vertex_P(2)) == CellId(CellKind.VERTEX_P, 2)
    assert classify_mass_point(blue_point(2.0)) == CellId(CellKind.BLUE_QHOM)
    assert str(CellId(CellKind.DELTA, -3)) == "Delta(-3)"


@settings(max_examples=300)
@given(st.integers(-12, 12), st.one_of(lower, wall, upper), qs)
def test_classification_matches_canonical_cell(t, p, q):
    point = StabilityPoint(t, p)
    assert classify_mass_point(mass_vector(point, q)) == canonical_cell(point)


@settings(max_examples=200)
@given(st.integers(-12, 12), st.one_of(lower, wall), qs)
def test_locate_inverts_mass_map(t, p, q):
    back = locate(mass_vector(StabilityPoint(t, p), q))
    assert back.twist == t
    assert abs(back.chart.z - p.z) <= 1e-7 * max(1.0, abs(p.z))


def test_edge_between_vertices():
    f = 0.3 * vertex_P(0) + 0.7 * vertex_P(1)
    assert classify_mass_point(f) == CellId(CellKind.EDGE_PP, 0)


def test_windowed_data_without_tails():
    f = MassFunction(1.0, (-2, 3), mass_vector(-1j, 1.0, (-2, 3)).values)
    assert classify_mass_point(f) == CellId(CellKind.DELTA, 0)
    with pytest.raises(AmbiguousWindow):
        classify_mass_point(MassFunction(1.0, (0, 3), mass_vector(-1j, 1.0, (0, 3)).values))
    with pytest.raises(AmbiguousWindow):
        classify_mass_point(MassFunction(1.0, (5, 9), mass_vector(-1j, 1.0, (5, 9)).values))


def test_negative_values_are_outside():
    f = MassFunction(1.0, (-2, 2), (1.0, -1.0, 1.0, 2.0, 3.0))
    assert classify_mass_point(f).kind is CellKind.OUTSIDE


@given(st.one_of(lower, wall), qs)
def test_json_round_trip(p, q):
    f = mass_vector(StabilityPoint(3, p), q, (-5, 7))
    g = MassFunction.from_json(json.loads(json.dumps(f.to_json())))
    assert g == f


def test_json_schema_fields():
    d = mass_vector(-1j, 2.0, (-1, 1)).to_json()
    assert set(d) == {"q", "window", "values", "tail"}
    assert set(d["tail"]) == {"left", "right"}
    assert d["tail"]["left"]["kind"] == "geometric"
    assert mass_vector(-1j).to_json()["tail"]["right"]["kind"] == "affine"


def test_projective_equality():
    f = mass_vector(-1j)
    assert f.proportional_to(3.5 * f)
    assert not f.proportional_to(mass_vector(-2j))


def test_geometric_sum():
    assert geometric_sum(1.0, 5) == 5
    assert geometric_sum(2.0, 4) == 15
    assert geometric_sum(0.5, 3) == pytest.approx(1.75, rel=1e-15)
    assert geometric_sum(3.0, 0) == 0


def test_tail_step_out():
    t = Tail(0, 1.0, 2.0, 3.0)
    for j in range(6):
        assert t.step_out(2).at_distance(j) == pytest.approx(t.at_distance(j + 2), rel=1e-15)


def test_domain_errors():
    with pytest.raises(DomainError):
        mass_vector(2.0)
    with pytest.raises(DomainError):
        mass_vector(-1j, -1.0)
