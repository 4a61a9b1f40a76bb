import itertools
from fractions import Fraction

import pytest

from src.core_permutations.schemas import Composition
from src.core_permutations.service import composition_parts
from src.cover_counts.schemas import CountKey
from src.exceptions import ContourOrderingError
from src.graph_enum.schemas import FeynmanGraph, GraphClassVariant
from src.graph_enum.service import count_by_graph, enumerate_graphs, is_in_class
from src.graph_integrals.schemas import EdgeFlow
from src.graph_integrals.service import (
    compare_numeric,
    contour_mean,
    default_radii,
    default_truncation,
    enumerate_flows,
    exact_coefficient,
    f_gamma_coefficient,
    integral_coefficient,
    integral_coefficient_recursive,
    numeric_contour_check,
    propagator_coefficient,
    residue_case1,
    residue_case2,
    truncated_series,
)


SINGLE_EDGE = FeynmanGraph.from_tokens(0, 1, 1, "z1->w1:1")
DOUBLE_EDGE = FeynmanGraph.from_tokens(2, 1, 1, "z1->x1:1 x1->x2:2 x2->w1:1")
SINK_AND_SOURCE = FeynmanGraph.from_tokens(2, 2, 2, "z1->x2:1 z2->x2:1 x1->x2:1 x1->w1:1 x1->w2:1")


def comp(*parts):
    return Composition(parts=parts)


def degree_pairs(k, l, max_total):
    for total in range(1, max_total + 1):
        for d in composition_parts(total, k):
            for e in composition_parts(total, l):
                yield Composition(parts=d), Composition(parts=e)


def extended_only(b, k, l):
    standard = set(enumerate_graphs(b, k, l))
    return [g for g in enumerate_graphs(b, k, l, GraphClassVariant.EXTENDED) if g not in standard]


@pytest.mark.parametrize("n, coefficient", [(1, 1), (0, 0), (7, 7), (-2, 0)])
def test_propagator_coefficient(n, coefficient):
    assert propagator_coefficient(n) == coefficient


def test_propagator_expansion_numerically():
    'Coefficients of uv/(u-v)^2 in (u/v)^n, read off by quadrature in u'
    v = 1.0
    for n in range(1, 8):
        coefficient = contour_mean(lambda u: u * v / (u - v) ** 2 * u ** (-n), 0.5)
        assert abs(coefficient - n) < 1e-8


@pytest.mark.parametrize("n", range(1, 7))
def test_integral_of_a_single_edge(n):
    assert integral_coefficient(SINGLE_EDGE, comp(n), comp(n)) == n
    assert integral_coefficient(SINGLE_EDGE, comp(n), comp(n + 1)) == 0


def test_integral_of_the_double_edge_graph():
    assert integral_coefficient(DOUBLE_EDGE, comp(2), comp(2)) == 4
    assert integral_coefficient(DOUBLE_EDGE, comp(1), comp(1)) == 0
    assert integral_coefficient(DOUBLE_EDGE, comp(3), comp(2)) == 0


def test_f_gamma_examples():
    assert f_gamma_coefficient(DOUBLE_EDGE, comp(2), comp(2)) == 2
    assert f_gamma_coefficient(SINGLE_EDGE, comp(3), comp(3)) == 3
    coefficient = exact_coefficient(DOUBLE_EDGE, comp(3), comp(3))
    assert coefficient.aut == 2
    assert coefficient.value == Fraction(coefficient.integral, 2)
    assert coefficient.model_dump()["f_gamma"] == str(coefficient.value)


def test_f_gamma_matches_graph_refinement():
    for b, d, e in [(2, (3,), (3,)), (3, (1, 2), (3,)), (2, (2, 2), (1, 3)), (4, (2,), (2,))]:
        key = CountKey.build(b, d, e)
        counts = count_by_graph(key)
        for g in enumerate_graphs(key.b, key.k, key.l):
            assert f_gamma_coefficient(g, key.d_comp, key.e_comp) == counts.get(g, 0), g.tokens()


def test_integral_rejects_mismatched_boundary():
    with pytest.raises(ValueError):
        integral_coefficient(DOUBLE_EDGE, comp(1, 1), comp(2))


def test_extended_only_graphs_integrate_to_zero():
    'Every graph with a {0,3} vertex, every degree vector with total <= 6'
    for b, k, l in itertools.product(range(4), range(1, 3), range(1, 3)):
        for g in extended_only(b, k, l):
            for d, e in degree_pairs(k, l, 6):
                assert integral_coefficient(g, d, e) == 0
                assert integral_coefficient_recursive(g, d, e) == 0
                assert f_gamma_coefficient(g, d, e) == 0


def test_recursive_evaluation_matches_flows():
    for b, k, l in itertools.product(range(4), range(1, 3), range(1, 3)):
        for g in enumerate_graphs(b, k, l):
            for d, e in degree_pairs(k, l, 5):
                assert integral_coefficient_recursive(g, d, e) == integral_coefficient(g, d, e), (g.tokens(), d, e)


def test_flow_enumeration_sums_to_the_integral():
    for b, k, l in [(2, 1, 1), (3, 2, 1), (2, 2, 2), (4, 1, 1)]:
        for g in enumerate_graphs(b, k, l):
            for d, e in degree_pairs(k, l, 5):
                flows = list(enumerate_flows(g, d, e))
                assert sum(flow.weight() for flow in flows) == integral_coefficient(g, d, e)


def test_double_edge_flows():
    flows = list(enumerate_flows(DOUBLE_EDGE, comp(3), comp(3)))
    assert sorted(flow.degrees for flow in flows) == [(3, 1, 2, 3), (3, 2, 1, 3)]


def test_edge_flow_must_be_conserved():
    with pytest.raises(ValueError):
        EdgeFlow(edges=(("z1", "x1"), ("x1", "w1")), degrees=(2, 3))


def test_integral_is_invariant_under_relabelling_z():
    for g in enumerate_graphs(3, 2, 1):
        swapped = FeynmanGraph.from_multiplicity(
            g.b, g.k, g.l,
            {({"z1": "z2", "z2": "z1"}.get(u, u), v): m for (u, v), m in g.multiplicity_map().items()},
        )
        for d, e in degree_pairs(2, 1, 5):
            flipped = comp(*reversed(d.parts))
            assert integral_coefficient(swapped, flipped, e) == integral_coefficient(g, d, e)


def test_integral_is_invariant_under_relabelling_w():
    for g in enumerate_graphs(3, 1, 2):
        swapped = FeynmanGraph.from_multiplicity(
            g.b, g.k, g.l,
            {(u, {"w1": "w2", "w2": "w1"}.get(v, v)): m for (u, v), m in g.multiplicity_map().items()},
        )
        for d, e in degree_pairs(1, 2, 6):
            flipped = comp(*reversed(e.parts))
            assert integral_coefficient(swapped, d, flipped) == integral_coefficient(g, d, e)


@pytest.mark.parametrize(
    "e_left, e_right, expected",
    [(1, 1, (2, 2)), (2, 3, (5, 5)), (1, 4, (5, 5))],
)
def test_residue_case1_examples(e_left, e_right, expected):
    assert residue_case1(e_left, e_right) == expected


def test_residue_case2_examples():
    assert residue_case2(2) == [(1, 1, 1)]
    assert residue_case2(4) == [(1, 3, 3), (2, 2, 4), (3, 1, 3)]
    assert residue_case2(1) == []


def test_residue_case1_against_quadrature():
    w = 2.0
    for e_left, e_right in itertools.product(range(1, 7), repeat=2):
        numeric = contour_mean(lambda x: x * w / (x - w) ** 2 * x ** (-e_left - e_right), 1.0)
        coefficient, exponent = residue_case1(e_left, e_right)
        assert abs(numeric - coefficient * w ** (-exponent)) < 1e-8


def test_residue_case2_against_quadrature():
    w1, w2 = 2.0, 3.0
    for e_prime in range(1, 7):
        numeric = contour_mean(
            lambda x: x * w1 / (x - w1) ** 2 * x * w2 / (x - w2) ** 2 * x ** (-e_prime), 1.0
        )
        exact = sum(weight * w1 ** (-e1) * w2 ** (-e2) for e1, e2, weight in residue_case2(e_prime))
        assert abs(numeric - exact) < 1e-8


def test_numeric_check_without_contours():
    value = numeric_contour_check(SINGLE_EDGE, [0.3], [1.0])
    assert value == pytest.approx(0.3 / 0.49, rel=1e-12)


def test_numeric_check_of_the_double_edge_graph():
    quadrature = numeric_contour_check(DOUBLE_EDGE, [0.2], [1.0], radii=[0.4, 0.7], quadrature_points=512)
    series = truncated_series(DOUBLE_EDGE, [0.2], [1.0], 30)
    assert abs(quadrature - series) < 1e-8


@pytest.mark.parametrize("b", [0, 2, pytest.param(4, marks=pytest.mark.slow)])
def test_numeric_check_on_every_graph(b):
    for g in enumerate_graphs(b, 1, 1):
        check = compare_numeric(g, [0.2], [1.0], max_degree=30, quadrature_points=512)
        assert check.agrees, (g.tokens(), check.relative_error)
        assert check.truncation == 30


def test_numeric_check_vanishes_on_extended_graphs():
    for g in [SINK_AND_SOURCE, *extended_only(2, 1, 1), *extended_only(3, 1, 2)]:
        z_values, w_values = [0.2] * g.k, [1.0, 1.3][: g.l]
        assert abs(numeric_contour_check(g, z_values, w_values)) < 1e-8


def test_numeric_check_rejects_bad_contours():
    with pytest.raises(ContourOrderingError):
        numeric_contour_check(DOUBLE_EDGE, [0.2], [1.0], radii=[0.7, 0.4])
    with pytest.raises(ContourOrderingError):
        numeric_contour_check(DOUBLE_EDGE, [0.5], [1.0], radii=[0.3, 0.7])
    with pytest.raises(ContourOrderingError):
        default_radii([1.0], [0.5], 2)
    with pytest.raises(ValueError):
        numeric_contour_check(DOUBLE_EDGE, [0.2], [1.0], quadrature_points=16)


def test_default_radii_are_ordered():
    radii = default_radii([0.2, 0.1], [1.0, 2.0], 3)
    chain = [0.2, *radii, 1.0]
    assert all(inner < outer for inner, outer in zip(chain, chain[1:]))


def test_default_truncation_reaches_tolerance():
    degree = default_truncation([0.2], [1.0])
    assert 0.2**degree < 1e-10
    assert 0.2 ** (degree - 1) >= 1e-10


def test_default_contours_with_z_at_the_origin():
    radii = default_radii([0.0], [1.0], 3)
    chain = [0.0, *radii, 1.0]
    assert all(inner < outer for inner, outer in zip(chain, chain[1:]))
    assert default_truncation([0.0], [1.0]) == 1
    assert abs(numeric_contour_check(DOUBLE_EDGE, [0.0], [1.0])) < 1e-12

def test_graphs_outside_both_classes_are_rejected():
    g = FeynmanGraph.from_tokens(1, 1, 1, "z1->x1:1 x1->w1:1")
    assert not is_in_class(g, GraphClassVariant.EXTENDED)
    with pytest.raises(ValueError):
        integral_coefficient(g, comp(1), comp(1))
