import math
from fractions import Fraction
from functools import cache
from logging import getLogger
from typing import Callable, Iterator, Sequence

import numpy as np

from src.config import settings
from src.core_permutations.schemas import Composition
from src.core_permutations.service import composition_parts
from src.exceptions import ContourOrderingError
from src.graph_enum.schemas import FeynmanGraph, GraphClassVariant, vertex_rank
from src.graph_enum.service import aut_order, is_in_class

from .schemas import EdgeFlow, ExactCoefficient, NumericCheck


log = getLogger(__name__)

MIN_QUADRATURE_POINTS = 64


def propagator_coefficient(n: int) -> int:
    """Coefficient of (u/v)^n in uv/(u-v)^2 for |u| < |v|."""
    return n if n >= 1 else 0


def _check_boundary(g: FeynmanGraph, d_comp: Composition, e_comp: Composition):
    if len(d_comp.parts) != g.k or len(e_comp.parts) != g.l:
        raise ValueError(
            f"degrees {d_comp}, {e_comp} do not match k={g.k}, l={g.l}"
        )
    if not is_in_class(g, GraphClassVariant.EXTENDED):
        raise ValueError(f"graph {g.tokens()} is outside the graph class")


def _edge_instances(g: FeynmanGraph) -> list[tuple[str, str]]:
    return [(edge.source, edge.target) for edge in g.edges for _ in range(edge.multiplicity)]


def _split_boundary(g: FeynmanGraph, d: tuple[int, ...], e: tuple[int, ...]):
    """
    Fixes the degrees forced by the boundary. Returns the weight of those
    edges, the inflow into each x, the fixed outflow of each x, and the
    x→x edge instances grouped by source; None when a z→w edge mismatches.
    """
    weight = 1
    inflow = [0] * (g.b + 1)
    fixed_out = [0] * (g.b + 1)
    free: list[list[int]] = [[] for _ in range(g.b + 1)]

    for u, v in _edge_instances(g):
        (u_kind, i), (v_kind, j) = vertex_rank(u), vertex_rank(v)
        if u_kind == 0 and v_kind == 2:
            if d[i - 1] != e[j - 1]:
                return None
            weight *= propagator_coefficient(d[i - 1])
        elif u_kind == 0:
            inflow[j] += d[i - 1]
            weight *= propagator_coefficient(d[i - 1])
        elif v_kind == 2:
            fixed_out[i] += e[j - 1]
            weight *= propagator_coefficient(e[j - 1])
        else:
            free[i].append(j)
    return weight, inflow, fixed_out, free


def integral_coefficient(g: FeynmanGraph, d_comp: Composition, e_comp: Composition) -> int:
    """
    Coefficient of ∏z^d ∏w^-e in I_Γ. Each propagator expands as
    Σ n (v_in/v_fin)^n and each x-integral keeps the x^0 term, so this is the
    sum over conserved positive flows of the product of edge degrees.
    """
    _check_boundary(g, d_comp, e_comp)
    if d_comp.total != e_comp.total:
        return 0
    split = _split_boundary(g, d_comp.parts, e_comp.parts)
    if split is None:
        return 0
    weight, inflow, fixed_out, free = split

    @cache
    def flows_from(i: int, pending: tuple[int, ...]) -> int:
        # pending[j] is the inflow collected so far by x_j, j >= i
        if i > g.b:
            return 1
        available = pending[i] - fixed_out[i]
        targets = free[i]
        if not targets:
            if available != 0:
                return 0
            following = list(pending)
            following[i] = 0
            return flows_from(i + 1, tuple(following))
        total = 0
        for parts in composition_parts(available, len(targets)):
            following = list(pending)
            following[i] = 0
            for j, part in zip(targets, parts):
                following[j] += part
            total += math.prod(parts) * flows_from(i + 1, tuple(following))
        return total

    return weight * flows_from(1, tuple(inflow))


def enumerate_flows(g: FeynmanGraph, d_comp: Composition, e_comp: Composition) -> Iterator[EdgeFlow]:
    """Every admissible flow, explicitly. Exponential; meant for small cases."""
    _check_boundary(g, d_comp, e_comp)
    if d_comp.total != e_comp.total:
        return
    instances = _edge_instances(g)
    d, e = d_comp.parts, e_comp.parts
    degrees = [0] * len(instances)
    inflow = [0] * (g.b + 1)
    fixed_out = [0] * (g.b + 1)
    free: list[list[tuple[int, int]]] = [[] for _ in range(g.b + 1)]

    for position, (u, v) in enumerate(instances):
        (u_kind, i), (v_kind, j) = vertex_rank(u), vertex_rank(v)
        if u_kind == 0:
            degrees[position] = d[i - 1]
            if v_kind == 1:
                inflow[j] += d[i - 1]
            elif d[i - 1] != e[j - 1]:
                return
        elif v_kind == 2:
            degrees[position] = e[j - 1]
            fixed_out[i] += e[j - 1]
        else:
            free[i].append((position, j))

    def assign(i: int) -> Iterator[tuple[int, ...]]:
        if i > g.b:
            yield tuple(degrees)
            return
        available = inflow[i] - fixed_out[i]
        if not free[i]:
            if available == 0:
                yield from assign(i + 1)
            return
        for parts in composition_parts(available, len(free[i])):
            for (position, j), part in zip(free[i], parts):
                degrees[position] = part
                inflow[j] += part
            yield from assign(i + 1)
            for (position, j), part in zip(free[i], parts):
                inflow[j] -= part

    for assignment in assign(1):
        yield EdgeFlow(edges=tuple(instances), degrees=assignment)


def f_gamma_coefficient(g: FeynmanGraph, d_comp: Composition, e_comp: Composition) -> Fraction:
    return Fraction(integral_coefficient(g, d_comp, e_comp), aut_order(g))


def exact_coefficient(g: FeynmanGraph, d_comp: Composition, e_comp: Composition) -> ExactCoefficient:
    return ExactCoefficient(
        graph=g.tokens(),
        aut=aut_order(g),
        integral=integral_coefficient(g, d_comp, e_comp),
    )


def residue_case1(e_left: int, e_right: int) -> tuple[int, int]:
    """
    ∮ dx/(2π√-1 x) · xw/(x-w)² · x^-e_left · x^-e_right = e·w^-e with
    e = e_left + e_right. Returns (coefficient, exponent of 1/w).
    """
    if e_left < 1 or e_right < 1:
        raise ValueError("residue_case1 needs positive degrees")
    e = e_left + e_right
    return propagator_coefficient(e), e


def residue_case2(e_prime: int) -> list[tuple[int, int, int]]:
    """
    ∮ dx/(2π√-1 x) · xw₁/(x-w₁)² · xw₂/(x-w₂)² · x^-e' as the list of
    (e₁, e₂, e₁·e₂) over ordered splits e₁ + e₂ = e'.
    """
    return [
        (e1, e_prime - e1, propagator_coefficient(e1) * propagator_coefficient(e_prime - e1))
        for e1 in range(1, e_prime)
    ]


def _relabelled(g: FeynmanGraph, l: int, multiplicity: dict, rename: dict) -> FeynmanGraph:
    renamed: dict[tuple[str, str], int] = {}
    for (u, v), m in multiplicity.items():
        pair = rename.get(u, u), rename.get(v, v)
        renamed[pair] = renamed.get(pair, 0) + m
    return FeynmanGraph.from_multiplicity(g.b - 1, g.k, l, renamed)


def integral_coefficient_recursive(g: FeynmanGraph, d_comp: Composition, e_comp: Composition) -> int:
    """
    Same coefficient as integral_coefficient, computed by integrating out
    the last intermediate vertex and recursing on the smaller graph.
    """
    _check_boundary(g, d_comp, e_comp)
    if not is_in_class(g, GraphClassVariant.STANDARD):
        # some x has {0, 3}: its poles all lie on one side of the contour
        return 0
    if d_comp.total != e_comp.total:
        return 0
    d, e = d_comp.parts, e_comp.parts

    if g.b == 0:
        total = 1
        for edge in g.edges:
            i, j = vertex_rank(edge.source)[1], vertex_rank(edge.target)[1]
            if d[i - 1] != e[j - 1]:
                return 0
            total *= propagator_coefficient(d[i - 1])
        return total

    last = f"x{g.b}"
    multiplicity = g.multiplicity_map()
    sources = [u for (u, v), m in multiplicity.items() if v == last for _ in range(m)]
    targets = sorted((v for (u, v), m in multiplicity.items() if u == last), key=vertex_rank)
    rest = {pair: m for pair, m in multiplicity.items() if last not in pair}

    if len(targets) == 1:
        (w,) = targets
        j = vertex_rank(w)[1]
        new_w = f"w{g.l + 1}"
        rerouted = dict(rest)
        rerouted[(sources[0], w)] = rerouted.get((sources[0], w), 0) + 1
        rerouted[(sources[1], new_w)] = rerouted.get((sources[1], new_w), 0) + 1
        reduced = FeynmanGraph.from_multiplicity(g.b - 1, g.k, g.l + 1, rerouted)

        total = 0
        for a in range(1, e[j - 1]):
            coefficient, exponent = residue_case1(a, e[j - 1] - a)
            assert exponent == e[j - 1]
            split = list(e)
            split[j - 1] = a
            split.append(e[j - 1] - a)
            total += coefficient * integral_coefficient_recursive(reduced, d_comp, Composition(parts=tuple(split)))
        return total

    w_i, w_j = targets
    i, j = vertex_rank(w_i)[1], vertex_rank(w_j)[1]
    merged_degree = e[i - 1] + e[j - 1]
    weight = next(
        weight for e1, e2, weight in residue_case2(merged_degree) if (e1, e2) == (e[i - 1], e[j - 1])
    )
    rerouted = dict(rest)
    rerouted[(sources[0], w_i)] = 1
    rename = {f"w{m}": f"w{m - 1}" for m in range(j + 1, g.l + 1)}
    reduced = _relabelled(g, g.l - 1, rerouted, rename)
    merged = [degree for position, degree in enumerate(e, start=1) if position != j]
    merged[i - 1] = merged_degree
    return weight * integral_coefficient_recursive(reduced, d_comp, Composition(parts=tuple(merged)))


def contour_mean(f: Callable[[np.ndarray], np.ndarray], radius: float, points: int | None = None) -> complex:
    """Trapezoid rule for ∮_{|x|=radius} f(x) dx/(2π√-1 x)."""
    points = points or settings.quadrature_points
    theta = 2 * np.pi * np.arange(points) / points
    return complex(np.mean(f(radius * np.exp(1j * theta))))


def default_radii(z_values: Sequence[complex], w_values: Sequence[complex], b: int) -> list[float]:
    low = 1.1 * max(abs(z) for z in z_values)
    high = 0.9 * min(abs(w) for w in w_values)
    if low >= high:
        raise ContourOrderingError(f"no room for contours between |z| <= {low / 1.1} and |w| >= {high / 0.9}")
    if low == 0:
        return [high * i / (b + 1) for i in range(1, b + 1)]
    return [low * (high / low) ** (i / (b + 1)) for i in range(1, b + 1)]


def default_truncation(z_values: Sequence[complex], w_values: Sequence[complex], tolerance: float = 1e-10) -> int:
    ratio = max(abs(z) for z in z_values) / min(abs(w) for w in w_values)
    if ratio == 0:
        return 1
    if not 0 < ratio < 1:
        raise ContourOrderingError("series needs max|z| < min|w|")
    return max(1, math.ceil(math.log(tolerance) / math.log(ratio)))


def truncated_series(
    g: FeynmanGraph,
    z_values: Sequence[complex],
    w_values: Sequence[complex],
    max_degree: int,
) -> complex:
    """Σ over Σd = Σe ≤ max_degree of the exact coefficients times ∏z^d ∏w^-e."""
    total = 0j
    for degree in range(1, max_degree + 1):
        for d in composition_parts(degree, g.k):
            d_comp = Composition(parts=d)
            z_power = math.prod(z**p for z, p in zip(z_values, d))
            for e in composition_parts(degree, g.l):
                coefficient = integral_coefficient(g, d_comp, Composition(parts=e))
                if coefficient:
                    total += coefficient * z_power * math.prod(w ** (-p) for w, p in zip(w_values, e))
    return total


def _propagator(u, v):
    return u * v / (u - v) ** 2


def numeric_contour_check(
    g: FeynmanGraph,
    z_values: Sequence[complex],
    w_values: Sequence[complex],
    radii: Sequence[float] | None = None,
    quadrature_points: int | None = None,
) -> complex:
    """
    I_Γ by the trapezoid rule on each circle |x_i| = r_i. The integrand is a
    product of factors in at most two x's, so the N^b grid sum is done as a
    tensor contraction.
    """
    points = quadrature_points or settings.quadrature_points
    if points < MIN_QUADRATURE_POINTS:
        raise ValueError(f"quadrature_points must be >= {MIN_QUADRATURE_POINTS}, got {points}")
    if len(z_values) != g.k or len(w_values) != g.l:
        raise ValueError("one boundary value per z and per w")
    if radii is None:
        radii = default_radii(z_values, w_values, g.b)
    if len(radii) != g.b:
        raise ValueError(f"expected {g.b} radii, got {len(radii)}")

    chain = [max(abs(z) for z in z_values), *radii, min(abs(w) for w in w_values)]
    if any(inner >= outer for inner, outer in zip(chain, chain[1:])):
        raise ContourOrderingError(f"need max|z| < r_1 < ... < r_b < min|w|, got {chain}")

    theta = 2 * np.pi * np.arange(points) / points
    nodes = [r * np.exp(1j * theta) for r in radii]

    def value(label: str):
        kind, index = vertex_rank(label)
        if kind == 0:
            return complex(z_values[index - 1]), None
        if kind == 2:
            return complex(w_values[index - 1]), None
        return nodes[index - 1], index - 1

    scalar = 1 + 0j
    # one weight vector per circle, one grid per pair of circles
    vectors: dict[int, np.ndarray] = {}
    grids: list = []
    for edge in g.edges:
        (u, u_axis), (v, v_axis) = value(edge.source), value(edge.target)
        factor_axis = u_axis if v_axis is None else v_axis
        if u_axis is None and v_axis is None:
            scalar *= _propagator(u, v) ** edge.multiplicity
        elif u_axis is None or v_axis is None:
            factor = _propagator(u, v) ** edge.multiplicity
            vectors[factor_axis] = vectors[factor_axis] * factor if factor_axis in vectors else factor
        else:
            grids += [_propagator(u[:, None], v[None, :]) ** edge.multiplicity, [u_axis, v_axis]]
            vectors.setdefault(u_axis, np.ones(points, dtype=complex))
            vectors.setdefault(v_axis, np.ones(points, dtype=complex))

    if not vectors:
        return complex(scalar)
    operands = [item for axis, vector in sorted(vectors.items()) for item in (vector, [axis])] + grids
    total = np.einsum(*operands, [], optimize="greedy")
    return complex(scalar * total / points ** len(vectors))


def compare_numeric(
    g: FeynmanGraph,
    z_values: Sequence[complex],
    w_values: Sequence[complex],
    max_degree: int | None = None,
    quadrature_points: int | None = None,
    tolerance: float = 1e-6,
) -> NumericCheck:
    truncation = max_degree or default_truncation(z_values, w_values)
    quadrature = numeric_contour_check(g, z_values, w_values, quadrature_points=quadrature_points)
    series = truncated_series(g, z_values, w_values, truncation)
    relative_error = abs(quadrature - series) / (abs(series) or 1.0)
    log.debug(f"{g.tokens()}: quadrature {quadrature}, series {series}")
    return NumericCheck(
        graph=g.tokens(),
        quadrature_re=quadrature.real,
        quadrature_im=quadrature.imag,
        series_re=series.real,
        series_im=series.imag,
        truncation=truncation,
        relative_error=relative_error,
        agrees=relative_error <= tolerance,
    )
