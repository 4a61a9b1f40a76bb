import itertools
import math
from collections import Counter
from functools import lru_cache
from logging import getLogger

from src.context import get_run_id
from src.core_permutations.schemas import Composition
from src.core_permutations.service import (
    Images,
    canonical_cycle,
    compose_images,
    cycles_of,
    inverse_images,
    sigma_images,
)
from src.cover_counts.schemas import CountKey, FactorizationTuple
from src.cover_counts.service import enumeration_work, guard, iter_factorizations
from src.exceptions import FactorizationError

from .schemas import FeynmanGraph, GraphClassVariant, precedes, vertex_order, vertex_rank


log = getLogger(__name__)


# (out, in) degree splits allowed at an intermediate vertex
_SPLITS = {
    GraphClassVariant.STANDARD: ((1, 2), (2, 1)),
    GraphClassVariant.EXTENDED: ((1, 2), (2, 1), (0, 3), (3, 0)),
}


@lru_cache(maxsize=None)
def _graph_class(b: int, k: int, l: int, variant: GraphClassVariant) -> tuple[FeynmanGraph, ...]:
    order = vertex_order(b, k, l)
    later = {
        u: [v for v in order[position + 1:] if precedes(u, v)]
        for position, u in enumerate(order)
    }
    graphs = []

    for splits in itertools.product(_SPLITS[variant], repeat=b):
        out_cap = {f"z{i}": 1 for i in range(1, k + 1)}
        in_left = {f"w{i}": 1 for i in range(1, l + 1)}
        for i, (out_degree, in_degree) in enumerate(splits, start=1):
            out_cap[f"x{i}"] = out_degree
            in_left[f"x{i}"] = in_degree
        if sum(out_cap.values()) != sum(in_left.values()):
            continue

        multiplicity: Counter = Counter()

        def place(position: int):
            if position == len(order):
                if not any(in_left.values()):
                    graphs.append(FeynmanGraph.from_multiplicity(b, k, l, multiplicity))
                return
            u = order[position]
            # every in-edge of u starts at an earlier vertex
            if in_left.get(u, 0):
                return
            targets = [v for v in later[u] if in_left.get(v, 0)]
            for choice in itertools.combinations_with_replacement(targets, out_cap.get(u, 0)):
                wanted = Counter(choice)
                if any(wanted[v] > in_left[v] for v in wanted):
                    continue
                for v, m in wanted.items():
                    in_left[v] -= m
                    multiplicity[(u, v)] += m
                place(position + 1)
                for v, m in wanted.items():
                    in_left[v] += m
                    multiplicity[(u, v)] -= m

        place(0)

    return tuple(graphs)


def enumerate_graphs(
    b: int,
    k: int,
    l: int,
    variant: GraphClassVariant = GraphClassVariant.STANDARD,
) -> list[FeynmanGraph]:
    if k < 1 or l < 1 or b < 0:
        raise ValueError(f"graph class needs k, l >= 1 and b >= 0, got b={b} k={k} l={l}")
    return list(_graph_class(b, k, l, GraphClassVariant(variant)))


def aut_order(g: FeynmanGraph) -> int:
    return math.prod(math.factorial(edge.multiplicity) for edge in g.edges)


def is_in_class(g: FeynmanGraph, variant: GraphClassVariant = GraphClassVariant.STANDARD) -> bool:
    allowed = set(_SPLITS[GraphClassVariant(variant)])
    for vertex in g.vertices():
        kind, _ = vertex_rank(vertex)
        out_degree, in_degree = g.out_degree(vertex), g.in_degree(vertex)
        if kind == 0 and (out_degree, in_degree) != (1, 0):
            return False
        if kind == 2 and (out_degree, in_degree) != (0, 1):
            return False
        if kind == 1 and (out_degree, in_degree) not in allowed:
            return False
    return True


def _trace_levels(d_parts: tuple[int, ...], sequence: tuple[Images, ...]):
    """
    Walks g_i⋯g_1·σ_d level by level. A cycle equal to one at the previous
    level continues that edge; a cycle that disappears closes its edge at x_i,
    a new cycle opens one at x_i.
    Returns closed edges, the open cycles with their origin, and the final product.
    """
    product = sigma_images(d_parts)
    current = {cycle: f"z{v}" for v, cycle in enumerate(cycles_of(product), start=1)}
    edges: Counter = Counter()

    for level, g in enumerate(sequence, start=1):
        product = compose_images(g, product)
        following = set(cycles_of(product))
        x = f"x{level}"
        opened = {}
        for cycle, origin in current.items():
            if cycle in following:
                opened[cycle] = origin
            else:
                edges[(origin, x)] += 1
        for cycle in following:
            if cycle not in current:
                opened[cycle] = x
        current = opened

    return edges, current, product


def _close_levels(current: dict, e_parts: tuple[int, ...], tau: Images) -> Counter:
    """Attaches each open cycle to the w whose σ_e block τ carries onto it."""
    edges: Counter = Counter()
    start = 1
    for v, part in enumerate(e_parts, start=1):
        block = tuple(tau[point - 1] for point in range(start, start + part))
        edges[(current[canonical_cycle(block)], f"w{v}")] += 1
        start += part
    return edges


def associate_graph(t: FactorizationTuple, d_comp: Composition, e_comp: Composition) -> FeynmanGraph:
    degree = t.degree
    if d_comp.total != degree or e_comp.total != degree:
        raise FactorizationError(
            f"compositions {d_comp} and {e_comp} do not both sum to the degree {degree}"
        )
    sequence = tuple(g.images for g in t.transpositions)
    edges, current, product = _trace_levels(d_comp.parts, sequence)

    tau = t.tau.images
    expected = compose_images(tau, compose_images(sigma_images(e_comp.parts), inverse_images(tau)))
    if product != expected:
        raise FactorizationError(f"g_b...g_1 sigma_d != (sigma_e)^tau for degree {degree}")

    edges.update(_close_levels(current, e_comp.parts, tau))
    return FeynmanGraph.from_multiplicity(len(sequence), len(d_comp.parts), len(e_comp.parts), edges)


def count_by_graph(key: CountKey, work_bound: int | None = None) -> dict[FeynmanGraph, int]:
    d = key.degree
    if d is None:
        return {}
    guard(f"graph refinement {key}", enumeration_work(key.b, d), work_bound)

    counts: Counter = Counter()
    traced_sequence, traced = None, None
    for sequence, tau in iter_factorizations(key):
        if sequence != traced_sequence:
            traced_sequence, traced = sequence, _trace_levels(key.d_comp.parts, sequence)
        edges, current, _ = traced
        closed = edges + _close_levels(current, key.e_comp.parts, tau)
        counts[frozenset(closed.items())] += 1

    graphs = {
        FeynmanGraph.from_multiplicity(key.b, key.k, key.l, dict(edges)): n
        for edges, n in counts.items()
    }
    log.debug(f"Run ID: [{get_run_id()}] {key}: {sum(graphs.values())} factorizations over {len(graphs)} graphs")
    return dict(sorted(graphs.items(), key=lambda item: item[0].tokens()))
