import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from logging import getLogger
from typing import Callable, Iterable, TypeVar

from src.config import settings
from src.context import get_run_id
from src.core_permutations.schemas import Composition
from src.cover_counts.schemas import CountKey
from src.cover_counts.service import count_covers_bruteforce, count_covers_fast, table_keys
from src.exceptions import IntegralityError
from src.graph_enum.schemas import GraphClassVariant
from src.graph_enum.service import count_by_graph, enumerate_graphs
from src.graph_integrals.service import f_gamma_coefficient

from .schemas import (
    BosonReport,
    BosonRow,
    FermionReport,
    FermionRow,
    PropositionReport,
    PropositionRow,
)


log = getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def _ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None) -> list[R]:
    """Concurrent map; results come back in input order."""
    with ThreadPoolExecutor(max_workers=threads or settings.threads) as pool:
        return list(pool.map(fn, items))


def _as_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise IntegralityError(f"{what} is not an integer: {value}")
    return value.numerator


def boson_sum(
    b: int,
    k: int,
    l: int,
    d_comp: Composition,
    e_comp: Composition,
    variant: GraphClassVariant = GraphClassVariant.STANDARD,
) -> int:
    """Σ_{[Γ] ∈ G_{b,k,l}} I_Γ/#Aut(Γ) at the coefficient of ∏z^d ∏w^-e."""
    if len(d_comp.parts) != k or len(e_comp.parts) != l:
        raise ValueError(f"{d_comp}, {e_comp} do not have lengths k={k}, l={l}")
    total = sum(
        (f_gamma_coefficient(g, d_comp, e_comp) for g in enumerate_graphs(b, k, l, variant)),
        Fraction(0),
    )
    value = _as_integer(total, f"graph sum at b={b} d={d_comp} e={e_comp}")
    if value < 0:
        raise IntegralityError(f"graph sum at b={b} d={d_comp} e={e_comp} is negative: {value}")
    return value


def _verification_keys(b_max: int, k_max: int, l_max: int, d_max: int) -> list[CountKey]:
    return [
        key
        for b, k, l in itertools.product(range(b_max + 1), range(1, k_max + 1), range(1, l_max + 1))
        for key in table_keys(b, k, l, d_max)
    ]


def verify_boson(
    b_max: int,
    k_max: int,
    l_max: int,
    d_max: int,
    work_bound: int | None = None,
    threads: int | None = None,
) -> BosonReport:
    keys = _verification_keys(b_max, k_max, l_max, d_max)

    def check(key: CountKey) -> BosonRow:
        oracle = count_covers_bruteforce(key, work_bound)
        graph_sum = boson_sum(key.b, key.k, key.l, key.d_comp, key.e_comp)
        return BosonRow(key=key, oracle=oracle, graph_sum=graph_sum, match=oracle == graph_sum)

    rows = _ordered_map(check, keys, threads)
    mismatches = [row.key for row in rows if not row.match]
    for key in mismatches:
        log.warning(f"Run ID: [{get_run_id()}] boson formula mismatch at {key}")
    log.info(f"Run ID: [{get_run_id()}] boson check: {len(rows)} keys, {len(mismatches)} mismatches")

    return BosonReport(b_max=b_max, k_max=k_max, l_max=l_max, d_max=d_max, rows=rows, mismatches=mismatches)


def verify_proposition(
    b_max: int,
    k_max: int,
    l_max: int,
    d_max: int,
    work_bound: int | None = None,
    threads: int | None = None,
) -> PropositionReport:
    keys = [key for key in _verification_keys(b_max, k_max, l_max, d_max) if key.degree is not None]

    def check(key: CountKey) -> list[PropositionRow]:
        counts = {g.tokens(): n for g, n in count_by_graph(key, work_bound).items()}
        rows = []
        for g in enumerate_graphs(key.b, key.k, key.l):
            f_gamma = f_gamma_coefficient(g, key.d_comp, key.e_comp)
            count = counts.pop(g.tokens(), 0)
            if f_gamma or count:
                rows.append(PropositionRow(key=key, graph=g.tokens(), count=count, f_gamma=str(f_gamma), match=f_gamma == count))
        # a factorization whose graph is outside the class would land here
        for tokens, count in counts.items():
            rows.append(PropositionRow(key=key, graph=tokens, count=count, f_gamma="0", match=False))
        return rows

    rows = [row for chunk in _ordered_map(check, keys, threads) for row in chunk]
    mismatches = [row for row in rows if not row.match]
    log.info(f"Run ID: [{get_run_id()}] per-graph check: {len(rows)} rows, {len(mismatches)} mismatches")

    return PropositionReport(b_max=b_max, k_max=k_max, l_max=l_max, d_max=d_max, rows=rows, mismatches=mismatches)


def fermion_coefficient(b: int, d: int) -> int:
    """
    Coefficient of q^d λ^b/b! in (Σ_p q^p e^{λp²/2})(Σ_p q^p e^{-λp²/2}),
    p over the positive half-integers: Σ_{p+p'=d} ((p² - p'²)/2)^b.
    """
    if b < 0 or d < 1:
        raise ValueError(f"need b >= 0 and d >= 1, got b={b} d={d}")
    total = Fraction(0)
    for j in range(d):
        p = Fraction(2 * j + 1, 2)
        p_prime = d - p
        total += ((p * p - p_prime * p_prime) / 2) ** b
    return _as_integer(total, f"fermion coefficient b={b} d={d}")


def verify_fermion(b_max: int, d_max: int, work_bound: int | None = None, threads: int | None = None) -> FermionReport:
    pairs = list(itertools.product(range(b_max + 1), range(1, d_max + 1)))

    def check(pair: tuple[int, int]) -> FermionRow:
        b, d = pair
        lhs = count_covers_fast(CountKey.build(b, (d,), (d,)), work_bound)
        rhs = fermion_coefficient(b, d)
        return FermionRow(b=b, d=d, lhs=lhs, rhs=rhs, match=lhs == rhs)

    rows = _ordered_map(check, pairs, threads)
    mismatches = [row for row in rows if not row.match]
    for row in mismatches:
        log.warning(f"Run ID: [{get_run_id()}] fermion mismatch at b={row.b} d={row.d}: {row.lhs} != {row.rhs}")
    log.info(f"Run ID: [{get_run_id()}] fermion check: {len(rows)} pairs, {len(mismatches)} mismatches")

    return FermionReport(b_max=b_max, d_max=d_max, rows=rows, mismatches=mismatches)


def b0_closed_form(d_comp: Composition, e_comp: Composition) -> int:
    """n_{0;d;e}: ∏ d_i summed over the bijections z_i → w_π(i) with d_i = e_π(i)."""
    if len(d_comp.parts) != len(e_comp.parts):
        return 0
    d, e = d_comp.parts, e_comp.parts
    return sum(
        math.prod(d)
        for pi in itertools.permutations(range(len(e)))
        if all(d[i] == e[pi[i]] for i in range(len(d)))
    )
