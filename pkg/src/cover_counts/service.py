import itertools
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from logging import getLogger
from typing import Iterator

from src.config import settings
from src.context import get_run_id
from src.core_permutations.schemas import Composition, Permutation
from src.core_permutations.service import (
    Images,
    centralizer_order,
    compose_images,
    compositions,
    conjugator_images,
    cycle_type_of,
    inverse_images,
    partition_count,
    sigma_images,
    transposition_images,
)
from src.exceptions import WorkBoundExceededError

from .schemas import CoefficientRow, CoefficientTable, CountKey, CountMethod, FactorizationTuple


log = getLogger(__name__)


def bruteforce_work(b: int, d: int) -> int:
    return math.comb(d, 2) ** b * math.factorial(d)


def fast_work(b: int, d: int) -> int:
    return max(b, 1) * max(math.comb(d, 2), 1) * partition_count(d)


def enumeration_work(b: int, d: int) -> int:
    """g-tuples walked, each checked for its cycle type and then conjugated."""
    return math.comb(d, 2) ** b * (b + max(d, 1))


def guard(what: str, estimate: int, work_bound: int | None):
    bound = settings.work_bound if work_bound is None else work_bound
    if estimate > bound:
        raise WorkBoundExceededError(what, estimate, bound)


@lru_cache(maxsize=None)
def _product_distribution(b: int, d_parts: tuple[int, ...]) -> Counter:
    """Multiplicity of every g_b⋯g_1·σ_d over all transposition sequences."""
    sigma = sigma_images(d_parts)
    transpositions = transposition_images(sum(d_parts))
    distribution: Counter = Counter()
    for sequence in itertools.product(transpositions, repeat=b):
        product = sigma
        for g in sequence:
            product = compose_images(g, product)
        distribution[product] += 1
    return distribution


@lru_cache(maxsize=None)
def _conjugate_distribution(e_parts: tuple[int, ...]) -> Counter:
    """For each π, the number of τ ∈ S_d with τ ∘ σ_e ∘ τ⁻¹ = π."""
    sigma = sigma_images(e_parts)
    distribution: Counter = Counter()
    for tau in itertools.permutations(range(1, sum(e_parts) + 1)):
        distribution[compose_images(tau, compose_images(sigma, inverse_images(tau)))] += 1
    return distribution


def count_covers_bruteforce(key: CountKey, work_bound: int | None = None) -> int:
    d = key.degree
    if d is None:
        return 0
    guard(f"bruteforce count {key}", bruteforce_work(key.b, d), work_bound)

    products = _product_distribution(key.b, key.d_comp.parts)
    conjugates = _conjugate_distribution(key.e_comp.parts)
    return sum(multiplicity * conjugates[product] for product, multiplicity in products.items())


def _split_and_join(cycle_type: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], int]]:
    """
    Cycle types reachable from one permutation of ``cycle_type`` by a single
    transposition, with the number of transpositions leading there.
    """
    lengths = list(cycle_type)
    for i, j in itertools.combinations(range(len(lengths)), 2):
        rest = lengths[:i] + lengths[i + 1:j] + lengths[j + 1:]
        joined = tuple(sorted(rest + [lengths[i] + lengths[j]], reverse=True))
        yield joined, lengths[i] * lengths[j]
    for i, m in enumerate(lengths):
        rest = lengths[:i] + lengths[i + 1:]
        for j in range(1, m // 2 + 1):
            split = tuple(sorted(rest + [j, m - j], reverse=True))
            yield split, m // 2 if 2 * j == m else m


@lru_cache(maxsize=None)
def _type_distribution(b: int, start: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Number of b-term transposition sequences taking a permutation of type ``start`` to each type."""
    states: Counter = Counter({start: 1})
    for _ in range(b):
        following: Counter = Counter()
        for cycle_type, multiplicity in states.items():
            for target, ways in _split_and_join(cycle_type):
                following[target] += multiplicity * ways
        states = following
    return dict(states)


def count_covers_fast(key: CountKey, work_bound: int | None = None) -> int:
    d = key.degree
    if d is None:
        return 0
    guard(f"fast count {key}", fast_work(key.b, d), work_bound)

    start = tuple(sorted(key.d_comp.parts, reverse=True))
    target = tuple(sorted(key.e_comp.parts, reverse=True))
    g_tuples = _type_distribution(key.b, start).get(target, 0)
    return centralizer_order(key.e_comp) * g_tuples


def iter_factorizations(key: CountKey) -> Iterator[tuple[tuple[Images, ...], Images]]:
    """
    Raw (g-images, τ-images) pairs: g-tuples in lexicographic transposition
    order, τ in conjugator order.
    """
    d = key.degree
    if d is None:
        return
    sigma_d = sigma_images(key.d_comp.parts)
    sigma_e = sigma_images(key.e_comp.parts)
    target_type = cycle_type_of(sigma_e)
    transpositions = transposition_images(d)

    for sequence in itertools.product(transpositions, repeat=key.b):
        product = sigma_d
        for g in sequence:
            product = compose_images(g, product)
        if cycle_type_of(product) != target_type:
            continue
        for tau in conjugator_images(sigma_e, product):
            yield sequence, tau


def enumerate_factorizations(key: CountKey, work_bound: int | None = None) -> list[FactorizationTuple]:
    d = key.degree
    if d is None:
        return []
    guard(f"factorizations {key}", enumeration_work(key.b, d), work_bound)

    return [
        FactorizationTuple(
            transpositions=tuple(Permutation.model_construct(images=g) for g in sequence),
            tau=Permutation.model_construct(images=tau),
        )
        for sequence, tau in iter_factorizations(key)
    ]


def count_covers(key: CountKey, method: CountMethod = CountMethod.FAST, work_bound: int | None = None) -> int:
    if method == CountMethod.BRUTEFORCE:
        return count_covers_bruteforce(key, work_bound)
    return count_covers_fast(key, work_bound)


def table_keys(b: int, k: int, l: int, d_max: int) -> list[CountKey]:
    return [
        CountKey(b=b, d=d_comp, e=e_comp)
        for d in range(1, d_max + 1)
        for d_comp in compositions(d, k)
        for e_comp in compositions(d, l)
    ]


def build_table(
    b: int,
    k: int,
    l: int,
    d_max: int,
    method: CountMethod = CountMethod.FAST,
    work_bound: int | None = None,
    threads: int | None = None,
) -> CoefficientTable:
    work = bruteforce_work if method == CountMethod.BRUTEFORCE else fast_work
    guard(f"table b={b} k={k} l={l} d_max={d_max}", work(b, d_max), work_bound)

    keys = table_keys(b, k, l, d_max)
    with ThreadPoolExecutor(max_workers=threads or settings.threads) as pool:
        counts = list(pool.map(lambda key: count_covers(key, method, work_bound), keys))

    log.info(f"Run ID: [{get_run_id()}] table b={b} k={k} l={l} d_max={d_max}: {len(keys)} entries ({method})")

    return CoefficientTable(
        b=b,
        k=k,
        l=l,
        d_max=d_max,
        method=method,
        rows=[CoefficientRow(key=key, n=n) for key, n in zip(keys, counts)],
    )
