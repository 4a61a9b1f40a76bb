import itertools
import math
import random

import pytest
from pydantic import ValidationError

from src.core_permutations.schemas import Composition, CycleDecomposition, Permutation
from src.core_permutations.service import (
    centralizer_order,
    compose,
    composition_parts,
    compositions,
    conjugate,
    conjugators,
    cycle_decomposition,
    cycle_type,
    enumerate_transpositions,
    inverse,
    partition_count,
    sigma_from_composition,
)
from src.exceptions import DegreeMismatchError


def cyc(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


def random_permutation(rng, degree):
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Permutation(images=tuple(images))


def test_compose_identity_and_involution():
    sigma = cyc(4, (1, 3, 2))
    assert compose(Permutation.identity(4), sigma) == sigma
    assert compose(cyc(2, (1, 2)), cyc(2, (1, 2))) == Permutation.identity(2)


def test_compose_applies_right_factor_first():
    result = compose(cyc(3, (1, 2)), cyc(3, (2, 3)))
    # 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
    assert result.images == (2, 3, 1)
    assert cycle_type(result) == (3,)


def test_compose_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(Permutation.identity(2), Permutation.identity(3))


def test_conjugate_examples():
    sigma = cyc(3, (1, 2))
    assert conjugate(sigma, Permutation.identity(3)) == sigma
    assert conjugate(sigma, cyc(3, (2, 3))) == cyc(3, (1, 3))


def test_conjugate_preserves_cycle_type():
    rng = random.Random(7)
    for _ in range(200):
        sigma, tau = random_permutation(rng, 5), random_permutation(rng, 5)
        assert cycle_type(conjugate(sigma, tau)) == cycle_type(sigma)


def test_compose_is_associative_and_inverse_cancels():
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = (random_permutation(rng, 6) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))
        assert compose(inverse(a), a) == Permutation.identity(6)


@pytest.mark.parametrize(
    "parts, images",
    [
        ((2, 3), (2, 1, 4, 5, 3)),
        ((1, 1, 1), (1, 2, 3)),
        ((4,), (2, 3, 4, 1)),
    ],
)
def test_sigma_from_composition(parts, images):
    assert sigma_from_composition(Composition(parts=parts)).images == images


def test_sigma_cycles_are_consecutive_blocks():
    sigma = sigma_from_composition(Composition(parts=(2, 3)))
    assert cycle_decomposition(sigma).cycles == ((1, 2), (3, 4, 5))


def test_cycle_decomposition_examples():
    assert cycle_decomposition(Permutation.identity(3)).cycles == ((1,), (2,), (3,))
    assert cycle_decomposition(cyc(5, (1, 2), (3, 4, 5))).lengths == (2, 3)
    product = compose(cyc(5, (1, 2)), cyc(5, (1, 2), (3, 4, 5)))
    assert cycle_decomposition(product).cycles == ((1,), (2,), (3, 4, 5))


def test_cycle_decomposition_reconstructs_permutation():
    rng = random.Random(3)
    for _ in range(100):
        sigma = random_permutation(rng, 7)
        decomposition = cycle_decomposition(sigma)
        assert decomposition.to_permutation() == sigma
        assert sum(decomposition.lengths) == 7


def test_cycle_decomposition_must_partition_points():
    with pytest.raises(ValidationError):
        CycleDecomposition(degree=3, cycles=((1, 2),))


@pytest.mark.parametrize("parts, order", [((2,), 2), ((1, 1), 2), ((2, 2, 1), 8), ((3, 1, 1, 1), 18)])
def test_centralizer_order_examples(parts, order):
    assert centralizer_order(Composition(parts=parts)) == order


@pytest.mark.parametrize("d", range(1, 7))
def test_centralizer_order_of_a_single_cycle(d):
    assert centralizer_order(Composition(parts=(d,))) == d


def test_centralizer_order_matches_bruteforce():
    'Stabilizer of σ_c under conjugation, counted over all of S_d'
    for d in range(1, 6):
        for parts_count in range(1, d + 1):
            for c in compositions(d, parts_count):
                sigma = sigma_from_composition(c)
                stabilizer = sum(
                    1
                    for images in itertools.permutations(range(1, d + 1))
                    if conjugate(sigma, Permutation(images=images)) == sigma
                )
                assert stabilizer == centralizer_order(c)


@pytest.mark.parametrize("d, count", [(0, 0), (1, 0), (2, 1), (3, 3), (5, 10)])
def test_enumerate_transpositions(d, count):
    transpositions = enumerate_transpositions(d)
    assert len(transpositions) == count == math.comb(d, 2)
    assert all(t.is_transposition() for t in transpositions)


def test_enumerate_transpositions_of_s2():
    assert enumerate_transpositions(2) == [cyc(2, (1, 2))]


def test_conjugators_cover_all_solutions():
    sigma = sigma_from_composition(Composition(parts=(2, 2)))
    target = cyc(4, (1, 3), (2, 4))
    found = conjugators(sigma, target)
    assert len(found) == centralizer_order(Composition(parts=(2, 2)))
    assert len(set(found)) == len(found)
    assert all(conjugate(sigma, tau) == target for tau in found)


def test_conjugators_of_different_types_are_empty():
    assert conjugators(cyc(3, (1, 2)), cyc(3, (1, 2, 3))) == []


def test_permutation_must_be_bijection():
    with pytest.raises(ValidationError):
        Permutation(images=(1, 1, 2))
    with pytest.raises(ValidationError):
        Permutation(images=(2, 3))


def test_composition_round_trips_as_list():
    c = Composition.model_validate([2, 1, 3])
    assert c.parts == (2, 1, 3)
    assert c.model_dump() == [2, 1, 3]
    assert c.partial_sums == (0, 2, 3, 6)
    assert c.total == 6


def test_composition_rejects_zero_parts():
    with pytest.raises(ValidationError):
        Composition(parts=(2, 0))


def test_compositions_count():
    'There are C(n-1, k-1) compositions of n into k parts'
    for n in range(1, 10):
        for k in range(1, n + 1):
            assert len(list(composition_parts(n, k))) == math.comb(n - 1, k - 1)
    assert list(composition_parts(4, 2)) == [(1, 3), (2, 2), (3, 1)]
    assert list(composition_parts(2, 3)) == []


@pytest.mark.parametrize("d, count", [(0, 1), (1, 1), (4, 5), (5, 7), (8, 22), (10, 42)])
def test_partition_count(d, count):
    assert partition_count(d) == count
