import itertools
import math
from collections import Counter
from typing import Iterator

from src.exceptions import DegreeMismatchError

from .schemas import Composition, CycleDecomposition, Permutation


# Raw image tuples are used on hot paths; Permutation wraps them at the API.
Images = tuple[int, ...]


def compose_images(a: Images, b: Images) -> Images:
    """a ∘ b: apply b first."""
    return tuple(a[x - 1] for x in b)


def inverse_images(a: Images) -> Images:
    result = [0] * len(a)
    for point, image in enumerate(a, start=1):
        result[image - 1] = point
    return tuple(result)


def cycles_of(images: Images) -> tuple[tuple[int, ...], ...]:
    seen = [False] * len(images)
    cycles = []
    for start in range(1, len(images) + 1):
        if seen[start - 1]:
            continue
        cycle = []
        point = start
        while not seen[point - 1]:
            seen[point - 1] = True
            cycle.append(point)
            point = images[point - 1]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def canonical_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    shift = cycle.index(min(cycle))
    return cycle[shift:] + cycle[:shift]


def cycle_type_of(images: Images) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles_of(images)), reverse=True))


def sigma_images(parts: tuple[int, ...]) -> Images:
    images = []
    start = 1
    for part in parts:
        block = list(range(start, start + part))
        images.extend(block[1:] + block[:1])
        start += part
    return tuple(images)


def transposition_images(degree: int) -> list[Images]:
    result = []
    for a, b in itertools.combinations(range(1, degree + 1), 2):
        images = list(range(1, degree + 1))
        images[a - 1], images[b - 1] = b, a
        result.append(tuple(images))
    return result


def conjugator_images(sigma: Images, target: Images) -> Iterator[Images]:
    """
    Every τ with τ ∘ sigma ∘ τ⁻¹ = target. Each cycle of sigma is sent onto
    an unused target cycle of the same length, in every rotation.
    """
    source_cycles = cycles_of(sigma)
    target_cycles = cycles_of(target)
    if sorted(map(len, source_cycles)) != sorted(map(len, target_cycles)):
        return

    tau = [0] * len(sigma)
    used = [False] * len(target_cycles)

    def assign(position: int) -> Iterator[Images]:
        if position == len(source_cycles):
            yield tuple(tau)
            return
        cycle = source_cycles[position]
        m = len(cycle)
        for index, candidate in enumerate(target_cycles):
            if used[index] or len(candidate) != m:
                continue
            used[index] = True
            for rotation in range(m):
                for j, point in enumerate(cycle):
                    tau[point - 1] = candidate[(rotation + j) % m]
                yield from assign(position + 1)
            used[index] = False

    yield from assign(0)


def _check_degrees(*perms: Permutation):
    degrees = {p.degree for p in perms}
    if len(degrees) != 1:
        raise DegreeMismatchError(f"permutations of different degrees {sorted(degrees)}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    _check_degrees(a, b)
    return Permutation.model_construct(images=compose_images(a.images, b.images))


def inverse(a: Permutation) -> Permutation:
    return Permutation.model_construct(images=inverse_images(a.images))


def conjugate(sigma: Permutation, tau: Permutation) -> Permutation:
    """σ^τ as the map τ ∘ σ ∘ τ⁻¹ (points relabelled by τ)."""
    _check_degrees(sigma, tau)
    return compose(tau, compose(sigma, inverse(tau)))


def sigma_from_composition(c: Composition) -> Permutation:
    return Permutation.model_construct(images=sigma_images(c.parts))


def cycle_decomposition(sigma: Permutation) -> CycleDecomposition:
    return CycleDecomposition(degree=sigma.degree, cycles=cycles_of(sigma.images))


def cycle_type(sigma: Permutation) -> tuple[int, ...]:
    return cycle_type_of(sigma.images)


def centralizer_order(c: Composition) -> int:
    order = 1
    for length, multiplicity in Counter(c.parts).items():
        order *= length**multiplicity * math.factorial(multiplicity)
    return order


def enumerate_transpositions(d: int) -> list[Permutation]:
    return [Permutation.model_construct(images=images) for images in transposition_images(d)]


def conjugators(sigma: Permutation, target: Permutation) -> list[Permutation]:
    _check_degrees(sigma, target)
    return [
        Permutation.model_construct(images=images)
        for images in conjugator_images(sigma.images, target.images)
    ]


def composition_parts(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of total into exactly ``parts`` positive parts, lexicographic."""
    if parts < 1 or total < parts:
        return
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0, *cuts, total)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def compositions(total: int, parts: int) -> Iterator[Composition]:
    for value in composition_parts(total, parts):
        yield Composition(parts=value)


def partition_count(d: int) -> int:
    ways = [1] + [0] * d
    for part in range(1, d + 1):
        for n in range(part, d + 1):
            ways[n] += ways[n - part]
    return ways[d]
