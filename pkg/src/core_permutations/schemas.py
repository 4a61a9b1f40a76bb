from typing import Sequence

from pydantic import ConfigDict, Field, PositiveInt, field_validator, model_serializer, model_validator

from src.schemas import HurwitzBase


class Permutation(HurwitzBase):
    """
    Element of S_d. ``images[i - 1]`` is the image of point ``i``; points
    are labelled 1..d.
    """
    model_config = ConfigDict(frozen=True)

    images: tuple[PositiveInt, ...] = Field(min_length=1)

    @field_validator("images")
    @classmethod
    def validate_bijection(cls, value: tuple[int, ...]):
        if sorted(value) != list(range(1, len(value) + 1)):
            raise ValueError(f"images {value} is not a bijection of 1..{len(value)}")
        return value

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(images=tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(1, degree + 1))
        for cycle in cycles:
            for position, point in enumerate(cycle):
                images[point - 1] = cycle[(position + 1) % len(cycle)]
        return cls(images=tuple(images))

    @classmethod
    def transposition(cls, degree: int, a: int, b: int) -> "Permutation":
        if a == b:
            raise ValueError("transposition needs two distinct points")
        return cls.from_cycles(degree, [(a, b)])

    def is_transposition(self) -> bool:
        moved = [i for i, image in enumerate(self.images, start=1) if image != i]
        return len(moved) == 2

    def __str__(self) -> str:
        return str(self.images)


class Composition(HurwitzBase):
    """Ordered tuple of positive parts. Serializes as a bare list."""
    model_config = ConfigDict(frozen=True)

    parts: tuple[PositiveInt, ...] = Field(min_length=1)

    @model_validator(mode="before")
    @classmethod
    def from_sequence(cls, value):
        if isinstance(value, (list, tuple)):
            return {"parts": tuple(value)}
        return value

    @model_serializer
    def serialize_parts(self) -> list[int]:
        return list(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def partial_sums(self) -> tuple[int, ...]:
        """d̃_0 = 0, d̃_1, ..., d̃_k."""
        sums = [0]
        for part in self.parts:
            sums.append(sums[-1] + part)
        return tuple(sums)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


class CycleDecomposition(HurwitzBase):
    """
    Cycles of a permutation, fixed points included as 1-cycles. Each cycle
    starts at its smallest point; cycles are ordered by that point.
    """
    model_config = ConfigDict(frozen=True)

    degree: PositiveInt
    cycles: tuple[tuple[PositiveInt, ...], ...]

    @model_validator(mode="after")
    def validate_partition(self):
        points = sorted(point for cycle in self.cycles for point in cycle)
        if points != list(range(1, self.degree + 1)):
            raise ValueError(f"cycles do not partition 1..{self.degree}")
        return self

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(cycle) for cycle in self.cycles)

    def to_permutation(self) -> Permutation:
        return Permutation.from_cycles(self.degree, self.cycles)
