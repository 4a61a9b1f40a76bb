try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum
from typing import Sequence

from pydantic import ConfigDict, Field, NonNegativeInt, model_validator

from src.core_permutations.schemas import Composition, Permutation
from src.schemas import BigInt, HurwitzBase


class CountMethod(StrEnum):
    FAST = "fast"
    BRUTEFORCE = "bruteforce"


class CountKey(HurwitzBase):
    """Subscripts b; d_1..d_k; e_1..e_l. Keys with Σd ≠ Σe are legal."""
    model_config = ConfigDict(frozen=True)

    b: NonNegativeInt
    d_comp: Composition = Field(alias="d")
    e_comp: Composition = Field(alias="e")

    @classmethod
    def build(cls, b: int, d: Sequence[int], e: Sequence[int]) -> "CountKey":
        return cls(b=b, d=tuple(d), e=tuple(e))

    @property
    def k(self) -> int:
        return len(self.d_comp.parts)

    @property
    def l(self) -> int:
        return len(self.e_comp.parts)

    @property
    def degree(self) -> int | None:
        """Common total, or None when the totals differ."""
        if self.d_comp.total != self.e_comp.total:
            return None
        return self.d_comp.total

    def __str__(self) -> str:
        return f"b={self.b};d={self.d_comp};e={self.e_comp}"


class FactorizationTuple(HurwitzBase):
    """(g_1, ..., g_b, τ) with g_b⋯g_1·σ_d = (σ_e)^τ."""
    model_config = ConfigDict(frozen=True)

    transpositions: tuple[Permutation, ...]
    tau: Permutation

    @model_validator(mode="after")
    def validate_degrees(self):
        degree = self.tau.degree
        for g in self.transpositions:
            if g.degree != degree:
                raise ValueError("all permutations must share one degree")
            if not g.is_transposition():
                raise ValueError(f"{g} is not a transposition")
        return self

    @property
    def degree(self) -> int:
        return self.tau.degree


class CoefficientRow(HurwitzBase):
    key: CountKey
    n: BigInt


class CoefficientTable(HurwitzBase):
    """Coefficients n_{b;d;e} of F_{b,k,l} for Σd = Σe ≤ d_max."""
    b: NonNegativeInt
    k: int = Field(ge=1)
    l: int = Field(ge=1)
    d_max: int = Field(ge=1)
    method: CountMethod = CountMethod.FAST
    rows: list[CoefficientRow] = []

    def as_dict(self) -> dict[CountKey, int]:
        return {row.key: row.n for row in self.rows}

    def get(self, d: Sequence[int], e: Sequence[int]) -> int:
        return self.as_dict().get(CountKey.build(self.b, d, e), 0)
