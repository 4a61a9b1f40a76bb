from pydantic import NonNegativeInt, PositiveInt, model_validator

from src.cover_counts.schemas import CountKey
from src.schemas import BigInt, HurwitzBase


class BosonRow(HurwitzBase):
    key: CountKey
    oracle: BigInt
    graph_sum: BigInt
    match: bool

    @model_validator(mode="after")
    def validate_match(self):
        if self.match != (self.oracle == self.graph_sum):
            raise ValueError(f"match flag inconsistent for {self.key}")
        return self


class BosonReport(HurwitzBase):
    """Cover counts against Σ_Γ I_Γ/#Aut(Γ), key by key."""
    b_max: NonNegativeInt
    k_max: PositiveInt
    l_max: PositiveInt
    d_max: PositiveInt
    rows: list[BosonRow] = []
    mismatches: list[CountKey] = []

    @property
    def all_match(self) -> bool:
        return not self.mismatches


class PropositionRow(HurwitzBase):
    key: CountKey
    graph: str
    count: BigInt
    f_gamma: str
    match: bool


class PropositionReport(HurwitzBase):
    """Graph-by-graph refinement: n_Γ against I_Γ/#Aut(Γ)."""
    b_max: NonNegativeInt
    k_max: PositiveInt
    l_max: PositiveInt
    d_max: PositiveInt
    rows: list[PropositionRow] = []
    mismatches: list[PropositionRow] = []

    @property
    def all_match(self) -> bool:
        return not self.mismatches


class FermionRow(HurwitzBase):
    b: NonNegativeInt
    d: PositiveInt
    lhs: BigInt
    rhs: BigInt
    match: bool

    @model_validator(mode="after")
    def validate_match(self):
        if self.match != (self.lhs == self.rhs):
            raise ValueError(f"match flag inconsistent for b={self.b} d={self.d}")
        return self


class FermionReport(HurwitzBase):
    """n_{b;(d);(d)} against the coefficient of q^d λ^b/b! in the fermionic product."""
    b_max: NonNegativeInt
    d_max: PositiveInt
    rows: list[FermionRow] = []
    mismatches: list[FermionRow] = []

    @property
    def all_match(self) -> bool:
        return not self.mismatches
