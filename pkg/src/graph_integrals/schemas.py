from collections import defaultdict
from fractions import Fraction
from math import prod

from pydantic import ConfigDict, PositiveInt, computed_field, model_validator

from src.graph_enum.schemas import vertex_rank
from src.schemas import BigInt, HurwitzBase


class EdgeFlow(HurwitzBase):
    """
    Positive integer degree on every edge instance (parallel edges are
    separate instances), conserved at each x.
    """
    model_config = ConfigDict(frozen=True)

    edges: tuple[tuple[str, str], ...]
    degrees: tuple[PositiveInt, ...]

    @model_validator(mode="after")
    def validate_conservation(self):
        if len(self.edges) != len(self.degrees):
            raise ValueError("one degree per edge instance")
        balance: dict[str, int] = defaultdict(int)
        for (u, v), degree in zip(self.edges, self.degrees):
            balance[u] -= degree
            balance[v] += degree
        for vertex, net in balance.items():
            if vertex_rank(vertex)[0] == 1 and net != 0:
                raise ValueError(f"flow not conserved at {vertex}")
        return self

    def weight(self) -> int:
        return prod(self.degrees)


class ExactCoefficient(HurwitzBase):
    """I_Γ coefficient of ∏z^d ∏w^-e for one graph, and F_Γ = I_Γ / #Aut."""
    graph: str
    aut: PositiveInt
    integral: BigInt

    @property
    def value(self) -> Fraction:
        return Fraction(self.integral, self.aut)

    @computed_field
    @property
    def f_gamma(self) -> str:
        return str(self.value)


class NumericCheck(HurwitzBase):
    graph: str
    quadrature_re: float
    quadrature_im: float
    series_re: float
    series_im: float
    truncation: PositiveInt
    relative_error: float
    agrees: bool
