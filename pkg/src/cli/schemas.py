try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum
from pathlib import Path

from pydantic import Field, NonNegativeInt, PositiveInt, model_validator

from src.config import settings
from src.cover_counts.schemas import CountKey, CountMethod
from src.graph_enum.schemas import GraphClassVariant
from src.graph_integrals.schemas import ExactCoefficient, NumericCheck
from src.schemas import BigInt, HurwitzBase


class Command(StrEnum):
    COUNT = "count"
    GRAPHS = "graphs"
    INTEGRAL = "integral"
    VERIFY_BOSON = "verify-boson"
    VERIFY_FERMION = "verify-fermion"
    TABLE = "table"


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class RunConfig(HurwitzBase):
    command: Command

    b: NonNegativeInt = 0
    k: PositiveInt = 1
    l: PositiveInt = 1
    d: list[PositiveInt] | None = None
    e: list[PositiveInt] | None = None

    b_max: NonNegativeInt = 0
    k_max: PositiveInt = 1
    l_max: PositiveInt = 1
    d_max: PositiveInt = 1

    variant: GraphClassVariant = GraphClassVariant.STANDARD
    method: CountMethod = CountMethod.FAST
    per_graph: bool = False

    work_bound: PositiveInt = Field(default_factory=lambda: settings.work_bound)
    threads: PositiveInt = Field(default_factory=lambda: settings.threads)

    output_format: OutputFormat = OutputFormat.TEXT
    output_path: Path | None = None

    numeric_check: bool = False
    quadrature_points: int = Field(default_factory=lambda: settings.quadrature_points, ge=64)
    z: float = 0.2
    w: float = 1.0
    truncation: PositiveInt | None = None

    @model_validator(mode="after")
    def validate_degrees(self):
        if self.command in (Command.COUNT, Command.INTEGRAL) and (self.d is None or self.e is None):
            raise ValueError(f"{self.command} needs both --d and --e")
        return self

    def count_key(self) -> CountKey:
        return CountKey.build(self.b, self.d, self.e)


class RunResult(HurwitzBase):
    exit_code: int
    output: str = ""
    error: str | None = None


class CountReport(HurwitzBase):
    key: CountKey
    n: BigInt
    method: CountMethod


class GraphEntry(HurwitzBase):
    graph: str
    aut: PositiveInt


class GraphListReport(HurwitzBase):
    b: NonNegativeInt
    k: PositiveInt
    l: PositiveInt
    variant: GraphClassVariant
    graphs: list[GraphEntry] = []


class IntegralReport(HurwitzBase):
    key: CountKey
    variant: GraphClassVariant
    coefficients: list[ExactCoefficient] = []
    boson_sum: BigInt
    numeric: list[NumericCheck] = []

    @property
    def numeric_ok(self) -> bool:
        return all(check.agrees for check in self.numeric)
