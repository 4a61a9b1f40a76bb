import re
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum
from typing import Mapping

from pydantic import ConfigDict, NonNegativeInt, PositiveInt, model_validator

from src.schemas import HurwitzBase


class GraphClassVariant(StrEnum):
    STANDARD = "standard"  # {out, in} = {1, 2} at every x
    EXTENDED = "extended"  # {1, 2} or {0, 3}


_KIND_RANK = {"z": 0, "x": 1, "w": 2}
_LABEL = re.compile(r"^([zxw])([1-9]\d*)$")
_TOKEN = re.compile(r"^([zxw][1-9]\d*)->([zxw][1-9]\d*):([1-9]\d*)$")


def vertex_rank(label: str) -> tuple[int, int]:
    match = _LABEL.match(label)
    if match is None:
        raise ValueError(f"bad vertex label {label!r}")
    return _KIND_RANK[match.group(1)], int(match.group(2))


def precedes(u: str, v: str) -> bool:
    """The partial order: z < x < w, and x_i < x_j iff i < j."""
    (u_kind, u_index), (v_kind, v_index) = vertex_rank(u), vertex_rank(v)
    if u_kind != v_kind:
        return u_kind < v_kind
    return u_kind == _KIND_RANK["x"] and u_index < v_index


def vertex_order(b: int, k: int, l: int) -> list[str]:
    return (
        [f"z{i}" for i in range(1, k + 1)]
        + [f"x{i}" for i in range(1, b + 1)]
        + [f"w{i}" for i in range(1, l + 1)]
    )


class Edge(HurwitzBase):
    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    multiplicity: PositiveInt

    def token(self) -> str:
        return f"{self.source}->{self.target}:{self.multiplicity}"


class FeynmanGraph(HurwitzBase):
    """
    Labelled oriented multigraph on z_1..z_k, x_1..x_b, w_1..w_l. Vertices
    carry labels, so the sorted multiplicity map is the canonical form.
    """
    model_config = ConfigDict(frozen=True)

    b: NonNegativeInt
    k: PositiveInt
    l: PositiveInt
    edges: tuple[Edge, ...] = ()

    @model_validator(mode="after")
    def validate_edges(self):
        labels = set(vertex_order(self.b, self.k, self.l))
        previous = None
        for edge in self.edges:
            if edge.source not in labels or edge.target not in labels:
                raise ValueError(f"edge {edge.token()} leaves the vertex set")
            if not precedes(edge.source, edge.target):
                raise ValueError(f"edge {edge.token()} violates the vertex order")
            pair = vertex_rank(edge.source), vertex_rank(edge.target)
            if previous is not None and pair <= previous:
                raise ValueError("edges must be sorted and pairwise distinct")
            previous = pair
        return self

    @classmethod
    def from_multiplicity(cls, b: int, k: int, l: int, multiplicity: Mapping[tuple[str, str], int]) -> "FeynmanGraph":
        pairs = sorted(
            (pair for pair, m in multiplicity.items() if m > 0),
            key=lambda pair: (vertex_rank(pair[0]), vertex_rank(pair[1])),
        )
        edges = tuple(Edge(source=u, target=v, multiplicity=multiplicity[(u, v)]) for u, v in pairs)
        return cls(b=b, k=k, l=l, edges=edges)

    @classmethod
    def from_tokens(cls, b: int, k: int, l: int, text: str) -> "FeynmanGraph":
        multiplicity: dict[tuple[str, str], int] = {}
        for token in text.split():
            match = _TOKEN.match(token)
            if match is None:
                raise ValueError(f"bad edge token {token!r}")
            u, v, m = match.group(1), match.group(2), int(match.group(3))
            multiplicity[(u, v)] = multiplicity.get((u, v), 0) + m
        return cls.from_multiplicity(b, k, l, multiplicity)

    def multiplicity_map(self) -> dict[tuple[str, str], int]:
        return {(edge.source, edge.target): edge.multiplicity for edge in self.edges}

    def out_degree(self, vertex: str) -> int:
        return sum(edge.multiplicity for edge in self.edges if edge.source == vertex)

    def in_degree(self, vertex: str) -> int:
        return sum(edge.multiplicity for edge in self.edges if edge.target == vertex)

    def vertices(self) -> list[str]:
        return vertex_order(self.b, self.k, self.l)

    def tokens(self) -> str:
        return " ".join(edge.token() for edge in self.edges)

    def __str__(self) -> str:
        return self.tokens()
