"""The directed graphs Σⁿ and Γⁿ whose graph algebras model quantum spheres and balls."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterator, List, Tuple

import networkx as nx

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """
    Vertices ``0..n``; an edge ``(i, j)`` runs from v_i to v_j.

    ``name`` identifies the family ("sigma" or "gamma") so that maps and
    faithful models can be looked up; custom graphs use any other name.
    """

    name: str
    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        for i, j in self.edges:
            if not (0 <= i <= self.n and 0 <= j <= self.n):
                raise ValueError(f"edge ({i},{j}) leaves the vertex set 0..{self.n}")

    @cached_property
    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @property
    def vertices(self) -> List[int]:
        return list(range(self.n + 1))

    @property
    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    @staticmethod
    def source(e: Edge) -> int:
        return e[0]

    @staticmethod
    def range(e: Edge) -> int:
        return e[1]

    def edges_from(self, v: int) -> List[Edge]:
        return sorted((v, w) for w in self.digraph.successors(v))

    def edges_into(self, v: int) -> List[Edge]:
        return sorted((w, v) for w in self.digraph.predecessors(v))

    @cached_property
    def sinks(self) -> FrozenSet[int]:
        return frozenset(v for v, out in self.digraph.out_degree() if out == 0)

    def is_sink(self, v: int) -> bool:
        return v in self.sinks

    @property
    def label(self) -> str:
        symbol = {"sigma": "Σ", "gamma": "Γ"}.get(self.name, self.name)
        return f"{symbol}^{self.n}"

    def paths(self, max_length: int) -> Iterator[Tuple[Edge, ...]]:
        """All edge paths of length 1..max_length, shortest first, lexicographic within a length."""
        frontier: List[Tuple[Edge, ...]] = [(e,) for e in self.sorted_edges]
        length = 1
        while frontier and length <= max_length:
            yield from frontier
            frontier = [p + (e,) for p in frontier for e in self.edges_from(p[-1][1])]
            length += 1

    def to_json(self) -> dict:
        return {
            "graph": self.label,
            "vertices": self.vertices,
            "edges": [list(e) for e in self.sorted_edges],
            "sinks": sorted(self.sinks),
        }


def graph_sigma(n: int) -> Graph:
    """Σⁿ: an edge e_ij for every i ≤ j ≤ n."""
    if n < 0:
        raise ValueError(f"graph_sigma needs n >= 0, got {n}")
    return Graph("sigma", n, frozenset((i, j) for i in range(n + 1) for j in range(i, n + 1)))


def graph_gamma(n: int) -> Graph:
    """Γⁿ: Σⁿ without the loop e_nn, so v_n becomes a sink."""
    if n < 0:
        raise ValueError(f"graph_gamma needs n >= 0, got {n}")
    return Graph("gamma", n, graph_sigma(n).edges - {(n, n)})
