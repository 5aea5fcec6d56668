"""Directed graphs on a central vertex, aerial vertices, and a cyclically
ordered boundary, with ordered stars.

Vertex encoding: type I vertices are the ints 0..n with 0 the central
vertex; the boundary (type II) vertex kbar is the int -(k+1).  Only type I
vertices emit edges; no edge may target the central vertex; tadpoles are
forbidden.  The star of each type I vertex is an ordered tuple of targets,
and the central star is the ordered set of central edges.

The canonical text encoding is `n,m;SRC>TGT,...|...` with one star segment
per type I vertex in vertex order, boundary targets written `2b` etc.
Example: `0,2;0>0b,0>1b`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator


def boundary_vertex(k: int) -> int:
    """Internal id of the boundary vertex kbar."""
    if k < 0:
        raise ValueError("boundary index must be nonnegative")
    return -(k + 1)


def is_boundary(v: int) -> bool:
    return v < 0


def boundary_index(v: int) -> int:
    if v >= 0:
        raise ValueError(f"{v} is not a boundary vertex")
    return -v - 1


def vertex_sort_key(v: int) -> tuple[int, int]:
    """Canonical target order: aerial vertices first, then boundary, each
    ascending."""
    if is_boundary(v):
        return (1, boundary_index(v))
    return (0, v)


def format_vertex(v: int) -> str:
    return f"{boundary_index(v)}b" if is_boundary(v) else str(v)


def parse_vertex(text: str) -> int:
    text = text.strip()
    if text.endswith("b"):
        return boundary_vertex(int(text[:-1]))
    return int(text)


class GraphError(ValueError):
    """Invalid graph data or encoding."""


@dataclass(frozen=True)
class GraphSignature:
    """Degree data determining whether a graph can carry weight."""

    central_degree: int
    aerial_degrees: tuple[int, ...]
    edge_count: int
    dimension: int

    @property
    def weight_can_be_nonzero(self) -> bool:
        return self.edge_count == self.dimension


class ShoikhetGraph:
    """Immutable graph with ordered stars.

    nTypeI aerial vertices 1..n plus the central vertex 0; boundary
    vertices 0bar..mbar (so nTypeII = m counts the cycled labels).
    """

    __slots__ = ("n", "m", "stars", "_hash")

    def __init__(self, n: int, m: int, stars):
        if n < 0 or m < 0:
            raise GraphError("vertex counts must be nonnegative")
        stars = tuple(tuple(s) for s in stars)
        if len(stars) != n + 1:
            raise GraphError(f"expected {n + 1} stars, got {len(stars)}")
        for src, star in enumerate(stars):
            for tgt in star:
                if tgt == 0:
                    raise GraphError("no edge may target the central vertex")
                if tgt == src:
                    raise GraphError(f"tadpole at vertex {src}")
                if is_boundary(tgt):
                    if boundary_index(tgt) > m:
                        raise GraphError(f"boundary target {format_vertex(tgt)} out of range")
                elif not 1 <= tgt <= n:
                    raise GraphError(f"aerial target {tgt} out of range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "stars", stars)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ShoikhetGraph is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def central_star(self) -> tuple[int, ...]:
        return self.stars[0]

    def edges(self) -> list[tuple[int, int]]:
        """All edges in wedge-row order: central star first, then each
        aerial star in vertex order, each in star order."""
        out = []
        for src, star in enumerate(self.stars):
            out.extend((src, tgt) for tgt in star)
        return out

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.stars)

    @property
    def dimension(self) -> int:
        """Dimension of the integration domain: 2n + m."""
        return 2 * self.n + self.m

    def signature(self) -> GraphSignature:
        return GraphSignature(
            central_degree=len(self.stars[0]),
            aerial_degrees=tuple(len(s) for s in self.stars[1:]),
            edge_count=self.edge_count,
            dimension=self.dimension,
        )

    def in_edges(self, v: int) -> int:
        """Number of edges targeting v."""
        return sum(star.count(v) for star in self.stars)

    # -- encoding ----------------------------------------------------------

    def encode(self) -> str:
        segments = []
        for src, star in enumerate(self.stars):
            segments.append(",".join(f"{src}>{format_vertex(t)}" for t in star))
        return f"{self.n},{self.m};" + "|".join(segments)

    @classmethod
    def decode(cls, text: str) -> "ShoikhetGraph":
        try:
            header, sep, body = text.strip().partition(";")
            if not sep:
                raise ValueError("missing ';'")
            n_str, m_str = header.split(",")
            n, m = int(n_str), int(m_str)
        except ValueError as exc:
            raise GraphError(f"malformed graph encoding {text!r}") from exc
        segments = body.split("|")
        if len(segments) != n + 1:
            raise GraphError(
                f"encoding {text!r}: expected {n + 1} star segments, got {len(segments)}"
            )
        stars = []
        for src, segment in enumerate(segments):
            star = []
            if segment:
                for item in segment.split(","):
                    left, sep, right = item.partition(">")
                    if not sep:
                        raise GraphError(f"encoding {text!r}: malformed edge {item!r}")
                    try:
                        source = int(left)
                        target = parse_vertex(right)
                    except ValueError as exc:
                        raise GraphError(f"encoding {text!r}: malformed edge {item!r}") from exc
                    if source != src:
                        raise GraphError(
                            f"encoding {text!r}: edge {item!r} listed under vertex {src}"
                        )
                    star.append(target)
            stars.append(tuple(star))
        return cls(n, m, stars)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ShoikhetGraph):
            return NotImplemented
        return (self.n, self.m, self.stars) == (other.n, other.m, other.stars)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.m, self.stars)))
        return self._hash

    def __repr__(self):
        return f"ShoikhetGraph('{self.encode()}')"


# -- the sigma / s calculus ---------------------------------------------------


def shift_graph(graph: ShoikhetGraph) -> ShoikhetGraph:
    """Cyclic relabeling of the boundary vertices 1bar..mbar (0bar fixed):
    kbar -> (k mod m + 1)bar.  Star orderings travel with the relabeling.
    Applying it m times is the identity."""
    m = graph.m
    if m <= 1:
        return graph

    def relabel(v: int) -> int:
        if is_boundary(v):
            k = boundary_index(v)
            if k >= 1:
                return boundary_vertex(k % m + 1)
        return v

    stars = tuple(tuple(relabel(t) for t in star) for star in graph.stars)
    return ShoikhetGraph(graph.n, m, stars)


def shift_graph_power(graph: ShoikhetGraph, i: int) -> ShoikhetGraph:
    """sigma^i, with negative powers via the cycle length m."""
    m = graph.m
    steps = i % m if m > 0 else 0
    out = graph
    for _ in range(steps):
        out = shift_graph(out)
    return out


def stabilize_graph(graph: ShoikhetGraph) -> ShoikhetGraph | None:
    """Delete the boundary vertex 0bar and renumber kbar -> (k-1)bar.

    Returns None (the empty graph) if an edge targets 0bar; requires at
    least two boundary vertices."""
    if graph.m < 1:
        raise GraphError("stabilization needs at least two boundary vertices")
    zero_bar = boundary_vertex(0)
    if graph.in_edges(zero_bar):
        return None

    def relabel(v: int) -> int:
        if is_boundary(v):
            return boundary_vertex(boundary_index(v) - 1)
        return v

    stars = tuple(tuple(relabel(t) for t in star) for star in graph.stars)
    return ShoikhetGraph(graph.n, graph.m - 1, stars)


def delete_central_edge(graph: ShoikhetGraph, i: int) -> ShoikhetGraph:
    """Remove the i-th central edge (1-based), preserving the remaining
    star order."""
    star = graph.stars[0]
    if not 1 <= i <= len(star):
        raise GraphError(f"central edge index {i} out of range (1..{len(star)})")
    new_star = star[: i - 1] + star[i:]
    return ShoikhetGraph(graph.n, graph.m, (new_star,) + graph.stars[1:])


def reorder_central_star(graph: ShoikhetGraph, i: int) -> tuple[ShoikhetGraph, int]:
    """Move the i-th central edge (1-based) to the first position.

    Returns the reordered graph and the sign (-1)^(i+1) of the permutation
    of the wedge factors."""
    star = graph.stars[0]
    if not 1 <= i <= len(star):
        raise GraphError(f"central edge index {i} out of range (1..{len(star)})")
    new_star = (star[i - 1],) + star[: i - 1] + star[i:]
    sign = -1 if i % 2 == 0 else 1
    return ShoikhetGraph(graph.n, graph.m, (new_star,) + graph.stars[1:]), sign


# -- enumeration --------------------------------------------------------------


def enumerate_graphs(
    n: int, m: int, central_degree: int, aerial_degrees
) -> Iterator[ShoikhetGraph]:
    """All graphs with the given out-degrees, canonical star order, no
    repeated targets within a star.

    Repeated targets are excluded because two parallel edges carry the same
    one-form, so such graphs never contribute weight.  Deterministic order:
    lexicographic in the canonical target order, vertex by vertex.
    """
    aerial_degrees = tuple(aerial_degrees)
    if len(aerial_degrees) != n:
        raise GraphError(f"expected {n} aerial degrees, got {len(aerial_degrees)}")
    if central_degree < 0 or any(k < 0 for k in aerial_degrees):
        raise GraphError("degrees must be nonnegative")

    per_vertex = []
    for src in range(n + 1):
        degree = central_degree if src == 0 else aerial_degrees[src - 1]
        pool = [v for v in range(1, n + 1) if v != src]
        pool += [boundary_vertex(k) for k in range(m + 1)]
        pool.sort(key=vertex_sort_key)
        per_vertex.append(list(combinations(pool, degree)))

    for stars in product(*per_vertex):
        yield ShoikhetGraph(n, m, stars)
