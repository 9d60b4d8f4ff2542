"""Finite directed multigraph model: parsing, paths, cycles, specializations.

Vertices and edges are named by string ids.  Declaration order is semantic:
it drives every canonical ordering in the package (sorted reports, canonical
cycle rotations, the default specialization).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Graph",
    "Path",
    "Cycle",
    "Specialization",
    "parse_graph",
    "descendants",
    "simple_cycles",
    "cycle_exits",
    "is_ne_cycle",
    "canonical_specialization",
    "GraphError",
    "GraphParseError",
    "GraphSyntaxError",
    "DuplicateIdError",
    "UnknownVertexError",
    "UnknownEdgeError",
    "NotACycleError",
    "CycleCapExceeded",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GraphError(ValueError):
    """Base class for graph-related errors."""


class GraphParseError(GraphError):
    """Invalid graph data; carries a 1-based line number when one is known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class GraphSyntaxError(GraphParseError):
    pass


class DuplicateIdError(GraphParseError):
    pass


class UnknownVertexError(GraphParseError):
    pass


class UnknownEdgeError(GraphParseError):
    pass


class NotACycleError(GraphError):
    pass


class CycleCapExceeded(GraphError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"cycle enumeration exceeded the cap of {cap}")


@dataclass(frozen=True)
class Path:
    """A vertex (length 0) or a composable edge sequence in a fixed graph."""

    source: str
    edges: tuple[str, ...]
    target: str

    @property
    def length(self) -> int:
        return len(self.edges)

    def is_closed(self) -> bool:
        return self.source == self.target

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else "@" + self.source


@dataclass(frozen=True)
class Cycle:
    """A closed path whose edge sources are pairwise distinct, stored in the
    rotation that starts at the smallest vertex."""

    path: Path
    sources: tuple[str, ...]

    @property
    def edges(self) -> tuple[str, ...]:
        return self.path.edges

    @property
    def length(self) -> int:
        return self.path.length

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.sources)

    def __str__(self) -> str:
        return "(" + " ".join(self.edges) + ")"


class Graph:
    """Immutable finite directed multigraph with declaration-ordered ids.

    Vertex ids and edge ids live in separate namespaces; each must be unique
    within its own.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]]):
        self._vertices = tuple(vertices)
        self._edges = tuple((e, s, t) for e, s, t in edges)
        seen: set[str] = set()
        for v in self._vertices:
            if v in seen:
                raise DuplicateIdError(f"duplicate vertex id {v!r}")
            seen.add(v)
        self._vindex = {v: i for i, v in enumerate(self._vertices)}
        self._eindex: dict[str, int] = {}
        self._src: dict[str, str] = {}
        self._dst: dict[str, str] = {}
        out: dict[str, list[str]] = {v: [] for v in self._vertices}
        inc: dict[str, list[str]] = {v: [] for v in self._vertices}
        for i, (e, s, t) in enumerate(self._edges):
            if e in self._eindex:
                raise DuplicateIdError(f"duplicate edge id {e!r}")
            if s not in self._vindex:
                raise UnknownVertexError(f"unknown vertex {s!r}")
            if t not in self._vindex:
                raise UnknownVertexError(f"unknown vertex {t!r}")
            self._eindex[e] = i
            self._src[e] = s
            self._dst[e] = t
            out[s].append(e)
            inc[t].append(e)
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}
        self._hash = hash((self._vertices, self._edges))

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[str, str, str], ...]:
        return self._edges

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e for e, _, _ in self._edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def has_edge(self, e: str) -> bool:
        return e in self._eindex

    def source_of(self, e: str) -> str:
        try:
            return self._src[e]
        except KeyError:
            raise UnknownEdgeError(f"unknown edge {e!r}") from None

    def target_of(self, e: str) -> str:
        try:
            return self._dst[e]
        except KeyError:
            raise UnknownEdgeError(f"unknown edge {e!r}") from None

    def out_edges(self, v: str) -> tuple[str, ...]:
        try:
            return self._out[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def in_edges(self, v: str) -> tuple[str, ...]:
        try:
            return self._in[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def is_sink(self, v: str) -> bool:
        return not self.out_edges(v)

    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self._vertices if not self._out[v])

    def vertex_index(self, v: str) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def edge_index(self, e: str) -> int:
        try:
            return self._eindex[e]
        except KeyError:
            raise UnknownEdgeError(f"unknown edge {e!r}") from None

    def sorted_vertices(self, ws: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(ws, key=self.vertex_index))

    # -- paths and cycles ------------------------------------------------

    def vertex_path(self, v: str) -> Path:
        if not self.has_vertex(v):
            raise UnknownVertexError(f"unknown vertex {v!r}")
        return Path(v, (), v)

    def edge_path(self, e: str) -> Path:
        return Path(self.source_of(e), (e,), self.target_of(e))

    def path(self, source: str, edges: Iterable[str] = ()) -> Path:
        """Build a validated path from ``source`` along ``edges``."""
        if not self.has_vertex(source):
            raise UnknownVertexError(f"unknown vertex {source!r}")
        cur = source
        edges = tuple(edges)
        for e in edges:
            if self.source_of(e) != cur:
                raise ValueError(f"edge {e!r} does not start at {cur!r}")
            cur = self.target_of(e)
        return Path(source, edges, cur)

    def concat(self, a: Path, b: Path) -> Path:
        if a.target != b.source:
            raise ValueError(f"paths do not compose: {a} ends at {a.target!r}, {b} starts at {b.source!r}")
        return Path(a.source, a.edges + b.edges, b.target)

    def path_key(self, p: Path):
        return (p.length, tuple(self.edge_index(e) for e in p.edges), self.vertex_index(p.source))

    def cycle(self, edges: Iterable[str]) -> Cycle:
        """Canonicalize ``edges`` as a cycle (rotated to the smallest start vertex)."""
        edges = tuple(edges)
        if not edges:
            raise NotACycleError("a cycle needs at least one edge")
        sources = tuple(self.source_of(e) for e in edges)
        if len(set(sources)) != len(sources):
            raise NotACycleError("edge sources repeat")
        p = self.path(sources[0], edges)
        if not p.is_closed():
            raise NotACycleError("edge sequence is not closed")
        i = min(range(len(edges)), key=lambda j: self.vertex_index(sources[j]))
        rot = edges[i:] + edges[:i]
        return Cycle(self.path(sources[i], rot), sources[i:] + sources[:i])

    def cycle_key(self, c: Cycle):
        return (c.length, tuple(self.edge_index(e) for e in c.edges))

    def check_cycle(self, c: Cycle) -> None:
        try:
            rebuilt = self.cycle(c.edges)
        except (GraphError, ValueError) as exc:
            raise NotACycleError(f"not a cycle of this graph: {exc}") from exc
        if rebuilt != c:
            raise NotACycleError("cycle does not belong to this graph")

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self._vertices == other._vertices
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({len(self._vertices)} vertices, {len(self._edges)} edges)"


class Specialization:
    """A total choice of one outgoing edge per non-sink vertex.

    The chosen edges are "special"; they decide which monomials count as
    normal form in the algebra.
    """

    def __init__(self, graph: Graph, choices: Mapping[str, str]):
        non_sinks = {v for v in graph.vertices if graph.out_edges(v)}
        if set(choices) != non_sinks:
            missing = non_sinks - set(choices)
            extra = set(choices) - non_sinks
            what = []
            if missing:
                what.append(f"missing {graph.sorted_vertices(missing)}")
            if extra:
                what.append(f"unexpected {tuple(sorted(extra))}")
            raise ValueError("specialization domain must be exactly the non-sink vertices: " + ", ".join(what))
        for v, e in choices.items():
            if graph.source_of(e) != v:
                raise ValueError(f"edge {e!r} does not start at {v!r}")
        self.graph = graph
        self._choices = {v: choices[v] for v in graph.vertices if v in choices}
        self.special_edges = frozenset(self._choices.values())
        self._key = (graph, tuple(self._choices.items()))

    def __getitem__(self, v: str) -> str:
        return self._choices[v]

    def get(self, v: str) -> str | None:
        return self._choices.get(v)

    def items(self):
        return self._choices.items()

    def is_special(self, e: str) -> bool:
        return e in self.special_edges

    def __eq__(self, other) -> bool:
        return isinstance(other, Specialization) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}->{e}" for v, e in self._choices.items())
        return f"Specialization({inner})"


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    Lines: ``# comment``, ``vertex <id>``, ``edge <id> <src-vertex> <dst-vertex>``.
    Blank lines are ignored.  Errors carry 1-based line numbers.
    """
    vertices: list[str] = []
    vset: set[str] = set()
    eset: set[str] = set()
    edges: list[tuple[str, str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise GraphSyntaxError("expected 'vertex <id>'", lineno)
            vid = tokens[1]
            if not _IDENT.match(vid):
                raise GraphSyntaxError(f"invalid identifier {vid!r}", lineno)
            if vid in vset:
                raise DuplicateIdError(f"duplicate vertex id {vid!r}", lineno)
            vset.add(vid)
            vertices.append(vid)
        elif tokens[0] == "edge":
            if len(tokens) != 4:
                raise GraphSyntaxError("expected 'edge <id> <src-vertex> <dst-vertex>'", lineno)
            eid, src, dst = tokens[1:]
            for ident in (eid, src, dst):
                if not _IDENT.match(ident):
                    raise GraphSyntaxError(f"invalid identifier {ident!r}", lineno)
            if eid in eset:
                raise DuplicateIdError(f"duplicate edge id {eid!r}", lineno)
            eset.add(eid)
            edges.append((eid, src, dst, lineno))
        else:
            raise GraphSyntaxError(f"unknown directive {tokens[0]!r}", lineno)
    for eid, src, dst, lineno in edges:
        if src not in vset:
            raise UnknownVertexError(f"unknown vertex {src!r}", lineno)
        if dst not in vset:
            raise UnknownVertexError(f"unknown vertex {dst!r}", lineno)
    return Graph(vertices, [(e, s, t) for e, s, t, _ in edges])


def descendants(g: Graph, v: str) -> frozenset[str]:
    """All vertices reachable from ``v`` by a path of length >= 0."""
    if not g.has_vertex(v):
        raise UnknownVertexError(f"unknown vertex {v!r}")
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for e in g.out_edges(u):
                t = g.target_of(e)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return frozenset(seen)


def simple_cycles(g: Graph, cap: int = 1_000_000) -> list[Cycle]:
    """Enumerate every cycle (closed path with distinct edge sources).

    Backtracking search anchored at each start vertex in turn; intermediate
    vertices are restricted to larger declaration indexes so each cycle is
    produced exactly once, already in canonical rotation.  Raises
    CycleCapExceeded if more than ``cap`` cycles are found.
    """
    found: list[Cycle] = []
    for start_idx, start in enumerate(g.vertices):
        stack: list[tuple[str, object]] = [(start, iter(g.out_edges(start)))]
        path_edges: list[str] = []
        on_path = {start}
        while stack:
            v, it = stack[-1]
            e = next(it, None)  # type: ignore[arg-type]
            if e is None:
                stack.pop()
                if path_edges:
                    last = path_edges.pop()
                    on_path.discard(g.target_of(last))
                continue
            t = g.target_of(e)
            if t == start:
                if len(found) >= cap:
                    raise CycleCapExceeded(cap)
                found.append(g.cycle(tuple(path_edges) + (e,)))
            elif g.vertex_index(t) > start_idx and t not in on_path:
                path_edges.append(e)
                on_path.add(t)
                stack.append((t, iter(g.out_edges(t))))
    found.sort(key=g.cycle_key)
    return found


def cycle_exits(g: Graph, c: Cycle) -> list[str]:
    """Edges that leave a cycle vertex but are not part of the cycle."""
    g.check_cycle(c)
    members = set(c.edges)
    verts = c.vertex_set
    return [e for e, s, _ in g.edges if s in verts and e not in members]


def is_ne_cycle(g: Graph, c: Cycle) -> bool:
    """True when the cycle has no exits."""
    return not cycle_exits(g, c)


def canonical_specialization(g: Graph) -> Specialization:
    """The default specialization: the first declared outgoing edge at each non-sink."""
    return Specialization(g, {v: g.out_edges(v)[0] for v in g.vertices if g.out_edges(v)})
