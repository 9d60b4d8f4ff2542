"""Hereditary vertex-set calculus over a finite directed graph.

Covers annihilator sets, arrival paths with finiteness witnesses, minimal
hereditary sets, cycle equivalence of the minimal sets, the two Boolean
algebras they generate, and the structure report that predicts the center
of the associated Leavitt path algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import (
    Cycle,
    Graph,
    GraphError,
    Path,
    UnknownVertexError,
)

__all__ = [
    "NotHereditaryError",
    "NotFinitaryError",
    "FiniteArrivals",
    "InfiniteArrivals",
    "ClassSummand",
    "CenterReport",
    "is_hereditary",
    "perp",
    "arrival_paths",
    "is_finitary",
    "points_to",
    "minimal_hereditary_sets",
    "equivalence_classes",
    "class_support",
    "annihilator_boolean_algebra",
    "finitary_boolean_subalgebra",
    "center_structure",
]


class NotHereditaryError(GraphError):
    """The subset has an edge leaving it."""

    def __init__(self, subset: frozenset[str], message: str):
        self.subset = subset
        super().__init__(message)


class NotFinitaryError(GraphError):
    """The subset admits infinitely many arrival paths; carries a witness."""

    def __init__(self, subset: frozenset[str], witness: Cycle, connector: Path):
        self.subset = subset
        self.witness = witness
        self.connector = connector
        super().__init__(
            f"subset is not finitary: cycle {witness} stays outside it and reaches it via {connector}"
        )


@dataclass(frozen=True)
class FiniteArrivals:
    """Complete list of arrival paths, sorted by (length, edge ids)."""

    paths: tuple[Path, ...]

    def max_length(self) -> int:
        return max((p.length for p in self.paths), default=0)


@dataclass(frozen=True)
class InfiniteArrivals:
    """Marker that the arrival-path set is infinite, with a pumping witness."""

    witness: Cycle
    connector: Path


def _as_vertex_set(g: Graph, ws: Iterable[str]) -> frozenset[str]:
    W = frozenset(ws)
    for v in W:
        if not g.has_vertex(v):
            raise UnknownVertexError(f"unknown vertex {v!r}")
    return W


def is_hereditary(g: Graph, ws: Iterable[str]) -> bool:
    """True when every edge from the subset stays inside it."""
    W = _as_vertex_set(g, ws)
    return all(g.target_of(e) in W for v in W for e in g.out_edges(v))


def _require_hereditary(g: Graph, ws: Iterable[str]) -> frozenset[str]:
    W = _as_vertex_set(g, ws)
    for v in W:
        for e in g.out_edges(v):
            t = g.target_of(e)
            if t not in W:
                raise NotHereditaryError(W, f"not hereditary: edge {e!r} leaves the subset at {v!r} -> {t!r}")
    return W


def _reaching_set(g: Graph, W: frozenset[str]) -> frozenset[str]:
    """Vertices with a path (length >= 0) into ``W``."""
    seen = set(W)
    frontier = list(W)
    while frontier:
        nxt = []
        for v in frontier:
            for e in g.in_edges(v):
                s = g.source_of(e)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return frozenset(seen)


def perp(g: Graph, ws: Iterable[str]) -> frozenset[str]:
    """Vertices with no path into the subset (the annihilator complement)."""
    W = _as_vertex_set(g, ws)
    return frozenset(g.vertices) - _reaching_set(g, W)


def _double_perp(g: Graph, W: frozenset[str]) -> frozenset[str]:
    return perp(g, perp(g, W))


def _find_cycle_within(g: Graph, allowed: frozenset[str]) -> Cycle | None:
    """First cycle (in DFS order over declarations) whose vertices all lie in ``allowed``."""
    color: dict[str, int] = {}  # 0 = on the current DFS stack, 1 = finished
    for root in g.vertices:
        if root not in allowed or root in color:
            continue
        stack: list[tuple[str, object]] = [(root, iter(g.out_edges(root)))]
        color[root] = 0
        path_vertices = [root]
        path_edges: list[str] = []
        while stack:
            v, it = stack[-1]
            e = next(it, None)  # type: ignore[arg-type]
            if e is None:
                stack.pop()
                color[v] = 1
                path_vertices.pop()
                if path_edges:
                    path_edges.pop()
                continue
            t = g.target_of(e)
            if t not in allowed:
                continue
            if color.get(t) == 0:
                j = path_vertices.index(t)
                return g.cycle(tuple(path_edges[j:]) + (e,))
            if t not in color:
                color[t] = 0
                path_vertices.append(t)
                path_edges.append(e)
                stack.append((t, iter(g.out_edges(t))))
    return None


def is_finitary(g: Graph, ws: Iterable[str]) -> bool:
    """True when the subset has finitely many arrival paths.

    Equivalent to: no cycle disjoint from the subset reaches it.
    """
    W = _require_hereditary(g, ws)
    if not W:
        return True
    outside = _reaching_set(g, W) - W
    return _find_cycle_within(g, outside) is None


def _shortest_connector(g: Graph, c: Cycle, W: frozenset[str]) -> Path:
    """Breadth-first shortest path from a cycle vertex into ``W``."""
    parents: dict[str, tuple[str, str]] = {}
    seen = set(c.sources)
    queue = list(c.sources)
    while queue:
        nxt = []
        for v in queue:
            for e in g.out_edges(v):
                t = g.target_of(e)
                if t in seen:
                    continue
                seen.add(t)
                parents[t] = (v, e)
                if t in W:
                    edges = []
                    cur = t
                    while cur not in c.vertex_set:
                        prev, pe = parents[cur]
                        edges.append(pe)
                        cur = prev
                    edges.reverse()
                    return g.path(cur, edges)
                nxt.append(t)
        queue = nxt
    raise AssertionError("witness cycle does not reach the subset")


def arrival_paths(g: Graph, ws: Iterable[str]) -> FiniteArrivals | InfiniteArrivals:
    """All paths that end in the subset with every earlier source outside it.

    Each member vertex counts as a length-0 arrival path.  The empty subset
    has no arrival paths.  When the set is infinite, returns the witness
    cycle (disjoint from the subset) and a connector path into the subset.
    """
    W = _require_hereditary(g, ws)
    if not W:
        return FiniteArrivals(())
    outside = _reaching_set(g, W) - W
    witness = _find_cycle_within(g, outside)
    if witness is not None:
        return InfiniteArrivals(witness, _shortest_connector(g, witness, W))
    # induced subgraph on ``outside`` is acyclic here, so memoized DFS terminates
    memo: dict[str, tuple[tuple[str, ...], ...]] = {}

    def suffixes(v: str) -> tuple[tuple[str, ...], ...]:
        if v in memo:
            return memo[v]
        acc: list[tuple[str, ...]] = []
        for e in g.out_edges(v):
            t = g.target_of(e)
            if t in W:
                acc.append((e,))
            elif t in outside:
                acc.extend((e,) + rest for rest in suffixes(t))
        memo[v] = tuple(acc)
        return memo[v]

    paths = [g.vertex_path(w) for w in W]
    for v in outside:
        paths.extend(g.path(v, seq) for seq in suffixes(v))
    paths.sort(key=g.path_key)
    return FiniteArrivals(tuple(paths))


def points_to(g: Graph, c: Cycle, ws: Iterable[str]) -> bool:
    """True when the cycle avoids the subset but every cycle vertex reaches it."""
    g.check_cycle(c)
    W = _require_hereditary(g, ws)
    if not c.vertex_set.isdisjoint(W):
        return False
    reach = _reaching_set(g, W)
    return c.vertex_set <= reach


def _strong_components(g: Graph) -> list[frozenset[str]]:
    """Iterative Tarjan over declaration order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    out: list[frozenset[str]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work: list[tuple[str, object]] = [(root, iter(g.out_edges(root)))]
        while work:
            v, it = work[-1]
            advanced = False
            for e in it:  # type: ignore[attr-defined]
                t = g.target_of(e)
                if t not in index:
                    index[t] = low[t] = counter
                    counter += 1
                    stack.append(t)
                    on_stack.add(t)
                    work.append((t, iter(g.out_edges(t))))
                    advanced = True
                    break
                if t in on_stack:
                    low[v] = min(low[v], index[t])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(frozenset(comp))
    return out


def minimal_hereditary_sets(g: Graph) -> list[frozenset[str]]:
    """The minimal nonempty hereditary subsets: terminal strongly connected components."""
    if not g.vertices:
        raise ValueError("graph has no vertices")
    terminal = [
        S
        for S in _strong_components(g)
        if all(g.target_of(e) in S for v in S for e in g.out_edges(v))
    ]
    terminal.sort(key=lambda S: min(g.vertex_index(v) for v in S))
    return terminal


def _scc_contains_cycle(g: Graph, S: frozenset[str]) -> bool:
    return any(g.target_of(e) in S for v in S for e in g.out_edges(v))


def equivalence_classes(g: Graph) -> list[tuple[int, ...]]:
    """Partition of the minimal-set indexes under the shared-cycle relation.

    Two minimal sets are related when one cycle avoids both and reaches both.
    Every cycle lies inside a single strongly connected component and shares
    its reachability, so it suffices to scan the components that contain a
    cycle.
    """
    minimal = minimal_hereditary_sets(g)
    k = len(minimal)
    reach = [_reaching_set(g, W) for W in minimal]
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for S in _strong_components(g):
        if not _scc_contains_cycle(g, S):
            continue
        targets = [
            i for i in range(k) if S.isdisjoint(minimal[i]) and not S.isdisjoint(reach[i])
        ]
        for i, j in zip(targets, targets[1:]):
            union(i, j)

    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    classes = [tuple(sorted(members)) for members in groups.values()]
    classes.sort(key=lambda cls: cls[0])
    return classes


def class_support(g: Graph, members: Iterable[int]) -> frozenset[str]:
    """Double annihilator of the union of the minimal sets in one class."""
    cls = tuple(sorted(members))
    if cls not in equivalence_classes(g):
        raise ValueError(f"{cls!r} is not an equivalence class of this graph")
    minimal = minimal_hereditary_sets(g)
    union = frozenset().union(*(minimal[i] for i in cls))
    return _double_perp(g, union)


def _set_key(g: Graph, s: frozenset[str]):
    return (len(s), tuple(sorted(g.vertex_index(v) for v in s)))


def annihilator_boolean_algebra(g: Graph) -> list[frozenset[str]]:
    """All annihilator hereditary subsets: double annihilators of unions of
    minimal sets.  Exactly 2^k of them."""
    minimal = minimal_hereditary_sets(g)
    k = len(minimal)
    members = {
        _double_perp(g, frozenset().union(frozenset(), *(minimal[i] for i in range(k) if mask >> i & 1)))
        for mask in range(1 << k)
    }
    if len(members) != 1 << k:
        raise AssertionError("annihilator algebra must have exactly 2^k members")
    return sorted(members, key=lambda s: _set_key(g, s))


def finitary_boolean_subalgebra(g: Graph) -> list[frozenset[str]]:
    """All finitary annihilator hereditary subsets: Boolean joins of the class
    supports.  Exactly 2^m of them."""
    minimal = minimal_hereditary_sets(g)
    classes = equivalence_classes(g)
    m = len(classes)
    members = set()
    for mask in range(1 << m):
        picked = [i for j in range(m) if mask >> j & 1 for i in classes[j]]
        union = frozenset().union(frozenset(), *(minimal[i] for i in picked))
        members.add(_double_perp(g, union))
    if len(members) != 1 << m:
        raise AssertionError("finitary subalgebra must have exactly 2^m members")
    return sorted(members, key=lambda s: _set_key(g, s))


@dataclass(frozen=True)
class ClassSummand:
    """One equivalence class of minimal sets with its support and kind."""

    members: tuple[int, ...]
    support: frozenset[str]
    cycle: Cycle | None  # the covering exit-free cycle when the summand is Laurent

    @property
    def is_laurent(self) -> bool:
        return self.cycle is not None

    @property
    def cycle_length(self) -> int | None:
        return self.cycle.length if self.cycle is not None else None


@dataclass(frozen=True)
class CenterReport:
    """Structure of the center: one summand per equivalence class."""

    graph: Graph
    minimal_sets: tuple[frozenset[str], ...]
    summands: tuple[ClassSummand, ...]

    @property
    def laurent_count(self) -> int:
        return sum(1 for s in self.summands if s.is_laurent)

    @property
    def isomorphism(self) -> str:
        parts = ["F[t^-1,t]"] * self.laurent_count
        parts += ["F"] * (len(self.summands) - self.laurent_count)
        return " (+) ".join(parts)


def _ne_cycle_covering(g: Graph, W: frozenset[str]) -> Cycle | None:
    """The exit-free cycle whose vertex set is ``W``, if one exists.

    ``W`` must be a terminal strongly connected component; then it is covered
    by a single cycle exactly when every member has out-degree one.
    """
    if any(len(g.out_edges(v)) != 1 for v in W):
        return None
    start = min(W, key=g.vertex_index)
    edges = []
    v = start
    while True:
        e = g.out_edges(v)[0]
        edges.append(e)
        v = g.target_of(e)
        if v == start:
            break
    c = g.cycle(tuple(edges))
    if c.vertex_set != W:
        raise AssertionError("terminal component is not covered by its cycle")
    return c


def center_structure(g: Graph) -> CenterReport:
    """Predict the center: one Laurent summand per finitary exit-free cycle
    class, one field summand per remaining class."""
    minimal = tuple(minimal_hereditary_sets(g))
    classes = equivalence_classes(g)
    summands = []
    for cls in classes:
        union = frozenset().union(*(minimal[i] for i in cls))
        support = _double_perp(g, union)
        cycle = None
        if len(cls) == 1:
            W = minimal[cls[0]]
            cycle = _ne_cycle_covering(g, W)
            if cycle is not None and not is_finitary(g, W):
                cycle = None
        summands.append(ClassSummand(cls, support, cycle))
    return CenterReport(g, minimal, tuple(summands))
