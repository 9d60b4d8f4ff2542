"""Central elements of a Leavitt path algebra and an independent cross-check.

The constructive side builds central idempotents from arrival paths into
finitary hereditary subsets and graded basis elements from cycle powers
conjugated out over those arrivals.  ``brute_force_center`` knows none of
that theory: it solves the linear commutation constraints directly over the
monomial basis and is used to validate the construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Cycle, Graph, Path, cycle_exits
from .hereditary import (
    CenterReport,
    FiniteArrivals,
    InfiniteArrivals,
    NotFinitaryError,
    arrival_paths,
    center_structure,
)
from .algebra import Element, LeavittAlgebra, Monomial

__all__ = [
    "HasExitError",
    "idempotent",
    "cycle_generator",
    "embed",
    "CentralBasis",
    "center_basis",
    "center_dimension_predicted",
    "oracle_bound",
    "brute_force_center",
    "span_dimension",
    "spans_equal",
]


class HasExitError(ValueError):
    """The cycle has an exit, so its rotation sums are not central."""


def idempotent(algebra: LeavittAlgebra, ws) -> Element:
    """Central idempotent of a finitary annihilator subset: sum of p p^*
    over all arrival paths p into the subset."""
    arr = arrival_paths(algebra.graph, ws)
    if isinstance(arr, InfiniteArrivals):
        raise NotFinitaryError(frozenset(ws), arr.witness, arr.connector)
    one = algebra.field.one
    return algebra.element((Monomial(p, p), one) for p in arr.paths)


def cycle_generator(algebra: LeavittAlgebra, c: Cycle) -> Element:
    """Sum of the rotations of an exit-free cycle, each based at its own
    start vertex.  Central in the corner algebra over the cycle's vertices."""
    g = algebra.graph
    g.check_cycle(c)
    exits = cycle_exits(g, c)
    if exits:
        raise HasExitError(
            f"cycle {c} has exit edge {exits[0]!r}; its rotation sum is not central"
        )
    one = algebra.field.one
    k = c.length
    terms = []
    for i in range(k):
        edges = c.edges[i:] + c.edges[:i]
        start = c.sources[i]
        rot = g.path(start, edges)
        terms.append((Monomial(rot, g.vertex_path(start)), one))
    return algebra.element(terms)


def embed(algebra: LeavittAlgebra, ws, a: Element) -> Element:
    """Conjugate an element supported on a finitary annihilator subset out
    to the whole algebra: sum of p a p^* over arrival paths p.

    Conjugating a monomial x y^* by one path needs that path to end at the
    shared source of x and y, so every monomial of ``a`` must have both its
    paths based at one vertex of the subset.
    """
    if a.algebra != algebra:
        raise ValueError("element belongs to a different algebra")
    g = algebra.graph
    arr = arrival_paths(g, ws)
    if isinstance(arr, InfiniteArrivals):
        raise NotFinitaryError(frozenset(ws), arr.witness, arr.connector)
    inside = frozenset(ws)
    terms = []
    for m, c in a.terms():
        if m.left.source != m.right.source:
            raise ValueError(f"monomial {m} is not based at a single vertex")
        if m.left.source not in inside:
            raise ValueError(f"monomial {m} is not supported inside the subset")
        for p in arr.paths:
            if p.target != m.left.source:
                continue
            terms.append((Monomial(g.concat(p, m.left), g.concat(p, m.right)), c))
    return algebra.element(terms)


@dataclass(frozen=True)
class CentralBasis:
    """A basis of one graded piece of the center, with provenance strings."""

    degree: int
    elements: tuple
    provenance: tuple

    def __len__(self) -> int:
        return len(self.elements)


def center_basis(algebra: LeavittAlgebra, d: int) -> CentralBasis:
    """Basis of the degree-d homogeneous piece of the center.

    Degree 0 yields the idempotents of the class supports.  Degree d != 0
    yields, for each exit-free cycle of length dividing |d| that generates a
    Laurent summand, the matching power of its rotation sum conjugated out
    over the cycle's own vertex set (then starred for negative d).
    """
    report = center_structure(algebra.graph)
    elements: list[Element] = []
    provenance: list[str] = []
    if d == 0:
        for s in report.summands:
            elements.append(idempotent(algebra, s.support))
            sup = "{" + ",".join(sorted(s.support, key=algebra.graph.vertex_index)) + "}"
            provenance.append(f"idempotent of {sup}")
        return CentralBasis(0, tuple(elements), tuple(provenance))
    for s in report.summands:
        if s.cycle is None:
            continue
        n = s.cycle.length
        if d % n != 0:
            continue
        z = cycle_generator(algebra, s.cycle)
        power = z ** (abs(d) // n)
        lifted = embed(algebra, s.cycle.vertex_set, power)
        if d < 0:
            lifted = lifted.star()
        elements.append(lifted)
        provenance.append(f"cycle {s.cycle} to the power {abs(d) // n}")
    return CentralBasis(d, tuple(elements), tuple(provenance))


def center_dimension_predicted(graph: Graph, d: int) -> int:
    """Dimension of the degree-d piece of the center, from the structure
    of the finitary annihilator algebra alone."""
    report = center_structure(graph)
    if d == 0:
        return len(report.summands)
    return sum(
        1
        for s in report.summands
        if s.cycle is not None and d % s.cycle.length == 0
    )


def _arrival_span(graph: Graph, ws) -> int:
    arr = arrival_paths(graph, ws)
    assert isinstance(arr, FiniteArrivals)
    return arr.max_length()


def oracle_bound(graph: Graph, d: int) -> int:
    """Monomial size cap that provably captures the whole degree-d center.

    Every constructed basis element of degree d has monomial size at most
    2*base + |d| where base is the longest arrival path into any class
    support or any Laurent cycle's vertex set; the extra slack leaves room
    for the oracle to notice elements just past the boundary.
    """
    report = center_structure(graph)
    base = 0
    for s in report.summands:
        base = max(base, _arrival_span(graph, s.support))
        if s.cycle is not None:
            base = max(base, _arrival_span(graph, s.cycle.vertex_set))
    return 2 * base + abs(d) + 2


# -- linear algebra over the active field -----------------------------------


def _row_reduce(rows: list[dict], field) -> tuple[list[dict], dict]:
    """Sparse reduced row echelon form.  Returns (rows, pivot column -> row index)."""
    pivots: dict = {}
    reduced: list[dict] = []
    for row in rows:
        row = dict(row)
        # stored pivot rows never contain each other's pivot columns, so one
        # pass over the pivot columns present in the incoming row clears all
        for c in [c for c in row if c in pivots]:
            lead = row.get(c)
            if not lead:
                continue
            for c2, v2 in reduced[pivots[c]].items():
                total = row.get(c2, field.zero) - lead * v2
                if total:
                    row[c2] = total
                else:
                    row.pop(c2, None)
        if not row:
            continue
        col = min(row)
        inv = field.one / row[col]
        row = {c: v * inv for c, v in row.items()}
        for prior in reduced:
            if col in prior:
                lead = prior[col]
                for c2, v2 in row.items():
                    total = prior.get(c2, field.zero) - lead * v2
                    if total:
                        prior[c2] = total
                    else:
                        prior.pop(c2, None)
        pivots[col] = len(reduced)
        reduced.append(row)
    return reduced, pivots


def _nullspace(rows: list[dict], ncols: int, field) -> list[dict]:
    """Basis of the solution space of rows * x = 0, columns 0..ncols-1."""
    reduced, pivots = _row_reduce(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: field.one}
        for col, idx in pivots.items():
            coeff = reduced[idx].get(f)
            if coeff:
                vec[col] = -coeff
        basis.append(vec)
    return basis


def brute_force_center(
    algebra: LeavittAlgebra, d: int, max_support: int
) -> list[Element]:
    """Degree-d central elements by direct linear algebra, no structure theory.

    Unknowns are the basic monomials of degree d and size at most
    max_support whose two paths share a source vertex: commutation with the
    vertex generators alone forces that diagonal shape, so the restriction
    loses nothing.  Edge and edge-star commutators give the linear system.
    """
    g = algebra.graph
    field = algebra.field

    # paths grouped by length, then by source
    by_len: list[list[Path]] = [[g.vertex_path(v) for v in g.vertices]]
    limit = (max_support + abs(d)) // 2
    for _ in range(limit):
        nxt = []
        for p in by_len[-1]:
            for e in g.out_edges(p.target):
                nxt.append(Path(p.source, p.edges + (e,), g.target_of(e)))
        by_len.append(nxt)

    candidates: list[Monomial] = []
    for lq in range(len(by_len)):
        lp = lq + d
        if lp < 0 or lp >= len(by_len):
            continue
        if lp + lq > max_support:
            continue
        by_pair: dict[tuple[str, str], list[Path]] = {}
        for q in by_len[lq]:
            by_pair.setdefault((q.source, q.target), []).append(q)
        for p in by_len[lp]:
            for q in by_pair.get((p.source, p.target), ()):
                m = Monomial(p, q)
                if algebra.is_basic(m):
                    candidates.append(m)
    candidates.sort(key=algebra.monomial_key)
    index = {m: i for i, m in enumerate(candidates)}

    gens = [algebra.edge(e) for e in g.edge_ids()]
    gens += [algebra.edge_star(e) for e in g.edge_ids()]

    rows: dict[tuple, dict] = {}
    for i, m in enumerate(candidates):
        x = Element(algebra, {m: field.one})
        for gi, gen in enumerate(gens):
            comm = x * gen - gen * x
            for out, c in comm._terms.items():
                row = rows.setdefault((gi, out), {})
                total = row.get(i, field.zero) + c
                if total:
                    row[i] = total
                else:
                    row.pop(i, None)

    kernel = _nullspace([r for r in rows.values() if r], len(candidates), field)
    elements = []
    for vec in kernel:
        elements.append(Element(algebra, {candidates[i]: c for i, c in vec.items()}))
    return elements


def span_dimension(elements) -> int:
    """Rank of a family of elements of one algebra."""
    elements = list(elements)
    if not elements:
        return 0
    algebra = elements[0].algebra
    field = algebra.field
    index: dict[Monomial, int] = {}
    rows = []
    for el in elements:
        if el.algebra != algebra:
            raise ValueError("elements live in different algebras")
        row = {}
        for m, c in el._terms.items():
            row[index.setdefault(m, len(index))] = c
        rows.append(row)
    reduced, _ = _row_reduce(rows, field)
    return len(reduced)


def spans_equal(first, second) -> bool:
    """Whether two families of elements span the same subspace."""
    first, second = list(first), list(second)
    r1 = span_dimension(first)
    r2 = span_dimension(second)
    return r1 == r2 == span_dimension(first + second)
