"""Exact symbolic arithmetic in the Leavitt path algebra of a finite graph.

Elements are linear combinations of monomials ``left * right^*`` (two paths
with a common range vertex) over the rationals or a prime field.  A fixed
specialization -- one chosen "special" edge per non-sink vertex -- induces a
monomial basis: a monomial is basic unless both paths end with the same
special edge.  All arithmetic keeps elements in that basis, and everything
is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .graph import Graph, Path, Specialization, canonical_specialization

__all__ = [
    "Rationals",
    "PrimeField",
    "FpScalar",
    "Monomial",
    "Element",
    "LeavittAlgebra",
    "AlgebraMismatchError",
    "ElementSyntaxError",
]


class AlgebraMismatchError(ValueError):
    """Operands belong to different graphs, specializations, or scalar fields."""


class ElementSyntaxError(ValueError):
    """Malformed element text."""


# -- scalar fields ---------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """Exact rational scalars with arbitrary precision."""

    name = "rat"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} to a rational scalar")

    def parse_scalar(self, token: str) -> Fraction:
        return Fraction(token)

    def format_scalar(self, x: Fraction) -> str:
        return str(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("leavitt.Rationals")

    def __repr__(self) -> str:
        return "Rationals()"


@dataclass(frozen=True)
class FpScalar:
    """A residue in Z/p."""

    value: int
    p: int

    def _lift(self, other) -> "FpScalar":
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise AlgebraMismatchError("scalars from different prime fields")
            return other
        if isinstance(other, int):
            return FpScalar(other % self.p, self.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar((self.value + other.value) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar((self.value - other.value) % self.p, self.p)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value * other.value % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return FpScalar(self.value * pow(other.value, -1, self.p) % self.p, self.p)

    def __neg__(self):
        return FpScalar(-self.value % self.p, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PrimeField:
    """Scalars modulo a prime p <= 2^31."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p <= 2**31 and _is_prime(self.p)):
            raise ValueError(f"{self.p} is not a prime <= 2^31")

    @property
    def name(self) -> str:
        return f"fp:{self.p}"

    @property
    def zero(self) -> FpScalar:
        return FpScalar(0, self.p)

    @property
    def one(self) -> FpScalar:
        return FpScalar(1, self.p)

    def coerce(self, x) -> FpScalar:
        if isinstance(x, FpScalar):
            if x.p != self.p:
                raise AlgebraMismatchError("scalar from a different prime field")
            return x
        if isinstance(x, int):
            return FpScalar(x % self.p, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return FpScalar(
                x.numerator * pow(x.denominator, -1, self.p) % self.p, self.p
            )
        raise TypeError(f"cannot coerce {x!r} into Z/{self.p}")

    def parse_scalar(self, token: str) -> FpScalar:
        num, slash, den = token.partition("/")
        value = self.coerce(int(num))
        if slash:
            value = value / self.coerce(int(den))
        return value

    def format_scalar(self, x: FpScalar) -> str:
        return str(x.value)


# -- monomials and elements -------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """Product ``left * right^*`` of two paths ending at the same vertex."""

    left: Path
    right: Path

    @property
    def degree(self) -> int:
        return self.left.length - self.right.length

    @property
    def size(self) -> int:
        return self.left.length + self.right.length

    def star(self) -> "Monomial":
        return Monomial(self.right, self.left)

    def is_vertex(self) -> bool:
        return not self.left.edges and not self.right.edges

    def __str__(self) -> str:
        if self.is_vertex():
            return self.left.source
        return f"[{self.left}][{self.right}]"


_SIGNED_SCALAR = re.compile(r"[+-]?\d+(?:/\d+)?")
_IDENT_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Element:
    """An algebra element held in the basic-monomial normal form.  Immutable."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: "LeavittAlgebra", terms: dict):
        # terms must already be basic monomials with nonzero coefficients
        self.algebra = algebra
        self._terms = terms

    # -- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[Monomial, object]]:
        key = self.algebra.monomial_key
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]))

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=self.algebra.monomial_key)

    def coefficient(self, m: Monomial):
        return self._terms.get(m, self.algebra.field.zero)

    def degrees(self) -> list[int]:
        return sorted({m.degree for m in self._terms})

    def support_size(self) -> int:
        return max((m.size for m in self._terms), default=0)

    # -- ring operations --------------------------------------------------

    def _require_same(self, other: "Element") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("elements live in different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._require_same(other)
        terms = dict(self._terms)
        zero = self.algebra.field.zero
        for m, c in other._terms.items():
            total = terms.get(m, zero) + c
            if total:
                terms[m] = total
            else:
                terms.pop(m, None)
        return Element(self.algebra, terms)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._require_same(other)
            alg = self.algebra
            zero = alg.field.zero
            raw: dict[Monomial, object] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = alg._monomial_product(m1, m2)
                    if m is None:
                        continue
                    raw[m] = raw.get(m, zero) + c1 * c2
            return Element(alg, alg._normal_form(raw))
        try:
            c = self.algebra.field.coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: v * c for m, v in self._terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError("exponent must be a positive integer")
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def star(self) -> "Element":
        """The involution: swap the two paths of every monomial."""
        # the basis condition is symmetric in the two paths, so no rewriting is needed
        return Element(self.algebra, {m.star(): c for m, c in self._terms.items()})

    def degree_component(self, d: int) -> "Element":
        return Element(self.algebra, {m: c for m, c in self._terms.items() if m.degree == d})

    def is_central(self) -> bool:
        """Exact commutation with every generating vertex, edge, and edge star."""
        for gen in self.algebra.generators():
            if self * gen != gen * self:
                return False
        return True

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.algebra == other.algebra
            and self._terms == other._terms
        )

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        fmt = self.algebra.field.format_scalar
        parts = []
        for m, c in self.terms():
            cs = fmt(c)
            if cs == "1":
                parts.append(str(m))
            elif cs == "-1":
                parts.append("-" + str(m))
            else:
                parts.append(f"{cs}*{m}")
        text = parts[0]
        for part in parts[1:]:
            text += part if part.startswith("-") else "+" + part
        return text

    def __repr__(self) -> str:
        return f"Element({self})"


class LeavittAlgebra:
    """The Leavitt path algebra of a finite graph over an exact scalar field."""

    def __init__(
        self,
        graph: Graph,
        specialization: Specialization | None = None,
        field=None,
    ):
        if specialization is None:
            specialization = canonical_specialization(graph)
        elif specialization.graph != graph:
            raise AlgebraMismatchError("specialization belongs to a different graph")
        self.graph = graph
        self.specialization = specialization
        self.field = field if field is not None else Rationals()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LeavittAlgebra)
            and self.graph == other.graph
            and self.specialization == other.specialization
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.graph, self.specialization, self.field))

    def __repr__(self) -> str:
        return f"LeavittAlgebra({self.graph!r}, field={self.field.name})"

    # -- element constructors ---------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        """The sum of all vertices (the identity of the unital algebra)."""
        one = self.field.one
        return Element(
            self,
            {Monomial(p, p): one for p in map(self.graph.vertex_path, self.graph.vertices)},
        )

    def vertex(self, v: str) -> Element:
        p = self.graph.vertex_path(v)
        return Element(self, {Monomial(p, p): self.field.one})

    def edge(self, e: str) -> Element:
        g = self.graph
        m = Monomial(g.edge_path(e), g.vertex_path(g.target_of(e)))
        return Element(self, {m: self.field.one})

    def edge_star(self, e: str) -> Element:
        g = self.graph
        m = Monomial(g.vertex_path(g.target_of(e)), g.edge_path(e))
        return Element(self, {m: self.field.one})

    def path_element(self, p: Path) -> Element:
        self.graph.path(p.source, p.edges)  # validate membership
        m = Monomial(p, self.graph.vertex_path(p.target))
        return Element(self, {m: self.field.one})

    def monomial(self, left: Path, right: Path) -> Monomial:
        self.graph.path(left.source, left.edges)
        self.graph.path(right.source, right.edges)
        if left.target != right.target:
            raise ValueError(
                f"paths must share a range vertex: {left} ends at {left.target!r}, {right} at {right.target!r}"
            )
        return Monomial(left, right)

    def element(self, terms: Iterable[tuple[Monomial, object]]) -> Element:
        """Normal form of a formal combination of path-pair monomials."""
        zero = self.field.zero
        raw: dict[Monomial, object] = {}
        for m, c in terms:
            self.monomial(m.left, m.right)  # validate
            raw[m] = raw.get(m, zero) + self.field.coerce(c)
        return Element(self, self._normal_form(raw))

    def generators(self) -> list[Element]:
        g = self.graph
        gens = [self.vertex(v) for v in g.vertices]
        gens += [self.edge(e) for e in g.edge_ids()]
        gens += [self.edge_star(e) for e in g.edge_ids()]
        return gens

    # -- normal form --------------------------------------------------------

    def is_basic(self, m: Monomial) -> bool:
        le, re_ = m.left.edges, m.right.edges
        return not (le and re_ and le[-1] == re_[-1] and self.specialization.is_special(le[-1]))

    def _normal_form(self, raw: dict) -> dict:
        """Rewrite until every monomial is basic.

        A monomial whose paths share a special last edge is expanded through
        the vertex relation at that edge's source; the expansion strictly
        shortens one branch and the other branches are already basic, so the
        loop terminates.
        """
        g = self.graph
        out: dict[Monomial, object] = {}
        stack = list(raw.items())
        while stack:
            m, c = stack.pop()
            if not c:
                continue
            if self.is_basic(m):
                acc = out.get(m)
                total = c if acc is None else acc + c
                if total:
                    out[m] = total
                elif acc is not None:
                    del out[m]
                continue
            e = m.left.edges[-1]
            v = g.source_of(e)
            left1 = Path(m.left.source, m.left.edges[:-1], v)
            right1 = Path(m.right.source, m.right.edges[:-1], v)
            stack.append((Monomial(left1, right1), c))
            for f in g.out_edges(v):
                if f == e:
                    continue
                t = g.target_of(f)
                stack.append(
                    (
                        Monomial(
                            Path(left1.source, left1.edges + (f,), t),
                            Path(right1.source, right1.edges + (f,), t),
                        ),
                        -c,
                    )
                )
        return out

    def _monomial_product(self, m1: Monomial, m2: Monomial) -> Monomial | None:
        """Raw product of two monomials, or None when it collapses to zero.

        Nonzero exactly when one of the inner paths is a continuation of the
        other; the overlap telescopes away.
        """
        q, p2 = m1.right, m2.left
        if p2.length >= q.length:
            if p2.source == q.source and p2.edges[: q.length] == q.edges:
                mid = Path(q.target, p2.edges[q.length :], p2.target)
                return Monomial(
                    Path(m1.left.source, m1.left.edges + mid.edges, mid.target), m2.right
                )
        else:
            if q.source == p2.source and q.edges[: p2.length] == p2.edges:
                tail = Path(p2.target, q.edges[p2.length :], q.target)
                return Monomial(
                    m1.left,
                    Path(m2.right.source, m2.right.edges + tail.edges, tail.target),
                )
        return None

    def monomial_key(self, m: Monomial):
        g = self.graph
        return (
            m.left.length,
            m.right.length,
            tuple(g.edge_index(e) for e in m.left.edges),
            g.vertex_index(m.left.source),
            tuple(g.edge_index(e) for e in m.right.edges),
            g.vertex_index(m.right.source),
        )

    # -- element text -------------------------------------------------------

    def parse_element(self, text: str) -> Element:
        """Parse the element syntax: signed terms ``coeff * [p] [q]``.

        Each bracket holds whitespace-separated edge ids or ``@v`` for the
        length-0 path at vertex ``v``; a bare vertex id abbreviates its
        vertex monomial; the coefficient (with optional ``*``) defaults to 1.
        """
        g = self.graph
        zero = self.field.zero
        raw: dict[Monomial, object] = {}
        pos = 0
        n = len(text)

        def skip_ws() -> None:
            nonlocal pos
            while pos < n and text[pos].isspace():
                pos += 1

        def parse_side() -> Path:
            nonlocal pos
            if pos >= n or text[pos] != "[":
                raise ElementSyntaxError(f"expected '[' at offset {pos}")
            pos += 1
            skip_ws()
            if pos < n and text[pos] == "@":
                pos += 1
                m = _IDENT_TOKEN.match(text, pos)
                if not m:
                    raise ElementSyntaxError(f"expected a vertex id at offset {pos}")
                pos = m.end()
                name = m.group()
                if not g.has_vertex(name):
                    raise ElementSyntaxError(f"unknown vertex {name!r}")
                side = g.vertex_path(name)
            else:
                ids = []
                while True:
                    skip_ws()
                    if pos < n and text[pos] == "]":
                        break
                    m = _IDENT_TOKEN.match(text, pos)
                    if not m:
                        raise ElementSyntaxError(f"expected an edge id or ']' at offset {pos}")
                    ids.append(m.group())
                    pos = m.end()
                if not ids:
                    raise ElementSyntaxError("empty bracket: use [@v] for a vertex path")
                for e in ids:
                    if not g.has_edge(e):
                        raise ElementSyntaxError(f"unknown edge {e!r}")
                try:
                    side = g.path(g.source_of(ids[0]), ids)
                except ValueError as exc:
                    raise ElementSyntaxError(str(exc)) from exc
            skip_ws()
            if pos >= n or text[pos] != "]":
                raise ElementSyntaxError(f"expected ']' at offset {pos}")
            pos += 1
            return side

        skip_ws()
        if pos == n:
            raise ElementSyntaxError("empty element text")
        first = True
        while pos < n:
            sign = 1
            skip_ws()
            if first:
                if pos < n and text[pos] in "+-":
                    sign = -1 if text[pos] == "-" else 1
                    pos += 1
                first = False
            else:
                if pos >= n:
                    break
                if text[pos] == "+":
                    pos += 1
                elif text[pos] == "-":
                    sign = -1
                    pos += 1
                else:
                    raise ElementSyntaxError(f"expected '+' or '-' at offset {pos}")
            skip_ws()
            m = _SIGNED_SCALAR.match(text, pos)
            if m:
                try:
                    coeff = self.field.parse_scalar(m.group())
                except (ValueError, ZeroDivisionError) as exc:
                    raise ElementSyntaxError(f"bad scalar {m.group()!r}: {exc}") from exc
                pos = m.end()
                skip_ws()
                if pos < n and text[pos] == "*":
                    pos += 1
                    skip_ws()
            else:
                coeff = self.field.one
            if pos < n and text[pos] == "[":
                left = parse_side()
                skip_ws()
                right = parse_side()
                if left.target != right.target:
                    raise ElementSyntaxError(
                        f"paths must share a range vertex: [{left}] ends at {left.target!r}, [{right}] at {right.target!r}"
                    )
                mono = Monomial(left, right)
            else:
                m = _IDENT_TOKEN.match(text, pos)
                if not m:
                    raise ElementSyntaxError(f"expected '[' or a vertex id at offset {pos}")
                name = m.group()
                pos = m.end()
                if not g.has_vertex(name):
                    raise ElementSyntaxError(f"unknown vertex {name!r}")
                p = g.vertex_path(name)
                mono = Monomial(p, p)
            if sign < 0:
                coeff = -coeff
            raw[mono] = raw.get(mono, zero) + coeff
            skip_ws()
        return Element(self, self._normal_form(raw))
