"""Decorated dual graphs of stable curves and exact stratum-pullback integrals.

A :class:`DualGraph` records a boundary stratum of the genus-2 moduli space:
genus-labeled vertices, edges between half-edges (self-loops allowed),
labeled legs, and optional psi exponents on half-edges.  Graphs denote
pushforward classes under the gluing maps, so the evaluator never divides by
automorphism counts.

:func:`pullback_integral` integrates a psi monomial in n new marked points
against the pullback of the graph's class under the map forgetting those
points.  Each of the V^n ways of distributing the marks over the V vertices
contributes one stratum, whose value is a product of per-vertex integrals by
Fubini factorization.

A psi decoration on a half-edge means the psi class at that point on the
vertex's own moduli space.  Under the forgetful pullback that class acquires
boundary corrections (psi = pulled-back psi + the divisor where the point
bubbles off with new marks), so a unit decoration is expanded here as the
plain-exponent term minus a sum over the nonempty subsets of marks that can
join the decorated point on a rational bubble.  Decorations of total degree
>= 2 on one vertex would need products of boundary divisors and are rejected
whenever marks are being distributed.

Graph literal format (also accepted by the CLI as ``file:<path>``)::

    # '#' starts a comment; blank lines are ignored
    v0 genus=1                    vertex declarations, in order v0, v1, ...
    e v0.h0 v1.h0                 edge between two half-edges
    e v1.h1 v1.h2 psi=1           self-loop; psi=<p>[,<q>] decorates the
                                  first (and optionally second) listed end
    leg x v0 psi=2                labeled marked point, optional decoration

Half-edge names ``v<i>.h<a>`` must not repeat across edge ends; leg labels
must be unique.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .arith import Exponents, canonical
from .psi import ModuliIndex, UnsupportedGenusError, psi_integral

__all__ = [
    "EdgeEnd",
    "Edge",
    "Leg",
    "DualGraph",
    "Violation",
    "ValidationReport",
    "InvalidGraphError",
    "UnsupportedDecorationError",
    "GraphParseError",
    "StrataExpression",
    "VertexFactor",
    "StratumTerm",
    "validate_graph",
    "total_genus",
    "delta_graph",
    "delta0_graph",
    "gamma_psi_graph",
    "BUILTIN_GRAPHS",
    "builtin_graph",
    "stratum_terms",
    "pullback_integral",
    "expression_integral",
    "parse_graph",
    "format_graph",
    "clear_cache",
]


class EdgeEnd(NamedTuple):
    vertex: int
    psi: int = 0


class Edge(NamedTuple):
    a: EdgeEnd
    b: EdgeEnd


class Leg(NamedTuple):
    label: str
    vertex: int
    psi: int = 0


def _as_end(end) -> EdgeEnd:
    if isinstance(end, int):
        return EdgeEnd(end, 0)
    vertex, *rest = end
    return EdgeEnd(int(vertex), int(rest[0]) if rest else 0)


@dataclass(frozen=True)
class DualGraph:
    """A decorated dual graph, normalized so equal graphs compare equal.

    ``edges`` entries may be given loosely as ``(v_a, v_b)`` or
    ``((v_a, psi_a), (v_b, psi_b))``; ``legs`` entries as ``(label, vertex)``
    or ``(label, vertex, psi)``.  Edge ends and the edge/leg lists are sorted
    on construction, so two graphs built from the same data in any order are
    identical (this is structural identity, not graph isomorphism).
    """

    genera: tuple[int, ...]
    edges: tuple[Edge, ...] = ()
    legs: tuple[Leg, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "genera", tuple(int(g) for g in self.genera))
        edges = []
        for raw in self.edges:
            a, b = raw
            end_a, end_b = _as_end(a), _as_end(b)
            edges.append(Edge(end_a, end_b) if end_a <= end_b else Edge(end_b, end_a))
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        legs = tuple(sorted(Leg(str(l[0]), int(l[1]), int(l[2]) if len(l) > 2 else 0)
                            for l in self.legs))
        object.__setattr__(self, "legs", legs)

    @property
    def vertex_count(self) -> int:
        return len(self.genera)

    def valence(self, vertex: int) -> int:
        """Number of special points at a vertex: edge ends plus legs."""
        ends = sum((end.vertex == vertex) for edge in self.edges for end in edge)
        return ends + sum(leg.vertex == vertex for leg in self.legs)

    def fixed_exponents(self, vertex: int) -> Exponents:
        """psi decorations of the vertex's edge ends and legs (0 = undecorated)."""
        exps = [end.psi for edge in self.edges for end in edge if end.vertex == vertex]
        exps.extend(leg.psi for leg in self.legs if leg.vertex == vertex)
        return tuple(exps)


class Violation(NamedTuple):
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "valid dual graph"
        return "\n".join(f"{v.kind}: {v.message}" for v in self.violations)


class InvalidGraphError(ValueError):
    """An evaluator was handed a graph that fails validation."""

    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


class UnsupportedDecorationError(ValueError):
    """Decoration pattern outside the exactly-evaluable family."""


class GraphParseError(ValueError):
    """Malformed graph literal text."""


def validate_graph(graph: DualGraph) -> ValidationReport:
    """Check every dual-graph invariant; failures are reported, not raised."""
    problems: list[Violation] = []
    nv = graph.vertex_count
    if nv == 0:
        problems.append(Violation("empty", "graph has no vertices"))
        return ValidationReport(tuple(problems))

    for i, g in enumerate(graph.genera):
        if g < 0:
            problems.append(Violation("negative-genus", f"vertex v{i} has genus {g}"))

    for edge in graph.edges:
        for end in edge:
            if not 0 <= end.vertex < nv:
                problems.append(Violation("bad-vertex-ref", f"edge end references v{end.vertex}"))
            if end.psi < 0:
                problems.append(Violation("negative-psi", f"edge end at v{end.vertex} has psi={end.psi}"))
    seen_labels: set[str] = set()
    for leg in graph.legs:
        if not 0 <= leg.vertex < nv:
            problems.append(Violation("bad-vertex-ref", f"leg {leg.label!r} references v{leg.vertex}"))
        if leg.psi < 0:
            problems.append(Violation("negative-psi", f"leg {leg.label!r} has psi={leg.psi}"))
        if leg.label in seen_labels:
            problems.append(Violation("duplicate-leg-label", f"leg label {leg.label!r} repeats"))
        seen_labels.add(leg.label)
    if problems:
        return ValidationReport(tuple(problems))

    if _component_count(graph) > 1:
        problems.append(Violation("disconnected", "graph is not connected"))

    for i, g in enumerate(graph.genera):
        if 2 * g - 2 + graph.valence(i) <= 0:
            problems.append(Violation(
                "unstable-vertex",
                f"vertex v{i} (genus {g}, valence {graph.valence(i)}) violates 2g-2+valence > 0",
            ))
        if g > 1:
            problems.append(Violation(
                "unsupported-genus",
                f"vertex v{i} has genus {g}; evaluable vertices have genus <= 1",
            ))
    return ValidationReport(tuple(problems))


def _component_count(graph: DualGraph) -> int:
    parent = list(range(graph.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge in graph.edges:
        ra, rb = find(edge.a.vertex), find(edge.b.vertex)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in range(graph.vertex_count)})


def total_genus(graph: DualGraph) -> int:
    """Sum of vertex genera plus the graph's first Betti number."""
    betti = len(graph.edges) - graph.vertex_count + _component_count(graph)
    return sum(graph.genera) + betti


def delta_graph() -> DualGraph:
    """Genus-1 vertex joined to a genus-0 vertex carrying a self-loop."""
    return DualGraph(genera=(1, 0), edges=((0, 1), (1, 1)))


def delta0_graph() -> DualGraph:
    """Single genus-0 vertex with two self-loops (totally degenerate stratum)."""
    return DualGraph(genera=(0,), edges=((0, 0), (0, 0)))


def gamma_psi_graph() -> DualGraph:
    """Genus-1 vertex with a self-loop, unit psi decoration on one loop end."""
    return DualGraph(genera=(1,), edges=((((0, 1), (0, 0))),))


BUILTIN_GRAPHS = {
    "delta": delta_graph,
    "delta0": delta0_graph,
    "gamma-psi": gamma_psi_graph,
}


def builtin_graph(name: str) -> DualGraph:
    """Look up one of the named built-in graphs (delta, delta0, gamma-psi)."""
    try:
        return BUILTIN_GRAPHS[name]()
    except KeyError:
        raise KeyError(f"unknown graph {name!r}; choices: {', '.join(sorted(BUILTIN_GRAPHS))}")


class VertexFactor(NamedTuple):
    """One vertex's contribution to a stratum: its moduli space, the exponent
    vector it integrates (assigned marks first, then fixed points), and the
    resulting value.  For a decorated vertex the value includes the boundary
    corrections of the pulled-back decoration."""

    space: ModuliIndex
    exponents: Exponents
    value: Fraction


class StratumTerm(NamedTuple):
    """One mark assignment: ``assignment[i]`` is the vertex receiving mark i."""

    assignment: tuple[int, ...]
    factors: tuple[VertexFactor, ...]
    value: Fraction


def _vertex_factor(genus: int, fixed: Exponents, assigned: Exponents) -> VertexFactor:
    space = ModuliIndex(genus, len(fixed) + len(assigned))
    plain = psi_integral(space, assigned + fixed)
    deco = sum(fixed)
    if deco == 0 or not assigned:
        # Undecorated, or no marks to distribute: the decoration already
        # lives on the vertex's own space and no correction arises.
        return VertexFactor(space, assigned + fixed, plain)

    # Single unit decoration at one fixed point h.  The honest psi class at h
    # equals the pulled-back one plus the boundary divisors where h bubbles
    # off with a nonempty subset S of the vertex's marks, so subtract, for
    # each S, (vertex integral with h's decoration dropped and S removed)
    # times (genus-0 bubble integral over S's marks, h, and the new node).
    value = plain
    zeros = (0,) * len(fixed)
    m = len(assigned)
    for mask in range(1, 1 << m):
        bubble = tuple(assigned[i] for i in range(m) if mask >> i & 1)
        kept = tuple(assigned[i] for i in range(m) if not mask >> i & 1)
        core = psi_integral(ModuliIndex(genus, len(fixed) + len(kept)), kept + zeros)
        if core == 0:
            continue
        value -= core * psi_integral(ModuliIndex(0, len(bubble) + 2), bubble + (0, 0))
    return VertexFactor(space, assigned + fixed, value)


def _require_evaluable(graph: DualGraph, n: int) -> None:
    report = validate_graph(graph)
    if not report.ok:
        if all(v.kind == "unsupported-genus" for v in report.violations):
            raise UnsupportedGenusError(str(report))
        raise InvalidGraphError(report)
    genus = total_genus(graph)
    if genus != 2:
        raise ValueError(f"graph has total genus {genus}; the evaluator covers genus 2")
    if n >= 1:
        for v in range(graph.vertex_count):
            if sum(graph.fixed_exponents(v)) >= 2:
                raise UnsupportedDecorationError(
                    f"vertex v{v} carries decorations of total degree >= 2; only a "
                    "single unit decoration per vertex can be pulled back exactly"
                )


def stratum_terms(graph: DualGraph, exponents: Iterable[int] = ()) -> Iterator[StratumTerm]:
    """Enumerate the V^n mark assignments and their Fubini-factorized values.

    The generator always performs the full enumeration; use
    :func:`pullback_integral` for the (cached) total.
    """
    k = tuple(int(v) for v in exponents)
    if any(v < 0 for v in k):
        raise ValueError(f"exponents must be nonnegative, got {k}")
    _require_evaluable(graph, len(k))

    fixed = [graph.fixed_exponents(v) for v in range(graph.vertex_count)]
    for assignment in itertools.product(range(graph.vertex_count), repeat=len(k)):
        factors = []
        value = Fraction(1)
        for v in range(graph.vertex_count):
            assigned = tuple(k[i] for i, home in enumerate(assignment) if home == v)
            factor = _vertex_factor(graph.genera[v], fixed[v], assigned)
            factors.append(factor)
            value *= factor.value
        yield StratumTerm(assignment, tuple(factors), value)


_PULLBACK_CACHE: dict[tuple[DualGraph, Exponents], Fraction] = {}


def clear_cache() -> None:
    """Drop memoized pullback integrals (mainly for tests and benchmarks)."""
    _PULLBACK_CACHE.clear()


def pullback_integral(graph: DualGraph, exponents: Iterable[int] = ()) -> Fraction:
    """Integrate a psi monomial against the forgetful pullback of the graph's class.

    ``exponents`` lists one psi exponent per new marked point; it may be
    empty, in which case the graph's own class degree is evaluated.  The
    result is the exact sum over all mark distributions of per-vertex
    integrals; strata whose exponent degrees mismatch the vertex dimensions
    contribute 0.
    """
    k = tuple(int(v) for v in exponents)
    _require_evaluable(graph, len(k))
    key = (graph, canonical(k) if k else ())
    cached = _PULLBACK_CACHE.get(key)
    if cached is None:
        cached = sum((term.value for term in stratum_terms(graph, k)), Fraction(0))
        _PULLBACK_CACHE[key] = cached
    return cached


@dataclass(frozen=True)
class StrataExpression:
    """Formal rational-coefficient combination of dual graphs.

    Terms with an identical graph are combined on construction and zero
    coefficients dropped, so no two stored terms share a graph.
    """

    terms: tuple[tuple[Fraction, DualGraph], ...] = ()

    def __post_init__(self) -> None:
        combined: dict[DualGraph, Fraction] = {}
        for coefficient, graph in self.terms:
            combined[graph] = combined.get(graph, Fraction(0)) + Fraction(coefficient)
        object.__setattr__(
            self,
            "terms",
            tuple((c, g) for g, c in combined.items() if c != 0),
        )


def expression_integral(expression: StrataExpression, exponents: Iterable[int] = ()) -> Fraction:
    """Pullback integral of a strata expression: the pullback distributes
    over the linear combination."""
    k = tuple(exponents)
    return sum(
        (coefficient * pullback_integral(graph, k) for coefficient, graph in expression.terms),
        Fraction(0),
    )


# --- graph literal format ---------------------------------------------------

_VERTEX_RE = re.compile(r"^v(\d+)$")
_HALF_EDGE_RE = re.compile(r"^v(\d+)\.h(\d+)$")


def parse_graph(text: str) -> DualGraph:
    """Parse the graph literal format described in the module docstring."""
    genera: list[int] = []
    edges: list[tuple[tuple[int, int], tuple[int, int]]] = []
    legs: list[tuple[str, int, int]] = []
    used_half_edges: set[tuple[int, int]] = set()
    leg_labels: set[str] = set()

    def fail(lineno: int, message: str) -> GraphParseError:
        return GraphParseError(f"line {lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        if _VERTEX_RE.match(head):
            index = int(_VERTEX_RE.match(head).group(1))
            if index != len(genera):
                raise fail(lineno, f"expected vertex v{len(genera)}, got {head}")
            if len(tokens) != 2 or not tokens[1].startswith("genus="):
                raise fail(lineno, f"expected '{head} genus=<g>'")
            try:
                genus = int(tokens[1].removeprefix("genus="))
            except ValueError:
                raise fail(lineno, f"bad genus in {tokens[1]!r}")
            genera.append(genus)

        elif head == "e":
            if len(tokens) not in (3, 4):
                raise fail(lineno, "expected 'e v<i>.h<a> v<j>.h<b> [psi=<p>[,<q>]]'")
            ends = []
            for tok in tokens[1:3]:
                match = _HALF_EDGE_RE.match(tok)
                if not match:
                    raise fail(lineno, f"bad half-edge {tok!r}, expected v<i>.h<a>")
                vertex, slot = int(match.group(1)), int(match.group(2))
                if vertex >= len(genera):
                    raise fail(lineno, f"half-edge {tok!r} references undeclared vertex")
                if (vertex, slot) in used_half_edges:
                    raise fail(lineno, f"half-edge {tok!r} used twice")
                used_half_edges.add((vertex, slot))
                ends.append(vertex)
            psi_a = psi_b = 0
            if len(tokens) == 4:
                if not tokens[3].startswith("psi="):
                    raise fail(lineno, f"unexpected token {tokens[3]!r}")
                parts = tokens[3].removeprefix("psi=").split(",")
                try:
                    psi_a = int(parts[0])
                    psi_b = int(parts[1]) if len(parts) > 1 else 0
                except (ValueError, IndexError):
                    raise fail(lineno, f"bad decoration {tokens[3]!r}")
                if len(parts) > 2 or psi_a < 0 or psi_b < 0:
                    raise fail(lineno, f"bad decoration {tokens[3]!r}")
            edges.append(((ends[0], psi_a), (ends[1], psi_b)))

        elif head == "leg":
            if len(tokens) not in (3, 4):
                raise fail(lineno, "expected 'leg <label> v<i> [psi=<p>]'")
            label = tokens[1]
            if label in leg_labels:
                raise fail(lineno, f"leg label {label!r} repeats")
            leg_labels.add(label)
            match = _VERTEX_RE.match(tokens[2])
            if not match or int(match.group(1)) >= len(genera):
                raise fail(lineno, f"bad vertex reference {tokens[2]!r}")
            psi = 0
            if len(tokens) == 4:
                if not tokens[3].startswith("psi="):
                    raise fail(lineno, f"unexpected token {tokens[3]!r}")
                try:
                    psi = int(tokens[3].removeprefix("psi="))
                except ValueError:
                    raise fail(lineno, f"bad decoration {tokens[3]!r}")
                if psi < 0:
                    raise fail(lineno, f"bad decoration {tokens[3]!r}")
            legs.append((label, int(match.group(1)), psi))

        else:
            raise fail(lineno, f"unrecognized line {line!r}")

    if not genera:
        raise GraphParseError("no vertices declared")
    return DualGraph(genera=tuple(genera), edges=tuple(edges), legs=tuple(legs))


def format_graph(graph: DualGraph) -> str:
    """Render a graph in the literal format; parse_graph round-trips it."""
    lines = [f"v{i} genus={g}" for i, g in enumerate(graph.genera)]
    next_slot = [0] * graph.vertex_count

    def half_edge(end: EdgeEnd) -> str:
        slot = next_slot[end.vertex]
        next_slot[end.vertex] += 1
        return f"v{end.vertex}.h{slot}"

    for edge in graph.edges:
        line = f"e {half_edge(edge.a)} {half_edge(edge.b)}"
        if edge.b.psi:
            line += f" psi={edge.a.psi},{edge.b.psi}"
        elif edge.a.psi:
            line += f" psi={edge.a.psi}"
        lines.append(line)
    for leg in graph.legs:
        line = f"leg {leg.label} v{leg.vertex}"
        if leg.psi:
            line += f" psi={leg.psi}"
        lines.append(line)
    return "\n".join(lines) + "\n"
