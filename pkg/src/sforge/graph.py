"""Resolution dual graphs and their graph-level invariants.

A ResolutionGraph is a connected weighted graph: vertices carry a
self-intersection weight (negative) and a genus (nonnegative); edges
are an unordered multiset of vertex pairs. From it we compute the
intersection matrix, the canonical cycle (adjunction), the fundamental
cycle (Laufer's algorithm), the rational / minimally elliptic
classification, and (-1)-curve blow-downs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NonMinimalRepresentableError,
    NotNegativeDefiniteError,
    ParseError,
)
from .intmat import IntMatrix, is_negative_definite, solve_rational

__all__ = [
    "Vertex",
    "ResolutionGraph",
    "Cycle",
    "RationalCycle",
    "Classification",
    "parse_graph",
    "serialize_graph",
    "intersection_matrix",
    "canonical_cycle",
    "is_numerically_gorenstein",
    "fundamental_cycle",
    "classify",
    "blow_down_minimal",
]


@dataclass(frozen=True)
class Vertex:
    id: str
    weight: int
    genus: int = 0


class ResolutionGraph:
    """Immutable resolution dual graph.

    Vertices keep declaration order; edges keep declaration order with
    endpoints as written. Construction validates: nonempty, unique ids,
    edge endpoints declared, no self-loops, connected. Weights must be
    <= -1 unless allow_nonnegative_weights is set (used only for
    blow-down outputs, which may degenerate).
    """

    __slots__ = ("vertices", "edges", "_index")

    def __init__(self, vertices, edges, allow_nonnegative_weights=False):
        vs = tuple(
            v if isinstance(v, Vertex) else Vertex(*v) for v in vertices
        )
        es = tuple((str(a), str(b)) for a, b in edges)
        if not vs:
            raise ValueError("graph must have at least one vertex")
        index = {}
        for v in vs:
            if v.id in index:
                raise ValueError("duplicate vertex id %r" % v.id)
            if v.genus < 0:
                raise ValueError("vertex %r has negative genus" % v.id)
            if not allow_nonnegative_weights and v.weight > -1:
                raise ValueError(
                    "vertex %r has weight %d >= 0" % (v.id, v.weight)
                )
            index[v.id] = len(index)
        for a, b in es:
            for end in (a, b):
                if end not in index:
                    raise ValueError("edge endpoint %r is not declared" % end)
            if a == b:
                raise ValueError("self-loop at %r" % a)
        self.vertices = vs
        self.edges = es
        self._index = index
        if len(self._components()) != 1:
            raise ValueError("graph is not connected")

    # -- basic structure -------------------------------------------------

    @property
    def n(self):
        return len(self.vertices)

    @property
    def vertex_ids(self):
        return tuple(v.id for v in self.vertices)

    def index_of(self, vid):
        return self._index[vid]

    def vertex(self, vid):
        return self.vertices[self._index[vid]]

    def neighbors(self, vid):
        """Neighbor ids in declaration order, repeated per multi-edge."""
        out = []
        for a, b in self.edges:
            if a == vid:
                out.append(b)
            elif b == vid:
                out.append(a)
        out.sort(key=self.index_of)
        return tuple(out)

    def valency(self, vid):
        return sum(1 for a, b in self.edges if vid in (a, b))

    def _components(self):
        seen = set()
        comps = []
        adj = {v.id: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for v in self.vertices:
            if v.id in seen:
                continue
            comp = {v.id}
            stack = [v.id]
            while stack:
                cur = stack.pop()
                for nxt in adj[cur]:
                    if nxt not in comp:
                        comp.add(nxt)
                        stack.append(nxt)
            seen |= comp
            comps.append(comp)
        return comps

    def is_tree(self):
        return len(self.edges) == self.n - 1

    def is_qhs_tree(self):
        """Tree of genus-0 curves: the link is a rational homology sphere."""
        return self.is_tree() and all(v.genus == 0 for v in self.vertices)

    def induced_subgraph(self, vertex_ids):
        """Subgraph on the given vertex ids (must stay connected)."""
        keep = set(vertex_ids)
        return ResolutionGraph(
            [v for v in self.vertices if v.id in keep],
            [(a, b) for a, b in self.edges if a in keep and b in keep],
            allow_nonnegative_weights=True,
        )

    def __eq__(self, other):
        return (
            isinstance(other, ResolutionGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __repr__(self):
        return "ResolutionGraph(%d vertices, %d edges)" % (
            self.n,
            len(self.edges),
        )


@dataclass(frozen=True)
class Cycle:
    """Integer divisor supported on the exceptional curves."""

    vertex_ids: tuple
    coefficients: tuple

    def __getitem__(self, vid):
        return self.coefficients[self.vertex_ids.index(vid)]


@dataclass(frozen=True)
class RationalCycle:
    """Rational divisor supported on the exceptional curves."""

    vertex_ids: tuple
    coefficients: tuple

    def __getitem__(self, vid):
        return self.coefficients[self.vertex_ids.index(vid)]

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coefficients)


@dataclass(frozen=True)
class Classification:
    kind: str  # 'rational' | 'minimally_elliptic' | 'other'
    zsq: int
    multiplicity: Optional[int]
    embedding_dimension: Optional[int]
    numerically_gorenstein: bool


# -- file grammar ---------------------------------------------------------


def parse_graph(text: str) -> ResolutionGraph:
    """Parse the line-oriented graph grammar.

        vertex <id> weight=<int> [genus=<uint>]
        edge <id> <id>

    '#' starts a comment. Diagnostics carry the 1-based line number.
    """
    vertices = []
    edges = []
    ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) < 3:
                raise ParseError("vertex needs an id and a weight", lineno)
            vid = parts[1]
            if vid in ids:
                raise ParseError("duplicate vertex id %r" % vid, lineno)
            weight = None
            genus = 0
            for field in parts[2:]:
                key, sep, value = field.partition("=")
                if not sep:
                    raise ParseError("expected key=value, got %r" % field, lineno)
                if key == "weight":
                    weight = _parse_int(value, lineno)
                elif key == "genus":
                    genus = _parse_int(value, lineno)
                    if genus < 0:
                        raise ParseError("genus must be nonnegative", lineno)
                else:
                    raise ParseError("unknown field %r" % key, lineno)
            if weight is None:
                raise ParseError("vertex %r has no weight" % vid, lineno)
            if weight > -1:
                raise ParseError(
                    "vertex %r has weight %d >= 0" % (vid, weight), lineno
                )
            ids.add(vid)
            vertices.append(Vertex(vid, weight, genus))
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise ParseError("edge needs exactly two endpoints", lineno)
            a, b = parts[1], parts[2]
            for end in (a, b):
                if end not in ids:
                    raise ParseError(
                        "edge endpoint %r is not declared" % end, lineno
                    )
            if a == b:
                raise ParseError("self-loop at %r" % a, lineno)
            edges.append((a, b))
        else:
            raise ParseError("unknown directive %r" % parts[0], lineno)
    if not vertices:
        raise ParseError("no vertices declared")
    try:
        return ResolutionGraph(vertices, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _parse_int(value, lineno):
    try:
        return int(value, 10)
    except ValueError:
        raise ParseError("not an integer: %r" % value, lineno) from None


def serialize_graph(g: ResolutionGraph) -> str:
    """Inverse of parse_graph up to graph equality (vertices and edges
    in declaration order; genus written only when positive)."""
    lines = []
    for v in g.vertices:
        line = "vertex %s weight=%d" % (v.id, v.weight)
        if v.genus:
            line += " genus=%d" % v.genus
        lines.append(line)
    for a, b in g.edges:
        lines.append("edge %s %s" % (a, b))
    return "\n".join(lines) + "\n"


# -- invariants -----------------------------------------------------------


def intersection_matrix(g: ResolutionGraph) -> IntMatrix:
    """Symmetric matrix: diagonal = weights, off-diagonal = edge
    multiplicities, vertex order = declaration order."""
    n = g.n
    m = [[0] * n for _ in range(n)]
    for v, row in zip(g.vertices, m):
        row[g.index_of(v.id)] = v.weight
    for a, b in g.edges:
        i, j = g.index_of(a), g.index_of(b)
        m[i][j] += 1
        m[j][i] += 1
    return IntMatrix(m)


def _require_negative_definite(g):
    m = intersection_matrix(g)
    if not is_negative_definite(m):
        raise NotNegativeDefiniteError(
            "intersection matrix is not negative definite"
        )
    return m


def _adjunction_rhs(g):
    # K.E_i = 2g_i - 2 - E_i.E_i for every i
    return [2 * v.genus - 2 - v.weight for v in g.vertices]


def canonical_cycle(g: ResolutionGraph) -> RationalCycle:
    """Solve the adjunction system for the canonical cycle K, exactly."""
    m = _require_negative_definite(g)
    k = solve_rational(m, _adjunction_rhs(g))
    return RationalCycle(g.vertex_ids, tuple(k))


def is_numerically_gorenstein(g: ResolutionGraph) -> bool:
    return canonical_cycle(g).is_integral()


def fundamental_cycle(g: ResolutionGraph) -> Cycle:
    """Laufer's computation sequence, started at the reduced cycle.

    Z := sum of all E_i; while some Z.E_i > 0, add E_i for the
    lowest-index violating vertex. Terminates on negative-definite
    graphs and yields the componentwise-minimal cycle Z >= (1,..,1)
    with Z.E_i <= 0 for all i.
    """
    m = _require_negative_definite(g)
    n = g.n
    z = [1] * n
    prods = list(m.mul_vector(z))
    while True:
        i = next((i for i in range(n) if prods[i] > 0), None)
        if i is None:
            break
        z[i] += 1
        for j in range(n):
            prods[j] += m[j, i]
    return Cycle(g.vertex_ids, tuple(z))


def _pairing(m, x, y):
    """x^T M y with exact arithmetic (entries int or Fraction)."""
    total = Fraction(0)
    for i, row in enumerate(m.entries):
        for j, a in enumerate(row):
            if a:
                total += Fraction(x[i]) * a * Fraction(y[j])
    return total


def classify(g: ResolutionGraph) -> Classification:
    """Rational / minimally elliptic / other, from Z_o and K.

    Rational means Z_o.(Z_o+K) = -2; minimally elliptic means Z_o = -K
    exactly (the caller is responsible for passing the minimal good
    resolution for that test to be meaningful). Multiplicity and
    embedding dimension follow the Artin/Laufer rules, with the
    hypersurface floor of 3 on small cases.
    """
    m = _require_negative_definite(g)
    z = fundamental_cycle(g)
    k = canonical_cycle(g)
    zsq = int(_pairing(m, z.coefficients, z.coefficients))
    # Z.K = sum z_i (K.E_i); the adjunction right-hand side keeps this exact
    # and integral without touching K itself.
    zk = sum(zi * ri for zi, ri in zip(z.coefficients, _adjunction_rhs(g)))
    gorenstein = k.is_integral()
    if zsq + zk == -2:
        mult = -zsq
        return Classification(
            kind="rational",
            zsq=zsq,
            multiplicity=mult,
            embedding_dimension=max(3, mult + 1),
            numerically_gorenstein=gorenstein,
        )
    if all(Fraction(zi) == -ki for zi, ki in zip(z.coefficients, k.coefficients)):
        mzo = -zsq
        mult = mzo if mzo >= 4 else (2 if mzo <= 2 else 3)
        return Classification(
            kind="minimally_elliptic",
            zsq=zsq,
            multiplicity=mult,
            embedding_dimension=max(3, mzo),
            numerically_gorenstein=gorenstein,
        )
    return Classification(
        kind="other",
        zsq=zsq,
        multiplicity=None,
        embedding_dimension=None,
        numerically_gorenstein=gorenstein,
    )


# -- blow-down ------------------------------------------------------------


def blow_down_minimal(g: ResolutionGraph) -> ResolutionGraph:
    """Contract genus-0 (-1)-vertices of valency <= 2 until none remain.

    Plumbing rules: valency 0 -> delete; valency 1 -> delete and add +1
    to the neighbor; valency 2 -> delete, join the neighbors, add +1 to
    each. Each step preserves |det| of the intersection matrix and
    negative definiteness. A lone final vertex is never deleted. If a
    weight >= 0 vertex survives in a multi-vertex end state (possible
    only for inputs that were not negative definite), the graph has no
    minimal representative under these moves alone.
    """
    if not g.is_tree():
        raise ValueError("blow-down is implemented for trees only")
    verts = [
        {"id": v.id, "weight": v.weight, "genus": v.genus} for v in g.vertices
    ]
    edges = [list(e) for e in g.edges]

    def valency(vid):
        return sum(1 for a, b in edges if vid in (a, b))

    while len(verts) > 1:
        target = next(
            (
                v
                for v in verts
                if v["genus"] == 0 and v["weight"] == -1 and valency(v["id"]) <= 2
            ),
            None,
        )
        if target is None:
            break
        vid = target["id"]
        nbrs = [b if a == vid else a for a, b in edges if vid in (a, b)]
        verts = [v for v in verts if v["id"] != vid]
        edges = [e for e in edges if vid not in e]
        for v in verts:
            if v["id"] in nbrs:
                v["weight"] += 1
        if len(nbrs) == 2:
            edges.append(nbrs)
    if len(verts) > 1 and any(v["weight"] >= 0 for v in verts):
        raise NonMinimalRepresentableError(
            "blow-down left a weight >= 0 vertex; graph has no minimal "
            "representative under (-1)-contractions"
        )
    return ResolutionGraph(
        [Vertex(v["id"], v["weight"], v["genus"]) for v in verts],
        [tuple(e) for e in edges],
        allow_nonnegative_weights=True,
    )
