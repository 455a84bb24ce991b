"""Splice diagrams derived from resolution graphs.

The diagram keeps the valency != 2 vertices of the graph (leaves and
nodes); every maximal valency-2 chain becomes a single edge. A node v
carries one weight per incident edge e: the absolute determinant of the
intersection matrix of the component of the graph minus v in the
direction of e. Everything downstream of the paper's weight calculus
lives here: edge determinants, linking numbers, node weights, the ZHS
test, and the semigroup condition with its monomial witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import NotQhsTreeError
from .graph import ResolutionGraph, intersection_matrix
from .intmat import determinant, is_negative_definite

__all__ = [
    "SpliceEdge",
    "SpliceDiagram",
    "SemigroupWitness",
    "to_splice_diagram",
    "edge_determinant",
    "linking_number",
    "node_weight",
    "is_zhs",
    "semigroup_condition",
]

WITNESS_CAP = 10_000


@dataclass(frozen=True)
class SpliceEdge:
    index: int
    a: str  # endpoint with the lower declaration index
    b: str
    path: tuple  # gamma vertex ids from a to b, inclusive

    def other(self, vid):
        if vid == self.a:
            return self.b
        if vid == self.b:
            return self.a
        raise ValueError("%r is not an endpoint of this edge" % vid)

    def first_step(self, vid):
        """The gamma vertex one step along the edge, seen from vid."""
        if vid == self.a:
            return self.path[1]
        if vid == self.b:
            return self.path[-2]
        raise ValueError("%r is not an endpoint of this edge" % vid)


class SpliceDiagram:
    """Tree with leaves (valency <= 1) and nodes (valency >= 3) and a
    weight for each (node, incident edge) pair. Built from a graph via
    to_splice_diagram; keeps provenance to the graph's vertex ids."""

    __slots__ = ("gamma", "vertices", "leaves", "nodes", "edges", "weights")

    def __init__(self, gamma, vertices, leaves, nodes, edges, weights):
        self.gamma = gamma
        self.vertices = tuple(vertices)
        self.leaves = tuple(leaves)
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.weights = dict(weights)
        for (vid, _), d in self.weights.items():
            if d < 1:
                raise AssertionError(
                    "splice weight %d < 1 at node %r" % (d, vid)
                )

    @property
    def has_nodes(self):
        return bool(self.nodes)

    def is_node(self, vid):
        return vid in self.nodes

    def is_leaf(self, vid):
        return vid in self.leaves

    def incident_edges(self, vid):
        """Edges at vid, ordered by the declaration index of their
        first gamma vertex seen from vid (deterministic)."""
        inc = [e for e in self.edges if vid in (e.a, e.b)]
        inc.sort(key=lambda e: self.gamma.index_of(e.first_step(vid)))
        return tuple(inc)

    def weight(self, vid, edge):
        return self.weights[(vid, edge.index)]

    def direction_label(self, vid, edge):
        return "toward %s" % edge.first_step(vid)

    def path_between(self, u, v):
        """Vertices of the diagram tree path from u to v, inclusive."""
        adj = {w: [] for w in self.vertices}
        for e in self.edges:
            adj[e.a].append((e.b, e))
            adj[e.b].append((e.a, e))
        parent = {u: (None, None)}
        stack = [u]
        while stack:
            cur = stack.pop()
            if cur == v:
                break
            for nxt, e in adj[cur]:
                if nxt not in parent:
                    parent[nxt] = (cur, e)
                    stack.append(nxt)
        if v not in parent:
            raise ValueError("no path between %r and %r" % (u, v))
        verts = [v]
        path_edges = []
        cur = v
        while parent[cur][0] is not None:
            cur, e = parent[cur]
            verts.append(cur)
            path_edges.append(e)
        verts.reverse()
        path_edges.reverse()
        return verts, path_edges

    def leaves_beyond(self, vid, edge):
        """Diagram leaves in the branch of `edge` at `vid`, in gamma
        declaration order."""
        start = edge.other(vid)
        adj = {w: [] for w in self.vertices}
        for e in self.edges:
            adj[e.a].append(e.b)
            adj[e.b].append(e.a)
        seen = {vid, start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        seen.discard(vid)
        return tuple(
            w for w in self.leaves if w in seen
        )

    def render_text(self):
        """Indented text form: one node per line, weights in
        parentheses, leaves named by graph ids."""
        if not self.has_nodes:
            if len(self.vertices) == 1:
                return "leaf %s (no nodes)\n" % self.vertices[0]
            return "chain %s -- %s (no nodes)\n" % (
                self.vertices[0],
                self.vertices[-1],
            )
        lines = []
        for v in self.nodes:
            parts = []
            for e in self.incident_edges(v):
                other = e.other(v)
                kind = "node" if self.is_node(other) else "leaf"
                parts.append("(%d) %s %s" % (self.weight(v, e), kind, other))
            lines.append("node %s: %s" % (v, ", ".join(parts)))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SemigroupWitness:
    """Per (node, direction) exponent vectors alpha over the leaves in
    that branch with sum alpha(w) * l_vw = d_v. `truncated` lists the
    directions whose enumeration hit the solution cap."""

    holds: bool
    solutions: dict  # (node_id, edge_index) -> list of {leaf_id: exp}
    failures: tuple  # (node_id, direction label) pairs with no solution
    truncated: tuple = field(default_factory=tuple)

    def at(self, diagram, node_id, first_step):
        """Solutions for the direction of `node_id` whose edge starts
        with the gamma vertex `first_step`."""
        for e in diagram.incident_edges(node_id):
            if e.first_step(node_id) == first_step:
                return self.solutions[(node_id, e.index)]
        raise KeyError((node_id, first_step))


def to_splice_diagram(g: ResolutionGraph) -> SpliceDiagram:
    """Collapse valency-2 vertices; weight each (node, edge) pair with
    the |det| of the cut-off subgraph on that side."""
    if not g.is_tree() or any(v.genus > 0 for v in g.vertices):
        raise NotQhsTreeError(
            "not a QHS tree: graph must be a tree of genus-0 curves"
        )
    if not is_negative_definite(intersection_matrix(g)):
        raise NotQhsTreeError(
            "not a QHS tree: intersection matrix is not negative definite"
        )
    dverts = [v.id for v in g.vertices if g.valency(v.id) != 2]
    dset = set(dverts)
    leaves = tuple(v for v in dverts if g.valency(v) <= 1)
    nodes = tuple(v for v in dverts if g.valency(v) >= 3)

    edges = []
    seen_pairs = set()
    for vid in dverts:
        for u in g.neighbors(vid):
            path = [vid, u]
            prev, cur = vid, u
            while cur not in dset:
                nxt = next(w for w in g.neighbors(cur) if w != prev)
                path.append(nxt)
                prev, cur = cur, nxt
            a, b = path[0], path[-1]
            if g.index_of(a) > g.index_of(b):
                continue  # recorded from the other end
            key = (a, b)
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            edges.append(
                SpliceEdge(index=len(edges), a=a, b=b, path=tuple(path))
            )

    weights = {}
    for vid in nodes:
        for e in (x for x in edges if vid in (x.a, x.b)):
            side = _component_without(g, vid, e.first_step(vid))
            sub = intersection_matrix(g.induced_subgraph(side))
            weights[(vid, e.index)] = abs(determinant(sub))
    return SpliceDiagram(g, dverts, leaves, nodes, edges, weights)


def _component_without(g, removed, start):
    seen = {removed, start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in g.neighbors(cur):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    seen.discard(removed)
    return [v.id for v in g.vertices if v.id in seen]


def edge_determinant(d: SpliceDiagram, e: SpliceEdge) -> int:
    """Product of the two weights on the edge minus the product of the
    weights adjacent to it (around both endpoint nodes)."""
    if not (d.is_node(e.a) and d.is_node(e.b)):
        raise ValueError("edge determinant needs an edge between two nodes")
    on = d.weight(e.a, e) * d.weight(e.b, e)
    adjacent = 1
    for vid in (e.a, e.b):
        for other in d.incident_edges(vid):
            if other.index != e.index:
                adjacent *= d.weight(vid, other)
    return on - adjacent


def node_weight(d: SpliceDiagram, v: str) -> int:
    """Product of all weights on the edges at the node v."""
    if not d.is_node(v):
        raise ValueError("%r is not a node" % v)
    out = 1
    for e in d.incident_edges(v):
        out *= d.weight(v, e)
    return out


def linking_number(d: SpliceDiagram, v: str, w: str) -> int:
    """Product of the weights adjacent to, but not on, the path from v
    to w (including the weights around the endpoint nodes). For a node
    v, linking_number(v, v) is the node weight."""
    if v == w:
        if d.is_node(v):
            return node_weight(d, v)
        raise ValueError("self-linking is undefined for a leaf")
    verts, path_edges = d.path_between(v, w)
    on = {e.index for e in path_edges}
    out = 1
    for x in verts:
        if d.is_node(x):
            for e in d.incident_edges(x):
                if e.index not in on:
                    out *= d.weight(x, e)
    return out


def is_zhs(g: ResolutionGraph, diagram: SpliceDiagram = None) -> bool:
    """|det| = 1 test, plus the three weight conditions asserted as a
    cross-check when it holds: pairwise coprime weights at each node,
    leaf-edge weights > 1, positive edge determinants."""
    det = determinant(intersection_matrix(g))
    if abs(det) != 1:
        return False
    d = diagram if diagram is not None else to_splice_diagram(g)
    for v in d.nodes:
        inc = d.incident_edges(v)
        ws = [d.weight(v, e) for e in inc]
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                if gcd(ws[i], ws[j]) != 1:
                    raise AssertionError(
                        "ZHS cross-check failed: weights at %r not coprime" % v
                    )
        for e in inc:
            if d.is_leaf(e.other(v)) and d.weight(v, e) <= 1:
                raise AssertionError(
                    "ZHS cross-check failed: leaf-edge weight <= 1 at %r" % v
                )
    for e in d.edges:
        if d.is_node(e.a) and d.is_node(e.b) and edge_determinant(d, e) <= 0:
            raise AssertionError(
                "ZHS cross-check failed: nonpositive edge determinant"
            )
    return True


def semigroup_condition(d: SpliceDiagram) -> SemigroupWitness:
    """Does every node weight lie in the numerical semigroup of the
    linking numbers of the leaves beyond each incident edge?

    Witnesses list all representations found by exhaustive bounded
    enumeration (complete below the WITNESS_CAP cutoff), each as a map
    leaf id -> exponent.
    """
    if not d.has_nodes:
        raise ValueError("semigroup condition needs at least one node")
    solutions = {}
    failures = []
    truncated = []
    for v in d.nodes:
        dv = node_weight(d, v)
        for e in d.incident_edges(v):
            outer = d.leaves_beyond(v, e)
            links = [linking_number(d, v, w) for w in outer]
            sols = _bounded_representations(dv, outer, links, WITNESS_CAP)
            key = (v, e.index)
            solutions[key] = sols
            if len(sols) >= WITNESS_CAP:
                truncated.append((v, d.direction_label(v, e)))
            if not sols:
                failures.append((v, d.direction_label(v, e)))
    return SemigroupWitness(
        holds=not failures,
        solutions=solutions,
        failures=tuple(failures),
        truncated=tuple(truncated),
    )


def _bounded_representations(target, leaves, links, cap):
    """All alpha >= 0 with sum alpha_i * links_i == target, as dicts
    keyed by leaf id (zero exponents omitted), lexicographic order."""
    sols = []

    def rec(idx, remaining, acc):
        if len(sols) >= cap:
            return
        if idx == len(leaves):
            if remaining == 0 and acc:
                sols.append(dict(acc))
            return
        if idx == len(leaves) - 1:
            # last coordinate is forced
            l = links[idx]
            if remaining == 0:
                rec(idx + 1, 0, acc)
            elif remaining % l == 0:
                acc.append((leaves[idx], remaining // l))
                rec(idx + 1, 0, acc)
                acc.pop()
            return
        l = links[idx]
        for a in range(remaining // l + 1):
            if a:
                acc.append((leaves[idx], a))
            rec(idx + 1, remaining - a * l, acc)
            if a:
                acc.pop()

    rec(0, target, [])
    return sols
