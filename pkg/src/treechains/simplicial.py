"""Finite simplicial graphs, simplicial maps, and trisection subdivision.

Vertices are arbitrary hashable labels (tuples in practice).  Planar
coordinates, when present, are exact rational pairs, and every predicate in
this module is decided with exact arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Hashable, Iterable, Optional, Tuple

Vertex = Hashable
Point = Tuple[Fraction, Fraction]

THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


def vkey(v):
    """Total order on vertex labels, stable across runs."""
    if isinstance(v, tuple):
        return (2,) + tuple(vkey(x) for x in v)
    if isinstance(v, bool):
        return (1, str(v))
    if isinstance(v, int):
        return (0, v)
    return (1, str(v))


def canonical_edge(u: Vertex, v: Vertex) -> Tuple[Vertex, Vertex]:
    if u == v:
        raise ValueError("degenerate edge {%r}" % (u,))
    return (u, v) if vkey(u) < vkey(v) else (v, u)


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SimplicialGraph:
    """A finite 1-dimensional simplicial complex, optionally embedded in the plane.

    ``edges`` holds canonically ordered pairs.  Instances are immutable;
    derived graphs (subdivisions) are new values.
    """

    vertices: frozenset
    edges: frozenset
    coords: Optional[Dict[Vertex, Point]] = field(default=None)

    @staticmethod
    def build(vertices: Iterable[Vertex], edges: Iterable[Tuple[Vertex, Vertex]],
              coords: Optional[Dict[Vertex, Point]] = None,
              check_embedding: bool = True) -> "SimplicialGraph":
        vs = frozenset(vertices)
        es = frozenset(canonical_edge(u, v) for u, v in edges)
        for a, b in es:
            if a not in vs or b not in vs:
                raise GraphError("edge (%r, %r) has endpoint outside vertex set" % (a, b))
        g = SimplicialGraph(vs, es, dict(coords) if coords is not None else None)
        if coords is not None and check_embedding:
            bad = g.embedding_violation()
            if bad is not None:
                raise GraphError("inconsistent planar embedding: %r" % (bad,))
        return g

    def __eq__(self, other):
        if not isinstance(other, SimplicialGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    @cached_property
    def adjacency(self) -> Dict[Vertex, frozenset]:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: Vertex) -> frozenset:
        try:
            return self.adjacency[v]
        except KeyError:
            raise GraphError("unknown vertex %r" % (v,))

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def endpoints(self) -> frozenset:
        return frozenset(v for v in self.vertices if self.degree(v) == 1)

    def sorted_vertices(self):
        return sorted(self.vertices, key=vkey)

    def sorted_edges(self):
        return sorted(self.edges, key=lambda e: (vkey(e[0]), vkey(e[1])))

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u != v and canonical_edge(u, v) in self.edges

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1

    def point(self, v: Vertex) -> Point:
        if self.coords is None:
            raise GraphError("graph has no planar coordinates")
        return self.coords[v]

    def embedding_violation(self):
        """Return a witness if the planar coordinates are not consistent.

        Consistency: an injection on vertices, segments of distinct edges meet
        only in shared endpoint coordinates, and no vertex lies in the
        interior of another edge's segment.
        """
        from .geometry import point_on_segment, segments_cross
        pts = {}
        for v in self.vertices:
            p = self.point(v)
            if p in pts:
                return ("duplicate-coordinate", pts[p], v)
            pts[p] = v
        segs = [(e, self.point(e[0]), self.point(e[1])) for e in self.sorted_edges()]
        for e, a, b in segs:
            for v in self.vertices:
                if v in e:
                    continue
                if point_on_segment(self.point(v), a, b):
                    return ("vertex-in-edge", v, e)
        for i, (e1, a1, b1) in enumerate(segs):
            for e2, a2, b2 in segs[i + 1:]:
                shared = set(e1) & set(e2)
                hit = segments_cross(a1, b1, a2, b2, ignore={self.point(v) for v in shared})
                if hit:
                    return ("edges-cross", e1, e2)
        return None


def k_close(g: SimplicialGraph, u: Vertex, v: Vertex, k: int) -> bool:
    """True iff there is a walk of length <= k from u to v (repeats allowed)."""
    if k < 1:
        raise ValueError("k must be positive")
    if u not in g.vertices or v not in g.vertices:
        raise GraphError("unknown vertex")
    if u == v:
        return True
    dist = {u: 0}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        d = dist[w]
        if d == k:
            continue
        for x in g.adjacency[w]:
            if x not in dist:
                dist[x] = d + 1
                if x == v:
                    return True
                queue.append(x)
    return False


@dataclass(frozen=True)
class SimplicialMapping:
    """Vertex assignment between two graphs.

    Not validated on construction (negative fixtures need invalid maps);
    use :func:`validate_simplicial` / :meth:`require_valid`.
    """

    source: SimplicialGraph
    target: SimplicialGraph
    assignment: Dict[Vertex, Vertex]

    def __call__(self, v: Vertex) -> Vertex:
        return self.assignment[v]

    def totality_violation(self):
        for v in self.source.vertices:
            if v not in self.assignment:
                return ("missing", v)
        for v, w in self.assignment.items():
            if w not in self.target.vertices:
                return ("bad-value", v, w)
        return None

    def edge_violation(self):
        for a, b in self.source.sorted_edges():
            fa, fb = self.assignment[a], self.assignment[b]
            if fa != fb and not self.target.has_edge(fa, fb):
                return (a, b)
        return None

    def require_valid(self) -> "SimplicialMapping":
        bad = self.totality_violation()
        if bad is not None:
            raise GraphError("mapping not total: %r" % (bad,))
        bad = self.edge_violation()
        if bad is not None:
            raise GraphError("edge %r not sent to an edge or a vertex" % (bad,))
        return self

    def compose(self, inner: "SimplicialMapping") -> "SimplicialMapping":
        """self o inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise GraphError("maps are not chainable")
        return SimplicialMapping(
            inner.source, self.target,
            {v: self.assignment[w] for v, w in inner.assignment.items()})

    @staticmethod
    def identity(g: SimplicialGraph) -> "SimplicialMapping":
        return SimplicialMapping(g, g, {v: v for v in g.vertices})


def validate_simplicial(m: SimplicialMapping) -> bool:
    return m.totality_violation() is None and m.edge_violation() is None


def is_surjection(m: SimplicialMapping) -> bool:
    return set(m.assignment[v] for v in m.source.vertices) == set(m.target.vertices)


def compose_tower(maps, i: int, j: int) -> SimplicialMapping:
    """g_ij = g_i o ... o g_{j-1}; g_ii is the identity.

    ``maps[n]`` sends level n+1 to level n.
    """
    if not 0 <= i <= j <= len(maps):
        raise ValueError("need 0 <= i <= j <= l")
    for n in range(len(maps) - 1):
        if maps[n].source != maps[n + 1].target:
            raise GraphError("tower is not chainable at %d" % n)
    if i == j:
        g = maps[i].target if i < len(maps) else maps[-1].source
        return SimplicialMapping.identity(g)
    out = maps[i]
    for n in range(i + 1, j):
        out = out.compose(maps[n])
    return out


@dataclass(frozen=True)
class EdgePoint:
    """The point (1-t)a + t b of a geometric realization; a == b means the vertex a."""

    a: Vertex
    b: Vertex
    t: Fraction

    def __post_init__(self):
        if not 0 <= self.t <= 1:
            raise ValueError("parameter outside [0,1]")

    def canonical(self):
        if self.a == self.b or self.t == 0:
            return ("vertex", self.a)
        if self.t == 1:
            return ("vertex", self.b)
        if vkey(self.a) < vkey(self.b):
            return ("edge", self.a, self.b, self.t)
        return ("edge", self.b, self.a, 1 - self.t)

    def __eq__(self, other):
        if not isinstance(other, EdgePoint):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    @staticmethod
    def vertex(v: Vertex) -> "EdgePoint":
        return EdgePoint(v, v, Fraction(0))

    def coords(self, g: SimplicialGraph) -> Point:
        pa, pb = g.point(self.a), g.point(self.b)
        t = self.t
        return ((1 - t) * pa[0] + t * pb[0], (1 - t) * pa[1] + t * pb[1])


def evaluate_realization(m: SimplicialMapping, p: EdgePoint) -> EdgePoint:
    """Image of p under the piecewise-linear realization of m."""
    fa, fb = m.assignment[p.a], m.assignment[p.b]
    if fa == fb:
        return EdgePoint.vertex(fa)
    return EdgePoint(fa, fb, p.t)


def _sub_label(a: Vertex, b: Vertex, t: Fraction) -> Vertex:
    # (a, b) must already be canonical; t is 1/3 or 2/3 measured from a
    return ("sub", (a, b), "1/3" if t == THIRD else "2/3")


def subdivision_vertex(g: SimplicialGraph, edge, t: Fraction) -> Vertex:
    """Label of the point at parameter t (1/3 or 2/3) on an edge of g, in g^(3)."""
    a, b = canonical_edge(*edge)
    if (a, b) != tuple(edge):
        t = 1 - t
    return _sub_label(a, b, t)


def subdivide3(g: SimplicialGraph) -> SimplicialGraph:
    """Subdivide each edge into three congruent parts."""
    verts = set(g.vertices)
    edges = []
    coords = dict(g.coords) if g.coords is not None else None
    for a, b in g.sorted_edges():
        ua = _sub_label(a, b, THIRD)
        ub = _sub_label(a, b, TWO_THIRDS)
        verts.add(ua)
        verts.add(ub)
        edges.extend([(a, ua), (ua, ub), (ub, b)])
        if coords is not None:
            pa, pb = g.point(a), g.point(b)
            coords[ua] = (TWO_THIRDS * pa[0] + THIRD * pb[0],
                          TWO_THIRDS * pa[1] + THIRD * pb[1])
            coords[ub] = (THIRD * pa[0] + TWO_THIRDS * pb[0],
                          THIRD * pa[1] + TWO_THIRDS * pb[1])
    # the embedding stays consistent: the point set is unchanged
    return SimplicialGraph.build(verts, edges, coords, check_embedding=False)


def to_subdivided(p: EdgePoint) -> EdgePoint:
    """The same geometric point, in subdivision coordinates of g^(3)."""
    c = p.canonical()
    if c[0] == "vertex":
        return EdgePoint.vertex(c[1])
    _, a, b, t = c
    ua, ub = _sub_label(a, b, THIRD), _sub_label(a, b, TWO_THIRDS)
    if t <= THIRD:
        return EdgePoint(a, ua, 3 * t)
    if t <= TWO_THIRDS:
        return EdgePoint(ua, ub, 3 * (t - THIRD))
    return EdgePoint(ub, b, 3 * (t - TWO_THIRDS))


def _original_position(v):
    # (a, b, t) when v is a subdivision label on edge (a, b), else None
    if isinstance(v, tuple) and len(v) == 3 and v[0] == "sub":
        a, b = v[1]
        return (a, b, THIRD if v[2] == "1/3" else TWO_THIRDS)
    return None


def from_subdivided(p3: EdgePoint) -> EdgePoint:
    """Inverse of :func:`to_subdivided`: a point of g^(3) as a point of g."""
    c = p3.canonical()
    if c[0] == "vertex":
        pos = _original_position(c[1])
        if pos is None:
            return EdgePoint.vertex(c[1])
        return EdgePoint(pos[0], pos[1], pos[2])
    _, x, y, t = c
    px, py = _original_position(x), _original_position(y)
    if px is None and py is None:
        raise GraphError("(%r, %r) is not a subdivision edge" % (x, y))
    if px is None:
        a, b, q = py
        px = (a, b, Fraction(0) if x == a else Fraction(1))
    elif py is None:
        a, b, q = px
        py = (a, b, Fraction(0) if y == a else Fraction(1))
    if px[:2] != py[:2]:
        raise GraphError("(%r, %r) spans two original edges" % (x, y))
    a, b = px[:2]
    return EdgePoint(a, b, (1 - t) * px[2] + t * py[2])


def lift_map_3(m: SimplicialMapping,
               source3: Optional[SimplicialGraph] = None,
               target3: Optional[SimplicialGraph] = None) -> SimplicialMapping:
    """The induced map between trisection subdivisions.

    Each subdivision vertex is sent to the image of its point under the
    realization of m, which is again a vertex of the subdivided target.
    """
    m.require_valid()
    g3 = source3 if source3 is not None else subdivide3(m.source)
    h3 = target3 if target3 is not None else subdivide3(m.target)
    assign = {}
    for v in m.source.vertices:
        assign[v] = m.assignment[v]
    for a, b in m.source.sorted_edges():
        fa, fb = m.assignment[a], m.assignment[b]
        for t in (THIRD, TWO_THIRDS):
            w = _sub_label(a, b, t)
            if fa == fb:
                assign[w] = fa
            else:
                assign[w] = subdivision_vertex(m.target, (fa, fb), t)
    return SimplicialMapping(g3, h3, assign)
