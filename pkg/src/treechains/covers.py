"""Star covers of the deepest tree, pattern functions, and the combinatorial
condition checkers (refinement, D1, D2, D2', D3, nerve).

Every cover set is represented by its fiber: the set U_n^v is the preimage of
the epsilon-star of v under the realization of the bonding composition down to
level n, and a vertex w of the deepest tree lies in U_n^v exactly when the
composition sends w to v.  All intersection and containment questions reduce
to 1-closeness of fibers and fiber inclusion; the exact geometric counterpart
lives in :mod:`treechains.geometry`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .diagram import TreeDiagram, commutativity_violation, proximity_vertices
from .simplicial import EdgePoint, GraphError, vkey


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class EpsilonSchedule:
    """Strictly decreasing star radii with 1 > eps_0 and eps_l > 1/2."""

    values: Tuple[Fraction, ...]

    @staticmethod
    def build(values: Sequence[Fraction]) -> "EpsilonSchedule":
        vals = tuple(Fraction(v) for v in values)
        if not vals:
            raise ScheduleError("empty schedule")
        if not vals[0] < 1:
            raise ScheduleError("eps_0 must be below 1")
        if not vals[-1] > Fraction(1, 2):
            raise ScheduleError("eps_l must exceed 1/2")
        for a, b in zip(vals, vals[1:]):
            if not a > b:
                raise ScheduleError("schedule must be strictly decreasing")
        return EpsilonSchedule(vals)

    @staticmethod
    def default(l: int) -> "EpsilonSchedule":
        # 1/2 + 1/(2(n+2)): strictly decreasing within (1/2, 3/4]
        return EpsilonSchedule.build(
            [Fraction(1, 2) + Fraction(1, 2 * (n + 2)) for n in range(l + 1)])

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True)
class CoverSet:
    """U_n^v, stored as the fiber of v inside the vertex set of the deepest tree."""

    level: int
    vertex: object
    fiber: FrozenSet
    epsilon: Fraction

    def key(self):
        return (self.level, vkey(self.vertex))


class CoverSystem:
    """All covers and pattern functions generated by a diagram and a schedule.

    ``phi_tables`` may override the tables read off the f-row (used by
    negative fixtures).
    """

    def __init__(self, diagram: TreeDiagram, epsilons: EpsilonSchedule,
                 phi_tables: Optional[List[Dict]] = None):
        l = diagram.length
        if len(epsilons) != l + 1:
            raise ScheduleError("schedule length %d != l+1 = %d" % (len(epsilons), l + 1))
        self.diagram = diagram
        self.epsilons = epsilons
        self.l = l
        self.deepest = diagram.levels[-1]

        # towers[n]: vertex of T_l -> vertex of T_n under the g-row composition
        towers = [None] * (l + 1)
        towers[l] = {w: w for w in self.deepest.vertices}
        for n in range(l - 1, -1, -1):
            g = diagram.g_row[n].assignment
            towers[n] = {w: g[v] for w, v in towers[n + 1].items()}
        self.towers = towers

        self.fibers: List[Dict] = []
        for n in range(l + 1):
            fib: Dict = {v: set() for v in diagram.levels[n].vertices}
            for w, v in towers[n].items():
                fib[v].add(w)
            self.fibers.append({v: frozenset(ws) for v, ws in fib.items()})

        self.covers: List[List[CoverSet]] = []
        for n in range(l + 1):
            sets = [CoverSet(n, v, self.fibers[n][v], epsilons[n])
                    for v in diagram.levels[n].sorted_vertices()]
            self.covers.append(sets)

        if phi_tables is None:
            self.phi = [dict(diagram.f_row[n].assignment) for n in range(l)]
        else:
            if len(phi_tables) != l:
                raise GraphError("need %d pattern tables" % l)
            self.phi = [dict(t) for t in phi_tables]
        for n, table in enumerate(self.phi):
            for v in diagram.levels[n + 1].vertices:
                if table.get(v) not in diagram.levels[n].vertices:
                    raise GraphError("pattern table %d not total at %r" % (n, v))

        # closed 1-neighborhoods of fibers in T_l, for fast intersection tests
        adj = self.deepest.adjacency
        self._hull: Dict[Tuple[int, object], FrozenSet] = {}
        for sets in self.covers:
            for a in sets:
                hull = set(a.fiber)
                for w in a.fiber:
                    hull.update(adj[w])
                self._hull[(a.level, a.vertex)] = frozenset(hull)

        self._bonds: Dict[Tuple[int, int], Dict] = {}

    # -- plumbing ---------------------------------------------------------

    def cover_set(self, n: int, v) -> CoverSet:
        return CoverSet(n, v, self.fibers[n][v], self.epsilons[n])

    def all_sets(self) -> List[CoverSet]:
        return [a for sets in self.covers for a in sets]

    def bond(self, n: int, j: int) -> Dict:
        """g_{nj} as a vertex dictionary (n <= j)."""
        if not 0 <= n <= j <= self.l:
            raise GraphError("need 0 <= n <= j <= l")
        key = (n, j)
        if key not in self._bonds:
            out = {v: v for v in self.diagram.levels[j].vertices}
            for m in range(j - 1, n - 1, -1):
                g = self.diagram.g_row[m].assignment
                out = {v: g[w] for v, w in out.items()}
            self._bonds[key] = out
        return self._bonds[key]

    def apply_phi(self, a: CoverSet) -> CoverSet:
        if not 1 <= a.level <= self.l:
            raise GraphError("phi is defined on levels 1..l")
        return self.cover_set(a.level - 1, self.phi[a.level - 1][a.vertex])

    def hull(self, a: CoverSet) -> FrozenSet:
        return self._hull[(a.level, a.vertex)]


def build_cover_system(diagram: TreeDiagram, epsilons: EpsilonSchedule,
                       phi_tables: Optional[List[Dict]] = None) -> CoverSystem:
    """Validate the construction preconditions and assemble the system."""
    bad = diagram.well_formed_violation()
    if bad is not None:
        raise GraphError("diagram not well formed: %r" % (bad,))
    bad = commutativity_violation(diagram)
    if bad is not None:
        raise GraphError("diagram not commutative at %r" % (bad,))
    prox = proximity_vertices(diagram.f_row[0], diagram.g_row[0])
    if prox:
        raise GraphError("f_0, g_0 have proximity vertices: %r" % (sorted(prox, key=vkey),))
    return CoverSystem(diagram, epsilons, phi_tables)


# -- membership and intersection ------------------------------------------


def contains_member(system: CoverSystem, w, a: CoverSet) -> bool:
    """Vertex w of the deepest tree lies in U_n^v iff the bonding composition
    sends w to v."""
    return system.towers[a.level][w] == a.vertex


def point_in_cover_set(system: CoverSystem, p: EdgePoint, a: CoverSet) -> bool:
    """Definitional membership of an arbitrary realization point: push p down
    the g-tower and test against the epsilon-star of a.vertex."""
    tower = system.towers[a.level]
    q = EdgePoint(tower[p.a], tower[p.b], p.t) if tower[p.a] != tower[p.b] \
        else EdgePoint.vertex(tower[p.a])
    c = q.canonical()
    if c[0] == "vertex":
        return c[1] == a.vertex
    _, u, v, t = c
    if a.vertex == u:
        return t < a.epsilon
    if a.vertex == v:
        return 1 - t < a.epsilon
    return False


def sets_intersect(system: CoverSystem, a: CoverSet, b: CoverSet) -> bool:
    """Nonempty intersection: some pair of fiber vertices is 1-close in the
    deepest tree.  Symmetric; closures intersect exactly when the sets do."""
    if len(a.fiber) > len(b.fiber):
        a, b = b, a
    return not system.hull(b).isdisjoint(a.fiber)


def set_contains(system: CoverSystem, outer: CoverSet, inner: CoverSet) -> bool:
    """inner (deeper level) contained in outer; equivalent to the bonding map
    sending inner.vertex to outer.vertex, and to closure containment."""
    if inner.level < outer.level:
        return False
    return system.bond(outer.level, inner.level)[inner.vertex] == outer.vertex


# -- condition checkers: each returns a witness tuple or None --------------


def refinement_violation(system: CoverSystem, j: int, n: int):
    """Strong refinement of level n by level j > n, with the canonical witness
    map; checked by fiber inclusion."""
    if not 0 <= n < j <= system.l:
        raise GraphError("need n < j")
    bond = system.bond(n, j)
    for w in system.diagram.levels[j].sorted_vertices():
        if not system.fibers[j][w] <= system.fibers[n][bond[w]]:
            return (j, w)
    return None


def strongly_refines(system: CoverSystem, j: int, n: int):
    """(True, witness map U_j^w -> U_n^{g_nj(w)}) for generated systems."""
    bad = refinement_violation(system, j, n)
    return (bad is None, dict(system.bond(n, j)))


def d1_violation(system: CoverSystem, n: int = 0):
    """U in level n meets V in level n+1 but phi_n(V) still meets U."""
    for v_set in system.covers[n + 1]:
        img = system.apply_phi(v_set)
        for u_set in system.covers[n]:
            if sets_intersect(system, u_set, v_set) and \
                    sets_intersect(system, img, u_set):
                return (u_set.vertex, v_set.vertex)
    return None


def d2_violation(system: CoverSystem, j: int, n: int):
    """U in level j+1 meets V in level n+1 but the phi-images are disjoint."""
    if not 0 <= n <= j <= system.l - 1:
        raise GraphError("need 0 <= n <= j <= l-1")
    for u_set in system.covers[j + 1]:
        img_u = system.apply_phi(u_set)
        for v_set in system.covers[n + 1]:
            if sets_intersect(system, u_set, v_set) and \
                    not sets_intersect(system, img_u, system.apply_phi(v_set)):
                return (u_set.vertex, v_set.vertex)
    return None


def d2prime_violation(system: CoverSystem, j: int, n: int):
    """cl(U) inside V but phi_j(U) not inside phi_n(V), for U in level j+1 and
    V in level n+1; containments decided by the canonical fiber witness."""
    if not 0 <= n <= j <= system.l - 1:
        raise GraphError("need 0 <= n <= j <= l-1")
    for u_set in system.covers[j + 1]:
        for v_set in system.covers[n + 1]:
            if set_contains(system, v_set, u_set) and \
                    not set_contains(system, system.apply_phi(v_set),
                                     system.apply_phi(u_set)):
                return (u_set.vertex, v_set.vertex)
    return None


def d3_violation(system: CoverSystem, n: int):
    """U, V in level n+1 meet but their phi-images are disjoint."""
    sets = system.covers[n + 1]
    for i, u_set in enumerate(sets):
        img_u = system.apply_phi(u_set)
        for v_set in sets[i:]:
            if sets_intersect(system, u_set, v_set) and \
                    not sets_intersect(system, img_u, system.apply_phi(v_set)):
                return (u_set.vertex, v_set.vertex)
    return None


def check_D1(system: CoverSystem, n: int = 0) -> bool:
    return d1_violation(system, n) is None


def check_D2(system: CoverSystem, j: int, n: Optional[int] = None) -> bool:
    return d2_violation(system, j, j if n is None else n) is None


def check_D2prime(system: CoverSystem, j: int, n: Optional[int] = None) -> bool:
    return d2prime_violation(system, j, j if n is None else n) is None


def check_D3(system: CoverSystem, n: int) -> bool:
    return d3_violation(system, n) is None


def nerve(system: CoverSystem, n: int):
    """Nerve of level n as a simplicial graph on the vertices of T_n."""
    from .simplicial import SimplicialGraph
    sets = system.covers[n]
    edges = []
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if sets_intersect(system, a, b):
                edges.append((a.vertex, b.vertex))
    return SimplicialGraph.build([a.vertex for a in sets], edges)


def nerve_isomorphic_to(system: CoverSystem, n: int) -> bool:
    """The canonical map U_n^v -> v is an isomorphism onto T_n."""
    t = system.diagram.levels[n]
    nv = nerve(system, n)
    return nv.vertices == t.vertices and nv.edges == t.edges
