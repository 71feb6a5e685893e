"""Exact geometry on planar tree realizations: interval regions on edges,
segment distances, the enlargement of a taut family, and SVG rendering.

All predicates are decided over the rationals; distances are handled as exact
squared values and never rooted inside a comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import sqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .covers import CoverSet, CoverSystem, sets_intersect, set_contains
from .simplicial import EdgePoint, GraphError, SimplicialGraph, vkey

Point = Tuple[Fraction, Fraction]
Interval = Tuple[Fraction, Fraction, bool, bool]  # lo, hi, lo_closed, hi_closed

ZERO = Fraction(0)
ONE = Fraction(1)


# -- exact segment primitives ---------------------------------------------


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _dot(a: Point, b: Point) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _lerp(a: Point, b: Point, t: Fraction) -> Point:
    return ((1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1])


def dist2(a: Point, b: Point) -> Fraction:
    d = _sub(a, b)
    return _dot(d, d)


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """p on the closed segment [a, b]."""
    if _cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_intersection(a: Point, b: Point, c: Point, d: Point):
    """None, ("point", p), or ("overlap",) for two closed segments."""
    r = _sub(b, a)
    s = _sub(d, c)
    denom = r[0] * s[1] - r[1] * s[0]
    ca = _sub(c, a)
    if denom != 0:
        t = (ca[0] * s[1] - ca[1] * s[0]) / denom
        u = (ca[0] * r[1] - ca[1] * r[0]) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return ("point", _lerp(a, b, t))
        return None
    if _cross(a, b, c) != 0:
        return None  # parallel, not collinear
    rr = _dot(r, r)
    if rr == 0:
        if point_on_segment(a, c, d):
            return ("point", a)
        return None
    t0 = _dot(ca, r) / rr
    t1 = _dot(_sub(d, a), r) / rr
    lo, hi = max(ZERO, min(t0, t1)), min(ONE, max(t0, t1))
    if lo > hi:
        return None
    if lo == hi:
        return ("point", _lerp(a, b, lo))
    return ("overlap",)


def segments_cross(a: Point, b: Point, c: Point, d: Point, ignore=frozenset()) -> bool:
    """True if the closed segments share a point other than the allowed ones."""
    hit = segment_intersection(a, b, c, d)
    if hit is None:
        return False
    if hit[0] == "overlap":
        return True
    return hit[1] not in ignore


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    d = _sub(b, a)
    dd = _dot(d, d)
    if dd == 0:
        return dist2(p, a)
    t = _dot(_sub(p, a), d) / dd
    t = ZERO if t < 0 else (ONE if t > 1 else t)
    return dist2(p, _lerp(a, b, t))


def segment_dist2(a: Point, b: Point, c: Point, d: Point) -> Fraction:
    # axis-aligned segments are their own bounding boxes, so the per-axis
    # range gap gives the exact distance
    if (a[0] == b[0] or a[1] == b[1]) and (c[0] == d[0] or c[1] == d[1]):
        dx = max(ZERO, min(c[0], d[0]) - max(a[0], b[0]),
                 min(a[0], b[0]) - max(c[0], d[0]))
        dy = max(ZERO, min(c[1], d[1]) - max(a[1], b[1]),
                 min(a[1], b[1]) - max(c[1], d[1]))
        return dx * dx + dy * dy
    if segment_intersection(a, b, c, d) is not None:
        return ZERO
    return min(point_segment_dist2(a, c, d), point_segment_dist2(b, c, d),
               point_segment_dist2(c, a, b), point_segment_dist2(d, a, b))


# -- interval algebra with endpoint flags ---------------------------------


def _startpos(i: Interval):
    return (i[0], 0 if i[2] else 1)


def _endpos(i: Interval):
    return (i[1], 0 if i[3] else -1)


def _nonempty(i: Interval) -> bool:
    return _startpos(i) <= _endpos(i)


def normalize_intervals(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
    items = sorted((i for i in intervals if _nonempty(i)), key=_startpos)
    out: List[Interval] = []
    for i in items:
        if out:
            last = out[-1]
            gap = _startpos(i) > (_endpos(last)[0], _endpos(last)[1] + 1)
            if not gap:
                if _endpos(i) > _endpos(last):
                    out[-1] = (last[0], i[1], last[2], i[3])
                continue
        out.append(i)
    return tuple(out)


def interval_intersection(i1: Interval, i2: Interval) -> Optional[Interval]:
    lo, lc = max((i1[0], not i1[2]), (i2[0], not i2[2]))
    hi, ho = min((i1[1], i1[3]), (i2[1], i2[3]))
    cand = (lo, hi, not lc, bool(ho))
    return cand if _nonempty(cand) else None


def intervals_intersect(a: Sequence[Interval], b: Sequence[Interval]) -> bool:
    return any(interval_intersection(i, j) is not None for i in a for j in b)


def intervals_contain(cover: Sequence[Interval], target: Interval) -> bool:
    """target covered by the (normalized) union of cover."""
    cur = _startpos(target)
    tend = _endpos(target)
    for c in cover:
        if _endpos(c) < cur:
            continue
        if _startpos(c) > cur:
            return False
        e = _endpos(c)
        cur = (e[0], e[1] + 1)
        if cur > tend:
            return True
    return cur > tend


def _point_in_intervals(t: Fraction, intervals: Sequence[Interval]) -> bool:
    return any(_startpos(i) <= (t, 0) <= _endpos(i) for i in intervals)


# -- regions on an embedded tree ------------------------------------------


@dataclass(frozen=True, eq=False)
class SegmentRegion:
    """Finite union of parameterized sub-segments of edges, with endpoint flags."""

    tree: SimplicialGraph
    pieces: Dict[Tuple, Tuple[Interval, ...]]  # edge -> normalized intervals

    @staticmethod
    def from_pieces(tree: SimplicialGraph, raw: Dict) -> "SegmentRegion":
        pieces = {}
        for edge, intervals in raw.items():
            if edge not in tree.edges:
                raise GraphError("unknown edge %r" % (edge,))
            norm = normalize_intervals(intervals)
            if norm:
                pieces[edge] = norm
        return SegmentRegion(tree, pieces)

    def is_empty(self) -> bool:
        return not self.pieces

    def sorted_edges(self):
        return sorted(self.pieces, key=lambda e: (vkey(e[0]), vkey(e[1])))

    @cached_property
    def vertex_set(self) -> frozenset:
        out = set()
        for (a, b), intervals in self.pieces.items():
            for lo, hi, lc, hc in intervals:
                if lo == 0 and lc:
                    out.add(a)
                if hi == 1 and hc:
                    out.add(b)
        return frozenset(out)

    def contains_point(self, p: EdgePoint) -> bool:
        c = p.canonical()
        if c[0] == "vertex":
            return c[1] in self.vertex_set
        _, a, b, t = c
        return _point_in_intervals(t, self.pieces.get((a, b), ()))

    def closure(self) -> "SegmentRegion":
        return SegmentRegion.from_pieces(
            self.tree,
            {e: [(lo, hi, True, True) for lo, hi, _, _ in iv]
             for e, iv in self.pieces.items()})

    @cached_property
    def geometric_pieces(self) -> Tuple[Tuple[Point, Point], ...]:
        """Closed carrier segments with exact planar endpoints."""
        segs = []
        for a, b in self.sorted_edges():
            pa, pb = self.tree.point(a), self.tree.point(b)
            for lo, hi, _, _ in self.pieces[(a, b)]:
                segs.append((_lerp(pa, pb, lo), _lerp(pa, pb, hi)))
        return tuple(segs)

    @cached_property
    def bbox(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p[0] for seg in self.geometric_pieces for p in seg]
        ys = [p[1] for seg in self.geometric_pieces for p in seg]
        if not xs:
            raise GraphError("empty region has no bounding box")
        return (min(xs), max(xs), min(ys), max(ys))

    @cached_property
    def bbox_float(self) -> Tuple[float, float, float, float]:
        return tuple(float(v) for v in self.bbox)


def region_union(regions: Sequence[SegmentRegion]) -> SegmentRegion:
    if not regions:
        raise GraphError("empty union")
    tree = regions[0].tree
    raw: Dict = {}
    for r in regions:
        if r.tree != tree:
            raise GraphError("regions live on different trees")
        for e, iv in r.pieces.items():
            raw.setdefault(e, []).extend(iv)
    return SegmentRegion.from_pieces(tree, raw)


def region_intersects(r1: SegmentRegion, r2: SegmentRegion) -> bool:
    if r1.tree != r2.tree:
        raise GraphError("regions live on different trees")
    if not r1.vertex_set.isdisjoint(r2.vertex_set):
        return True
    small, big = (r1, r2) if len(r1.pieces) <= len(r2.pieces) else (r2, r1)
    for e, iv in small.pieces.items():
        other = big.pieces.get(e)
        if other is not None and intervals_intersect(iv, other):
            return True
    return False


def region_intersection(r1: SegmentRegion, r2: SegmentRegion) -> SegmentRegion:
    """Pointwise intersection.  A vertex shared only through different edges is
    kept as a degenerate interval on one incident edge."""
    if r1.tree != r2.tree:
        raise GraphError("regions live on different trees")
    raw: Dict = {}
    covered = set()
    for e, iv in r1.pieces.items():
        other = r2.pieces.get(e)
        if other is None:
            continue
        hits = [h for h in (interval_intersection(i, j) for i in iv for j in other)
                if h is not None]
        if hits:
            raw[e] = hits
            a, b = e
            for lo, hi, lc, hc in hits:
                if lo == 0 and lc:
                    covered.add(a)
                if hi == 1 and hc:
                    covered.add(b)
    for v in (r1.vertex_set & r2.vertex_set) - covered:
        w = sorted(r1.tree.neighbors(v), key=vkey)[0]
        a, b = (v, w) if (v, w) in r1.tree.edges else (w, v)
        raw.setdefault((a, b), []).append(
            (ZERO, ZERO, True, True) if a == v else (ONE, ONE, True, True))
    return SegmentRegion.from_pieces(r1.tree, raw)


def region_contains(outer: SegmentRegion, inner: SegmentRegion) -> bool:
    if outer.tree != inner.tree:
        raise GraphError("regions live on different trees")
    for (a, b), intervals in inner.pieces.items():
        cover = list(outer.pieces.get((a, b), ()))
        # a vertex may be supplied through a different incident edge
        if a in outer.vertex_set:
            cover.append((ZERO, ZERO, True, True))
        if b in outer.vertex_set:
            cover.append((ONE, ONE, True, True))
        cover = normalize_intervals(cover)
        if not all(intervals_contain(cover, i) for i in intervals):
            return False
    return True


def covers_whole_tree(regions: Sequence[SegmentRegion]) -> bool:
    u = region_union(regions)
    full = (ZERO, ONE, True, True)
    return set(u.pieces) == set(u.tree.edges) and \
        all(iv == (full,) for iv in u.pieces.values())


def set_distance_squared(r1: SegmentRegion, r2: SegmentRegion,
                         stop_above: Optional[Fraction] = None) -> Fraction:
    """Exact squared distance between the closures of two regions.

    With ``stop_above`` set, may return early with the current minimum once it
    is <= stop_above; the true value never exceeds the returned one.
    """
    if r1.is_empty() or r2.is_empty():
        raise GraphError("distance from an empty region")
    best = None
    for p1, q1 in r1.geometric_pieces:
        for p2, q2 in r2.geometric_pieces:
            d = segment_dist2(p1, q1, p2, q2)
            if best is None or d < best:
                best = d
                if best == 0 or (stop_above is not None and best <= stop_above):
                    return best
    return best


def bbox_gap_squared(r1: SegmentRegion, r2: SegmentRegion) -> Fraction:
    """Exact lower bound for the squared distance, from bounding boxes."""
    ax0, ax1, ay0, ay1 = r1.bbox
    bx0, bx1, by0, by1 = r2.bbox
    dx = max(ZERO, bx0 - ax1, ax0 - bx1)
    dy = max(ZERO, by0 - ay1, ay0 - by1)
    return dx * dx + dy * dy


def _bbox_gap_float_lower(r1: SegmentRegion, r2: SegmentRegion) -> float:
    """Float bbox gap, shrunk past rounding error; safe for pruning only."""
    ax0, ax1, ay0, ay1 = r1.bbox_float
    bx0, bx1, by0, by1 = r2.bbox_float
    dx = max(0.0, bx0 - ax1, ax0 - bx1)
    dy = max(0.0, by0 - ay1, ay0 - by1)
    return (dx * dx + dy * dy) * (1 - 1e-9) - 1e-12


def diameter_squared(r: SegmentRegion) -> Fraction:
    """Diameter of the closed region; attained at piece endpoints."""
    pts = [p for seg in r.geometric_pieces for p in seg]
    best = ZERO
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            d = dist2(p, q)
            if d > best:
                best = d
    return best


# -- realized cover systems -----------------------------------------------


def star_region(tree: SimplicialGraph, v, epsilon: Fraction) -> SegmentRegion:
    """The half-open epsilon-star of a vertex: the initial epsilon fraction of
    every incident edge, measured in edge parameter."""
    raw: Dict = {}
    for w in tree.neighbors(v):
        a, b = (v, w) if (v, w) in tree.edges else (w, v)
        if a == v:
            raw.setdefault((a, b), []).append((ZERO, epsilon, True, False))
        else:
            raw.setdefault((a, b), []).append((1 - epsilon, ONE, False, True))
    return SegmentRegion.from_pieces(tree, raw)


def realize(system: CoverSystem, a: CoverSet) -> SegmentRegion:
    """The realized cover set: the union of the level's epsilon-stars at every
    fiber vertex of the deepest tree."""
    if system.deepest.coords is None:
        raise GraphError("the deepest tree carries no planar coordinates")
    return region_union([star_region(system.deepest, w, a.epsilon)
                         for w in sorted(a.fiber, key=vkey)])


class RealizedSystem:
    """Cover system together with the realized region of every cover set."""

    def __init__(self, system: CoverSystem):
        self.system = system
        self.regions: Dict[Tuple[int, object], SegmentRegion] = {}
        self.closures: Dict[Tuple[int, object], SegmentRegion] = {}
        for a in system.all_sets():
            r = realize(system, a)
            self.regions[(a.level, a.vertex)] = r
            self.closures[(a.level, a.vertex)] = r.closure()

    def region(self, a: CoverSet) -> SegmentRegion:
        return self.regions[(a.level, a.vertex)]

    def closure(self, a: CoverSet) -> SegmentRegion:
        return self.closures[(a.level, a.vertex)]


def compute_rho_and_mesh(realized: RealizedSystem):
    """rho (over disjoint pairs of the coarsest cover) and per-level mesh,
    reported as exact squares, plus the decay flags mesh < rho / 2^n.

    The decay condition is informational; the finite construction does not
    promise it.
    """
    system = realized.system
    level0 = system.covers[0]
    rho_sq = None
    for i, a in enumerate(level0):
        for b in level0[i + 1:]:
            if not sets_intersect(system, a, b):
                d = set_distance_squared(realized.closure(a), realized.closure(b))
                if rho_sq is None or d < rho_sq:
                    rho_sq = d
    mesh_sq = [max(diameter_squared(realized.region(a)) for a in system.covers[n])
               for n in range(system.l + 1)]
    decay = None
    if rho_sq is not None:
        decay = [mesh_sq[n] * 4 ** n < rho_sq for n in range(system.l + 1)]
    return rho_sq, mesh_sq, decay


# -- enlargement of the taut family ---------------------------------------


@dataclass(frozen=True)
class EnlargedSet:
    """Open neighborhood B(base, r) with r = 2^-level * m; r stored squared."""

    level: int
    vertex: object
    base: SegmentRegion
    radius_sq: Fraction


def _disjoint_pairs(system: CoverSystem):
    sets = system.all_sets()
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if not sets_intersect(system, a, b):
                yield a, b


def family_min_gap_squared(realized: RealizedSystem) -> Fraction:
    """Squared minimum distance over disjoint pairs of the whole family."""
    system = realized.system
    best = None
    best_hi = 0.0
    for a, b in _disjoint_pairs(system):
        ra, rb = realized.closure(a), realized.closure(b)
        if best is not None and _bbox_gap_float_lower(ra, rb) >= best_hi:
            continue
        d = set_distance_squared(ra, rb)
        if best is None or d < best:
            best = d
            best_hi = float(best) * (1 + 1e-9) + 1e-12
    if best is None:
        raise GraphError("the family has no disjoint pair; enlargement margin undefined")
    return best


def enlarge_taut_family(realized: RealizedSystem,
                        m_sq: Optional[Fraction] = None) -> List[EnlargedSet]:
    """Enlarge every cover set to an open planar neighborhood: margin m is one
    third of the least gap between disjoint members, halved per level."""
    if m_sq is None:
        m_sq = family_min_gap_squared(realized) / 9
    out = []
    for a in realized.system.all_sets():
        out.append(EnlargedSet(a.level, a.vertex, realized.region(a),
                               m_sq / 4 ** a.level))
    return out


def _sqrt_exact(x: Fraction) -> Optional[Fraction]:
    """sqrt(x) when rational, else None."""
    from math import isqrt
    pn, qn = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and qn * qn == x.denominator:
        return Fraction(pn, qn)
    return None


def _gt_sum_of_roots(d2: Fraction, ra2: Fraction, rb2: Fraction) -> bool:
    """Exact test d > r_a + r_b given all three values squared."""
    root = _sqrt_exact(ra2 * rb2)
    if root is not None:
        return d2 > ra2 + rb2 + 2 * root
    lhs = d2 - ra2 - rb2
    if lhs <= 0:
        return False
    return lhs * lhs > 4 * ra2 * rb2


def enlargement_disjointness_violation(realized: RealizedSystem,
                                       enlarged: Sequence[EnlargedSet]):
    """Disjoint members must get enlarged sets with disjoint closures:
    d(U, V) > r_U + r_V, compared via exact squares."""
    by_key = {(e.level, e.vertex): e for e in enlarged}
    # (r_a + r_b)^2 upper bound in float per radius pair, for bbox pruning;
    # radii repeat per level so the cache stays tiny
    thr_hi: Dict[Tuple[Fraction, Fraction], float] = {}
    for a, b in _disjoint_pairs(realized.system):
        ea, eb = by_key[(a.level, a.vertex)], by_key[(b.level, b.vertex)]
        ra, rb = realized.closure(a), realized.closure(b)
        ra2, rb2 = ea.radius_sq, eb.radius_sq
        key = (ra2, rb2)
        if key not in thr_hi:
            s = sqrt(float(ra2)) + sqrt(float(rb2))
            thr_hi[key] = s * s * (1 + 1e-9) + 1e-12
        if _bbox_gap_float_lower(ra, rb) > thr_hi[key]:
            continue
        d2 = set_distance_squared(ra, rb)
        if not _gt_sum_of_roots(d2, ra2, rb2):
            return ((a.level, a.vertex), (b.level, b.vertex), d2)
    return None


def enlargement_nesting_violation(realized: RealizedSystem,
                                  enlarged: Sequence[EnlargedSet]):
    """A deeper member contained in a shallower one must keep its enlarged
    closure inside the other's enlargement: base containment plus a strictly
    smaller radius."""
    system = realized.system
    by_key = {(e.level, e.vertex): e for e in enlarged}
    for j in range(1, system.l + 1):
        for n in range(j):
            bond = system.bond(n, j)
            for u_set in system.covers[j]:
                v_set = system.cover_set(n, bond[u_set.vertex])
                eu = by_key[(j, u_set.vertex)]
                ev = by_key[(n, v_set.vertex)]
                if not eu.radius_sq < ev.radius_sq:
                    return ((j, u_set.vertex), (n, v_set.vertex), "radius")
                if not region_contains(realized.region(v_set), realized.region(u_set)):
                    return ((j, u_set.vertex), (n, v_set.vertex), "base")
    return None


# -- rendering -------------------------------------------------------------

_PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
            "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"]


def _fmt(x: float) -> str:
    return ("%.3f" % x).rstrip("0").rstrip(".")


def render_svg(realized: RealizedSystem, path: str,
               enlarged: Optional[Sequence[EnlargedSet]] = None,
               levels: Optional[Sequence[int]] = None,
               scale: float = 60.0) -> str:
    """Write a deterministic SVG: tree skeleton plus one capsule-stroked layer
    per cover level.  Returns the SVG text."""
    system = realized.system
    tree = system.deepest
    if levels is None:
        levels = list(range(system.l + 1))
    radii = None
    if enlarged is not None:
        radii = {(e.level, e.vertex): sqrt(float(e.radius_sq)) for e in enlarged}

    xs = [float(p[0]) for p in tree.coords.values()]
    ys = [float(p[1]) for p in tree.coords.values()]
    margin = 1.0
    x0, y1 = min(xs) - margin, max(ys) + margin
    width = (max(xs) - min(xs) + 2 * margin) * scale
    height = (max(ys) - min(ys) + 2 * margin) * scale

    def to_px(p):
        return ((float(p[0]) - x0) * scale, (y1 - float(p[1])) * scale)

    lines = ['<svg xmlns="http://www.w3.org/2000/svg" width="%s" height="%s" '
             'viewBox="0 0 %s %s">' % (_fmt(width + 160), _fmt(height),
                                       _fmt(width + 160), _fmt(height))]
    for idx, n in enumerate(levels):
        color = _PALETTE[n % len(_PALETTE)]
        if radii is not None:
            width_of = lambda a: 2 * radii[(a.level, a.vertex)] * scale
        else:
            width_of = lambda a: 0.16 * scale / (a.level + 1)
        lines.append('<g id="level-%d" stroke="%s" stroke-opacity="0.45" '
                     'fill="none" stroke-linecap="round">' % (n, color))
        for a in system.covers[n]:
            r = realized.region(a)
            parts = []
            for p, q in r.geometric_pieces:
                pp, qq = to_px(p), to_px(q)
                parts.append("M %s %s L %s %s" % (_fmt(pp[0]), _fmt(pp[1]),
                                                  _fmt(qq[0]), _fmt(qq[1])))
            lines.append('<path class="link" stroke-width="%s" d="%s"/>'
                         % (_fmt(width_of(a)), " ".join(parts)))
        lines.append("</g>")
    lines.append('<g id="skeleton" stroke="#000000" stroke-width="1.5">')
    for a, b in tree.sorted_edges():
        pa, pb = to_px(tree.point(a)), to_px(tree.point(b))
        lines.append('<line x1="%s" y1="%s" x2="%s" y2="%s"/>'
                     % (_fmt(pa[0]), _fmt(pa[1]), _fmt(pb[0]), _fmt(pb[1])))
    lines.append("</g>")
    lines.append('<g id="legend" font-family="sans-serif" font-size="14">')
    for idx, n in enumerate(levels):
        y = 20 + 20 * idx
        color = _PALETTE[n % len(_PALETTE)]
        lines.append('<rect x="%s" y="%s" width="12" height="12" fill="%s"/>'
                     % (_fmt(width + 20), _fmt(y - 10), color))
        lines.append('<text x="%s" y="%s">cover %d (%d links)</text>'
                     % (_fmt(width + 40), _fmt(y), n, len(system.covers[n])))
    lines.append("</g>")
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
