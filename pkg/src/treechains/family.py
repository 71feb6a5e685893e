"""The explicit H/X tree family and its long coincidence-free diagram.

Vertices are labelled (side, level) with side in {-1, 0, 1}; the planar
coordinate of (side, level) is the point (side, level).
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import TreeDiagram
from .simplicial import SimplicialGraph, SimplicialMapping


def _check_params(k: int, n: int) -> None:
    if k < 2:
        raise ValueError("k must be at least 2")
    if not 0 <= n <= k - 1:
        raise ValueError("n must be in [0, k-1]")


def build_tree(k: int, n: int) -> SimplicialGraph:
    """The tree with four endpoints, H-shaped for n < k-1 and X-shaped for n = k-1.

    Five vertex groups: two lower legs up to level n joining the centre column
    at level n+1, the centre column from n+1 to k, and two upper legs from the
    centre top at level k out to level k+1+n.
    """
    _check_params(k, n)
    groups = [
        [(1, mu) for mu in range(n + 1)] + [(0, n + 1)],
        [(-1, mu) for mu in range(n + 1)] + [(0, n + 1)],
        [(0, mu) for mu in range(n + 1, k + 1)],
        [(0, k)] + [(1, mu) for mu in range(k + 1, k + 2 + n)],
        [(0, k)] + [(-1, mu) for mu in range(k + 1, k + 2 + n)],
    ]
    vertices = set()
    edges = []
    for grp in groups:
        vertices.update(grp)
        edges.extend(zip(grp, grp[1:]))
    coords = {(side, mu): (Fraction(side), Fraction(mu)) for side, mu in vertices}
    return SimplicialGraph.build(vertices, edges, coords)


def map_s(k: int, n: int) -> SimplicialMapping:
    """The left-right reflection (side, mu) -> (-side, mu); a simplicial involution."""
    _check_params(k, n)
    t = build_tree(k, n)
    return SimplicialMapping(t, t, {(side, mu): (-side, mu) for side, mu in t.vertices})


def _check_bonding_params(k: int, n: int) -> None:
    _check_params(k, n)
    if n > k - 2:
        raise ValueError("bonding maps are defined for n <= k-2 only")


def map_sigma(k: int, n: int) -> SimplicialMapping:
    """Bonding surjection T_{n+1} -> T_n merging level n+1 into the centre column
    and collapsing the two top edges."""
    _check_bonding_params(k, n)
    src, dst = build_tree(k, n + 1), build_tree(k, n)
    assign = {}
    for side, mu in src.vertices:
        if mu == n + 1:
            assign[(side, mu)] = (0, n + 1)
        else:
            assign[(side, mu)] = (side, min(mu, k + n + 1))
    return SimplicialMapping(src, dst, assign)


def map_tau(k: int, n: int) -> SimplicialMapping:
    """Bonding surjection T_{n+1} -> T_n shifting every level down by one,
    fixing the two lowest points and folding level k+1 onto the centre top."""
    _check_bonding_params(k, n)
    src, dst = build_tree(k, n + 1), build_tree(k, n)
    assign = {}
    for side, mu in src.vertices:
        if mu == k + 1:
            assign[(side, mu)] = (0, k)
        else:
            assign[(side, mu)] = (side, max(mu - 1, 0))
    return SimplicialMapping(src, dst, assign)


def map_omega(k: int, n: int) -> SimplicialMapping:
    """The reflected shift: map_s composed with map_tau."""
    return map_s(k, n).compose(map_tau(k, n))


def build_family_diagram(k: int) -> TreeDiagram:
    """The length k-1 commutative diagram over T_0..T_{k-1} with the shift row
    reflected so the two rows have no coincidence points."""
    if k < 2:
        raise ValueError("k must be at least 2")
    levels = tuple(build_tree(k, n) for n in range(k))
    g_row = tuple(map_sigma(k, n) for n in range(k - 1))
    f_row = tuple(map_omega(k, n) for n in range(k - 1))
    return TreeDiagram(levels, g_row, f_row)
