"""JSON serialization for graphs, diagrams, cover systems, and instances.

Vertices serialize as [side, level] integer pairs or ["sub", [u, v], "1/3"]
tags for subdivision vertices; rationals as "p/q" strings.  Round-tripping an
instance file is the identity on its canonical form.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional

from .covers import CoverSystem, EpsilonSchedule
from .diagram import TreeDiagram
from .simplicial import SimplicialGraph, SimplicialMapping, vkey

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def fraction_to_json(x: Fraction) -> str:
    return "%d/%d" % (x.numerator, x.denominator)


def fraction_from_json(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str) and "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    raise FormatError("not a rational: %r" % (s,))


def vertex_to_json(v):
    if isinstance(v, tuple):
        if len(v) == 3 and v[0] == "sub":
            (a, b), t = v[1], v[2]
            return ["sub", [vertex_to_json(a), vertex_to_json(b)], t]
        if len(v) == 2 and all(isinstance(x, int) for x in v):
            return [v[0], v[1]]
        raise FormatError("unsupported vertex label %r" % (v,))
    if isinstance(v, (int, str)):
        return v
    raise FormatError("unsupported vertex label %r" % (v,))


def vertex_from_json(obj):
    if isinstance(obj, list):
        if len(obj) == 3 and obj[0] == "sub":
            a, b = obj[1]
            if obj[2] not in ("1/3", "2/3"):
                raise FormatError("bad subdivision tag %r" % (obj[2],))
            return ("sub", (vertex_from_json(a), vertex_from_json(b)), obj[2])
        if len(obj) == 2 and all(isinstance(x, int) for x in obj):
            return (obj[0], obj[1])
        raise FormatError("unsupported vertex encoding %r" % (obj,))
    if isinstance(obj, (int, str)):
        return obj
    raise FormatError("unsupported vertex encoding %r" % (obj,))


def graph_to_json(g: SimplicialGraph) -> dict:
    out = {
        "vertices": [vertex_to_json(v) for v in g.sorted_vertices()],
        "edges": [[vertex_to_json(a), vertex_to_json(b)] for a, b in g.sorted_edges()],
    }
    if g.coords is not None:
        out["coords"] = [
            [vertex_to_json(v), [fraction_to_json(g.coords[v][0]),
                                 fraction_to_json(g.coords[v][1])]]
            for v in g.sorted_vertices()]
    return out


def graph_from_json(obj: dict, check_embedding: bool = False) -> SimplicialGraph:
    vertices = [vertex_from_json(v) for v in obj["vertices"]]
    edges = [(vertex_from_json(a), vertex_from_json(b)) for a, b in obj["edges"]]
    coords = None
    if "coords" in obj:
        coords = {vertex_from_json(v): (fraction_from_json(x), fraction_from_json(y))
                  for v, (x, y) in obj["coords"]}
    return SimplicialGraph.build(vertices, edges, coords, check_embedding=check_embedding)


def assignment_to_json(assignment: Dict) -> list:
    return [[vertex_to_json(v), vertex_to_json(w)]
            for v, w in sorted(assignment.items(), key=lambda kv: vkey(kv[0]))]


def assignment_from_json(obj: list) -> Dict:
    return {vertex_from_json(v): vertex_from_json(w) for v, w in obj}


def diagram_to_json(d: TreeDiagram) -> dict:
    return {
        "levels": [graph_to_json(g) for g in d.levels],
        "g_row": [assignment_to_json(m.assignment) for m in d.g_row],
        "f_row": [assignment_to_json(m.assignment) for m in d.f_row],
    }


def diagram_from_json(obj: dict) -> TreeDiagram:
    levels = [graph_from_json(g) for g in obj["levels"]]
    if len(obj["g_row"]) != len(levels) - 1 or len(obj["f_row"]) != len(levels) - 1:
        raise FormatError("row length does not match level count")
    g_row = tuple(SimplicialMapping(levels[n + 1], levels[n],
                                    assignment_from_json(obj["g_row"][n]))
                  for n in range(len(levels) - 1))
    f_row = tuple(SimplicialMapping(levels[n + 1], levels[n],
                                    assignment_from_json(obj["f_row"][n]))
                  for n in range(len(levels) - 1))
    return TreeDiagram(tuple(levels), g_row, f_row)


def instance_to_json(diagram: TreeDiagram, epsilons: EpsilonSchedule,
                     phi_tables: Optional[List[Dict]] = None,
                     enlargement: Optional[dict] = None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "epsilon": [fraction_to_json(e) for e in epsilons.values],
        "diagram": diagram_to_json(diagram),
    }
    if phi_tables is not None:
        out["phi"] = [assignment_to_json(t) for t in phi_tables]
    if enlargement is not None:
        out["enlargement"] = {
            "m_sq": fraction_to_json(enlargement["m_sq"]),
            "radius_sq": [fraction_to_json(r) for r in enlargement["radius_sq"]],
        }
    return out


class Instance:
    """Parsed instance bundle: diagram + schedule + optional overrides."""

    def __init__(self, diagram: TreeDiagram, epsilons: EpsilonSchedule,
                 phi_tables: Optional[List[Dict]] = None,
                 enlargement: Optional[dict] = None):
        self.diagram = diagram
        self.epsilons = epsilons
        self.phi_tables = phi_tables
        self.enlargement = enlargement

    def to_json(self) -> dict:
        return instance_to_json(self.diagram, self.epsilons,
                                self.phi_tables, self.enlargement)


def instance_from_json(obj: dict) -> Instance:
    if obj.get("schema") != SCHEMA_VERSION:
        raise FormatError("unsupported schema %r" % (obj.get("schema"),))
    epsilons = EpsilonSchedule.build([fraction_from_json(e) for e in obj["epsilon"]])
    diagram = diagram_from_json(obj["diagram"])
    phi = None
    if "phi" in obj:
        phi = [assignment_from_json(t) for t in obj["phi"]]
    enlargement = None
    if "enlargement" in obj:
        enl = obj["enlargement"]
        enlargement = {
            "m_sq": fraction_from_json(enl["m_sq"]),
            "radius_sq": [fraction_from_json(r) for r in enl["radius_sq"]],
        }
    return Instance(diagram, epsilons, phi, enlargement)


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_json(json.load(fh))


def dump_json(obj: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def system_to_json(system: CoverSystem) -> dict:
    """Fibers and pattern tables of a built system (derived data).

    Output files label covers 1..l+1; in-memory levels are 0-based.
    """
    return {
        "schema": SCHEMA_VERSION,
        "epsilon": [fraction_to_json(e) for e in system.epsilons.values],
        "levels": [
            {
                "level": n + 1,
                "sets": [
                    {"vertex": vertex_to_json(a.vertex),
                     "fiber": [vertex_to_json(w) for w in sorted(a.fiber, key=vkey)]}
                    for a in system.covers[n]
                ],
            }
            for n in range(system.l + 1)
        ],
        "phi": [assignment_to_json(t) for t in system.phi],
    }


def regions_to_json(realized) -> dict:
    """Interval dump of every realized cover set; levels labeled 1-based."""
    out = {"schema": SCHEMA_VERSION, "sets": []}
    for a in realized.system.all_sets():
        r = realized.region(a)
        out["sets"].append({
            "level": a.level + 1,
            "vertex": vertex_to_json(a.vertex),
            "pieces": [
                [[vertex_to_json(e[0]), vertex_to_json(e[1])],
                 [[fraction_to_json(lo), fraction_to_json(hi), lc, hc]
                  for lo, hi, lc, hc in r.pieces[e]]]
                for e in r.sorted_edges()
            ],
        })
    return out
