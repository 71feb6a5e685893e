"""Regenerate the checked-in negative fixtures under tests/fixtures.

Each fixture is a minimal mutation of a generated instance, picked so the
verification report fails at one specific condition and passes every earlier
one.  Run from the repository root:

    python3 tools/make_fixtures.py
"""

import copy
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from treechains.diagram import (  # noqa: E402
    TreeDiagram,
    coincidence_free,
    commutativity_violation,
    proximity_vertices,
)
from treechains.serialize import dump_json, instance_from_json  # noqa: E402
from treechains.simplicial import SimplicialMapping, vkey  # noqa: E402
from treechains.verify import generate_instance, verify_instance  # noqa: E402

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")


def expect(name, payload, condition):
    try:
        inst = instance_from_json(json.loads(json.dumps(payload)))
    except Exception:
        first = "schema"
    else:
        first = verify_instance(inst).first_failure()
    if first != condition:
        raise SystemExit("%s: fails at %r, wanted %r" % (name, first, condition))
    dump_json(payload, os.path.join(OUT, name))
    print("%-28s fails at %s" % (name, condition))


def mutate_f(diagram, n, v, w):
    assignment = dict(diagram.f_row[n].assignment)
    assignment[v] = w
    f_row = list(diagram.f_row)
    f_row[n] = SimplicialMapping(diagram.levels[n + 1], diagram.levels[n], assignment)
    return TreeDiagram(diagram.levels, diagram.g_row, tuple(f_row))


def broken_commutativity():
    inst = generate_instance(2)
    d = inst.diagram
    for v in d.levels[2].sorted_vertices():
        for w in d.levels[1].sorted_vertices():
            if w == d.f_row[1].assignment[v]:
                continue
            cand = mutate_f(d, 1, v, w)
            if cand.well_formed_violation() is not None:
                continue
            if commutativity_violation(cand) is None:
                continue
            inst.diagram = cand
            expect("broken_commutativity.json", inst.to_json(), "commutative")
            return
    raise SystemExit("no commutativity mutation found")


def phi_equals_g():
    inst = generate_instance(1)
    inst.phi_tables = [dict(inst.diagram.g_row[0].assignment)]
    expect("phi_equals_g.json", inst.to_json(), "D1")


def eps_nondecreasing():
    payload = generate_instance(1).to_json()
    payload["epsilon"] = ["3/4", "3/4"]
    expect("eps_nondecreasing.json", payload, "schema")


def proximity_edit():
    inst = generate_instance(1)
    d = inst.diagram
    for v in d.levels[1].sorted_vertices():
        for w in sorted(d.levels[0].vertices, key=vkey):
            if w == d.f_row[0].assignment[v]:
                continue
            cand = mutate_f(d, 0, v, w)
            if cand.well_formed_violation() is not None:
                continue
            if not coincidence_free(cand.f_row[0], cand.g_row[0]):
                continue
            if not proximity_vertices(cand.f_row[0], cand.g_row[0]):
                continue
            inst.diagram = cand
            expect("proximity_edit.json", inst.to_json(), "proximity-free")
            return
    raise SystemExit("no proximity mutation found")


def inflated_radius():
    inst = generate_instance(1)
    # a level-0 radius of 3 swallows every gap in a tree of unit edges
    from fractions import Fraction
    inst.enlargement = {"m_sq": Fraction(9),
                        "radius_sq": [Fraction(9), Fraction(9, 4)]}
    expect("inflated_radius.json", inst.to_json(), "enlargement-disjoint")


def main():
    os.makedirs(OUT, exist_ok=True)
    broken_commutativity()
    phi_equals_g()
    eps_nondecreasing()
    proximity_edit()
    inflated_radius()


if __name__ == "__main__":
    main()
