from fractions import Fraction

import pytest

from treechains.covers import (
    CoverSystem,
    EpsilonSchedule,
    ScheduleError,
    build_cover_system,
    check_D1,
    check_D2,
    check_D2prime,
    check_D3,
    contains_member,
    d1_violation,
    nerve,
    nerve_isomorphic_to,
    point_in_cover_set,
    refinement_violation,
    set_contains,
    sets_intersect,
    strongly_refines,
)
from treechains.simplicial import EdgePoint, GraphError, k_close
from treechains.verify import generate_instance


def make_system(l):
    inst = generate_instance(l)
    return build_cover_system(inst.diagram, inst.epsilons)


class TestSchedule:
    def test_default_values(self):
        sched = EpsilonSchedule.default(2)
        assert sched.values == (Fraction(3, 4), Fraction(2, 3), Fraction(5, 8))

    def test_rejects_bad_schedules(self):
        with pytest.raises(ScheduleError):
            EpsilonSchedule.build([])
        with pytest.raises(ScheduleError):
            EpsilonSchedule.build([Fraction(1)])
        with pytest.raises(ScheduleError):
            EpsilonSchedule.build([Fraction(3, 4), Fraction(1, 2)])
        with pytest.raises(ScheduleError):
            EpsilonSchedule.build([Fraction(3, 4), Fraction(3, 4)])

    def test_length_must_match_diagram(self):
        inst = generate_instance(2)
        with pytest.raises(ScheduleError):
            CoverSystem(inst.diagram, EpsilonSchedule.default(1))


class TestSystem:
    def test_fibers_partition_deepest_tree(self):
        system = make_system(2)
        for n in range(system.l + 1):
            union = set()
            for a in system.covers[n]:
                assert union.isdisjoint(a.fiber)
                union |= a.fiber
            assert union == set(system.deepest.vertices)

    def test_deepest_fibers_are_singletons(self):
        system = make_system(2)
        assert all(a.fiber == frozenset([a.vertex]) for a in system.covers[-1])

    def test_phi_defaults_to_f_row(self):
        system = make_system(2)
        for n in range(system.l):
            assert system.phi[n] == system.diagram.f_row[n].assignment

    def test_phi_override_must_be_total(self):
        inst = generate_instance(1)
        with pytest.raises(GraphError):
            CoverSystem(inst.diagram, inst.epsilons, [{}])

    def test_build_rejects_proximity_diagram(self):
        from treechains.family import build_family_diagram
        d = build_family_diagram(3)  # unsubdivided: has proximity vertices
        with pytest.raises(GraphError):
            build_cover_system(d, EpsilonSchedule.default(d.length))


class TestIntersection:
    def test_matches_one_closeness_on_deepest_level(self):
        system = make_system(1)
        sets = system.covers[-1]
        for i, a in enumerate(sets):
            for b in sets[i + 1:]:
                expected = k_close(system.deepest, a.vertex, b.vertex, 1)
                assert sets_intersect(system, a, b) == expected

    def test_distant_stars_disjoint(self):
        system = make_system(1)
        sets = system.covers[-1]
        far = [(a, b) for a in sets for b in sets
               if not k_close(system.deepest, a.vertex, b.vertex, 1)]
        assert far
        a, b = far[0]
        assert not sets_intersect(system, a, b)

    def test_membership_is_tower_fiber(self):
        system = make_system(2)
        for a in system.all_sets():
            for w in system.deepest.vertices:
                assert contains_member(system, w, a) == (w in a.fiber)

    def test_point_membership_half_open(self):
        system = make_system(1)
        a_edge, b_edge = system.deepest.sorted_edges()[0]
        a = system.cover_set(system.l, a_edge)
        eps = a.epsilon
        inside = EdgePoint(a_edge, b_edge, eps - Fraction(1, 100))
        boundary = EdgePoint(a_edge, b_edge, eps)
        assert point_in_cover_set(system, inside, a)
        assert not point_in_cover_set(system, boundary, a)


class TestConditions:
    def test_strong_refinement_with_witness(self):
        system = make_system(3)
        for j in range(1, system.l + 1):
            for n in range(j):
                ok, witness = strongly_refines(system, j, n)
                assert ok
                for w, v in witness.items():
                    assert system.fibers[j][w] <= system.fibers[n][v]
        with pytest.raises(GraphError):
            refinement_violation(system, 1, 1)

    def test_containment_canonical_witness(self):
        system = make_system(2)
        inner = system.covers[2][0]
        outer = system.cover_set(0, system.bond(0, 2)[inner.vertex])
        assert set_contains(system, outer, inner)
        other = next(a for a in system.covers[0] if a.vertex != outer.vertex)
        assert not set_contains(system, other, inner)
        assert not set_contains(system, inner, outer)

    def test_pattern_conditions_hold_on_generated(self):
        for l in (1, 2, 3):
            system = make_system(l)
            assert check_D1(system)
            for j in range(l):
                for n in range(j + 1):
                    assert check_D2(system, j, n)
                    assert check_D2prime(system, j, n)
            for n in range(l):
                assert check_D3(system, n)

    def test_d1_fails_with_refinement_witness_as_pattern(self):
        inst = generate_instance(1)
        system = CoverSystem(inst.diagram, inst.epsilons,
                             [dict(inst.diagram.g_row[0].assignment)])
        assert d1_violation(system) is not None


class TestNerve:
    def test_isomorphic_at_every_level(self):
        system = make_system(2)
        for n in range(system.l + 1):
            assert nerve_isomorphic_to(system, n)
            g = nerve(system, n)
            assert g.is_tree()
            assert g == system.diagram.levels[n]
