import random
from fractions import Fraction

import pytest

from treechains.simplicial import (
    EdgePoint,
    GraphError,
    SimplicialGraph,
    SimplicialMapping,
    canonical_edge,
    compose_tower,
    evaluate_realization,
    from_subdivided,
    is_surjection,
    k_close,
    lift_map_3,
    subdivide3,
    subdivision_vertex,
    to_subdivided,
    validate_simplicial,
    vkey,
)


def path_graph(n, spacing=1):
    coords = {i: (Fraction(i * spacing), Fraction(0)) for i in range(n)}
    return SimplicialGraph.build(range(n), [(i, i + 1) for i in range(n - 1)], coords)


class TestGraph:
    def test_canonical_edge_orientation(self):
        assert canonical_edge(3, 1) == (1, 3)
        assert canonical_edge((1, 0), (-1, 0)) == ((-1, 0), (1, 0))
        with pytest.raises(ValueError):
            canonical_edge(2, 2)

    def test_vkey_orders_mixed_labels(self):
        labels = [("sub", (0, 1), "1/3"), 5, (1, 2), "x"]
        assert sorted(labels, key=vkey) == [5, "x", (1, 2), ("sub", (0, 1), "1/3")]

    def test_edge_needs_known_endpoints(self):
        with pytest.raises(GraphError):
            SimplicialGraph.build([0, 1], [(0, 2)])

    def test_tree_predicate(self):
        g = path_graph(4)
        assert g.is_tree()
        cyc = SimplicialGraph.build(range(3), [(0, 1), (1, 2), (0, 2)])
        assert cyc.is_connected() and not cyc.is_tree()

    def test_embedding_rejects_crossing_edges(self):
        coords = {0: (Fraction(0), Fraction(0)), 1: (Fraction(2), Fraction(2)),
                  2: (Fraction(0), Fraction(2)), 3: (Fraction(2), Fraction(0))}
        with pytest.raises(GraphError):
            SimplicialGraph.build(range(4), [(0, 1), (2, 3)], coords)

    def test_embedding_rejects_vertex_inside_edge(self):
        coords = {0: (Fraction(0), Fraction(0)), 1: (Fraction(2), Fraction(0)),
                  2: (Fraction(1), Fraction(0))}
        with pytest.raises(GraphError):
            SimplicialGraph.build(range(3), [(0, 1)], coords)


class TestKClose:
    def test_path_distances(self):
        g = path_graph(4)
        # path a-b-c-d: the far ends need three steps
        assert not k_close(g, 0, 3, 2)
        assert k_close(g, 0, 3, 3)
        assert k_close(g, 0, 2, 2)
        assert k_close(g, 1, 1, 1)

    def test_rejects_nonpositive_k(self):
        with pytest.raises(ValueError):
            k_close(path_graph(2), 0, 1, 0)


class TestMapping:
    def test_validation_and_surjectivity(self):
        g = path_graph(3)
        h = path_graph(2)
        fold = SimplicialMapping(g, h, {0: 0, 1: 1, 2: 0})
        assert validate_simplicial(fold)
        assert is_surjection(fold)
        tear = SimplicialMapping(path_graph(4), h, {0: 0, 1: 1, 2: 0, 3: 1})
        assert validate_simplicial(tear)
        skip = SimplicialMapping(path_graph(3), path_graph(3), {0: 0, 1: 2, 2: 2})
        assert not validate_simplicial(skip)

    def test_compose_tower_identity_and_chain(self):
        g2, g1, g0 = path_graph(4), path_graph(3), path_graph(2)
        maps = [SimplicialMapping(g1, g0, {0: 0, 1: 1, 2: 1}),
                SimplicialMapping(g2, g1, {0: 0, 1: 1, 2: 2, 3: 2})]
        ident = compose_tower(maps, 1, 1)
        assert ident.assignment == {v: v for v in g1.vertices}
        full = compose_tower(maps, 0, 2)
        assert full.assignment == {0: 0, 1: 1, 2: 1, 3: 1}

    def test_realization_functoriality(self):
        rng = random.Random(11)
        g2, g1, g0 = path_graph(5), path_graph(4), path_graph(3)
        f = SimplicialMapping(g2, g1, {0: 0, 1: 1, 2: 2, 3: 3, 4: 2}).require_valid()
        g = SimplicialMapping(g1, g0, {0: 0, 1: 1, 2: 2, 3: 1}).require_valid()
        gf = g.compose(f)
        for _ in range(100):
            a = rng.randrange(4)
            p = EdgePoint(a, a + 1, Fraction(rng.randrange(0, 101), 100))
            assert evaluate_realization(gf, p) == \
                evaluate_realization(g, evaluate_realization(f, p))


class TestEdgePoint:
    def test_canonicalization(self):
        assert EdgePoint(0, 1, Fraction(0)) == EdgePoint.vertex(0)
        assert EdgePoint(0, 1, Fraction(1)) == EdgePoint.vertex(1)
        assert EdgePoint(1, 0, Fraction(1, 4)) == EdgePoint(0, 1, Fraction(3, 4))
        with pytest.raises(ValueError):
            EdgePoint(0, 1, Fraction(3, 2))

    def test_coords(self):
        g = path_graph(3, spacing=2)
        assert EdgePoint(0, 1, Fraction(1, 2)).coords(g) == (Fraction(1), Fraction(0))


class TestSubdivision:
    def test_counts(self):
        g = path_graph(8)
        g3 = subdivide3(g)
        assert len(g3.vertices) == 8 + 2 * 7
        assert len(g3.edges) == 3 * 7
        assert g3.is_tree()

    def test_orientation_independent_labels(self):
        g = path_graph(2)
        assert subdivision_vertex(g, (0, 1), Fraction(1, 3)) == \
            subdivision_vertex(g, (1, 0), Fraction(2, 3))

    def test_subdivision_coordinates_roundtrip(self):
        rng = random.Random(5)
        for _ in range(200):
            a = rng.randrange(5)
            p = EdgePoint(a, a + 1, Fraction(rng.randrange(0, 61), 60))
            assert from_subdivided(to_subdivided(p)) == p

    def test_lift_is_simplicial_and_pointwise_equal(self):
        g = path_graph(5)
        h = path_graph(4)
        f = SimplicialMapping(g, h, {0: 0, 1: 1, 2: 2, 3: 3, 4: 2}).require_valid()
        f3 = lift_map_3(f)
        assert validate_simplicial(f3)
        rng = random.Random(23)
        for _ in range(300):
            a = rng.randrange(4)
            p = EdgePoint(a, a + 1, Fraction(rng.randrange(0, 301), 300))
            lifted = evaluate_realization(f3, to_subdivided(p))
            assert from_subdivided(lifted) == evaluate_realization(f, p)

    def test_subdivided_coords_are_thirds(self):
        g = path_graph(2, spacing=3)
        g3 = subdivide3(g)
        u = subdivision_vertex(g, (0, 1), Fraction(1, 3))
        assert g3.point(u) == (Fraction(1), Fraction(0))
