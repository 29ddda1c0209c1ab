"""Core incidence geometry: graphs, chains, distances, and verifiers."""

import math
import random

import pytest

from gainquad import (GF, IncidenceStructure, affine_plane, count_shortest_chains,
                      compose_isomorphisms, distance, firmness, incidence_graph,
                      invert_isomorphism, is_chain, is_generalized_ngon,
                      is_linear_space, is_ovoid, Isomorphism, steiner_parameters,
                      structure_from_json, structure_to_json, verify_isomorphism)
from helpers import (enumerate_chains, naive_shortest_count, quadrilateral,
                     random_structure, relabeled, tiny_base)


def test_construction_validation():
    with pytest.raises(ValueError):
        IncidenceStructure([], ["b"], [(0, 0)])
    with pytest.raises(ValueError):
        IncidenceStructure(["p"], ["b"], [])
    with pytest.raises(ValueError):
        IncidenceStructure(["p"], ["b"], [(0, 1)])


def test_smallest_incidence_graph():
    s = IncidenceStructure(["p"], ["b"], [(0, 0)])
    g = incidence_graph(s)
    assert g.n_vertices == 2
    assert g.edges == ((1, 0),)  # oriented line -> point


def test_affine_plane_graphs():
    g2 = incidence_graph(affine_plane(GF(2)).structure)
    assert g2.n_vertices == 10 and len(g2.edges) == 12
    g3 = incidence_graph(affine_plane(GF(3)).structure)
    assert g3.n_vertices == 21 and len(g3.edges) == 36


def test_distance_basics():
    s = quadrilateral()
    assert distance(s, 0, 0) == 0
    assert distance(s, 0, s.line_eid(0)) == 1
    assert distance(s, 0, 2) == 4  # opposite corners of the cycle
    with pytest.raises(ValueError):
        distance(s, 0, 99)


def test_distance_disconnected():
    s = IncidenceStructure(["p", "q"], ["a", "b"], [(0, 0), (1, 1)])
    assert distance(s, 0, 1) == math.inf


def test_distance_parity():
    rng = random.Random(5)
    for _ in range(20):
        s = random_structure(rng)
        for u in range(s.n_elements):
            for v in range(s.n_elements):
                d = distance(s, u, v)
                if d is not math.inf:
                    same_type = s.is_point_eid(u) == s.is_point_eid(v)
                    assert (d % 2 == 0) == same_type


def test_count_shortest_trivial():
    s = quadrilateral()
    assert count_shortest_chains(s, 2, 2) == 1  # the empty chain
    assert count_shortest_chains(s, 0, s.line_eid(0)) == 1
    assert count_shortest_chains(s, 0, 2) == 2  # both ways around the cycle


def test_count_shortest_disconnected_raises():
    s = IncidenceStructure(["p", "q"], ["a", "b"], [(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        count_shortest_chains(s, 0, 1)


def test_count_matches_enumerator_on_random_structures():
    rng = random.Random(11)
    for _ in range(15):
        s = random_structure(rng)
        for u in range(s.n_elements):
            for v in range(s.n_elements):
                k, naive = naive_shortest_count(s, u, v)
                if k is None:
                    assert distance(s, u, v) == math.inf
                else:
                    assert distance(s, u, v) == k
                    assert count_shortest_chains(s, u, v) == naive


def test_census_exact_fallback(monkeypatch, expansion2):
    import gainquad.geometry as geometry
    dist_fast, count_fast = geometry.chain_census(expansion2, 4)
    monkeypatch.setattr(geometry, "_EXACT_LIMIT", 1.0)
    dist_slow, count_slow = geometry.chain_census(expansion2, 4)
    assert (dist_fast == dist_slow).all()
    assert (count_fast == count_slow).all()


def test_chains_may_backtrack_at_longer_lengths():
    # The chain definition places no repetition constraint: going
    # out and back is a legal 2-chain, just never a shortest one.
    s = tiny_base()
    assert enumerate_chains(s, 0, 0, 2) == 1  # p -> b -> p


def test_is_chain():
    s = quadrilateral()
    assert is_chain(s, [0])
    assert is_chain(s, [0, s.line_eid(0), 1])
    assert not is_chain(s, [0, 1])
    assert not is_chain(s, [])


def test_linear_space_verdicts():
    assert is_linear_space(affine_plane(GF(3)).structure).ok
    # two lines through the same two points
    s = IncidenceStructure(["p", "q", "r"], ["a", "b", "c"],
                           [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2), (0, 2)])
    verdict = is_linear_space(s)
    assert not verdict.ok
    assert verdict.witness[0] == "points-on-multiple-lines"
    assert verdict.witness[1:3] == (0, 1)
    # complete incidence: every point on every line
    s = IncidenceStructure(["p", "q"], ["a"], [(0, 0), (1, 0)])
    verdict = is_linear_space(s)
    assert not verdict.ok
    assert verdict.witness == ("no-non-incident-pair",)


def test_linear_space_short_line():
    s = IncidenceStructure(["p", "q"], ["a", "b"], [(0, 0), (1, 0), (0, 1)])
    verdict = is_linear_space(s)
    assert not verdict.ok
    assert verdict.witness == ("short-line", 1)


def test_steiner_parameters():
    assert steiner_parameters(affine_plane(GF(2)).structure) == (4, 2)
    assert steiner_parameters(affine_plane(GF(2, 2)).structure) == (16, 4)
    # the near-pencil on four points: a linear space with line sizes 3 and 2
    near_pencil = IncidenceStructure(
        ["1", "2", "3", "4"], ["a", "b", "c", "d"],
        [(1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (0, 2), (2, 2), (0, 3), (3, 3)])
    assert is_linear_space(near_pencil).ok
    assert steiner_parameters(near_pencil) is None


def test_quadrilateral_is_thin_quadrangle():
    s = quadrilateral()
    assert is_generalized_ngon(s, 4).ok
    assert firmness(s) == "firm"


def test_ngon_tightness(expansion2):
    # a structure with a pair at distance 4 cannot be a generalized 3-gon
    for s in (quadrilateral(), expansion2):
        assert is_generalized_ngon(s, 4).ok
        verdict = is_generalized_ngon(s, 3)
        assert not verdict.ok
        assert verdict.witness[0] == "distance"


def test_ngon_rejects_disconnected():
    s = IncidenceStructure(["p", "q"], ["a", "b"], [(0, 0), (1, 1)])
    verdict = is_generalized_ngon(s, 4)
    assert not verdict.ok and verdict.witness[0] == "distance"


def test_ngon_rejects_duplicate_chains():
    # two points on two common lines: two 2-chains between the lines
    s = IncidenceStructure(["p", "q", "r"], ["a", "b"],
                           [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)])
    verdict = is_generalized_ngon(s, 4)
    assert not verdict.ok
    assert verdict.witness[0] == "uniqueness"


def test_firmness_not_firm():
    s = IncidenceStructure(["p"], ["b"], [(0, 0)])
    assert firmness(s) == "not-firm"


def test_firmness_of_expansions(expansion2, expansion3):
    # points of the smallest expansion lie on just two lines each
    assert firmness(expansion2) == "firm"
    assert firmness(expansion3) == "thick"


def test_ovoid_trivia(expansion2):
    c = expansion2
    assert is_ovoid(c, c.x_points())
    assert not is_ovoid(c, range(c.n_points))  # all points: lines meet it often
    assert not is_ovoid(c, set())


def test_isomorphism_compose_invert():
    rng = random.Random(3)
    s = quadrilateral()
    copy, pp, ll = relabeled(s, rng)
    # point i of the copy is point pp[i] of s, so pp maps copy -> s
    iso = Isomorphism(tuple(pp), tuple(ll))
    assert verify_isomorphism(copy, s, iso)
    inv = invert_isomorphism(iso)
    assert verify_isomorphism(s, copy, inv)
    round_trip = compose_isomorphisms(iso, inv)  # s -> copy -> s
    assert round_trip.point_map == tuple(range(s.n_points))
    assert round_trip.line_map == tuple(range(s.n_lines))
    assert verify_isomorphism(s, s, round_trip)


def test_json_roundtrip(expansion2):
    doc = structure_to_json(expansion2, tags=expansion2.tags_json())
    s, tags = structure_from_json(doc)
    assert s.incidence == expansion2.incidence
    assert s.point_labels == expansion2.point_labels
    assert tags["points"][0] == ["x", 0, None]
