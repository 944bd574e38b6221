import random

import networkx as nx
import pytest

from data.sample_data import acceptance_graphs, figure_graphs, random_graph
from models.graph import DirectedGraph, GraphAutomorphism, SimpleGraph
from tools import families
from tools.curvature import ricci_spectrum
from tools.graph_algebras import (
    attach_algebra,
    certification_group,
    certify_graph,
    complete,
    cycle,
    direction_independence_check,
    edge_orbits,
    edge_transitivity_check,
    empty,
    graph_automorphisms,
    graph_isomorphic,
    graph_report,
    lift_automorphism,
    lift_isomorphism,
    path,
    petersen,
    star,
    to_networkx,
    vertex_reflections,
)
from tools.lie_core import orbit_transitivity_check, unimodularity_check, validate
from tools.symmetry import intersection_forms, is_orthogonal_automorphism, two_reversible_check
from utils.errors import LimitExceededError
from utils.linalg import identity, matrices_equal


def canonical(g):
    return DirectedGraph.canonical(g)


def assert_graph_form_identities(dg, form):
    """Diagonal form with theta(v, v) = -sum over incident edges and zero edge total"""
    g = dg.graph
    assert form.is_diagonal()
    edge_values = [form[g.p + i, g.p + i] for i in range(g.q)]
    assert sum(edge_values) == 0
    for v in g.vertices:
        incident = sum(edge_values[g.edge_index(v, w)] for w in g.neighbors(v))
        assert form[g.index(v), g.index(v)] == -incident


class TestAttachAlgebra:
    def test_single_edge_is_heisenberg(self):
        assert attach_algebra(canonical(complete(2))) == families.heisenberg_sum(3)

    def test_no_edges_is_abelian(self):
        alg = attach_algebra(canonical(empty(4)))
        assert alg.dim == 4
        assert alg.is_abelian

    def test_triangle(self):
        alg = attach_algebra(canonical(complete(3)))
        assert alg.dim == 6
        assert len(alg.nonzero_brackets()) == 3
        assert validate(alg).ok

    def test_basis_is_vertices_then_edges(self, p4_directed):
        alg = attach_algebra(p4_directed)
        assert alg.basis_labels == ("1", "2", "3", "4", "1-2", "2-3", "3-4")

    def test_direction_sets_bracket_sign(self):
        g = complete(2)
        flipped = attach_algebra(DirectedGraph(g, {("1", "2"): "2"}))
        assert flipped.bracket_terms(0, 1) == {2: -1}

    @pytest.mark.parametrize("g", [complete(4), cycle(6), star(3), petersen()], ids=lambda g: g.name)
    def test_valid_and_unimodular(self, g):
        alg = attach_algebra(canonical(g))
        assert validate(alg).ok
        assert unimodularity_check(alg)


class TestVertexReflections:
    def test_single_edge(self):
        dg = canonical(complete(2))
        group = vertex_reflections(dg)
        assert len(group) == 2
        for g in group.generators:
            assert g[2, 2] == -1

    def test_isolated_vertex(self):
        dg = canonical(star(1, isolated=1))
        isolated = dg.graph.index("3")
        r = vertex_reflections(dg).generators[isolated]
        assert [r[i, i] for i in range(r.shape[0])] == [1, 1, -1, 1]

    def test_square_reflections_negate_two_edges(self):
        dg = canonical(cycle(4))
        for r in vertex_reflections(dg).generators:
            edge_signs = [r[4 + i, 4 + i] for i in range(4)]
            assert edge_signs.count(-1) == 2

    def test_reflections_are_automorphisms(self, p4_directed):
        alg = attach_algebra(p4_directed)
        group = vertex_reflections(p4_directed)
        assert set(group.provenance) == {"vertex_reflection"}
        assert all(is_orthogonal_automorphism(alg, g) for g in group.generators)


class TestAutomorphisms:
    def test_complete(self):
        assert len(graph_automorphisms(complete(4))) == 24

    def test_path(self, p4_graph):
        assert len(graph_automorphisms(p4_graph)) == 2

    def test_petersen(self):
        assert len(graph_automorphisms(petersen())) == 120

    def test_cap(self):
        with pytest.raises(LimitExceededError):
            graph_automorphisms(complete(5), cap=10)

    def test_vertex_limit(self):
        with pytest.raises(LimitExceededError):
            graph_automorphisms(cycle(13))

    @pytest.mark.parametrize("g", [cycle(6), star(4, isolated=1), path(5)], ids=lambda g: g.name)
    def test_count_matches_networkx(self, g):
        matcher = nx.algorithms.isomorphism.GraphMatcher(to_networkx(g), to_networkx(g))
        assert len(graph_automorphisms(g)) == sum(1 for _ in matcher.isomorphisms_iter())


class TestEdgeTransitivity:
    @pytest.mark.parametrize("g", [complete(4), cycle(5), petersen(), star(5), empty(3)],
                             ids=lambda g: g.name)
    def test_transitive(self, g):
        assert edge_transitivity_check(g)

    def test_path_has_two_orbits(self, p4_graph):
        assert not edge_transitivity_check(p4_graph)
        orbits = edge_orbits(p4_graph, graph_automorphisms(p4_graph))
        assert sorted(map(len, orbits)) == [1, 2]

    def test_report(self, p4_graph):
        report = graph_report(p4_graph)
        assert report["automorphisms"] == 2
        assert report["edge_transitive"] is False
        assert sorted(report["edge_orbits"]) == [["1-2", "3-4"], ["2-3"]]


class TestLifts:
    def test_identity(self, p4_directed):
        trivial = GraphAutomorphism(p4_directed.graph, {v: v for v in p4_directed.graph.vertices})
        assert matrices_equal(lift_automorphism(p4_directed, trivial), identity(7))

    def test_swap_on_single_edge_flips_the_edge(self):
        dg = canonical(complete(2))
        swap = GraphAutomorphism(dg.graph, {"1": "2", "2": "1"})
        lift = lift_automorphism(dg, swap)
        assert lift[2, 2] == -1
        assert lift[0, 1] == 1 and lift[1, 0] == 1

    def test_rotation_keeps_a_cyclic_direction(self):
        g = cycle(3)
        dg = DirectedGraph(g, {("1", "2"): "1", ("2", "3"): "2", ("1", "3"): "3"})
        rotation = GraphAutomorphism(g, {"1": "2", "2": "3", "3": "1"})
        lift = lift_automorphism(dg, rotation)
        edge_block = [lift[3 + i, 3 + j] for i in range(3) for j in range(3)]
        assert sorted(edge_block) == [0] * 6 + [1] * 3

    @pytest.mark.parametrize("g", [complete(4), cycle(5), path(4), star(3)], ids=lambda g: g.name)
    def test_every_lift_is_an_orthogonal_automorphism(self, g):
        dg = canonical(g)
        alg = attach_algebra(dg)
        for aut in graph_automorphisms(g):
            assert is_orthogonal_automorphism(alg, lift_automorphism(dg, aut))

    def test_lift_is_multiplicative(self):
        dg = canonical(cycle(5))
        auts = graph_automorphisms(dg.graph)
        by_mapping = {tuple(sorted(a.mapping.items())): a for a in auts}
        for first in auts[:4]:
            for second in auts[:4]:
                composed = {v: first.mapping[second.mapping[v]] for v in dg.graph.vertices}
                product = by_mapping[tuple(sorted(composed.items()))]
                lhs = lift_automorphism(dg, first).dot(lift_automorphism(dg, second))
                assert matrices_equal(lhs, lift_automorphism(dg, product))

    def test_isomorphism_lift_intertwines_directions(self):
        g = cycle(4)
        dg1 = canonical(g)
        dg2 = DirectedGraph.from_mask(g, 0b0101)
        mapping = {v: v for v in g.vertices}
        lift = lift_isomorphism(dg1, dg2, mapping)
        alg1, alg2 = attach_algebra(dg1), attach_algebra(dg2)
        for (i, j), terms in alg1.nonzero_brackets():
            (k, val), = terms.items()
            image_i = [r for r in range(8) if lift[r, i]][0]
            image_j = [r for r in range(8) if lift[r, j]][0]
            image_k = [r for r in range(8) if lift[r, k]][0]
            expected = val * lift[image_k, k]
            got = lift[image_i, i] * lift[image_j, j] * alg2.structure_constant(image_i, image_j, image_k)
            assert got == expected


class TestIsomorphism:
    def test_relabelled_copy(self):
        g = petersen()
        mapping = {v: f"x{v}" for v in g.vertices}
        ok, witness = graph_isomorphic(g, g.relabeled(mapping))
        assert ok
        assert set(witness) == set(g.vertices)

    def test_cycle_against_path(self):
        assert graph_isomorphic(cycle(5), path(5)) == (False, None)

    def test_figure_graph_against_complete(self, store):
        target = store.base_dir / "figure.txt"
        target.write_text("# vertex: 4, edge: 6\n4 6\na b\na c\na d\nb c\nb d\nc d\n", encoding="utf-8")
        figure = store.load_graph(target).graph
        assert graph_isomorphic(figure, complete(4))[0]

    def test_isomorphic_graphs_share_invariants(self):
        g = cycle(5)
        other = SimpleGraph(["a", "b", "c", "d", "e"],
                            [("a", "c"), ("c", "e"), ("e", "b"), ("b", "d"), ("d", "a")])
        assert graph_isomorphic(g, other)[0]
        alg1, alg2 = attach_algebra(canonical(g)), attach_algebra(canonical(other))
        assert ricci_spectrum(alg1) == ricci_spectrum(alg2)
        assert certify_graph(canonical(g)).status == certify_graph(canonical(other)).status


class TestCertification:
    @pytest.mark.parametrize("g", acceptance_graphs(), ids=lambda g: g.name)
    def test_edge_transitive_graphs_are_maximal(self, g):
        dg = canonical(g)
        cert = certify_graph(dg)
        assert cert.is_maximal

    @pytest.mark.parametrize("g", figure_graphs(), ids=lambda g: g.name)
    def test_figure_graphs_are_maximal_ten_dimensional(self, g):
        dg = canonical(g)
        assert attach_algebra(dg).dim == 10
        assert certify_graph(dg).is_maximal

    def test_path_is_inconclusive_with_an_edge_weighted_witness(self, p4_directed):
        cert = certify_graph(p4_directed)
        assert cert.status == "INCONCLUSIVE"
        assert_graph_form_identities(p4_directed, cert.witness)

    def test_group_provenance(self, p4_directed):
        tags = set(certification_group(p4_directed).provenance)
        assert {"vertex_reflection", "graph_lift"} <= tags

    def test_graph_basis_is_two_reversible(self):
        for g in (complete(4), cycle(5), path(4), star(3, isolated=2)):
            dg = canonical(g)
            alg = attach_algebra(dg)
            assert two_reversible_check(alg, certification_group(dg)).reversible

    def test_random_graph_forms_follow_edge_weights(self):
        rng = random.Random(5)
        for _ in range(30):
            g = random_graph(rng, max_vertices=8)
            dg = canonical(g)
            alg = attach_algebra(dg)
            group = certification_group(dg)
            assert two_reversible_check(alg, group).reversible
            for form in intersection_forms(alg, group):
                assert_graph_form_identities(dg, form)

    def test_graphs_outside_the_transitive_classes(self):
        for g in (complete(3), cycle(4), path(4), star(2)):
            assert not orbit_transitivity_check(attach_algebra(canonical(g))).transitive


class TestDirections:
    def test_single_edge(self):
        report = direction_independence_check(complete(2))
        assert report["directions"] == 2
        assert report["consistent"]

    def test_triangle(self):
        report = direction_independence_check(complete(3))
        assert report["directions"] == 8
        assert report["consistent"]
        assert report["reference"]["certificate"] == "MAXIMAL"

    def test_star_spectra(self, star3):
        report = direction_independence_check(star3, certify=False)
        assert report["directions"] == 8
        assert report["mismatches"] == []
        assert "certificate" not in report["reference"]

    @pytest.mark.parametrize("g", [star(4, isolated=1), path(4), cycle(4)], ids=lambda g: g.name)
    def test_small_corpus_graphs(self, g):
        assert direction_independence_check(g)["consistent"]

    def test_edge_limit(self):
        with pytest.raises(LimitExceededError):
            direction_independence_check(complete(5), max_edges=8)
