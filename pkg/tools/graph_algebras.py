"""
Graphs, directions and their attached 2-step nilpotent Lie algebras.

The algebra of a directed graph has basis V ∪ E (vertices first, edges in
canonical order) and brackets [d(e), d*(e)] = e. Graph automorphisms lift to
orthogonal automorphisms by permuting coordinates, with a sign on each edge
whose direction the permutation reverses.
"""
import logging

import networkx as nx

from models.graph import DirectedGraph, GraphAutomorphism, SimpleGraph
from models.lie_algebra import LieAlgebra
from models.symmetry import SymmetryGroup
from tools.curvature import ricci_soliton_check, ricci_spectrum
from tools.symmetry import maximality_certificate, sign_diagonal_subgroup
from utils.errors import LimitExceededError
from utils.linalg import diagonal, zeros

logger = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 12
DEFAULT_AUT_CAP = 1_000_000
DEFAULT_MAX_DIRECTION_EDGES = 8


# Named graphs

def from_networkx(graph, name=None):
    """SimpleGraph with vertices relabelled 1..p in networkx node order"""
    labels = {node: str(i + 1) for i, node in enumerate(graph.nodes())}
    return SimpleGraph([labels[v] for v in graph.nodes()],
                       [(labels[u], labels[v]) for u, v in graph.edges()], name=name)


def to_networkx(g):
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(g.edges)
    return graph


def complete(n):
    return from_networkx(nx.complete_graph(n), name=f"K{n}")


def cycle(n):
    return from_networkx(nx.cycle_graph(n), name=f"C{n}")


def path(n):
    return from_networkx(nx.path_graph(n), name=f"P{n}")


def star(m, isolated=0):
    """K_{1,m} with the center first, plus optional isolated vertices"""
    graph = nx.star_graph(m)
    name = f"K1_{m}"
    if isolated:
        graph = nx.disjoint_union(graph, nx.empty_graph(isolated))
        name += f"+{isolated}"
    return from_networkx(graph, name=name)


def petersen():
    return from_networkx(nx.petersen_graph(), name="petersen")


def empty(p):
    return from_networkx(nx.empty_graph(p), name=f"E{p}")


NAMED_GRAPHS = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "star": star,
    "petersen": petersen,
    "empty": empty,
}


# Algebra and its symmetries

def attach_algebra(dg):
    """
    2-step nilpotent algebra n_{G_d} on V ∪ E

    Args:
        dg: DirectedGraph

    Returns:
        LieAlgebra of dimension p + q
    """
    g = dg.graph
    p = g.p
    brackets = {}
    for idx, edge in enumerate(g.edges):
        head, tail = g.index(dg.d(edge)), g.index(dg.d_star(edge))
        brackets[(head, tail)] = {p + idx: 1}
    labels = list(g.vertices) + [g.edge_label(e) for e in g.edges]
    return LieAlgebra(p + g.q, labels, brackets, name=g.name,
                      metadata={"family": "graph", "vertices": p, "edges": g.q})


def vertex_reflections(dg):
    """r_v negates v and every edge at v"""
    g = dg.graph
    generators = []
    for v in g.vertices:
        signs = [1] * (g.p + g.q)
        signs[g.index(v)] = -1
        for w in g.neighbors(v):
            signs[g.p + g.edge_index(v, w)] = -1
        generators.append(diagonal(signs))
    return SymmetryGroup(g.p + g.q, generators, ["vertex_reflection"] * len(generators))


def _distances(g):
    lengths = dict(nx.all_pairs_shortest_path_length(to_networkx(g)))
    return {v: {w: lengths[v].get(w, -1) for w in g.vertices} for v in g.vertices}


def _invariant(g, dist, v):
    return (
        g.degree(v),
        tuple(sorted(g.degree(w) for w in g.neighbors(v))),
        tuple(sorted(dist[v].values())),
    )


def _isomorphisms(g1, g2, cap, first_only=False):
    """Backtracking search for vertex bijections g1 -> g2 preserving adjacency"""
    if g1.p != g2.p or g1.q != g2.q or g1.degree_sequence() != g2.degree_sequence():
        return []
    dist1, dist2 = _distances(g1), _distances(g2)
    inv1 = {v: _invariant(g1, dist1, v) for v in g1.vertices}
    inv2 = {v: _invariant(g2, dist2, v) for v in g2.vertices}
    candidates = {v: [w for w in g2.vertices if inv2[w] == inv1[v]] for v in g1.vertices}
    if any(not c for c in candidates.values()):
        return []

    # fewest candidates first, then stay adjacent to what is already placed
    order = []
    remaining = set(g1.vertices)
    while remaining:
        placed = set(order)
        best = min(remaining, key=lambda v: (-len(g1.neighbors(v) & placed), len(candidates[v]), g1.index(v)))
        order.append(best)
        remaining.discard(best)

    found = []
    mapping = {}
    used = set()

    def extend(depth):
        if depth == len(order):
            found.append(dict(mapping))
            if len(found) > cap:
                raise LimitExceededError(f"more than {cap} graph isomorphisms", limit=cap)
            return first_only
        v = order[depth]
        for w in candidates[v]:
            if w in used:
                continue
            if any(g1.has_edge(v, u) != g2.has_edge(w, mapping[u])
                   or dist1[v][u] != dist2[w][mapping[u]] for u in order[:depth]):
                continue
            mapping[v] = w
            used.add(w)
            if extend(depth + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    extend(0)
    return found


def _check_size(g, max_vertices):
    if g.p > max_vertices:
        raise LimitExceededError(f"graph has {g.p} vertices, limit is {max_vertices}", limit=max_vertices)


def graph_automorphisms(g, cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES):
    """
    Every automorphism of g

    Raises:
        LimitExceededError: too many vertices or more than cap automorphisms
    """
    _check_size(g, max_vertices)
    auts = [GraphAutomorphism(g, m) for m in _isomorphisms(g, g, cap)]
    logger.info("%s: %d automorphisms", g.name or "graph", len(auts))
    return auts


def edge_orbits(g, automorphisms):
    orbits = []
    seen = set()
    for e in range(g.q):
        if e in seen:
            continue
        orbit = sorted({aut.edge_permutation[e] for aut in automorphisms})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def edge_transitivity_check(g, cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES, automorphisms=None):
    if g.q == 0:
        return True
    automorphisms = automorphisms if automorphisms is not None else graph_automorphisms(g, cap, max_vertices)
    return len(edge_orbits(g, automorphisms)) == 1


def graph_isomorphic(g1, g2, max_vertices=DEFAULT_MAX_VERTICES):
    """
    Returns:
        (True, vertex mapping) or (False, None)
    """
    _check_size(g1, max_vertices)
    _check_size(g2, max_vertices)
    found = _isomorphisms(g1, g2, cap=1, first_only=True)
    if not found:
        return False, None
    mapping = found[0]
    images = {frozenset((mapping[u], mapping[v])) for u, v in g1.edges}
    if images != {frozenset(e) for e in g2.edges}:
        raise AssertionError("isomorphism witness does not map edges onto edges")
    return True, mapping


def lift_isomorphism(dg1, dg2, mapping):
    """
    Orthogonal matrix intertwining attach_algebra(dg1) and attach_algebra(dg2)

    Vertex coordinates are permuted by mapping; edge e goes to its image with
    sign -1 exactly when mapping(d1(e)) differs from d2(mapping(e)).
    """
    g1, g2 = dg1.graph, dg2.graph
    p, n = g1.p, g1.p + g1.q
    out = zeros(n)
    for v in g1.vertices:
        out[g2.index(mapping[v]), g1.index(v)] = 1
    for idx, edge in enumerate(g1.edges):
        u, v = mapping[edge[0]], mapping[edge[1]]
        target = g2.edge_index(u, v)
        image_edge = g2.edges[target]
        sign = 1 if mapping[dg1.d(edge)] == dg2.d(image_edge) else -1
        out[p + target, p + idx] = sign
    return out


def lift_automorphism(dg, automorphism):
    return lift_isomorphism(dg, dg, automorphism.mapping)


def _permutation_generators(automorphisms):
    """Greedy generating subset of a permutation group"""
    if not automorphisms:
        return []
    vertices = automorphisms[0].graph.vertices

    def key(aut):
        return tuple(aut.mapping[v] for v in vertices)

    by_key = {key(a): a for a in automorphisms}
    index = {v: i for i, v in enumerate(vertices)}
    identity_key = tuple(vertices)
    closure = {identity_key}
    generators = []

    def compose(k1, k2):
        # apply k2 then k1
        return tuple(k1[index[x]] for x in k2)

    for aut in automorphisms:
        k = key(aut)
        if k in closure:
            continue
        generators.append(by_key[k])
        frontier = list(closure)
        while frontier:
            nxt = []
            for elem in frontier:
                for gen in generators:
                    prod = compose(key(gen), elem)
                    if prod not in closure:
                        closure.add(prod)
                        nxt.append(prod)
            frontier = nxt
    return generators


def certification_group(dg, automorphisms=None, cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES):
    """Sign diagonals, vertex reflections and lifts of a generating set of Aut(G)"""
    alg = attach_algebra(dg)
    automorphisms = automorphisms if automorphisms is not None else graph_automorphisms(dg.graph, cap, max_vertices)
    lifts = [lift_automorphism(dg, aut) for aut in _permutation_generators(automorphisms)]
    group = sign_diagonal_subgroup(alg).extended(vertex_reflections(dg))
    return group.extended(SymmetryGroup(alg.dim, lifts, ["graph_lift"] * len(lifts)))


def certify_graph(dg, automorphisms=None, cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES):
    alg = attach_algebra(dg)
    group = certification_group(dg, automorphisms, cap, max_vertices)
    return maximality_certificate(alg, group)


def direction_independence_check(g, certify=True, max_edges=DEFAULT_MAX_DIRECTION_EDGES,
                                 cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES):
    """
    Compare every direction of g against the canonical one

    Returns:
        dict with the reference results, the number of directions and any mismatches
    """
    if g.q > max_edges:
        raise LimitExceededError(f"{2 ** g.q} directions exceed the limit of {max_edges} edges",
                                 limit=max_edges)
    automorphisms = graph_automorphisms(g, cap, max_vertices) if certify else None

    def evaluate(dg):
        alg = attach_algebra(dg)
        result = {
            "spectrum": [str(c) for c in ricci_spectrum(alg)],
            "soliton": ricci_soliton_check(alg) is not None,
        }
        if certify:
            result["certificate"] = certify_graph(dg, automorphisms).status
        return result

    reference = evaluate(DirectedGraph.canonical(g))
    mismatches = []
    for mask in range(1, 2 ** g.q):
        dg = DirectedGraph.from_mask(g, mask)
        result = evaluate(dg)
        for key, value in result.items():
            if value != reference[key]:
                mismatches.append({"direction": dg.to_dict()["direction"], "field": key,
                                   "expected": reference[key], "found": value})
    if mismatches:
        logger.warning("%d direction mismatches on %s", len(mismatches), g.name)
    return {
        "graph": g.name,
        "directions": 2 ** g.q,
        "consistent": not mismatches,
        "reference": reference,
        "mismatches": mismatches,
    }


def graph_report(g, cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES):
    automorphisms = graph_automorphisms(g, cap, max_vertices)
    orbits = edge_orbits(g, automorphisms)
    return {
        "graph": g.name,
        "vertices": g.p,
        "edges": g.q,
        "degree_sequence": g.degree_sequence(),
        "automorphisms": len(automorphisms),
        "edge_orbits": [[g.edge_label(g.edges[e]) for e in orbit] for orbit in orbits],
        "edge_transitive": len(orbits) <= 1,
    }
