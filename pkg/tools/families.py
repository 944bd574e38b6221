"""
Built-in Lie algebra families, referenced by name from tests and the CLI.
"""
import logging
from fractions import Fraction

from models.family import FamilySpec
from models.graph import DirectedGraph
from models.lie_algebra import InnerProduct, LieAlgebra
from tools.graph_algebras import attach_algebra

logger = logging.getLogger(__name__)

# v1 -> v2, v2 -> -v1, v3 -> v3 (columns are images)
MOTION_GROUP_ROTATION = [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "1"]]


def abelian(n):
    return LieAlgebra(n, name=f"abelian({n})", metadata={
        "family": "abelian", "expected_transitive": True, "expected_certificate": "MAXIMAL",
        "completely_solvable": True,
    })


def heisenberg_sum(n):
    """R^{n-3} ⊕ h_3 on basis x, y, z, r1, ..."""
    if n < 3:
        raise ValueError("heisenberg_sum needs n >= 3")
    labels = ["x", "y", "z"] + [f"r{i + 1}" for i in range(n - 3)]
    return LieAlgebra(n, labels, {(0, 1): {2: 1}}, name=f"heisenberg_sum({n})", metadata={
        "family": "heisenberg_sum", "expected_transitive": True, "expected_certificate": "MAXIMAL",
        "completely_solvable": True,
    })


def alpha(w):
    """alpha_w = sum of the w_i"""
    return sum(w, Fraction(0))


def expected_ricci_diagonal(w):
    """diag(-|w|^2, -w_2 alpha_w, ..., -w_n alpha_w)"""
    w = [Fraction(x) for x in w]
    norm_sq = sum(x * x for x in w)
    a = alpha(w)
    return [-norm_sq] + [-x * a for x in w]


def almost_abelian(w):
    """
    s_w: [v1, v_i] = w_i v_i for i = 2..n

    Args:
        w: rationals (w_2, ..., w_n); n = len(w) + 1
    """
    w = [Fraction(x) for x in w]
    if not w:
        raise ValueError("almost_abelian needs a nonempty w")
    n = len(w) + 1
    brackets = {(0, i + 1): {i + 1: x} for i, x in enumerate(w) if x}
    distinct_nonzero = len({x for x in w if x}) > 1
    name = "s_w(" + ",".join(str(x) for x in w) + ")"
    return LieAlgebra(n, [f"v{i + 1}" for i in range(n)], brackets, name=name, metadata={
        "family": "almost_abelian",
        "w": [str(x) for x in w],
        "expected_ricci_diagonal": [str(x) for x in expected_ricci_diagonal(w)],
        "expected_certificate": "MAXIMAL",
        "expected_transitive": False if distinct_nonzero else None,
        "completely_solvable": True,
    })


def borel_hyperbolic(n):
    """Real hyperbolic space as s_w with w = (1, ..., 1)"""
    if n < 1:
        raise ValueError("borel_hyperbolic needs n >= 1")
    if n == 1:
        return abelian(1)
    alg = almost_abelian([1] * (n - 1))
    alg.name = f"borel_hyperbolic({n})"
    alg.metadata.update({"family": "borel_hyperbolic", "expected_transitive": True})
    return alg


def motion_group_r2():
    """[v1, v3] = -v2, [v2, v3] = v1; its identity metric sits on a singular orbit"""
    return LieAlgebra(3, ["v1", "v2", "v3"], {(0, 2): {1: -1}, (1, 2): {0: 1}}, name="motion_group_r2",
                      metadata={
                          "family": "motion_group_r2",
                          "expected_transitive": False,
                          "expected_certificate": "MAXIMAL",
                          "known_automorphisms": [MOTION_GROUP_ROTATION],
                          "completely_solvable": False,
                      })


def complex_hyperbolic(n):
    """
    CH^{n+1} solvable part: [x_i, y_i] = z, [x_i, v] = x_i/2, [y_i, v] = y_i/2, [z, v] = z

    Basis order x_1..x_n, y_1..y_n, z, v.
    """
    if n < 1:
        raise ValueError("complex_hyperbolic needs n >= 1")
    dim = 2 * n + 2
    z, v = 2 * n, 2 * n + 1
    half = Fraction(1, 2)
    brackets = {}
    for i in range(n):
        x, y = i, n + i
        brackets[(x, y)] = {z: 1}
        brackets[(x, v)] = {x: half}
        brackets[(y, v)] = {y: half}
    brackets[(z, v)] = {z: 1}
    labels = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z", "v"]
    return LieAlgebra(dim, labels, brackets, name=f"complex_hyperbolic({n})", metadata={
        "family": "complex_hyperbolic",
        # sign diagonals leave fixed normal forms; no stored automorphism removes them
        "expected_certificate": "INCONCLUSIVE",
        "completely_solvable": True,
    })


def graph_family(graph):
    return attach_algebra(DirectedGraph.canonical(graph))


def build(spec, load_graph=None):
    """
    Construct a family member with its identity Gram metric

    Args:
        spec: FamilySpec
        load_graph: callable path -> SimpleGraph, needed for the graph family

    Returns:
        (LieAlgebra, InnerProduct)
    """
    if spec.name == "abelian":
        alg = abelian(spec.n)
    elif spec.name == "heisenberg_sum":
        alg = heisenberg_sum(spec.n)
    elif spec.name == "almost_abelian":
        alg = almost_abelian(spec.w)
    elif spec.name == "borel_hyperbolic":
        alg = borel_hyperbolic(spec.n)
    elif spec.name == "motion_group_r2":
        alg = motion_group_r2()
    elif spec.name == "complex_hyperbolic":
        alg = complex_hyperbolic(spec.n)
    else:
        if load_graph is None:
            raise ValueError("graph family needs a graph loader")
        alg = graph_family(load_graph(spec.path))
    logger.info("built %s (dim %d)", alg.name, alg.dim)
    return alg, InnerProduct.identity(alg.dim)


def build_named(name, **params):
    return build(FamilySpec(name, **params))


def w_permutation_equivalence(w1, w2):
    """True when w2 is a permutation of w1"""
    if len(w1) != len(w2):
        raise ValueError("w vectors must have equal length")
    return sorted(Fraction(x) for x in w1) == sorted(Fraction(x) for x in w2)
