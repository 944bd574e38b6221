"""
Metric Lie algebra kernel: validation, brackets, derivations, orbit geometry.

All arithmetic here is exact (Fraction). Metrics are given by declaring the
basis orthonormal; `orthonormal_frame` and `change_of_basis` reduce other
rational Gram matrices to that case when an exact frame exists.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import isqrt

from models.lie_algebra import LieAlgebra, MatrixSubspace, SymForm, TransitivityResult, ValidationReport
from utils.errors import DimensionMismatchError, NonIdentityGramError
from utils.linalg import (
    _axpy,
    flatten,
    from_sympy,
    identity,
    inverse,
    kernel,
    rank,
    row_reduce,
    sym_index,
    sym_pairs,
    sym_to_matrix,
    to_fraction,
    to_sympy,
    zeros,
)

logger = logging.getLogger(__name__)


def sparse_bracket(alg, x, y):
    """[x, y] for sparse coefficient dicts {index: rational}"""
    out = {}
    for i, xi in x.items():
        for j, yj in y.items():
            if i == j:
                continue
            terms = alg.bracket_terms(i, j)
            if terms:
                _axpy(out, xi * yj, terms)
    return out


def _dense_to_sparse(alg, vector):
    if len(vector) != alg.dim:
        raise DimensionMismatchError(f"vector of length {len(vector)} for dimension {alg.dim}")
    coords = {i: to_fraction(v) for i, v in enumerate(vector)}
    return {i: v for i, v in coords.items() if v}


def validate(alg):
    """
    Check antisymmetry and the Jacobi identity exactly

    Args:
        alg: LieAlgebra (raw bracket table as entered is inspected)

    Returns:
        ValidationReport listing every violated pair or triple (1-based)
    """
    violations = []
    raw = alg.raw_brackets()
    for (i, j), terms in sorted(raw.items()):
        if i == j:
            violations.append({"identity": "antisymmetry", "pair": [i + 1, j + 1],
                               "detail": "[v, v] must vanish"})
        elif i < j and (j, i) in raw:
            expected = {k: -v for k, v in terms.items()}
            if raw[(j, i)] != expected:
                violations.append({"identity": "antisymmetry", "pair": [i + 1, j + 1],
                                   "detail": "[v_i, v_j] != -[v_j, v_i]"})

    n = alg.dim
    for i, j, k in combinations(range(n), 3):
        total = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = alg.bracket_terms(a, b)
            if inner:
                _axpy(total, Fraction(1), sparse_bracket(alg, inner, {c: Fraction(1)}))
        if total:
            violations.append({"identity": "jacobi", "triple": [i + 1, j + 1, k + 1],
                               "residual": {str(m + 1): str(v) for m, v in sorted(total.items())}})
    if violations:
        logger.info("validation found %d violations", len(violations))
    return ValidationReport(violations)


def bracket(alg, x, y):
    """
    Bracket of two coefficient vectors

    Args:
        alg: LieAlgebra
        x, y: sequences of n rationals

    Returns:
        List of n Fractions
    """
    result = sparse_bracket(alg, _dense_to_sparse(alg, x), _dense_to_sparse(alg, y))
    return [result.get(k, Fraction(0)) for k in range(alg.dim)]


def _bracket_norm_orthonormal(alg):
    # ordered pairs: each i < j bracket counted twice
    return 2 * sum(v * v for _, terms in alg.nonzero_brackets() for v in terms.values())


def bracket_norm_sq(alg, ip=None):
    """
    Squared norm of the bracket, sum over ordered orthonormal pairs |[u_i, u_j]|^2

    Uses the input basis when ip is the identity, an exact orthonormal frame when
    one exists, and the dual-metric contraction otherwise.
    """
    if ip is None or ip.is_identity():
        return _bracket_norm_orthonormal(alg)
    if ip.dim != alg.dim:
        raise DimensionMismatchError(f"Gram of size {ip.dim} for dimension {alg.dim}")
    frame = orthonormal_frame(ip)
    if frame is not None:
        return _bracket_norm_orthonormal(change_of_basis(alg, frame))

    g = ip.gram
    g_inv = inverse(g)
    pairs = [(key, terms) for key, terms in ((k, alg.bracket_terms(*k)) for k in _ordered_pairs(alg)) if terms]
    total = Fraction(0)
    for (i, j), t1 in pairs:
        for (a, b), t2 in pairs:
            weight = g_inv[i, a] * g_inv[j, b]
            if not weight:
                continue
            inner = sum(x * y * g[k, l] for k, x in t1.items() for l, y in t2.items())
            total += weight * inner
    return total


def _ordered_pairs(alg):
    for (i, j), _ in alg.nonzero_brackets():
        yield (i, j)
        yield (j, i)


@lru_cache(maxsize=64)
def _derivation_rows(alg):
    n = alg.dim
    # right[j] lists (m, l, c_{m j l})
    right = [[] for _ in range(n)]
    for m in range(n):
        for j in range(n):
            for l, val in alg.bracket_terms(m, j).items():
                right[j].append((m, l, val))

    rows = []
    for i, j in combinations(range(n), 2):
        per_l = {}
        for k, val in alg.bracket_terms(i, j).items():
            for l in range(n):
                per_l.setdefault(l, {})
                per_l[l][l * n + k] = per_l[l].get(l * n + k, 0) + val
        for m, l, val in right[j]:
            row = per_l.setdefault(l, {})
            row[m * n + i] = row.get(m * n + i, 0) - val
        for m, l, val in right[i]:
            row = per_l.setdefault(l, {})
            row[m * n + j] = row.get(m * n + j, 0) + val
        rows.extend(row for row in per_l.values() if any(row.values()))
    return rows


@lru_cache(maxsize=64)
def derivation_algebra(alg):
    """
    Der(g) as the exact kernel of the Leibniz system over n^2 unknowns

    Args:
        alg: LieAlgebra

    Returns:
        MatrixSubspace with the canonical (reduced echelon) basis
    """
    n = alg.dim
    rows = _derivation_rows(alg)
    logger.debug("derivation system: %d equations, %d unknowns", len(rows), n * n)
    der = MatrixSubspace(n, kernel(rows, n * n))
    logger.info("dim Der = %d", der.dim)
    return der


def is_derivation(alg, D):
    return not any(
        sum(row.get(col, 0) * val for col, val in flatten(D).items())
        for row in _derivation_rows(alg)
    )


@lru_cache(maxsize=64)
def scaled_derivation_algebra(alg):
    """Span of the identity and Der(g), the Lie algebra of R>0 Aut(g)"""
    der = derivation_algebra(alg)
    return MatrixSubspace(alg.dim, der.rows + [flatten(identity(alg.dim))])


def _require_identity_gram(alg, ip):
    if ip is None:
        return
    if ip.dim != alg.dim:
        raise DimensionMismatchError(f"Gram of size {ip.dim} for dimension {alg.dim}")
    if not ip.is_identity():
        raise NonIdentityGramError("normal space needs an orthonormal input basis; change basis first")


@lru_cache(maxsize=64)
def tangent_rows(alg):
    """Rows A + A^T (symmetric coordinates) for A in the scaled derivation basis"""
    n = alg.dim
    index = sym_index(n)
    rows = []
    for A in scaled_derivation_algebra(alg).basis:
        row = {}
        for (a, b), idx in index.items():
            val = A[a, a] if a == b else A[a, b] + A[b, a]
            if val:
                row[idx] = val
        rows.append(row)
    return rows


@lru_cache(maxsize=64)
def normal_vectors(alg):
    n = alg.dim
    return tuple(kernel(tangent_rows(alg), len(sym_pairs(n))))


def normal_space(alg, ip=None):
    """
    Symmetric forms trace-orthogonal to the orbit tangent space

    Args:
        alg: LieAlgebra
        ip: InnerProduct; must be the identity Gram when given

    Returns:
        List of SymForm in canonical order
    """
    _require_identity_gram(alg, ip)
    return [SymForm(sym_to_matrix(vec, alg.dim)) for vec in normal_vectors(alg)]


def orbit_transitivity_check(alg):
    """Is the R>0 Aut(g)-orbit of the identity Gram open in the space of inner products"""
    n = alg.dim
    sym_dim = n * (n + 1) // 2
    tangent_dim = rank(tangent_rows(alg))
    codimension = len(normal_vectors(alg))
    transitive = codimension == 0 and tangent_dim == sym_dim
    logger.info("orbit tangent %d of %d, codimension %d", tangent_dim, sym_dim, codimension)
    return TransitivityResult(transitive, codimension, tangent_dim, sym_dim)


def ad_trace(alg, i):
    return sum(alg.bracket_terms(i, j).get(j, Fraction(0)) for j in range(alg.dim))


def unimodularity_check(alg):
    return all(ad_trace(alg, i) == 0 for i in range(alg.dim))


def adjoint(alg, i):
    """Matrix of ad_{v_i}, column j holding [v_i, v_j]"""
    n = alg.dim
    out = zeros(n)
    for j in range(n):
        for k, val in alg.bracket_terms(i, j).items():
            out[k, j] = val
    return out


def killing_form(alg):
    """B(v_p, v_q) = tr(ad_p ad_q)"""
    n = alg.dim
    out = zeros(n)
    for p in range(n):
        for q in range(p, n):
            total = Fraction(0)
            for j in range(n):
                for k, val in alg.bracket_terms(p, j).items():
                    other = alg.bracket_terms(q, k).get(j)
                    if other:
                        total += val * other
            out[p, q] = out[q, p] = total
    return out


def is_nilpotent(alg):
    """Lower central series reaches zero"""
    n = alg.dim
    current = [{i: Fraction(1)} for i in range(n)]
    dim = n
    while current:
        images = [sparse_bracket(alg, {i: Fraction(1)}, x) for i in range(n) for x in current]
        current, _ = row_reduce([v for v in images if v])
        if len(current) >= dim:
            return False
        dim = len(current)
    return True


def change_of_basis(alg, P, labels=None):
    """
    Structure constants in the basis u_a = sum_i P[i][a] v_i

    Args:
        alg: LieAlgebra
        P: invertible n x n Fraction matrix
        labels: optional labels for the new basis

    Returns:
        LieAlgebra over the new basis
    """
    n = alg.dim
    if P.shape != (n, n):
        raise DimensionMismatchError(f"expected a {n}x{n} matrix, got {P.shape}")
    P_inv = inverse(P)
    brackets = {}
    for a, b in combinations(range(n), 2):
        image = {}
        for (i, j), terms in alg.nonzero_brackets():
            coeff = P[i, a] * P[j, b] - P[j, a] * P[i, b]
            if coeff:
                _axpy(image, coeff, terms)
        if not image:
            continue
        new_terms = {}
        for k in range(n):
            val = sum(P_inv[k, m] * v for m, v in image.items())
            if val:
                new_terms[k] = val
        if new_terms:
            brackets[(a, b)] = new_terms
    labels = labels or [f"u{i + 1}" for i in range(n)]
    return LieAlgebra(n, labels, brackets, name=alg.name)


def _rational_sqrt(value):
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def orthonormal_frame(ip):
    """
    Exact P with P^T G P = I, or None when a pivot of G = L D L^T is not a rational square
    """
    L, D = to_sympy(ip.gram).LDLdecomposition()
    n = ip.dim
    roots = []
    for i in range(n):
        root = _rational_sqrt(Fraction(int(D[i, i].p), int(D[i, i].q)))
        if root is None:
            logger.debug("no rational orthonormal frame: pivot %s is not a square", D[i, i])
            return None
        roots.append(root)
    L_inv_t = inverse(from_sympy(L)).T
    P = L_inv_t.copy()
    for i in range(n):
        for a in range(n):
            P[i, a] = P[i, a] / roots[a]
    return P


def algebra_fingerprint(alg):
    return alg.fingerprint()
