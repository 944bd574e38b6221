"""
Finite orthogonal automorphism groups and the maximality certificate.
"""
import logging
from collections import deque

from models.lie_algebra import SymForm
from models.symmetry import Certificate, ReversibilityResult, SymmetryGroup
from tools.lie_core import normal_vectors, sparse_bracket, tangent_rows
from utils.errors import DimensionMismatchError, LimitExceededError
from utils.linalg import (
    _axpy,
    canonical_basis,
    check_square,
    columns,
    diagonal,
    frac_matrix,
    gf2_kernel,
    identity,
    is_orthogonal,
    kernel,
    matrix_key,
    sym_index,
    sym_pairs,
    sym_to_matrix,
)

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 1_000_000


def is_orthogonal_automorphism(alg, g):
    """
    Check g^T g = I and g[x, y] = [gx, gy] on every basis pair, exactly

    Args:
        alg: LieAlgebra
        g: n x n Fraction matrix

    Returns:
        True when g lies in Aut(g) ∩ O(n)
    """
    n = alg.dim
    check_square(g, n)
    if not is_orthogonal(g):
        return False
    cols = columns(g)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = {}
            for k, val in alg.bracket_terms(i, j).items():
                _axpy(lhs, val, cols[k])
            if lhs != sparse_bracket(alg, cols[i], cols[j]):
                return False
    return True


def sign_diagonal_subgroup(alg):
    """
    Generators of all diagonal sign matrices that are automorphisms

    A nonzero c[i][j][k] forces eps_i eps_j = eps_k; over GF(2) with x = 1 for
    a minus sign that is x_i + x_j + x_k = 0. One generator per free variable.
    """
    equations = []
    for (i, j), terms in alg.nonzero_brackets():
        for k in terms:
            equations.append({i} ^ {j} ^ {k})
    supports = gf2_kernel(equations, alg.dim)
    generators = [diagonal([-1 if i in support else 1 for i in range(alg.dim)]) for support in supports]
    logger.debug("sign diagonal subgroup: %d generators", len(generators))
    return SymmetryGroup(alg.dim, generators, ["sign_diagonal"] * len(generators))


def known_automorphisms(alg):
    """User-supplied automorphisms stored on the algebra, verified before use"""
    found = []
    for entry in alg.metadata.get("known_automorphisms", []):
        try:
            g = frac_matrix(entry)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            logger.warning("ignoring a stored automorphism of %s that is not an exact matrix (%s)", alg.name, exc)
            continue
        if g.shape == (alg.dim, alg.dim) and is_orthogonal_automorphism(alg, g):
            found.append(g)
        else:
            logger.warning("ignoring a stored automorphism of %s that fails verification", alg.name)
    return SymmetryGroup(alg.dim, found, ["user"] * len(found))


def default_group(alg):
    """Sign diagonals plus any verified automorphisms carried by the algebra"""
    return sign_diagonal_subgroup(alg).extended(known_automorphisms(alg))


def enumerate_group(group, cap=DEFAULT_GROUP_CAP):
    """
    Every element of the group generated by group.generators

    Raises:
        LimitExceededError: more than cap elements
    """
    start = identity(group.dim)
    seen = {matrix_key(start): start}
    queue = deque([start])
    while queue:
        element = queue.popleft()
        for g in group.generators:
            product = g.dot(element)
            key = matrix_key(product)
            if key in seen:
                continue
            if len(seen) >= cap:
                raise LimitExceededError(f"group exceeds {cap} elements", limit=cap)
            seen[key] = product
            queue.append(product)
    return list(seen.values())


def _signed_axes(g):
    """{i: +1 or -1} for the coordinates with g v_i = ±v_i"""
    n = g.shape[0]
    axes = {}
    for i in range(n):
        col = [g[r, i] for r in range(n)]
        if all(not col[r] for r in range(n) if r != i) and col[i] in (1, -1):
            axes[i] = int(col[i])
    return axes


def two_reversible_check(alg, group, cap=DEFAULT_GROUP_CAP):
    """
    Is the input basis 2-reversible for the group generated by group.generators

    Every pair (v_i, v_j) needs an element fixing one up to sign a and sending
    the other to -a times itself. Generators are tried first; the group is then
    explored breadth first until every pair is settled, the group closes, or
    cap elements have been seen.

    Returns:
        ReversibilityResult: 'reversible', 'failing' with the first unsettled
        pair, or 'undecided' when the cap stops the search
    """
    n = alg.dim
    if group.dim != n:
        raise DimensionMismatchError(f"group of dimension {group.dim} for algebra of dimension {n}")
    pending = {(i, j) for i in range(n) for j in range(i + 1, n)}

    def settle(g):
        axes = _signed_axes(g)
        plus = [i for i, s in axes.items() if s > 0]
        minus = [i for i, s in axes.items() if s < 0]
        for i in plus:
            for j in minus:
                pending.discard((min(i, j), max(i, j)))

    start = identity(n)
    seen = {matrix_key(start)}
    frontier = deque([start])
    for g in group.generators:
        settle(g)
    explored = 1
    while pending and frontier:
        element = frontier.popleft()
        for g in group.generators:
            product = g.dot(element)
            key = matrix_key(product)
            if key in seen:
                continue
            if len(seen) >= cap:
                logger.warning("2-reversibility search stopped at %d elements", cap)
                return ReversibilityResult("undecided", explored=len(seen))
            seen.add(key)
            frontier.append(product)
            settle(product)
            if not pending:
                break
        explored = len(seen)

    if pending:
        i, j = min(pending)
        return ReversibilityResult("failing", pair=(alg.basis_labels[i], alg.basis_labels[j]),
                                   explored=explored)
    return ReversibilityResult("reversible", explored=explored)


def _invariance_rows(group):
    n = group.dim
    index = sym_index(n)
    rows = []
    for g in group.generators:
        cols = columns(g)
        for (a, b), idx in index.items():
            row = {}
            for c, gca in cols[a].items():
                for d, gdb in cols[b].items():
                    key = index[(c, d) if c <= d else (d, c)]
                    row[key] = row.get(key, 0) + gca * gdb
            row[idx] = row.get(idx, 0) - 1
            if any(row.values()):
                rows.append(row)
    return rows


def invariant_vectors(group):
    return kernel(_invariance_rows(group), len(sym_pairs(group.dim)))


def invariant_forms_subspace(group):
    """
    Symmetric forms fixed by every generator, g^T Θ g = Θ

    Returns:
        List of SymForm in canonical order
    """
    return [SymForm(sym_to_matrix(vec, group.dim)) for vec in invariant_vectors(group)]


def _dot(u, v):
    if len(u) > len(v):
        u, v = v, u
    return sum(val * v.get(col, 0) for col, val in u.items())


def _intersection_vectors(alg, group):
    """(normal, invariant, intersection) sparse vectors in symmetric coordinates"""
    normal = normal_vectors(alg)
    if not normal:
        return normal, None, []
    invariant = invariant_vectors(group)
    logger.debug("normal space %d, invariant forms %d", len(normal), len(invariant))

    # Θ = sum alpha_i F_i with tr(Θ A) = 0 for every tangent row
    equations = []
    for row in tangent_rows(alg):
        eq = {i: _dot(row, f) for i, f in enumerate(invariant)}
        eq = {i: v for i, v in eq.items() if v}
        if eq:
            equations.append(eq)
    combos = []
    for alpha in kernel(equations, len(invariant)):
        vec = {}
        for i, coeff in alpha.items():
            _axpy(vec, coeff, invariant[i])
        combos.append(vec)
    return normal, invariant, canonical_basis(combos)


def intersection_forms(alg, group):
    """Canonical basis of the invariant forms lying in the normal space"""
    _, _, vectors = _intersection_vectors(alg, group)
    return [SymForm(sym_to_matrix(v, alg.dim)) for v in vectors]


def maximality_certificate(alg, group):
    """
    Intersect the group-invariant forms with the orbit normal space

    Args:
        alg: LieAlgebra with orthonormal input basis
        group: SymmetryGroup of verified orthogonal automorphisms

    Returns:
        Certificate; MAXIMAL when the intersection is {0}
    """
    if group.dim != alg.dim:
        raise DimensionMismatchError(f"group of dimension {group.dim} for algebra of dimension {alg.dim}")
    normal, invariant, vectors = _intersection_vectors(alg, group)
    witness = SymForm(sym_to_matrix(vectors[0], alg.dim)) if vectors else None
    certificate = Certificate(
        dim_normal=len(normal),
        dim_invariant_normal=len(vectors),
        witness=witness,
        group_summary=group.summary(),
        algebra_hash=alg.fingerprint(),
        dim_invariant=len(invariant) if invariant is not None else None,
    )
    logger.info("certificate %s (normal %d, invariant normal %d)", certificate.status,
                certificate.dim_normal, certificate.dim_invariant_normal)
    return certificate
