"""
Exact Ricci curvature of metric Lie algebras in an orthonormal basis.

Ric = M - B/2 - S(ad_H) with
    M(x, y) = -1/2 sum_i <[x, b_i], [y, b_i]> + 1/4 sum_ij <[b_i, b_j], x><[b_i, b_j], y>
    B the Killing form, H the mean curvature vector <H, x> = tr ad_x,
    S the symmetric part.
"""
import logging
from fractions import Fraction

from models.curvature import RicciData, SolitonDecomposition
from tools.lie_core import (
    _require_identity_gram,
    ad_trace,
    derivation_algebra,
    is_derivation,
    is_nilpotent,
    killing_form,
)
from utils.linalg import flatten, solve, to_sympy, zeros

logger = logging.getLogger(__name__)


def _m_term(alg):
    n = alg.dim
    M = zeros(n)
    # -1/2 sum_i <[v_p, b_i], [v_q, b_i]>
    for i in range(n):
        images = [(p, alg.bracket_terms(p, i)) for p in range(n)]
        images = [(p, t) for p, t in images if t]
        for p, tp in images:
            for q, tq in images:
                if q < p:
                    continue
                inner = sum(val * tq.get(k, 0) for k, val in tp.items())
                if inner:
                    M[p, q] -= Fraction(inner, 2)
    # +1/4 sum over ordered pairs i, j
    for _, terms in alg.nonzero_brackets():
        for p, vp in terms.items():
            for q, vq in terms.items():
                if q >= p:
                    # (i, j) and (j, i) both contribute
                    M[p, q] += Fraction(vp * vq, 2)
    for p in range(n):
        for q in range(p):
            M[p, q] = M[q, p]
    return M


def _ad_h_symmetric(alg):
    n = alg.dim
    H = [ad_trace(alg, i) for i in range(n)]
    ad_h = zeros(n)
    for i, h in enumerate(H):
        if not h:
            continue
        for j in range(n):
            for k, val in alg.bracket_terms(i, j).items():
                ad_h[k, j] += h * val
    return (ad_h + ad_h.T) * Fraction(1, 2)


def ricci_tensor(alg, ip=None):
    """
    Ricci tensor at the metric making the input basis orthonormal

    Args:
        alg: LieAlgebra
        ip: InnerProduct; must be the identity Gram when given

    Returns:
        RicciData with the exact operator and scalar curvature
    """
    _require_identity_gram(alg, ip)
    ric = _m_term(alg) - killing_form(alg) * Fraction(1, 2) - _ad_h_symmetric(alg)
    scal = sum((ric[i, i] for i in range(alg.dim)), Fraction(0))
    return RicciData(ric, scal)


def scalar_curvature(alg, ip=None):
    return ricci_tensor(alg, ip).scal


def einstein_check(alg, ip=None):
    """
    Returns:
        (True, lambda) when Ric = lambda * I exactly, otherwise (False, None)
    """
    ric = ricci_tensor(alg, ip)
    diag = ric.diagonal()
    if ric.ric_form.is_diagonal() and all(d == diag[0] for d in diag):
        return True, diag[0]
    return False, None


def ricci_soliton_check(alg, ip=None):
    """
    Solve Ric = c * I + D with D a derivation, exactly

    Unknowns are c (first column, so it is pinned before any derivation
    coefficient) followed by the coefficients of the canonical Der(g) basis.
    Free parameters are set to zero.

    Returns:
        SolitonDecomposition, or None when no solution exists
    """
    ric = ricci_tensor(alg, ip).ric_operator
    n = alg.dim
    der = derivation_algebra(alg)
    basis = der.rows
    rhs = len(basis) + 1
    columns_by_entry = {}
    for j, vec in enumerate(basis):
        for col, val in vec.items():
            columns_by_entry.setdefault(col, {})[j + 1] = val
    rows = []
    for r in range(n):
        for s in range(n):
            idx = r * n + s
            row = dict(columns_by_entry.get(idx, {}))
            if r == s:
                row[0] = Fraction(1)
            if ric[r, s]:
                row[rhs] = ric[r, s]
            if row:
                rows.append(row)
    solution = solve(rows, rhs)
    if solution is None:
        logger.info("no soliton decomposition")
        return None
    c = solution[0]
    D = ric.copy()
    for i in range(n):
        D[i, i] = D[i, i] - c
    residual_zero = is_derivation(alg, D)
    return SolitonDecomposition(c, D, residual_zero)


def ricci_spectrum(alg, ip=None):
    """
    Characteristic polynomial coefficients of the Ricci operator, leading 1 first
    """
    ric = ricci_tensor(alg, ip)
    if ric.ric_form.is_diagonal():
        coeffs = [Fraction(1)]
        for d in ric.diagonal():
            shifted = coeffs + [Fraction(0)]
            for k in range(1, len(shifted)):
                shifted[k] -= d * coeffs[k - 1]
            coeffs = shifted
        return tuple(coeffs)
    poly = to_sympy(ric.ric_operator).charpoly()
    return tuple(Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs())


def isotropy_irreducibility_diagnostic(alg, ip=None):
    """
    Cheap obstructions to isotropy irreducibility; never a proof of irreducibility

    Returns:
        dict with 'status' ('not_irreducible' or 'possibly_irreducible') and 'reason'
    """
    einstein, _ = einstein_check(alg, ip)
    if not einstein:
        return {"status": "not_irreducible", "reason": "not_einstein"}
    if not alg.is_abelian and is_nilpotent(alg):
        return {"status": "not_irreducible", "reason": "nilpotent_center"}
    return {"status": "possibly_irreducible", "reason": None}


def ricci_report(alg, ip=None):
    ric = ricci_tensor(alg, ip)
    einstein, lam = einstein_check(alg, ip)
    data = ric.to_dict()
    data["einstein"] = einstein
    data["einstein_constant"] = str(lam) if einstein else None
    data["spectrum"] = [str(c) for c in ricci_spectrum(alg, ip)]
    return data
