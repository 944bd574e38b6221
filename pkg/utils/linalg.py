"""
Exact linear algebra over the rationals.

Sparse rows are dicts {column: Fraction}. Row reduction keeps every pivot row
fully reduced against the other pivots, so the stored rows are always in
reduced row echelon form and the result is canonical for the row space.
Dense exact matrices are numpy object arrays holding Fractions.
"""
from collections import defaultdict
from fractions import Fraction

import numpy as np
import sympy

from utils.errors import DimensionMismatchError, SingularMatrixError


def to_fraction(value):
    """Convert ints, Fractions, 'p/q' strings and {'num', 'den'} dicts to Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, dict):
        return Fraction(int(value["num"]), int(value.get("den", 1)))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r} in exact arithmetic")
    # sympy Rational, gmpy mpq and friends
    return Fraction(int(value.numerator), int(value.denominator))


def _axpy(target, factor, source):
    """target += factor * source, in place, dropping zeros"""
    for col, value in source.items():
        new = target.get(col, 0) + factor * value
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def row_reduce(rows):
    """
    Reduced row echelon form of a sparse rational system

    Args:
        rows: iterable of {column: rational} dicts

    Returns:
        (reduced_rows, pivots) with reduced_rows sorted by pivot column
    """
    pivot_rows = {}
    for raw in rows:
        row = {col: to_fraction(val) for col, val in raw.items() if val}
        for col in [c for c in row if c in pivot_rows]:
            factor = row.get(col)
            if factor:
                _axpy(row, -factor, pivot_rows[col])
        if not row:
            continue
        pivot = min(row)
        scale = row[pivot]
        if scale != 1:
            row = {col: val / scale for col, val in row.items()}
        for other in pivot_rows.values():
            factor = other.get(pivot)
            if factor:
                _axpy(other, -factor, row)
        pivot_rows[pivot] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def canonical_basis(vectors):
    """Canonical basis (RREF rows) of the span of the given sparse vectors"""
    return row_reduce(vectors)[0]


def kernel(rows, ncols):
    """
    Canonical basis of {x : row . x = 0 for every row}

    Args:
        rows: sparse equations over columns 0..ncols-1
        ncols: number of unknowns

    Returns:
        List of sparse vectors in reduced echelon order
    """
    reduced, pivots = row_reduce(rows)
    pivot_set = set(pivots)
    by_col = defaultdict(list)
    for pivot, row in zip(pivots, reduced):
        for col, val in row.items():
            if col != pivot:
                by_col[col].append((pivot, val))
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for pivot, val in by_col.get(free, ()):
            vec[pivot] = -val
        basis.append(vec)
    return canonical_basis(basis)


def solve(rows, ncols):
    """
    Particular solution of an affine system with free parameters set to 0

    Each row is {column: coeff} plus the right-hand side stored at key `ncols`.
    Returns a dense list of Fractions, or None when the system is inconsistent.
    """
    reduced, pivots = row_reduce(rows)
    if pivots and pivots[-1] == ncols:
        return None
    solution = [Fraction(0)] * ncols
    for pivot, row in zip(pivots, reduced):
        solution[pivot] = row.get(ncols, Fraction(0))
    return solution


def in_span(reduced_rows, vector):
    """Membership test against rows already in reduced echelon form"""
    residue = {col: to_fraction(val) for col, val in vector.items() if val}
    for row in reduced_rows:
        pivot = min(row)
        factor = residue.get(pivot)
        if factor:
            _axpy(residue, -factor, row)
    return not residue


# Dense exact matrices

def frac_matrix(entries):
    """numpy object array of Fractions from nested lists"""
    rows = [[to_fraction(x) for x in row] for row in entries]
    if not rows:
        return np.empty((0, 0), dtype=object)
    return np.array(rows, dtype=object)


def identity(n):
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = Fraction(int(i == j))
    return out


def zeros(n, m=None):
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    out.fill(Fraction(0))
    return out


def diagonal(values):
    out = zeros(len(values))
    for i, v in enumerate(values):
        out[i, i] = to_fraction(v)
    return out


def check_square(matrix, n):
    if matrix.shape != (n, n):
        raise DimensionMismatchError(f"expected a {n}x{n} matrix, got {matrix.shape}")


def matrix_key(matrix):
    """Hashable form of an exact matrix"""
    return tuple(tuple(row) for row in matrix.tolist())


def is_zero(matrix):
    return not any(x for x in matrix.flat)


def matrices_equal(a, b):
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def is_orthogonal(g):
    n = g.shape[0]
    return g.shape == (n, n) and matrices_equal(g.T.dot(g), identity(n))


def flatten(matrix):
    """Row-major sparse vector of a square matrix"""
    n = matrix.shape[1]
    return {i * n + j: val for (i, j), val in np.ndenumerate(matrix) if val}


def unflatten(vector, n):
    out = zeros(n)
    for col, val in vector.items():
        out[col // n, col % n] = val
    return out


def sym_pairs(n):
    """Index pairs (a, b), a <= b, in row-major upper-triangle order"""
    return [(a, b) for a in range(n) for b in range(a, n)]


def sym_index(n):
    return {pair: idx for idx, pair in enumerate(sym_pairs(n))}


def sym_to_matrix(vector, n):
    pairs = sym_pairs(n)
    out = zeros(n)
    for idx, val in vector.items():
        a, b = pairs[idx]
        out[a, b] = val
        out[b, a] = val
    return out


def columns(matrix):
    """Sparse columns {row: value} of a dense exact matrix"""
    n, m = matrix.shape
    return [{i: matrix[i, j] for i in range(n) if matrix[i, j]} for j in range(m)]


# GF(2)

def gf2_kernel(equations, nvars):
    """
    Kernel of a linear system over GF(2)

    Args:
        equations: iterable of sets of variable indices (each set sums to 0)
        nvars: number of variables

    Returns:
        List of sets; each set is the support of one basis vector, one per
        free variable, in increasing free-variable order
    """
    pivots = {}
    for eq in equations:
        row = set(eq)
        for col in [c for c in row if c in pivots]:
            row ^= pivots[col]
        if not row:
            continue
        pivot = min(row)
        for other in pivots.values():
            if pivot in other:
                other ^= row
        pivots[pivot] = row
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        support = {free}
        support.update(p for p, row in pivots.items() if free in row)
        basis.append(support)
    return basis


# sympy bridge for determinants, inverses and characteristic polynomials

def to_sympy(matrix):
    n, m = matrix.shape
    return sympy.Matrix(n, m, lambda i, j: sympy.Rational(
        matrix[i, j].numerator, matrix[i, j].denominator))


def from_sympy(matrix):
    return frac_matrix([[Fraction(int(x.p), int(x.q)) for x in row] for row in matrix.tolist()])


def inverse(matrix):
    """Exact inverse of a square Fraction matrix"""
    n = matrix.shape[0]
    check_square(matrix, n)
    full = to_sympy(matrix)
    if full.det(method="bareiss") == 0:
        raise SingularMatrixError("matrix is singular")
    return from_sympy(full.inv(method="LU"))
