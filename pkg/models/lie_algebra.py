import hashlib
import json
from fractions import Fraction

from utils.errors import DimensionMismatchError, InvalidInnerProductError
from utils.linalg import (
    frac_matrix,
    identity,
    in_span,
    is_zero,
    matrices_equal,
    row_reduce,
    to_fraction,
    to_sympy,
    flatten,
    unflatten,
)


class LieAlgebra:
    """Structure constants c[i][j][k] over a labelled basis, [v_i, v_j] = sum_k c[i][j][k] v_k"""

    def __init__(self, dim, basis_labels=None, brackets=None, name=None, metadata=None):
        """
        Args:
            dim: dimension n >= 1
            basis_labels: n distinct labels (defaults to v1..vn)
            brackets: {(i, j): {k: rational}} with 0-based indices; pairs with
                i > j are accepted and read through antisymmetry
            name: optional display name
            metadata: optional dict of untrusted annotations
        """
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        labels = list(basis_labels) if basis_labels is not None else [f"v{i + 1}" for i in range(dim)]
        if len(labels) != dim:
            raise DimensionMismatchError(f"{len(labels)} labels for dimension {dim}")
        if len(set(labels)) != dim:
            raise ValueError("basis labels must be distinct")
        self.dim = dim
        self.basis_labels = tuple(labels)
        self.name = name
        self.metadata = dict(metadata or {})

        # Raw table as given; validation reads it to report antisymmetry breaks
        self._raw = {}
        for (i, j), terms in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatchError(f"bracket index ({i}, {j}) outside dimension {dim}")
            clean = {}
            for k, val in terms.items():
                if not 0 <= k < dim:
                    raise DimensionMismatchError(f"bracket term index {k} outside dimension {dim}")
                val = to_fraction(val)
                if val:
                    clean[k] = clean.get(k, Fraction(0)) + val
            clean = {k: v for k, v in clean.items() if v}
            if clean:
                self._raw[(i, j)] = clean

        # Canonical sparse storage: i < j only
        self._upper = {}
        for (i, j), terms in sorted(self._raw.items()):
            if i < j:
                self._upper[(i, j)] = dict(terms)
            elif i > j and (j, i) not in self._raw:
                self._upper[(j, i)] = {k: -v for k, v in terms.items()}

        self._full = {}
        for (i, j), terms in self._upper.items():
            self._full[(i, j)] = terms
            self._full[(j, i)] = {k: -v for k, v in terms.items()}

    # Access

    def bracket_terms(self, i, j):
        """Sparse [v_i, v_j] as {k: coefficient}"""
        return self._full.get((i, j), {})

    def structure_constant(self, i, j, k):
        return self._full.get((i, j), {}).get(k, Fraction(0))

    def nonzero_brackets(self):
        """Canonical (i, j), terms pairs with i < j, sorted"""
        return sorted(self._upper.items())

    def raw_brackets(self):
        return dict(self._raw)

    @property
    def is_abelian(self):
        return not self._upper

    def table(self):
        """Canonical structure-constant table: sorted (i, j, k, num, den) tuples"""
        rows = []
        for (i, j), terms in self.nonzero_brackets():
            for k in sorted(terms):
                rows.append((i, j, k, terms[k].numerator, terms[k].denominator))
        return tuple(rows)

    def fingerprint(self):
        """sha256 of dimension plus canonical structure constants"""
        payload = json.dumps({"dim": self.dim, "table": self.table()}, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.table() == other.table()

    def __hash__(self):
        return hash((self.dim, self.table()))

    def __repr__(self):
        name = self.name or "LieAlgebra"
        return f"<{name} dim={self.dim} brackets={len(self._upper)}>"

    # Serialization (1-based indices, rationals as num/den)

    def to_dict(self):
        """Convert to the interchange JSON layout"""
        brackets = []
        for (i, j), terms in self.nonzero_brackets():
            brackets.append({
                "i": i + 1,
                "j": j + 1,
                "terms": [
                    {"k": k + 1, "num": terms[k].numerator, "den": terms[k].denominator}
                    for k in sorted(terms)
                ],
            })
        data = {"dim": self.dim, "basis": list(self.basis_labels), "brackets": brackets}
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_dict(cls, data):
        """Create from the interchange JSON layout; raw pairs are kept for validation"""
        dim = int(data["dim"])
        brackets = {}
        for entry in data.get("brackets", []):
            i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
            terms = brackets.setdefault((i, j), {})
            for term in entry.get("terms", []):
                k = int(term["k"]) - 1
                terms[k] = terms.get(k, Fraction(0)) + Fraction(int(term["num"]), int(term.get("den", 1)))
        return cls(dim, data.get("basis"), brackets, name=data.get("name"))


class InnerProduct:
    """Symmetric positive definite rational Gram matrix"""

    def __init__(self, gram):
        self.gram = gram if hasattr(gram, "shape") else frac_matrix(gram)
        n = self.gram.shape[0]
        if self.gram.shape != (n, n):
            raise DimensionMismatchError(f"Gram matrix must be square, got {self.gram.shape}")
        if not matrices_equal(self.gram, self.gram.T):
            raise InvalidInnerProductError("Gram matrix is not symmetric")
        if not self.is_identity() and not self._leading_minors_positive():
            raise InvalidInnerProductError("Gram matrix is not positive definite")

    @property
    def dim(self):
        return self.gram.shape[0]

    @classmethod
    def identity(cls, n):
        return cls(identity(n))

    def is_identity(self):
        return matrices_equal(self.gram, identity(self.dim))

    def _leading_minors_positive(self):
        full = to_sympy(self.gram)
        return all(full[:k, :k].det(method="bareiss") > 0 for k in range(1, self.dim + 1))

    def to_dict(self):
        return {"gram": [[str(x) for x in row] for row in self.gram.tolist()]}

    @classmethod
    def from_dict(cls, data):
        return cls(frac_matrix(data["gram"]))


class SymForm:
    """Symmetric bilinear form theta(v_i, v_j) = theta[i][j]"""

    def __init__(self, theta):
        self.theta = theta if hasattr(theta, "shape") else frac_matrix(theta)
        if not matrices_equal(self.theta, self.theta.T):
            raise ValueError("form is not symmetric")

    @property
    def dim(self):
        return self.theta.shape[0]

    def __getitem__(self, index):
        return self.theta[index]

    def is_zero(self):
        return is_zero(self.theta)

    def is_diagonal(self):
        n = self.dim
        return all(not self.theta[a, b] for a in range(n) for b in range(n) if a != b)

    def diagonal(self):
        return [self.theta[i, i] for i in range(self.dim)]

    def __eq__(self, other):
        return isinstance(other, SymForm) and matrices_equal(self.theta, other.theta)

    def __repr__(self):
        return f"SymForm({[[str(x) for x in row] for row in self.theta.tolist()]})"

    def to_dict(self):
        return [[str(x) for x in row] for row in self.theta.tolist()]


class MatrixSubspace:
    """Subspace of n x n matrices, basis stored in canonical reduced echelon order"""

    def __init__(self, ambient_dim, rows):
        self.ambient_dim = ambient_dim
        self._rows, _ = row_reduce(rows)

    @property
    def dim(self):
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def rows(self):
        return list(self._rows)

    @property
    def basis(self):
        return [unflatten(row, self.ambient_dim) for row in self._rows]

    def contains(self, matrix):
        return in_span(self._rows, flatten(matrix))

    def to_dict(self):
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis": [[[str(x) for x in r] for r in m.tolist()] for m in self.basis],
        }


class ValidationReport:
    """Result of checking antisymmetry and Jacobi; never raised"""

    def __init__(self, violations=None):
        self.violations = list(violations or [])

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {"ok": self.ok, "violations": self.violations}


class TransitivityResult:
    """Outcome of the R>0 Aut(g) transitivity test at the identity Gram"""

    def __init__(self, transitive, codimension, tangent_dim, sym_dim):
        self.transitive = transitive
        self.codimension = codimension
        self.tangent_dim = tangent_dim
        self.sym_dim = sym_dim

    def to_dict(self):
        return {
            "status": "transitive" if self.transitive else "not_transitive",
            "codimension": self.codimension,
            "tangent_dim": self.tangent_dim,
            "sym_dim": self.sym_dim,
        }
