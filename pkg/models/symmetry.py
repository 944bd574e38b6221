from utils.errors import DimensionMismatchError
from utils.linalg import check_square, frac_matrix, matrix_key

PROVENANCES = ("sign_diagonal", "graph_lift", "vertex_reflection", "user")


class SymmetryGroup:
    """Finite set of exact orthogonal automorphisms, kept as generators"""

    def __init__(self, dim, generators=None, provenance=None):
        self.dim = dim
        self.generators = []
        self.provenance = []
        self._keys = set()
        generators = list(generators or [])
        provenance = list(provenance or ["user"] * len(generators))
        if len(provenance) != len(generators):
            raise ValueError("one provenance tag per generator")
        for g, tag in zip(generators, provenance):
            self._append(g, tag)

    def _append(self, g, tag):
        if tag not in PROVENANCES:
            raise ValueError(f"unknown provenance '{tag}'")
        check_square(g, self.dim)
        key = matrix_key(g)
        if key in self._keys:
            return
        self._keys.add(key)
        self.generators.append(g)
        self.provenance.append(tag)

    def extended(self, other):
        """New group generated by both generator sets; duplicates dropped"""
        if other.dim != self.dim:
            raise DimensionMismatchError(f"cannot merge groups of dimension {self.dim} and {other.dim}")
        merged = SymmetryGroup(self.dim, self.generators, self.provenance)
        for g, tag in zip(other.generators, other.provenance):
            merged._append(g, tag)
        return merged

    def __len__(self):
        return len(self.generators)

    def summary(self):
        counts = {}
        for tag in self.provenance:
            counts[tag] = counts.get(tag, 0) + 1
        return {"generators": len(self.generators), "provenance": [
            {"tag": tag, "count": counts[tag]} for tag in PROVENANCES if tag in counts
        ]}

    def to_dict(self):
        return {
            "dim": self.dim,
            "generators": [
                {"matrix": [[str(x) for x in row] for row in g.tolist()], "provenance": tag}
                for g, tag in zip(self.generators, self.provenance)
            ],
        }

    @classmethod
    def from_dict(cls, data):
        gens = data.get("generators", [])
        dim = int(data["dim"]) if "dim" in data else len(gens[0]["matrix"])
        return cls(dim, [frac_matrix(g["matrix"]) for g in gens],
                   [g.get("provenance", "user") for g in gens])


class ReversibilityResult:
    """2-reversibility outcome: reversible, failing (with the pair) or undecided"""

    def __init__(self, status, pair=None, explored=0):
        self.status = status
        self.pair = pair
        self.explored = explored

    @property
    def reversible(self):
        return self.status == "reversible"

    def to_dict(self):
        data = {"status": self.status, "elements_explored": self.explored}
        if self.pair:
            data["pair"] = list(self.pair)
        return data


class Certificate:
    """Maximality certificate from invariant forms meeting the orbit normal space"""

    MAXIMAL = "MAXIMAL"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __init__(self, dim_normal, dim_invariant_normal, witness, group_summary, algebra_hash,
                 dim_invariant=None):
        self.dim_normal = dim_normal
        self.dim_invariant_normal = dim_invariant_normal
        self.witness = witness
        self.group_summary = group_summary
        self.algebra_hash = algebra_hash
        self.dim_invariant = dim_invariant
        if self.status == self.INCONCLUSIVE and (witness is None or witness.is_zero()):
            raise ValueError("an inconclusive certificate needs a nonzero witness")

    @property
    def status(self):
        return self.MAXIMAL if self.dim_invariant_normal == 0 else self.INCONCLUSIVE

    @property
    def is_maximal(self):
        return self.status == self.MAXIMAL

    def to_dict(self):
        data = {
            "status": self.status,
            "dim_normal": self.dim_normal,
            "dim_invariant_normal": self.dim_invariant_normal,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "group": self.group_summary,
            "algebra_hash": self.algebra_hash,
        }
        if self.dim_invariant is not None:
            data["dim_invariant"] = self.dim_invariant
        return data

    def same_outcome(self, other):
        return (self.status == other.status and self.dim_normal == other.dim_normal
                and self.dim_invariant_normal == other.dim_invariant_normal)

