from models.lie_algebra import SymForm
from utils.linalg import matrices_equal


class RicciData:
    """Ricci tensor of a metric Lie algebra in an orthonormal basis"""

    def __init__(self, ric_form, scal):
        self.ric_form = ric_form if isinstance(ric_form, SymForm) else SymForm(ric_form)
        self.scal = scal

    @property
    def ric_operator(self):
        # identity Gram: operator and form share a matrix
        return self.ric_form.theta

    def diagonal(self):
        return self.ric_form.diagonal()

    def to_dict(self):
        return {
            "ric_operator": self.ric_form.to_dict(),
            "scal": str(self.scal),
            "diagonal": self.ric_form.is_diagonal(),
        }


class SolitonDecomposition:
    """Ric = c * I + D with D a derivation"""

    def __init__(self, c, D, residual_zero):
        self.c = c
        self.D = D
        self.residual_zero = residual_zero

    def matches(self, ricci):
        n = self.D.shape[0]
        rebuilt = self.D.copy()
        for i in range(n):
            rebuilt[i, i] = rebuilt[i, i] + self.c
        return matrices_equal(rebuilt, ricci.ric_operator)

    def to_dict(self):
        return {
            "c": str(self.c),
            "D": [[str(x) for x in row] for row in self.D.tolist()],
            "residual_zero": self.residual_zero,
        }
