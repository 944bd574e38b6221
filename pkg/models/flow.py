import math

import numpy as np

from utils.errors import FlowError

NORMALIZATIONS = ("none", "unit_bracket_norm", "unit_determinant")


class FlowProblem:
    """Homogeneous flow dg/dt = -a Ric(g) - b scal(g) g from a float Gram matrix"""

    def __init__(self, alg, g0=None, a=2.0, b=0.0, t_end=1.0, step=1e-3,
                 normalization="unit_determinant", sample_every=10, symmetry_tol=1e-12):
        self.alg = alg
        self.g0 = np.eye(alg.dim) if g0 is None else np.array(g0, dtype=float)
        self.a = float(a)
        self.b = float(b)
        self.t_end = float(t_end)
        self.step = float(step)
        self.normalization = normalization
        self.sample_every = int(sample_every)
        self.symmetry_tol = symmetry_tol
        self.validate()

    def validate(self):
        n = self.alg.dim
        if self.g0.shape != (n, n):
            raise FlowError(f"initial Gram must be {n}x{n}, got {self.g0.shape}")
        if np.max(np.abs(self.g0 - self.g0.T)) > self.symmetry_tol:
            raise FlowError("initial Gram is not symmetric")
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise FlowError("flow coefficients must be finite")
        if self.step <= 0:
            raise FlowError(f"step must be positive, got {self.step}")
        if self.t_end <= 0:
            raise FlowError(f"t_end must be positive, got {self.t_end}")
        if self.normalization not in NORMALIZATIONS:
            raise FlowError(f"unknown normalization '{self.normalization}'")
        if self.sample_every < 1:
            raise FlowError("sample_every must be at least 1")

    def to_dict(self):
        return {
            "algebra": self.alg.name or self.alg.fingerprint()[:12],
            "dim": self.alg.dim,
            "a": self.a,
            "b": self.b,
            "t_end": self.t_end,
            "step": self.step,
            "normalization": self.normalization,
        }


class FlowSample:
    def __init__(self, t, gram, eigenvalues, scal, soliton_residual):
        self.t = t
        self.gram = gram
        self.eigenvalues = eigenvalues
        self.scal = scal
        self.soliton_residual = soliton_residual

    def csv_row(self):
        return [self.t, *self.gram.ravel().tolist(), *self.eigenvalues.tolist(), self.scal]


class FlowTrajectory:
    """Sampled solution; status is 'completed', 'not_positive_definite' or 'blow_up'"""

    def __init__(self, problem, samples=None, status="completed"):
        self.problem = problem
        self.samples = list(samples or [])
        self.status = status

    @property
    def truncated(self):
        return self.status != "completed"

    @property
    def final(self):
        return self.samples[-1]

    def csv_header(self):
        n = self.problem.alg.dim
        grams = [f"g{i + 1}{j + 1}" for i in range(n) for j in range(n)]
        eigs = [f"ric_eig{i + 1}" for i in range(n)]
        return ["t", *grams, *eigs, "scal"]

    def csv_rows(self):
        return [sample.csv_row() for sample in self.samples]
