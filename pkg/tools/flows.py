"""
Homogeneous metric flows dg/dt = -a Ric(g) - b scal(g) g on left-invariant metrics.

Floating point throughout. Ricci at a non-identity Gram matrix is evaluated in
the Cholesky orthonormal frame and pulled back to the input basis.
"""
import logging

import numpy as np

from models.flow import FlowProblem, FlowSample, FlowTrajectory
from tools.lie_core import derivation_algebra
from utils.errors import FlowError

logger = logging.getLogger(__name__)

BLOW_UP = 1e12

PRESETS = {
    "ricci": {"a": 2.0, "b": 0.0},
    "yamabe": {"a": 0.0, "b": 1.0},
}


def preset(name, rho=None):
    """Flow coefficients (a, b) for a named flow"""
    if name == "bourguignon":
        if rho is None:
            raise FlowError("the Ricci-Bourguignon flow needs rho")
        return 2.0, -2.0 * float(rho)
    if name not in PRESETS:
        raise FlowError(f"unknown flow preset '{name}'")
    return PRESETS[name]["a"], PRESETS[name]["b"]


def structure_tensor(alg):
    """Dense float c[i, j, k]"""
    n = alg.dim
    c = np.zeros((n, n, n))
    for (i, j), terms in alg.nonzero_brackets():
        for k, val in terms.items():
            c[i, j, k] = float(val)
            c[j, i, k] = -float(val)
    return c


def ricci_orthonormal(c):
    """Ricci operator and scalar curvature for constants in an orthonormal basis"""
    m = -0.5 * np.einsum("pik,qik->pq", c, c) + 0.25 * np.einsum("ijp,ijq->pq", c, c)
    killing = np.einsum("pkj,qjk->pq", c, c)
    h = np.einsum("ijj->i", c)
    ad_h = np.einsum("i,ijk->kj", h, c)
    ric = m - 0.5 * killing - 0.5 * (ad_h + ad_h.T)
    return ric, float(np.trace(ric))


def orthonormal_constants(c, gram):
    """
    Constants in the frame u = v P with P = L^-T, G = L L^T

    Returns:
        (c_frame, L, P)
    """
    try:
        L = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise FlowError("Gram matrix is not positive definite") from exc
    P = np.linalg.inv(L).T
    c_frame = np.einsum("ia,jb,ijk,lk->abl", P, P, c, L.T)
    return c_frame, L, P


def flow_field(alg, gram, a, b, c=None):
    """
    -a Ric(g) - b scal(g) g as a symmetric matrix in the input basis

    Args:
        alg: LieAlgebra
        gram: symmetric positive definite float matrix
        a, b: flow coefficients
        c: optional precomputed structure tensor

    Returns:
        numpy array, same shape as gram
    """
    c = structure_tensor(alg) if c is None else c
    gram = np.asarray(gram, dtype=float)
    c_frame, L, _ = orthonormal_constants(c, gram)
    ric, scal = ricci_orthonormal(c_frame)
    ric_form = L @ ric @ L.T
    field = -a * ric_form - b * scal * gram
    return 0.5 * (field + field.T)


def _normalize(gram, mode, c):
    if mode == "none":
        return gram
    if mode == "unit_determinant":
        det = np.linalg.det(gram)
        if det <= 0:
            raise FlowError("Gram matrix is not positive definite")
        return gram / det ** (1.0 / gram.shape[0])
    # unit_bracket_norm: |[,]|^2 scales like 1/s under g -> s g
    c_frame, _, _ = orthonormal_constants(c, gram)
    norm_sq = float(np.sum(c_frame ** 2))
    return gram * norm_sq if norm_sq > 0 else gram


def _float_derivations(alg):
    return [np.array(D, dtype=float) for D in derivation_algebra(alg).basis]


def soliton_residual(ric, derivations):
    """Frobenius residual of the least-squares fit ric ~ c I + sum x_j D_j"""
    n = ric.shape[0]
    design = np.column_stack([np.eye(n).ravel()] + [D.ravel() for D in derivations])
    coeffs, *_ = np.linalg.lstsq(design, ric.ravel(), rcond=None)
    return float(np.linalg.norm(design @ coeffs - ric.ravel()))


def _sample(t, gram, c, derivations):
    c_frame, L, P = orthonormal_constants(c, gram)
    ric, scal = ricci_orthonormal(c_frame)
    eigenvalues = np.sort(np.linalg.eigvalsh(ric))
    # derivations in the orthonormal frame: P^-1 D P with P^-1 = L^T
    frame_derivations = [L.T @ D @ P for D in derivations]
    return FlowSample(t, gram.copy(), eigenvalues, scal, soliton_residual(ric, frame_derivations))


def integrate(problem):
    """
    Classical fixed-step RK4 with symmetrization and optional renormalization

    Args:
        problem: FlowProblem

    Returns:
        FlowTrajectory; status is 'blow_up' or 'not_positive_definite' when
        the run stopped early
    """
    c = structure_tensor(problem.alg)
    derivations = _float_derivations(problem.alg)
    n_steps = max(1, int(round(problem.t_end / problem.step)))
    h = problem.t_end / n_steps
    a, b = problem.a, problem.b

    def field(g):
        return flow_field(problem.alg, g, a, b, c)

    trajectory = FlowTrajectory(problem)
    gram = _normalize(0.5 * (problem.g0 + problem.g0.T), problem.normalization, c)
    trajectory.samples.append(_sample(0.0, gram, c, derivations))
    logger.info("integrating %d steps of size %g (a=%g, b=%g)", n_steps, h, a, b)

    for step in range(1, n_steps + 1):
        try:
            k1 = field(gram)
            k2 = field(gram + 0.5 * h * k1)
            k3 = field(gram + 0.5 * h * k2)
            k4 = field(gram + h * k3)
            gram = gram + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            gram = 0.5 * (gram + gram.T)
            gram = _normalize(gram, problem.normalization, c)
        except FlowError:
            logger.warning("Gram matrix lost positive definiteness at step %d", step)
            trajectory.status = "not_positive_definite"
            break
        t = step * h
        if not np.all(np.isfinite(gram)) or np.max(np.abs(gram)) > BLOW_UP:
            logger.warning("flow blew up at t=%g", t)
            trajectory.status = "blow_up"
            break
        if step % problem.sample_every == 0 or step == n_steps:
            try:
                trajectory.samples.append(_sample(t, gram, c, derivations))
            except FlowError:
                trajectory.status = "not_positive_definite"
                break
    return trajectory


def _ratio_vector(eigenvalues):
    scale = np.max(np.abs(eigenvalues)) if eigenvalues.size else 0.0
    if scale < 1e-300:
        return np.zeros_like(eigenvalues)
    return eigenvalues / scale


def self_similarity_diagnostics(trajectory):
    """
    Eigenvalue-ratio drift and soliton residual along a trajectory

    The sorted Ricci eigenvalues of each sample are divided by their largest
    magnitude and compared with the first sample in the max norm.

    Returns:
        dict with 'ratio_drift', 'max_soliton_residual' and 'samples'
    """
    samples = trajectory.samples
    if len(samples) < 2:
        raise FlowError("self-similarity needs at least two samples")
    reference = _ratio_vector(samples[0].eigenvalues)
    drift = max(float(np.max(np.abs(_ratio_vector(s.eigenvalues) - reference))) for s in samples)
    residual = max(s.soliton_residual for s in samples)
    return {"ratio_drift": drift, "max_soliton_residual": residual, "samples": len(samples)}


def summarize(trajectory, tol=1e-6):
    diagnostics = self_similarity_diagnostics(trajectory)
    final = trajectory.final
    return {
        "problem": trajectory.problem.to_dict(),
        "status": trajectory.status,
        "t_final": final.t,
        "final_gram": final.gram.tolist(),
        "final_eigenvalues": final.eigenvalues.tolist(),
        "final_scal": final.scal,
        "diagnostics": diagnostics,
        "self_similar": diagnostics["ratio_drift"] < tol,
    }


def run(alg, g0=None, a=2.0, b=0.0, t_end=1.0, step=1e-3, normalization="unit_determinant",
        sample_every=10, symmetry_tol=1e-12):
    problem = FlowProblem(alg, g0=g0, a=a, b=b, t_end=t_end, step=step,
                          normalization=normalization, sample_every=sample_every,
                          symmetry_tol=symmetry_tol)
    return integrate(problem)
