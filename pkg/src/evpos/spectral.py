"""Complex-matrix spectral computations: eigenvalues, resolvents, operator
norms, Laurent coefficients at resolvent poles, multiplicities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .lattice import Ell1, Ell2, EllInf, LatticeVector, NormKind

DIM_CAP = 128
DEFAULT_TOL = 1e-8


class SpectralError(RuntimeError):
    pass


class SingularResolventError(SpectralError):
    def __init__(self, lam: complex):
        super().__init__(f"resolvent is singular (or nearly so) at lambda = {lam}")
        self.lam = lam


class NotAnEigenvalueError(SpectralError):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    spectral_radius: float
    solver_tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(
            self, "eigenvalues", np.asarray(self.eigenvalues, dtype=complex)
        )


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SpectralError("expected a square matrix")
    if A.shape[0] > DIM_CAP:
        raise SpectralError(f"dimension {A.shape[0]} exceeds the cap {DIM_CAP}")
    return A


def eigenvalues(A, tol: float = DEFAULT_TOL) -> Spectrum:
    """Full spectrum via LAPACK's Hessenberg-reduction + shifted-QR solver,
    cross-checked against the trace."""
    A = _as_matrix(A)
    n = A.shape[0]
    if n == 0:
        return Spectrum(np.array([], dtype=complex), 0.0, tol)
    try:
        vals = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigenvalue iteration did not converge: {exc}") from exc
    scale = np.linalg.norm(A, 2)
    if abs(np.sum(vals) - np.trace(A)) > max(n * tol * scale, n * 1e-12):
        raise SpectralError("eigenvalue sum does not match the trace")
    spr = float(np.max(np.abs(vals)))
    return Spectrum(vals, spr, tol)


def resolvent_matrix(A, lam: complex) -> np.ndarray:
    """(lam - A)^{-1} by partial-pivot elimination; raises on near-singularity."""
    A = _as_matrix(A)
    n = A.shape[0]
    M = lam * np.eye(n) - A
    lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    pivots = np.abs(np.diag(lu))
    threshold = 1e-14 * max(np.max(np.abs(M)), 1e-300)
    if np.min(pivots) < threshold:
        raise SingularResolventError(lam)
    return scipy.linalg.lu_solve((lu, piv), np.eye(n, dtype=complex), check_finite=False)


def resolvent_apply(A, lam: complex, x: LatticeVector) -> LatticeVector:
    A = _as_matrix(A)
    if A.shape[0] != len(x):
        raise SpectralError("dimension mismatch")
    M = lam * np.eye(A.shape[0]) - A
    lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    pivots = np.abs(np.diag(lu))
    threshold = 1e-14 * max(np.max(np.abs(M)), 1e-300)
    if np.min(pivots) < threshold:
        raise SingularResolventError(lam)
    y = scipy.linalg.lu_solve((lu, piv), x.entries, check_finite=False)
    return x.with_entries(y)


def operator_norm(A, norm: NormKind) -> float:
    A = _as_matrix(A)
    if A.size == 0:
        return 0.0
    if isinstance(norm, Ell1):
        return float(np.max(np.sum(np.abs(A), axis=0)))
    if isinstance(norm, EllInf):
        return float(np.max(np.sum(np.abs(A), axis=1)))
    if isinstance(norm, Ell2):
        return _largest_singular_value(A)
    raise SpectralError(f"unsupported norm kind {norm!r} for operator norms")


def _largest_singular_value(A: np.ndarray, rel_tol: float = 1e-10) -> float:
    """Power iteration on A*A; deterministic start vector."""
    n = A.shape[0]
    B = A.conj().T @ A
    v = np.ones(n) + np.linspace(0.0, 0.5, n)
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(10_000):
        w = B @ v
        mu = float(np.linalg.norm(w))
        if mu == 0.0:
            return 0.0
        v = w / mu
        if abs(mu - prev) <= rel_tol * mu:
            return float(np.sqrt(mu))
        prev = mu
    return float(np.sqrt(prev))


def _numeric_rank(M: np.ndarray, tol: float) -> int:
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def _require_eigenvalue(A: np.ndarray, lam0: complex, tol: float) -> None:
    spec = eigenvalues(A, tol)
    scale = max(np.linalg.norm(A, 2), 1.0)
    if np.min(np.abs(spec.eigenvalues - lam0)) > max(tol * scale, 1e-6 * scale):
        raise NotAnEigenvalueError(f"{lam0} is not a spectral value")


def pole_order(A, lam0: complex, tol: float = DEFAULT_TOL) -> int:
    """Largest Jordan block size at lam0: the first k at which the numeric rank
    of (lam0 - A)^k stops decreasing."""
    A = _as_matrix(A)
    _require_eigenvalue(A, lam0, tol)
    n = A.shape[0]
    B = lam0 * np.eye(n) - A
    scale = np.linalg.norm(B, 2)
    if scale > 0:
        B = B / scale
    prev_rank = _numeric_rank(B, tol)
    power = B
    for k in range(1, n + 1):
        power = power @ B
        rank = _numeric_rank(power, tol)
        if rank == prev_rank:
            return k
        prev_rank = rank
    return n


def laurent_leading_coefficient(
    A, lam0: float, m: int, j_range=range(8, 17), rel_tol: float = 1e-7
) -> np.ndarray:
    """Leading Laurent coefficient Q_{-m} of the resolvent at a positive pole
    lam0, by Richardson extrapolation of (r - lam0)^m R(r, A) along
    r = lam0 (1 + 2^{-j})."""
    A = _as_matrix(A)
    if lam0 <= 0:
        raise SpectralError("Laurent extrapolation requires a positive pole")
    samples = []
    for j in j_range:
        r = lam0 * (1.0 + 2.0**-j)
        samples.append((r - lam0) ** m * resolvent_matrix(A, r))
    # step halves each row: classic Richardson table in powers of (r - lam0)
    table = [samples]
    for k in range(1, len(samples)):
        prev = table[-1]
        factor = 2.0**k
        table.append(
            [
                (factor * prev[i + 1] - prev[i]) / (factor - 1.0)
                for i in range(len(prev) - 1)
            ]
        )
    best = table[-1][0]
    check = table[-2][0] if len(table) >= 2 else samples[-1]
    scale = max(np.max(np.abs(best)), 1e-300)
    drift = np.max(np.abs(best - check)) / scale
    if drift > rel_tol:
        raise SpectralError(
            f"Laurent extrapolation did not converge (relative drift {drift:.3e})"
        )
    return best


def geometric_multiplicity(A, lam: complex, tol: float = DEFAULT_TOL) -> int:
    A = _as_matrix(A)
    n = A.shape[0]
    M = lam * np.eye(n) - A
    s = np.linalg.svd(M, compute_uv=False)
    scale = max(np.linalg.norm(A, 2), 1.0)
    return int(np.sum(s < tol * scale))


def peripheral_spectrum(spec: Spectrum, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of maximal modulus, deduplicated within tol * spr."""
    vals = spec.eigenvalues
    if len(vals) == 0:
        return np.array([], dtype=complex)
    spr = spec.spectral_radius
    if spr == 0.0:
        return np.array([0.0 + 0j])
    selected = vals[np.abs(vals) >= spr * (1.0 - tol)]
    out: list = []
    for v in selected:
        if all(abs(v - u) > tol * spr for u in out):
            out.append(v)
    return np.array(out, dtype=complex)
