"""Numerical verification of Perron-Frobenius-type conclusions on dense
complex matrices: spectral radius in the spectrum, positive eigenvectors via
Laurent coefficients, peripheral-spectrum cyclicity, and multiplicity
monotonicity, together with the auxiliary resolvent inequalities that drive
the proofs.

Theorem checks never assume their own hypotheses. Hypotheses (power-bounded
estimates, asymptotic-positivity verdicts) are measured and attached to the
result, so a failed conclusion with failed hypotheses reads as "no
contradiction" rather than as a bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .classify import (
    Confirmed,
    ExtremePoints,
    MonteCarlo,
    Notion,
    PositivityVerdict,
    RefutedWithWitness,
    classify_asymptotic,
    delta_n,
    StrategyUnavailableError,
)
from .lattice import (
    Ell1,
    Ell2,
    EllInf,
    LatticeVector,
    NormKind,
    complex_modulus,
    cone_distance,
    norm_value,
    positive_part,
    real_part,
)
from .operators import Dense
from .spectral import (
    SingularResolventError,
    SpectralError,
    Spectrum,
    eigenvalues,
    geometric_multiplicity,
    laurent_leading_coefficient,
    operator_norm,
    peripheral_spectrum,
    pole_order,
    resolvent_apply,
    resolvent_matrix,
)

DEFAULT_TOL = 1e-8


class VerificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CheckResult:
    """One named verification with a signed slack.

    pass_ is True exactly when margin >= -tolerance; payload carries the
    diagnostic values that produced the margin.  hypotheses maps hypothesis
    names to booleans (or None when not evaluated); `contradiction` is set
    only when the conclusion fails while every recorded hypothesis holds.
    """

    name: str
    pass_: bool
    margin: float
    tolerance: float
    payload: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)
    applicable: bool = True

    @property
    def contradiction(self) -> bool:
        if self.pass_ or not self.applicable:
            return False
        hyps = [v for v in self.hypotheses.values() if v is not None]
        return bool(hyps) and all(hyps)


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise VerificationError("expected a square matrix")
    return A


def _spr(A: np.ndarray) -> float:
    return eigenvalues(A).spectral_radius


def verify_spr_in_spectrum(A, tol: float = DEFAULT_TOL) -> CheckResult:
    """Pass iff some eigenvalue lies within tol*spr of the positive real
    number spr(A)."""
    A = _as_matrix(A)
    spec = eigenvalues(A)
    spr = spec.spectral_radius
    if spr == 0.0:
        return CheckResult(
            "spr-in-spectrum",
            True,
            0.0,
            tol,
            payload={"note": "zero spectral radius; vacuous"},
        )
    dists = np.abs(spec.eigenvalues - spr)
    k = int(np.argmin(dists))
    margin = tol * spr - float(dists[k])
    return CheckResult(
        "spr-in-spectrum",
        margin >= 0.0,
        margin,
        tol,
        payload={
            "spectral_radius": spr,
            "nearest_eigenvalue": complex(spec.eigenvalues[k]),
            "distance": float(dists[k]),
        },
    )


def omega(
    A, r: float, x: LatticeVector, n_trunc: int = 200
) -> tuple:
    """Truncated series sum_{n<=N} r^{-(n+1)} (|A^n x| - Re(A^n x)) together
    with a geometric tail bound on its norm; caller rescales A to spr = 1."""
    A = _as_matrix(A)
    if r <= 1.0:
        raise VerificationError("omega requires r > 1")
    acc = np.zeros(A.shape[0])
    y = x.entries.astype(complex)
    sup_norm = 0.0
    for n in range(n_trunc + 1):
        if n > 0:
            y = A @ y
        sup_norm = max(sup_norm, norm_value(x.with_entries(y)))
        acc = acc + (np.abs(y) - y.real) / r ** (n + 1)
    tail_bound = 2.0 * sup_norm * r ** -(n_trunc + 1) / (r - 1.0)
    return x.with_entries(acc.astype(complex)), float(tail_bound)


def resolvent_estimate_check(
    A,
    lam: complex,
    x: LatticeVector,
    n_trunc: int = 200,
    tol: float = 1e-10,
) -> CheckResult:
    """Entrywise |R(lam)x| <= Re(R(|lam|)x) + omega(|lam|, x), up to the
    omega truncation tail; requires spr(A) = 1 and |lam| > 1."""
    A = _as_matrix(A)
    r = abs(lam)
    if r <= 1.0 + 1e-6:
        raise VerificationError("resolvent estimate requires |lambda| > 1")
    lhs = np.abs(resolvent_apply(A, lam, x).entries)
    rhs_main = resolvent_apply(A, r, x).entries.real
    w, tail = omega(A, r, x, n_trunc)
    slack = rhs_main + w.entries.real - lhs
    margin = float(np.min(slack))
    allowed = tol + tail
    return CheckResult(
        "resolvent-estimate",
        margin >= -allowed,
        margin,
        allowed,
        payload={"lambda": complex(lam), "tail_bound": tail},
    )


def uniform_error_decay_check(
    A,
    js: Sequence[int] = tuple(range(1, 11)),
    n_trunc: int = 400,
    asymptotic_verdict: Optional[PositivityVerdict] = None,
) -> CheckResult:
    """m(r) = max over unit cone extreme points of (r-1)*||omega(r, x)||
    must be non-increasing (10% slack) and end below 1e-2 of its start,
    along r = 1 + 2^{-j}."""
    A = _as_matrix(A)
    dim = A.shape[0]
    hyp = {}
    if asymptotic_verdict is not None:
        hyp["uniform-asymptotic-positive"] = isinstance(
            asymptotic_verdict.status, Confirmed
        )
        if not hyp["uniform-asymptotic-positive"]:
            return CheckResult(
                "uniform-error-decay",
                True,
                0.0,
                0.0,
                payload={"note": "hypothesis unmet; not applicable"},
                hypotheses=hyp,
                applicable=False,
            )
    norm = Ell1()
    basis = [LatticeVector(np.eye(dim)[:, j].astype(complex), norm) for j in range(dim)]
    ms = []
    for j in js:
        r = 1.0 + 2.0**-j
        worst = 0.0
        for e in basis:
            w, _ = omega(A, r, e, n_trunc)
            worst = max(worst, (r - 1.0) * norm_value(w))
        ms.append(worst)
    ms_arr = np.array(ms)
    head = ms_arr[0]
    if head == 0.0:
        return CheckResult(
            "uniform-error-decay", True, 0.0, 0.0, payload={"m": ms}, hypotheses=hyp
        )
    monotone_ok = bool(np.all(ms_arr[1:] <= ms_arr[:-1] * 1.10 + 1e-15))
    final_ok = ms_arr[-1] <= 1e-2 * head
    margin = float(1e-2 * head - ms_arr[-1])
    return CheckResult(
        "uniform-error-decay",
        monotone_ok and final_ok,
        margin,
        0.0,
        payload={"m": ms, "monotone": monotone_ok},
        hypotheses=hyp,
    )


def real_modulus_bound_check(x: LatticeVector) -> CheckResult:
    """|| |x| - Re x || <= 2 d_+(x), tight for real negative vectors."""
    lhs_vec = x.with_entries(complex_modulus(x).entries - real_part(x).entries)
    lhs = norm_value(lhs_vec)
    rhs = 2.0 * cone_distance(x)
    tol = 1e-12 * max(norm_value(x), 1.0)
    margin = rhs - lhs
    return CheckResult(
        "real-modulus-bound",
        margin >= -tol,
        float(margin),
        tol,
        payload={"lhs": float(lhs), "rhs": float(rhs)},
    )


def _norming_vector(A: np.ndarray, norm: NormKind) -> np.ndarray:
    """z with ||z|| <= 1 and ||A z|| >= 1/2 ||A|| (exact attainment for
    l1/l-infinity, power iteration for l2)."""
    n = A.shape[0]
    if isinstance(norm, Ell1):
        j = int(np.argmax(np.sum(np.abs(A), axis=0)))
        z = np.zeros(n, dtype=complex)
        z[j] = 1.0
        return z
    if isinstance(norm, EllInf):
        i = int(np.argmax(np.sum(np.abs(A), axis=1)))
        row = A[i]
        z = np.where(np.abs(row) > 0, np.conj(row) / np.abs(row), 1.0)
        return z.astype(complex)
    if isinstance(norm, Ell2):
        B = A.conj().T @ A
        v = (np.ones(n) + np.linspace(0.0, 0.5, n)).astype(complex)
        v /= np.linalg.norm(v)
        for _ in range(500):
            w = B @ v
            nw = np.linalg.norm(w)
            if nw == 0:
                break
            v = w / nw
        return v
    raise VerificationError(f"unsupported norm {norm!r}")


def cone_norm_attainment(A, norm: NormKind) -> tuple:
    """A positive x with ||x|| <= 1 and ||A x|| >= 1/8 ||A||, obtained by
    splitting a norming vector into its four real/imaginary sign parts and
    keeping the best piece."""
    A = _as_matrix(A)
    op = operator_norm(A, norm)
    if op == 0.0:
        zero = LatticeVector(np.zeros(A.shape[0], dtype=complex), norm)
        return zero, 1.0
    z = _norming_vector(A, norm)
    zr = z.real
    zi = z.imag
    pieces = [
        np.maximum(zr, 0.0),
        np.maximum(-zr, 0.0),
        np.maximum(zi, 0.0),
        np.maximum(-zi, 0.0),
    ]
    best = None
    best_val = -1.0
    for p in pieces:
        val = norm_value(LatticeVector((A @ p).astype(complex), norm))
        if val > best_val:
            best_val = val
            best = p
    x = LatticeVector(best.astype(complex), norm)
    return x, float(best_val / op)


# ---------------------------------------------------------------------------
# positive eigenvectors via the Laurent leading coefficient


@dataclass(frozen=True)
class EigenvectorResult:
    value: float
    primal: LatticeVector
    adjoint: LatticeVector
    pole_order: int
    via: str
    primal_cone_distance: float
    adjoint_cone_distance: float
    primal_residual: float
    adjoint_residual: float


def phase_aligned_cone_distance(x: LatticeVector, grid: int = 256) -> float:
    """min over theta of d_+(e^{i theta} x) / ||x||, with one local
    refinement pass; eigenvectors are only defined up to a scalar."""
    scale = norm_value(x)
    if scale == 0.0:
        return 0.0
    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    dists = np.array(
        [cone_distance(x.with_entries(np.exp(1j * t) * x.entries)) for t in thetas]
    )
    k = int(np.argmin(dists))
    best = float(dists[k])
    center = float(thetas[k])
    half_width = 2.0 * np.pi / grid
    for _ in range(5):
        fine = np.linspace(center - half_width, center + half_width, 64)
        fine_d = np.array(
            [cone_distance(x.with_entries(np.exp(1j * t) * x.entries)) for t in fine]
        )
        j = int(np.argmin(fine_d))
        best = min(best, float(fine_d[j]))
        center = float(fine[j])
        half_width /= 31.0
    return float(best / scale)


def _positive_candidates(dim: int, norm: NormKind):
    yield LatticeVector(np.ones(dim, dtype=complex), norm)
    for j in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[j] = 1.0
        yield LatticeVector(e, norm)


def positive_eigenvector(
    A, norm: Optional[NormKind] = None, tol: float = 1e-9
) -> EigenvectorResult:
    """Perron-type eigenvector pair at lam0 = spr(A), from the leading Laurent
    coefficient Q_{-m} of the resolvent: Q_{-m} x0 for a canonical positive
    x0 lies in ker(lam0 - A) and, up to phase, in the positive cone."""
    A = _as_matrix(A)
    if norm is None:
        norm = Ell2()
    spr = _spr(A)
    if spr <= 0:
        raise VerificationError("positive eigenvector requires spr > 0")
    m = pole_order(A, spr)
    Q = laurent_leading_coefficient(A, spr, m)
    Qa = laurent_leading_coefficient(A.conj().T, spr, m)

    def pick(Qm: np.ndarray) -> LatticeVector:
        for x0 in _positive_candidates(A.shape[0], norm):
            y = Qm @ x0.entries
            nv = norm_value(x0.with_entries(y))
            if nv > tol:
                return x0.with_entries(y / nv)
        raise VerificationError(
            "every canonical positive vector is annihilated by the Laurent "
            "coefficient"
        )

    primal = pick(Q)
    adjoint = pick(Qa)
    res_p = norm_value(primal.with_entries(spr * primal.entries - A @ primal.entries))
    res_a = norm_value(
        adjoint.with_entries(spr * adjoint.entries - A.conj().T @ adjoint.entries)
    )
    return EigenvectorResult(
        value=spr,
        primal=primal,
        adjoint=adjoint,
        pole_order=m,
        via="laurent",
        primal_cone_distance=phase_aligned_cone_distance(primal),
        adjoint_cone_distance=phase_aligned_cone_distance(adjoint),
        primal_residual=float(res_p),
        adjoint_residual=float(res_a),
    )


# ---------------------------------------------------------------------------
# peripheral spectrum: cyclicity and multiplicity monotonicity


def power_bounded_estimate(A, horizon: int = 64) -> dict:
    """sup_n ||(A/spr)^n|| over the horizon and the Abel sup
    max_j (lam-spr)||R(lam)|| along lam = spr(1 + 2^{-j}); both are
    horizon/grid estimates, never certificates."""
    A = _as_matrix(A)
    spr = _spr(A)
    if spr <= 0:
        raise VerificationError("power-bounded estimate requires spr > 0")
    S = A / spr
    power = np.eye(A.shape[0], dtype=complex)
    sup_norm = 1.0
    for _ in range(horizon):
        power = power @ S
        sup_norm = max(sup_norm, float(np.linalg.norm(power, 2)))
    abel = 0.0
    for j in range(1, 15):
        lam = spr * (1.0 + 2.0**-j)
        R = resolvent_matrix(A, lam)
        abel = max(abel, (lam - spr) * float(np.linalg.norm(R, 2)))
    return {"sup_norm": sup_norm, "abel_sup": abel}


_POWER_BOUNDED_CAP = 1e3


def peripheral_cyclicity_check(
    A,
    K: int = 12,
    tol: float = DEFAULT_TOL,
    asymptotic_verdict: Optional[PositivityVerdict] = None,
    horizon: int = 64,
) -> CheckResult:
    """Every power spr*e^{ik theta} (|k| <= K) of a peripheral eigenvalue
    spr*e^{i theta} must land within tol*spr of an eigenvalue."""
    A = _as_matrix(A)
    spec = eigenvalues(A)
    spr = spec.spectral_radius
    if spr <= 0:
        return CheckResult(
            "peripheral-cyclicity",
            True,
            0.0,
            tol,
            payload={"note": "zero spectral radius; vacuous"},
        )
    pb = power_bounded_estimate(A, horizon)
    hyp = {"power-bounded": pb["sup_norm"] <= _POWER_BOUNDED_CAP}
    if asymptotic_verdict is not None:
        hyp["uniform-asymptotic-positive"] = isinstance(
            asymptotic_verdict.status, Confirmed
        )
    periph = peripheral_spectrum(spec, tol)
    worst = 0.0
    rows = []
    for lam in periph:
        theta = np.angle(lam)
        for k in range(-K, K + 1):
            target = spr * np.exp(1j * k * theta)
            d = float(np.min(np.abs(spec.eigenvalues - target)))
            rows.append(
                {"lambda": complex(lam), "k": k, "distance": d}
            )
            worst = max(worst, d)
    margin = tol * spr - worst
    return CheckResult(
        "peripheral-cyclicity",
        margin >= 0.0,
        float(margin),
        tol,
        payload={"rows": rows, "power_bounds": pb},
        hypotheses=hyp,
    )


def multiplicity_monotonicity_check(
    A,
    n_list: Sequence[int] = (-3, -2, -1, 0, 1, 2, 3),
    tol: float = DEFAULT_TOL,
    asymptotic_verdict: Optional[PositivityVerdict] = None,
    horizon: int = 64,
) -> CheckResult:
    """dim ker(spr e^{i theta} - A) <= dim ker(spr e^{i n theta} - A) for
    each peripheral eigenvalue and each n; a power that misses the spectrum
    entirely is recorded as a cyclicity failure."""
    A = _as_matrix(A)
    spec = eigenvalues(A)
    spr = spec.spectral_radius
    if spr <= 0:
        return CheckResult(
            "multiplicity-monotonicity",
            True,
            0.0,
            tol,
            payload={"note": "zero spectral radius; vacuous"},
        )
    pb = power_bounded_estimate(A, horizon)
    hyp = {"power-bounded": pb["sup_norm"] <= _POWER_BOUNDED_CAP}
    if asymptotic_verdict is not None:
        hyp["weak-asymptotic-positive"] = isinstance(
            asymptotic_verdict.status, Confirmed
        )
    periph = peripheral_spectrum(spec, tol)
    rows = []
    ok = True
    for lam in periph:
        theta = np.angle(lam)
        base_mult = geometric_multiplicity(A, lam)
        for n in n_list:
            target = spr * np.exp(1j * n * theta)
            d = float(np.min(np.abs(spec.eigenvalues - target)))
            if d > tol * spr:
                rows.append(
                    {"lambda": complex(lam), "n": n, "missing_power": complex(target)}
                )
                ok = False
                continue
            mult = geometric_multiplicity(A, target)
            rows.append(
                {
                    "lambda": complex(lam),
                    "n": n,
                    "base_multiplicity": base_mult,
                    "power_multiplicity": mult,
                }
            )
            if mult < base_mult:
                ok = False
    return CheckResult(
        "multiplicity-monotonicity",
        ok,
        0.0 if ok else -1.0,
        tol,
        payload={"rows": rows, "power_bounds": pb},
        hypotheses=hyp,
    )
