"""Finite-dimensional complex Banach-lattice arithmetic.

Vectors carry a norm context (little-ell-p, quadrature L^p, or grid sup) and
support the order operations (real/imaginary part, modulus, positive part)
plus the distance-to-cone functional used throughout the positivity analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Ell1:
    pass


@dataclass(frozen=True)
class Ell2:
    pass


@dataclass(frozen=True)
class EllInf:
    pass


@dataclass(frozen=True)
class LpQuadrature:
    """L^p norm on an interval, discretized by a quadrature rule."""

    p: float
    nodes: tuple
    weights: tuple

    def __post_init__(self):
        if self.p < 1:
            raise LatticeError(f"quadrature exponent p={self.p} must be >= 1")
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape:
            raise LatticeError("quadrature nodes and weights must have equal length")
        if np.any(np.diff(nodes) <= 0):
            raise LatticeError("quadrature nodes must be strictly increasing")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise LatticeError("quadrature weights must be strictly positive and finite")


@dataclass(frozen=True)
class GridSup:
    """Sup norm sampled on a fixed grid; all statements are grid-relative."""

    nodes: tuple

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if np.any(np.diff(nodes) <= 0):
            raise LatticeError("grid nodes must be strictly increasing")


NormKind = Union[Ell1, Ell2, EllInf, LpQuadrature, GridSup]


def node_count(norm: NormKind):
    """Number of nodes fixed by the norm, or None for the plain ell-p norms."""
    if isinstance(norm, LpQuadrature):
        return len(norm.nodes)
    if isinstance(norm, GridSup):
        return len(norm.nodes)
    return None


@dataclass(frozen=True)
class LatticeVector:
    entries: np.ndarray = field()
    norm: NormKind = field(default_factory=Ell2)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 1:
            raise LatticeError("lattice vectors are one-dimensional")
        expected = node_count(self.norm)
        if expected is not None and len(entries) != expected:
            raise LatticeError(
                f"vector length {len(entries)} does not match the {expected} nodes of its norm"
            )

    def __len__(self):
        return len(self.entries)

    def with_entries(self, entries) -> "LatticeVector":
        return LatticeVector(np.asarray(entries, dtype=complex), self.norm)


def real_part(x: LatticeVector) -> LatticeVector:
    return x.with_entries(x.entries.real)


def imag_part(x: LatticeVector) -> LatticeVector:
    return x.with_entries(x.entries.imag)


def complex_modulus(x: LatticeVector) -> LatticeVector:
    return x.with_entries(np.abs(x.entries))


def positive_part(x: LatticeVector) -> LatticeVector:
    return x.with_entries(np.maximum(x.entries.real, 0.0))


def negative_part(x: LatticeVector) -> LatticeVector:
    return x.with_entries(np.maximum(-x.entries.real, 0.0))


def norm_value(x: LatticeVector) -> float:
    return _norm_of(x.entries, x.norm)


def _norm_of(entries: np.ndarray, norm: NormKind) -> float:
    a = np.abs(entries)
    if isinstance(norm, Ell1):
        return float(np.sum(a))
    if isinstance(norm, Ell2):
        return float(np.sqrt(np.sum(a * a)))
    if isinstance(norm, EllInf) or isinstance(norm, GridSup):
        return float(np.max(a)) if len(a) else 0.0
    if isinstance(norm, LpQuadrature):
        w = np.asarray(norm.weights, dtype=float)
        return float(np.sum(w * a**norm.p) ** (1.0 / norm.p))
    raise LatticeError(f"unknown norm kind {norm!r}")


def is_positive(x: LatticeVector, tol: float = 0.0) -> bool:
    return bool(
        np.all(x.entries.real >= -tol) and np.all(np.abs(x.entries.imag) <= tol)
    )


def cone_distance(x: LatticeVector) -> float:
    """Distance of x to the positive cone: the norm of -(re x)^- + i im x."""
    re = x.entries.real
    residual = -np.maximum(-re, 0.0) + 1j * x.entries.imag
    return _norm_of(residual, x.norm)


_ORACLE_DIM_CAP = 6


def cone_distance_oracle(x: LatticeVector, resolution: float) -> float:
    """Brute-force cone distance: minimize ||x - y|| over a nonnegative grid.

    All supported norms are monotone in the per-coordinate deviations
    |x_k - y_k|, so the joint grid minimum is attained by minimizing each
    coordinate's deviation independently over the same grid.
    """
    if resolution <= 0:
        raise LatticeError("resolution must be positive")
    if len(x) > _ORACLE_DIM_CAP:
        raise LatticeError(
            f"oracle dimension {len(x)} exceeds the cap {_ORACLE_DIM_CAP}"
        )
    entries = x.entries
    if len(entries) == 0:
        return 0.0
    bound = 2.0 * float(np.max(np.abs(entries)))
    grid = np.arange(0.0, bound + resolution, resolution)
    if len(grid) == 0:
        grid = np.array([0.0])
    # deviation of entry k from every grid candidate; best candidate per entry
    dev = np.abs(entries[:, None] - grid[None, :])
    best = dev.min(axis=1)
    return _norm_of(best, x.norm)


def midpoint_rule(lo: float, hi: float, n: int):
    """Composite midpoint nodes/weights on (lo, hi); never places a node at 0
    when n is even and the interval is symmetric."""
    h = (hi - lo) / n
    nodes = lo + h * (np.arange(n) + 0.5)
    weights = np.full(n, h)
    return nodes, weights


def trapezoid_weights(nodes) -> np.ndarray:
    nodes = np.asarray(nodes, dtype=float)
    w = np.zeros_like(nodes)
    d = np.diff(nodes)
    w[:-1] += d / 2
    w[1:] += d / 2
    return w
