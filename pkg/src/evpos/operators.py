"""Concrete operator models with exact power formulas.

Four representations: dense complex matrices, rank-k functional operators
(finite-rank maps sum_i f_i <phi_i, .> with a diagonal duality matrix),
diagonal multiplication operators, and weighted shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .lattice import (
    GridSup,
    LatticeError,
    LatticeVector,
    LpQuadrature,
    NormKind,
    node_count,
    trapezoid_weights,
)


class OperatorError(ValueError):
    pass


DUALITY_TOL = 1e-10


# ---------------------------------------------------------------------------
# function and functional representations


@dataclass(frozen=True)
class Constant:
    value: complex = 1.0


@dataclass(frozen=True)
class Monomial:
    degree: int = 1


@dataclass(frozen=True)
class SignedPower:
    """x -> sgn(x) * |x|**exponent; exponent may be negative (integrable)."""

    exponent: float


@dataclass(frozen=True)
class Tabulated:
    values: tuple


FunctionRep = Union[Constant, Monomial, SignedPower, Tabulated]


@dataclass(frozen=True)
class WeightedIntegral:
    """g -> scale * integral of weight(x) * g(x) over the space's interval."""

    weight: FunctionRep
    scale: complex = 1.0


@dataclass(frozen=True)
class PointCombination:
    """g -> sum_i coefficients[i] * g(points[i])."""

    points: tuple
    coefficients: tuple


FunctionalRep = Union[WeightedIntegral, PointCombination]


def sample_function(f: FunctionRep, nodes: np.ndarray) -> np.ndarray:
    nodes = np.asarray(nodes, dtype=float)
    if isinstance(f, Constant):
        return np.full(len(nodes), complex(f.value))
    if isinstance(f, Monomial):
        return nodes.astype(complex) ** f.degree
    if isinstance(f, SignedPower):
        if np.any(nodes == 0.0) and f.exponent < 0:
            raise OperatorError("signed power with negative exponent sampled at 0")
        return np.sign(nodes) * np.abs(nodes).astype(complex) ** f.exponent
    if isinstance(f, Tabulated):
        values = np.asarray(f.values, dtype=complex)
        if len(values) != len(nodes):
            raise OperatorError("tabulated values do not match the node count")
        return values
    raise OperatorError(f"unknown function representation {f!r}")


def _halfline_powers(f: FunctionRep):
    """(coef_pos, exp_pos, coef_neg, exp_neg) so that f(x) = coef_pos*x^exp_pos
    for x > 0 and f(x) = coef_neg*|x|^exp_neg for x < 0. None for Tabulated."""
    if isinstance(f, Constant):
        return (complex(f.value), 0.0, complex(f.value), 0.0)
    if isinstance(f, Monomial):
        return (1.0 + 0j, float(f.degree), (-1.0 + 0j) ** f.degree, float(f.degree))
    if isinstance(f, SignedPower):
        return (1.0 + 0j, f.exponent, -1.0 + 0j, f.exponent)
    return None


def integrate_product(f: FunctionRep, g: FunctionRep, lo: float, hi: float) -> complex:
    """Closed-form integral of f*g over (lo, hi); lo <= 0 <= hi."""
    pf = _halfline_powers(f)
    pg = _halfline_powers(g)
    if pf is None or pg is None:
        raise OperatorError("closed-form integration requires analytic factors")
    cp = pf[0] * pg[0]
    sp = pf[1] + pg[1]
    cn = pf[2] * pg[2]
    sn = pf[3] + pg[3]
    if sp <= -1 or sn <= -1:
        raise OperatorError("product is not integrable at 0")
    total = 0.0 + 0j
    if hi > 0:
        total += cp * hi ** (sp + 1) / (sp + 1)
    if lo < 0:
        total += cn * (-lo) ** (sn + 1) / (sn + 1)
    return complex(total)


def domain_of(space: NormKind):
    """Interval covered by a function-space norm; grid endpoints for sup grids,
    cell hull for quadrature rules."""
    if isinstance(space, GridSup):
        return float(space.nodes[0]), float(space.nodes[-1])
    if isinstance(space, LpQuadrature):
        nodes = np.asarray(space.nodes, dtype=float)
        weights = np.asarray(space.weights, dtype=float)
        return float(nodes[0] - weights[0] / 2), float(nodes[-1] + weights[-1] / 2)
    raise OperatorError("norm kind carries no function domain")


def quadrature_row(phi: FunctionalRep, space: NormKind) -> np.ndarray:
    """Row vector r with <phi, g> = r @ samples(g) for grid vectors g."""
    if isinstance(space, GridSup):
        nodes = np.asarray(space.nodes, dtype=float)
        quad = trapezoid_weights(nodes)
    elif isinstance(space, LpQuadrature):
        nodes = np.asarray(space.nodes, dtype=float)
        quad = np.asarray(space.weights, dtype=float)
    else:
        raise OperatorError("functionals require a function-space norm")
    if isinstance(phi, WeightedIntegral):
        return phi.scale * sample_function(phi.weight, nodes) * quad
    if isinstance(phi, PointCombination):
        row = np.zeros(len(nodes), dtype=complex)
        for p, c in zip(phi.points, phi.coefficients):
            idx = np.argmin(np.abs(nodes - p))
            if abs(nodes[idx] - p) > 1e-9:
                raise OperatorError(f"point {p} is not a node of the space")
            row[idx] += c
        return row
    raise OperatorError(f"unknown functional representation {phi!r}")


def apply_functional(
    phi: FunctionalRep, f: FunctionRep, space: NormKind
) -> complex:
    """<phi, f> in closed form when possible, by quadrature otherwise."""
    if isinstance(phi, WeightedIntegral):
        if isinstance(f, Tabulated) or isinstance(phi.weight, Tabulated):
            nodes = np.asarray(space.nodes, dtype=float)
            row = quadrature_row(phi, space)
            return complex(row @ sample_function(f, nodes))
        lo, hi = domain_of(space)
        return phi.scale * integrate_product(phi.weight, f, lo, hi)
    if isinstance(phi, PointCombination):
        pts = np.asarray(phi.points, dtype=float)
        vals = sample_function(f, pts)
        return complex(np.sum(np.asarray(phi.coefficients, dtype=complex) * vals))
    raise OperatorError(f"unknown functional representation {phi!r}")


# ---------------------------------------------------------------------------
# operator models


@dataclass(frozen=True)
class Dense:
    matrix: np.ndarray
    norm: NormKind

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise OperatorError("dense operator requires a square matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Diagonal:
    symbol: np.ndarray
    norm: NormKind

    def __post_init__(self):
        s = np.asarray(self.symbol, dtype=complex)
        object.__setattr__(self, "symbol", s)

    @property
    def dim(self) -> int:
        return len(self.symbol)


@dataclass(frozen=True)
class WeightedShift:
    """(Tx)_{k+1} = w_k x_k and (Tx)_1 = 0; dimension = len(weights) + 1."""

    weights: np.ndarray
    norm: NormKind

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return len(self.weights) + 1


@dataclass(frozen=True)
class RankK:
    functions: tuple
    functionals: tuple
    space: NormKind

    def __post_init__(self):
        if len(self.functions) != len(self.functionals):
            raise OperatorError("rank-k model needs matching function/functional lists")
        if node_count(self.space) is None:
            raise OperatorError("rank-k model requires a function-space norm")
        D = duality_matrix(self)
        off = D - np.diag(np.diag(D))
        if np.max(np.abs(off), initial=0.0) > DUALITY_TOL:
            raise OperatorError(
                "duality matrix is not diagonal: "
                f"max off-diagonal {np.max(np.abs(off)):.3e} > {DUALITY_TOL}"
            )

    @property
    def rank(self) -> int:
        return len(self.functions)

    @property
    def dim(self) -> int:
        return node_count(self.space)

    @property
    def eigen_parameters(self) -> np.ndarray:
        return np.diag(duality_matrix(self))


OperatorModel = Union[Dense, Diagonal, WeightedShift, RankK]


def duality_matrix(T: RankK) -> np.ndarray:
    k = len(T.functions)
    D = np.zeros((k, k), dtype=complex)
    for i, phi in enumerate(T.functionals):
        for j, f in enumerate(T.functions):
            D[i, j] = apply_functional(phi, f, T.space)
    return D


def model_dim(T: OperatorModel) -> int:
    return T.dim


def _check_vector(T: OperatorModel, x: LatticeVector):
    if len(x) != model_dim(T):
        raise OperatorError(
            f"vector length {len(x)} does not match operator dimension {model_dim(T)}"
        )


def apply(T: OperatorModel, x: LatticeVector) -> LatticeVector:
    _check_vector(T, x)
    if isinstance(T, Dense):
        return x.with_entries(T.matrix @ x.entries)
    if isinstance(T, Diagonal):
        return x.with_entries(T.symbol * x.entries)
    if isinstance(T, WeightedShift):
        out = np.zeros(T.dim, dtype=complex)
        out[1:] = T.weights * x.entries[:-1]
        return x.with_entries(out)
    if isinstance(T, RankK):
        nodes = np.asarray(T.space.nodes, dtype=float)
        coeffs = [quadrature_row(phi, T.space) @ x.entries for phi in T.functionals]
        out = np.zeros(len(nodes), dtype=complex)
        for c, f in zip(coeffs, T.functions):
            out += c * sample_function(f, nodes)
        return x.with_entries(out)
    raise OperatorError(f"unknown operator model {T!r}")


def rank_k_coefficients(T: RankK, x: LatticeVector) -> np.ndarray:
    """The pairings <phi_i, x> for a grid vector x."""
    return np.array([quadrature_row(phi, T.space) @ x.entries for phi in T.functionals])


def power_apply(T: OperatorModel, n: int, x: LatticeVector) -> LatticeVector:
    if n < 1:
        raise OperatorError("power_apply requires n >= 1")
    _check_vector(T, x)
    if isinstance(T, Dense):
        return x.with_entries(np.linalg.matrix_power(T.matrix, n) @ x.entries)
    if isinstance(T, Diagonal):
        return x.with_entries(T.symbol**n * x.entries)
    if isinstance(T, WeightedShift):
        y = x
        for _ in range(n):
            y = apply(T, y)
        return y
    if isinstance(T, RankK):
        lam = T.eigen_parameters
        coeffs = rank_k_coefficients(T, x) * lam ** (n - 1)
        nodes = np.asarray(T.space.nodes, dtype=float)
        out = np.zeros(len(nodes), dtype=complex)
        for c, f in zip(coeffs, T.functions):
            out += c * sample_function(f, nodes)
        return x.with_entries(out)
    raise OperatorError(f"unknown operator model {T!r}")


def pairing(
    T: OperatorModel,
    n: int,
    x: LatticeVector,
    xprime: Union[FunctionalRep, LatticeVector],
) -> complex:
    """<x', T^n x>; n = 0 returns the plain pairing <x', x>."""
    if n < 0:
        raise OperatorError("pairing requires n >= 0")
    if isinstance(xprime, LatticeVector):
        if len(xprime) != len(x):
            raise OperatorError("pairing dimension mismatch")
        y = x if n == 0 else power_apply(T, n, x)
        return complex(np.sum(xprime.entries * y.entries))
    if not isinstance(T, RankK):
        raise OperatorError("functional pairings require a rank-k model")
    row = quadrature_row(xprime, T.space)
    if n == 0:
        return complex(row @ x.entries)
    lam = T.eigen_parameters
    coeffs = rank_k_coefficients(T, x) * lam ** (n - 1)
    dual = np.array(
        [apply_functional(xprime, f, T.space) for f in T.functions]
    )
    return complex(np.sum(coeffs * dual))


def adjoint(T: OperatorModel) -> Dense:
    if not isinstance(T, Dense):
        raise OperatorError("adjoint is only available for dense operators")
    return Dense(T.matrix.conj().T, T.norm)


def to_dense(T: OperatorModel, dimension: Optional[int] = None) -> Dense:
    if isinstance(T, Dense):
        if dimension is not None and dimension != T.dim:
            raise OperatorError("dimension mismatch")
        return T
    if isinstance(T, Diagonal):
        return Dense(np.diag(T.symbol), T.norm)
    if isinstance(T, WeightedShift):
        m = np.zeros((T.dim, T.dim), dtype=complex)
        for k, w in enumerate(T.weights):
            m[k + 1, k] = w
        return Dense(m, T.norm)
    if isinstance(T, RankK):
        nodes = np.asarray(T.space.nodes, dtype=float)
        if dimension is not None and dimension != len(nodes):
            raise OperatorError("rank-k grid size is fixed by the space")
        m = np.zeros((len(nodes), len(nodes)), dtype=complex)
        for f, phi in zip(T.functions, T.functionals):
            m += np.outer(sample_function(f, nodes), quadrature_row(phi, T.space))
        return Dense(m, T.space)
    raise OperatorError(f"unknown operator model {T!r}")


# ---------------------------------------------------------------------------
# JSON descriptors


def _c2j(z: complex):
    z = complex(z)
    return [z.real, z.imag]


def _j2c(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def norm_to_json(norm: NormKind) -> dict:
    from .lattice import Ell1, Ell2, EllInf

    if isinstance(norm, Ell1):
        return {"kind": "ell1"}
    if isinstance(norm, Ell2):
        return {"kind": "ell2"}
    if isinstance(norm, EllInf):
        return {"kind": "ellinf"}
    if isinstance(norm, LpQuadrature):
        return {
            "kind": "lp_quadrature",
            "p": norm.p,
            "nodes": list(norm.nodes),
            "weights": list(norm.weights),
        }
    if isinstance(norm, GridSup):
        return {"kind": "grid_sup", "nodes": list(norm.nodes)}
    raise OperatorError(f"unknown norm kind {norm!r}")


def norm_from_json(data: dict) -> NormKind:
    from .lattice import Ell1, Ell2, EllInf

    kind = data.get("kind")
    if kind == "ell1":
        return Ell1()
    if kind == "ell2":
        return Ell2()
    if kind == "ellinf":
        return EllInf()
    if kind == "lp_quadrature":
        return LpQuadrature(data["p"], tuple(data["nodes"]), tuple(data["weights"]))
    if kind == "grid_sup":
        return GridSup(tuple(data["nodes"]))
    raise OperatorError(f"unknown norm kind {kind!r}")


def _function_to_json(f: FunctionRep) -> dict:
    if isinstance(f, Constant):
        return {"kind": "constant", "value": _c2j(f.value)}
    if isinstance(f, Monomial):
        return {"kind": "monomial", "degree": f.degree}
    if isinstance(f, SignedPower):
        return {"kind": "signed_power", "exponent": f.exponent}
    if isinstance(f, Tabulated):
        return {"kind": "tabulated", "values": [_c2j(v) for v in f.values]}
    raise OperatorError(f"unknown function representation {f!r}")


def _function_from_json(data: dict) -> FunctionRep:
    kind = data.get("kind")
    if kind == "constant":
        return Constant(_j2c(data["value"]))
    if kind == "monomial":
        return Monomial(int(data["degree"]))
    if kind == "signed_power":
        return SignedPower(float(data["exponent"]))
    if kind == "tabulated":
        return Tabulated(tuple(_j2c(v) for v in data["values"]))
    raise OperatorError(f"unknown function kind {kind!r}")


def _functional_to_json(phi: FunctionalRep) -> dict:
    if isinstance(phi, WeightedIntegral):
        return {
            "kind": "weighted_integral",
            "weight": _function_to_json(phi.weight),
            "scale": _c2j(phi.scale),
        }
    if isinstance(phi, PointCombination):
        return {
            "kind": "point_combination",
            "points": list(phi.points),
            "coefficients": [_c2j(c) for c in phi.coefficients],
        }
    raise OperatorError(f"unknown functional representation {phi!r}")


def _functional_from_json(data: dict) -> FunctionalRep:
    kind = data.get("kind")
    if kind == "weighted_integral":
        return WeightedIntegral(_function_from_json(data["weight"]), _j2c(data["scale"]))
    if kind == "point_combination":
        return PointCombination(
            tuple(data["points"]), tuple(_j2c(c) for c in data["coefficients"])
        )
    raise OperatorError(f"unknown functional kind {kind!r}")


def model_to_json(T: OperatorModel) -> dict:
    if isinstance(T, Dense):
        return {
            "variant": "dense",
            "n": T.dim,
            "entries": [_c2j(z) for z in T.matrix.ravel()],
            "norm": norm_to_json(T.norm),
        }
    if isinstance(T, Diagonal):
        return {
            "variant": "diagonal",
            "symbol": [_c2j(z) for z in T.symbol],
            "norm": norm_to_json(T.norm),
        }
    if isinstance(T, WeightedShift):
        return {
            "variant": "shift",
            "weights": [_c2j(z) for z in T.weights],
            "norm": norm_to_json(T.norm),
        }
    if isinstance(T, RankK):
        return {
            "variant": "rank_k",
            "functions": [_function_to_json(f) for f in T.functions],
            "functionals": [_functional_to_json(phi) for phi in T.functionals],
            "space": norm_to_json(T.space),
        }
    raise OperatorError(f"unknown operator model {T!r}")


def model_from_json(data: dict) -> OperatorModel:
    variant = data.get("variant")
    if variant == "dense":
        n = int(data["n"])
        entries = np.array([_j2c(v) for v in data["entries"]]).reshape(n, n)
        return Dense(entries, norm_from_json(data["norm"]))
    if variant == "diagonal":
        return Diagonal(
            np.array([_j2c(v) for v in data["symbol"]]), norm_from_json(data["norm"])
        )
    if variant == "shift":
        return WeightedShift(
            np.array([_j2c(v) for v in data["weights"]]), norm_from_json(data["norm"])
        )
    if variant == "rank_k":
        return RankK(
            tuple(_function_from_json(f) for f in data["functions"]),
            tuple(_functional_from_json(phi) for phi in data["functionals"]),
            norm_from_json(data["space"]),
        )
    raise OperatorError(f"unknown model variant {variant!r}")
