"""Command-line harness: classify a model, run a suite, or dump the cone
decay of an orbit as CSV.

Exit codes: 0 ok, 1 check contradiction (or suite failure), 2 input error,
3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import __version__
from .catalog import build_catalog, get_example
from .classify import (
    Confirmed,
    NotClassifiableError,
    PositivityVerdict,
    RefutedWithWitness,
    classify_asymptotic,
    individual_eventual,
    uniform_eventual,
    weak_eventual,
)
from .generators import (
    GeneratorError,
    cyclic_block,
    make_eventually_positive,
    positive_random,
)
from .lattice import LatticeVector, cone_distance, norm_value
from .operators import (
    Dense,
    Diagonal,
    OperatorError,
    OperatorModel,
    RankK,
    model_from_json,
    model_to_json,
    power_apply,
    to_dense,
)
from .rates import DecaySequence, MajorantSequence, Power, alpha, governs, summability_report
from .report import (
    AnalysisReport,
    check_record,
    report_to_json,
    spectrum_record,
    verdict_record,
)
from .rng import rng_for
from .spectral import DIM_CAP, SpectralError, Spectrum, eigenvalues
from .verify import (
    CheckResult,
    VerificationError,
    multiplicity_monotonicity_check,
    peripheral_cyclicity_check,
    positive_eigenvector,
    real_modulus_bound_check,
    verify_spr_in_spectrum,
)

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3


class InputError(ValueError):
    pass


def _parse_generator_spec(spec: str):
    """kind:key=value,... e.g. eventually_positive:dim=4,gap=0.5,seed=3"""
    kind, _, rest = spec.partition(":")
    params = {}
    if rest:
        for part in rest.split(","):
            key, _, value = part.partition("=")
            if not _:
                raise InputError(f"malformed generator parameter {part!r}")
            params[key.strip()] = value.strip()
    try:
        if kind == "eventually_positive":
            return make_eventually_positive(
                int(params.get("dim", 4)),
                float(params.get("gap", 0.5)),
                int(params.get("seed", 0)),
            ).model
        if kind == "positive_random":
            return positive_random(
                int(params.get("dim", 4)), int(params.get("seed", 0))
            )
        if kind == "cyclic_block":
            return cyclic_block(
                int(params.get("k", 3)),
                int(params.get("inner_dim", 2)),
                int(params.get("seed", 0)),
            )
    except (GeneratorError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"unknown generator kind {kind!r}")


def _load_model(path: str) -> OperatorModel:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    try:
        return model_from_json(data)
    except (OperatorError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad model descriptor: {exc}") from exc


def _classification(model: OperatorModel, horizon: Optional[int], tol: Optional[float]):
    """Eventual trio always; asymptotic trio when the rescaling is defined."""
    kwargs = {}
    if tol is not None:
        kwargs["tol"] = tol
    ev_kwargs = dict(kwargs)
    if horizon is not None:
        ev_kwargs["horizon"] = horizon
    verdicts = [
        uniform_eventual(model, **ev_kwargs),
        individual_eventual(model, **ev_kwargs),
        weak_eventual(model, **ev_kwargs),
    ]
    try:
        verdicts.extend(classify_asymptotic(model, **kwargs))
    except NotClassifiableError:
        pass
    return verdicts


def run_classify(
    model: OperatorModel,
    operator_id: str,
    seed: int = 0,
    horizon: Optional[int] = None,
    tol: Optional[float] = None,
) -> tuple:
    """(AnalysisReport, solver_failure_flag)."""
    solver_failure = False
    verdicts = _classification(model, horizon, tol)
    by_notion = {v.notion.value: v for v in verdicts}
    decay = {
        v.notion.value: [float(d) for d in v.decay] for v in verdicts if v.decay
    }

    checks = []
    spectrum = None
    dense_ok = not isinstance(model, RankK) or model.dim <= DIM_CAP
    if dense_ok:
        A = to_dense(model).matrix
        try:
            spectrum = spectrum_record(eigenvalues(A))
        except SpectralError:
            solver_failure = True
        uasy = by_notion.get("uniform-asymptotic")
        wasy = by_notion.get("weak-asymptotic")
        spr_check = None
        try:
            spr_check = verify_spr_in_spectrum(A)
            if uasy is not None:
                spr_check = CheckResult(
                    spr_check.name,
                    spr_check.pass_,
                    spr_check.margin,
                    spr_check.tolerance,
                    spr_check.payload,
                    {"uniform-asymptotic-positive": isinstance(uasy.status, Confirmed)},
                )
            checks.append(spr_check)
        except (SpectralError, VerificationError):
            solver_failure = True
        if spectrum is not None and spectrum["spectral_radius"] > 0:
            try:
                checks.append(
                    peripheral_cyclicity_check(A, asymptotic_verdict=uasy)
                )
            except (SpectralError, VerificationError):
                solver_failure = True
            try:
                checks.append(
                    multiplicity_monotonicity_check(A, asymptotic_verdict=wasy)
                )
            except (SpectralError, VerificationError):
                solver_failure = True
            weak_ok = wasy is not None and isinstance(wasy.status, Confirmed)
            if spr_check is not None and spr_check.pass_ and weak_ok:
                try:
                    ev = positive_eigenvector(A, norm=getattr(model, "norm", None))
                    ok = (
                        ev.primal_cone_distance <= 1e-6
                        and ev.adjoint_cone_distance <= 1e-6
                        and ev.primal_residual <= 1e-6
                    )
                    checks.append(
                        CheckResult(
                            "positive-eigenvector",
                            ok,
                            1e-6 - max(ev.primal_cone_distance, ev.adjoint_cone_distance),
                            1e-6,
                            payload={"pole_order": ev.pole_order, "value": ev.value},
                            hypotheses={
                                "weak-asymptotic-positive": True,
                                "spr-in-spectrum": True,
                            },
                        )
                    )
                except (SpectralError, VerificationError):
                    solver_failure = True

    report = AnalysisReport(
        operator_id=operator_id,
        model_descriptor=model_to_json(model),
        classification=tuple(verdict_record(v) for v in verdicts),
        spectrum=spectrum,
        checks=tuple(check_record(c) for c in checks),
        decay_sequences=decay,
        seed=seed,
    )
    return report, solver_failure


# ---------------------------------------------------------------------------
# suites


def _suite_paper(seed: int):
    reports = []
    mismatches = []
    contradictions = 0
    failures = 0
    for entry in build_catalog(seed):
        if entry.name == "ex5.1":
            continue  # alias of ex3.5a; keep the catalog list but run once
        report, failed = run_classify(entry.model, entry.name, seed)
        failures += int(failed)
        contradictions += report.contradiction_count
        verdicts = {r["notion"]: r["status"]["kind"] for r in report.classification}
        for notion, expected in entry.expected.items():
            got = verdicts.get(notion)
            if got != expected:
                mismatches.append((entry.name, notion, expected, got))
        if entry.spr_in_spectrum is not None:
            got_spr = next(
                (c["pass"] for c in report.checks if c["name"] == "spr-in-spectrum"),
                None,
            )
            if got_spr != entry.spr_in_spectrum:
                mismatches.append(
                    (entry.name, "spr-in-spectrum", entry.spr_in_spectrum, got_spr)
                )
        reports.append(report)
    return reports, {
        "mismatches": mismatches,
        "contradictions": contradictions,
        "solver_failures": failures,
    }


def _suite_random(seed: int, trials: int):
    reports = []
    contradictions = 0
    failures = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        dim = int(rng.integers(2, 13))
        inst = make_eventually_positive(dim, 0.5, seed=int(seed + 1000 + t))
        report, failed = run_classify(inst.model, f"random-{t}", seed)
        failures += int(failed)
        contradictions += report.contradiction_count
        reports.append(report)
    return reports, {
        "mismatches": [],
        "contradictions": contradictions,
        "solver_failures": failures,
    }


def _suite_properties(seed: int, trials: int):
    """Cross-module invariant sweeps at CLI scale (the exhaustive versions
    live in the test suite)."""
    from .lattice import Ell1, Ell2, EllInf

    bad = 0
    rng = rng_for(seed, 1)
    norms = (Ell1(), Ell2(), EllInf())
    for _ in range(trials):
        dim = int(rng.integers(1, 9))
        z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        x = LatticeVector(z, norms[int(rng.integers(0, 3))])
        if not real_modulus_bound_check(x).pass_:
            bad += 1
        if cone_distance(x) < -1e-15:
            bad += 1
    # rearrangement domination: sum a_n / r^{n+1} <= sum a*_n / r^{n+1}
    from .rates import decreasing_rearrangement

    for _ in range(trials):
        a = rng.uniform(0.0, 1.0, size=24)
        r = 1.0 + float(rng.uniform(0.1, 2.0))
        w = r ** -(np.arange(24) + 1.0)
        if np.sum(a * w) > np.sum(decreasing_rearrangement(a) * w) + 1e-12:
            bad += 1
    return [], {"mismatches": [], "contradictions": 0, "solver_failures": 0, "property_failures": bad}


def run_suite(suite_name: str, seed: int = 0, trials: int = 100):
    if suite_name == "paper":
        return _suite_paper(seed)
    if suite_name == "random":
        return _suite_random(seed, trials)
    if suite_name == "properties":
        return _suite_properties(seed, trials)
    raise InputError(f"unknown suite {suite_name!r}")


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evpos",
        description="eventual/asymptotic positivity classification and "
        "Perron-Frobenius verification for complex linear operators",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify one operator model")
    src = p_classify.add_mutually_exclusive_group(required=True)
    src.add_argument("model", nargs="?", help="path to a model JSON file")
    src.add_argument("--example", help="built-in example name")
    src.add_argument("--generate", help="generator spec kind:key=value,...")
    p_classify.add_argument("--horizon", type=int, default=None)
    p_classify.add_argument("--tol", type=float, default=None)
    p_classify.add_argument("--seed", type=int, default=0)
    p_classify.add_argument("--out", default=None, help="write the report JSON here")

    p_suite = sub.add_parser("suite", help="run a verification suite")
    p_suite.add_argument("name", choices=["properties", "paper", "random"])
    p_suite.add_argument("--trials", type=int, default=100)
    p_suite.add_argument("--seed", type=int, default=0)

    p_orbit = sub.add_parser("orbit", help="cone-distance decay of one orbit as CSV")
    src2 = p_orbit.add_mutually_exclusive_group(required=True)
    src2.add_argument("model", nargs="?", help="path to a model JSON file")
    src2.add_argument("--example", help="built-in example name")
    p_orbit.add_argument("--vector", help="path to a JSON list of [re, im] entries")
    p_orbit.add_argument("--n", type=int, default=30)
    return parser


def _resolve_model(args) -> tuple:
    if getattr(args, "example", None):
        try:
            entry = get_example(args.example, getattr(args, "seed", 0))
        except KeyError as exc:
            raise InputError(str(exc)) from exc
        return entry.model, entry.name
    if getattr(args, "generate", None):
        return _parse_generator_spec(args.generate), args.generate
    return _load_model(args.model), args.model


def _cmd_classify(args) -> int:
    model, operator_id = _resolve_model(args)
    report, solver_failure = run_classify(
        model, operator_id, args.seed, args.horizon, args.tol
    )
    text = report_to_json(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if solver_failure:
        return EXIT_SOLVER
    if report.contradiction_count > 0:
        return EXIT_CONTRADICTION
    return EXIT_OK


def _cmd_suite(args) -> int:
    reports, summary = run_suite(args.name, args.seed, args.trials)
    out = {
        "suite": args.name,
        "reports": len(reports),
        "contradictions": summary["contradictions"],
        "solver_failures": summary["solver_failures"],
        "mismatches": [list(m) for m in summary["mismatches"]],
    }
    if "property_failures" in summary:
        out["property_failures"] = summary["property_failures"]
    sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    if summary["solver_failures"]:
        return EXIT_SOLVER
    if (
        summary["contradictions"]
        or summary["mismatches"]
        or summary.get("property_failures", 0)
    ):
        return EXIT_CONTRADICTION
    return EXIT_OK


def _cmd_orbit(args) -> int:
    model, _ = _resolve_model(args)
    norm = model.norm if not isinstance(model, RankK) else model.space
    if args.vector:
        try:
            with open(args.vector) as fh:
                entries = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read vector: {exc}") from exc
        vec = np.array([complex(re, im) for re, im in entries])
    else:
        vec = np.ones(model.dim, dtype=complex)
    if len(vec) != model.dim:
        raise InputError(f"vector length {len(vec)} does not match dim {model.dim}")
    x = LatticeVector(vec, norm)
    sys.stdout.write("n,d_plus,norm\n")
    sys.stdout.write(f"0,{cone_distance(x):.17g},{norm_value(x):.17g}\n")
    for n in range(1, args.n + 1):
        y = power_apply(model, n, x)
        sys.stdout.write(f"{n},{cone_distance(y):.17g},{norm_value(y):.17g}\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "suite":
            return _cmd_suite(args)
        if args.command == "orbit":
            return _cmd_orbit(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpectralError, VerificationError, OperatorError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    parser.error("no command")


if __name__ == "__main__":
    sys.exit(main())
