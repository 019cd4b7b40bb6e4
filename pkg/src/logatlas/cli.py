"""Command-line front end.

Subcommands: ``classify`` (spectral data, cardinality class and one report
per branch), ``jordan`` (canonical form and transition matrix), ``sample``
(random logarithms on a branch), ``verify`` (residual report for a claimed
logarithm) and ``tables`` (dimension / homotopy tables for the
homogeneous-space families).

Output is JSON on stdout and is byte-identical for identical inputs and
seeds. Exit codes: 0 success, 1 failed verification, 2 usage or parse
error, 3 mathematical domain error (named on stderr), 4 ill-conditioned
input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .branches import (
    MultiIndexSet,
    SkewMultiIndexSet,
    branch_from_json,
    branch_to_json,
    canonical_log,
    canonical_skew_log,
    enumerate_branches,
    enumerate_skew_branches,
    principal_branch,
    principal_skew_branch,
    skew_branch_to_json,
)
from .errors import IllConditionedError, InvalidInputError, LogAtlasError, MathDomainError
from .numkernel import mat_exp, matrix_from_json, matrix_to_json
from .sampler import (
    component_signature,
    sample_log_with_element,
    sample_skew_log_with_element,
    skew_component_signature,
    verify_log,
)
from .spectra import (
    classify_orthogonal_spectrum,
    classify_spectrum,
    jordan_matrix,
    ortho_canonical,
    ortho_jordan_matrix,
    ortho_spectral_to_json,
    real_jordan,
    spectral_to_json,
)
from .topology import (
    HomSpace,
    ambient_quotient_components,
    branch_topology,
    homspace_dim,
    homspace_pi2_rank,
    principal_skew_topology,
    principal_topology,
    report_to_json,
    skew_branch_topology,
)

DEFAULT_MAX_INDEX = 3
DEFAULT_MAX_BRANCHES = 200
DEFAULT_EPS = 1e-8
DEFAULT_TOL = 1e-8
SEED_ENV = "LOGATLAS_SEED"


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _load_matrix(path: str) -> np.ndarray:
    return matrix_from_json(_load_json(path))


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _resolve_seed(explicit) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidInputError(f"{SEED_ENV} must be an integer, got {env!r}") from exc
    return 0


def _check_request(args) -> None:
    if args.max_index < 0:
        raise InvalidInputError("--max-index must be >= 0")
    if args.max_branches < 1:
        raise InvalidInputError("--max-branches must be >= 1")
    if not (0.0 < args.eps <= 1e-3):
        raise InvalidInputError("--eps must be in (0, 1e-3]")
    if not (0.0 < args.tol <= 1e-3):
        raise InvalidInputError("--tol must be in (0, 1e-3]")


def _branch_entry_general(spec, jmat, tol):
    jnorm = np.linalg.norm(jmat)

    def build(branch: MultiIndexSet) -> dict:
        clog = canonical_log(spec, branch)
        residual = float(np.linalg.norm(mat_exp(clog) - jmat) / jnorm)
        if residual > tol:
            raise IllConditionedError(
                f"canonical log residual {residual:.3e} exceeds tolerance {tol:g}"
            )
        return {
            "branch": branch_to_json(branch),
            "canonical_log": matrix_to_json(clog),
            "exp_residual": residual,
            "topology": report_to_json(branch_topology(spec, branch)),
        }

    return build


def _branch_entry_skew(spec, jmat, tol):
    jnorm = np.linalg.norm(jmat)

    def build(branch: SkewMultiIndexSet) -> dict:
        clog = canonical_skew_log(spec, branch)
        residual = float(np.linalg.norm(mat_exp(clog) - jmat) / jnorm)
        if residual > tol:
            raise IllConditionedError(
                f"canonical log residual {residual:.3e} exceeds tolerance {tol:g}"
            )
        return {
            "branch": skew_branch_to_json(branch),
            "canonical_log": matrix_to_json(clog),
            "exp_residual": residual,
            "topology": report_to_json(skew_branch_topology(spec, branch)),
        }

    return build


def _map_entries(build, branches, parallel: bool) -> list:
    if parallel and len(branches) > 1:
        with ThreadPoolExecutor() as pool:  # map preserves branch order
            return list(pool.map(build, branches))
    return [build(b) for b in branches]


def cmd_classify(args) -> int:
    _check_request(args)
    m = _load_matrix(args.matrix)
    from .topology import log_set_cardinality_class, skew_log_set_cardinality_class

    if args.mode in ("general", "principal"):
        spec = classify_spectrum(m, args.eps)
        jmat, c = real_jordan(m, args.eps)
        doc = {
            "mode": args.mode,
            "n": spec.n,
            "spectral": spectral_to_json(spec),
            "cardinality_class": log_set_cardinality_class(spec),
            "jordan": {"J": matrix_to_json(jmat), "C": matrix_to_json(c)},
            "max_index": args.max_index,
            "truncated": False,
        }
        build = _branch_entry_general(spec, jmat, args.tol)
        if args.mode == "general":
            branches, truncated = enumerate_branches(spec, args.max_index, args.max_branches)
            doc["truncated"] = truncated
            doc["branches"] = _map_entries(build, branches, args.parallel)
        else:
            entry = build(principal_branch(spec))
            entry["topology"] = report_to_json(principal_topology(spec))
            doc["branches"] = [entry]
    else:
        spec = classify_orthogonal_spectrum(m, args.eps)
        jmat, q = ortho_canonical(m, args.eps)
        doc = {
            "mode": args.mode,
            "n": spec.n,
            "spectral": ortho_spectral_to_json(spec),
            "cardinality_class": skew_log_set_cardinality_class(spec),
            "jordan": {"J": matrix_to_json(jmat), "Q": matrix_to_json(q)},
            "max_index": args.max_index,
            "truncated": False,
        }
        build = _branch_entry_skew(spec, jmat, args.tol)
        if args.mode == "skew":
            branches, truncated = enumerate_skew_branches(
                spec, args.max_index, args.max_branches
            )
            doc["truncated"] = truncated
            doc["branches"] = _map_entries(build, branches, args.parallel)
        else:
            entry = build(principal_skew_branch(spec))
            entry["topology"] = report_to_json(principal_skew_topology(spec))
            doc["branches"] = [entry]
    _emit(doc)
    return 0


def cmd_jordan(args) -> int:
    m = _load_matrix(args.matrix)
    spec = classify_spectrum(m, args.eps)
    jmat, c = real_jordan(m, args.eps)
    _emit(
        {
            "J": matrix_to_json(jmat),
            "C": matrix_to_json(c),
            "spectral": spectral_to_json(spec),
        }
    )
    return 0


def cmd_sample(args) -> int:
    if args.count < 1:
        raise InvalidInputError("--count must be >= 1")
    m = _load_matrix(args.matrix)
    branch = branch_from_json(_load_json(args.branch))
    seed = _resolve_seed(args.seed)
    rng = np.random.default_rng(seed)
    samples = []
    if isinstance(branch, SkewMultiIndexSet):
        spec = classify_orthogonal_spectrum(m, args.eps)
        _, q = ortho_canonical(m, args.eps)
        for _ in range(args.count):
            w, x = sample_skew_log_with_element(m, spec, q, branch, rng)
            report = verify_log(m, w, args.tol)
            samples.append(
                {
                    "log": matrix_to_json(w),
                    "signature": list(skew_component_signature(x, branch)),
                    "exp_residual": report.exp_residual,
                    "skew_residual": report.skew_residual,
                }
            )
        mode = "skew"
    else:
        spec = classify_spectrum(m, args.eps)
        _, c = real_jordan(m, args.eps)
        for _ in range(args.count):
            y, x = sample_log_with_element(m, spec, c, branch, rng)
            report = verify_log(m, y, args.tol)
            samples.append(
                {
                    "log": matrix_to_json(y),
                    "signature": list(component_signature(x, branch)),
                    "exp_residual": report.exp_residual,
                    "skew_residual": report.skew_residual,
                }
            )
        mode = "general"
    _emit({"mode": mode, "count": args.count, "seed": seed, "samples": samples})
    return 0


def cmd_verify(args) -> int:
    m = _load_matrix(args.matrix)
    y = _load_matrix(args.log)
    report = verify_log(m, y, args.tol)
    _emit(
        {
            "exp_residual": report.exp_residual,
            "skew_residual": report.skew_residual,
            "tol": report.tol,
            "pass": report.passed,
        }
    )
    return 0 if report.passed else 1


def _parse_span(text: str) -> list[int]:
    """'2' -> [2]; '0:3' -> [0, 1, 2, 3]."""
    if ":" in text:
        lo_text, hi_text = text.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError
        return list(range(lo, hi + 1))
    return [int(text)]


def cmd_tables(args) -> int:
    kind_map = {
        "gamma": "Gamma",
        "gammahat": "GammaHat",
        "theta": "Theta",
        "thetahat": "ThetaHat",
    }
    kind = kind_map[args.kind]
    try:
        zetas = _parse_span(args.zeta) if args.zeta is not None else [0]
        nu_tuples = [tuple(int(x) for x in spec.split(",")) for spec in args.nu]
    except ValueError:
        raise InvalidInputError("bad --zeta or --nu range") from None
    if kind in ("Theta", "ThetaHat") and args.zeta is not None:
        raise InvalidInputError(f"--zeta does not apply to {args.kind}")
    rows = []
    for zeta in zetas:
        for nu in nu_tuples:
            hs = HomSpace(kind, zeta=zeta if kind in ("Gamma", "GammaHat") else 0, nu=nu)
            row = {"nu": list(nu)}
            if kind in ("Gamma", "GammaHat"):
                row["zeta"] = zeta
            row["dimension"] = homspace_dim(hs)
            row["components"] = ambient_quotient_components(hs)
            row["pi2_rank"] = homspace_pi2_rank(hs)
            rows.append(row)
    _emit({"kind": args.kind, "rows": rows})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logatlas",
        description="Classify, enumerate and sample real matrix logarithms.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="classify all logarithm branches")
    classify.add_argument("matrix", help="matrix JSON file")
    classify.add_argument(
        "--mode",
        choices=("general", "skew", "principal", "principal_skew"),
        default="general",
    )
    classify.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX)
    classify.add_argument("--max-branches", type=int, default=DEFAULT_MAX_BRANCHES)
    classify.add_argument("--eps", type=float, default=DEFAULT_EPS)
    classify.add_argument("--tol", type=float, default=DEFAULT_TOL)
    classify.add_argument("--parallel", action="store_true")
    classify.set_defaults(func=cmd_classify)

    jordan = sub.add_parser("jordan", help="real canonical form and transition matrix")
    jordan.add_argument("matrix")
    jordan.add_argument("--eps", type=float, default=DEFAULT_EPS)
    jordan.set_defaults(func=cmd_jordan)

    sample = sub.add_parser("sample", help="random logarithms on one branch")
    sample.add_argument("matrix")
    sample.add_argument("--branch", required=True, help="branch JSON file")
    sample.add_argument("--count", type=int, default=1)
    sample.add_argument("--seed", type=int, default=None)
    sample.add_argument("--eps", type=float, default=DEFAULT_EPS)
    sample.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sample.set_defaults(func=cmd_sample)

    verify = sub.add_parser("verify", help="residual report for a claimed logarithm")
    verify.add_argument("matrix")
    verify.add_argument("log")
    verify.add_argument("--tol", type=float, default=DEFAULT_TOL)
    verify.set_defaults(func=cmd_verify)

    tables = sub.add_parser("tables", help="homogeneous-space dimension tables")
    tables.add_argument("kind", choices=("gamma", "gammahat", "theta", "thetahat"))
    tables.add_argument("--zeta", default=None, help="integer or lo:hi range")
    tables.add_argument(
        "--nu",
        action="append",
        required=True,
        help="comma-separated block orders; repeat for more rows",
    )
    tables.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"logatlas: error: {exc}", file=sys.stderr)
        return 2
    except InvalidInputError as exc:
        print(f"logatlas: error: {exc.slug}: {exc}", file=sys.stderr)
        return 2
    except MathDomainError as exc:
        print(f"logatlas: error: {exc.slug}: {exc}", file=sys.stderr)
        return 3
    except IllConditionedError as exc:
        print(f"logatlas: error: {exc.slug}: {exc}", file=sys.stderr)
        return 4
    except LogAtlasError as exc:  # safety net; should not happen
        print(f"logatlas: error: {exc.slug}: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
