"""Command-line front end.

Exit codes: 0 success, 1 a checked identity failed, 2 bad input or flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import jsonschema

from . import correspondence as corr
from . import hypersurface as hyp
from .chowring import (
    ChowClass,
    LineBundle,
    class_to_json,
    format_class,
    format_dimensions,
    involution,
    parse_class,
)
from .verify import MUTANTS, injected_mutant, run_all


class InputError(Exception):
    """Malformed user input; reported on stderr with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    n: int = 0
    twist: int = 0
    seed: Optional[int] = None
    max_dim: Optional[int] = None
    output_format: str = "text"
    sign_convention: str = "derived"

    def __post_init__(self):
        if self.command == "verify" and (self.seed is None or self.max_dim is None):
            raise InputError("verify needs --seed and --max-dim")
        if self.command == "report" and not self.input_path:
            raise InputError("report needs an input file")


def _load_json_file(path: str, schema: dict, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read {what}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    _validate(data, schema, path)
    return data


def _validate(data, schema: dict, source: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        field = ".".join(str(p) for p in err.absolute_path) or "<root>"
        raise InputError(f"{source}: field {field}: {err.message}")


# --- report -------------------------------------------------------------------

CLASS_KEYS = ("segre_singular", "fulton", "csm", "milnor", "le", "mu", "aluffi")


def build_report(X: hyp.HypersurfaceModel, sign_convention: str = "derived") -> dict:
    N, L = X.ambient_dim, X.line_bundle
    classes = {
        "segre_singular": X.segre_singular,
        "fulton": hyp.fulton(X),
        "csm": hyp.csm(X),
        "milnor": hyp.milnor(X),
        "le": hyp.le_class(X),
        "mu": hyp.mu_class(X),
        "aluffi": hyp.aluffi_class(X),
    }
    checks = []
    for n in sorted({0, N - 1, N}):
        a = hyp.alpha_n(X, n)
        checks.append({
            "n": n,
            "alpha_n": format_class(a),
            "milnor_eq_i_alpha": involution(a, n, L) == classes["milnor"],
            "alpha_eq_i_milnor": involution(classes["milnor"], n, L) == a,
        })
    return {
        "ambient": N,
        "degree": X.degree,
        "model": X.model_tag or "explicit",
        "classes": {k: format_class(v) for k, v in classes.items()},
        "dimensions": {k: format_dimensions(v) for k, v in classes.items()},
        "euler_char": hyp.euler_char(X),
        "aluffi_degree": classes["aluffi"].coeffs[-1],
        "sign_convention": sign_convention,
        "milnor_from_le": format_class(hyp.milnor_components_from_le(X, sign_convention)),
        "le_from_milnor": format_class(hyp.le_components_from_milnor(X, sign_convention)),
        "mcs_checks": checks,
    }


def _report_text(rep: dict) -> str:
    lines = [f"hypersurface of degree {rep['degree']} in P^{rep['ambient']} ({rep['model']})"]
    for k in CLASS_KEYS:
        lines.append(f"{k}: {rep['classes'][k]}")
        lines.append(f"  by dimension: {rep['dimensions'][k]}")
    lines.append(f"euler_char: {rep['euler_char']}")
    lines.append(f"aluffi_degree: {rep['aluffi_degree']}")
    conv = rep["sign_convention"]
    lines.append(f"milnor_from_le[{conv}]: {rep['milnor_from_le']}")
    lines.append(f"le_from_milnor[{conv}]: {rep['le_from_milnor']}")
    for c in rep["mcs_checks"]:
        ok = "ok" if c["milnor_eq_i_alpha"] and c["alpha_eq_i_milnor"] else "FAILED"
        lines.append(f"alpha_n[{c['n']}]: {c['alpha_n']}")
        lines.append(f"  milnor <-> alpha_n under i_{{{c['n']},O({rep['degree']})}}: {ok}")
    return "\n".join(lines)


def run_report(config: RunConfig) -> int:
    data = _load_json_file(config.input_path, hyp.HYPERSURFACE_SCHEMA, "hypersurface")
    try:
        X = hyp.from_json(data)
    except ValueError as exc:
        raise InputError(f"{config.input_path}: field {exc}") from None
    rep = build_report(X, config.sign_convention)
    if config.output_format == "json":
        print(json.dumps(rep, indent=2))
    else:
        print(_report_text(rep))
    all_ok = all(c["milnor_eq_i_alpha"] and c["alpha_eq_i_milnor"] for c in rep["mcs_checks"])
    return 0 if all_ok else 1


# --- involve ------------------------------------------------------------------

def _emit_class(a: ChowClass, fmt: str) -> None:
    print(json.dumps(class_to_json(a)) if fmt == "json" else format_class(a))


def run_involve(config: RunConfig, literal: str, ambient: Optional[int]) -> ChowClass:
    try:
        a = parse_class(literal, ambient)
    except ValueError as exc:
        raise InputError(f"class literal: {exc}") from None
    result = involution(a, config.n, LineBundle(config.twist))
    _emit_class(result, config.output_format)
    return result


# --- correspond ---------------------------------------------------------------

def _read_correspondence(arg: str, ambient: Optional[int]) -> corr.Correspondence:
    if os.path.isfile(arg):
        data = _load_json_file(arg, corr.CORRESPONDENCE_SCHEMA, "correspondence")
        source = arg
    elif arg.lstrip().startswith("{"):
        try:
            data = json.loads(arg)
        except json.JSONDecodeError as exc:
            raise InputError(f"correspondence:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
        _validate(data, corr.CORRESPONDENCE_SCHEMA, "correspondence")
        source = "correspondence"
    else:
        try:
            return corr.parse_correspondence(arg, ambient)
        except ValueError as exc:
            raise InputError(f"correspondence literal: {exc}") from None
    try:
        alpha = corr.from_json(data)
    except ValueError as exc:
        raise InputError(f"{source}: field grid: {exc}") from None
    if ambient is not None and alpha.ambient_dim != ambient:
        raise InputError(f"{source}: ambient {alpha.ambient_dim} does not match --ambient {ambient}")
    return alpha


def _emit_correspondence(alpha: corr.Correspondence, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(corr.to_json(alpha)))
    else:
        print(corr.format_correspondence(alpha))


def run_correspond(args, config: RunConfig) -> int:
    fmt = config.output_format
    if args.action == "emit":
        if args.ambient < 1:
            raise InputError("--ambient must be >= 1")
        _emit_correspondence(corr.involutive_correspondence(args.ambient, config.n, config.twist), fmt)
    elif args.action == "apply":
        alpha = _read_correspondence(args.correspondence, args.ambient)
        try:
            beta = parse_class(args.klass, alpha.ambient_dim)
        except ValueError as exc:
            raise InputError(f"class literal: {exc}") from None
        op = corr.pullback if args.pullback else corr.pushforward
        _emit_class(op(alpha, beta), fmt)
    elif args.action == "compose":
        outer = _read_correspondence(args.outer, args.ambient)
        inner = _read_correspondence(args.inner, args.ambient if args.ambient is not None
                                     else outer.ambient_dim)
        if outer.ambient_dim != inner.ambient_dim:
            raise InputError(f"cannot compose P^{outer.ambient_dim} and P^{inner.ambient_dim} correspondences")
        _emit_correspondence(corr.compose(outer, inner), fmt)
    elif args.action == "matrix":
        alpha = _read_correspondence(args.correspondence, args.ambient)
        M = corr.to_matrix(alpha)
        if fmt == "json":
            print(json.dumps([list(r) for r in M]))
        else:
            print("\n".join(" ".join(f"{v:>4}" for v in row) for row in M))
    return 0


# --- verify -------------------------------------------------------------------

def run_verify(config: RunConfig, cases: int, mutant: Optional[str] = None) -> int:
    if config.max_dim < 0:
        raise InputError("--max-dim must be >= 0")
    if cases < 1:
        raise InputError("--cases must be >= 1")
    with injected_mutant(mutant):
        outcomes = run_all(config.seed, config.max_dim, cases)
    failures = [o for o in outcomes if not o.passed]
    if config.output_format == "json":
        doc = {
            "seed": config.seed,
            "max_dim": config.max_dim,
            "cases_per_dim": cases,
            "identities": [
                {
                    "name": o.name,
                    "status": "fail" if not o.passed else ("vacuous" if o.cases == 0 else "pass"),
                    "cases": o.cases,
                    "skipped_dims": o.skipped_dims,
                    "counterexample": o.counterexample,
                    "error": o.error,
                }
                for o in outcomes
            ],
            "failures": len(failures),
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"verify seed={config.seed} max_dim={config.max_dim} cases_per_dim={cases}")
        for o in outcomes:
            if not o.passed:
                print(f"FAIL {o.name}: counterexample after {o.cases} cases")
                print(f"  minimized: {json.dumps(o.counterexample, sort_keys=True)}")
                if o.error:
                    print(f"  raised: {o.error}")
            elif o.cases == 0:
                print(f"PASS {o.name}: vacuous, requires N >= {o.skipped_dims[-1] + 1}")
            else:
                note = f" (N={','.join(map(str, o.skipped_dims))} skipped)" if o.skipped_dims else ""
                print(f"PASS {o.name}: {o.cases} cases{note}")
        print(f"{len(outcomes) - len(failures)}/{len(outcomes)} identities hold")
    return 1 if failures else 0


# --- entry point ----------------------------------------------------------------

def _format_opt(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chowsym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("report", help="characteristic classes of a hypersurface file")
    p.add_argument("input_path", metavar="FILE")
    p.add_argument("--sign-convention", choices=hyp.SIGN_CONVENTIONS, default="derived")
    _format_opt(p)

    p = sub.add_parser("involve", help="apply i_{n,O(twist)} to a class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--twist", type=int, required=True)
    p.add_argument("--ambient", type=int)
    p.add_argument("klass", metavar="CLASS")
    _format_opt(p)

    p = sub.add_parser("correspond", help="involutive correspondences on P^N x P^N")
    acts = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = acts.add_parser("emit", help="print the correspondence inducing i_{n,O(twist)}")
    q.add_argument("--ambient", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--twist", type=int, required=True)
    _format_opt(q)
    q = acts.add_parser("apply", help="push a class forward (or pull it back)")
    q.add_argument("--ambient", type=int)
    q.add_argument("--pullback", action="store_true")
    q.add_argument("correspondence")
    q.add_argument("klass", metavar="CLASS")
    _format_opt(q)
    q = acts.add_parser("compose", help="OUTER o INNER")
    q.add_argument("--ambient", type=int)
    q.add_argument("outer")
    q.add_argument("inner")
    _format_opt(q)
    q = acts.add_parser("matrix", help="matrix of the pushforward on 1, H, ..., H^N")
    q.add_argument("--ambient", type=int)
    q.add_argument("correspondence")
    _format_opt(q)

    p = sub.add_parser("verify", help="run every identity check")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--cases", type=int, default=50, help="random cases per identity and dimension")
    p.add_argument("--inject-mutant", choices=sorted(MUTANTS), help=argparse.SUPPRESS)
    _format_opt(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "verify" and args.seed < 0:
            raise InputError("--seed must be non-negative")
        config = RunConfig(
            command=args.command,
            input_path=getattr(args, "input_path", None),
            n=getattr(args, "n", 0),
            twist=getattr(args, "twist", 0),
            seed=getattr(args, "seed", None),
            max_dim=getattr(args, "max_dim", None),
            output_format=args.output_format,
            sign_convention=getattr(args, "sign_convention", "derived"),
        )
        if args.command == "report":
            return run_report(config)
        if args.command == "involve":
            run_involve(config, args.klass, args.ambient)
            return 0
        if args.command == "correspond":
            return run_correspond(args, config)
        return run_verify(config, args.cases, args.inject_mutant)
    except InputError as exc:
        print(f"chowsym: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
