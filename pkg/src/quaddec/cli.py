"""Command line front end.

    quaddec decompose hermite --p 0 --q 0 --a 0 --nmax 4
    quaddec study gegenbauer --alpha 1/2 --cases p=0
    quaddec verify all --samples 5
    quaddec moments constant --beta 1 --gamma 1 --p -2 --q 1/3
    quaddec families

Reports are JSON on stdout; ``--pretty`` renders the same data as text.
Errors are JSON objects on stderr with a nonzero exit status.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .algebra import to_rational
from .families import (
    REGISTRY,
    SEED_ENV,
    CaseNotTabulated,
    Sampler,
    UnknownFamily,
    build,
    default_seed,
    family,
    tabulated_cases,
)
from .gqd import ExtendedCoeffs, PreconditionError, QuadMap, classify, gqd_orthogonal, gqd_structured, secondary_pattern
from .mps import CoefficientUnavailable, RecurrenceCoeffs, RegularityError, StructureCoeffs
from .study import DEFAULT_NMAX, moment_report, resolve_cases, study_case, verify

EXIT_MISMATCH = 1
EXIT_ERROR = 2

# Flags whose value may be a negative rational such as -1/2, which argparse
# would otherwise take for an option.
_VALUE_FLAGS = {"--p", "--q", "--a", "--alpha", "--beta", "--gamma", "--mu"}
_NEGATIVE = re.compile(r"^[-−]\d")


class CliError(Exception):
    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.kind = kind
        self.extra = extra


def _rational(text: str):
    try:
        return to_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("family parameters")
    g.add_argument("--alpha", type=_rational)
    g.add_argument("--beta", type=_rational)
    g.add_argument("--gamma", type=_rational)
    g.add_argument("--mu", type=_rational)
    g.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                   help="any family parameter, repeatable")


def _add_map(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=_rational, default=0)
    p.add_argument("--q", type=_rational, default=0)
    p.add_argument("--a", type=_rational, default=0)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nmax", type=int, default=DEFAULT_NMAX, help="component depth (default %(default)s)")
    p.add_argument("--pretty", action="store_true", help="text rendering of the JSON report")


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help=f"sampling seed (default: ${SEED_ENV} or built-in)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quaddec", description="General quadratic decomposition of MOPS.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="components, extended coefficients and verdicts")
    p.add_argument("family", nargs="?", help="catalog family (omit with --coeff-file)")
    p.add_argument("--coeff-file", type=Path, help='JSON {"beta": [...], "gamma": [...]} or {"beta": [...], "chi": [[...], ...]}')
    _add_params(p)
    _add_map(p)
    _add_common(p)

    p = sub.add_parser("study", help="run the tabulated (p, q, a) cases of a family")
    p.add_argument("family")
    p.add_argument("--cases", nargs="+", default=["all"], help='"all", "special", or case labels such as p=0 a=q=0')
    _add_params(p)
    _add_seed(p)
    _add_common(p)

    p = sub.add_parser("verify", help="compare engine output with the catalog")
    p.add_argument("family", help='family name or "all"')
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--allow-errata", action="store_true",
                   help="exit 0 when every mismatch is a documented erratum")
    _add_seed(p)
    _add_common(p)

    p = sub.add_parser("moments", help="canonical moments of W, P and R")
    p.add_argument("family")
    _add_params(p)
    _add_map(p)
    _add_common(p)

    p = sub.add_parser("families", help="list the catalog")
    p.add_argument("--pretty", action="store_true")
    return parser


def _params(args: argparse.Namespace) -> dict:
    out = {}
    for key in ("alpha", "beta", "gamma", "mu"):
        value = getattr(args, key, None)
        if value is not None:
            out[key] = value
    for item in args.param:
        if "=" not in item:
            raise CliError("parse", f"--param expects NAME=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        try:
            out[key.strip()] = to_rational(value.strip())
        except ValueError as exc:
            raise CliError("parse", str(exc)) from exc
    return out


def _spec(args: argparse.Namespace, depth: int):
    try:
        return build(args.family, _params(args), depth=depth)
    except UnknownFamily as exc:
        raise CliError("unknown_family", exc.args[0]) from exc
    except ValueError as exc:
        if isinstance(exc, RegularityError):
            raise
        raise CliError("parameters", str(exc)) from exc


def _qmap(args: argparse.Namespace) -> QuadMap:
    return QuadMap(args.p, args.q, args.a)


def _load_coeff_file(path: Path):
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError("parse", f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict) or "beta" not in data or ("gamma" in data) == ("chi" in data):
        raise CliError("parse", 'coefficient file needs "beta" and exactly one of "gamma", "chi"')
    try:
        if "gamma" in data:
            return RecurrenceCoeffs.from_lists(data["beta"], data["gamma"], name=path.stem)
        return StructureCoeffs.from_tables(data["beta"], data["chi"], name=path.stem)
    except (ValueError, TypeError) as exc:
        raise CliError("parse", f"bad coefficient entry in {path}: {exc}") from exc


def cmd_decompose(args: argparse.Namespace) -> tuple[dict, int]:
    qmap = _qmap(args)
    if args.coeff_file is not None:
        if args.family:
            raise CliError("parse", "give a family or --coeff-file, not both")
        source, label = _load_coeff_file(args.coeff_file), {"coeff_file": str(args.coeff_file)}
    elif args.family:
        spec = _spec(args, 2 * args.nmax + 3)
        source, label = spec.rc, {"family": spec.name, "params": spec.params_json()}
    else:
        raise CliError("parse", "decompose needs a family or --coeff-file")
    if isinstance(source, StructureCoeffs):
        res = gqd_structured(source, qmap, args.nmax)
        extended = None
    else:
        res = gqd_orthogonal(source, qmap, args.nmax)
        extended = ExtendedCoeffs(source, qmap).to_json(args.nmax)
    out = {**label, **res.to_json()}
    out["extended"] = extended
    out["flags"] = secondary_pattern(res).to_json()
    out["verdicts"] = classify(res).to_json()
    return out, 0


def cmd_study(args: argparse.Namespace) -> tuple[list, int]:
    fd = _family(args.family)
    spec = _spec(args, 2 * args.nmax + 3)
    try:
        cases = resolve_cases(fd.name, args.cases)
    except CaseNotTabulated as exc:
        raise CliError("case", exc.args[0]) from exc
    sampler = Sampler(args.seed)
    reports = [study_case(spec, sampler.qmap(case, spec.rc.beta(0)), args.nmax, case).to_json() for case in cases]
    return reports, 0


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    names = list(REGISTRY) if args.family == "all" else [_family(args.family).name]
    report = verify(names, samples=args.samples, nmax=args.nmax, seed=args.seed)
    ok = report.passed_modulo_errata if args.allow_errata else report.passed
    return report.to_json(), 0 if ok else EXIT_MISMATCH


def cmd_moments(args: argparse.Namespace) -> tuple[dict, int]:
    spec = _spec(args, 2 * args.nmax + 3)
    qmap = _qmap(args)
    out = {"family": spec.name, "params": spec.params_json(), "map": qmap.to_json(), "nmax": args.nmax}
    out.update(moment_report(spec.rc, qmap, args.nmax).to_json())
    return out, 0


def cmd_families(args: argparse.Namespace) -> tuple[list, int]:
    out = []
    for name, fd in REGISTRY.items():
        out.append({
            "name": name,
            "description": fd.description,
            "params": list(fd.params),
            "defaults": {k: str(v) for k, v in fd.defaults.items()},
            "printed_extended": fd.printed is not None,
            "cases": list(tabulated_cases(name)),
        })
    return out, 0


def _family(name: str):
    try:
        return family(name)
    except UnknownFamily as exc:
        raise CliError("unknown_family", exc.args[0]) from exc


COMMANDS = {
    "decompose": cmd_decompose,
    "study": cmd_study,
    "verify": cmd_verify,
    "moments": cmd_moments,
    "families": cmd_families,
}


def dumps(data: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def render(data: Any, indent: int = 0) -> str:
    """Plain-text view of a JSON report."""
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and value and not _flat_list(value):
                lines.append(f"{pad}{key}:")
                lines.append(render(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(data, list):
        for i, value in enumerate(data):
            if isinstance(value, (dict, list)) and value and not _flat_list(value):
                lines.append(f"{pad}[{i}]")
                lines.append(render(value, indent + 1))
            else:
                lines.append(f"{pad}[{i}] {_scalar(value)}")
    else:
        lines.append(pad + _scalar(data))
    return "\n".join(lines)


def _flat_list(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _scalar(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, dict):
        return "{}"
    return str(value)


def _error(kind: str, message: str, **extra) -> int:
    print(dumps({"error": kind, "message": message, **extra}), file=sys.stderr)
    return EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        args.seed = default_seed()
    try:
        data, code = COMMANDS[args.command](args)
    except CliError as exc:
        return _error(exc.kind, str(exc), **exc.extra)
    except RegularityError as exc:
        return _error("regularity", str(exc), index=exc.index)
    except PreconditionError as exc:
        return _error("precondition", str(exc), index=exc.index)
    except CoefficientUnavailable as exc:
        return _error("coefficients", f"{exc}; supply more coefficients or lower --nmax")
    print(render(data) if args.pretty else dumps(data))
    return code


if __name__ == "__main__":
    sys.exit(main())
