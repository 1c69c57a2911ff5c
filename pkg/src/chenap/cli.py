"""Command-line front end.

    chen-ap constants --tolerance 1e-8
    chen-ap count --x 1e6 --q 5 --a 1
    chen-ap decompose --x 1e7 --q 3 --a 2 --shards 4
    chen-ap verify-lemma --x 1e5
    chen-ap discrepancy --x 1e5 --weight b --output-format csv
    chen-ap classify --n 902
    chen-ap condition31 --u 10 --z 1000 --epsilon 0.004 --k 3

Exit status: 0 on success, 2 on invalid input, 3 when a resource limit is
hit, 1 on numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from ._errors import DomainError, NumericalError, ResourceError
from .arith import APClass, phi2, pi2_constant, SieveDensity
from .chen import DEFAULT_EXPONENT, chen_census, classify, is_chen_prime, verify_lemma14
from .decomp import SieveParams, decompose
from .discrepancy import Weight, bv_sum, sw_residual
from .primes import DEFAULT_MAX_N, is_prime, sieve_primes
from .sieve_theory import condition_31_sides, headline_constants, minimal_excluded_primes

SCHEMA_VERSION = 1
EXIT_OK, EXIT_NUMERIC, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3


def _sig12(v: float) -> float:
    return float(f"{v:.12g}")


def _ap(args) -> APClass:
    return APClass(args.a, args.q)


def cmd_constants(args) -> dict:
    tol = args.tolerance if args.tolerance is not None else 1e-8
    b = headline_constants(tolerance=tol)
    return {k: _sig12(v) for k, v in b.to_dict().items()}


def cmd_count(args) -> dict:
    ap = _ap(args)
    census = chen_census(args.x, ap, args.chen_exponent, args.exclude_small_primes, args.max_n)
    x = args.x
    norm = float(phi2(ap.q)) * math.log(x) ** 2 / x
    pi2 = pi2_constant(1e-6)
    return {
        "x": x,
        "a": ap.a,
        "q": ap.q,
        "chen_exponent": str(census.exponent),
        "exclude_small_primes": census.excluded_small,
        "count": census.total,
        "twin": census.twin,
        "qualified_semiprime": census.qualified_semiprime,
        "normalized_density": census.total * norm,
        "twin_density_ratio": census.twin * norm / (2.0 * pi2),
    }


def cmd_decompose(args) -> dict:
    rep = decompose(SieveParams(args.x, args.max_n), _ap(args), workers=args.shards)
    return rep.to_dict()


def cmd_verify_lemma(args) -> dict:
    bad = verify_lemma14(args.x, args.max_n)
    return {"x": args.x, "violations": len(bad), "examples": bad[:20]}


def cmd_discrepancy(args) -> dict:
    D = args.D if args.D is not None else math.sqrt(args.x)
    summary = bv_sum(args.x, D, Weight(args.weight))
    out = summary.to_dict()
    out["rows"] = [[r.d, r.worst_a, r.delta_abs] for r in summary.rows]
    if args.weight != Weight.B.value:
        out["sw_residuals"] = {
            str(d): [[a, sw_residual(args.x, a, d)] for a in range(1, d + 1) if math.gcd(a, d) == 1]
            for d in (1, 3, 4, 5)
        }
    args._csv_rows = summary.rows_csv()
    return out


def cmd_classify(args) -> dict:
    if args.n is None:
        raise DomainError("classify needs --n")
    c = classify(args.n)
    out = {"n": c.n, "kind": c.kind.value, "factors": list(c.factors), "min_factor": c.min_factor}
    if is_prime(c.n):
        v = is_chen_prime(c.n, args.chen_exponent)
        out["chen"] = {"is_chen": v.is_chen, "branch": v.branch.value,
                       "witness": list(v.witness) if v.witness else None}
    return out


def cmd_condition31(args) -> dict:
    if args.u is None or args.z is None:
        raise DomainError("condition31 needs --u and --z")
    eps = args.epsilon if args.epsilon is not None else 0.0
    Q = sieve_primes(max(int(math.ceil(args.z)), 2)).primes[: args.k].tolist()
    dens = SieveDensity(args.q)
    lhs, rhs = condition_31_sides(dens, args.u, args.z, Q, eps)
    return {
        "u": args.u, "z": args.z, "epsilon": eps, "q": args.q, "excluded_primes": Q,
        "product": lhs, "bound": rhs, "holds": lhs < rhs,
        "minimal_excluded": minimal_excluded_primes(dens, args.u, args.z, eps),
    }


COMMANDS = {
    "constants": cmd_constants,
    "count": cmd_count,
    "decompose": cmd_decompose,
    "verify-lemma": cmd_verify_lemma,
    "discrepancy": cmd_discrepancy,
    "classify": cmd_classify,
    "condition31": cmd_condition31,
}


def _exponent(text: str) -> Fraction:
    try:
        return Fraction(text).limit_denominator(10**6)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad exponent {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--x", type=float, default=1e6, help="size parameter (scientific notation ok)")
    common.add_argument("--a", type=int, default=1)
    common.add_argument("--q", type=int, default=1)
    common.add_argument("--output-format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--shards", type=int, default=1)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    common.add_argument("--chen-exponent", type=_exponent, default=DEFAULT_EXPONENT)
    common.add_argument("--exclude-small-primes", action="store_true")
    common.add_argument("--D", type=float, default=None, help="modulus range for discrepancy")
    common.add_argument("--weight", choices=[w.value for w in Weight], default=Weight.MANGOLDT.value)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--u", type=float, default=None)
    common.add_argument("--z", type=float, default=None)
    common.add_argument("--epsilon", type=float, default=None)
    common.add_argument("--k", type=int, default=0, help="exclude the first k primes")

    parser = argparse.ArgumentParser(prog="chen-ap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


_CONFIG_KEYS = ("x", "a", "q", "tolerance", "max_n", "chen_exponent", "exclude_small_primes",
                "D", "weight", "n", "u", "z", "epsilon", "k", "output_format")


def _config(args) -> dict:
    cfg = {}
    for key in _CONFIG_KEYS:
        v = getattr(args, key)
        cfg[key] = str(v) if isinstance(v, Fraction) else v
    cfg["command"] = args.command
    return cfg


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, v


def render(report: dict, fmt: str, csv_rows: str = None) -> str:
    """Serialise a report; the ``runtime`` block is the only run-dependent part."""
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        if csv_rows is not None:
            return csv_rows
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(report["result"]):
            w.writerow([k, json.dumps(v) if isinstance(v, list) else v])
        return buf.getvalue()
    lines = [f"# chen-ap {report['provenance']['version']} {report['report']}"]
    res = report["result"]
    if report["report"] == "verify-lemma":
        lines.append(f"{res['violations']} violations")
    for k, v in _flatten(res):
        if k == "rows":
            continue
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._csv_rows = None
    started = time.perf_counter()
    try:
        if args.shards < 1:
            raise DomainError("--shards must be at least 1")
        result = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    report = {
        "report": args.command,
        "schema_version": SCHEMA_VERSION,
        "provenance": {"version": __version__, "config": _config(args)},
        "result": result,
        "runtime": {
            "shards": args.shards,
            "wall_time_s": round(time.perf_counter() - started, 6),
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
    }
    text = render(report, args.output_format, args._csv_rows)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_RESOURCE
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
