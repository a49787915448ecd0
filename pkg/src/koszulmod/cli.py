"""Command-line front end.

    koszulmod model list
    koszulmod koszul ce:sol2 --homology 1
    koszulmod chen bibby:4 -N 5 --format json
    koszulmod verify --suite table

Exit status: 0 on success, 1 when a verification fails, 2 for bad input, 3 when the model's
cap is too small for the requested degree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .cdga import CDGA, CDGAError, builtin_cdga, catalog_keys
from .groebner import annihilator, hilbert_series, minimalize
from .invariants import (
    CHECKS, ResonanceError, VerifyReport, chen_ranks, graded_dims, jump_test_point, resonance_report,
    sample_points, verify,
)
from .koszul import (
    CapTooSmall, KoszulError, _data, aomoto_dims, cochain_koszul_module, koszul_chain, koszul_cochain,
    koszul_homology,
)
from .polycore import PolynomialSyntaxError, format_polynomial, order_from_name, rational

SCHEMA = "koszulmod/1"
BOUND_ENV = "KOSZULMOD_DEGREE_BOUND"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class BadInput(Exception):
    pass


# ---------------------------------------------------------------- helpers

def default_bound() -> int:
    raw = os.environ.get(BOUND_ENV)
    if raw is None:
        return 12
    try:
        value = int(raw)
    except ValueError:
        raise BadInput(f"{BOUND_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise BadInput(f"{BOUND_ENV} must be at least 1")
    return value


def load_model(source: str) -> CDGA:
    """A catalog key, or a path to a CDGA JSON file."""
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise BadInput(f"cannot read {source}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise BadInput(f"{source} is not valid JSON: {exc}") from None
        A = CDGA.from_json(data)
        A.name = data.get("name", path.stem)
        return A
    try:
        return builtin_cdga(source)
    except KeyError:
        raise BadInput(f"unknown model {source!r}; try `koszulmod model list`") from None


def _ideal_json(I, order) -> list[str]:
    return [format_polynomial(g) for g in I.groebner_basis(order)]


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        body = {"schema": SCHEMA, "command": args.command, **payload}
        print(json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _natural(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


# ---------------------------------------------------------------- subcommands

def cmd_model(args) -> int:
    if args.action == "list":
        rows = []
        for key in catalog_keys():
            A = builtin_cdga(key)
            rows.append({"key": key, "dims": A.dims(), "provenance": A.provenance})
        text = "\n".join(f"{r['key']:<14} dims {r['dims']}  {r['provenance']}" for r in rows)
        _emit(args, {"models": rows}, text)
        return EXIT_OK
    if not args.key:
        raise BadInput("model show needs a key")
    A = load_model(args.key)
    payload = {"model": A.name, "provenance": A.provenance, "cdga": A.to_json()}
    _emit(args, payload, json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    return EXIT_OK


def cmd_koszul(args) -> int:
    A = load_model(args.model)
    order = order_from_name(args.order)
    i = args.homology
    raw = cochain_koszul_module(A, i) if args.cochain else koszul_homology(A, i)
    M = minimalize(raw)
    ann = annihilator(M)
    dims = graded_dims(M, args.degree_bound)
    series = hilbert_series(M) if M.homogeneous and M.ngens else None
    payload = {
        "model": A.name,
        "side": "cochain" if args.cochain else "chain",
        "degree": i,
        "module": M.to_json(),
        "presentation": M.describe(),
        "annihilator": _ideal_json(ann, order),
        "order": args.order,
        "graded": M.homogeneous,
        "hilbert_series": series.to_json() if series is not None else None,
        "dims": dims,
        "bound": args.degree_bound,
    }
    lines = [
        f"{'cochain' if args.cochain else 'chain'} Koszul module {i} of {A.name}",
        f"  module      {M.describe()}",
        f"  Ann         ({', '.join(payload['annihilator'])})" if payload["annihilator"] else "  Ann         (0)",
    ]
    if series is not None:
        lines.append(f"  Hilbert     {series}")
    lines.append(f"  {'graded' if M.homogeneous else 'gr'} dims  {dims}")
    if args.dump_matrices:
        complex_ = koszul_cochain(A) if args.cochain else koszul_chain(A)
        payload["complex"] = complex_.to_json()
        for name, m in payload["complex"]["matrices"].items():
            lines.append(f"  {name} = {m}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_chen(args) -> int:
    A = load_model(args.model)
    rep = chen_ranks(A, args.N)
    seq = rep.sequence()
    text = "\n".join([f"Chen ranks of {A.name} ({rep.source})"] +
                     [f"  theta_{k} = {v}" for k, v in enumerate(seq, start=1)])
    _emit(args, {"model": A.name, **rep.to_json()}, text)
    return EXIT_OK


def cmd_resonance(args) -> int:
    A = load_model(args.model)
    n = len(_data(A).variables)
    points = sample_points(n, args.points, args.seed)
    rep = resonance_report(A, args.i, args.s, points, args.degree_bound if args.tangent_cone else None)
    payload = rep.to_json()
    lines = [f"resonance of {A.name}, i = {args.i}, s = {args.s}, variables {', '.join(payload['variables'])}"]
    if payload["jump_ideal"] is not None:
        lines.append(f"  jump ideal     ({', '.join(payload['jump_ideal'])})")
    else:
        lines.append(f"  jump ideal     not formed: {payload['jump_note']}")
    lines.append(f"  support ideal  ({', '.join(payload['support_ideal'])})")
    lines.append(f"  sampled points agree away from 0: {rep.agree_away_from_origin}")
    if rep.tangent_cone is not None:
        lines.append(f"  tangent cone   {rep.tangent_cone} (bound {args.degree_bound})")
    payload["agree_away_from_origin"] = rep.agree_away_from_origin
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _parse_point(text: str, n: int) -> list:
    try:
        point = [rational(c) for c in text.split(",")]
    except (ValueError, TypeError, ZeroDivisionError):
        raise BadInput(f"cannot read point {text!r}; use comma-separated rationals such as 1,-1/2,0") from None
    if len(point) != n:
        raise BadInput(f"point has {len(point)} coordinates; H^1 has dimension {n}")
    return point


def cmd_aomoto(args) -> int:
    A = load_model(args.model)
    n = len(_data(A).variables)
    rows = []
    for text in args.point:
        p = _parse_point(text, n)
        dim = aomoto_dims(A, p, args.i)
        rows.append({"point": [str(c) for c in p], "dim": dim, "jumps": jump_test_point(A, p, args.i, args.s)})
    text = "\n".join(f"a = ({', '.join(r['point'])}): dim H^{args.i}(A, a) = {r['dim']}"
                     f"{'  (in locus)' if r['jumps'] else ''}" for r in rows)
    _emit(args, {"model": A.name, "degree": args.i, "s": args.s, "points": rows}, text)
    return EXIT_OK


# ---------------------------------------------------------------- verify suites

def identity_jobs(models: list[str]) -> list[tuple]:
    """(check, args) pairs making up the identities suite."""
    jobs = [
        ("kunneth", ("exterior:2", "ce:h(1)")),
        ("coproduct_exterior", ()),
        ("hirsch_deg1", ()),
        ("pd_duality", ("ce:h(1)",)),
        ("nilpotent_res_trivial", ()),
    ]
    for check in ("euler_identity", "hilb_inequality", "crowell", "truncation_stability", "bpres_oracle",
                  "aomoto_jump"):
        jobs += [(check, (key,)) for key in models]
    return jobs


def run_jobs(jobs: list[tuple]) -> list[dict]:
    out = []
    for check, job_args in jobs:
        start = time.perf_counter()
        try:
            report = verify(check, *job_args)
        except (CapTooSmall, KoszulError, CDGAError, ResonanceError) as exc:
            report = VerifyReport(",".join(map(str, job_args)) or check, check, "fail", {"error": str(exc)})
        row = report.to_json()
        row["seconds"] = round(time.perf_counter() - start, 3)
        out.append(row)
    return out


def cmd_verify(args) -> int:
    suites = ["table", "identities"] if args.all else [args.suite] if args.suite else []
    jobs = []
    if args.check:
        if args.check not in CHECKS:
            raise BadInput(f"unknown check {args.check!r}; known: {', '.join(sorted(CHECKS))}")
        if args.check == "kunneth" or not args.model:
            jobs.append((args.check, tuple(args.model)))
        elif args.check == "nilpotent_res_trivial":
            jobs.append((args.check, (args.model,)))
        else:
            jobs += [(args.check, (key,)) for key in args.model]
    if not suites and not jobs:
        raise BadInput("give --suite, --check or --all")
    models = args.model if args.model and not args.check else catalog_keys()
    for suite in suites:
        if suite == "table":
            jobs.append(("table", ()))
        else:
            jobs += identity_jobs(models)
    rows = run_jobs(jobs)
    if not args.timings:
        for r in rows:
            r.pop("seconds")
    failed = [r for r in rows if r["status"] != "pass"]
    text = "\n".join(f"{r['status']:<4}  {r['check']:<22} {r['model']}" for r in rows)
    text += f"\n{len(rows) - len(failed)} passed, {len(failed)} failed"
    _emit(args, {"reports": rows, "passed": len(rows) - len(failed), "failed": len(failed)}, text)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree-bound", "-D", type=_positive, default=None,
                        help=f"truncation bound for gr dims (default 12, or ${BOUND_ENV})")
    common.add_argument("--order", choices=["grevlex", "lex"], default="grevlex",
                        help="monomial order used to display ideals")
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(prog="koszulmod", description="Koszul modules of finite CDGAs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", parents=[common], help="list or show catalog models")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("key", nargs="?")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("koszul", parents=[common], help="Koszul homology module")
    p.add_argument("model", help="catalog key or CDGA JSON file")
    p.add_argument("--homology", "-i", type=_natural, default=1, metavar="I")
    p.add_argument("--cochain", action="store_true", help="use the cochain complex instead")
    p.add_argument("--dump-matrices", action="store_true")
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("chen", parents=[common], help="holonomy Chen ranks")
    p.add_argument("model")
    p.add_argument("-N", type=_positive, default=6, help="compute theta_1..theta_N")
    p.set_defaults(func=cmd_chen)

    p = sub.add_parser("resonance", parents=[common], help="jump and support ideals")
    p.add_argument("model")
    p.add_argument("-i", type=_natural, default=1)
    p.add_argument("-s", type=_positive, default=1)
    p.add_argument("--tangent-cone", action="store_true", help="add the initial ideal of the support ideal")
    p.add_argument("--points", type=_natural, default=20, help="random sample points besides origin and axes")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("aomoto", parents=[common], help="Aomoto cohomology at given points")
    p.add_argument("model")
    p.add_argument("--point", "-p", action="append", required=True, help="comma-separated coordinates")
    p.add_argument("-i", type=_natural, default=1)
    p.add_argument("-s", type=_positive, default=1)
    p.set_defaults(func=cmd_aomoto)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--suite", choices=["table", "identities"])
    group.add_argument("--all", action="store_true")
    p.add_argument("--check", help="a single check by name")
    p.add_argument("--model", action="append", default=[],
                   help="model key (repeatable); restricts the identities suite or feeds --check")
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds (not reproducible)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.degree_bound is None:
            args.degree_bound = default_bound()
        return args.func(args)
    except BadInput as exc:
        print(f"koszulmod: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapTooSmall as exc:
        print(f"koszulmod: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (KoszulError, CDGAError, ResonanceError, PolynomialSyntaxError, ValueError) as exc:
        print(f"koszulmod: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
