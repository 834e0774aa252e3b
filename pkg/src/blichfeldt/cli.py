"""Command-line front end: count, measure, check, audit, corpus, witness.

Exit codes: 0 all verdicts hold (or are observational findings), 1 a
proved inequality reported VIOLATED, 2 usage or input error, 3 a
comparison stayed inconclusive at the precision cap.  All numeric output
carries provenance: exact rationals as "p/q", enclosures as
"[lo, hi]@bits".
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from blichfeldt import counting as ct
from blichfeldt import harness as hz
from blichfeldt import polytope as pt
from blichfeldt import witnesses as wt
from blichfeldt.radical import MAX_BITS

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class _CliError(Exception):
    pass


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(out, text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_body(path: str) -> ct.Body:
    try:
        return wt.load_body(path)
    except FileNotFoundError as exc:
        raise _CliError(f"body-spec {path}: {exc.strerror}") from exc
    except wt.BodySpecError as exc:
        raise _CliError(f"body-spec {path}: {exc}") from exc
    except (ValueError, pt.DegenerateHullError) as exc:
        raise _CliError(f"body-spec {path}: {exc}") from exc


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("BLICH_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise _CliError(f"BLICH_BUDGET not an integer: {env!r}") from exc
    return ct.DEFAULT_BUDGET


def _cmd_count(args) -> int:
    body = _load_body(args.body)
    try:
        result = ct.count(body, budget=_budget(args))
    except ct.EnumerationBudgetError as exc:
        raise _CliError(str(exc)) from exc
    _emit(f"count: {result.count}", args.out)
    return EXIT_OK


def _cmd_measure(args) -> int:
    body = _load_body(args.body)
    if body.polytope is None:
        raise _CliError("measure requires a polytope body")
    poly = body.polytope
    bits = args.precision_max_bits
    lines = [
        f"dimension: {poly.dim}",
        f"volume: {hz.format_value(pt.volume(poly))}",
        f"surface_area: {hz.format_value(pt.surface_area(poly), bits=128)}",
    ]
    if poly.dim == 3:
        iv = pt.intrinsic_volumes_3d(poly)
        lines.append(f"V1: {hz.format_value(iv.v1, bits=128)}")
        lines.append(f"V2: {hz.format_value(iv.v2, bits=128)}")
        lines.append(f"V3: {hz.format_value(iv.v3)}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def _verdict_exit(verdicts) -> int:
    violated = any(
        v is hz.Verdict.VIOLATED and id not in hz.OBSERVATIONAL_IDS
        for id, v in verdicts
    )
    if violated:
        return EXIT_VIOLATED
    if any(v is hz.Verdict.INCONCLUSIVE for _, v in verdicts):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_check(args) -> int:
    try:
        id = hz.InequalityId(args.id)
    except ValueError as exc:
        raise _CliError(f"unknown inequality id {args.id!r}") from exc
    body = _load_body(args.body)
    report = hz.check(
        id, body, budget=_budget(args), max_bits=args.precision_max_bits
    )
    lines = [
        f"id: {id.value}",
        f"verdict: {report.verdict.value}",
        f"lhs: {hz.format_value(report.lhs)}",
        f"rhs: {hz.format_value(report.rhs)}",
    ]
    if report.note:
        lines.append(f"note: {report.note}")
    if report.tightness is not None:
        lines.append(f"slack: [{report.tightness.lo}, {report.tightness.hi}]@128")
    _emit("\n".join(lines), args.out)
    return _verdict_exit([(id, report.verdict)])


def _cmd_audit(args) -> int:
    body = _load_body(args.body)
    if body.kind != "polytope":
        raise _CliError("audit requires an untranslated polytope body")
    try:
        record = hz.boundary_layer_audit(body.polytope, budget=_budget(args))
    except (ValueError, ct.EnumerationBudgetError) as exc:
        raise _CliError(str(exc)) from exc
    lines = [
        f"points: {record.total}",
        f"interior_layer: {record.l1_count}",
        f"boundary_layer: {record.l2_count}",
        f"volume_bound_ok: {record.l1_volume_ok}",
        f"boundary_covered_ok: {record.l2_covered_ok}",
        f"prism_bounds_ok: {record.prisms_ok}",
        f"vertex_count_ok: {record.vertex_count_ok}",
        f"layer_bounds_ok: {record.layers_ok}",
        f"partition_ok: {record.partition_ok}",
        f"all_ok: {record.all_ok}",
    ]
    _emit("\n".join(lines), args.out)
    return EXIT_OK if record.all_ok else EXIT_VIOLATED


def _corpus_spec_from_file(path: str, seed_override) -> wt.CorpusSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise _CliError(f"corpus spec {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise _CliError(f"corpus spec {path}: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise _CliError(f"corpus spec {path}: expected a JSON object")
    known = set(wt.CorpusSpec.__dataclass_fields__)
    unknown = set(doc) - known
    if unknown:
        raise _CliError(f"corpus spec {path}: unknown fields {sorted(unknown)}")
    for key in ("dimensions", "k_values", "m_values"):
        if key in doc:
            doc[key] = tuple(doc[key])
    if seed_override is not None:
        doc["seed"] = seed_override
    if "seed" not in doc:
        raise _CliError(f"corpus spec {path}: missing seed (or pass --seed)")
    return wt.CorpusSpec(**doc)


def _cmd_corpus(args) -> int:
    spec = _corpus_spec_from_file(args.spec, args.seed)
    if args.ids:
        try:
            ids = [hz.InequalityId(x) for x in args.ids]
        except ValueError as exc:
            raise _CliError(str(exc)) from exc
    else:
        ids = list(hz.InequalityId)
    report = hz.run_corpus(
        spec, ids, budget=_budget(args), max_bits=args.precision_max_bits
    )
    if args.format == "csv":
        text = hz.report_to_csv(report)
    elif args.format == "json":
        text = hz.report_to_json(report)
    else:
        lines = []
        for key, s in sorted(report.summary.items()):
            verdicts = ", ".join(f"{k}={v}" for k, v in sorted(s["verdicts"].items()))
            lines.append(f"{key}: {verdicts}")
        lines.append(f"rows: {len(report.rows)}")
        lines.append(f"violations: {len(report.violations)}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return _verdict_exit([(r.report.id, r.report.verdict) for r in report.rows])


def _cmd_witness(args) -> int:
    n = args.n
    if args.family == "simplex_Sk":
        if args.k is None:
            raise _CliError("simplex_Sk requires --k")
        poly = wt.simplex_Sk(n, args.k)
        t = tuple(Fraction(1, 2) if j == 0 else Fraction(0) for j in range(n))
    elif args.family == "reeve_Tm":
        if args.m is None:
            raise _CliError("reeve_Tm requires --m")
        try:
            poly = wt.reeve_Tm(n, args.m)
        except ValueError as exc:
            raise _CliError(str(exc)) from exc
        t = (Fraction(1, 2),) * n
    else:
        raise _CliError(f"unknown family {args.family!r}")
    body = wt.half_translate(poly, t) if args.translate else ct.Body.from_polytope(poly)
    text = json.dumps(wt.body_to_dict(body), indent=2)
    _emit(text, args.out)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="blichfeldt",
        description="Exact lattice-point counts, measures and certified "
        "inequality checks for convex bodies over full-rank lattices.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (fallback: BLICH_BUDGET)")
    common.add_argument("--precision-max-bits", type=int, default=MAX_BITS)
    common.add_argument("--format", choices=("csv", "json", "human"),
                        default="human")
    common.add_argument("--out", default=None, help="output path (atomic write)")

    sub = p.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("count", parents=[common], help="lattice points of a body")
    sc.add_argument("--body", required=True)
    sc.set_defaults(fn=_cmd_count)

    sm = sub.add_parser("measure", parents=[common],
                        help="volume, surface area, intrinsic volumes")
    sm.add_argument("--body", required=True)
    sm.set_defaults(fn=_cmd_measure)

    sk = sub.add_parser("check", parents=[common],
                        help="one inequality against one body")
    sk.add_argument("--id", required=True,
                    choices=[i.value for i in hz.InequalityId])
    sk.add_argument("--body", required=True)
    sk.set_defaults(fn=_cmd_check)

    sa = sub.add_parser("audit", parents=[common],
                        help="boundary-layer audit of a lattice polytope")
    sa.add_argument("--body", required=True)
    sa.set_defaults(fn=_cmd_audit)

    so = sub.add_parser("corpus", parents=[common],
                        help="run inequality checkers over a corpus")
    so.add_argument("--spec", required=True, help="corpus spec JSON file")
    so.add_argument("--ids", nargs="*", default=None,
                    help="inequality ids (default: all)")
    so.set_defaults(fn=_cmd_corpus)

    sw = sub.add_parser("witness", parents=[common],
                        help="emit a witness-family body-spec")
    sw.add_argument("--family", required=True,
                    choices=("simplex_Sk", "reeve_Tm"))
    sw.add_argument("--n", type=int, required=True)
    sw.add_argument("--k", type=int, default=None)
    sw.add_argument("--m", type=int, default=None)
    sw.add_argument("--translate", action="store_true",
                    help="emit the half-shifted translate instead")
    sw.set_defaults(fn=_cmd_witness)
    return p


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
