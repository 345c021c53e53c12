"""Command-line front end.

Subcommands: check, scan, tables, family, complement, equivalence, oracle.
Every command takes --format {text,csv,json}.  Exact rationals are printed
as "p/q" strings in lowest terms (plain integers without the "/q"); no
value is ever rendered as a decimal.  Exit codes are a stable contract:
0 clean, 1 criterion failure or oracle mismatch, 2 usage error, 3 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .designs import ArdParams, QsdParams, ard_params, bh_family, complement, derive_params
from .equivalence import run_verification
from .errors import (
    CandidateCapError,
    InvalidParametersError,
    NonDesignError,
    NotQuasisymmetricError,
    OracleMismatchError,
    QsdError,
    SamplingError,
)
from .oracle import (
    build_6_3_2,
    build_pair_design,
    build_witt_23,
    design_to_text,
    verify_design,
)
from .scanner import (
    ALL_FILTERS,
    DEFAULT_CANDIDATE_CAP,
    DEFAULT_LAMBDA_MAX,
    FeasibilityVerdict,
    ScanRange,
    candidate_count,
    classify,
    reproduce_tables,
    scan_one_v,
)

SCAN_COLUMNS = [
    "v", "k", "lambda", "x", "y", "r", "b", "V", "K", "R", "S", "Lambda", "M",
    "d", "e", "cc_slack", "n_slack", "c_value", "h_value", "krein_margin",
    "status", "reasons",
]


def rat_str(value: Fraction | int | None) -> str:
    """Exact decimal-free rendering: "p/q" in lowest terms, or "" for absent."""
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    den = value.denominator
    return str(value.numerator) if den == 1 else f"{value.numerator}/{den}"


def _krein_margin(verdict: FeasibilityVerdict) -> Fraction | None:
    rep = verdict.report
    if rep.krein_lhs is None or rep.krein_rhs is None:
        return None
    return rep.krein_lhs - rep.krein_rhs


def _reasons_field(verdict: FeasibilityVerdict) -> str:
    if verdict.reasons:
        return "; ".join(verdict.reasons)
    return "; ".join(verdict.citations)


def verdict_csv_row(verdict: FeasibilityVerdict) -> list[str]:
    p = verdict.params
    return [
        str(p.v), str(p.k), str(p.lam), str(p.x), str(p.y),
        rat_str(verdict.r), rat_str(verdict.b), rat_str(verdict.b),
        rat_str(verdict.valency), rat_str(verdict.eig_r), rat_str(verdict.eig_s),
        rat_str(verdict.srg_lam), rat_str(verdict.srg_mu),
        rat_str(verdict.degree), rat_str(verdict.nexus),
        rat_str(verdict.report.cc_slack), rat_str(verdict.report.n_slack),
        rat_str(verdict.report.c_value), rat_str(verdict.report.h_value),
        rat_str(_krein_margin(verdict)),
        verdict.status, _reasons_field(verdict),
    ]


def verdict_json_obj(verdict: FeasibilityVerdict) -> dict:
    p = verdict.params
    return {
        "v": p.v, "k": p.k, "lambda": p.lam, "x": p.x, "y": p.y,
        "r": rat_str(verdict.r), "b": rat_str(verdict.b), "V": rat_str(verdict.b),
        "K": rat_str(verdict.valency), "R": rat_str(verdict.eig_r),
        "S": rat_str(verdict.eig_s), "Lambda": rat_str(verdict.srg_lam),
        "M": rat_str(verdict.srg_mu),
        "d": rat_str(verdict.degree), "e": rat_str(verdict.nexus),
        "cc_slack": rat_str(verdict.report.cc_slack),
        "n_slack": rat_str(verdict.report.n_slack),
        "c_value": rat_str(verdict.report.c_value),
        "h_value": rat_str(verdict.report.h_value),
        "krein_margin": rat_str(_krein_margin(verdict)),
        "status": verdict.status,
        "reasons": list(verdict.reasons),
        "citations": list(verdict.citations),
    }


def _json_line(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv_line(row: list[str]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(row)
    return buf.getvalue().rstrip("\n")


def verdict_text(verdict: FeasibilityVerdict) -> str:
    """Multi-line human-readable report for one parameter set."""
    p = verdict.params
    rep = verdict.report
    lines = [
        f"parameters: v={p.v} k={p.k} lambda={p.lam} x={p.x} y={p.y}",
        f"derived: r={rat_str(verdict.r)} b={rat_str(verdict.b)}",
        f"block graph: V={rat_str(verdict.b)} K={rat_str(verdict.valency)} "
        f"Lambda={rat_str(verdict.srg_lam)} M={rat_str(verdict.srg_mu)}",
    ]
    if verdict.srg is not None:
        s = verdict.srg
        lines.append(
            f"spectrum: {rat_str(s.valency)}^1 {rat_str(s.eig_r)}^{s.mult_r} "
            f"({rat_str(s.eig_s)})^{s.mult_s}"
        )
    lines.append(
        f"regular sets: size={rat_str(verdict.r)} degree={rat_str(verdict.degree)} "
        f"nexus={rat_str(verdict.nexus)}"
    )
    lines.append("criteria:")
    lines.append(f"  CC slack: {rat_str(rep.cc_slack)} ({rep.verdicts['CC']})")
    lines.append(f"  N slack: {rat_str(rep.n_slack)} ({rep.verdicts['N']})")
    lines.append(f"  C value: {rat_str(rep.c_value)} ({rep.verdicts['C']})")
    lines.append(f"  H value: {rat_str(rep.h_value)} ({rep.verdicts['H']})")
    lines.append(
        f"  Krein: Q11={rat_str(rep.krein_lhs)} bound={rat_str(rep.krein_rhs)} "
        f"({rep.verdicts['Krein']})"
    )
    lines.append(f"  Shrikhande: {rep.shrikhande}")
    if rep.degenerate_equality:
        lines.append("  note: equalities are degenerate (every triple count is zero)")
    for reason in verdict.reasons:
        lines.append(f"reason: {reason}")
    for citation in verdict.citations:
        lines.append(f"citation: {citation}")
    lines.append(f"status: {verdict.status}")
    return "\n".join(lines)


def _scan_header_lines(sr: ScanRange, survivors: bool, fmt: str) -> list[str]:
    meta = {
        "scan": {
            "v_min": sr.v_min,
            "v_max": sr.v_max,
            "k_max": sr.k_max,
            "lambda_max": sr.lambda_max,
            "canonical_half": sr.canonical_half,
            "filters": sorted(sr.filters),
            "survivors_only": survivors,
        }
    }
    if fmt == "json":
        return [_json_line(meta)]
    if fmt == "csv":
        return [_csv_line(SCAN_COLUMNS)]
    m = meta["scan"]
    return [
        f"# scan: v in [{m['v_min']}, {m['v_max']}], "
        f"k <= {'v/2' if m['canonical_half'] else 'v-1'}"
        + (f" (k_max {m['k_max']})" if m["k_max"] is not None else "")
        + f", lambda <= {m['lambda_max']}, filters: {', '.join(m['filters'])}"
        + (", survivors only" if survivors else "")
    ]


def _verdict_line(verdict: FeasibilityVerdict, fmt: str) -> str:
    if fmt == "json":
        return _json_line(verdict_json_obj(verdict))
    if fmt == "csv":
        return _csv_line(verdict_csv_row(verdict))
    p = verdict.params
    tail = _reasons_field(verdict)
    return (
        f"({p.v},{p.k},{p.lam},{p.x},{p.y}) r={rat_str(verdict.r)} "
        f"b={rat_str(verdict.b)} {verdict.status}" + (f" [{tail}]" if tail else "")
    )


def _scan_v_lines(payload) -> list[str]:
    """Worker unit: all output lines for one point count, already formatted."""
    (v, v_max, k_max, lambda_max, canonical, filters, cap, survivors, fmt) = payload
    sr = ScanRange(
        v_min=4, v_max=v_max, k_max=k_max, lambda_max=lambda_max,
        canonical_half=canonical, filters=frozenset(filters), max_candidates=cap,
    )
    return [_verdict_line(verdict, fmt) for verdict in scan_one_v(sr, v, survivors)]


def _cmd_check(args) -> int:
    p = QsdParams(v=args.v, k=args.k, lam=args.lam, x=args.x, y=args.y)
    verdict = classify(p)
    if args.format == "json":
        obj = verdict_json_obj(verdict)
        rep = verdict.report
        obj["krein_lhs"] = rat_str(rep.krein_lhs)
        obj["krein_rhs"] = rat_str(rep.krein_rhs)
        obj["verdicts"] = rep.verdicts
        obj["shrikhande"] = rep.shrikhande
        obj["degenerate_equality"] = rep.degenerate_equality
        if verdict.srg is not None:
            obj["mult_R"] = verdict.srg.mult_r
            obj["mult_S"] = verdict.srg.mult_s
        print(_json_line(obj))
    elif args.format == "csv":
        print(_csv_line(SCAN_COLUMNS))
        print(_csv_line(verdict_csv_row(verdict)))
    else:
        print(verdict_text(verdict))
    return 0 if verdict.status != "infeasible" else 1


def _cmd_scan(args) -> int:
    filters = _parse_filters(args.filters)
    sr = ScanRange(
        v_min=args.v_min,
        v_max=args.v_max,
        k_max=args.k_max,
        lambda_max=args.lambda_max,
        canonical_half=not args.no_canonical_half,
        filters=filters,
        max_candidates=args.max_candidates,
    )
    count = candidate_count(sr)
    if count > sr.max_candidates:
        raise CandidateCapError(
            f"scan would enumerate {count} candidates, cap is {sr.max_candidates}"
        )
    out = sys.stdout
    for line in _scan_header_lines(sr, args.survivors, args.format):
        out.write(line + "\n")
    payloads = [
        (v, sr.v_max, sr.k_max, sr.lambda_max, sr.canonical_half,
         tuple(sorted(sr.filters)), sr.max_candidates, args.survivors, args.format)
        for v in range(sr.v_min, sr.v_max + 1)
    ]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            for lines in pool.map(_scan_v_lines, payloads):
                if lines:
                    out.write("\n".join(lines) + "\n")
    else:
        for payload in payloads:
            lines = _scan_v_lines(payload)
            if lines:
                out.write("\n".join(lines) + "\n")
    return 0


def _cmd_tables(args) -> int:
    report = reproduce_tables()
    if args.format == "json":
        obj = {
            "rows": [
                {
                    "table": rc.row.table,
                    "v": rc.row.v, "k": rc.row.k, "lambda": rc.row.lam,
                    "y": rc.row.y, "x": rc.row.x,
                    "printed_r": rc.row.r, "printed_b": rc.row.b,
                    "r": rat_str(rc.r), "b": rat_str(rc.b),
                    "r_matches_printed": rc.r_matches_printed,
                    "b_matches_printed": rc.b_matches_printed,
                    "integral": rc.integral,
                    "srg_integral": rc.srg_integral,
                    "nch_pass": rc.nch_pass,
                    "shrikhande_excluded": rc.shrikhande_excluded,
                    "status": rc.status,
                    "comment": rc.comment,
                    "note": rc.note,
                }
                for rc in report.rows
            ],
            "small_table_note": report.small_table_note,
            "ok": report.ok,
        }
        print(_json_line(obj))
    elif args.format == "csv":
        cols = ["table", "v", "k", "lambda", "y", "x", "printed_r", "printed_b",
                "r", "b", "integral", "srg_integral", "nch_pass",
                "shrikhande_excluded", "status", "comment"]
        print(_csv_line(cols))
        for rc in report.rows:
            print(_csv_line([
                rc.row.table, str(rc.row.v), str(rc.row.k), str(rc.row.lam),
                str(rc.row.y), str(rc.row.x),
                "" if rc.row.r is None else str(rc.row.r),
                "" if rc.row.b is None else str(rc.row.b),
                rat_str(rc.r), rat_str(rc.b),
                str(rc.integral), str(rc.srg_integral), str(rc.nch_pass),
                str(rc.shrikhande_excluded), rc.status, rc.comment,
            ]))
    else:
        for table, title in (("bc92", "large ruled-out parameter sets"),
                             ("small", "smaller ruled-out parameter sets")):
            print(f"{title}:")
            print(f"{'v':>6} {'k':>5} {'lambda':>7} {'y':>5} {'x':>5} "
                  f"{'r':>6} {'b':>7}  checks  comment")
            for rc in report.rows:
                if rc.row.table != table:
                    continue
                checks = []
                if rc.row.r is None:
                    checks.append("rb recomputed")
                else:
                    checks.append("rb=printed" if rc.r_matches_printed and rc.b_matches_printed else "rb MISMATCH")
                checks.append("integral" if rc.integral and rc.srg_integral else "NON-INTEGRAL")
                checks.append("NCH ok" if rc.nch_pass else "NCH FAIL")
                if rc.shrikhande_excluded:
                    checks.append("shrikhande-excluded")
                print(f"{rc.row.v:>6} {rc.row.k:>5} {rc.row.lam:>7} {rc.row.y:>5} "
                      f"{rc.row.x:>5} {rat_str(rc.r):>6} {rat_str(rc.b):>7}  "
                      f"[{'; '.join(checks)}]  {rc.comment}")
                if rc.note:
                    print(f"{'':>47}note: {rc.note}")
            if table == "small":
                print(f"note: {report.small_table_note}")
            print()
        print("all arithmetic checks passed" if report.ok else "SOME CHECKS FAILED")
    return 0 if report.ok else 1


def _cmd_family(args) -> int:
    if args.family == "bh":
        p = bh_family(args.q)
        label = {"family": "bh", "q": args.q}
    else:
        p = ard_params(ArdParams(n=args.n, t=args.t))
        label = {"family": "ard", "n": args.n, "t": args.t}
    verdict = classify(p)
    if args.format == "json":
        obj = dict(label)
        obj.update(verdict_json_obj(verdict))
        print(_json_line(obj))
    elif args.format == "csv":
        print(_csv_line(SCAN_COLUMNS))
        print(_csv_line(verdict_csv_row(verdict)))
    else:
        print(" ".join(f"{key}={val}" for key, val in label.items()))
        print(verdict_text(verdict))
    return 0 if verdict.status != "infeasible" else 1


def _cmd_complement(args) -> int:
    p = QsdParams(v=args.v, k=args.k, lam=args.lam, x=args.x, y=args.y)
    d = derive_params(p)
    if not d.integral:
        raise NonDesignError(f"r = {rat_str(d.r)}, b = {rat_str(d.b)} must be integers")
    pc, dc = complement(p, d)
    if args.format == "json":
        print(_json_line({
            "v": pc.v, "k": pc.k, "lambda": pc.lam, "x": pc.x, "y": pc.y,
            "r": rat_str(dc.r), "b": rat_str(dc.b),
        }))
    elif args.format == "csv":
        print(_csv_line(["v", "k", "lambda", "x", "y", "r", "b"]))
        print(_csv_line([str(pc.v), str(pc.k), str(pc.lam), str(pc.x), str(pc.y),
                         rat_str(dc.r), rat_str(dc.b)]))
    else:
        print(f"complement: v={pc.v} k={pc.k} lambda={pc.lam} x={pc.x} y={pc.y} "
              f"r={rat_str(dc.r)} b={rat_str(dc.b)}")
    return 0


def _cmd_equivalence(args) -> int:
    summary = run_verification(args.seed, args.samples, integral=args.integral)
    if args.format == "json":
        print(_json_line({
            "seed": args.seed,
            "samples": args.samples,
            "verified": summary.total,
            "failures": [
                {
                    "v": rat_str(rep.tuple.v), "k": rat_str(rep.tuple.k),
                    "x": rat_str(rep.tuple.x), "y": rat_str(rep.tuple.y),
                    "links": list(rep.failures),
                }
                for rep in summary.failures
            ],
        }))
    elif args.format == "csv":
        print(_csv_line(["seed", "samples", "verified", "failures"]))
        print(_csv_line([str(args.seed), str(args.samples), str(summary.total),
                         str(len(summary.failures))]))
    else:
        print(f"verified {summary.total} tuples (seed {args.seed}): "
              f"{len(summary.failures)} failures")
        for rep in summary.failures:
            t = rep.tuple
            print(f"FAILURE at v={t.v} k={t.k} x={t.x} y={t.y}: {', '.join(rep.failures)}")
    return 0 if summary.ok else 1


ORACLE_BUILDERS = (
    ("pair8", lambda: build_pair_design(8)),
    ("design_6_3_2", build_6_3_2),
    ("witt23", build_witt_23),
)


def _cmd_oracle(args) -> int:
    rows = []
    for name, builder in ORACLE_BUILDERS:
        design = builder()
        report = verify_design(design)
        rows.append((name, design, report))
        if args.export_dir:
            path = pathlib.Path(args.export_dir) / f"{name}.txt"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(design_to_text(design))
    if args.format == "json":
        print(_json_line({
            "designs": [
                {
                    "name": name,
                    "v": rep.params.v, "k": rep.params.k, "lambda": rep.params.lam,
                    "x": rep.params.x, "y": rep.params.y,
                    "r": rep.r, "b": rep.b,
                    "K": rep.srg_valency, "R": rep.eig_r, "S": rep.eig_s,
                    "Lambda": rep.srg_lam, "M": rep.srg_mu,
                    "mult_R": rep.mult_r, "mult_S": rep.mult_s,
                    "d": rep.degree, "e": rep.nexus,
                    "A": rep.triple_moments[0], "B": rep.triple_moments[1],
                    "C": rep.triple_moments[2],
                }
                for name, _, rep in rows
            ],
            "ok": True,
        }))
    elif args.format == "csv":
        cols = ["name", "v", "k", "lambda", "x", "y", "r", "b", "K", "R", "S",
                "Lambda", "M", "mult_R", "mult_S", "d", "e", "A", "B", "C"]
        print(_csv_line(cols))
        for name, _, rep in rows:
            print(_csv_line([
                name, str(rep.params.v), str(rep.params.k), str(rep.params.lam),
                str(rep.params.x), str(rep.params.y), str(rep.r), str(rep.b),
                str(rep.srg_valency), str(rep.eig_r), str(rep.eig_s),
                str(rep.srg_lam), str(rep.srg_mu), str(rep.mult_r), str(rep.mult_s),
                str(rep.degree), str(rep.nexus),
                str(rep.triple_moments[0]), str(rep.triple_moments[1]),
                str(rep.triple_moments[2]),
            ]))
    else:
        for name, design, rep in rows:
            p = rep.params
            print(f"{name}: ({p.v},{p.k},{p.lam},{p.x},{p.y}) b={rep.b} r={rep.r} "
                  f"graph=({rep.srg_vertices},{rep.srg_valency},{rep.srg_lam},{rep.srg_mu}) "
                  f"spectrum={rep.srg_valency}^1 {rep.eig_r}^{rep.mult_r} ({rep.eig_s})^{rep.mult_s} "
                  f"d={rep.degree} e={rep.nexus} "
                  f"(A,B,C)={rep.triple_moments}: all counts match")
        print("oracle: all brute-force counts match the closed forms")
    return 0


def _parse_filters(spec: str | None) -> frozenset[str]:
    if not spec:
        return ALL_FILTERS
    parts = frozenset(part.strip() for part in spec.split(",") if part.strip())
    unknown = parts - ALL_FILTERS
    if unknown:
        raise InvalidParametersError(
            f"unknown filters {sorted(unknown)}; valid: {sorted(ALL_FILTERS)}"
        )
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsdcheck",
        description="Exact-arithmetic feasibility checks for quasisymmetric "
        "2-design parameter sets.",
    )
    parser.add_argument("--version", action="version", version=f"qsdcheck {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text",
                        help="output format (default text)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for scan (default 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", parents=[common],
                             help="classify one parameter set (v k lambda x y)")
    p_check.add_argument("v", type=int)
    p_check.add_argument("k", type=int)
    p_check.add_argument("lam", type=int, metavar="lambda")
    p_check.add_argument("x", type=int)
    p_check.add_argument("y", type=int)
    p_check.set_defaults(func=_cmd_check)

    p_scan = sub.add_parser("scan", parents=[common],
                            help="enumerate and classify parameter tuples")
    p_scan.add_argument("--v-min", type=int, default=4)
    p_scan.add_argument("--v-max", type=int, required=True)
    p_scan.add_argument("--k-max", type=int, default=None)
    p_scan.add_argument("--lambda-max", type=int, default=DEFAULT_LAMBDA_MAX)
    p_scan.add_argument("--survivors", action="store_true",
                        help="emit only feasible tuples")
    p_scan.add_argument("--no-canonical-half", action="store_true",
                        help="also enumerate k > v/2 (complements repeat all verdicts)")
    p_scan.add_argument("--filters", default=None,
                        help="comma-separated filter subset (default: all)")
    p_scan.add_argument("--max-candidates", type=int, default=DEFAULT_CANDIDATE_CAP)
    p_scan.set_defaults(func=_cmd_scan)

    p_tables = sub.add_parser("tables", parents=[common],
                              help="recompute the embedded ruled-out tables")
    p_tables.set_defaults(func=_cmd_tables)

    p_family = sub.add_parser("family",
                              help="parameter families (bh: power-of-two family; ard)")
    fam_sub = p_family.add_subparsers(dest="family", required=True)
    p_bh = fam_sub.add_parser("bh", parents=[common])
    p_bh.add_argument("--q", type=int, required=True, help="a power of two >= 2")
    p_bh.set_defaults(func=_cmd_family)
    p_ard = fam_sub.add_parser("ard", parents=[common])
    p_ard.add_argument("--n", type=int, required=True)
    p_ard.add_argument("--t", type=int, required=True)
    p_ard.set_defaults(func=_cmd_family)

    p_comp = sub.add_parser("complement", parents=[common],
                            help="complementary design parameters")
    p_comp.add_argument("v", type=int)
    p_comp.add_argument("k", type=int)
    p_comp.add_argument("lam", type=int, metavar="lambda")
    p_comp.add_argument("x", type=int)
    p_comp.add_argument("y", type=int)
    p_comp.set_defaults(func=_cmd_complement)

    p_equiv = sub.add_parser("equivalence", parents=[common],
                             help="verify the inequality-equivalence chain on "
                             "sampled rational tuples")
    p_equiv.add_argument("--seed", type=int, default=42)
    p_equiv.add_argument("--samples", type=int, default=10000)
    p_equiv.add_argument("--integral", action="store_true",
                         help="sample integer tuples with integral b, r, lambda")
    p_equiv.set_defaults(func=_cmd_equivalence)

    p_oracle = sub.add_parser("oracle", parents=[common],
                              help="build explicit designs and verify all "
                              "formulas by brute-force counting")
    p_oracle.add_argument("--export-dir", default=None,
                          help="write the block lists as text files here")
    p_oracle.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BrokenPipeError:
        # Downstream consumer (e.g. head) closed the stream; not an error.
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except CandidateCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OracleMismatchError, NotQuasisymmetricError, NonDesignError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvalidParametersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QsdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
