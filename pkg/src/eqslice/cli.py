"""Command line front end: ``eqslice <subcommand> ...``.

Exit status is 0 on success or an inconclusive result, 2 when an
obstruction fires (so scripts can grep verdicts), and 1 on errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .checkerboard import (
    PresentationError,
    goeritz,
    load_presentation,
    parse_presentation,
    reduced_incidence,
    validate,
)
from .embeddings import enumerate_embeddings
from .lens import conjecture_scan, lens_d_invariants, orbit_structure_check, qsq_condition
from .obstructions import (
    InvalidPresentation,
    Level,
    SigmaAction,
    det_obstruction,
    full_pipeline,
)

EXIT_OK, EXIT_ERROR, EXIT_OBSTRUCTED = 0, 1, 2

CATEGORIES = ("Rib", "Det", "Spinc", "Unk")


@dataclass(frozen=True)
class KnotRecord:
    name: str
    determinant: int
    category: str
    equivariantly_slice: bool | None = None
    presentation_file: str | None = None

    def __post_init__(self):
        if self.determinant <= 0 or self.determinant % 2 == 0:
            raise ValueError(f"{self.name}: determinant must be odd and positive")
        if self.category not in CATEGORIES:
            raise ValueError(f"{self.name}: unknown category {self.category!r}")


def data_path(name: str) -> Path:
    return Path(str(resources.files("eqslice") / "data" / name))


def resolve_input(arg: str) -> Path:
    """A path on disk, or the name of a bundled data file (``12a1105``)."""
    p = Path(arg)
    if p.exists():
        return p
    for cand in (arg, f"{arg}.json"):
        b = data_path(cand)
        if b.exists():
            return b
    raise FileNotFoundError(f"no such file or bundled dataset: {arg}")


def load_table() -> list[KnotRecord]:
    raw = json.loads(data_path("table16.json").read_text(encoding="utf-8"))
    return [KnotRecord(**r) for r in raw]


def _fmt_matrix(m, indent="  ") -> str:
    width = max((len(str(x)) for row in m for x in row), default=1)
    return "\n".join(indent + " ".join(str(x).rjust(width) for x in row) for row in m)


def _factor_text(pairs) -> str:
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in pairs) or "1"


def _fraction(x: Fraction) -> str:
    return str(x)


def emit(report: dict[str, Any], as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(text)


# -- subcommands ----------------------------------------------------------

def cmd_validate(args) -> int:
    p = load_presentation(resolve_input(args.file))
    report = validate(p)
    out = {"name": p.name, "n": p.n, **report.to_dict()}
    lines = [f"{p.name}: n = {p.n}, {len(p.edges_plus)} edges per side"]
    for c in report.checks:
        lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}" + ("" if c.passed else f"  {c.witness}"))
    lines.append("valid" if report.ok else "INVALID")
    emit(out, args.json, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_ERROR


def obstruct_report(path: Path, workers: int = 1) -> dict[str, Any]:
    p = load_presentation(path)
    verdict = full_pipeline(p, workers=workers)
    return {"input": {"name": p.name, "n": p.n, "file": path.name}, "verdict": verdict.to_dict()}


def _verdict_text(report: dict[str, Any]) -> str:
    v = report["verdict"]
    ev = v["evidence"]
    lines = []
    if report.get("input"):
        lines.append(f"{report['input']['name']}: Goeritz form (n = {report['input']['n']})")
        lines.append(_fmt_matrix(ev["goeritz"]))
    stage = ev.get("determinant_stage", v)
    det = stage["evidence"]
    lines.append(f"determinant {det['determinant']} = {_factor_text(det['factorization'])}: {stage['level']}")
    if "embeddings" in ev:
        lines.append(f"lattice embeddings: {len(ev['embeddings'])}")
        for e in ev["embeddings"]:
            lines.append(f"  embedding {e['index']} (|S| = {e['metabolizer_size']}, "
                         f"{'invariant' if e['invariant'] else 'not invariant'})")
            lines.append(_fmt_matrix(e["matrix"], "    "))
            if not e["invariant"]:
                w = e["witness"]
                lines.append(f"    class {tuple(w['class'])} -> {tuple(w['image'])} leaves S")
    lines.append(f"verdict: {v['level']}")
    return "\n".join(lines)


def cmd_obstruct(args) -> int:
    if args.det is not None:
        verdict = det_obstruction(args.det)
        report = {"input": None, "verdict": verdict.to_dict()}
    elif args.file:
        report = obstruct_report(resolve_input(args.file), workers=args.threads)
    else:
        raise SystemExit("obstruct needs a presentation file or --det")
    emit(report, args.json, _verdict_text(report))
    return EXIT_OBSTRUCTED if Level(report["verdict"]["level"]).obstructed else EXIT_OK


def table_report(workers: int = 1) -> dict[str, Any]:
    rows = []
    for rec in load_table():
        v = det_obstruction(rec.determinant)
        row: dict[str, Any] = {
            **{k: val for k, val in asdict(rec).items() if val is not None},
            "determinant_stage": v.level.value,
            "agrees": (v.level is Level.DET_OBSTRUCTED) == (rec.category == "Det"),
        }
        if rec.presentation_file:
            row["pipeline"] = full_pipeline(
                load_presentation(data_path(rec.presentation_file)), workers=workers
            ).level.value
        rows.append(row)
    summary = Counter(r["determinant_stage"] for r in rows)
    return {"records": rows, "summary": dict(sorted(summary.items())),
            "all_agree": all(r["agrees"] for r in rows)}


def cmd_table(args) -> int:
    report = table_report(args.threads)
    lines = [f"{'name':<10} {'det':>5}  {'category':<8} {'determinant stage':<18} pipeline"]
    for r in report["records"]:
        lines.append(f"{r['name']:<10} {r['determinant']:>5}  {r['category']:<8} "
                     f"{r['determinant_stage']:<18} {r.get('pipeline', '-')}")
    lines.append(", ".join(f"{k}: {v}" for k, v in report["summary"].items()))
    lines.append("matches the published categories" if report["all_agree"] else "MISMATCH with published categories")
    emit(report, args.json, "\n".join(lines))
    return EXIT_OK if report["all_agree"] else EXIT_ERROR


def cmd_embeddings(args) -> int:
    p = load_presentation(resolve_input(args.file))
    q = goeritz(p)
    embs = enumerate_embeddings(q, workers=args.threads)
    report = {"name": p.name, "goeritz": [list(r) for r in q.matrix],
              "embeddings": [[list(r) for r in e.matrix] for e in embs]}
    lines = [f"{p.name}: {len(embs)} embedding(s) up to signed row permutation"]
    for k, e in enumerate(embs):
        lines.append(f"embedding {k}:")
        lines.append(_fmt_matrix(e.matrix))
    emit(report, args.json, "\n".join(lines))
    return EXIT_OK if embs else EXIT_OBSTRUCTED


def cmd_sigma_orbits(args) -> int:
    p = load_presentation(resolve_input(args.file))
    report_v = validate(p)
    if not report_v.ok:
        raise InvalidPresentation(report_v)
    act = SigmaAction.from_presentation(p)
    orbits = act.orbits()
    sizes = Counter(len(o) for o in orbits)
    report = {
        "name": p.name,
        "classes": act.lattice.order,
        "cycle_type": {str(k): v for k, v in sorted(sizes.items())},
        "orbits": [[list(c.rep) for c in o] for o in orbits],
    }
    text = [f"{p.name}: {act.lattice.order} Spin^c classes"]
    text += [f"  {v} orbit(s) of size {k}" for k, v in sorted(sizes.items())]
    if args.verbose:
        text += ["  " + " -> ".join(str(c.rep) for c in o) for o in orbits]
    emit(report, args.json, "\n".join(text))
    return EXIT_OK


def cmd_lens(args) -> int:
    terms = lens_d_invariants(args.p, args.q)
    check = orbit_structure_check(terms)
    report = {
        "p": args.p,
        "q": args.q,
        "d_invariants": [_fraction(x) for x in terms],
        "orbit_check": check.ok,
        "reason": check.reason,
        "q_squared_is_minus_one": qsq_condition(args.p, args.q),
    }
    text = [f"L({args.p},{args.q}) correction terms:",
            "  " + ", ".join(_fraction(x) for x in terms),
            f"orbit check: {check.ok}" + (f" ({check.reason})" if check.reason else ""),
            f"q^2 = -1 mod p: {report['q_squared_is_minus_one']}"]
    emit(report, args.json, "\n".join(text))
    return EXIT_OK if check.ok else EXIT_OBSTRUCTED


def cmd_scan(args) -> int:
    rep = conjecture_scan(args.p_max, workers=args.threads)
    report = {
        "p_max": rep.p_max,
        "pairs": rep.pairs,
        "orbit_condition_holds": sum(r.orbit_ok for r in rep.rows),
        "qsq_condition_holds": sum(r.qsq for r in rep.rows),
        "proven_direction_violations": [list(x) for x in rep.proven_direction_violations],
        "counterexamples": [list(x) for x in rep.counterexamples],
        "orientation_failures": [list(x) for x in rep.orientation_failures],
    }
    if args.all:
        report["rows"] = [[r.p, r.q, r.orbit_ok, r.qsq] for r in rep.rows]
    text = []
    if args.all:
        text += [f"{r.p} {r.q} orbit={int(r.orbit_ok)} qsq={int(r.qsq)}" for r in rep.rows]
    text += [
        f"scanned {rep.pairs} pairs (p, q) with p odd, 3 <= p <= {rep.p_max}",
        f"orbit condition holds for {report['orbit_condition_holds']}, q^2 = -1 for {report['qsq_condition_holds']}",
        f"q^2 = -1 but orbit check fails: {len(rep.proven_direction_violations)}",
        f"orbit check holds but q^2 != -1: {len(rep.counterexamples)}",
        f"orientation check failures: {len(rep.orientation_failures)}",
    ]
    emit(report, args.json, "\n".join(text))
    bad = rep.disagreements or rep.orientation_failures
    return EXIT_OBSTRUCTED if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker processes")

    parser = argparse.ArgumentParser(
        prog="eqslice",
        description="Obstructions to equivariant slice disks for strongly negative amphichiral knots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a checkerboard presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("obstruct", parents=[common], help="run the full obstruction pipeline")
    s.add_argument("file", nargs="?")
    s.add_argument("--det", type=int, help="determinant-only mode")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("table", parents=[common], help="determinant test on the 16 slice SNA knots")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("embeddings", parents=[common], help="lattice embeddings of the Goeritz form")
    s.add_argument("file")
    s.set_defaults(func=cmd_embeddings)

    s = sub.add_parser("sigma-orbits", parents=[common], help="cycle structure of the lifted symmetry")
    s.add_argument("file")
    s.add_argument("-v", "--verbose", action="store_true", help="list every orbit")
    s.set_defaults(func=cmd_sigma_orbits)

    s = sub.add_parser("lens", parents=[common], help="correction terms of L(p, q)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.set_defaults(func=cmd_lens)

    s = sub.add_parser("scan", parents=[common], help="check the lens space conjecture up to p_max")
    s.add_argument("p_max", type=int)
    s.add_argument("--all", action="store_true", help="print every (p, q) row")
    s.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidPresentation as exc:
        print(f"error: {exc}", file=sys.stderr)
        for c in exc.report.failures():
            print(f"  {c.name}: {c.witness}", file=sys.stderr)
        return EXIT_ERROR
    except (PresentationError, FileNotFoundError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
