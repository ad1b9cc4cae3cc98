"""Command-line interface.

    abelcovers analyze --input cover.json
    abelcovers prym --N 2 --rows "1 1 1 1 0 0 0 0; 1 1 1 1 1 1 1 1" --sigma 1,1
    abelcovers verify-bounds --N 2 --m 3 --rmax 18 --mode torelli
    abelcovers bounds --N 2 --m 6

Input documents are JSON objects with keys ``N``, ``rows`` and optionally
``sigma``, ``t`` (branch point values, as ints or "p/q" strings) and
``seed``.  Exit codes: 0 success, 2 validation error, 3 unmet
precondition, 4 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .cover import CoverSpec, char_table, genus, validate
from .enumeration import (
    Canonicalization,
    EnumerationTask,
    SweepMode,
    enumerate_families,
    star_scan,
    verify_bounds,
)
from .errors import AbelCoverError, EnumerationCapExceeded, ValidationError
from .exactalg import (
    DEFAULT_SEED,
    DEFAULT_SPECIALIZATIONS,
    RankOracle,
    SpecializationAssignment,
    kernel_basis,
)
from .prym import classify_prym, minus_dims, prym_bound_report, prym_spec
from .torelli import (
    WitnessCase,
    bound_report,
    classify_torelli,
    find_witnesses,
    sym2_invariant_dim,
    table_rows,
)

log = logging.getLogger("abelcovers")


def parse_rows(text: str) -> List[List[int]]:
    """Rows as JSON (``[[1,1],[0,1]]``) or as ``"1 1 0; 0 1 1"``."""
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    return [[int(x) for x in row.replace(",", " ").split()] for row in text.split(";") if row.strip()]


def parse_vector(text: str) -> List[int]:
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    return [int(x) for x in text.replace(",", " ").split()]


def load_document(args) -> dict:
    doc = {}
    if getattr(args, "input", None):
        with open(args.input) as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise ValidationError("input document must be a JSON object")
    if getattr(args, "N", None) is not None:
        doc["N"] = args.N
    if getattr(args, "rows", None):
        doc["rows"] = parse_rows(args.rows)
    if getattr(args, "sigma", None):
        doc["sigma"] = parse_vector(args.sigma)
    if getattr(args, "seed", None) is not None:
        doc["seed"] = args.seed
    if "N" not in doc or "rows" not in doc:
        raise ValidationError("a cover needs both N and rows")
    doc.setdefault("seed", DEFAULT_SEED)
    return doc


def _cover_from(doc) -> CoverSpec:
    return validate(doc["N"], doc["rows"])


def _oracle(doc, cover: CoverSpec, k: int) -> RankOracle:
    """Either the document's fixed t, or k seeded random assignments."""
    if doc.get("t") is not None:
        vals = [Fraction(str(v)) for v in doc["t"]]
        if len(vals) != cover.r:
            raise ValidationError(f"t must have r = {cover.r} values")
        return RankOracle(assignments=[SpecializationAssignment(tuple(vals))])
    return RankOracle(seed=int(doc["seed"]), specializations=k)


def cmd_analyze(doc: dict, specializations: int = DEFAULT_SPECIALIZATIONS, rank: bool = True) -> dict:
    cover = _cover_from(doc)
    g = genus(cover)
    report = {
        "input": {"N": doc["N"], "rows": doc["rows"], "seed": doc["seed"],
                  **({"t": doc["t"]} if doc.get("t") is not None else {})},
        "genus": g,
        "group_order": cover.group.order,
        "char_table": list(table_rows(cover)),
        "bounds": bound_report(cover.N, cover.m, d=cover.group.order).to_json(),
    }
    table = char_table(cover)
    report["sym2_invariant_dim"] = sym2_invariant_dim(table)
    if g < 2:
        report["classification"] = {"status": None, "note": "genus < 2: not classified"}
        return report
    cls = classify_torelli(cover)
    report["quadratic_invariant_dim"] = cls.quadratic_dim
    report["condition_star"] = cls.star
    report["classification"] = {
        "status": cls.status.value,
        "witness": cls.witness.to_json() if cls.witness else None,
    }
    if g >= 4:
        ws = find_witnesses(table)
        report["witnesses"] = {
            case.value: next((w.to_json() for w in ws if w.case is case), None) for case in WitnessCase
        }
    else:
        report["witnesses"] = None
        report["note"] = "theorem hypothesis g >= 4 not met; only condition (*) applies"
    if rank:
        report["multiplication_map"] = _oracle(doc, cover, specializations).rank(cover, "full").to_json()
    return report


def cmd_prym(doc: dict, specializations: int = DEFAULT_SPECIALIZATIONS, kernel: bool = False) -> dict:
    if doc.get("sigma") is None:
        raise ValidationError("prym needs sigma")
    cover = _cover_from(doc)
    spec = prym_spec(cover, doc["sigma"])
    sigma = spec.sigma
    mdims = minus_dims(cover, sigma)
    oracle = _oracle(doc, cover, specializations)
    full = oracle.rank(cover, "minus", sigma)
    pcls = classify_prym(cover, sigma, oracle)
    report = {
        "input": {"N": doc["N"], "rows": doc["rows"], "sigma": doc["sigma"], "seed": doc["seed"],
                  **({"t": doc["t"]} if doc.get("t") is not None else {})},
        "cover_genus": spec.cover_genus,
        "b": spec.b,
        "quotient_genus": spec.g,
        "prym_dim": spec.prym_dim,
        "group_order": cover.group.order,
        "minus_dims": [{"row": list(c.row), "alpha": list(c.alpha), "order": c.order, "dim": d,
                        "minus_dim": md} for (c, d), (_, md) in zip(char_table(cover), mdims)],
        "sym2_minus_dim": pcls.sym2_minus_dim,
        "target_dim": pcls.target_dim,
        "multiplication_map": full.to_json(),
        "classification": {
            "status": pcls.status.value,
            "evidence": pcls.evidence.value,
            "witness": pcls.witness.to_json() if pcls.witness else None,
        },
    }
    try:
        report["bounds"] = prym_bound_report(cover.N, cover.m, d=cover.group.order).to_json()
    except AbelCoverError:
        report["bounds"] = None
    w = pcls.witness
    if w is not None:
        pair = [(list(w.cls.row), list((w.paired or w.cls).row))]
        report["witness_restriction"] = oracle.rank(cover, pair, sigma).to_json()
    if kernel:
        quads = kernel_basis(cover, "minus", sigma, oracle.assignments_for(cover.r)[0])
        report["kernel_basis"] = [
            [{"coefficient": str(c), "pair": list(p)} for c, p in q.terms] for q in quads
        ]
    return report


def _task_from(args) -> EnumerationTask:
    r_min = args.r if args.r is not None else args.rmin
    r_max = args.r if args.r is not None else args.rmax
    if r_max is None:
        raise ValidationError("give --r or --rmax")
    return EnumerationTask(
        N=args.N, m=args.m, r_min=r_min, r_max=r_max,
        genus_min=args.genus_min, genus_max=args.genus_max,
        require_involution=args.require_involution,
        canonicalization=(Canonicalization.PERMUTATION_ONLY if args.canon == "perm"
                          else Canonicalization.PERMUTATION_AND_AUTOMORPHISM),
        full_group=not args.subgroups,
        sigma=tuple(parse_vector(args.sigma)) if getattr(args, "sigma", None) else None,
        cap=args.cap,
    )


def _progress(msg: str) -> None:
    log.info("progress: %s", msg)


def cmd_enumerate(args) -> dict:
    task = _task_from(args)
    fams = []
    for cover in enumerate_families(task, resume=args.resume, workers=args.workers, progress=_progress):
        fams.append({**cover.to_json(), "genus": genus(cover), "r": cover.r})
    return {"task": task.to_json(), "count": len(fams), "families": fams}


def cmd_verify_bounds(args) -> dict:
    task = _task_from(args)
    mode = SweepMode(args.mode.upper())
    oracle = RankOracle(args.seed if args.seed is not None else DEFAULT_SEED,
                        args.specializations) if args.oracle else None
    rep = verify_bounds(task, mode, oracle=oracle, workers=args.workers, progress=_progress)
    return rep.to_json()


def cmd_star_scan(args) -> dict:
    task = _task_from(args)
    recs = star_scan(task, workers=args.workers)
    return {"task": task.to_json(), "count": len(recs), "families": [r.to_json() for r in recs]}


def cmd_bounds(args) -> dict:
    rows = []
    for m in range(1, args.m + 1):
        if args.prym:
            b = prym_bound_report(args.N, m, d=args.d)
        else:
            b = bound_report(args.N, m, d=args.d, p=args.p)
        rows.append({"m": m, **b.to_json()})
    return {"N": args.N, "prym": args.prym, "table": rows}


def _csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "char_table" in report:
        w.writerow(["row", "alpha", "order", "dim", "neg_row"])
        for t in report["char_table"]:
            w.writerow([" ".join(map(str, t["row"])), " ".join(map(str, t["alpha"])), t["order"], t["dim"],
                        " ".join(map(str, t["neg_row"]))])
    elif "minus_dims" in report:
        w.writerow(["row", "alpha", "order", "dim", "minus_dim"])
        for t in report["minus_dims"]:
            w.writerow([" ".join(map(str, t["row"])), " ".join(map(str, t["alpha"])), t["order"], t["dim"],
                        t["minus_dim"]])
    elif "families" in report:
        w.writerow(["N", "rows", "genus"])
        for f in report["families"]:
            w.writerow([f["N"], ";".join(" ".join(map(str, r)) for r in f["rows"]), f["genus"]])
    elif "table" in report:
        keys = sorted({k for row in report["table"] for k in row}, key=lambda k: (k != "m", k))
        w.writerow(keys)
        for row in report["table"]:
            w.writerow([row.get(k, "") for k in keys])
    else:
        w.writerow(["key", "value"])
        for k, v in report.items():
            if not isinstance(v, (dict, list)):
                w.writerow([k, v])
        for k, v in report.get("status_counts", {}).items():
            w.writerow([f"status:{k}", v])
        w.writerow(["violations", len(report.get("violations", []))])
    return buf.getvalue()


def _text(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            lines.extend(f"  {json.dumps(x, sort_keys=True)}" for x in v)
        else:
            lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return _csv(report)
    if fmt == "text":
        return _text(report)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelcovers", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def cover_args(sp, sigma=False):
        sp.add_argument("--input", help="JSON cover document")
        sp.add_argument("--N", type=int)
        sp.add_argument("--rows", help='e.g. "2 2 0 0; 0 1 1 2" or JSON')
        if sigma:
            sp.add_argument("--sigma", help='involution, e.g. "1,1"')
        sp.add_argument("--seed", type=int)
        sp.add_argument("--specializations", type=int, default=DEFAULT_SPECIALIZATIONS)
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")

    sp = sub.add_parser("analyze", help="Torelli-side report for one cover")
    cover_args(sp)
    sp.add_argument("--no-rank", action="store_true", help="skip the multiplication-map rank")

    sp = sub.add_parser("prym", help="Prym report for a cover and an involution")
    cover_args(sp, sigma=True)
    sp.add_argument("--kernel", action="store_true", help="include a kernel basis")

    def task_args(sp, mode=False):
        sp.add_argument("--N", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--r", type=int)
        sp.add_argument("--rmin", type=int, default=3)
        sp.add_argument("--rmax", type=int)
        sp.add_argument("--genus-min", type=int)
        sp.add_argument("--genus-max", type=int)
        sp.add_argument("--require-involution", action="store_true")
        sp.add_argument("--subgroups", action="store_true",
                        help="also allow columns generating a proper subgroup")
        sp.add_argument("--canon", choices=["perm", "aut"], default="aut")
        sp.add_argument("--cap", type=int, default=5_000_000)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--sigma")
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
        if mode:
            sp.add_argument("--mode", choices=["torelli", "prym"], default="torelli")
            sp.add_argument("--oracle", action="store_true",
                            help="certify Prym surjectivity by exact rank when b < 6")
            sp.add_argument("--seed", type=int)
            sp.add_argument("--specializations", type=int, default=DEFAULT_SPECIALIZATIONS)

    sp = sub.add_parser("enumerate", help="list equivalence classes of monodromy matrices")
    task_args(sp)
    sp.add_argument("--resume", help="resume token from a capped run")
    sp = sub.add_parser("verify-bounds", help="exhaustive sweep against the witness-free bounds")
    task_args(sp, mode=True)
    sp = sub.add_parser("star-scan", help="families satisfying condition (*)")
    task_args(sp)

    sp = sub.add_parser("bounds", help="print bound tables for witness-free families")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--m", type=int, default=6, help="tabulate m = 1..M")
    sp.add_argument("--d", type=int, help="group order (default N^m)")
    sp.add_argument("--p", type=int, help="odd prime p for G = (Z/p)^m")
    sp.add_argument("--prym", action="store_true")
    sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "analyze":
            report = cmd_analyze(load_document(args), args.specializations, rank=not args.no_rank)
        elif args.command == "prym":
            report = cmd_prym(load_document(args), args.specializations, kernel=args.kernel)
        elif args.command == "enumerate":
            report = cmd_enumerate(args)
        elif args.command == "verify-bounds":
            report = cmd_verify_bounds(args)
        elif args.command == "star-scan":
            report = cmd_star_scan(args)
        else:
            report = cmd_bounds(args)
    except EnumerationCapExceeded as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc),
                          "resume_token": exc.resume_token, "partial_count": len(exc.partial)}),
              file=sys.stderr)
        return exc.exit_code
    except AbelCoverError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except (json.JSONDecodeError, ValueError, KeyError, TypeError, OSError) as exc:
        print(json.dumps({"error": "ValidationError", "message": str(exc)}), file=sys.stderr)
        return 2
    sys.stdout.write(render(report, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
