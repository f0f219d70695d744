"""``gfl`` command line: build, verify, decompose and search colorings.

Every command prints one JSON report on stdout (``--format text`` for the
table command is the only human format). Exit codes depend on the verdict
alone: 0 ok or exhausted, 2 violation or witness, 3 budget exceeded, 1 usage
or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import bounds, coloring, constructions, detect, gallai, search
from .errors import GallaiFansError, RainbowPresent

EXIT = {"ok": 0, "exhausted": 0, "violation": 2, "witness": 2, "budget_exceeded": 3}
USAGE_ERROR = 1


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _emit(report: dict) -> int:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT[report["verdict"]]


def _base(args, argv) -> dict:
    return {"command": list(argv)}


def _read(path: str) -> tuple[bytes, coloring.ColoredCompleteGraph]:
    data = Path(path).read_bytes()
    return data, coloring.parse(data)


def cmd_construct(args, rep: dict) -> dict:
    spec = constructions.ConstructionSpec(args.family, args.k, args.n)
    t0 = time.monotonic()
    g = constructions.construct(spec)
    data = coloring.serialize(g)
    if args.output:
        Path(args.output).write_bytes(data)
    rep.update(order=g.n, palette=g.k, fan_order=spec.fan_order, output_digest=digest(data))
    verdict = "ok"
    if args.verify:
        vr = detect.verify(g, spec.fan_order)
        rep["certificates"] = [c.to_json() for c in vr.certificates()]
        verdict = "ok" if vr.ok else "violation"
    if not args.deterministic:
        rep["elapsed_seconds"] = round(time.monotonic() - t0, 6)
    rep["verdict"] = verdict
    return rep


def cmd_verify(args, rep: dict) -> dict:
    data, g = _read(args.input)
    vr = detect.verify(g, args.fan, rainbow=args.rainbow)
    rep.update(
        input_digest=digest(data),
        order=g.n,
        fan_order=args.fan,
        certificates=[c.to_json() for c in vr.certificates()],
        verdict="ok" if vr.ok else "violation",
    )
    return rep


def cmd_partition(args, rep: dict) -> dict:
    data, g = _read(args.input)
    rep["input_digest"] = digest(data)
    try:
        p = gallai.find_gallai_partition(g)
    except RainbowPresent as exc:
        rep.update(verdict="violation", certificates=[exc.certificate.to_json()])
        return rep
    red = gallai.quotient(g, p)
    rep.update(verdict="ok", partition=p.to_json(), reduced=coloring.serialize(red).decode())
    return rep


def cmd_table(args, rep: dict):
    rows = bounds.bound_table(args.family, args.k_max, args.n)
    if args.format == "text":
        lines = [f"{'k':>3}  {'lower':>14}  {'upper':>14}  exact"]
        for r in rows:
            lines.append(f"{r.k:>3}  {r.lower:>14}  {r.upper:>14}  {'yes' if r.exact is not None else 'no'}")
        sys.stdout.write("\n".join(lines) + "\n")
        return None
    rep.update(verdict="ok", family=args.family, n=args.n, rows=[r.to_json() for r in rows])
    return rep


def _budget(args) -> search.SearchBudget:
    return search.SearchBudget(args.budget_nodes, args.timeout_secs)


def _outcome_report(out: search.SearchOutcome, rep: dict, deterministic: bool) -> dict:
    rep["verdict"] = out.verdict
    rep["stats"] = out.stats.to_json(timing=not deterministic)
    detail = dict(out.detail)
    low = detail.pop("lower_witness", None)
    if low is not None:
        detail["lower_witness"] = coloring.serialize(low).decode()
    rep["detail"] = detail
    if out.witness is not None:
        rep["witness"] = coloring.serialize(out.witness).decode()
    return rep


def cmd_search(args, rep: dict) -> dict:
    out = search.ramsey2_decide(
        args.fan,
        args.order,
        _budget(args),
        order=args.edge_order,
        threads=args.threads,
        split_depth=args.split_depth,
        deterministic=args.deterministic,
    )
    rep["budget"] = _budget(args).to_json()
    return _outcome_report(out, rep, args.deterministic)


def cmd_check(args, rep: dict) -> dict:
    kw = {}
    if args.name in search.RAMSEY_VALUES:
        kw = {"order": args.edge_order, "threads": args.threads, "deterministic": args.deterministic}
    out = search.check_claim(args.name, _budget(args), **kw)
    rep["claim"] = args.name
    rep["budget"] = _budget(args).to_json()
    return _outcome_report(out, rep, args.deterministic)


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--timeout-secs", type=float, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--edge-order", choices=("lex", "vertex"), default="lex")
    p.add_argument("--split-depth", type=int, default=4)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gfl", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct", help="build an extremal coloring")
    p.add_argument("--family", required=True, choices=constructions.FAMILIES)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a .gcg file for rainbow triangles and mono fans")
    p.add_argument("input")
    p.add_argument("--fan", type=int, required=True)
    p.add_argument("--rainbow", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="Gallai partition of a .gcg file")
    p.add_argument("input")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("table", help="closed-form bounds")
    p.add_argument("--family", required=True, choices=("f2", "f2prime", "f3", "fn", "ramsey"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("search", help="exhaustive 2-color Ramsey search")
    ssub = p.add_subparsers(dest="what", required=True)
    r = ssub.add_parser("ramsey")
    r.add_argument("--fan", type=int, required=True)
    r.add_argument("--order", type=int, required=True)
    _add_budget(r)
    r.set_defaults(func=cmd_search)

    p = sub.add_parser("check", help="re-prove a finite claim")
    csub = p.add_subparsers(dest="what", required=True)
    c = csub.add_parser("claim")
    c.add_argument("--name", required=True, choices=search.CLAIMS)
    _add_budget(c)
    c.set_defaults(func=cmd_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    try:
        rep = args.func(args, _base(args, argv))
    except (GallaiFansError, ValueError, OSError) as exc:
        sys.stderr.write(f"gfl: error: {exc}\n")
        return USAGE_ERROR
    if rep is None:
        return 0
    return _emit(rep)


if __name__ == "__main__":
    sys.exit(main())
