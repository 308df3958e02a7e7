"""flagforge: buildings, Steinberg modules, group homology and named
verification suites, from the command line.

Reports are byte-identical across runs with the same configuration: no
timestamps, sorted keys, fixed column order.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import dlss, formats
from .buildings import BuildingKind, betti_profile, build
from .errors import BudgetExceeded, FlagforgeError, UnknownSuite
from .ffield import Subspace, field_make
from .ghomology import bar_homology, stable_elements_homology
from .glgroup import SubgroupSpec, group_make
from .steinberg import top_homology_module
from .suites import SUITES, run_suite


def _field_of_q(q: int):
    return formats._field_from_q(q)


def _parse_subspace(field, n, spec: str) -> Subspace:
    rows = [[int(x) for x in row.split(",")] for row in spec.split(";")]
    return Subspace(field, n, np.array(rows, dtype=field.dtype))


def _dump(path, text):
    if path == "-" or path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_group(args) -> int:
    field = _field_of_q(args.q)
    w = _parse_subspace(field, args.n, args.w) if args.w else None
    l = _parse_subspace(field, args.n, args.l) if args.l else None
    blocks = tuple(int(x) for x in args.blocks.split(",")) if args.blocks else None
    group = group_make(SubgroupSpec(field, args.n, args.kind, w=w, l=l, blocks=blocks))
    payload = {
        "q": args.q,
        "n": args.n,
        "kind": args.kind,
        "order": len(group),
        "generators": [formats.write_matrix(field, group.elements[i]) for i in group.generators],
    }
    if args.elements:
        payload["elements"] = [
            formats.write_matrix(field, group.elements[i]) for i in range(len(group))
        ]
    _dump(args.out, json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return 0


def cmd_betti(args) -> int:
    with open(args.complex) as fh:
        text = fh.read()
    complex_ = formats.parse_complex(text, args.coeff)
    profile = complex_.betti()
    top = max(d for d in complex_.dims if complex_.dims[d]) if complex_.dims else -1
    payload = {
        "dims": [complex_.dims.get(d, 0) for d in range(-1, top + 1)],
        "betti": [profile[d] for d in range(-1, top + 1)],
    }
    _dump(args.json, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def cmd_building(args) -> int:
    field = _field_of_q(args.q)
    w = _parse_subspace(field, args.n, args.w) if args.w else None
    v = _parse_subspace(field, args.n, args.v) if args.v else None
    kind = BuildingKind(field, args.n, args.kind, w=w, v=v)
    poset = build(kind)
    profile = betti_profile(kind, args.coeff)
    edges = []
    for i in range(len(poset)):
        m = poset.up[i]
        while m:
            low = m & -m
            edges.append([i, low.bit_length() - 1])
            m ^= low
    payload = {
        "kind": args.kind,
        "q": args.q,
        "n": args.n,
        "elements": len(poset),
        "edges": sorted(edges),
        "betti": {str(d): b for d, b in sorted(profile.betti.items())},
    }
    _dump(args.out, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def cmd_steinberg(args) -> int:
    field = _field_of_q(args.q)
    from .glgroup import full_gl

    w = _parse_subspace(field, args.n, args.w) if args.w else None
    kind = BuildingKind(field, args.n, args.which, w=w)
    if args.which in ("rel_tits", "rel_split", "dual_rel_tits"):
        group = group_make(SubgroupSpec(field, args.n, "pres_w", w=w))
    else:
        group = full_gl(field, args.n)
    module = top_homology_module(kind, group, args.coeff)
    coeff_field = field_make(args.coeff)
    payload = {
        "which": args.which,
        "q": args.q,
        "n": args.n,
        "coeff": args.coeff,
        "dim": module.dim,
        "group_order": len(group),
        "generator_actions": [
            formats.write_matrix(coeff_field, module.action(i).astype(np.uint8))
            for i in group.generators
        ],
    }
    _dump(args.out, json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return 0


def cmd_ghom(args) -> int:
    with open(args.group) as fh:
        group = formats.group_from_json(fh.read())
    with open(args.module) as fh:
        module = formats.module_from_json(fh.read())
    if module.group.index != group.index:
        raise FlagforgeError("module was built over a different group")
    module.verify()
    if args.method == "bar":
        rep = bar_homology(module.group, module, args.max_degree)
    else:
        assert module.dim == 1 and all(
            module.action(i)[0, 0] == 1 for i in module.group.generators
        ), "the stable-elements method needs trivial coefficients"
        rep = stable_elements_homology(module.group, module.p, args.max_degree)
    payload = {"method": rep.method, "dims": {str(d): v for d, v in sorted(rep.dims.items())}}
    _dump(args.json, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def _dl_context(args) -> dlss.DLContext:
    if not getattr(args, "gen", None):
        return dlss.standard_context()
    gens = {}
    for spec in args.gen:
        parts = spec.split(":")
        name = parts[0]
        rank, deg = int(parts[1]), int(parts[2])
        fil = int(parts[3]) if len(parts) > 3 else 0
        gens[name] = (rank, deg, fil)
    return dlss.DLContext(gens)


def cmd_dl(args) -> int:
    if args.dl_command == "table":
        ctx = _dl_context(args)
        table = dlss.dl_generators_table(ctx, args.max_rank, args.max_degree)
        rows = [
            {"gen": k[0], "word": list(k[1]), "rank": ctx.grading(k)[0], "degree": ctx.grading(k)[1]}
            for k in table
        ]
        _dump(args.json, json.dumps(rows, sort_keys=True) + "\n")
    elif args.dl_command == "apply":
        ctx = _dl_context(args)
        poly = dlss.parse_expression(ctx, args.expr)
        out = dlss.dl_apply(args.s, poly)
        _dump(args.json, json.dumps({"input": repr(poly), "s": args.s, "result": repr(out)}) + "\n")
    elif args.dl_command == "ss-e3":
        rep = dlss.e3_vanishing(args.max_rank, args.max_degree)
        payload = {
            "ok": rep["ok"],
            "below_line": rep["below_line"],
            "e3": {f"{k[0]},{k[1]}": v for k, v in sorted(rep["e3"].items())},
        }
        _dump(args.json, json.dumps(payload, sort_keys=True) + "\n")
        return 0 if rep["ok"] else 1
    elif args.dl_command == "tor":
        ring = dlss.quillen_ring(args.q, args.ell, args.max_rank, args.max_degree)
        tor = dlss.tor_bigraded(ring, args.ell, args.max_rank, args.max_degree)["dims"]
        want = dlss.torsion_closed_form(args.q, args.ell, args.max_rank, args.max_degree)
        payload = {
            "tor": {f"{k[0]},{k[1]}": v for k, v in sorted(tor.items())},
            "closed_form": {f"{k[0]},{k[1]}": v for k, v in sorted(want.items())},
            "match": tor == want,
        }
        _dump(args.json, json.dumps(payload, sort_keys=True) + "\n")
        return 0 if tor == want else 1
    return 0


def _load_config(path):
    cfg = configparser.ConfigParser()
    if path:
        cfg.read(path)
    out = {}
    for section in cfg.sections():
        sec = {}
        for key, value in cfg.items(section):
            try:
                sec[key] = json.loads(value)
            except json.JSONDecodeError:
                sec[key] = value
        out[section] = sec
    return out


def _json_sanitize(value):
    if isinstance(value, dict):
        return {str(k): _json_sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_json_sanitize(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return repr(value)


def cmd_verify(args) -> int:
    names = args.suites
    if names == ["all"]:
        names = [n for n in SUITES if args.heavy or n != "stabilization"]
    for name in names:
        if name not in SUITES:
            raise UnknownSuite(f"no suite named {name!r}; known: {sorted(SUITES)} or 'all'")
    config = _load_config(args.config)

    def run_one(name):
        cfg = dict(config.get(name, {}))
        cfg.setdefault("heavy", args.heavy)
        start = time.monotonic()
        rep = run_suite(name, cfg)
        rep["seconds"] = round(time.monotonic() - start, 3)
        return rep

    reports = []
    budget = args.budget
    spent = 0.0
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(run_one, n) for n in names]
            reports = [f.result() for f in futures]  # fixed submission order
    else:
        for name in names:
            if budget and spent > budget:
                reports.append({"suite": name, "checks": [], "passed": False,
                                "counts": {"total": 0, "failed": 0}, "skipped": "budget"})
                continue
            rep = run_one(name)
            spent += rep["seconds"]
            reports.append(rep)

    lines = []
    rows = []
    for rep in reports:
        for c in rep.get("checks", []):
            record = {
                "suite": rep["suite"],
                "check": c["check"],
                "statement": c["statement"],
                "params": _json_sanitize(c["params"]),
                "expected": _json_sanitize(c["expected"]),
                "got": _json_sanitize(c["got"]),
                "pass": bool(c["pass"]),
            }
            lines.append(json.dumps(record, sort_keys=True))
            rows.append(record)
    if args.json:
        _dump(args.json, "\n".join(lines) + ("\n" if lines else ""))
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "check", "statement", "params", "expected", "got", "pass"])
        for r in rows:
            writer.writerow(
                [r["suite"], r["check"], r["statement"], json.dumps(r["params"], sort_keys=True),
                 json.dumps(r["expected"], sort_keys=True), json.dumps(r["got"], sort_keys=True),
                 "pass" if r["pass"] else "FAIL"]
            )
        _dump(args.csv, buf.getvalue())

    all_pass = True
    budget_hit = False
    for rep in reports:
        counts = rep["counts"]
        if rep.get("skipped"):
            status = "SKIPPED (budget)"
            budget_hit = True
        else:
            status = "pass" if rep["passed"] else f"FAIL ({counts['failed']}/{counts['total']})"
        all_pass = all_pass and rep.get("passed", False)
        secs = rep.get("seconds")
        stamp = f" [{secs}s]" if args.timings and secs is not None else ""
        print(f"{rep['suite']:18s} {counts['total']:4d} checks  {status}{stamp}")
    print("overall:", "pass" if all_pass else "FAIL")
    if budget_hit:
        raise BudgetExceeded("per-run budget exhausted; partial report emitted")
    return 0 if all_pass else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagforge")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="enumerate a matrix group")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--kind", required=True, choices=SubgroupSpec.KINDS)
    g.add_argument("--w", help="subspace rows, e.g. 1,0,0;0,1,0")
    g.add_argument("--l", help="line row, e.g. 1,0,0")
    g.add_argument("--blocks", help="comma separated block sizes")
    g.add_argument("--elements", action="store_true", help="emit the full element table")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_group)

    b = sub.add_parser("betti", help="Betti numbers of a plain-text complex")
    b.add_argument("--complex", required=True)
    b.add_argument("--coeff", type=int, default=2)
    b.add_argument("--json", default="-")
    b.set_defaults(func=cmd_betti)

    bl = sub.add_parser("building", help="build a subspace/splitting poset")
    bl.add_argument("--q", type=int, required=True)
    bl.add_argument("--n", type=int, required=True)
    bl.add_argument("--kind", required=True, choices=BuildingKind.NAMES)
    bl.add_argument("--w")
    bl.add_argument("--v")
    bl.add_argument("--coeff", type=int, default=2)
    bl.add_argument("--out", default="-")
    bl.set_defaults(func=cmd_building)

    st = sub.add_parser("steinberg", help="top homology module with its action")
    st.add_argument("--q", type=int, required=True)
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--which", required=True, choices=BuildingKind.NAMES)
    st.add_argument("--w")
    st.add_argument("--coeff", type=int, required=True)
    st.add_argument("--out", default="-")
    st.set_defaults(func=cmd_steinberg)

    gh = sub.add_parser("ghom", help="group homology from group/module files")
    gh.add_argument("--group", required=True)
    gh.add_argument("--module", required=True)
    gh.add_argument("--max-degree", type=int, required=True)
    gh.add_argument("--method", choices=("bar", "stable"), default="bar")
    gh.add_argument("--json", default="-")
    gh.set_defaults(func=cmd_ghom)

    dl = sub.add_parser("dl", help="symbolic operation engine")
    dls = dl.add_subparsers(dest="dl_command", required=True)
    t = dls.add_parser("table")
    t.add_argument("--max-rank", type=int, required=True)
    t.add_argument("--max-degree", type=int, required=True)
    t.add_argument("--gen", action="append", help="name:rank:degree[:filtration]")
    t.add_argument("--json", default="-")
    a = dls.add_parser("apply")
    a.add_argument("--s", type=int, required=True)
    a.add_argument("--expr", required=True, help="e.g. 'Q[2,1](a)*a^2 + Q[1](a)^3'")
    a.add_argument("--gen", action="append")
    a.add_argument("--json", default="-")
    e3 = dls.add_parser("ss-e3")
    e3.add_argument("--max-rank", type=int, required=True)
    e3.add_argument("--max-degree", type=int, required=True)
    e3.add_argument("--json", default="-")
    tor = dls.add_parser("tor")
    tor.add_argument("--q", type=int, required=True)
    tor.add_argument("--ell", type=int, required=True)
    tor.add_argument("--max-rank", type=int, required=True)
    tor.add_argument("--max-degree", type=int, required=True)
    tor.add_argument("--json", default="-")
    dl.set_defaults(func=cmd_dl)

    v = sub.add_parser("verify", help="run named verification suites")
    v.add_argument("suites", nargs="+", help="suite names or 'all'")
    v.add_argument("--config", help="INI file with one section per suite")
    v.add_argument("--json", help="JSON-lines report path")
    v.add_argument("--csv", help="CSV report path")
    v.add_argument("--heavy", action="store_true", help="include the long checks")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--budget", type=float, default=1800.0, help="seconds per run")
    v.add_argument("--timings", action="store_true")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FlagforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
