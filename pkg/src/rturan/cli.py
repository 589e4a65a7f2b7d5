"""Command-line driver: detection, lemma checks, constructions, search, verify.

Exit codes: 0 success (detect: copy found), 1 detect: no copy,
2 usage errors, 3 node budget exhausted, 4 I/O or file-format errors.
"""

from __future__ import annotations

import argparse
import re
import sys
import time

from .graphcore import ParseError, SizeError, parse_pattern, parse_family, Graph, PatternFamily
from .collection import (
    Collection,
    FormatError,
    RangeError,
    RainbowWitness,
    codec_read,
    codec_write,
    find_rainbow_copy,
)
from . import lemmas
from .search import ExtremalQuery, ExtremalResult, extremal_min, extremal_sum, extremal_prod
from . import constructions as cons

SUITES = ("meshulam", "min-theorem", "sum-k3", "prod-matching", "sum-bipartite", "constructions")


def _fmt_witness(w: RainbowWitness) -> str:
    vm = " ".join(f"{p}->{h}" for p, h in enumerate(w.vmap))
    cm = " ".join(f"({a},{b})->{c}" for (a, b), c in zip(w.pattern.edges(), w.cmap))
    return f"vmap {vm}; cmap {cm}" if cm else f"vmap {vm}; cmap -"


def _fmt_matching(m) -> str:
    if m.size == 0:
        return "empty"
    return " ".join(f"({u},{v})#{c}" for (u, v), c in zip(m.edges, m.colors))


def _read_collection(path: str) -> Collection:
    return codec_read(path)


def _parse_params(spec: str) -> dict:
    # split only on commas that start a new k= item, so pattern values
    # with their own commas (K2,2) survive
    out: dict = {}
    if not spec:
        return out
    for item in re.split(r",(?=[A-Za-z_][A-Za-z_0-9]*=)", spec):
        if "=" not in item:
            raise ParseError(f"malformed parameter {item!r} (expected k=v)")
        k, v = item.split("=", 1)
        k = k.strip()
        v = v.strip()
        out[k] = int(v) if v.lstrip("-").isdigit() else v
    return out


# ---------------------------------------------------------------------
# subcommands


def _cmd_detect(args) -> int:
    col = _read_collection(args.collection)
    pattern = parse_pattern(args.pattern)
    w = find_rainbow_copy(col, pattern)
    if w is None:
        print("none")
        return 1
    print(_fmt_witness(w))
    return 0


def _cmd_lemma(args) -> int:
    col = _read_collection(args.collection)
    if args.check == "strong":
        if args.sufficient:
            ev = lemmas.strong_color_sufficient(col, args.color, args.s)
            print(ev.verdict.value)
        else:
            print("strong" if lemmas.strong_color_exact(col, args.color, args.s) else "not-strong")
        return 0
    if args.check == "verystrong":
        ok = lemmas.very_strong_color(col, args.color, args.r, args.m)
        print("very-strong" if ok else "not-very-strong")
        return 0
    if args.check == "m2":
        st = lemmas.m2_structure(col)
        if st.kind == "has_rainbow_m2":
            print(f"rainbow-m2 {_fmt_witness(st.witness)}")
        elif st.kind == "common_vertex":
            print(f"common-vertex {st.vertex}")
        else:
            print(f"all-but-one-small exempt={st.exempt}")
        return 0
    if args.check == "starcover":
        sc = lemmas.star_cover(col, args.vertex, args.p)
        if sc.witness is not None:
            print(f"star {_fmt_witness(sc.witness)}")
        else:
            edges = " ".join(f"({u},{v})" for u, v in sc.cover) or "-"
            exempt = " ".join(str(c) for c in sc.exempt) or "-"
            print(f"cover {edges}; exempt {exempt}")
        return 0
    if args.check == "greedy":
        try:
            m = lemmas.greedy_from_degrees(col, args.q)
        except lemmas.PreconditionViolated as exc:
            print(f"precondition-violated: {exc}")
            return 0
        print(_fmt_matching(m))
        return 0
    raise AssertionError(args.check)


def _cmd_construct(args) -> int:
    params = _parse_params(args.params)
    if args.inner:
        params["inner"] = _read_collection(args.inner)
    col = cons.build(args.id, params)
    codec_write(col, args.out)
    print(f"wrote {args.out} (n={col.n}, t={col.t}, edges={list(col.edge_counts())})")
    return 0


def _run_query(args) -> ExtremalResult:
    family = parse_family(args.forbid)
    query = ExtremalQuery(args.mode, args.n, args.t, family, args.budget)
    fn = {"min": extremal_min, "sum": extremal_sum, "prod": extremal_prod}[args.mode]
    return fn(query)


def _cmd_compute(args) -> int:
    res = _run_query(args)
    print(res.value)
    if args.out and res.witness is not None:
        codec_write(res.witness, args.out)
    return 0 if res.exact else 3


# ---------------------------------------------------------------------
# verify suites


def _row(suite: str, params: str, claimed, computed, status: str, nodes: int, millis: int) -> dict:
    return {
        "suite": suite,
        "params": params,
        "claimed": str(claimed),
        "computed": str(computed),
        "match": status,
        "nodes": str(nodes),
        "millis": str(millis),
    }


def _suite_meshulam(budget) -> list[dict]:
    from math import comb

    fam = lambda s: PatternFamily.from_graphs([Graph.matching(s + 1)])
    rows = []
    for n, s, t in ((3, 1, 2), (4, 1, 2), (4, 1, 3), (5, 1, 2), (5, 2, 3)):
        t0 = time.monotonic()
        claimed = cons.claimed_value("meshulam", {"n": n, "s": s})
        res = extremal_min(ExtremalQuery("min", n, t, fam(s), budget))
        ms = int((time.monotonic() - t0) * 1000)
        # the complete graph on min(n, 2s+1) vertices carries no matching of
        # s+1 disjoint edges in any coloring; below this edge count the
        # split-graph closed form cannot be the optimum (small-host boundary)
        at_most_free = comb(min(n, 2 * s + 1), 2)
        if not res.exact:
            status = "BUDGET"
        elif res.value == claimed:
            status = "match"
        elif claimed < at_most_free:
            status = "boundary"
        else:
            status = "MISMATCH"
        rows.append(_row("meshulam", f"n={n},s={s},t={t}", claimed, res.value, status, res.nodes, ms))
    return rows


def _suite_min_theorem(budget) -> list[dict]:
    rows = []
    t0 = time.monotonic()
    claimed = cons.claimed_value("min.i", {"n": 4, "t": 3, "s": 1, "f": "K3"})
    fam = PatternFamily.from_graphs([parse_pattern("K3"), parse_pattern("M2")])
    res = extremal_min(ExtremalQuery("min", 4, 3, fam, budget))
    ms = int((time.monotonic() - t0) * 1000)
    status = ("match" if res.value == claimed else "MISMATCH") if res.exact else "BUDGET"
    rows.append(_row("min-theorem", "n=4,t=3,s=1,f=K3", claimed, res.value, status, res.nodes, ms))
    return rows


def _suite_sum_k3(budget) -> list[dict]:
    rows = []
    fam = PatternFamily.from_graphs([parse_pattern("K3")])
    for n in (4, 5):
        t0 = time.monotonic()
        claimed = cons.claimed_value("sum.k3", {"n": n, "s": 3})
        res = extremal_sum(ExtremalQuery("sum", n, 3, fam, budget))
        ms = int((time.monotonic() - t0) * 1000)
        status = ("match" if res.value == claimed else "MISMATCH") if res.exact else "BUDGET"
        rows.append(_row("sum-k3", f"n={n},t=3", claimed, res.value, status, res.nodes, ms))
    return rows


def _suite_prod_matching(budget) -> list[dict]:
    rows = []
    fam = PatternFamily.from_graphs([parse_pattern("M2")])
    for n, t in ((4, 2), (4, 3)):
        t0 = time.monotonic()
        claimed = cons.claimed_value("prod.matching", {"n": n, "t": t, "s": 1})
        res = extremal_prod(ExtremalQuery("prod", n, t, fam, budget))
        ms = int((time.monotonic() - t0) * 1000)
        status = ("match" if res.value == claimed else "MISMATCH") if res.exact else "BUDGET"
        rows.append(_row("prod-matching", f"n={n},t={t},s=1", claimed, res.value, status, res.nodes, ms))
    return rows


def _suite_sum_bipartite(budget) -> list[dict]:
    rows = []
    fam = PatternFamily.from_graphs([parse_pattern("P3")])
    t0 = time.monotonic()
    claimed = cons.claimed_value("sum.bipartite", {"n": 5, "f": "P3"})
    res = extremal_sum(ExtremalQuery("sum", 5, 2, fam, budget))
    ms = int((time.monotonic() - t0) * 1000)
    status = ("match" if res.value == claimed else "MISMATCH") if res.exact else "BUDGET"
    rows.append(_row("sum-bipartite", "n=5,t=2,f=P3", claimed, res.value, status, res.nodes, ms))
    return rows


def _suite_constructions(budget) -> list[dict]:
    from .collection import is_rainbow_free

    rows = []
    for cid, params in cons.certification_grid():
        t0 = time.monotonic()
        info = cons.describe(cid, params)
        got = info.collection.edge_counts()
        free = is_rainbow_free(info.collection, info.family)
        ms = int((time.monotonic() - t0) * 1000)
        ok = free and got == info.expected_counts
        pstr = ",".join(f"{k}={v}" for k, v in params.items())
        rows.append(
            _row(
                "constructions",
                f"{cid}[{pstr}]",
                ",".join(map(str, info.expected_counts)),
                ",".join(map(str, got)) + ("/free" if free else "/NOT-FREE"),
                "match" if ok else "MISMATCH",
                0,
                ms,
            )
        )
    return rows


_SUITE_FNS = {
    "meshulam": _suite_meshulam,
    "min-theorem": _suite_min_theorem,
    "sum-k3": _suite_sum_k3,
    "prod-matching": _suite_prod_matching,
    "sum-bipartite": _suite_sum_bipartite,
    "constructions": _suite_constructions,
}


def _exit_for(rows) -> int:
    if any(r["match"] == "BUDGET" for r in rows):
        return 3
    return 1 if any(r["match"] == "MISMATCH" for r in rows) else 0


def _cmd_verify(args) -> int:
    rows = _SUITE_FNS[args.suite](args.budget)
    width = max(len(r["params"]) for r in rows)
    for r in rows:
        print(f"{r['params']:<{width}}  claimed={r['claimed']:<12} computed={r['computed']:<16} {r['match']}")
    return _exit_for(rows)


def _cmd_report(args) -> int:
    rows = []
    for suite in SUITES:
        rows.extend(_SUITE_FNS[suite](args.budget))
    cols = ("suite", "params", "claimed", "computed", "match", "nodes", "millis")
    lines = ["\t".join(cols)]
    lines.extend("\t".join(r[c] for c in cols) for r in rows)
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        sys.stdout.write(text)
    return _exit_for(rows)


# ---------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rturan", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="find a rainbow copy of a pattern in a collection")
    p.add_argument("--collection", required=True)
    p.add_argument("--pattern", required=True)
    p.set_defaults(fn=_cmd_detect)

    p = sub.add_parser("lemma", help="run one of the matching-lemma checks")
    lsub = p.add_subparsers(dest="check", required=True)
    q = lsub.add_parser("strong")
    q.add_argument("--collection", required=True)
    q.add_argument("--color", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--sufficient", action="store_true")
    q.set_defaults(fn=_cmd_lemma)
    q = lsub.add_parser("verystrong")
    q.add_argument("--collection", required=True)
    q.add_argument("--color", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.set_defaults(fn=_cmd_lemma)
    q = lsub.add_parser("m2")
    q.add_argument("--collection", required=True)
    q.set_defaults(fn=_cmd_lemma)
    q = lsub.add_parser("starcover")
    q.add_argument("--collection", required=True)
    q.add_argument("--vertex", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.set_defaults(fn=_cmd_lemma)
    q = lsub.add_parser("greedy")
    q.add_argument("--collection", required=True)
    q.add_argument("--q", type=int, required=True)
    q.set_defaults(fn=_cmd_lemma)

    p = sub.add_parser("construct", help="emit a registered construction as .rcol")
    p.add_argument("--id", required=True, choices=sorted(cons.CONSTRUCTION_IDS))
    p.add_argument("--params", default="")
    p.add_argument("--inner", help="optional .rcol with the inner collection")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("compute", help="exact extremal value by exhaustive search")
    p.add_argument("--mode", required=True, choices=("min", "sum", "prod"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--forbid", required=True, help='forbidden family, e.g. "{K3,M2}"')
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", help="write the witness collection here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_compute)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("report", help="run all suites and emit TSV")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_report)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        ap.error("--workers must be at least 1")
    try:
        return args.fn(args)
    except (ParseError, SizeError, ValueError) as exc:
        if isinstance(exc, (FormatError, RangeError)):
            print(f"error: {exc}", file=sys.stderr)
            return 4
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
