"""
Command-line front-end.

Inputs are PD codes, corpus entry names, or ``corpus`` for the whole
embedded corpus.  Exit codes: 0 success, 1 a verification failed, 2 bad
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from . import corpus as _corpus
from .diagram import Diagram, parse_pd
from .invariants import (
    METHODS,
    bracket,
    genus_and_span_report,
    jones_polynomial,
    kauffman_bracket_statesum,
    verify_all,
)
from .polynomial import LaurentPoly
from .ribbon import all_A_ribbon_graph, cycles_str, q_polynomial, quasi_trees

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Unusable command-line input."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _read_lines(path: str) -> list[str]:
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _resolve(item: str) -> list[tuple[Diagram, object]]:
    """Diagrams (with their corpus entry, if any) named by one input item."""
    if item == "corpus":
        return [(e.diagram(), e) for e in _corpus.CORPUS.values()]
    try:
        entry = _corpus.get(item)
    except KeyError:
        return [(parse_pd(item), None)]
    return [(entry.diagram(), entry)]


def _inputs(args, single: bool = False) -> list[tuple[Diagram, object]]:
    items = list(getattr(args, "pd", None) or [])
    if getattr(args, "file", None):
        items += _read_lines(args.file)
    out = []
    for item in items:
        out.extend(_resolve(item))
    if single and not items:
        raise InputError("no diagram given")
    return out


def _emit(args, payload, text: str):
    print(dumps(payload) if args.json else text)


def _label(D: Diagram, k: int) -> str:
    return D.name or f"input{k + 1}"


# -- commands --------------------------------------------------------------------

def cmd_bracket(args) -> int:
    methods = METHODS if args.method == "all" else (args.method,)
    records = []
    status = EXIT_OK
    for k, (D, _) in enumerate(_inputs(args, single=True)):
        values = {}
        for m in methods:
            if m == "statesum":
                values[m] = kauffman_bracket_statesum(D, args.limit)
            else:
                D.require_connected()
                values[m] = bracket(D, m, args.limit)
        agree = len(set(values.values())) == 1
        if not agree:
            status = EXIT_FAIL
        records.append({
            "diagram": _label(D, k),
            "brackets": {m: str(p) for m, p in values.items()},
            "agree": agree,
        })
    lines = []
    for r in records:
        if len(r["brackets"]) == 1:
            lines.append(next(iter(r["brackets"].values())))
            continue
        lines.append(f"{r['diagram']}:")
        for m, p in r["brackets"].items():
            lines.append(f"  {m:9s} {p}")
        lines.append("  verdict   " + ("OK" if r["agree"] else "MISMATCH"))
    _emit(args, records, "\n".join(lines))
    return status


def cmd_jones(args) -> int:
    records = []
    for k, (D, _) in enumerate(_inputs(args, single=True)):
        V = jones_polynomial(D, limit=args.limit)
        records.append({"diagram": _label(D, k), "jones": str(V), "variable": V.var})
    lines = [r["jones"] if r["variable"] == "t" else f"{r['jones']}  (A-form, t = A^-4)" for r in records]
    _emit(args, records, "\n".join(lines))
    return EXIT_OK


def cmd_genus(args) -> int:
    records = []
    for k, (D, _) in enumerate(_inputs(args, single=True)):
        D.require_connected()
        rep = genus_and_span_report(D, limit=args.limit)
        rep = {key: (str(v) if not isinstance(v, (int, bool, str, type(None))) else v) for key, v in rep.items()}
        rep["diagram"] = _label(D, k)
        records.append(rep)
    lines = []
    for r in records:
        flag = f"exact ({r['certificate']})" if r["certified"] else "bound only"
        lines.append(
            f"{r['diagram']}: g_T(D)={r['g_T']} |s_A|={r['s_A']} |s_B|={r['s_B']} "
            f"adequate A={r['adequate_A']} B={r['adequate_B']} {flag}"
        )
    _emit(args, records, "\n".join(lines))
    return EXIT_OK


def _ribbon_record(D: Diagram, outer: int | None, k: int) -> dict:
    D.require_connected()
    g = all_A_ribbon_graph(D, outer)
    q = q_polynomial(g)
    return {
        "diagram": _label(D, k),
        "s0": cycles_str(g.s0),
        "s1": cycles_str(g.s1),
        "s2": cycles_str(g.s2, fixed=True),
        "v": g.v,
        "e": g.e,
        "f": g.f,
        "k": g.k,
        "genus": g.genus,
        "q": str(q),
    }


def cmd_ribbon(args) -> int:
    records = [_ribbon_record(D, args.outer_face, k) for k, (D, _) in enumerate(_inputs(args, single=True))]
    lines = []
    for r in records:
        lines += [
            f"{r['diagram']}:",
            f"  s0 = {r['s0']}",
            f"  s1 = {r['s1']}",
            f"  s2 = {r['s2']}",
            f"  v={r['v']} e={r['e']} f={r['f']} k={r['k']} g={r['genus']}",
            f"  q(t) = {r['q']}",
        ]
    _emit(args, records, "\n".join(lines))
    return EXIT_OK


def cmd_quasitrees(args) -> int:
    records = []
    for k, (D, _) in enumerate(_inputs(args, single=True)):
        D.require_connected()
        g = all_A_ribbon_graph(D, args.outer_face)
        qts = sorted(quasi_trees(g), key=lambda Q: (Q.genus, sorted(Q.edges)))
        records.append({
            "diagram": _label(D, k),
            "q": str(q_polynomial(g)),
            "quasi_trees": [{"edges": [e + 1 for e in sorted(Q.edges)], "genus": Q.genus} for Q in qts],
        })
    lines = []
    for r in records:
        lines.append(f"{r['diagram']}: q(t) = {r['q']}")
        for Q in r["quasi_trees"]:
            lines.append(f"  genus {Q['genus']}: edges {Q['edges']}")
    _emit(args, records, "\n".join(lines))
    return EXIT_OK


def _verify_one(job):
    D, expected, limit, seed = job
    exp = None if expected is None else LaurentPoly.parse(expected)
    return verify_all(D, limit=limit, expected_bracket=exp, seed=seed).to_dict()


def cmd_verify(args) -> int:
    jobs = []
    for k, (D, entry) in enumerate(_inputs(args)):
        D.require_connected()
        if D.name is None:
            D = Diagram(D.crossings, D.loops, _label(D, k))
        jobs.append((D, entry.bracket if entry is not None else None, args.limit, args.seed))
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]
    reports.sort(key=lambda r: r["diagram"])
    ok = all(r["passed"] for r in reports)
    lines = []
    for r in reports:
        verdict = "PASS" if r["passed"] else "FAIL " + ",".join(k for k, v in r["identities"].items() if not v)
        lines.append(f"{r['diagram']:18s} c={r['crossings']:<3d} g_T={r['genus']['g_T']}  {verdict}")
    lines.append(f"{sum(r['passed'] for r in reports)}/{len(reports)} diagrams passed")
    _emit(args, {"reports": reports, "passed": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_corpus(args) -> int:
    entries = [_corpus.get(n) for n in _corpus.names(include_split=True)]
    if args.json:
        print(dumps([e.to_dict() for e in entries]))
    else:
        for e in entries:
            c = e.diagram().c
            print(f"{e.name:20s} c={c:<3d} {e.description}")
    return EXIT_OK


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turaev", description="Turaev genus and Kauffman bracket toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("pd", nargs="*", help="PD code, corpus name or 'corpus'")
        p.add_argument("--file", help="file with one PD code per line ('#' comments)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--limit", type=int, default=None, help="crossing limit for enumerations")
        p.add_argument("--outer-face", type=int, default=None, dest="outer_face",
                       help="arc whose left face is the outer face")
        return p

    p = common(sub.add_parser("bracket", help="Kauffman bracket"))
    p.add_argument("--method", choices=(*METHODS, "all"), default="statesum")
    p.set_defaults(func=cmd_bracket)
    common(sub.add_parser("jones", help="Jones polynomial")).set_defaults(func=cmd_jones)
    common(sub.add_parser("genus", help="Turaev genus report")).set_defaults(func=cmd_genus)
    common(sub.add_parser("ribbon", help="all-A ribbon graph")).set_defaults(func=cmd_ribbon)
    common(sub.add_parser("quasitrees", help="quasi-trees of the all-A ribbon graph")).set_defaults(func=cmd_quasitrees)
    p = common(sub.add_parser("verify", help="run every cross-check"))
    p.add_argument("--seed", type=int, default=0, help="seed for random edge orders")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("corpus", help="embedded corpus")
    p.add_argument("action", choices=("list",))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # PD, limit, connectivity and input errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
