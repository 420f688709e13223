"""Command-line front end.

Exit codes: 0 success, 1 failures found, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import barriers as bar
from .embeddings import (embed_finq, embed_h, embed_j, embed_prod, finq_target, h_target,
                         j_base, prod_target)
from .errors import DeskBQOError, ParseError
from .hset import HOrder
from .notations import Eps, EpsOrder, ESeq, OmegaPowOrder, enumerate_eps
from .qo import Chain, OrderSpec, Product
from .search import find_bad_array, is_good_array, threshold
from .suites import SUITES, run_suite
from .syntax import parse_elem, parse_order, parse_term
from .tc import TCElem, TCOrder
from .trees import TreeOrder

VERDICTS = {(True, True): "EQUIV", (True, False): "LE", (False, True): "GE",
            (False, False): "INCOMPARABLE"}


class UsageError(Exception):
    pass


# -- structures and files ---------------------------------------------------

def resolve_structure(name: str, omega: int | None, base: str | None, strong: bool) -> OrderSpec:
    """Named structures (tc, eps, omegaseq, hterm, tree) or an order expression."""
    if name in ("tc", "eps", "omegaseq"):
        if omega is None:
            raise UsageError(f"{name} needs --omega")
        return {"tc": TCOrder, "eps": EpsOrder, "omegaseq": OmegaPowOrder}[name](omega)
    if name in ("hterm", "tree"):
        b = parse_order(base or "omega")
        return HOrder(b) if name == "hterm" else TreeOrder(b, strong)
    return parse_order(name)


def load_block(ref: str | dict, root: Path = Path(".")) -> bar.TruncatedBlock:
    """A block from a JSON file, an inline JSON object or ``uniform:N:k``."""
    if isinstance(ref, dict):
        return bar.TruncatedBlock.from_json(ref)
    if ref.startswith("uniform:"):
        try:
            _, n, k = ref.split(":")
            return bar.TruncatedBlock.uniform(int(n), int(k))
        except ValueError as exc:
            raise UsageError(f"expected uniform:N:k, got {ref!r}") from exc
    if ref.lstrip().startswith("{"):
        return bar.TruncatedBlock.from_json(json.loads(ref))
    return bar.TruncatedBlock.from_json(json.loads((root / ref).read_text()))


def _seq_key(s) -> str:
    return ",".join(map(str, s))


def _parse_key(k: str) -> tuple[int, ...]:
    return tuple(int(x) for x in k.split(",")) if k.strip() else ()


def load_array(path: str) -> bar.ArrayTable:
    p = Path(path)
    data = json.loads(p.read_text())
    B = load_block(data["block"], p.parent)
    T = parse_order(data["target"])
    values = {_parse_key(k): parse_elem(T, v) for k, v in data["values"].items()}
    return bar.ArrayTable(B, T, values)


def array_json(g: bar.ArrayTable) -> dict:
    cells = g.cells()
    out = {"block": g.block.to_json(), "target": str(g.target),
           "values": {_seq_key(s): g.target.format_elem(g.values[s]) for s in cells}}
    if g.selector:
        out["selector"] = g.selector
        out["depth"] = g.depth
        out["levels"] = {_seq_key(s): g.level[s] for s in cells}
    return out


# -- commands ---------------------------------------------------------------

def _least_omega(grammar: str, texts: list[str]) -> int:
    # smallest chain size containing every index mentioned in the terms
    top = -1
    for text in texts:
        val = parse_term(grammar, text)
        stack = [val]
        while stack:
            v = stack.pop()
            if isinstance(v, TCElem):
                top = max(top, v.index if v.kind else -1)
            elif isinstance(v, Eps):
                top = max(top, v.alpha)
            elif isinstance(v, ESeq):
                stack.extend(v.children)
            else:
                top = max([top, *v])
    return top + 1


def cmd_compare(a) -> tuple[dict, int]:
    omega = a.omega
    if omega is None and a.structure in ("tc", "eps", "omegaseq"):
        omega = _least_omega(a.structure, [a.a, a.b])
    spec = resolve_structure(a.structure, omega, a.base, a.strong)
    x, y = parse_elem(spec, a.a), parse_elem(spec, a.b)
    verdict = VERDICTS[(spec.leq(x, y), spec.leq(y, x))]
    return {"structure": str(spec), "a": a.a, "b": a.b, "verdict": verdict}, 0


def cmd_enumerate(a) -> tuple[dict, int]:
    spec = resolve_structure(a.structure, a.omega, a.base, a.strong)
    bound = a.bound if a.bound is not None else 3
    if isinstance(spec, EpsOrder) and a.children is not None:
        xs = enumerate_eps(spec.omega, bound, a.children)
    else:
        xs = list(spec.elements(bound))
    return {"structure": str(spec), "bound": bound, "count": len(xs),
            "elements": [spec.format_elem(x) for x in xs]}, 0


def _params(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        k, sep, v = item.partition("=")
        if not sep or not v.isdigit():
            raise UsageError(f"parameters are key=value with a natural value, got {item!r}")
        out[k] = int(v)
    return out


def cmd_embed(a) -> tuple[dict, int]:
    p = _params([kv for item in a.params for kv in item.split(",") if kv])
    need = {"h": ["alpha"], "finq": ["n"], "prod": ["omega"], "j": ["omega"]}[a.map]
    missing = [k for k in need if k not in p]
    if missing:
        raise UsageError(f"--map {a.map} needs --params {' '.join(k + '=...' for k in missing)}")
    if a.map == "h":
        src = OmegaPowOrder(p["alpha"])
        target, image = h_target(p["alpha"]), embed_h(p["alpha"], parse_elem(src, a.term))
    elif a.map == "finq":
        if not a.term.isdigit():
            raise ParseError("expected an element index", a.term, 0)
        target, image = finq_target(), embed_finq(p["n"], int(a.term))
    elif a.map == "prod":
        w = p["omega"]
        pair = parse_elem(Product(Chain(w), Chain(w)), a.term)
        target, image = prod_target(w), embed_prod(w, pair)
    else:
        shifted = bool(p.get("shifted", 0))
        t = parse_elem(EpsOrder(p["omega"]), a.term)
        target, image = HOrder(j_base(p["omega"], shifted)), embed_j(p["omega"], t, shifted)
    return {"map": a.map, "term": a.term, "target": str(target), "image": target.format_elem(image)}, 0


def cmd_barrier(a) -> tuple[dict, int]:
    B = load_block(a.block)
    if a.action == "star":
        r = bar.star_construction(B)
        star = r.B_star
        return {"block": B.to_json(), "B_star": star.to_json(), "is_barrier": bar.is_barrier(star),
                "T": sorted(map(list, r.T)), "T_star": sorted(map(list, r.T_star)),
                "descriptions_agree": r.agree}, (0 if r.agree else 1)
    P, parts = bar.power_block(B, a.n)
    return {"block": B.to_json(), "n": a.n, "power": P.to_json(), "is_block": bar.is_block(P),
            "decompositions": {_seq_key(s): [list(x) for x in parts[s]] for s in sorted(parts)}}, 0


def cmd_lift(a) -> tuple[dict, int]:
    f = load_array(a.array)
    g = bar.lift_array(f, a.selector, a.depth)
    return array_json(g), 0


def cmd_check(a) -> tuple[dict, int]:
    f = load_array(a.array)
    if a.selector:
        g = bar.lift_array(f, a.selector, a.depth or 1)
        rep = bar.badness_check(g)
        terminal = a.terminal or {"tree": "stable"}.get(a.selector, "urelement")
        Bp, incomplete = bar.extract_block(g, terminal)
        rep["extracted"] = {"terminal": terminal, "elements": [list(s) for s in sorted(Bp.elements)],
                            "incomplete": [list(s) for s in incomplete]}
    else:
        good = is_good_array(f)
        rep = {"cells": len(f.values), "dichotomy": [],
               "good_pairs": [{"level": 1, "s": list(s), "t": list(t)} for s, t in good]}
    return rep, (1 if rep["good_pairs"] or rep["dichotomy"] else 0)


def cmd_search(a) -> tuple[dict, int]:
    T = parse_order(a.target)
    if a.action == "bad-array":
        if not a.block:
            raise UsageError("search bad-array needs --block")
        return find_bad_array(load_block(a.block), T, a.mode, a.workers, a.limit), 0
    if a.arity is None or a.max is None:
        raise UsageError("search threshold needs --arity and --max")
    return threshold(a.arity, T, a.max, a.workers), 0


def cmd_suite(a) -> tuple[dict, int]:
    if a.action == "list":
        return {"suites": [{"name": s.name, "summary": s.summary, "bounds": s.defaults}
                           for s in SUITES.values()]}, 0
    if not a.name:
        raise UsageError("suite run needs a suite name")
    if a.name not in SUITES:
        raise UsageError(f"unknown suite {a.name!r}; try 'suite list'")
    bounds = _params(a.bounds + (a.bound_kv or []))
    try:
        rep = run_suite(a.name, bounds, a.workers)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    return rep, (1 if rep["failure_count"] else 0)


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="enumeration bound")

    p = argparse.ArgumentParser(prog="deskbqo", description="Finite checks for quasi orders, "
                                "barriers and bad arrays.")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", default=False)
    p.add_argument("--bound", type=int, default=None)
    sub = p.add_subparsers(dest="command", required=True)

    def structure_args(sp):
        sp.add_argument("structure", help="tc, eps, omegaseq, hterm, tree or an order expression")
        sp.add_argument("--omega", type=int, help="chain size for tc, eps and omegaseq "
                        "(compare: defaults to the least size fitting both terms)")
        sp.add_argument("--base", help="atom order for hterm and tree (default omega)")
        sp.add_argument("--strong", action="store_true", help="strong tree embeddability")

    sp = sub.add_parser("compare", parents=[common], help="compare two terms")
    structure_args(sp)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(fn=cmd_compare)

    sp = sub.add_parser("enumerate", parents=[common], help="list elements within a bound")
    structure_args(sp)
    sp.add_argument("--children", type=int, help="children cap for eps terms")
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("embed", parents=[common], help="apply an embedding")
    sp.add_argument("--map", required=True, choices=["h", "finq", "prod", "j"])
    sp.add_argument("--params", action="append", default=[], metavar="KEY=VALUE[,...]")
    sp.add_argument("term")
    sp.set_defaults(fn=cmd_embed)

    sp = sub.add_parser("barrier", parents=[common], help="star construction or block powers")
    sp.add_argument("action", choices=["star", "power"])
    sp.add_argument("block", help="block file, inline JSON or uniform:N:k")
    sp.add_argument("--n", type=int, default=2)
    sp.set_defaults(fn=cmd_barrier)

    sp = sub.add_parser("lift", parents=[common], help="lift an array along block powers")
    sp.add_argument("array")
    sp.add_argument("--selector", required=True, choices=sorted(bar.SELECTORS))
    sp.add_argument("--depth", type=int, required=True)
    sp.set_defaults(fn=cmd_lift)

    sp = sub.add_parser("check", parents=[common], help="badness of an array or its lift")
    sp.add_argument("what", choices=["badness"])
    sp.add_argument("array")
    sp.add_argument("--selector", choices=sorted(bar.SELECTORS))
    sp.add_argument("--depth", type=int)
    sp.add_argument("--terminal", choices=bar.TERMINALS)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("search", parents=[common], help="bad-array search and thresholds")
    sp.add_argument("action", choices=["bad-array", "threshold"])
    sp.add_argument("--block")
    sp.add_argument("--target", required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--first", dest="mode", action="store_const", const="first")
    mode.add_argument("--all", dest="mode", action="store_const", const="all")
    mode.add_argument("--count", dest="mode", action="store_const", const="count")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--arity", type=int)
    sp.add_argument("--max", type=int)
    sp.set_defaults(fn=cmd_search, mode="first")

    sp = sub.add_parser("suite", parents=[common], help="invariant suites")
    sp.add_argument("action", choices=["run", "list"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("bounds", nargs="*", metavar="KEY=VALUE")
    sp.add_argument("--set", dest="bound_kv", action="append", metavar="KEY=VALUE")
    sp.set_defaults(fn=cmd_suite)
    return p


def _text(cmd: str, rep: dict) -> str:
    if cmd == "compare":
        return rep["verdict"]
    if cmd == "enumerate":
        return "\n".join(rep["elements"])
    if cmd == "embed":
        return rep["image"]
    if cmd == "suite" and "suites" in rep:
        return "\n".join(f"{s['name']:<16} {s['summary']}" for s in rep["suites"])
    if cmd == "suite":
        head = f"{rep['suite']}: {rep['cases']} cases, {rep['failure_count']} failures, {rep['elapsed_ms']:.0f} ms"
        return "\n".join([head] + [f"  {f}" for f in rep["failures"]])
    return json.dumps(rep, indent=2)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep, code = args.fn(args)
    except (UsageError, DeskBQOError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(rep, indent=2, sort_keys=True) if args.json else _text(args.command, rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
