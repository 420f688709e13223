"""Registry of exhaustive invariant suites.

A suite is split into shards that do not depend on the worker count; shard
results are concatenated in shard order, so a report is identical for any
number of workers apart from ``elapsed_ms``.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Any, Callable

import numpy as np

from . import barriers as bar
from .embeddings import (embed_finq, embed_h, embed_j, embed_prod, finq_target, h_target,
                         j_base, prod_target)
from .errors import ContractViolation
from .hset import HOrder, HSet, Ur, _leq as leq_h, enumerate_hterms, select_witness_h, supp
from .notations import (EMPTY, Eps, EpsOrder, OmegaPowOrder, _prec, _preceq, enumerate_eps,
                        enumerate_omega, inv_d, inv_e, prec_omega, validate_eps)
from .qo import Antichain, Chain, Omega2Dot, OrderSpec, Pf, Product, Sum, suborder, witness_p
from .search import brute_force, find_bad_array
from .syntax import format_term, parse_elem, parse_order, parse_term
from .tc import COPY1, COPY2, E, TCElem, TCOrder, all_elements, chi, copy1, copy2, leq_tc, rank_o
from .trees import (QTree, TreeOrder, _leq_s, _leq_w, embed_s2w, enumerate_trees, s2w_target,
                    tree_step)

MAX_LISTED = 50


@dataclass(frozen=True)
class Suite:
    name: str
    summary: str
    defaults: dict
    run: Callable[[dict, Any], tuple[int, list[str]]]
    plan: Callable[[dict], list] = field(default=lambda b: [None])


SUITES: dict[str, Suite] = {}


def suite(name: str, summary: str, plan: Callable[[dict], list] | None = None, **defaults):
    def register(fn):
        SUITES[name] = Suite(name, summary, defaults, fn, plan or (lambda b: [None]))
        return fn
    return register


def _shard(args):
    name, bounds, shard = args
    return SUITES[name].run(bounds, shard)


def run_suite(name: str, bounds: dict | None = None, workers: int = 1) -> dict:
    """Run a registered suite; ``bounds`` override the suite defaults."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    s = SUITES[name]
    unknown = set(bounds or {}) - set(s.defaults)
    if unknown:
        raise KeyError(f"suite {name!r} has no bound(s) {sorted(unknown)}")
    b = {**s.defaults, **(bounds or {})}
    t0 = time.perf_counter()
    jobs = [(name, b, shard) for shard in s.plan(b)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_shard, jobs))
    else:
        results = [_shard(j) for j in jobs]
    cases = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    return {"suite": name, "bounds": b, "cases": cases, "failure_count": len(failures),
            "failures": failures[:MAX_LISTED],
            "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}


def _rows(n: int, parts: int = 8) -> list[tuple[int, int]]:
    step = max(1, -(-n // parts))
    return [(lo, min(n, lo + step)) for lo in range(0, n, step)]


# -- matrix helpers ---------------------------------------------------------

def _matrix(rel, xs) -> np.ndarray:
    return np.array([[bool(rel(a, b)) for b in xs] for a in xs], dtype=bool).reshape(len(xs), len(xs))


def _quasi_order_failures(M: np.ndarray, xs, fmt, label: str) -> tuple[int, list[str]]:
    n = len(xs)
    out = [f"{label}: {fmt(xs[i])} is not below itself" for i in np.flatnonzero(~M.diagonal())]
    Mi = M.astype(np.int64)
    bad = ((Mi @ Mi) > 0) & ~M
    for i, k in np.argwhere(bad):
        j = int(np.flatnonzero(M[i] & M[:, k])[0])
        out.append(f"{label}: {fmt(xs[i])} <= {fmt(xs[j])} <= {fmt(xs[k])} but not {fmt(xs[i])} <= {fmt(xs[k])}")
    return n + n ** 3, out


# -- qo-core ----------------------------------------------------------------

LAW_SPECS = [
    "chain:3", "antichain:3", "omega", "table:4[0<1,0<2,0<3,1<3,2<3]", "table:3[0<1,1<0]",
    "chain:2+antichain:2", "chain:2*antichain:2", "(chain:2+antichain:1)*chain:2",
    "Pf(antichain:2)", "Pf(chain:2)", "Pf(chain:2+antichain:1)", "Pf(Pf(antichain:2))",
    "w2.(chain:2)", "w2.(table:2[0<1,1<0])", "1+(antichain:2)", "1+(Pf(antichain:2))",
    "Pf(table:3[0<1,1<0])",
]


@suite("qo-laws", "quasi-order laws of every combinator, with coordinate checks for sums and products",
       plan=lambda b: list(range(len(LAW_SPECS))), bound=3)
def _qo_laws(b, i):
    spec = parse_order(LAW_SPECS[i])
    xs = list(spec.elements(b["bound"]))
    fmt = spec.format_elem
    out = []
    if len(set(xs)) != len(xs):
        out.append(f"{spec}: enumeration repeats an element")
    for x in xs:
        if not spec.is_valid(x):
            out.append(f"{spec}: enumerated {x!r} is malformed")
    M = _matrix(spec.leq, xs)
    cases, fails = _quasi_order_failures(M, xs, fmt, str(spec))
    out += fails
    n = len(xs)
    if isinstance(spec, Sum):
        for a in range(n):
            for c in range(n):
                if xs[a][0] != xs[c][0] and M[a, c]:
                    out.append(f"{spec}: cross-tag {fmt(xs[a])} <= {fmt(xs[c])}")
        cases += n * n
    if isinstance(spec, Product):
        for a in range(n):
            for c in range(n):
                want = spec.left.leq(xs[a][0], xs[c][0]) and spec.right.leq(xs[a][1], xs[c][1])
                if want != M[a, c]:
                    out.append(f"{spec}: {fmt(xs[a])} vs {fmt(xs[c])} disagrees with coordinates")
        cases += n * n
    return cases, out


PF_SPECS = ["Pf(antichain:3)", "Pf(chain:3)", "Pf(chain:2+antichain:2)", "Pf(table:3[0<1,1<0])"]


@suite("pf-witness", "finite-powerset witness contract on every non-comparable pair",
       plan=lambda b: list(range(len(PF_SPECS))), bound=3)
def _pf_witness(b, i):
    spec = parse_order(PF_SPECS[i])
    xs = list(spec.elements(b["bound"]))
    le = spec.base.leq
    cases, out = 0, []
    for a in xs:
        for c in xs:
            if spec.leq(a, c):
                continue
            cases += 1
            x = witness_p(spec, a, c)
            ok = [y for y in a if not any(le(y, z) for z in c)]
            if x not in a or any(le(x, z) for z in c) or x != ok[0]:
                out.append(f"{spec}: witness {x!r} for {spec.format_elem(a)} vs {spec.format_elem(c)}")
    return cases, out


# -- hset -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _h_universe(atoms: int, height: int, children: int):
    Q = Antichain(atoms)
    return Q, enumerate_hterms(Q, atoms, height, children)


@suite("hset-order", "quasi-order laws for hereditarily finite sets",
       atoms=3, height=2, children=3)
def _hset_order(b, _):
    Q, xs = _h_universe(b["atoms"], b["height"], b["children"])
    H = HOrder(Q)
    M = _matrix(lambda x, y: leq_h(Q, x, y), xs)
    return _quasi_order_failures(M, xs, H.format_elem, str(H))


@suite("hset-lemmas", "support monotonicity, child below parent, singleton support, witness selection",
       plan=lambda b: _rows(len(_h_universe(b["atoms"], b["height"], b["children"])[1])),
       atoms=3, height=2, children=3)
def _hset_lemmas(b, rows):
    Q, xs = _h_universe(b["atoms"], b["height"], b["children"])
    fmt = HOrder(Q).format_elem
    cases, out = 0, []
    for x in xs[rows[0]:rows[1]]:
        sx = supp(x)
        if isinstance(x, HSet):
            for c in x.children:
                cases += 1
                if not leq_h(Q, c, x):
                    out.append(f"child {fmt(c)} is not below {fmt(x)}")
        if len(sx) == 1:
            cases += 1
            q = Ur(sx[0])
            if not (leq_h(Q, x, q) and leq_h(Q, q, x)):
                out.append(f"{fmt(x)} has support {{{sx[0]}}} but is not equivalent to it")
        for y in xs:
            cases += 1
            le = leq_h(Q, x, y)
            if le:
                sy = supp(y)
                if not all(any(Q.leq(p, r) for r in sy) for p in sx):
                    out.append(f"{fmt(x)} <= {fmt(y)} but supports are not ordered")
            elif isinstance(x, HSet):
                w = select_witness_h(Q, x, y)
                if isinstance(y, Ur):
                    ok = [c for c in x.children if not leq_h(Q, c, y)]
                else:
                    ok = [c for c in x.children if not any(leq_h(Q, c, z) for z in y.children)]
                if not ok or w != ok[0]:
                    out.append(f"witness {fmt(w)} for {fmt(x)} vs {fmt(y)} is not the least qualifying child")
    return cases, out


# -- tc ---------------------------------------------------------------------

@suite("tc-order", "partial-order laws together with both membership characterizations", omega=5)
def _tc_order(b, _):
    xs = all_elements(b["omega"])
    M = _matrix(leq_tc, xs)
    cases, out = _quasi_order_failures(M, xs, str, "tc")
    for i, a in enumerate(xs):
        for j, c in enumerate(xs):
            cases += 1
            if i != j and M[i, j] and M[j, i]:
                out.append(f"antisymmetry fails for {a}, {c}")
            via_members = all(any(leq_tc(x, y) for y in E(c)) for x in E(a))
            if via_members != M[i, j]:
                out.append(f"{a} vs {c}: order {M[i, j]} but member comparison {via_members}")
            if (E(a) <= E(c)) != M[i, j]:
                out.append(f"{a} vs {c}: order {M[i, j]} but member inclusion {E(a) <= E(c)}")
    w = b["omega"]
    for al in range(w):
        for be in range(w):
            cases += 1
            for mk in (copy1, copy2):
                if leq_tc(mk(al), mk(be)) != (al <= be):
                    out.append(f"copy embedding fails at {mk(al)} vs {mk(be)}")
            if leq_tc(copy1(al), copy2(be)) or leq_tc(copy2(be), copy1(al)):
                out.append(f"{copy1(al)} and {copy2(be)} are comparable")
    return cases, out


@suite("tc-chi", "witness map contract and rank descent", omega=5)
def _tc_chi(b, _):
    xs = all_elements(b["omega"])
    cases, out = 0, []
    for a in xs:
        for c in xs:
            if leq_tc(a, c):
                continue
            cases += 1
            x = chi(a, c)
            if x not in E(a) or any(leq_tc(x, y) for y in E(c)):
                out.append(f"chi({a},{c}) = {x} breaks the witness contract")
        if a.kind != 0:
            for x in E(a):
                cases += 1
                if not rank_o(x) < rank_o(a):
                    out.append(f"rank of member {x} is not below rank of {a}")
    return cases, out


# -- notations ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _eps_universe(omega: int, lh: int, children: int):
    return enumerate_eps(omega, lh, children)


@suite("eps-linearity", "strict linearity of the epsilon-term order", omega=2, lh=5, children=2)
def _eps_linearity(b, _):
    xs = _eps_universe(b["omega"], b["lh"], b["children"])
    n = len(xs)
    out = []
    for t in xs:
        try:
            validate_eps(t, b["omega"])
        except Exception as exc:  # noqa: BLE001 - reported as a failure
            out.append(f"enumerated invalid term {t}: {exc}")
    if len(set(xs)) != n:
        out.append("enumeration repeats a term")
    P = _matrix(_prec, xs)
    for i in np.flatnonzero(P.diagonal()):
        out.append(f"{xs[i]} precedes itself")
    eq = np.eye(n, dtype=bool)
    tri = P.astype(np.int8) + P.T.astype(np.int8) + eq.astype(np.int8)
    for i, j in np.argwhere(tri != 1):
        if i < j:
            out.append(f"trichotomy fails for {xs[i]}, {xs[j]}")
    Pi = P.astype(np.int64)
    for i, k in np.argwhere(((Pi @ Pi) > 0) & ~P):
        out.append(f"transitivity fails from {xs[i]} to {xs[k]}")
    if not all(P[i, i + 1] for i in range(n - 1)):
        out.append("enumeration is not in ascending order")
    return n + n * n + n ** 3, out


@suite("eps-lemmas", "leading-epsilon index and depth are monotone; epsilon lower bounds",
       omega=2, lh=5, children=2, shift=0)
def _eps_lemmas(b, _):
    xs = _eps_universe(b["omega"], b["lh"], b["children"])
    k = b["shift"]
    cases, out = 0, []
    for s in xs:
        es, ds = inv_e(s, k), inv_d(s)
        for t in xs:
            if not _preceq(s, t):
                continue
            cases += 1
            et, dt = inv_e(t, k), inv_d(t)
            if es > et or (es == et and ds > dt):
                out.append(f"{s} <= {t} but (e, d) = ({es},{ds}) vs ({et},{dt})")
        if s != EMPTY:
            for beta in range(es + 1 - k):
                cases += 1
                if not _preceq(Eps(beta), s):
                    out.append(f"eps{beta} is not below {s} although e = {es}")
    return cases, out


@suite("omega-pow", "linearity of the omega^alpha order against tuple comparison", size=3, length=4)
def _omega_pow(b, _):
    xs = enumerate_omega(b["size"], b["length"])
    out = []
    expected = sum(comb(b["size"] + k - 1, k) for k in range(b["length"] + 1))
    if len(set(xs)) != len(xs) or len(xs) != expected:
        out.append(f"enumeration has {len(xs)} terms ({len(set(xs))} distinct), expected {expected}")
    for s in xs:
        for t in xs:
            if prec_omega(s, t) != (s <= t):
                out.append(f"{list(s)} vs {list(t)} disagrees with lexicographic comparison")
            if not (prec_omega(s, t) or prec_omega(t, s)):
                out.append(f"{list(s)} and {list(t)} are incomparable")
            if s != t and prec_omega(s, t) and prec_omega(t, s):
                out.append(f"{list(s)} and {list(t)} are equivalent but distinct")
    return len(xs) ** 2, out


# -- trees ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _tree_universe(labels: int, nodes: int):
    Q = Antichain(labels)
    return Q, enumerate_trees(Q, nodes, labels)


@suite("tree-orders", "strong and weak embeddability laws and the descent selector", labels=2, nodes=4)
def _tree_orders(b, _):
    Q, xs = _tree_universe(b["labels"], b["nodes"])
    fmt = TreeOrder(Q).format_elem
    S = _matrix(lambda x, y: _leq_s(Q, x, y), xs)
    W = _matrix(lambda x, y: _leq_w(Q, x, y), xs)
    c1, out = _quasi_order_failures(S, xs, fmt, "strong")
    c2, fails = _quasi_order_failures(W, xs, fmt, "weak")
    out += fails
    cases = c1 + c2
    for i, j in np.argwhere(S & ~W):
        out.append(f"{fmt(xs[i])} strongly but not weakly below {fmt(xs[j])}")
    for a in xs:
        for c in a.children:
            cases += 1
            if not _leq_s(Q, c, a):
                out.append(f"child {fmt(c)} is not strongly below {fmt(a)}")
        for o in xs:
            cases += 1
            r = tree_step(Q, a, o)
            if not _leq_w(Q, r, a):
                out.append(f"step({fmt(a)}, {fmt(o)}) = {fmt(r)} is not weakly below the parent")
            bad = [c for c in a.children if not _leq_w(Q, c, o)]
            if (bad and r != bad[0]) or (not bad and r != a):
                out.append(f"step({fmt(a)}, {fmt(o)}) = {fmt(r)} is not the first child outside")
    return cases + len(xs) ** 2, out


@suite("tree-s2w", "strong order equals weak order of the guarded images",
       plan=lambda b: list(range(1, b["labels"] + 1)), labels=2, nodes=4)
def _tree_s2w(b, labels):
    Q, xs = _tree_universe(labels, b["nodes"])
    T = s2w_target(Q)
    imgs = [embed_s2w(Q, x) for x in xs]
    fmt = TreeOrder(Q).format_elem
    out = []
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            if _leq_s(Q, x, y) != _leq_w(T, imgs[i], imgs[j]):
                out.append(f"Q=antichain:{labels}: {fmt(x)} vs {fmt(y)} strong {_leq_s(Q, x, y)}, images weak {not _leq_s(Q, x, y)}")
    return len(xs) ** 2, out


# -- embeddings -------------------------------------------------------------

@suite("embed-h", "omega^alpha into Pf(Pf(omega+alpha)) reflects the order", alpha=3, length=3)
def _embed_h(b, _):
    al = b["alpha"]
    xs = enumerate_omega(al, b["length"])
    P = h_target(al)
    imgs = [embed_h(al, s) for s in xs]
    out = [f"image of {list(s)} is malformed" for s, im in zip(xs, imgs) if not P.is_valid(im)]
    for s, hs in zip(xs, imgs):
        for t, ht_ in zip(xs, imgs):
            if P.leq(hs, ht_) and not prec_omega(s, t):
                out.append(f"images of {list(s)}, {list(t)} are ordered but the terms are not")
    return len(xs) ** 2, out


@suite("embed-finq", "images of an n-element order are pairwise incomparable", n=5)
def _embed_finq(b, _):
    P = finq_target()
    cases, out = 0, []
    for n in range(1, b["n"] + 1):
        imgs = [embed_finq(n, k) for k in range(n)]
        for k, a in enumerate(imgs):
            if not P.is_valid(a):
                out.append(f"n={n}: image of {k} is malformed")
            for l, c in enumerate(imgs):
                cases += 1
                if k != l and (P.leq(a, c) or P.leq(c, a)):
                    out.append(f"n={n}: images of {k} and {l} are comparable")
    return cases, out


@suite("embed-prod", "omega x omega into Pf(omega+omega) reflects the order", omega=3)
def _embed_prod(b, _):
    w = b["omega"]
    P = prod_target(w)
    xs = [(a, c) for a in range(w) for c in range(w)]
    out = []
    for p in xs:
        for q in xs:
            if P.leq(embed_prod(w, p), embed_prod(w, q)) and not (p[0] <= q[0] and p[1] <= q[1]):
                out.append(f"images of {p}, {q} are ordered but the pairs are not")
    return len(xs) ** 2, out


@lru_cache(maxsize=None)
def _j_universe(omega: int, lh: int, children: int, shift: int):
    xs = _eps_universe(omega, lh, children)
    return xs, [embed_j(omega, t, bool(shift)) for t in xs]


@suite("embed-j", "epsilon terms into hereditarily finite sets reflects the order",
       plan=lambda b: _rows(len(_eps_universe(b["omega"], b["lh"], b["children"]))),
       omega=2, lh=4, children=2, shift=0)
def _embed_j(b, rows):
    xs, imgs = _j_universe(b["omega"], b["lh"], b["children"], b["shift"])
    Q = j_base(b["omega"], bool(b["shift"]))
    out = []
    lo, hi = rows
    for i in range(lo, hi):
        for j in range(len(xs)):
            if leq_h(Q, imgs[i], imgs[j]) and not _preceq(xs[i], xs[j]):
                out.append(f"images of {xs[i]}, {xs[j]} are ordered but the terms are not")
    return (hi - lo) * len(xs), out


@suite("embed-j-atoms", "an urelement <alpha,m,0> below an image is bounded by (e, d)",
       omega=2, lh=4, children=2, shift=0)
def _embed_j_atoms(b, _):
    k = b["shift"]
    xs, imgs = _j_universe(b["omega"], b["lh"], b["children"], k)
    Q = j_base(b["omega"], bool(k))
    W = Omega2Dot(Chain(b["omega"] + k))
    top = max(inv_d(t) for t in xs) + 2
    cases, out = 0, []
    for t, im in zip(xs, imgs):
        for al in range(b["omega"] + k):
            for m in range(top):
                cases += 1
                if leq_h(Q, Ur((0, (al, m, 0))), im) and not W.leq((al, m, 0), (inv_e(t, k), inv_d(t), 0)):
                    out.append(f"<{al},{m},0> is below the image of {t} but exceeds (e, d)")
    return cases, out


# -- barriers ---------------------------------------------------------------

@suite("triangle", "successor relation against a brute-force witness search", base=8, length=4)
def _triangle(b, _):
    N, L = b["base"], b["length"]
    seqs = bar.all_seqs(N, L, 1)
    witnessed = set()
    for x in bar.all_seqs(N, L + 1, 1):
        for i in range(1, len(x) + 1):
            for j in range(1, len(x)):
                witnessed.add((x[:i], x[1:1 + j]))
    cases, out = 0, []
    for s in seqs:
        for t in seqs:
            cases += 1
            got = bar.triangle(s, t)
            if got != ((s, t) in witnessed):
                out.append(f"{list(s)} vs {list(t)}: relation {got}, witness search {not got}")
            if len(s) == len(t):
                want = s[1:] == t[:-1] if len(s) > 1 else s[0] < t[0]
                if got != want:
                    out.append(f"{list(s)} vs {list(t)}: equal-length characterization fails")
    return cases, out


@lru_cache(maxsize=None)
def _blocks(base: int, maxlen: int):
    return [B for N in range(1, base + 1) for L in range(1, maxlen + 1) for B in bar.all_blocks(N, L)]


@suite("power-block", "powers of barriers are blocks with unique decompositions",
       base=4, maxlen=2, power=3)
def _power_block(b, _):
    cases, out = 0, []
    for B in _blocks(b["base"], b["maxlen"]):
        if not bar.is_barrier(B):
            continue
        for n in range(1, b["power"] + 1):
            cases += 1
            try:
                P, parts = bar.power_block(B, n)
            except ContractViolation as exc:
                out.append(f"{sorted(B.elements)} power {n}: {exc}")
                continue
            probs = bar.block_problems(P)
            if probs:
                out.append(f"{sorted(B.elements)} power {n}: {probs[0]}")
            for s in P.elements:
                cases += 1
                found = bar.decompositions(B, s)
                if found != [parts[s]] or len(parts[s]) != n or n > len(s):
                    out.append(f"{sorted(B.elements)} power {n}: {list(s)} has decompositions {found}")
    return cases, out


@suite("star", "the dominated closure of a block is a barrier above it", base=4, maxlen=2)
def _star(b, _):
    cases, out = 0, []
    for B in _blocks(b["base"], b["maxlen"]):
        cases += 1
        r = bar.star_construction(B)
        tag = sorted(B.elements)
        probs = bar.barrier_problems(r.B_star)
        if probs:
            out.append(f"{tag}: closure is not a barrier: {probs[0]}")
        for t in r.B_star.elements:
            if B.prefix_in(t) is None:
                out.append(f"{tag}: {list(t)} has no prefix in the block")
        if not r.agree:
            out.append(f"{tag}: leaf and local descriptions differ")
    return cases, out


# -- lifting ----------------------------------------------------------------

def _seeded(kind: str, index: int):
    """Seeded bad arrays: (array, selector, depth, terminal)."""
    if kind == "tc":
        if index == 0:
            B, T = bar.TruncatedBlock.uniform(3, 1), TCOrder(3)
            return bar.ArrayTable(B, T, {(i,): copy1(2 - i) for i in range(3)}), 3
        if index == 1:
            vals = [TCElem(k, a) for a in (3, 2, 1) for k in (COPY1, COPY2)]
            B = bar.TruncatedBlock.uniform(6, 1)
            return bar.ArrayTable(B, TCOrder(4), {(i,): v for i, v in enumerate(vals)}), 6
        T = TCOrder(2 if index == 2 else 3)
        pool = [TCElem(k, a) for k in (COPY1, COPY2) for a in range(T.omega)]
        B = bar.TruncatedBlock.uniform(6, 2) if index == 2 else bar.TruncatedBlock.uniform(7, 3)
        return _from_search(B, T, pool), 4
    if kind == "hset":
        if index == 0:
            terms = [t for t in _eps_universe(2, 3, 2)][::-1][:5]
            Q = j_base(2)
            B = bar.TruncatedBlock.uniform(5, 1)
            return bar.ArrayTable(B, HOrder(Q), {(i,): embed_j(2, t) for i, t in enumerate(terms)}), 5
        Q = Antichain(2)
        pool = [t for t in enumerate_hterms(Q, 2, 1, 2) if _hereditarily_nonempty(t)]
        return _from_search(bar.TruncatedBlock.uniform(5, 2), HOrder(Q), pool), 4
    Q = Antichain(2)
    return _from_search(bar.TruncatedBlock.uniform(5, 2), TreeOrder(Q), enumerate_trees(Q, 2, 2)), 4


def _hereditarily_nonempty(t) -> bool:
    # the empty set lies below everything, so it never occurs in a bad array
    # on an infinite barrier; truncation boundaries would otherwise admit it
    return isinstance(t, Ur) or (len(t.children) > 0 and all(map(_hereditarily_nonempty, t.children)))


def _from_search(B, spec: OrderSpec, pool: list):
    rep = find_bad_array(B, suborder(spec, pool))
    if not rep["exists"]:
        raise ContractViolation(f"no bad array on the seed block into {spec}")
    vals = {tuple(map(int, k.split(","))): pool[int(v)] for k, v in rep["witness"].items()}
    return bar.ArrayTable(B, spec, vals)


LIFT_CASES = [("tc", 0), ("tc", 1), ("tc", 2), ("tc", 3), ("hset", 0), ("hset", 1), ("tree", 0)]
DEFAULT_TERMINAL = {"tc": "urelement", "hset": "urelement", "tree": "stable"}


@suite("lift-badness", "lifted arrays stay bad and descend until they freeze",
       plan=lambda b: list(range(len(LIFT_CASES))), extra_depth=0)
def _lift_badness(b, i):
    kind, index = LIFT_CASES[i]
    f, depth = _seeded(kind, index)
    depth += b["extra_depth"]
    tag = f"{kind}#{index}"
    out = []
    from .search import is_good_array
    if is_good_array(f):
        return 1, [f"{tag}: seed array is good"]
    g = bar.lift_array(f, kind, depth)
    rep = bar.badness_check(g)
    out += [f"{tag}: good pair {p['s']} -> {p['t']} at level {p['level']}" for p in rep["good_pairs"]]
    out += [f"{tag}: {d['problem']} at {d['s']}" for d in rep["dichotomy"]]
    Bp, _ = bar.extract_block(g, DEFAULT_TERMINAL[kind])
    for s, t in bar.restriction_good_pairs(g, Bp):
        out.append(f"{tag}: extracted block has good pair {list(s)} -> {list(t)}")
    if kind == "hset":
        Bh, incomplete = bar.extract_block(g, "height")
        if not incomplete:
            for s in Bh.elements:
                if not isinstance(g.values[s], Ur):
                    out.append(f"{tag}: height cut at {list(s)} is not an urelement")
    return rep["cells"], out


O_CASES = [(0, 1), (3, 3), (2, 2)]


@suite("o-descent", "maximal dominated rank drops along the tree below the extracted block",
       plan=lambda b: list(range(len(O_CASES))))
def _o_descent(b, i):
    index, k = O_CASES[i]
    f, depth = _seeded("tc", index)
    g = bar.lift_array(f, "tc", depth)
    probs = bar.o_descent_problems(g, k)
    return len(g.values), [f"tc#{index}: {p}" for p in probs]


# -- search -----------------------------------------------------------------

ORACLE_TARGETS = ["chain:1", "chain:2", "chain:3", "antichain:1", "antichain:2", "antichain:3",
                  "table:3[0<1,1<0]", "table:3[0<1]", "table:3[0<1,0<2]", "table:3[0<2,1<2]"]


def _oracle_blocks(cells: int):
    out = []
    for n in range(1, 4):
        for N in range(n, 13):
            if comb(N, n) <= cells:
                out.append(bar.TruncatedBlock.uniform(N, n))
    out += [B for B in _blocks(4, 2) if len(B) <= cells and B.maxlen > 1]
    return out


@suite("search-oracle", "backtracking search agrees with full enumeration",
       plan=lambda b: ORACLE_TARGETS[: b["targets"]], cells=12, targets=len(ORACLE_TARGETS))
def _search_oracle(b, target):
    Q = parse_order(target)
    cases, out = 0, []
    for B in _oracle_blocks(b["cells"]):
        if Q.size() ** len(B) > 600_000:
            continue
        cases += 1
        count, least = brute_force(B, Q)
        first = find_bad_array(B, Q, "first")
        counted = find_bad_array(B, Q, "count")
        tag = f"{target} on base {B.base}, {sorted(B.elements)[:3]}..."
        if first["exists"] != (count > 0) or counted["count"] != count:
            out.append(f"{tag}: search {first['exists']}/{counted['count']}, enumeration {count}")
        elif least is not None:
            cells = sorted(B.elements)
            want = {",".join(map(str, c)): Q.format_elem(v) for c, v in zip(cells, least)}
            if first["witness"] != want:
                out.append(f"{tag}: witness differs from the least enumerated bad array")
    return cases, out


# -- syntax -----------------------------------------------------------------

@suite("round-trip", "printing then parsing returns the same term", bound=3)
def _round_trip(b, _):
    k = b["bound"]
    cases, out = 0, []

    def check(grammar, val, **kw):
        nonlocal cases
        cases += 1
        base = kw.get("base")
        text = format_term(grammar, val, base)
        try:
            back = parse_term(grammar, text, **kw)
        except Exception as exc:  # noqa: BLE001 - reported as a failure
            out.append(f"{grammar}: {text!r} does not parse: {exc}")
            return
        if back != val:
            out.append(f"{grammar}: {text!r} parses to a different term")

    def check_elem(spec, x):
        nonlocal cases
        cases += 1
        text = spec.format_elem(x)
        try:
            if parse_elem(spec, text) != x:
                out.append(f"{spec}: {text!r} parses to a different element")
        except Exception as exc:  # noqa: BLE001
            out.append(f"{spec}: {text!r} does not parse: {exc}")

    specs = [parse_order(s) for s in LAW_SPECS] + [
        TCOrder(3), HOrder(Antichain(2)), TreeOrder(Antichain(2), True), TreeOrder(Antichain(2)),
        EpsOrder(2), OmegaPowOrder(3), HOrder(parse_order("table:2[0<1]"))]
    for spec in specs:
        check("order-spec", spec)
        for x in spec.elements(k):
            check_elem(spec, x)
    # the embedding codomains are too large to enumerate; use the images instead
    Th = h_target(3)
    check("order-spec", Th)
    for s in enumerate_omega(3, k):
        check_elem(Th, embed_h(3, s))
    for shifted in (False, True):
        Hj = HOrder(j_base(2, shifted))
        check("order-spec", Hj)
        for t in _eps_universe(2, k + 1, 2):
            check_elem(Hj, embed_j(2, t, shifted))
    Q, hs = _h_universe(3, 2, 2)
    for t in hs:
        check("hterm", t, base=Q)
    for t in all_elements(k + 2):
        check("tc", t, omega=k + 2)
    for t in _eps_universe(2, 4, 2):
        check("eps", t, omega=2)
    for t in enumerate_omega(3, 4):
        check("omegaseq", t, omega=3)
    Qt, ts = _tree_universe(2, 4)
    for t in ts:
        check("tree", t, base=Qt)
    for s in bar.all_seqs(6, 4):
        check("seq", s)
    return cases, out
