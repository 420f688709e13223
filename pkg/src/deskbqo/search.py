"""Backtracking search for bad arrays on truncated blocks into finite quasi
orders, and threshold sweeps over the base size.

Cells are assigned in the block's lexicographic order and values in the
target's enumeration order, so the first solution found is the
lexicographically least bad array. Work is split into prefix tasks whose
number does not depend on the worker count; reports are aggregated in task
order, which makes ``nodes_expanded`` reproducible.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .barriers import ArrayTable, Seq, TruncatedBlock, triangle
from .errors import ContractViolation
from .qo import Antichain, Explicit, OrderSpec

MODES = ("first", "all", "count")
PREFIX_TASKS = 64


@dataclass(frozen=True)
class Problem:
    ncells: int
    nvals: int
    out: tuple[tuple[int, ...], ...]   # out[i]: later cells j with cell i < j in the successor relation
    inn: tuple[tuple[int, ...], ...]   # inn[i]: later cells j with j < i in the successor relation
    above: tuple[int, ...]             # above[v]: mask of w with v <= w
    below: tuple[int, ...]             # below[v]: mask of w with w <= v
    symmetric: bool                    # values are interchangeable (antichain)


@dataclass(frozen=True)
class Task:
    start: int
    doms: tuple[int, ...]
    used: int
    prefix: tuple[int, ...]


def _is_antichain(Q: OrderSpec) -> bool:
    return isinstance(Q, Antichain) or (isinstance(Q, Explicit) and not Q.pairs)


def build_problem(B: TruncatedBlock, Q: OrderSpec, symmetry: bool = True) -> tuple[Problem, list[Seq], list]:
    if not Q.finite:
        raise ContractViolation(f"{Q} is not finite")
    cells = sorted(B.elements)
    vals = list(Q.elements(Q._enum_cap()))
    pos = {s: i for i, s in enumerate(cells)}
    out = [[] for _ in cells]
    inn = [[] for _ in cells]
    for s in cells:
        for t in cells:
            if triangle(s, t):
                i, j = pos[s], pos[t]
                if j > i:
                    out[i].append(j)
                else:
                    inn[j].append(i)
    above = tuple(sum(1 << w for w in range(len(vals)) if Q.leq(vals[v], vals[w])) for v in range(len(vals)))
    below = tuple(sum(1 << w for w in range(len(vals)) if Q.leq(vals[w], vals[v])) for v in range(len(vals)))
    prob = Problem(len(cells), len(vals), tuple(map(tuple, out)), tuple(map(tuple, inn)),
                   above, below, symmetry and _is_antichain(Q))
    return prob, cells, vals


def _choices(p: Problem, dom: int, used: int):
    top = used + 1 if p.symmetric else p.nvals
    for v in range(min(top, p.nvals)):
        if dom >> v & 1:
            yield v


def _assign(p: Problem, doms: list[int], i: int, v: int) -> list[int] | None:
    new = list(doms)
    new[i] = 1 << v
    for j in p.out[i]:
        new[j] &= ~p.above[v]
        if not new[j]:
            return None
    for j in p.inn[i]:
        new[j] &= ~p.below[v]
        if not new[j]:
            return None
    return new


def _split(p: Problem) -> tuple[list[Task], int]:
    """Breadth-first expansion of the first cells until enough tasks exist."""
    tasks = [Task(0, tuple([(1 << p.nvals) - 1] * p.ncells), 0, ())]
    nodes = 0
    while tasks and len(tasks) < PREFIX_TASKS and tasks[0].start < p.ncells:
        nxt = []
        for t in tasks:
            if t.start == p.ncells:
                nxt.append(t)
                continue
            for v in _choices(p, t.doms[t.start], t.used):
                nodes += 1
                new = _assign(p, list(t.doms), t.start, v)
                if new is not None:
                    nxt.append(Task(t.start + 1, tuple(new), max(t.used, v + 1), t.prefix + (v,)))
        tasks = nxt
    return tasks, nodes


def _solve(p: Problem, task: Task, mode: str, limit: int | None) -> tuple[list[tuple[int, ...]], int, int]:
    """Return (solutions, count, nodes) for one task."""
    sols: list[tuple[int, ...]] = []
    count = 0
    nodes = 0
    assign = list(task.prefix) + [0] * (p.ncells - task.start)

    def rec(i: int, doms: list[int], used: int) -> bool:
        nonlocal count, nodes
        if i == p.ncells:
            count += 1
            if mode != "count":
                sols.append(tuple(assign))
            return mode == "first" or (limit is not None and len(sols) >= limit)
        for v in _choices(p, doms[i], used):
            nodes += 1
            new = _assign(p, doms, i, v)
            if new is None:
                continue
            assign[i] = v
            if rec(i + 1, new, max(used, v + 1)):
                return True
        return False

    rec(task.start, list(task.doms), task.used)
    return sols, count, nodes


def _run(args):
    return _solve(*args)


def find_bad_array(B: TruncatedBlock, Q: OrderSpec, mode: str = "first", workers: int = 1,
                   limit: int | None = None) -> dict:
    """Search for f: B -> Q with no successor pair s, t where f(s) <= f(t).

    Returns ``{exists, witness?, witnesses?, count?, nodes_expanded,
    elapsed_ms}``. ``witness`` is the lexicographically least bad array as
    a map from comma-joined sequences to element text; it is self-checked
    with ``is_good_array``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    t0 = time.perf_counter()
    prob, cells, vals = build_problem(B, Q, symmetry=(mode == "first"))
    tasks, nodes = _split(prob)
    jobs = [(prob, t, mode, limit) for t in tasks]
    results = []
    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            results.append(_run(job))
            if mode == "first" and results[-1][0]:
                break
    else:
        ex = ProcessPoolExecutor(max_workers=workers)
        try:
            futures = [ex.submit(_run, job) for job in jobs]
            for fut in futures:
                results.append(fut.result())
                if mode == "first" and results[-1][0]:
                    break
        finally:
            ex.shutdown(wait=True, cancel_futures=True)
    sols: list[tuple[int, ...]] = []
    count = 0
    for s, c, n in results:
        nodes += n
        count += c
        sols.extend(s)
        if mode == "first" and s:
            break
    if limit is not None:
        sols = sols[:limit]

    report: dict = {"exists": count > 0, "nodes_expanded": nodes}
    if mode == "count":
        report["count"] = count
    tables = [ArrayTable(B, Q, {c: vals[v] for c, v in zip(cells, sol)}) for sol in sols]
    for tab in tables:
        bad = is_good_array(tab)
        if bad:
            raise AssertionError(f"search returned a good array: {bad[0]}")
    if mode == "first" and tables:
        report["witness"] = table_values_json(tables[0])
    if mode == "all":
        report["witnesses"] = [table_values_json(t) for t in tables]
    report["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return report


def table_values_json(f: ArrayTable) -> dict[str, str]:
    return {",".join(map(str, s)): f.target.format_elem(f.values[s]) for s in sorted(f.values)}


def is_good_array(f: ArrayTable) -> list[tuple[Seq, Seq]]:
    """All successor pairs s, t of the block with f(s) <= f(t)."""
    cells = sorted(f.block.elements)
    le = f.target.leq
    return [(s, t) for s in cells for t in cells if triangle(s, t) and le(f.values[s], f.values[t])]


def brute_force(B: TruncatedBlock, Q: OrderSpec) -> tuple[int, tuple | None]:
    """Count bad arrays and return the least one by full enumeration.

    Only meant for tiny instances; uses a dense table of all |Q|^|B|
    assignments.
    """
    cells = sorted(B.elements)
    vals = list(Q.elements(Q._enum_cap()))
    n, k = len(cells), len(vals)
    if n == 0:
        return 1, ()
    if k ** n > 5_000_000:
        raise ValueError("instance too large for full enumeration")
    grid = np.array(list(itertools.product(range(k), repeat=n)), dtype=np.int8).reshape(-1, n)
    le = np.array([[Q.leq(a, b) for b in vals] for a in vals], dtype=bool)
    bad = np.ones(len(grid), dtype=bool)
    pos = {s: i for i, s in enumerate(cells)}
    for s in cells:
        for t in cells:
            if triangle(s, t):
                bad &= ~le[grid[:, pos[s]], grid[:, pos[t]]]
    hits = np.flatnonzero(bad)
    least = tuple(vals[v] for v in grid[hits[0]]) if len(hits) else None
    return int(len(hits)), least


def threshold(n: int, Q: OrderSpec, N_max: int, workers: int = 1) -> dict:
    """Largest base N <= N_max carrying a bad array on [N]^n.

    Sweeps N upwards and stops at the first refutation. Downward closure is
    asserted by restricting each witness to the next smaller base.
    """
    if n < 1:
        raise ValueError("arity must be at least 1")
    t0 = time.perf_counter()
    sweep = []
    best, witness_at_best = 0, None
    for N in range(1, N_max + 1):
        B = TruncatedBlock.uniform(N, n)
        rep = find_bad_array(B, Q, "first", workers)
        sweep.append({"base": N, "exists": rep["exists"], "nodes_expanded": rep["nodes_expanded"],
                      "elapsed_ms": rep["elapsed_ms"]})
        if not rep["exists"]:
            break
        if N > 1:
            smaller = TruncatedBlock.uniform(N - 1, n)
            witness = {tuple(map(int, k.split(","))) if k else (): v for k, v in rep["witness"].items()}
            restricted = {s: witness[s] for s in smaller.elements}
            tab = _table_from_text(smaller, Q, restricted)
            if is_good_array(tab):
                raise AssertionError(f"restriction of the base-{N} witness is good")
        best = N
        witness_at_best = rep.get("witness")
    refuted = sweep[-1]["base"] if not sweep[-1]["exists"] else None
    return {"arity": n, "target": str(Q), "threshold": best, "refuted_at": refuted,
            "witness": witness_at_best, "sweep": sweep,
            "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}


def _table_from_text(B: TruncatedBlock, Q: OrderSpec, values: dict) -> ArrayTable:
    by_text = {Q.format_elem(x): x for x in Q.elements(Q._enum_cap())}
    return ArrayTable(B, Q, {s: by_text[v] for s, v in values.items()})
