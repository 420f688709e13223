"""Truncated blocks and barriers, block powers, the star construction and
the lifting of bad arrays along a block's powers.

A ``TruncatedBlock`` stands for the restriction of a block on the naturals
to the base ``range(N)``: every strictly increasing sequence of length
``maxlen`` over the base must have exactly one prefix in the block.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable, Iterator

from .errors import ContractViolation, NotDecomposable
from .hset import HOrder, HSet, Ur, ht, select_witness_h
from .qo import Elem, OrderSpec
from .tc import URELEMENT, E, TCOrder, chi, rank_o
from .trees import QTree, TreeOrder, tree_step

Seq = tuple[int, ...]


# -- sequences --------------------------------------------------------------

def is_seq(s: Seq) -> bool:
    return all(isinstance(x, int) and x >= 0 for x in s) and all(a < b for a, b in zip(s, s[1:]))


def is_prefix(s: Seq, t: Seq) -> bool:
    return len(s) <= len(t) and t[:len(s)] == s


def is_proper_prefix(s: Seq, t: Seq) -> bool:
    return len(s) < len(t) and t[:len(s)] == s


def triangle(s: Seq, t: Seq) -> bool:
    """Nash-Williams successor: some infinite X has s as an initial segment
    and t as an initial segment of X without its least element."""
    if not s:
        raise ValueError("the successor relation needs a nonempty first argument")
    rest = s[1:]
    k = len(rest)
    if len(t) <= k:
        return t == rest[:len(t)]
    return t[:k] == rest and t[k] > s[-1]


def head_tail(s: Seq) -> tuple[Seq, Seq]:
    if len(s) < 2:
        raise ValueError(f"{s} is too short to split")
    return s[:-1], s[1:]


def dominated(r: Seq, s: Seq) -> bool:
    """Same length and pointwise below."""
    return len(r) == len(s) and all(a <= b for a, b in zip(r, s))


def all_seqs(base: int, maxlen: int, minlen: int = 0) -> list[Seq]:
    return [c for n in range(minlen, maxlen + 1) for c in combinations(range(base), n)]


def union(parts: Iterable[Seq]) -> Seq:
    return tuple(sorted(set().union(*parts)))


# -- blocks -----------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedBlock:
    base: int
    maxlen: int
    elements: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(tuple(s) for s in self.elements))

    @classmethod
    def uniform(cls, base: int, k: int) -> "TruncatedBlock":
        """[range(base)]^k."""
        return cls(base, k, frozenset(combinations(range(base), k)))

    def sorted(self) -> list[Seq]:
        return sorted(self.elements, key=lambda s: (s[:1], len(s), s))

    def prefix_in(self, x: Seq) -> Seq | None:
        for n in range(len(x) + 1):
            if x[:n] in self.elements:
                return x[:n]
        return None

    def __contains__(self, s):
        return tuple(s) in self.elements

    def __iter__(self) -> Iterator[Seq]:
        return iter(self.sorted())

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        return {"base": self.base, "maxlen": self.maxlen,
                "elements": [list(s) for s in sorted(self.elements)]}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedBlock":
        return cls(int(data["base"]), int(data["maxlen"]),
                   frozenset(tuple(s) for s in data["elements"]))


def block_problems(B: TruncatedBlock) -> list[str]:
    out = []
    for s in B.elements:
        if not s or not is_seq(s) or s[-1] >= B.base or len(s) > B.maxlen:
            out.append(f"{list(s)} is not a nonempty increasing sequence over the base within maxlen")
    for s in B.elements:
        for n in range(len(s)):
            if s[:n] in B.elements:
                out.append(f"{list(s[:n])} is a proper prefix of {list(s)}")
    for x in combinations(range(B.base), B.maxlen):
        hits = [x[:n] for n in range(len(x) + 1) if x[:n] in B.elements]
        if len(hits) != 1:
            out.append(f"{list(x)} has {len(hits)} prefixes in the block")
    return out


def is_block(B: TruncatedBlock) -> bool:
    return not block_problems(B)


def barrier_problems(B: TruncatedBlock) -> list[str]:
    out = block_problems(B)
    sets = {s: set(s) for s in B.elements}
    for s, t in combinations(sorted(B.elements), 2):
        if sets[s] < sets[t] or sets[t] < sets[s]:
            small, big = (s, t) if len(s) < len(t) else (t, s)
            out.append(f"{list(small)} is a proper subset of {list(big)}")
    return out


def is_barrier(B: TruncatedBlock) -> bool:
    return not barrier_problems(B)


def all_blocks(base: int, maxlen: int) -> Iterator[TruncatedBlock]:
    """Every truncated block over ``range(base)`` with lengths 1..maxlen."""
    seqs = all_seqs(base, maxlen, 1)
    targets = list(combinations(range(base), maxlen))

    def rec(i: int, chosen: list[Seq]) -> Iterator[list[Seq]]:
        if i == len(seqs):
            yield chosen
            return
        s = seqs[i]
        yield from rec(i + 1, chosen)
        if not any(is_prefix(c, s) or is_prefix(s, c) for c in chosen):
            chosen.append(s)
            yield from rec(i + 1, chosen)
            chosen.pop()

    for chosen in rec(0, []):
        elems = frozenset(chosen)
        if all(sum(x[:n] in elems for n in range(len(x) + 1)) == 1 for x in targets):
            yield TruncatedBlock(base, maxlen, elems)


# -- powers and decomposition ----------------------------------------------

def chains(B: TruncatedBlock, n: int) -> list[tuple[Seq, ...]]:
    """All successor chains s(0) < ... < s(n-1) of block elements."""
    elems = B.sorted()
    succ = {s: [t for t in elems if triangle(s, t)] for s in elems}
    level = [(s,) for s in elems]
    for _ in range(n - 1):
        level = [c + (t,) for c in level for t in succ[c[-1]]]
    return level


def power_block(B: TruncatedBlock, n: int) -> tuple[TruncatedBlock, dict[Seq, tuple[Seq, ...]]]:
    """B^n over the same base, with every element's decomposition.

    Raises ``ContractViolation`` if some union arises from two chains.
    """
    if n < 1:
        raise ValueError("power must be at least 1")
    parts: dict[Seq, tuple[Seq, ...]] = {}
    for c in chains(B, n):
        s = union(c)
        if s in parts and parts[s] != c:
            raise ContractViolation(f"{list(s)} has two decompositions: {parts[s]} and {c}")
        parts[s] = c
    return TruncatedBlock(B.base, B.maxlen + n - 1, frozenset(parts)), parts


def decompositions(B: TruncatedBlock, s: Seq) -> list[tuple[Seq, ...]]:
    """Every successor chain of block elements whose union is ``s``."""
    s = tuple(s)
    members = set(s)
    cand = [b for b in B.sorted() if set(b) <= members]
    found: list[tuple[Seq, ...]] = []

    def rec(chain: tuple[Seq, ...], covered: set) -> None:
        if covered == members:
            found.append(chain)
        for t in cand:
            if triangle(chain[-1], t):
                rec(chain + (t,), covered | set(t))

    for b in cand:
        rec((b,), set(b))
    return found


def decompose(B: TruncatedBlock, s: Seq) -> tuple[Seq, ...]:
    found = decompositions(B, s)
    if not found:
        raise NotDecomposable(f"{list(s)} is not a union of a successor chain in the block")
    if len(found) > 1:
        raise ContractViolation(f"{list(s)} decomposes in {len(found)} ways")
    return found[0]


# -- star construction ------------------------------------------------------

@dataclass
class StarResult:
    T: frozenset
    T_star: frozenset
    B_star: TruncatedBlock
    leaves: frozenset  # leaves of T_star among sequences extendable within the base
    agree: bool


def extendable(s: Seq, base: int, maxlen: int) -> bool:
    top = s[-1] if s else -1
    return len(s) + (base - 1 - top) >= maxlen


def star_construction(B: TruncatedBlock) -> StarResult:
    """Trees T, T* and the block B* obtained by closing B under pointwise
    domination.

    B* is computed from its local description (members of T* all of whose
    dominated T-members lie in B). The leaf description of T* is compared on
    sequences that extend to full length inside the base, where leaves are
    meaningful.
    """
    problems = block_problems(B)
    if problems:
        raise ContractViolation("not a block: " + problems[0])
    universe = all_seqs(B.base, B.maxlen)
    T = frozenset(s for s in universe if not any(s[:n] in B.elements for n in range(len(s))))
    by_len: dict[int, list[Seq]] = {}
    for r in T:
        by_len.setdefault(len(r), []).append(r)

    def below(s: Seq) -> list[Seq]:
        return [r for r in by_len.get(len(s), ()) if dominated(r, s)]

    T_star = frozenset(s for s in universe if below(s))
    local = frozenset(s for s in T_star if all(r in B.elements for r in below(s)))
    interior = [s for s in T_star if extendable(s, B.base, B.maxlen)]
    leaves = frozenset(
        s for s in interior
        if not any(s + (x,) in T_star for x in range((s[-1] + 1) if s else 0, B.base))
    )
    agree = leaves == frozenset(s for s in local if extendable(s, B.base, B.maxlen))
    return StarResult(T, T_star, TruncatedBlock(B.base, B.maxlen, local), leaves, agree)


# -- arrays and lifting -----------------------------------------------------

@dataclass
class ArrayTable:
    """An assignment of elements of ``target`` to sequences.

    ``level`` records the decomposition length of each sequence (1 on the
    base block) and ``halves`` its pair (s0, s1) for levels above 1.
    """

    block: TruncatedBlock
    target: OrderSpec
    values: dict[Seq, Elem]
    level: dict[Seq, int] = field(default_factory=dict)
    halves: dict[Seq, tuple[Seq, Seq]] = field(default_factory=dict)
    selector: str | None = None
    depth: int = 1

    def __post_init__(self):
        missing = [s for s in self.block.elements if s not in self.values]
        if missing:
            raise ContractViolation(f"array is not total: no value at {list(min(missing))}")
        for s in self.block.elements:
            self.level.setdefault(s, 1)

    def cells(self, level: int | None = None) -> list[Seq]:
        return sorted((s for s in self.values if level is None or self.level[s] == level),
                      key=lambda s: (self.level[s], s))


@dataclass(frozen=True)
class Selector:
    """How a lifted value is chosen from the values at s0 and s1."""

    name: str
    target: type
    step: Callable[[OrderSpec, Any, Any], Any]
    terminal: Callable[[Any], bool]
    measure: Callable[[Any], Any]
    members: Callable[[Any], Iterable[Any]]
    freezes: bool  # terminal values never change again


def _hset_step(H: HOrder, a, b):
    if isinstance(a, Ur) or H.leq(a, b):
        return a
    return select_witness_h(H.base, a, b)


SELECTORS: dict[str, Selector] = {
    "tc": Selector("tc", TCOrder, lambda Q, a, b: chi(a, b),
                   lambda x: x.kind == URELEMENT, rank_o, E, True),
    "hset": Selector("hset", HOrder, _hset_step, lambda x: isinstance(x, Ur), ht,
                     lambda x: x.children if isinstance(x, HSet) else (x,), True),
    "tree": Selector("tree", TreeOrder, lambda Q, a, b: tree_step(Q.base, a, b),
                     lambda x: not x.children, QTree.size, lambda x: x.children, False),
}


def lift_array(f: ArrayTable, selector: str, depth: int) -> ArrayTable:
    """Extend ``f`` from B to the union of B^1..B^depth inside the base.

    The value at s = s(0) u ... u s(n-1) is ``step(g(s0), g(s1))`` with
    s0 = s(0) u ... u s(n-2) and s1 = s(1) u ... u s(n-1).
    """
    sel = SELECTORS[selector]
    if not isinstance(f.target, sel.target):
        raise ContractViolation(f"selector {selector!r} does not fit target {f.target}")
    B = f.block
    values = {s: f.values[s] for s in B.elements}
    level = {s: 1 for s in B.elements}
    halves: dict[Seq, tuple[Seq, Seq]] = {}
    succ = {s: [t for t in B.sorted() if triangle(s, t)] for s in B.sorted()}
    frontier = [(s,) for s in B.sorted()]
    for n in range(2, depth + 1):
        frontier = [c + (t,) for c in frontier for t in succ[c[-1]]]
        for c in frontier:
            s, s0, s1 = union(c), union(c[:-1]), union(c[1:])
            v = sel.step(f.target, values[s0], values[s1])
            if s in level and (level[s] != n or halves[s] != (s0, s1)):
                raise ContractViolation(f"{list(s)} has two decompositions; the block must be a barrier")
            values[s], level[s], halves[s] = v, n, (s0, s1)
    return ArrayTable(B, f.target, values, level, halves, selector, depth)


# -- checks on lifted tables ------------------------------------------------

def badness_check(g: ArrayTable) -> dict:
    """Good pairs within each level, plus the descent/freeze dichotomy.

    Returns ``{"good_pairs": [...], "dichotomy": [...], "cells": n}``; both
    lists empty means the table is bad on every level and every lifted
    value descended correctly.
    """
    Q = g.target
    fmt = Q.format_elem
    good = []
    by_level: dict[int, list[Seq]] = {}
    for s in g.cells():
        by_level.setdefault(g.level[s], []).append(s)
    for n, cells in sorted(by_level.items()):
        for s in cells:
            for t in cells:
                if triangle(s, t) and Q.leq(g.values[s], g.values[t]):
                    good.append({"level": n, "s": list(s), "t": list(t),
                                 "f(s)": fmt(g.values[s]), "f(t)": fmt(g.values[t])})
    dich = []
    sel = SELECTORS.get(g.selector) if g.selector else None
    if sel is not None:
        for s, (s0, _) in sorted(g.halves.items()):
            x0, x = g.values[s0], g.values[s]
            problem = dichotomy_problem(sel, x0, x)
            if problem:
                dich.append({"s": list(s), "g(s0)": fmt(x0), "g(s)": fmt(x), "problem": problem})
    return {"cells": len(g.values), "good_pairs": good, "dichotomy": dich}


def dichotomy_problem(sel: Selector, x0, x) -> str | None:
    if sel.freezes and sel.terminal(x0):
        return None if x == x0 else "terminal value changed"
    if x == x0:
        return None if not sel.freezes else "no descent from a non-terminal value"
    if x not in tuple(sel.members(x0)):
        return "value is not a member of its predecessor"
    if not sel.measure(x) < sel.measure(x0):
        return "measure did not decrease"
    return None


TERMINALS = ("urelement", "leaf", "stable", "height")


def extract_block(g: ArrayTable, terminal: str) -> tuple[TruncatedBlock, list[Seq]]:
    """Minimal sequences of the lifted domain whose value is terminal.

    ``urelement``: value is an urelement (tc and hset lifts);
    ``leaf``: value is a one-node tree;
    ``stable``: value is unchanged at every computed extension (at least one);
    ``height``: the hset variant cutting each chain at the largest height of
    the base values seen up to the maximum of its first block element.

    Returns the block and the maximal domain elements without a terminal
    prefix, which flag that the truncation was too small.
    """
    dom = g.values
    children: dict[Seq, list[Seq]] = {}
    for s, (s0, _) in g.halves.items():
        children.setdefault(s0, []).append(s)
    if terminal == "height":
        return _extract_height(g)
    if terminal == "urelement":
        test = lambda s: isinstance(dom[s], Ur) or getattr(dom[s], "kind", None) == URELEMENT
    elif terminal == "leaf":
        test = lambda s: isinstance(dom[s], QTree) and not dom[s].children
    elif terminal == "stable":
        def test(s):
            kids, seen = list(children.get(s, ())), False
            while kids:
                t = kids.pop()
                seen = True
                if dom[t] != dom[s]:
                    return False
                kids.extend(children.get(t, ()))
            return seen
    else:
        raise ValueError(f"unknown terminal predicate {terminal!r}")
    hits = {s for s in dom if test(s)}
    minimal = {s for s in hits if not any(s[:n] in hits for n in range(len(s)))}
    maximal = [s for s in dom if s not in children]
    incomplete = sorted(s for s in maximal if not any(s[:n] in hits for n in range(len(s) + 1)))
    maxlen = max((len(s) for s in minimal), default=g.block.maxlen)
    return TruncatedBlock(g.block.base, maxlen, frozenset(minimal)), incomplete


def _extract_height(g: ArrayTable) -> tuple[TruncatedBlock, list[Seq]]:
    B = g.block
    base_vals = {s: g.values[s] for s in B.elements}

    def n_of(t: Seq) -> int:
        return max(ht(base_vals[s]) for s in B.elements if s[-1] <= t[-1])

    succ = {s: [t for t in B.sorted() if triangle(s, t)] for s in B.sorted()}
    out, incomplete = set(), []
    for s0 in B.sorted():
        need = n_of(s0) + 1
        if need > g.depth:
            incomplete.append(s0)
            continue
        level = [(s0,)]
        for _ in range(need - 1):
            level = [c + (t,) for c in level for t in succ[c[-1]]]
        out.update(union(c) for c in level)
    maxlen = max((len(s) for s in out), default=B.maxlen)
    return TruncatedBlock(B.base, maxlen, frozenset(out)), incomplete


def restriction_good_pairs(g: ArrayTable, block: TruncatedBlock) -> list[tuple[Seq, Seq]]:
    """Successor pairs of ``block`` on which the restricted array is good."""
    elems = [s for s in block.sorted() if s in g.values]
    return [(s, t) for s in elems for t in elems
            if triangle(s, t) and g.target.leq(g.values[s], g.values[t])]


def o_descent_problems(g: ArrayTable, k: int) -> list[str]:
    """On a tc lift over the uniform block [N]^k, check that the maximal
    rank over dominated members of T drops strictly along every branch of
    T*, where T is the tree below the extracted block."""
    if g.selector != "tc":
        raise ContractViolation("rank descent is defined for tc lifts")
    Bp, _ = extract_block(g, "urelement")
    maxlen = max(len(s) for s in g.values)
    universe = all_seqs(g.block.base, maxlen)
    T = [s for s in universe if not any(s[:n] in Bp.elements for n in range(len(s)))]
    by_len: dict[int, list[Seq]] = {}
    for r in T:
        by_len.setdefault(len(r), []).append(r)

    def obar(x: Seq):
        ranks = [rank_o(g.values[r]) for r in by_len.get(len(x), ()) if dominated(r, x)]
        return max(ranks) if ranks else None

    problems = []
    for x in universe:
        if len(x) <= k or not any(dominated(r, x) for r in by_len.get(len(x), ())):
            continue
        now, before = obar(x), obar(x[:-1])
        if before is None or not now < before:
            problems.append(f"{list(x)}: rank {now} does not drop below {before}")
    return problems
