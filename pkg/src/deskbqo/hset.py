"""Hereditarily finite sets over a quasi order.

A term is either an urelement ``Ur(q)`` or a finite set ``HSet(children)``.
Children are kept sorted by the structural key (urelements before sets,
urelements by their element value, sets by the keys of their children) and
duplicates are dropped on construction, so equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import ContractViolation, MalformedElement
from .qo import Elem, Explicit, OrderSpec


class HTerm:
    __slots__ = ("key", "_hash")

    def __eq__(self, other):
        return isinstance(other, HTerm) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key


class Ur(HTerm):
    __slots__ = ("q",)

    def __init__(self, q: Elem):
        self.q = q
        self.key = (0, q)
        self._hash = hash(self.key)

    def __repr__(self):
        return f"Ur({self.q!r})"

    def __reduce__(self):
        return (Ur, (self.q,))


class HSet(HTerm):
    __slots__ = ("children",)

    def __init__(self, children: Iterable[HTerm] = ()):
        uniq = {c.key: c for c in children}
        self.children = tuple(uniq[k] for k in sorted(uniq))
        self.key = (1, tuple(c.key for c in self.children))
        self._hash = hash(self.key)

    def __iter__(self):
        return iter(self.children)

    def __len__(self):
        return len(self.children)

    def __repr__(self):
        return f"HSet({list(self.children)!r})"

    def __reduce__(self):
        return (HSet, (self.children,))


def hset(*children: HTerm) -> HSet:
    return HSet(children)


@lru_cache(maxsize=1 << 20)
def _leq(Q: OrderSpec, a: HTerm, b: HTerm) -> bool:
    if isinstance(a, Ur):
        if isinstance(b, Ur):
            return Q.leq(a.q, b.q)
        return any(_leq(Q, a, y) for y in b.children)
    if isinstance(b, Ur):
        return all(_leq(Q, x, b) for x in a.children)
    return all(any(_leq(Q, x, y) for y in b.children) for x in a.children)


def check_hterm(Q: OrderSpec, t: HTerm) -> None:
    if isinstance(t, Ur):
        Q.check(t.q)
    elif isinstance(t, HSet):
        for c in t.children:
            check_hterm(Q, c)
    else:
        raise MalformedElement(f"{t!r} is not a hereditarily finite set term")


def leq_h(Q: OrderSpec, a: HTerm, b: HTerm) -> bool:
    check_hterm(Q, a)
    check_hterm(Q, b)
    return _leq(Q, a, b)


def supp(a: HTerm, Q: OrderSpec | None = None) -> tuple:
    """Urelements occurring anywhere in ``a``, sorted."""
    out: set = set()
    stack = [a]
    while stack:
        t = stack.pop()
        if isinstance(t, Ur):
            out.add(t.q)
        else:
            stack.extend(t.children)
    return tuple(sorted(out, key=Q.key if Q is not None else None))


def ht(a: HTerm) -> int:
    if isinstance(a, Ur):
        return 0
    return max([0] + [ht(x) + 1 for x in a.children])


def select_witness_h(Q: OrderSpec, a: HTerm, b: HTerm) -> HTerm:
    """Least child of ``a`` certifying ``a`` is not below ``b``.

    If ``b`` is an urelement the child is not below ``b``; otherwise it is
    below no child of ``b``.
    """
    if not isinstance(a, HSet):
        raise ContractViolation("select_witness_h needs a set term as first argument")
    if isinstance(b, Ur):
        for x in a.children:
            if not _leq(Q, x, b):
                return x
    else:
        for x in a.children:
            if not any(_leq(Q, x, y) for y in b.children):
                return x
    raise ContractViolation("first argument is below the second; no witness exists")


def enumerate_hterms(Q: OrderSpec, atom_bound: int, max_height: int,
                     max_children: int) -> list[HTerm]:
    """All terms with urelements from ``Q.elements(atom_bound)``, height at
    most ``max_height`` and at most ``max_children`` children per set,
    ordered by height and then structural key."""
    if max_height < 0:
        return []
    urs = [Ur(q) for q in Q.elements(atom_bound)]
    level = list(urs) + [HSet()]
    for _ in range(max_height):
        pool = sorted(set(level), key=lambda t: t.key)
        sets = [HSet(c) for size in range(max_children + 1) for c in combinations(pool, size)]
        level = urs + sets
    uniq = {t.key: t for t in level}
    return sorted(uniq.values(), key=lambda t: (ht(t), t.key))


@dataclass(frozen=True)
class HOrder(OrderSpec):
    """H_f(base) as an order expression; ``H(A)`` in the text grammar.

    ``elements(bound)`` yields terms of height below ``bound`` with at most
    ``bound`` children per set.
    """

    base: OrderSpec

    def leq(self, a, b):
        return _leq(self.base, a, b)

    def check(self, x):
        check_hterm(self.base, x)

    def elements(self, bound) -> Iterator[HTerm]:
        return iter(enumerate_hterms(self.base, bound, bound - 1, bound))

    def key(self, x):
        return x.key

    def format_elem(self, x):
        return format_hterm(self.base, x)

    def __str__(self):
        return f"H({self.base})"


def format_hterm(Q: OrderSpec, t: HTerm) -> str:
    if isinstance(t, Ur):
        return ("e" if isinstance(Q, Explicit) else "u") + Q.format_elem(t.q)
    return "{" + ",".join(format_hterm(Q, c) for c in t.children) + "}"
