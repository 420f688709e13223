"""Names for the transitive closure of two incomparable copies of a finite
chain, embedded in the hereditarily finite sets over three urelements.

An element is ``TCElem(kind, index)``: kind 0 is one of the urelements
0, 1, 2; kind 1 is the von Neumann-style name over urelements {0, 1} of an
ordinal; kind 2 is the name over {1, 2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import MalformedElement
from .qo import OrderSpec

URELEMENT, COPY1, COPY2 = 0, 1, 2
BOTTOM = ()

# urelements lying below every name of the given copy
_BELOW = {COPY1: (0, 1), COPY2: (1, 2)}


class TCElem(NamedTuple):
    kind: int
    index: int

    def __str__(self):
        return f"u{self.index}" if self.kind == URELEMENT else f"{'ab'[self.kind - 1]}:{self.index}"


def u(i: int) -> TCElem:
    return TCElem(URELEMENT, i)


def copy1(alpha: int) -> TCElem:
    return TCElem(COPY1, alpha)


def copy2(alpha: int) -> TCElem:
    return TCElem(COPY2, alpha)


def leq_tc(a: TCElem, b: TCElem) -> bool:
    if a == b:
        return True
    if a.kind == URELEMENT:
        return b.kind != URELEMENT and a.index in _BELOW[b.kind]
    return a.kind == b.kind and a.index < b.index


def E(a: TCElem) -> frozenset[TCElem]:
    """Membership names: what the named set has as elements."""
    if a.kind == URELEMENT:
        return frozenset([a])
    return frozenset([u(i) for i in _BELOW[a.kind]] + [TCElem(a.kind, g) for g in range(a.index)])


def chi(a: TCElem, b: TCElem) -> TCElem:
    """Witness map: for ``a`` not below ``b`` the result lies in ``E(a)`` and
    below no member of ``E(b)``. Returns ``a`` when ``a <= b``."""
    if a.kind == URELEMENT or leq_tc(a, b):
        return a
    if b.kind == URELEMENT:
        if b.index == 1:
            return u(0) if a.kind == COPY1 else u(2)
        return u(1)
    if a.kind == b.kind:
        return b
    return u(0) if a.kind == COPY1 else u(2)


def rank_o(a: TCElem) -> tuple:
    """Rank in 1+Omega: ``()`` for urelements, ``(alpha,)`` for names."""
    return BOTTOM if a.kind == URELEMENT else (a.index,)


def all_elements(omega: int) -> list[TCElem]:
    return [u(i) for i in range(3)] + [TCElem(k, a) for k in (COPY1, COPY2) for a in range(omega)]


@dataclass(frozen=True)
class TCOrder(OrderSpec):
    """The order on names, as an order expression ``tc:k``."""

    omega: int
    finite = True

    def leq(self, a, b):
        return leq_tc(a, b)

    def check(self, x):
        if not isinstance(x, TCElem):
            raise MalformedElement(f"{x!r} is not a TC element")
        if x.kind == URELEMENT:
            ok = 0 <= x.index < 3
        else:
            ok = x.kind in (COPY1, COPY2) and 0 <= x.index < self.omega
        if not ok:
            raise MalformedElement(f"{x} is not an element of {self}")

    def elements(self, bound) -> Iterator[TCElem]:
        return iter(all_elements(min(self.omega, max(bound, 0))))

    def format_elem(self, x):
        return str(x)

    def _enum_cap(self):
        return self.omega

    def __str__(self):
        return f"tc:{self.omega}"
