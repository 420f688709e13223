"""Finitely presented quasi orders and their combinators.

Elements are plain hashable Python values whose shape follows the order
expression:

=================  ==========================================
order              element
=================  ==========================================
``Chain(k)``       ``int`` in ``range(k)``
``Antichain(k)``   ``int`` in ``range(k)``
``Omega()``        ``int >= 0``
``Explicit``       ``int`` in ``range(n)``
``Sum(A, B)``      ``(i, q)`` with ``i in (0, 1)``
``Product(A, B)``  ``(p, q)``
``Pf(A)``          ``tuple`` of A-elements, sorted by ``A.key``, no repeats
``Omega2Dot(A)``   ``(alpha, m, n)``
``OnePlus(A)``     ``()`` for the new bottom, ``(x,)`` otherwise
=================  ==========================================

Enumeration order (``elements(bound)``) is canonical: atoms ascending, sums
left summand first, products and triples in ``itertools.product`` order,
finite sets by size then by ``itertools.combinations`` over the sorted base,
and ``OnePlus`` bottom first.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Hashable, Iterator

from .errors import ContractViolation, MalformedElement

Elem = Hashable


class OrderSpec:
    """Base class of all order expressions.

    Subclasses implement ``leq`` without shape checks (hot path), ``check``
    for validation, ``elements`` for bounded enumeration and ``format_elem``
    for printing.
    """

    finite: bool = False

    def leq(self, a: Elem, b: Elem) -> bool:
        raise NotImplementedError

    def check(self, x: Elem) -> None:
        raise NotImplementedError

    def elements(self, bound: int) -> Iterator[Elem]:
        raise NotImplementedError

    def key(self, x: Elem) -> Any:
        return x

    def format_elem(self, x: Elem) -> str:
        raise NotImplementedError

    def is_valid(self, x: Elem) -> bool:
        try:
            self.check(x)
        except MalformedElement:
            return False
        return True

    def size(self) -> int:
        if not self.finite:
            raise ValueError(f"{self} is not finite")
        return sum(1 for _ in self.elements(self._enum_cap()))

    def _enum_cap(self) -> int:
        raise NotImplementedError


def _check_index(x: Elem, k: int | None, what: str) -> None:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0 or (k is not None and x >= k):
        raise MalformedElement(f"{x!r} is not an element of {what}")


@dataclass(frozen=True)
class Chain(OrderSpec):
    k: int
    finite = True

    def leq(self, a, b):
        return a <= b

    def check(self, x):
        _check_index(x, self.k, str(self))

    def elements(self, bound):
        return iter(range(min(self.k, max(bound, 0))))

    def format_elem(self, x):
        return str(x)

    def _enum_cap(self):
        return self.k

    def __str__(self):
        return f"chain:{self.k}"


@dataclass(frozen=True)
class Antichain(OrderSpec):
    k: int
    finite = True

    def leq(self, a, b):
        return a == b

    def check(self, x):
        _check_index(x, self.k, str(self))

    def elements(self, bound):
        return iter(range(min(self.k, max(bound, 0))))

    def format_elem(self, x):
        return str(x)

    def _enum_cap(self):
        return self.k

    def __str__(self):
        return f"antichain:{self.k}"


@dataclass(frozen=True)
class Omega(OrderSpec):
    """The naturals; enumeration is cut off at the bound."""

    def leq(self, a, b):
        return a <= b

    def check(self, x):
        _check_index(x, None, "omega")

    def elements(self, bound):
        return iter(range(max(bound, 0)))

    def format_elem(self, x):
        return str(x)

    def __str__(self):
        return "omega"


@dataclass(frozen=True)
class Explicit(OrderSpec):
    """A finite quasi order given by a table of pairs ``i <= j``.

    The diagonal is implied. Transitivity is validated on construction.
    """

    n: int
    pairs: frozenset = frozenset()
    source: str | None = field(default=None, compare=False)
    finite = True

    def __post_init__(self):
        pairs = set()
        for i, j in self.pairs:
            _check_index(i, self.n, f"table of size {self.n}")
            _check_index(j, self.n, f"table of size {self.n}")
            if i != j:
                pairs.add((i, j))
        for (i, j), (j2, k) in itertools.product(pairs, repeat=2):
            if j == j2 and i != k and (i, k) not in pairs:
                raise ValueError(f"table is not transitive: {i}<={j}<={k} but not {i}<={k}")
        object.__setattr__(self, "pairs", frozenset(pairs))

    @classmethod
    def from_json(cls, path: str | Path) -> "Explicit":
        data = json.loads(Path(path).read_text())
        return cls(int(data["n"]), frozenset(tuple(p) for p in data["leq"]), source=str(path))

    def leq(self, a, b):
        return a == b or (a, b) in self.pairs

    def check(self, x):
        _check_index(x, self.n, str(self))

    def elements(self, bound):
        return iter(range(min(self.n, max(bound, 0))))

    def format_elem(self, x):
        return str(x)

    def _enum_cap(self):
        return self.n

    def __str__(self):
        if self.source is not None:
            return f"table@{self.source}"
        body = ",".join(f"{i}<{j}" for i, j in sorted(self.pairs))
        return f"table:{self.n}[{body}]"


def _paren(spec: OrderSpec, *kinds: type) -> str:
    return f"({spec})" if isinstance(spec, kinds) else str(spec)


@dataclass(frozen=True)
class Sum(OrderSpec):
    """Disjoint sum with incomparable summands."""

    left: OrderSpec
    right: OrderSpec

    @property
    def finite(self):
        return self.left.finite and self.right.finite

    def leq(self, a, b):
        return a[0] == b[0] and (self.left if a[0] == 0 else self.right).leq(a[1], b[1])

    def check(self, x):
        if not (isinstance(x, tuple) and len(x) == 2 and x[0] in (0, 1) and not isinstance(x[0], bool)):
            raise MalformedElement(f"{x!r} is not a tagged pair of {self}")
        (self.left if x[0] == 0 else self.right).check(x[1])

    def elements(self, bound):
        for i, part in enumerate((self.left, self.right)):
            for q in part.elements(bound):
                yield (i, q)

    def key(self, x):
        return (x[0], (self.left if x[0] == 0 else self.right).key(x[1]))

    def format_elem(self, x):
        part = self.left if x[0] == 0 else self.right
        return f"<{x[0]},{part.format_elem(x[1])}>"

    def _enum_cap(self):
        return max(self.left._enum_cap(), self.right._enum_cap())

    def __str__(self):
        return f"{self.left}+{_paren(self.right, Sum)}"


@dataclass(frozen=True)
class Product(OrderSpec):
    """Coordinatewise product."""

    left: OrderSpec
    right: OrderSpec

    @property
    def finite(self):
        return self.left.finite and self.right.finite

    def leq(self, a, b):
        return self.left.leq(a[0], b[0]) and self.right.leq(a[1], b[1])

    def check(self, x):
        if not (isinstance(x, tuple) and len(x) == 2):
            raise MalformedElement(f"{x!r} is not a pair of {self}")
        self.left.check(x[0])
        self.right.check(x[1])

    def elements(self, bound):
        return itertools.product(list(self.left.elements(bound)), list(self.right.elements(bound)))

    def key(self, x):
        return (self.left.key(x[0]), self.right.key(x[1]))

    def format_elem(self, x):
        return f"<{self.left.format_elem(x[0])},{self.right.format_elem(x[1])}>"

    def _enum_cap(self):
        return max(self.left._enum_cap(), self.right._enum_cap())

    def __str__(self):
        return f"{_paren(self.left, Sum)}*{_paren(self.right, Sum, Product)}"


@dataclass(frozen=True)
class Pf(OrderSpec):
    """Finite subsets: ``a <= b`` iff every x in a lies below some y in b."""

    base: OrderSpec

    @property
    def finite(self):
        return self.base.finite

    def leq(self, a, b):
        le = self.base.leq
        return all(any(le(x, y) for y in b) for x in a)

    def canon(self, items) -> tuple:
        """Sort and deduplicate an iterable of base elements."""
        return tuple(sorted(set(items), key=self.base.key))

    def check(self, x):
        if not isinstance(x, tuple):
            raise MalformedElement(f"{x!r} is not a finite set of {self.base}")
        for y in x:
            self.base.check(y)
        if self.canon(x) != x:
            raise MalformedElement(f"{x!r} is not in canonical sorted form")

    def elements(self, bound):
        base = sorted(self.base.elements(bound), key=self.base.key)
        for size in range(0, max(bound, 0) + 1):
            yield from itertools.combinations(base, size)

    def key(self, x):
        return tuple(self.base.key(y) for y in x)

    def format_elem(self, x):
        return "{" + ",".join(self.base.format_elem(y) for y in x) + "}"

    def _enum_cap(self):
        return max(self.base._enum_cap(), self.base.size())

    def __str__(self):
        return f"Pf({self.base})"


@dataclass(frozen=True)
class Omega2Dot(OrderSpec):
    """Triples ``(alpha, m, n)`` ordered lexicographically, alpha first.

    For a non-linear base, the first coordinate decides when the alphas are
    strictly related and the naturals decide between equivalent alphas.
    """

    base: OrderSpec

    def leq(self, a, b):
        le = self.base.leq
        if not le(a[0], b[0]):
            return False
        if not le(b[0], a[0]):
            return True
        return (a[1], a[2]) <= (b[1], b[2])

    def check(self, x):
        if not (isinstance(x, tuple) and len(x) == 3):
            raise MalformedElement(f"{x!r} is not a triple of {self}")
        self.base.check(x[0])
        _check_index(x[1], None, "omega")
        _check_index(x[2], None, "omega")

    def elements(self, bound):
        ms = range(max(bound, 0))
        return itertools.product(list(self.base.elements(bound)), ms, ms)

    def key(self, x):
        return (self.base.key(x[0]), x[1], x[2])

    def format_elem(self, x):
        return f"<{self.base.format_elem(x[0])},{x[1]},{x[2]}>"

    def __str__(self):
        return f"w2.({self.base})"


@dataclass(frozen=True)
class OnePlus(OrderSpec):
    """The base extended by a new least element (bottom)."""

    base: OrderSpec
    BOTTOM = ()

    @property
    def finite(self):
        return self.base.finite

    def leq(self, a, b):
        if not a:
            return True
        if not b:
            return False
        return self.base.leq(a[0], b[0])

    def check(self, x):
        if x == ():
            return
        if not (isinstance(x, tuple) and len(x) == 1):
            raise MalformedElement(f"{x!r} is not an element of {self}")
        self.base.check(x[0])

    def elements(self, bound):
        yield ()
        for x in self.base.elements(bound):
            yield (x,)

    def key(self, x):
        return () if not x else (self.base.key(x[0]),)

    def format_elem(self, x):
        return "bot" if not x else f"<{self.base.format_elem(x[0])}>"

    def _enum_cap(self):
        return self.base._enum_cap()

    def __str__(self):
        return f"1+({self.base})"


def leq(spec: OrderSpec, a: Elem, b: Elem) -> bool:
    """Decide ``a <= b`` after validating both shapes."""
    spec.check(a)
    spec.check(b)
    return spec.leq(a, b)


def enumerate_elements(spec: OrderSpec, bound: int) -> Iterator[Elem]:
    return spec.elements(bound)


def witness_p(spec: Pf, a: tuple, b: tuple) -> Elem:
    """Least x in ``a`` that lies below no element of ``b``.

    Requires ``a`` not below ``b`` in the finite-powerset order.
    """
    if not isinstance(spec, Pf):
        raise MalformedElement(f"witness_p needs a finite powerset order, got {spec}")
    spec.check(a)
    spec.check(b)
    le = spec.base.leq
    for x in a:
        if not any(le(x, y) for y in b):
            return x
    raise ContractViolation(f"{spec.format_elem(a)} <= {spec.format_elem(b)}; no witness exists")


def suborder(spec: OrderSpec, elems: list) -> Explicit:
    """The restriction of ``spec`` to ``elems`` as a table; index i stands
    for ``elems[i]``."""
    pairs = frozenset((i, j) for i, a in enumerate(elems) for j, b in enumerate(elems)
                      if i != j and spec.leq(a, b))
    return Explicit(len(elems), pairs)
