"""Term notations for omega^alpha and for epsilon_Omega.

omega^alpha: non-increasing tuples of indices into a finite chain, ordered
by "prefix or first difference".

epsilon_Omega: terms ``Eps(alpha)`` or ``ESeq((t0, ..., t_{n-1}))`` read as
the Cantor normal form ``omega^t0 + ... + omega^t_{n-1}``.  A one-element
sequence may not wrap an ``Eps`` (that would denote the epsilon number
itself), and longer sequences are non-increasing.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Iterator, Sequence, Union

from .errors import InvalidTerm, MalformedElement
from .qo import OrderSpec


# -- omega^alpha ------------------------------------------------------------

def validate_omega(s: Sequence[int], size: int | None = None) -> tuple[int, ...]:
    s = tuple(s)
    for i, a in enumerate(s):
        if not isinstance(a, int) or a < 0 or (size is not None and a >= size):
            raise InvalidTerm(f"{a!r} is not an index into a chain of size {size}")
        if i and a > s[i - 1]:
            raise InvalidTerm(f"{list(s)} is not non-increasing")
    return s


def prec_omega(s: Sequence[int], t: Sequence[int]) -> bool:
    """Non-strict order on omega^alpha."""
    validate_omega(s)
    validate_omega(t)
    m, n = len(s), len(t)
    for j in range(min(m, n)):
        if s[j] != t[j]:
            return s[j] < t[j]
    return m <= n


def enumerate_omega(size: int, max_len: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        frontier = [s + (a,) for s in frontier for a in range(size) if not s or a <= s[-1]]
        out.extend(frontier)
    return out


# -- epsilon_Omega ----------------------------------------------------------

@dataclass(frozen=True)
class Eps:
    alpha: int

    def __str__(self):
        return f"eps{self.alpha}"


@dataclass(frozen=True)
class ESeq:
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self):
        return "(" + " ".join(map(str, self.children)) + ")"


EpsTerm = Union[Eps, ESeq]
EMPTY = ESeq()


@lru_cache(maxsize=1 << 20)
def _prec(s: EpsTerm, t: EpsTerm) -> bool:
    if isinstance(s, Eps):
        if isinstance(t, Eps):
            return s.alpha < t.alpha
        return len(t.children) > 0 and _preceq(s, t.children[0])
    if isinstance(t, Eps):
        return not s.children or _prec(s.children[0], t)
    a, b = s.children, t.children
    for j in range(min(len(a), len(b))):
        if a[j] != b[j]:
            return _prec(a[j], b[j])
    return len(a) < len(b)


def _preceq(s: EpsTerm, t: EpsTerm) -> bool:
    return s == t or _prec(s, t)


def prec_eps(s: EpsTerm, t: EpsTerm) -> bool:
    """Strict order on valid epsilon terms."""
    return _prec(s, t)


def preceq_eps(s: EpsTerm, t: EpsTerm) -> bool:
    return _preceq(s, t)


def lh(t: EpsTerm) -> int:
    if isinstance(t, Eps):
        return 0
    return 1 + sum(lh(c) for c in t.children)


def inv_e(t: EpsTerm, shift: int = 0) -> int:
    """Index of the leading epsilon plus ``shift``; 0 when the leading
    branch ends in the empty sum."""
    while isinstance(t, ESeq):
        if not t.children:
            return 0
        t = t.children[0]
    return t.alpha + shift


def inv_d(t: EpsTerm) -> int:
    """Number of exponentials stacked on the leading epsilon."""
    depth = 0
    while isinstance(t, ESeq) and t.children:
        depth += 1
        t = t.children[0]
    return depth


def validate_eps(t: object, omega: int | None = None) -> EpsTerm:
    """Return ``t`` if it is a valid term over a chain of size ``omega``."""
    if isinstance(t, Eps):
        if not isinstance(t.alpha, int) or t.alpha < 0 or (omega is not None and t.alpha >= omega):
            raise InvalidTerm(f"{t} is not over a chain of size {omega}")
        return t
    if not isinstance(t, ESeq):
        raise InvalidTerm(f"{t!r} is not an epsilon term")
    for c in t.children:
        validate_eps(c, omega)
    ch = t.children
    if len(ch) == 1 and isinstance(ch[0], Eps):
        raise InvalidTerm(f"{t}: a one-element sequence may not wrap {ch[0]}")
    for i in range(1, len(ch)):
        if not _preceq(ch[i], ch[i - 1]):
            raise InvalidTerm(f"{t}: child {i} exceeds child {i - 1}")
    return t


def enumerate_eps(omega: int, lh_bound: int, max_children: int | None = None) -> list[EpsTerm]:
    """All valid terms with ``lh <= lh_bound`` and at most ``max_children``
    children per sequence (default ``lh_bound``), in ascending order.

    The children cap is needed because ``Eps`` children have length 0, so
    the length bound alone does not make the set finite.
    """
    if max_children is None:
        max_children = lh_bound
    if lh_bound < 0:
        return []
    by_lh: list[list[EpsTerm]] = [[Eps(a) for a in range(omega)]]
    for L in range(1, lh_bound + 1):
        pool = sorted((t for level in by_lh for t in level),
                      key=cmp_to_key(_cmp), reverse=True)
        lens = [lh(t) for t in pool]
        found: list[EpsTerm] = []

        def extend(start: int, budget: int, acc: list[EpsTerm]) -> None:
            if budget == 0:
                if not (len(acc) == 1 and isinstance(acc[0], Eps)):
                    found.append(ESeq(tuple(acc)))
            if len(acc) == max_children:
                return
            for i in range(start, len(pool)):
                if lens[i] <= budget:
                    acc.append(pool[i])
                    extend(i, budget - lens[i], acc)
                    acc.pop()

        extend(0, L - 1, [])
        by_lh.append(found)
    return sorted((t for level in by_lh for t in level), key=cmp_to_key(_cmp))


def _cmp(s: EpsTerm, t: EpsTerm) -> int:
    if s == t:
        return 0
    return -1 if _prec(s, t) else 1


@dataclass(frozen=True)
class EpsOrder(OrderSpec):
    """epsilon_Omega over ``chain:omega`` with its non-strict order; ``eps:k``.

    ``elements(bound)`` uses ``bound`` as both the length and children cap.
    """

    omega: int

    def leq(self, a, b):
        return _preceq(a, b)

    def check(self, x):
        try:
            validate_eps(x, self.omega)
        except InvalidTerm as exc:
            raise MalformedElement(str(exc)) from exc

    def elements(self, bound) -> Iterator[EpsTerm]:
        return iter(enumerate_eps(self.omega, bound))

    def key(self, x):
        return _eps_key(x)

    def format_elem(self, x):
        return str(x)

    def __str__(self):
        return f"eps:{self.omega}"


def _eps_key(t: EpsTerm):
    if isinstance(t, Eps):
        return (0, t.alpha)
    return (1, tuple(_eps_key(c) for c in t.children))


@dataclass(frozen=True)
class OmegaPowOrder(OrderSpec):
    """omega^alpha over ``chain:size``; ``wpow:k``. Bound caps the length."""

    size: int

    def leq(self, a, b):
        return prec_omega(a, b)

    def check(self, x):
        if not isinstance(x, tuple):
            raise MalformedElement(f"{x!r} is not a sequence")
        try:
            validate_omega(x, self.size)
        except InvalidTerm as exc:
            raise MalformedElement(str(exc)) from exc

    def elements(self, bound):
        return iter(enumerate_omega(self.size, bound))

    def format_elem(self, x):
        return "[" + ",".join(map(str, x)) + "]"

    def __str__(self):
        return f"wpow:{self.size}"
