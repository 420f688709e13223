"""Text grammars: parsers and printers for order expressions and every term
language of the package.

Parsers raise ``ParseError`` (with a character position) for text that does
not match the grammar and ``InvalidTerm`` for well-formed text that names no
valid term.
"""
from __future__ import annotations

import re

from .errors import InvalidTerm, MalformedElement, ParseError
from .hset import HOrder, HSet, HTerm, Ur, format_hterm
from .notations import Eps, EpsOrder, ESeq, OmegaPowOrder, validate_eps, validate_omega
from .qo import (Antichain, Chain, Elem, Explicit, Omega, Omega2Dot, OnePlus, OrderSpec, Pf,
                 Product, Sum)
from .tc import COPY1, COPY2, TCElem, TCOrder, u
from .trees import QTree, TreeOrder, format_tree

GRAMMARS = ("order-spec", "hterm", "tc", "eps", "omegaseq", "tree", "seq")

_INT = re.compile(r"\d+")
_PATH = re.compile(r"[^\s()+*]+")


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def take(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.take(s):
            self.fail(f"expected {s!r}")

    def int(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("expected a natural number")
        self.pos = m.end()
        return int(m.group())

    def end(self):
        self.ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing text")

    def items(self, close: str, item) -> list:
        out = []
        if self.take(close):
            return out
        while True:
            out.append(item())
            if self.take(close):
                return out
            self.expect(",")


# -- order expressions ------------------------------------------------------

def _spec_expr(r: _Reader) -> OrderSpec:
    left = _spec_term(r)
    while r.peek("+"):
        r.expect("+")
        left = Sum(left, _spec_term(r))
    return left


def _spec_term(r: _Reader) -> OrderSpec:
    left = _spec_factor(r)
    while r.take("*"):
        left = Product(left, _spec_factor(r))
    return left


_WRAPPERS = {"Pf(": Pf, "w2.(": Omega2Dot, "1+(": OnePlus, "H(": HOrder,
             "Ts(": lambda a: TreeOrder(a, True), "Tw(": lambda a: TreeOrder(a, False)}
_SIZED = {"chain:": Chain, "antichain:": Antichain, "tc:": TCOrder, "eps:": EpsOrder,
          "wpow:": OmegaPowOrder}


def _spec_factor(r: _Reader) -> OrderSpec:
    for tok, ctor in _WRAPPERS.items():
        if r.take(tok):
            inner = _spec_expr(r)
            r.expect(")")
            return ctor(inner)
    for tok, ctor in _SIZED.items():
        if r.take(tok):
            return ctor(r.int())
    if r.take("omega"):
        return Omega()
    if r.take("table@"):
        m = _PATH.match(r.text, r.pos)
        if not m:
            r.fail("expected a file path")
        r.pos = m.end()
        try:
            return Explicit.from_json(m.group())
        except (OSError, ValueError, KeyError) as exc:
            r.fail(f"cannot load table {m.group()!r}: {exc}")
    if r.take("table:"):
        n = r.int()
        r.expect("[")

        def pair():
            i = r.int()
            r.expect("<")
            return (i, r.int())

        pairs = r.items("]", pair)
        try:
            return Explicit(n, frozenset(pairs))
        except (ValueError, MalformedElement) as exc:
            r.fail(str(exc))
    if r.take("("):
        inner = _spec_expr(r)
        r.expect(")")
        return inner
    r.fail("expected an order expression")


def parse_order(text: str) -> OrderSpec:
    r = _Reader(text)
    spec = _spec_expr(r)
    r.end()
    return spec


# -- elements of an order expression ----------------------------------------

def _elem(r: _Reader, spec: OrderSpec) -> Elem:
    if isinstance(spec, (Chain, Antichain, Omega, Explicit)):
        return r.int()
    if isinstance(spec, Sum):
        r.expect("<")
        tag = r.int()
        if tag not in (0, 1):
            r.fail("sum tag must be 0 or 1")
        r.expect(",")
        x = _elem(r, spec.left if tag == 0 else spec.right)
        r.expect(">")
        return (tag, x)
    if isinstance(spec, Product):
        r.expect("<")
        a = _elem(r, spec.left)
        r.expect(",")
        b = _elem(r, spec.right)
        r.expect(">")
        return (a, b)
    if isinstance(spec, Pf):
        r.expect("{")
        return spec.canon(r.items("}", lambda: _elem(r, spec.base)))
    if isinstance(spec, Omega2Dot):
        r.expect("<")
        a = _elem(r, spec.base)
        r.expect(",")
        m = r.int()
        r.expect(",")
        n = r.int()
        r.expect(">")
        return (a, m, n)
    if isinstance(spec, OnePlus):
        if r.take("bot"):
            return ()
        r.expect("<")
        x = _elem(r, spec.base)
        r.expect(">")
        return (x,)
    if isinstance(spec, TCOrder):
        return _tc(r)
    if isinstance(spec, HOrder):
        return _hterm(r, spec.base)
    if isinstance(spec, TreeOrder):
        return _tree(r, spec.base)
    if isinstance(spec, EpsOrder):
        return _eps(r)
    if isinstance(spec, OmegaPowOrder):
        return _omegaseq(r)
    r.fail(f"no element grammar for {spec}")


def parse_elem(spec: OrderSpec, text: str) -> Elem:
    """Parse and validate an element of ``spec``."""
    r = _Reader(text)
    x = _elem(r, spec)
    r.end()
    try:
        spec.check(x)
    except MalformedElement as exc:
        raise InvalidTerm(str(exc)) from exc
    return x


def format_elem(spec: OrderSpec, x: Elem) -> str:
    return spec.format_elem(x)


# -- term grammars ----------------------------------------------------------

def _tc(r: _Reader) -> TCElem:
    r.ws()
    if r.take("u"):
        i = r.int()
        if i > 2:
            raise InvalidTerm(f"there are only three urelements, got u{i}")
        return u(i)
    for tag, kind in (("a:", COPY1), ("b:", COPY2)):
        if r.take(tag):
            return TCElem(kind, r.int())
    r.fail("expected u<i>, a:<i> or b:<i>")


def _hterm(r: _Reader, base: OrderSpec) -> HTerm:
    if r.take("{"):
        return HSet(r.items("}", lambda: _hterm(r, base)))
    if r.take("u") or r.take("e"):
        return Ur(_elem(r, base))
    r.fail("expected an urelement or '{'")


def _tree(r: _Reader, base: OrderSpec) -> QTree:
    label = _elem(r, base)
    r.expect("(")
    return QTree(label, tuple(r.items(")", lambda: _tree(r, base))))


def _eps(r: _Reader):
    if r.take("eps"):
        return Eps(r.int())
    r.expect("(")
    kids = []
    while not r.take(")"):
        if r.pos >= len(r.text):
            r.fail("unclosed '('")
        kids.append(_eps(r))
    return ESeq(tuple(kids))


def _omegaseq(r: _Reader) -> tuple[int, ...]:
    r.expect("[")
    return tuple(r.items("]", r.int))


def _seq(r: _Reader) -> tuple[int, ...]:
    r.expect("<")
    return tuple(r.items(">", r.int))


def parse_term(grammar: str, text: str, base: OrderSpec | None = None, omega: int | None = None):
    """Parse ``text`` in one of ``GRAMMARS``.

    ``base`` gives the label/atom order for ``hterm`` and ``tree`` (default:
    omega); ``omega`` bounds indices for ``tc``, ``eps`` and ``omegaseq``.
    """
    if grammar == "order-spec":
        return parse_order(text)
    r = _Reader(text)
    base = base if base is not None else Omega()
    if grammar == "hterm":
        val = _hterm(r, base)
    elif grammar == "tc":
        val = _tc(r)
    elif grammar == "eps":
        val = _eps(r)
    elif grammar == "omegaseq":
        val = _omegaseq(r)
    elif grammar == "tree":
        val = _tree(r, base)
    elif grammar == "seq":
        val = _seq(r)
    else:
        raise ValueError(f"unknown grammar {grammar!r}; expected one of {GRAMMARS}")
    r.end()
    _validate(grammar, val, base, omega)
    return val


def _validate(grammar, val, base, omega):
    try:
        if grammar == "hterm":
            HOrder(base).check(val)
        elif grammar == "tree":
            TreeOrder(base).check(val)
        elif grammar == "tc" and omega is not None:
            TCOrder(omega).check(val)
        elif grammar == "eps":
            validate_eps(val, omega)
        elif grammar == "omegaseq":
            validate_omega(val, omega)
        elif grammar == "seq" and any(a >= b for a, b in zip(val, val[1:])):
            raise InvalidTerm(f"{list(val)} is not strictly increasing")
    except MalformedElement as exc:
        raise InvalidTerm(str(exc)) from exc


def format_term(grammar: str, val, base: OrderSpec | None = None) -> str:
    base = base if base is not None else Omega()
    if grammar == "order-spec":
        return str(val)
    if grammar == "hterm":
        return format_hterm(base, val)
    if grammar in ("tc", "eps"):
        return str(val)
    if grammar == "omegaseq":
        return "[" + ",".join(map(str, val)) + "]"
    if grammar == "tree":
        return format_tree(base, val)
    if grammar == "seq":
        return "<" + ",".join(map(str, val)) + ">"
    raise ValueError(f"unknown grammar {grammar!r}")

