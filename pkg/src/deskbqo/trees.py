"""Finite ordered trees with labels from a quasi order, under strong and
weak homomorphic embeddability."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import MalformedElement
from .qo import Antichain, Elem, OrderSpec, Sum


@dataclass(frozen=True)
class QTree:
    label: Elem
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def subtrees(self) -> Iterator["QTree"]:
        yield self
        for c in self.children:
            yield from c.subtrees()


def node(label: Elem, *children: QTree) -> QTree:
    return QTree(label, children)


@lru_cache(maxsize=1 << 20)
def _leq_s(Q: OrderSpec, a: QTree, b: QTree) -> bool:
    if Q.leq(a.label, b.label) and all(any(_leq_s(Q, x, y) for y in b.children) for x in a.children):
        return True
    return any(_leq_s(Q, a, y) for y in b.children)


@lru_cache(maxsize=1 << 20)
def _leq_w(Q: OrderSpec, a: QTree, b: QTree) -> bool:
    if Q.leq(a.label, b.label) and all(_leq_w(Q, x, b) for x in a.children):
        return True
    return any(_leq_w(Q, a, y) for y in b.children)


def check_tree(Q: OrderSpec, t: QTree) -> None:
    if not isinstance(t, QTree):
        raise MalformedElement(f"{t!r} is not a tree")
    Q.check(t.label)
    for c in t.children:
        check_tree(Q, c)


def leq_strong(Q: OrderSpec, a: QTree, b: QTree) -> bool:
    check_tree(Q, a)
    check_tree(Q, b)
    return _leq_s(Q, a, b)


def leq_weak(Q: OrderSpec, a: QTree, b: QTree) -> bool:
    check_tree(Q, a)
    check_tree(Q, b)
    return _leq_w(Q, a, b)


GUARD = (1, 0)


def embed_s2w(Q: OrderSpec, a: QTree) -> QTree:
    """Map a tree over Q to a tree over ``Q + antichain:1`` such that
    strong embeddability of the originals equals weak embeddability of the
    images.

    Every node keeps its label (tagged into the left summand) and gets a
    single guard child labelled by the new element; the original children
    hang below the guard. A weak homomorphism can then send the children of
    a node only strictly below the image of the node, which is the strong
    condition.
    """
    return QTree((0, a.label), (QTree(GUARD, tuple(embed_s2w(Q, c) for c in a.children)),))


def s2w_target(Q: OrderSpec) -> OrderSpec:
    return Sum(Q, Antichain(1))


def tree_step(Q: OrderSpec, parent: QTree, other: QTree) -> QTree:
    """First child of ``parent`` not weakly below ``other``; ``parent`` if
    there is none."""
    for c in parent.children:
        if not _leq_w(Q, c, other):
            return c
    return parent


def enumerate_trees(Q: OrderSpec, max_nodes: int, atom_bound: int) -> list[QTree]:
    """All trees with at most ``max_nodes`` nodes, by size then
    lexicographically over (label, children) in generation order."""
    labels = list(Q.elements(atom_bound))
    forests: dict[int, list[tuple]] = {0: [()]}
    trees: dict[int, list[QTree]] = {}
    for n in range(1, max_nodes + 1):
        trees[n] = [QTree(lab, f) for f in forests[n - 1] for lab in labels]
        forests[n] = [(t,) + rest for k in range(1, n + 1) for t in trees[k]
                      for rest in forests[n - k]]
    return [t for n in range(1, max_nodes + 1) for t in trees[n]]


@dataclass(frozen=True)
class TreeOrder(OrderSpec):
    """Trees over ``base``; ``Ts(A)`` (strong) or ``Tw(A)`` (weak).

    ``elements(bound)`` yields trees with at most ``bound`` nodes.
    """

    base: OrderSpec
    strong: bool = False

    def leq(self, a, b):
        return (_leq_s if self.strong else _leq_w)(self.base, a, b)

    def check(self, x):
        check_tree(self.base, x)

    def elements(self, bound):
        return iter(enumerate_trees(self.base, bound, bound))

    def key(self, x):
        return _tree_key(self.base, x)

    def format_elem(self, x):
        return format_tree(self.base, x)

    def __str__(self):
        return f"{'Ts' if self.strong else 'Tw'}({self.base})"


def _tree_key(Q: OrderSpec, t: QTree):
    return (Q.key(t.label), tuple(_tree_key(Q, c) for c in t.children))


def format_tree(Q: OrderSpec, t: QTree) -> str:
    return Q.format_elem(t.label) + "(" + ",".join(format_tree(Q, c) for c in t.children) + ")"
