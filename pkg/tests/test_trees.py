import itertools

import pytest

from deskbqo.errors import MalformedElement
from deskbqo.qo import Antichain
from deskbqo.trees import (QTree, embed_s2w, enumerate_trees, leq_strong, leq_weak, node, s2w_target,
                           tree_step)

Q = Antichain(2)
p, q = 0, 1
leaf_p, leaf_q = node(p), node(q)


def test_strong_examples():
    assert leq_strong(Q, leaf_p, leaf_p)
    assert not leq_strong(Q, node(p, leaf_p), leaf_p)
    assert leq_strong(Q, leaf_p, node(q, leaf_p))


def test_weak_examples():
    assert leq_weak(Q, node(p, leaf_p), leaf_p)
    assert not leq_weak(Q, leaf_p, leaf_q)


def test_s2w_examples():
    W = s2w_target(Q)
    img = lambda t: embed_s2w(Q, t)
    assert leq_weak(W, img(leaf_p), img(leaf_p))
    assert not leq_weak(W, img(node(p, leaf_p)), img(leaf_p))
    assert leq_weak(W, img(leaf_p), img(node(q, leaf_p)))


def test_tree_step_examples():
    assert tree_step(Q, node(p, leaf_q), leaf_p) == leaf_q
    assert tree_step(Q, leaf_p, node(q, leaf_q)) == leaf_p
    assert tree_step(Q, node(p, leaf_p), leaf_p) == node(p, leaf_p)


def test_bad_label():
    with pytest.raises(MalformedElement):
        leq_weak(Q, node(2), leaf_p)


def _nodes(t, parent=None, out=None):
    out = [] if out is None else out
    out.append((t, parent))
    me = len(out) - 1
    for c in t.children:
        _nodes(c, me, out)
    return out


def _descendants(nodes):
    desc = {i: {i} for i in range(len(nodes))}
    for i in reversed(range(len(nodes))):
        par = nodes[i][1]
        if par is not None:
            desc[par] |= desc[i]
    return desc


def hom_exists(a, b, strong):
    """Search all node maps a -> b for a label-respecting map sending each
    child into the subtree (proper subtree if strong) of its parent's image."""
    na, nb = _nodes(a), _nodes(b)
    desc = _descendants(nb)
    for h in itertools.product(range(len(nb)), repeat=len(na)):
        ok = all(Q.leq(na[i][0].label, nb[h[i]][0].label) for i in range(len(na)))
        for i, (_, par) in enumerate(na):
            if par is None or not ok:
                continue
            allowed = desc[h[par]] - ({h[par]} if strong else set())
            ok = h[i] in allowed
        if ok:
            return True
    return False


SMALL = enumerate_trees(Q, 3, 2)
MID = enumerate_trees(Q, 4, 2)


def test_enumeration_counts():
    # ordered forests with n nodes are counted by Catalan numbers; 2 labels per node
    cat = [1, 1, 2, 5]
    assert len(SMALL) == sum(2 ** n * cat[n - 1] for n in (1, 2, 3))
    assert len(set(MID)) == len(MID) == sum(2 ** n * [1, 1, 2, 5][n - 1] for n in (1, 2, 3, 4))


@pytest.mark.parametrize("strong", [False, True])
def test_orders_match_homomorphism_search(strong):
    leq = leq_strong if strong else leq_weak
    for a, b in itertools.product(SMALL, repeat=2):
        assert leq(Q, a, b) == hom_exists(a, b, strong), (a, b)


def test_strong_implies_weak():
    for a, b in itertools.product(MID, repeat=2):
        if leq_strong(Q, a, b):
            assert leq_weak(Q, a, b)


def test_s2w_is_an_equivalence_of_orders():
    W = s2w_target(Q)
    imgs = {t: embed_s2w(Q, t) for t in MID}
    for a, b in itertools.product(MID, repeat=2):
        assert leq_weak(W, imgs[a], imgs[b]) == leq_strong(Q, a, b)


def test_tree_step_postconditions():
    for parent, other in itertools.product(MID, repeat=2):
        r = tree_step(Q, parent, other)
        assert leq_weak(Q, r, parent)
        if r == parent:
            assert all(leq_weak(Q, c, other) for c in parent.children)
        else:
            assert r in parent.children and not leq_weak(Q, r, other)


def test_tree_value_semantics():
    assert QTree(0, (leaf_p,)) == node(p, leaf_p)
    assert hash(node(p, leaf_q)) == hash(node(p, node(q)))
