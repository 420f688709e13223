import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deskbqo.errors import ContractViolation, MalformedElement
from deskbqo.hset import HOrder, HSet, Ur, enumerate_hterms, hset, ht, leq_h, select_witness_h, supp
from deskbqo.qo import Antichain, Chain

Q = Antichain(3)
u0, u1, u2 = Ur(0), Ur(1), Ur(2)
EMPTY = hset()


def test_order_examples():
    assert leq_h(Q, u0, hset(u0))
    assert leq_h(Q, EMPTY, u0)
    assert not leq_h(Q, hset(u0, u1), hset(u0))


def test_singleton_support_equivalence_example():
    a = hset(u1, hset(u1))
    assert leq_h(Q, a, u1) and leq_h(Q, u1, a)


def test_supp_examples():
    assert supp(hset(u0, hset(u2))) == (0, 2)
    assert supp(EMPTY) == ()
    assert supp(hset(u1, hset(u1))) == (1,)


def test_height_examples():
    assert ht(u0) == 0
    assert ht(hset(u0, hset(u2))) == 2
    assert ht(EMPTY) == 0


def test_witness_examples():
    assert select_witness_h(Q, hset(u0, u1), u0) == u1
    assert select_witness_h(Q, hset(hset(u0), hset(u1)), hset(hset(u0))) == hset(u1)
    assert select_witness_h(Q, hset(u2), hset(u0, u1)) == u2


def test_witness_contract_errors():
    with pytest.raises(ContractViolation):
        select_witness_h(Q, u0, u1)
    with pytest.raises(ContractViolation):
        select_witness_h(Q, hset(u0), hset(u0, u1))


def test_malformed_urelement():
    with pytest.raises(MalformedElement):
        leq_h(Q, Ur(5), u0)


def test_canonical_children():
    assert hset(u1, u0, u1) == hset(u0, u1)
    assert hset(u1, u0).children == (u0, u1)
    assert len({hset(u0, hset()), hset(hset(), u0)}) == 1


def test_enumeration_counts():
    # height 0: three urelements and {}; height <= 1 adds every set of <= 3 of those four
    xs = enumerate_hterms(Q, 3, 1, 3)
    assert len(xs) == 3 + (1 + 4 + 6 + 4)
    assert len(set(xs)) == len(xs)
    big = enumerate_hterms(Q, 3, 2, 3)
    assert len(big) == 3 + sum(math.comb(18, k) for k in range(4))
    assert all(ht(x) <= 2 for x in big)


def test_pickle_round_trip():
    import pickle
    t = hset(u0, hset(u2, hset()))
    assert pickle.loads(pickle.dumps(t)) == t


terms = st.recursive(st.sampled_from([u0, u1, u2]),
                     lambda kids: st.lists(kids, max_size=3).map(HSet), max_leaves=8)


@given(terms, terms, terms)
def test_transitivity(a, b, c):
    if leq_h(Q, a, b) and leq_h(Q, b, c):
        assert leq_h(Q, a, c)


@given(terms)
def test_children_below_parent(a):
    assert leq_h(Q, a, a)
    if isinstance(a, HSet):
        assert all(leq_h(Q, x, a) for x in a.children)


@given(terms, terms)
def test_support_monotone(a, b):
    if leq_h(Q, a, b):
        assert set(supp(a)) <= set(supp(b))


@given(st.lists(st.integers(0, 3), max_size=3), st.lists(st.integers(0, 3), max_size=3))
def test_flat_sets_over_chain(a, b):
    C = Chain(4)
    x, y = HSet(map(Ur, a)), HSet(map(Ur, b))
    want = all(any(p <= q for q in b) for p in a)
    assert leq_h(C, x, y) == want


def test_horder_grammar():
    H = HOrder(Q)
    assert H.format_elem(hset(u0, hset(u2))) == "{u0,{u2}}"
    assert str(H) == "H(antichain:3)"
