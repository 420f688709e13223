import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deskbqo.errors import ContractViolation, MalformedElement
from deskbqo.qo import (Antichain, Chain, Explicit, Omega, Omega2Dot, OnePlus, Pf, Product, Sum,
                        enumerate_elements, leq, suborder, witness_p)
from deskbqo.syntax import parse_order


def test_sum_cross_tag_incomparable():
    S = Sum(Chain(2), Chain(2))
    assert not leq(S, (0, 1), (1, 0))
    assert not leq(S, (1, 0), (0, 1))


def test_pf_subset():
    assert leq(Pf(Antichain(2)), (0,), (0, 1))


def test_omega2dot_second_coordinate():
    W = Omega2Dot(Chain(3))
    assert leq(W, (0, 1, 5), (0, 2, 0))
    assert not leq(W, (0, 2, 0), (0, 1, 5))
    assert leq(W, (0, 9, 9), (1, 0, 0))


def test_omega2dot_over_equivalent_alphas_uses_naturals():
    W = Omega2Dot(Explicit(2, frozenset({(0, 1), (1, 0)})))
    assert W.leq((1, 0, 3), (0, 1, 0))
    assert not W.leq((1, 1, 0), (0, 0, 5))


def test_oneplus_bottom():
    O = OnePlus(Antichain(2))
    assert O.leq((), (1,)) and not O.leq((0,), ())
    assert not O.leq((0,), (1,))
    assert O.format_elem(()) == "bot"


def test_enumeration_examples():
    assert list(enumerate_elements(Antichain(3), 3)) == [0, 1, 2]
    assert list(enumerate_elements(Sum(Chain(1), Chain(1)), 1)) == [(0, 0), (1, 0)]
    assert list(enumerate_elements(Pf(Chain(1)), 1)) == [(), (0,)]


def test_witness_examples():
    assert witness_p(Pf(Antichain(2)), (0, 1), (0,)) == 1
    assert witness_p(Pf(Chain(2)), (1,), (0,)) == 1
    assert witness_p(Pf(Antichain(3)), (0, 2), (1,)) == 0


def test_witness_rejects_comparable_pair():
    with pytest.raises(ContractViolation):
        witness_p(Pf(Chain(2)), (0,), (1,))


def test_shape_errors():
    with pytest.raises(MalformedElement):
        leq(Chain(2), 2, 0)
    with pytest.raises(MalformedElement):
        leq(Sum(Chain(1), Chain(1)), (2, 0), (0, 0))
    with pytest.raises(MalformedElement):
        leq(Pf(Chain(3)), (2, 1), (0,))
    with pytest.raises(MalformedElement):
        leq(Chain(2), True, 0)


def test_explicit_table_validation(tmp_path):
    with pytest.raises(ValueError):
        Explicit(3, frozenset({(0, 1), (1, 2)}))
    T = Explicit(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    assert T.leq(0, 2) and T.leq(1, 1) and not T.leq(2, 0)
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"n": 3, "leq": [[0, 1], [1, 2], [0, 2], [1, 1]]}))
    loaded = Explicit.from_json(p)
    assert loaded == T
    assert str(loaded) == f"table@{p}"


def test_size_of_finite_orders():
    assert Pf(Antichain(3)).size() == 8
    assert Sum(Chain(2), Antichain(3)).size() == 5
    with pytest.raises(ValueError):
        Omega().size()


def test_suborder_matches_restriction():
    P = Pf(Antichain(2))
    xs = list(P.elements(2))
    T = suborder(P, xs)
    for i, a in enumerate(xs):
        for j, b in enumerate(xs):
            assert T.leq(i, j) == P.leq(a, b)


SPECS = ["chain:2+antichain:2", "Pf(chain:2+antichain:1)", "w2.(chain:2)",
         "(chain:2+antichain:1)*chain:2", "1+(Pf(antichain:2))", "table:3[0<1,1<0]"]


@st.composite
def triples(draw):
    spec = parse_order(draw(st.sampled_from(SPECS)))
    xs = list(spec.elements(3))
    return spec, draw(st.sampled_from(xs)), draw(st.sampled_from(xs)), draw(st.sampled_from(xs))


@given(triples())
def test_quasi_order_laws(t):
    spec, a, b, c = t
    assert spec.leq(a, a)
    if spec.leq(a, b) and spec.leq(b, c):
        assert spec.leq(a, c)


@given(st.sets(st.integers(0, 3)), st.sets(st.integers(0, 3)))
def test_pf_over_chain_is_max_comparison(a, b):
    # over a chain the powerset order compares maxima, the empty set at the bottom
    P = Pf(Chain(4))
    ca, cb = P.canon(a), P.canon(b)
    want = not a or (bool(b) and max(a) <= max(b))
    assert P.leq(ca, cb) == want


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_product_is_coordinatewise(a, b, c, d):
    P = Product(Chain(3), Antichain(3))
    assert P.leq((a, b), (c, d)) == (a <= c and b == d)
