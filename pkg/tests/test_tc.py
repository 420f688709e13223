import itertools

import pytest

from deskbqo.tc import E, TCOrder, all_elements, chi, copy1, copy2, leq_tc, rank_o, u

ELEMS = all_elements(5)


def test_order_examples():
    assert leq_tc(u(0), copy1(3)) and not leq_tc(copy1(3), u(0))
    assert not leq_tc(copy1(1), copy2(2)) and not leq_tc(copy2(2), copy1(1))
    assert leq_tc(copy1(0), copy1(1))
    assert not leq_tc(u(2), copy1(0)) and leq_tc(u(2), copy2(0))


def test_membership_examples():
    assert E(copy1(2)) == {u(0), u(1), copy1(0), copy1(1)}
    assert E(u(1)) == {u(1)}
    assert E(copy2(0)) == {u(1), u(2)}


def test_chi_examples():
    assert chi(copy1(3), u(1)) == u(0)
    assert chi(copy1(0), copy2(4)) == u(0)
    assert chi(copy2(1), copy1(2)) == u(2)


def test_rank_examples():
    assert rank_o(u(2)) == ()
    assert rank_o(copy1(1)) == (1,)
    assert rank_o(copy2(0)) == (0,)


def _names_leq(a, b):
    return all(any(leq_tc(x, y) for y in E(b)) for x in E(a))


def test_order_is_membership_domination():
    # a <= b exactly when a is b or every member of a lies below a member of b
    for a, b in itertools.product(ELEMS, repeat=2):
        if a.kind == 0:
            want = a == b or (b.kind != 0 and any(leq_tc(a, y) for y in E(b)))
        else:
            want = a == b or (b.kind != 0 and _names_leq(a, b))
        assert leq_tc(a, b) == want, (a, b)


def test_quasi_order_laws():
    for a, b, c in itertools.product(ELEMS, repeat=3):
        if leq_tc(a, b) and leq_tc(b, c):
            assert leq_tc(a, c)
    for a, b in itertools.product(ELEMS, repeat=2):
        if leq_tc(a, b) and leq_tc(b, a):
            assert a == b


@pytest.mark.parametrize("a,b", [(a, b) for a in ELEMS for b in ELEMS if not leq_tc(a, b)])
def test_chi_is_a_witness(a, b):
    w = chi(a, b)
    assert w in E(a)
    assert not any(leq_tc(w, y) for y in E(b) | ({b} if b.kind == 0 else set()))


def test_rank_strictly_decreases_on_members():
    for a in ELEMS:
        if a.kind:
            for x in E(a):
                assert rank_o(x) < rank_o(a)


def test_tc_order_spec():
    T = TCOrder(2)
    assert len(all_elements(2)) == 7
    T.check(copy1(1))
    assert T.format_elem(copy2(1)) == "b:1"
