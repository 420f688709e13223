import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deskbqo import barriers as bar
from deskbqo.barriers import (ArrayTable, TruncatedBlock, all_blocks, badness_check, decompose,
                              decompositions, extract_block, head_tail, is_barrier, is_block,
                              lift_array, power_block, star_construction, triangle)
from deskbqo.errors import ContractViolation, NotDecomposable
from deskbqo.hset import HOrder, Ur, hset
from deskbqo.qo import Antichain
from deskbqo.tc import TCOrder, copy1, u
from deskbqo.trees import TreeOrder, node

WORKED = TruncatedBlock(3, 2, {(0, 1), (0, 2), (1,), (2,)})


# -- the successor relation ---------------------------------------------------

def test_triangle_examples():
    assert triangle((1,), (2,))
    assert not triangle((2,), (1,))
    assert triangle((0, 2), (2, 5))
    assert not triangle((0, 2), (1, 3))
    with pytest.raises(ValueError):
        triangle((), (1,))


def witness_exists(s, t, top=12):
    """Search for an increasing X (cut at a finite length) extending s whose
    tail after its least element extends t."""
    need = max(len(s), len(t) + 1)
    for X in itertools.combinations(range(top), need):
        if X[:len(s)] == s and X[1:len(t) + 1] == t:
            return True
    return False


incr = st.lists(st.integers(0, 7), max_size=4, unique=True).map(lambda xs: tuple(sorted(xs)))


@given(incr.filter(bool), incr)
def test_triangle_matches_witness_search(s, t):
    assert triangle(s, t) == witness_exists(s, t)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 7), min_size=n, max_size=n, unique=True),
    st.lists(st.integers(0, 7), min_size=n, max_size=n, unique=True))))
def test_equal_length_triangle_is_head_tail_match(pair):
    s, t = (tuple(sorted(x)) for x in pair)
    want = s[1:] == t[:-1] if len(s) > 1 else s[0] < t[0]
    assert triangle(s, t) == want


def test_head_tail():
    assert head_tail((0, 1, 2)) == ((0, 1), (1, 2))
    assert head_tail((0, 1)) == ((0,), (1,))
    with pytest.raises(ValueError):
        head_tail((3,))


# -- blocks and barriers ------------------------------------------------------

def test_block_examples():
    assert is_block(WORKED) and not is_barrier(WORKED)
    assert is_barrier(TruncatedBlock.uniform(3, 1))
    assert not is_block(TruncatedBlock(3, 2, {(0,), (0, 1), (1,), (2,)}))
    assert not is_block(TruncatedBlock(3, 2, {(0, 1), (1,), (2,)}))


def test_all_blocks_are_blocks():
    blocks = list(all_blocks(4, 2))
    assert blocks and all(is_block(B) for B in blocks)
    assert len(set(blocks)) == len(blocks)
    elems = {B.elements for B in blocks}
    assert TruncatedBlock.uniform(4, 2).elements in elems and TruncatedBlock.uniform(4, 1).elements in elems


def test_block_json_round_trip():
    assert TruncatedBlock.from_json(WORKED.to_json()) == WORKED


# -- powers and decompositions -----------------------------------------------

def test_power_examples():
    assert power_block(TruncatedBlock.uniform(3, 1), 2)[0].elements == TruncatedBlock.uniform(3, 2).elements
    B = TruncatedBlock.uniform(4, 1)
    assert power_block(B, 1)[0].elements == B.elements
    assert power_block(B, 3)[0].elements == TruncatedBlock.uniform(4, 3).elements
    assert len(power_block(TruncatedBlock.uniform(5, 2), 2)[0]) == 10


def test_decompose_examples():
    assert decompose(TruncatedBlock.uniform(4, 1), (0, 1, 2)) == ((0,), (1,), (2,))
    assert decompose(TruncatedBlock.uniform(3, 2), (0, 1, 2)) == ((0, 1), (1, 2))
    with pytest.raises(NotDecomposable):
        decompose(TruncatedBlock.uniform(4, 2), (0,))


@pytest.mark.parametrize("n", [2, 3])
def test_barrier_powers_decompose_uniquely(n):
    for B in all_blocks(4, 2):
        if not is_barrier(B):
            continue
        P, parts = power_block(B, n)
        for s, chain in parts.items():
            assert decompositions(B, s) == [chain]
            assert len(chain) <= len(s)


def test_lift_on_non_barrier_detects_level_clash():
    # <0,1> is in the worked block and is also the union of the chain <0,1>, <1>
    f = ArrayTable(WORKED, TCOrder(2), {s: u(0) for s in WORKED.elements})
    with pytest.raises(ContractViolation):
        lift_array(f, "tc", 2)


# -- star construction --------------------------------------------------------

def test_worked_star():
    r = star_construction(WORKED)
    assert r.B_star.elements == {(0, 1), (0, 2), (1, 2)}
    assert r.agree and is_barrier(r.B_star)


def test_star_of_barrier_contains_it():
    B = TruncatedBlock.uniform(3, 1)
    assert B.elements <= star_construction(B).B_star.elements


def test_star_properties_on_all_small_blocks():
    for B in all_blocks(4, 2):
        r = star_construction(B)
        assert r.agree, B
        assert is_barrier(r.B_star), B
        for t in r.B_star.elements:
            assert any(t[:n] in B.elements for n in range(1, len(t) + 1)), (B, t)


def test_star_rejects_non_blocks():
    with pytest.raises(ContractViolation):
        star_construction(TruncatedBlock(3, 2, {(0,), (0, 1)}))


# -- lifting ------------------------------------------------------------------

def tc_example():
    B = TruncatedBlock.uniform(3, 1)
    return ArrayTable(B, TCOrder(3), {(i,): copy1(2 - i) for i in range(3)})


def test_tc_lift_example():
    g = lift_array(tc_example(), "tc", 3)
    assert g.values[(0,)] == copy1(2)
    assert g.values[(0, 1)] == copy1(1)
    assert g.values[(0, 1, 2)] == copy1(0)
    assert g.halves[(0, 1, 2)] == ((0, 1), (1, 2))
    rep = badness_check(g)
    assert rep["good_pairs"] == [] and rep["dichotomy"] == []


def test_tc_lift_needs_more_depth_to_reach_urelements():
    g = lift_array(tc_example(), "tc", 3)
    Bp, incomplete = extract_block(g, "urelement")
    assert not Bp.elements
    assert (0, 1, 2) in incomplete and (2,) in incomplete


def test_constant_urelement_array_extracts_itself():
    B = TruncatedBlock.uniform(4, 1)
    g = lift_array(ArrayTable(B, TCOrder(2), {s: u(0) for s in B.elements}), "tc", 2)
    assert extract_block(g, "urelement")[0].elements == B.elements


def test_good_array_is_reported():
    B = TruncatedBlock.uniform(3, 1)
    g = lift_array(ArrayTable(B, TCOrder(2), {s: copy1(0) for s in B.elements}), "tc", 1)
    assert badness_check(g)["good_pairs"]


def test_selector_mismatch():
    with pytest.raises(ContractViolation):
        lift_array(tc_example(), "hset", 2)


def test_partial_array_rejected():
    with pytest.raises(ContractViolation):
        ArrayTable(TruncatedBlock.uniform(3, 1), TCOrder(3), {(0,): u(0)})


def test_hset_lift_descends_to_urelements():
    Q = Antichain(3)
    B = TruncatedBlock.uniform(3, 1)
    vals = {(0,): hset(hset(Ur(0)), hset(Ur(1))), (1,): hset(hset(Ur(2))), (2,): Ur(1)}
    g = lift_array(ArrayTable(B, HOrder(Q), vals), "hset", 3)
    assert g.values[(0, 1)] == hset(Ur(0))
    rep = badness_check(g)
    assert rep["dichotomy"] == []


def test_tree_lift_steps_into_children():
    Q = Antichain(2)
    B = TruncatedBlock.uniform(3, 1)
    vals = {(0,): node(0, node(1)), (1,): node(0), (2,): node(1, node(1))}
    g = lift_array(ArrayTable(B, TreeOrder(Q), vals), "tree", 2)
    assert g.values[(0, 1)] == node(1)
    assert badness_check(g)["dichotomy"] == []


def test_o_descent_on_small_lift():
    B = TruncatedBlock.uniform(4, 1)
    f = ArrayTable(B, TCOrder(4), {(i,): copy1(3 - i) for i in range(4)})
    g = lift_array(f, "tc", 4)
    assert bar.o_descent_problems(g, 1) == []
