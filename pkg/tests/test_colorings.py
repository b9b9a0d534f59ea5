import itertools

import pytest
from hypothesis import given, strategies as st

from bifree.colorings import (
    BIFREE,
    IDENTITY,
    BNCContext,
    Coloring,
    TwistFamily,
    apply_perm,
    as_coloring,
    compose,
    enumerate_bnc,
    invert,
    is_bnc,
    mobius_bnc,
    s_chi,
    untwist,
)
from bifree.partitions import Partition, enumerate_nc, is_noncrossing, leq, one, set_partitions, zero

from oracles import catalan, crosses, twist_literal

colorings = st.text(alphabet="lr", min_size=1, max_size=8)

WORKED_CHI = "lrllrrlrr"
WORKED_PI = Partition([[1, 2], [3, 5, 9], [4, 7], [6, 8]])


def test_worked_example_twist_and_untwist():
    assert s_chi(WORKED_CHI) == (1, 3, 4, 7, 9, 8, 6, 5, 2)
    assert str(untwist(WORKED_PI, WORKED_CHI)) == "{{1, 9}, {2, 5, 8}, {3, 4}, {6, 7}}"
    assert is_bnc(WORKED_PI, WORKED_CHI)
    assert not is_noncrossing(WORKED_PI)


def test_coloring_parsing():
    assert Coloring.parse("lrl").faces == ("l", "r", "l")
    c = Coloring.parse("1,2,1")
    assert c.faces == (1, 2, 1) and c.key() == "1,2,1"
    with pytest.raises(ValueError):
        Coloring.parse("lxr")
    with pytest.raises(ValueError):
        Coloring.parse("")
    assert as_coloring("rl")[2] == "l"


@given(colorings)
def test_twist_matches_literal_definition(chi):
    assert s_chi(chi) == twist_literal(chi)


@given(colorings)
def test_invert_compose(chi):
    s = s_chi(chi)
    assert compose(s, invert(s)) == tuple(range(1, len(chi) + 1))


@pytest.mark.parametrize("n", range(1, 9))
def test_bnc_count_is_catalan(n):
    for chi in itertools.product("lr", repeat=n):
        assert len(enumerate_bnc("".join(chi))) == catalan(n)


@pytest.mark.parametrize("chi", ["lrl", "rrlr", "lrrll", "rlrlrl"])
def test_bnc_is_exactly_the_untwisted_noncrossing_set(chi):
    s = twist_literal(chi)
    pos = {v: k for k, v in enumerate(s, 1)}  # position of each index in twisted order
    brute = [p for p in set_partitions(len(chi))
             if not crosses([tuple(sorted(pos[i] for i in b)) for b in p.blocks])]
    assert sorted(enumerate_bnc(chi)) == sorted(brute)


def test_all_left_or_all_right():
    assert enumerate_bnc("llll") == enumerate_nc(4)
    # all right: reversal preserves noncrossing partitions
    assert sorted(enumerate_bnc("rrrr")) == sorted(enumerate_nc(4))


def test_small_counts():
    assert len(enumerate_bnc("l")) == 1
    assert len(enumerate_bnc("lr")) == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_untwist_is_an_order_isomorphism(n):
    for faces in itertools.product("lr", repeat=n):
        chi = "".join(faces)
        parts = enumerate_bnc(chi)
        un = {p: untwist(p, chi) for p in parts}
        for p in parts:
            for q in parts:
                assert leq(p, q) == leq(un[p], un[q])


@given(colorings.filter(lambda c: len(c) <= 5))
def test_mobius_bnc_matches_untwisted(chi):
    ctx = BNCContext(as_coloring(chi))
    n = len(chi)
    assert mobius_bnc(zero(n), one(n), ctx) == (-1) ** (n - 1) * catalan(n - 1)


def test_mobius_bnc_rejects_non_bnc():
    with pytest.raises(ValueError):
        mobius_bnc(zero(4), Partition([[1, 3], [2, 4]]), "llll")


def test_identity_twist_gives_plain_nc():
    assert enumerate_bnc("lrlr", IDENTITY) == enumerate_nc(4)
    assert IDENTITY.restricts and BIFREE.restricts


def test_table_twist():
    tw = TwistFamily.from_table({"lr": [2, 1], "l": [1]})
    assert tw.perm("lr") == (2, 1)
    assert not tw.restricts
    with pytest.raises(KeyError):
        tw.perm("rl")
    with pytest.raises(ValueError):
        TwistFamily.from_table({"lr": [1, 1]})


def test_size_mismatch():
    with pytest.raises(ValueError):
        untwist(one(3), "lr")


@given(st.permutations(range(1, 7)))
def test_apply_perm_roundtrip(perm):
    p = Partition([[1, 4], [2, 3], [5, 6]])
    assert apply_perm(apply_perm(p, perm), invert(perm)) == p
