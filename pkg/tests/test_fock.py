from fractions import Fraction

import numpy as np
import pytest

from bifree.bimodule import AlgebraB, BBBimodule, build_family
from bifree.cumulants import all_words, make_word
from bifree.fock import (
    DEFAULT_TL,
    DEFAULT_TR,
    FockFamily,
    PointedSpace,
    TruncatedFreeProduct,
    default_family,
    family_from_components,
    is_selfadjoint,
    make_bifree_family,
    shared_left_family,
)
from bifree.linalg import matrix

from oracles import catalan


def chain(k: int) -> np.ndarray:
    """Adjacency matrix of a path on k+1 vertices: vacuum moments are Catalan numbers up to order 2k+1."""
    T = np.zeros((k + 1, k + 1), dtype=object)
    T[...] = Fraction(0)
    for i in range(k):
        T[i, i + 1] = T[i + 1, i] = Fraction(1)
    return T


def test_basis_of_two_qubit_components():
    comps = [PointedSpace(2), PointedSpace(2)]
    m = TruncatedFreeProduct(comps, 2)
    assert m.dim == 5
    assert m.basis == [(), ((1, 1),), ((2, 1),), ((1, 1), (2, 1)), ((2, 1), (1, 1))]


def test_basis_dimension_general():
    # reduced dims 2 and 1; alternating words up to length 3
    m = TruncatedFreeProduct([PointedSpace(3), PointedSpace(2)], 3)
    assert m.dim == 1 + 3 + (2 * 1 + 1 * 2) + (2 * 1 * 2 + 1 * 2 * 1)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        TruncatedFreeProduct([], 3)
    with pytest.raises(ValueError):
        PointedSpace(2, {"T": np.eye(3)})
    m = TruncatedFreeProduct([PointedSpace(2)], 2)
    with pytest.raises(ValueError):
        m.lam(1, np.eye(3, dtype=object))
    fam = default_family(1, 2)
    with pytest.raises(ValueError):
        fam.moments(3)
    with pytest.raises(ValueError):
        fam.expect(make_word((1, 1, 1), "lll"))


def test_pointed_space_moment_matches_fock_single_component():
    fam = default_family(1, 4)
    comp = PointedSpace(2, {"Tl": DEFAULT_TL, "Tr": DEFAULT_TR})
    for word in all_words([1], 4):
        ops = [DEFAULT_TL if f == "l" else DEFAULT_TR for _, f in word]
        assert fam.expect(word) == comp.vacuum_moment(ops)


@pytest.mark.parametrize("k", [2, 3])
def test_chain_model_gives_catalan_moments(k):
    T = chain(k)
    fam = make_bifree_family(T, T, 1, 2 * k + 1)
    for n in range(0, 2 * k + 2):
        expected = catalan(n // 2) if n % 2 == 0 else 0
        assert fam.expect(make_word([1] * n, "l" * n)) == expected
        assert fam.expect(make_word([1] * n, "r" * n)) == expected


def test_two_free_semicirculars():
    T = chain(2)
    fam = make_bifree_family(T, T, 2, 4)
    phi = fam.expect
    assert phi(make_word((1, 2, 1, 2), "llll")) == 0
    assert phi(make_word((1, 1, 2, 2), "llll")) == 1
    # a left and a right variable of different pairs commute and are classically independent
    assert phi(make_word((1, 2, 1, 2), "lrlr")) == 1


def test_left_and_right_of_different_components_commute():
    fam = default_family(3, 4)
    m = fam.model
    for i in range(3):
        for j in range(3):
            if i != j:
                assert m.commute_on_short_words(fam.pairs[i][0], fam.pairs[j][1], 4)
    # same component: left and right generally do not commute
    assert not m.commute_on_short_words(fam.pairs[0][0], fam.pairs[0][1], 4)


def test_moments_dfs_matches_direct_evaluation():
    fam = default_family(2, 3)
    phi = fam.moments()
    for word in all_words([1, 2], 3):
        assert phi(word) == fam.expect(word)
    assert len(phi) == 4 + 16 + 64


def test_fock_equals_bimodule_over_scalars():
    fam = default_family(2, 3)
    B = AlgebraB.scalars()
    reduced = [BBBimodule.trivial(B, 1), BBBimodule.trivial(B, 1)]
    bfam = build_family(B, reduced, [(DEFAULT_TL, DEFAULT_TR)] * 2, 3)
    ctx = bfam.context()
    for word in all_words([1, 2], 3):
        assert ctx.phi(word) == fam.expect(word)


def test_family_from_components_requires_named_operators():
    with pytest.raises(ValueError):
        family_from_components([PointedSpace(2, {"Tl": DEFAULT_TL})], 2)
    fam = family_from_components([PointedSpace(2, {"Tl": DEFAULT_TL, "Tr": DEFAULT_TR})], 2)
    assert isinstance(fam, FockFamily) and fam.n_pairs == 1


def test_shared_left_family_shares_operator():
    fam = shared_left_family(3)
    assert fam.pairs[0][0] is fam.pairs[1][0]


def test_selfadjoint_helper():
    assert is_selfadjoint(chain(2))
    assert not is_selfadjoint(matrix([[0, 1], [0, 0]]))


def test_basis_edge_cases():
    assert TruncatedFreeProduct([PointedSpace(2)], 3).dim == 2  # alternation forbids repeats
    assert TruncatedFreeProduct([PointedSpace(2), PointedSpace(4), PointedSpace(3)], 1).dim == 1 + 1 + 3 + 2
    fam = default_family(2, 2)
    assert fam.model.vacuum_expectation([]) == 1


def test_truncation_is_exact():
    import random

    rng = random.Random(4)
    for _ in range(3):
        Tl = matrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        Tr = matrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        short = make_bifree_family(Tl, Tr, 2, 4).moments(4)
        longer = make_bifree_family(Tl, Tr, 2, 6).moments(4)
        assert short.values == longer.values


def test_left_right_of_distinct_pairs_factorize():
    fam = default_family(2, 2)
    phi_l = PointedSpace(2).vacuum_moment([DEFAULT_TL])
    phi_r = PointedSpace(2).vacuum_moment([DEFAULT_TR])
    assert fam.expect(make_word((1, 2), "lr")) == phi_l * phi_r
    assert fam.expect(make_word((2, 1), "rl")) == phi_l * phi_r


def test_centered_alternating_word_vanishes():
    T = matrix([[0, 1], [1, 1]])  # vacuum expectation 0
    fam = make_bifree_family(T, T, 2, 4)
    assert fam.expect(make_word((1, 2, 1, 2), "llll")) == 0


def test_fixed_vacuum_operator():
    T = matrix([[1, 0], [0, 3]])
    m = TruncatedFreeProduct([PointedSpace(2)] * 2, 2)
    assert m.lam(1, T).apply({0: Fraction(1)}) == {0: Fraction(1)}
