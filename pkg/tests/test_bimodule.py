from fractions import Fraction

import numpy as np
import pytest

import bifree.cumulants as cum
from bifree.bimodule import (
    AlgebraB,
    BBBimodule,
    BBFamily,
    BBFreeProduct,
    QuotientSpace,
    check_bb_axioms,
    default_bimodule,
    make_bifree_B_family,
    tensor_over_B,
)
from bifree.cumulants import all_words, check_bifree, check_splitting, make_word, twisted_expectation_G
from bifree.linalg import is_zero, matrix

B2 = AlgebraB.diagonal(2)


def fib_dim(n: int) -> int:
    """Dimension of the n-fold tensor power of the default bimodule: sum of entries of M^n,
    with M[a][c] counting basis vectors of bidegree (a, c)."""
    M = np.array([[1, 1], [1, 0]])
    return int(np.linalg.matrix_power(M, n).sum())


def test_algebra_structure():
    assert B2.dim == 2 and AlgebraB.full(2).dim == 4 and AlgebraB.scalars().dim == 1
    b = B2.element([Fraction(3), Fraction(-1)])
    assert B2.coords(b) == (3, -1)
    assert B2.contains(b)
    assert not B2.contains(matrix([[0, 1], [0, 0]]))
    F2 = AlgebraB.full(2)
    x, y = F2.basis[1], F2.basis[2]
    assert F2.coords(x.dot(y)) == F2.mult[1][2]


def test_bimodule_validation():
    assert BBBimodule.regular(B2).violations() == []
    assert BBBimodule.regular(AlgebraB.full(2)).violations() == []
    assert default_bimodule(B2).violations() == []
    bad = BBBimodule(B2, default_bimodule(B2).left, [matrix(np.eye(3))] * 2)
    assert bad.violations()
    with pytest.raises(ValueError):
        BBBimodule.from_bidegrees(AlgebraB.full(2), [(1, 1)])


def test_quotient_space():
    q = QuotientSpace.build(3, [np.array([1, -1, 0], dtype=object)])
    assert q.dim == 2
    # e_0 and e_1 become equal in the quotient
    assert q.project({0: 1}) == q.project({1: 1})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_word_space_dimensions_follow_bidegree_counting(n):
    X = default_bimodule(B2)
    model = BBFreeProduct(B2, [X, X], 3)
    assert model.spaces[(1, 2, 1)[:n]].dim == fib_dim(n)


def test_tensor_over_B_agrees_with_model():
    X = default_bimodule(B2)
    T, q = tensor_over_B(X, X)
    assert T.dim == q.dim == 5
    assert T.violations() == []
    TT, _ = tensor_over_B(T, X)
    assert TT.dim == 8


def test_regular_bimodule_is_absorbed():
    R = BBBimodule.regular(AlgebraB.full(2))
    T, _ = tensor_over_B(R, R)
    assert T.dim == 4


def test_left_operator_must_commute_with_right_action():
    X = default_bimodule(B2)
    model = BBFreeProduct(B2, [X], 2)
    n = model.component_dim(1)
    T = np.zeros((n, n), dtype=object)
    T[...] = Fraction(0)
    T[0, 2] = Fraction(1)  # sends a vector of right degree 2 to one of right degree 1
    bad = [b for b in B2.basis if not is_zero(T.dot(model.component_right_action(1, b))
                                              - model.component_right_action(1, b).dot(T))]
    assert bad
    with pytest.raises(ValueError):
        model.lam(1, T)
    for S in model.left_operator_basis(1):
        model.lam(1, S)


def test_vacuum_and_expectation_of_identity():
    fam = make_bifree_B_family(B2, 2, 2)
    ctx = fam.context()
    assert is_zero(ctx(()) - B2.one())
    E = fam.model.E_B(fam.model.L(B2.basis[0]))
    assert is_zero(E - B2.basis[0])


def test_bb_axioms_hold():
    r = check_bb_axioms(make_bifree_B_family(B2, 2, 3))
    assert r.ok and r.checked > 0


def test_operator_valued_bifree_to_order_three():
    ctx = make_bifree_B_family(B2, 2, 3).context()
    assert check_bifree(ctx, [1, 2], 3).ok


def test_operator_valued_g_equals_e_and_splitting():
    ctx = make_bifree_B_family(B2, 2, 3, seed=4).context()
    for word in all_words([1, 2], 2):
        assert is_zero(twisted_expectation_G(word, ctx) - ctx(word))
    assert check_splitting(ctx, [1, 2], 2).ok


def test_shared_left_operator_is_detected():
    fam = make_bifree_B_family(B2, 2, 3)
    (l1, r1), (_, r2) = fam.pairs
    bad = BBFamily(fam.model, [(l1, r1), (l1, r2)], fam.templates)
    assert not check_bifree(bad.context(), [1, 2], 2).ok


def test_misplaced_right_values_break_vanishing(monkeypatch):
    """Sensitivity check: putting every inner right value in front of the block breaks the certificate."""
    original = cum._natural_items

    def wrong(block_tw, gaps, s, faces):
        items = original(block_tw, gaps, s, faces)
        rights = [it for it in items if it[0] == "R"]
        return rights + [it for it in items if it[0] != "R"]

    ctx = make_bifree_B_family(B2, 2, 4).context()
    assert check_bifree(ctx, [1, 2], 4).ok
    monkeypatch.setattr(cum, "_natural_items", wrong)
    assert not check_bifree(ctx, [1, 2], 4).ok


def test_scalar_state_is_normalized_trace():
    fam = make_bifree_B_family(B2, 1, 2, seed=2)
    ctx = fam.context()
    word = make_word((1, 1), "lr")
    E = ctx(word)
    assert ctx.phi(word) == (E[0, 0] + E[1, 1]) / 2


def test_tensor_over_scalars_and_regular_diagonal():
    S = AlgebraB.scalars()
    T, _ = tensor_over_B(BBBimodule.trivial(S, 2), BBBimodule.trivial(S, 3))
    assert T.dim == 6
    R = BBBimodule.regular(B2)
    assert tensor_over_B(R, R)[0].dim == 2


def test_tensor_is_associative_in_dimension():
    rng = __import__("random").Random(3)
    for _ in range(4):
        mods = [BBBimodule.from_bidegrees(B2, [(rng.randint(1, 2), rng.randint(1, 2)) for _ in range(rng.randint(1, 3))])
                for _ in range(3)]
        M, N, P = mods
        left = tensor_over_B(tensor_over_B(M, N)[0], P)[0].dim
        right = tensor_over_B(M, tensor_over_B(N, P)[0])[0].dim
        assert left == right


def test_epsilon_and_E_B():
    model = make_bifree_B_family(B2, 2, 2).model
    rng = __import__("random").Random(1)
    one_B = B2.one()
    assert (model.epsilon(one_B, one_B) - model.epsilon(one_B, one_B) @ model.epsilon(one_B, one_B)).is_zero()
    for _ in range(3):
        b, c = B2.random_element(rng), B2.random_element(rng)
        assert is_zero(model.E_B(model.epsilon(b, c)) - b.dot(c))
        assert ((model.epsilon(b, one_B) @ model.epsilon(c, one_B)) - model.epsilon(b.dot(c), one_B)).is_zero()
        assert ((model.epsilon(one_B, b) @ model.epsilon(one_B, c)) - model.epsilon(one_B, c.dot(b))).is_zero()


def test_E_B_of_T_L_b_equals_T_R_b():
    fam = make_bifree_B_family(B2, 2, 3, seed=6)
    model = fam.model
    T = fam.pairs[0][0] @ fam.pairs[1][1] @ fam.pairs[0][1]
    rng = __import__("random").Random(2)
    for _ in range(3):
        b = B2.random_element(rng)
        assert is_zero(model.E_B(T @ model.L(b)) - model.E_B(T @ model.R(b)))


def test_lambda_of_left_action_is_global_L():
    model = make_bifree_B_family(B2, 2, 3).model
    for b in B2.basis:
        assert (model.lam(1, model.component_left_action(1, b)) - model.L(b)).is_zero()
        assert (model.rho(2, model.component_right_action(2, b)) - model.R(b)).is_zero()


def test_bb_axioms_detect_wrong_side_operator():
    fam = make_bifree_B_family(B2, 2, 3)
    (l1, r1), (l2, r2) = fam.pairs
    swapped = BBFamily(fam.model, [(r1, r1), (l2, r2)], fam.templates)
    assert not check_bb_axioms(swapped).ok


def test_bb_axioms_over_scalars():
    S = AlgebraB.scalars()
    fam = make_bifree_B_family(S, 2, 2)
    assert check_bb_axioms(fam).ok
