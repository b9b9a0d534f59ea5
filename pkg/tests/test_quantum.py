import itertools
from fractions import Fraction

import numpy as np
import pytest

from bifree.colorings import IDENTITY, enumerate_bnc
from bifree.cumulants import MomentFunctional, make_word
from bifree.fock import DEFAULT_TL, DEFAULT_TR, PointedSpace, default_family, family_from_components
from bifree.bimodule import AlgebraB, BBFamily, make_bifree_B_family
from bifree.linalg import identity, is_zero, matrix
from bifree.partitions import Partition, enumerate_nc, kernel, leq, one, set_partitions
from bifree.quantum import (
    DEFAULT_P,
    DEFAULT_Q,
    MagicUnitaryRep,
    check_alpha_obstruction,
    check_coassociativity,
    check_identification,
    check_nfree_relation,
    check_quantum_biexchangeable,
    check_strong_invariance,
    check_vanishing_sum,
    common_dimension,
    coproduct_rep,
    default_block_rep,
    parse_rep_spec,
    projection_from_vector,
    rational_projection,
    rep_block_projective,
    rep_classical,
    twisted_monomial,
    vanishing_sum_deviations,
)

BLOCK = default_block_rep()


def naive_vanishing(p, rep, chi, J):
    n = p.n
    total = identity(rep.d) * 0
    for I in itertools.product(range(1, rep.N + 1), repeat=n):
        if leq(p, kernel(I)):
            total = total + twisted_monomial(I, J, chi, rep)
    target = identity(rep.d) if leq(p, kernel(J)) else 0 * identity(rep.d)
    return total - target


def naive_invariance(phi, rep, chi, J):
    n = len(J)
    total = identity(rep.d) * 0
    for I in itertools.product(range(1, rep.N + 1), repeat=n):
        total = total + phi(make_word(I, chi)) * twisted_monomial(I, J, chi, rep)
    return total - phi(make_word(J, chi)) * identity(rep.d)


def test_default_block_rep_is_noncommutative():
    assert BLOCK.N == 4 and BLOCK.d == 2 and BLOCK.violations() == []
    assert not is_zero(DEFAULT_P.dot(DEFAULT_Q) - DEFAULT_Q.dot(DEFAULT_P))
    assert DEFAULT_P[0, 0] == Fraction(4, 5) and DEFAULT_P[0, 1] == Fraction(2, 5)


def test_invalid_magic_unitaries_rejected():
    arr = np.array(BLOCK.array)
    arr[0, 0] = matrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        MagicUnitaryRep(arr)
    with pytest.raises(ValueError):
        MagicUnitaryRep(np.zeros((2, 3, 1, 1)))
    with pytest.raises(ValueError):
        rep_classical([1, 1, 2])


def test_rep_specs():
    assert parse_rep_spec("classical:3142").u(3, 1)[0, 0] == 1
    assert parse_rep_spec("classical:1,3,2").N == 3
    assert parse_rep_spec("block") == BLOCK
    assert parse_rep_spec("block:p=4/5") == BLOCK
    assert parse_rep_spec("block:p=4/5,1/2,9/25").N == 6
    for bad in ["block:p=1/3", "block:q=1/2", "cyclic:3", "classical:"]:
        with pytest.raises(ValueError):
            parse_rep_spec(bad)


def test_projections():
    p = rational_projection(Fraction(9, 25))
    assert is_zero(p.dot(p) - p)
    q = projection_from_vector([1, 2])
    assert is_zero(q.dot(q) - q) and q[0, 1] == Fraction(2, 5)


def test_coproduct_is_magic_unitary():
    c = coproduct_rep(BLOCK)
    assert c.d == 4 and c.violations() == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vanishing_sum_agrees_with_naive_sum(n):
    for p in set_partitions(n):
        for chi in ("l" * n, ("rl" * n)[:n]):
            devs = vanishing_sum_deviations(p, BLOCK, chi)
            for J in itertools.product(range(1, 5), repeat=n):
                naive = naive_vanishing(p, BLOCK, chi, J)
                assert is_zero(naive) == (J not in devs)
                if J in devs:
                    assert is_zero(devs[J] - naive)


def test_vanishing_sum_for_noncrossing_partitions():
    for n in range(1, 5):
        for p in enumerate_nc(n):
            assert vanishing_sum_deviations(p, BLOCK) == {}
            assert vanishing_sum_deviations(p, rep_classical([2, 4, 1, 3])) == {}


def test_crossing_partition_breaks_on_noncommutative_rep():
    crossing = Partition([[1, 3], [2, 4]])
    assert len(vanishing_sum_deviations(crossing, BLOCK)) == 32
    assert vanishing_sum_deviations(crossing, rep_classical([2, 1, 4, 3])) == {}


def test_bnc_partitions_vanish_in_twisted_order():
    for chi in ["lrlr", "rrlr", "lrrl"]:
        for p in enumerate_bnc(chi):
            assert vanishing_sum_deviations(p, BLOCK, chi) == {}


def test_check_vanishing_sum_single_J():
    p = one(2)
    assert is_zero(check_vanishing_sum(p, (1, 1), BLOCK))
    with pytest.raises(ValueError):
        check_vanishing_sum(p, (1, 1, 1), BLOCK)


@pytest.mark.parametrize("chi", ["l", "lr", "rl", "rrl", "lrl"])
def test_coassociativity(chi):
    assert check_coassociativity(BLOCK, chi)
    assert check_coassociativity(rep_classical([3, 1, 4, 2]), chi)


def test_coassociativity_with_weights():
    phi = default_family(4, 2).moments(2)
    assert check_coassociativity(BLOCK, "lr", phi=phi)
    assert check_coassociativity(BLOCK, "rl", J=(2, 3))


def test_invariance_matches_naive_sum_on_random_functional():
    phi = MomentFunctional.random([1, 2, 3, 4], 2, seed=9)
    r = check_quantum_biexchangeable(phi, BLOCK, 2)
    got = {(chi, J) for chi, J, _ in r.deviations}
    expected = set()
    for n in (1, 2):
        for chi in itertools.product("lr", repeat=n):
            chi = "".join(chi)
            for J in itertools.product(range(1, 5), repeat=n):
                if not is_zero(naive_invariance(phi, BLOCK, chi, J)):
                    expected.add((chi, J))
    assert got == expected and got


def test_bifree_iid_family_is_invariant():
    phi = default_family(4, 3).moments(3)
    r = check_quantum_biexchangeable(phi, BLOCK, 3)
    assert r.ok and r.checked == sum(2**n * 4**n for n in (1, 2, 3))


def test_non_identically_distributed_family_fails_at_order_one():
    other = matrix([[2, 1], [1, 0]])
    comps = [PointedSpace(2, {"Tl": other if j == 0 else DEFAULT_TL, "Tr": DEFAULT_TR}) for j in range(4)]
    phi = family_from_components(comps, 2).moments(2)
    r = check_quantum_biexchangeable(phi, BLOCK, 2, stop_at_first=True)
    assert not r.ok
    chi, J, _ = r.first
    assert len(J) == 1


def test_parallel_run_gives_same_report():
    phi = MomentFunctional.random([1, 2, 3, 4], 2, seed=2)
    serial = check_quantum_biexchangeable(phi, BLOCK, 2)
    parallel = check_quantum_biexchangeable(phi, BLOCK, 2, jobs=2)
    assert [(c, J) for c, J, _ in serial.deviations] == [(c, J) for c, J, _ in parallel.deviations]
    assert serial.checked == parallel.checked


def test_float_mode_reports_max_deviation():
    rep = MagicUnitaryRep(BLOCK.array.astype(float), "float", tol=1e-9)
    phi = default_family(4, 2).moments(2)
    r = check_quantum_biexchangeable(phi, rep, 2, mode="float", tol=1e-9)
    assert r.ok and r.max_deviation < 1e-9 and "float" in r.mode


def test_identity_twist_is_not_invariant():
    phi = default_family(4, 4).moments(4)
    r = check_quantum_biexchangeable(phi, BLOCK, 4, twist=IDENTITY)
    assert not r.ok
    assert min(len(J) for _, J, _ in r.deviations) == 4


def test_strong_invariance_and_corruption():
    B = AlgebraB.diagonal(2)
    fam = make_bifree_B_family(B, 2, 3)
    rep = rep_classical([2, 1])
    assert check_strong_invariance(fam.context(), rep, 2).ok
    (l1, r1), (l2, r2) = fam.pairs
    corrupted = BBFamily(fam.model, [(l1, r1), (l1 @ l1, r2)], fam.templates)
    assert not check_strong_invariance(corrupted.context(), rep, 1).ok


def test_identification():
    same = check_identification(BLOCK, BLOCK)
    assert same.relation_holds and same.equal
    other = check_identification(BLOCK, rep_classical([1, 2, 3, 4]))
    assert not other.relation_holds and other.witness is not None


def test_common_dimension_pads():
    a, b = common_dimension(BLOCK, rep_classical([2, 1, 4, 3]))
    assert a.d == b.d == 2
    with pytest.raises(ValueError):
        common_dimension(BLOCK, rep_classical([2, 1]))


def test_nfree_relation():
    C = [(p, "lrl") for p in enumerate_bnc("lrl")]
    assert check_nfree_relation(C, {"l": BLOCK, "r": BLOCK}) == []
    classical = rep_block_projective([DEFAULT_Q, DEFAULT_Q])
    devs = check_nfree_relation([(one(2), "lr")], {"l": BLOCK, "r": classical})
    assert devs


def test_alpha_obstruction():
    phi = default_family(4, 2).moments(2)
    bad = check_alpha_obstruction(phi, BLOCK, rep_classical([2, 1, 4, 3]))
    assert bad.alpha == 1 and not bad.consistent
    good = check_alpha_obstruction(phi, BLOCK, BLOCK)
    assert good.consistent
    centered = MomentFunctional.from_callable(lambda w: 0, [1, 2, 3, 4], 2)
    assert check_alpha_obstruction(centered, BLOCK, rep_classical([2, 1, 4, 3])).alpha_zero


def test_classical_coproduct_is_square_permutation():
    sigma = (2, 3, 1, 4)
    c = coproduct_rep(rep_classical(sigma))
    sq = [sigma[sigma[j] - 1] for j in range(4)]
    for i in range(4):
        for j in range(4):
            assert c.u(i + 1, j + 1)[0, 0] == (1 if i + 1 == sq[j] else 0)


def test_two_point_rep_is_commutative_and_sums_vanish():
    rep = rep_block_projective([DEFAULT_P])
    assert rep.N == 2
    u11, u12 = rep.u(1, 1), rep.u(1, 2)
    assert is_zero(u11.dot(u12) - u12.dot(u11))
    assert is_zero(check_vanishing_sum(one(2), (1, 2), rep))
    ident = rep_block_projective([identity(2), identity(2)])
    assert all(v in (0, 1) for v in ident.array.flat)


def test_nfree_relation_single_face():
    C = [(p, ",".join(["1"] * n)) for n in range(1, 4) for p in enumerate_nc(n)]
    assert check_nfree_relation(C, {1: BLOCK}, IDENTITY) == []


def test_strong_invariance_to_order_three():
    fam = make_bifree_B_family(AlgebraB.diagonal(2), 2, 3, seed=1)
    assert check_strong_invariance(fam.context(), rep_classical([2, 1]), 3).ok
