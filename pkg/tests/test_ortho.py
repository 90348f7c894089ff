import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ortholab.errors import ValidationError
from ortholab.generators import rand_full_tensor, rand_sampled_form, rand_sym_tensor
from ortholab.lattice import Vec, basis_tuple
from ortholab.multilinear import FullTensor, Polynomial, SampledForm, SymTensor, diagonal_tensor, evaluate
from ortholab.ortho import (
    Partition,
    check_lemma21,
    check_lemma25,
    check_thm22,
    check_thm26,
    check_thm28,
    disjoint,
    enumerate_partitions,
    is_orthogonally_additive,
    is_orthosymmetric,
    is_p_disjoint,
    is_p_orthosymmetric,
    oa_defect,
    p_disjoint_by_partitions,
    touching_hats,
)
from ortholab.pl import hat, pl_is_disjoint
from ortholab.sampling import rand_disjoint_pl_pair

H, Q1, Q3 = Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)
e0, e1 = Vec([1, 0]), Vec([0, 1])


def V(*xs):
    return Vec(xs)


def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@pytest.mark.parametrize("n", range(2, 8))
def test_partition_counts_match_bell_numbers(n):
    parts = list(enumerate_partitions(n))
    bell = sum(stirling2(n, k) for k in range(n + 1))
    assert len(parts) == bell - 1
    assert len(set(parts)) == len(parts)
    assert all(p.m >= 2 for p in parts)


def test_partition_examples():
    assert [repr(p) for p in enumerate_partitions(2)] == ["{{1},{2}}"]
    assert len(list(enumerate_partitions(3))) == 4
    assert len(list(enumerate_partitions(4))) == 14
    for bad in (1, 9):
        with pytest.raises(ValidationError):
            list(enumerate_partitions(bad))


def test_p_disjoint_examples():
    rep = is_p_disjoint([V(1, 0, 0), V(0, 2, 0), V(0, 0, 3)])
    assert rep.verdict and rep.witness == Partition(3, ((1,), (2,), (3,)))
    rep = is_p_disjoint([V(1, 1, 0), V(0, 2, 0), V(0, 0, 3)])
    assert rep.verdict and rep.witness == Partition(3, ((1, 2), (3,)))
    assert p_disjoint_by_partitions([V(1, 1, 0), V(0, 2, 0), V(0, 0, 3)]).verdict
    assert not is_p_disjoint([V(1, 0), V(1, 1), V(0, 1)]).verdict
    assert not p_disjoint_by_partitions([V(1, 0), V(1, 1), V(0, 1)]).verdict
    with pytest.raises(ValidationError):
        is_p_disjoint([V(1, 0)])


def test_p_disjoint_on_pl():
    f, g = touching_hats()
    k = hat(H, Fraction(1, 8))
    assert is_p_disjoint([f, g]).verdict
    assert not is_p_disjoint([f, k, g]).verdict


@given(st.integers(2, 5), st.integers(1, 4), st.integers(0, 10**6))
def test_connectivity_matches_enumeration(n, d, seed):
    rng = random.Random(seed)
    elems = [Vec([rng.choice([0, 0, 1, -2]) for _ in range(d)]) for _ in range(n)]
    fast, slow = is_p_disjoint(elems), p_disjoint_by_partitions(elems)
    assert fast.verdict == slow.verdict
    if fast.verdict:
        blocks = fast.witness.blocks
        for b1, b2 in itertools.combinations(blocks, 2):
            assert all(disjoint(elems[i - 1], elems[j - 1]) for i in b1 for j in b2)


def test_orthosymmetry_examples():
    assert is_orthosymmetric(diagonal_tensor([1, 2], 2)).verdict
    rep = is_orthosymmetric(FullTensor(2, 2, {(0, 1): 1}))
    assert not rep.verdict and rep.witness["args"] == (e0, e1)
    T = SampledForm(2, [(2, (H, H))])
    assert is_orthosymmetric(T, trials=1000).verdict


def test_p_orthosymmetry_examples():
    assert is_p_orthosymmetric(diagonal_tensor([1, 2, 3], 3)).verdict
    rep = is_p_orthosymmetric(FullTensor(2, 3, {(0, 0, 1): 1}))
    assert not rep.verdict
    assert rep.witness["args"] == (e0, e0, e1)
    assert rep.witness["partition"] == Partition(3, ((1, 2), (3,)))


def test_pl_orthosymmetry_witness():
    M = SampledForm(2, [(1, (Q1, Q3))])
    rep = is_orthosymmetric(M, trials=10)
    assert not rep.verdict
    f, g = rep.witness["args"]
    assert pl_is_disjoint(f, g) and evaluate(M, f, g) != 0


@given(st.integers(0, 10**6))
def test_orthosymmetric_implies_p_orthosymmetric(seed):
    rng = random.Random(seed)
    d, n = rng.randint(1, 3), rng.randint(2, 3)
    A = rand_full_tensor(rng, d, n, kind=rng.choice(["general", "diagonal"]))
    if is_orthosymmetric(A).verdict:
        assert is_p_orthosymmetric(A).verdict
    T = rand_sampled_form(rng, n, kind=rng.choice(["const", "mixed"]))
    if is_orthosymmetric(T, trials=20, seed=seed).verdict:
        assert is_p_orthosymmetric(T, trials=20, seed=seed).verdict


def test_oa_examples():
    assert is_orthogonally_additive(Polynomial(diagonal_tensor([3, 5], 2))).verdict
    rep = is_orthogonally_additive(Polynomial(SymTensor(2, 2, {(0, 1): 1})))
    assert not rep.verdict
    w = rep.witness
    assert (w["x"], w["y"]) == (e0, e1)
    assert w["P(x+y)"] == 2 and w["P(x)+P(y)"] == 0
    P = Polynomial(SampledForm(2, [(2, (H, H))]))
    assert is_orthogonally_additive(P, trials=1000).verdict


@given(st.integers(0, 10**6))
def test_scan_witness_always_verifies(seed):
    rng = random.Random(seed)
    d, n = rng.randint(2, 4), rng.randint(2, 4)
    S = rand_sym_tensor(rng, d, n)
    rep = is_orthogonally_additive(Polynomial(S))
    assert not rep.verdict
    w = rep.witness
    assert disjoint(w["x"], w["y"])
    assert oa_defect(Polynomial(S), w["x"], w["y"]) != 0
    assert 1 <= w["s"] <= n


def test_lemma25_examples():
    rep = check_lemma25(diagonal_tensor([1, 2], 3))
    assert rep.verdict and rep.details["p_orthosymmetric"] and rep.details["mixed_powers_vanish"]
    rep = check_lemma25(SymTensor(2, 3, {(0, 0, 1): 1}))
    assert rep.verdict
    assert not rep.details["p_orthosymmetric"] and not rep.details["mixed_powers_vanish"]
    w = rep.details["mixed_power_witness"]
    assert (w["x"], w["y"], w["i"], w["value"]) == (e0, e1, 2, 1)


def test_lemma25_random_corpus():
    rng = random.Random(25)
    for _ in range(500):
        d, n = rng.randint(1, 4), rng.randint(2, 4)
        S = rand_sym_tensor(rng, d, n, diagonal=rng.random() < 0.5)
        assert check_lemma25(S, trials=5, seed=rng.randrange(10**6)).verdict


def test_thm22_examples():
    rep = check_thm22(diagonal_tensor([1, 2], 2))
    assert rep.verdict and rep.details["orthosymmetric"] and rep.details["orthogonally_additive"]
    rep = check_thm22(SymTensor(2, 2, {(0, 1): 1}))
    assert rep.verdict
    assert rep.details["orthosymmetric_witness"] is not None
    assert rep.details["orthogonally_additive_witness"] is not None
    with pytest.raises(ValidationError):
        check_thm22(SymTensor(2, 2, {(0, 1): -1}))
    with pytest.raises(ValidationError):
        check_thm22(FullTensor(2, 2, {(0, 1): 1}))


def test_thm26_on_sampled_forms():
    sym_mixed = SampledForm(2, [(1, (Q1, Q3)), (1, (Q3, Q1))])
    rep = check_thm26(sym_mixed, trials=30)
    assert rep.verdict and not rep.details["p_orthosymmetric"]
    const = SampledForm(3, [(1, (Q1,) * 3), (-2, (H,) * 3)])
    rep = check_thm26(const, trials=30)
    assert rep.verdict and rep.details["p_orthosymmetric"]


def test_thm28_examples():
    rep = check_thm28(diagonal_tensor([1, 2], 2))
    assert rep.verdict and not rep.details["vacuous"] and rep.details["symmetric"]
    rep = check_thm28(FullTensor(2, 2, {(0, 1): 1, (1, 0): 2}))
    assert rep.verdict and rep.details["vacuous"] and not rep.details["p_orthosymmetric"]


def test_lemma21_examples():
    rep = check_lemma21(Polynomial(SampledForm(2, [(2, (H, H))])), trials=50)
    assert rep.verdict and rep.details["disjoint_additive"] and rep.details["boundary_pairs"] == 1
    P = Polynomial(SampledForm(2, [(1, (Q1, Q1)), (1, (Q3, Q3))]))
    rep = check_lemma21(P, trials=500)
    assert rep.verdict and rep.details["disjoint_additive"]
    mixed = Polynomial(SampledForm(2, [(1, (Q1, Q3))]))
    rep = check_lemma21(mixed, trials=50)
    assert rep.verdict and not rep.details["support_disjoint_additive"]
    w = rep.details["support_disjoint_witness"]
    f, g = w["x"], w["y"]
    assert w["P(x+y)"] == f(Q1) * g(Q3) + g(Q1) * f(Q3) != 0
    with pytest.raises(ValidationError):
        check_lemma21(Polynomial(diagonal_tensor([1], 2)))


def test_touching_hats_boundary():
    f, g = touching_hats()
    P = Polynomial(SampledForm(2, [(2, (H, H))]))
    assert f(H) == g(H) == 0
    assert oa_defect(P, f, g) == 0


@given(st.integers(0, 10**6))
def test_random_disjoint_pl_pairs_are_disjoint(seed):
    rng = random.Random(seed)
    f, g = rand_disjoint_pl_pair(rng)
    assert pl_is_disjoint(f, g)


def test_basis_tuples_of_nonconstant_index_are_p_disjoint():
    for d, n in [(2, 2), (3, 3), (2, 4)]:
        for idx in itertools.product(range(d), repeat=n):
            assert is_p_disjoint(list(basis_tuple(d, idx))).verdict == (len(set(idx)) > 1)
