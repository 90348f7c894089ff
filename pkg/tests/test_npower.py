import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ortholab.errors import RejectedError, ResourceError, ValidationError
from ortholab.generators import rand_full_tensor, rand_sampled_form, rand_sym_tensor
from ortholab.lattice import Vec, abs_, basis_tuple
from ortholab.multilinear import FullTensor, Polynomial, SampledForm, SymTensor, diag_eval, diagonal_tensor, evaluate
from ortholab.npower import (
    LinFunc,
    build_npower_quotient,
    check_morphism,
    check_order_iso,
    expand,
    factor_through,
    kernel_annihilated,
    lift,
    odot,
    power_rank,
    quotient_spans,
    represent_pl_polynomial,
    represent_polynomial,
)
from ortholab.pl import PLFunc, hat, pl_mul
from ortholab.sampling import rand_pl, rand_vec

from conftest import vecs

H, Q1, Q3 = Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)


def V(*xs):
    return Vec(xs)


def test_odot_examples():
    assert odot(V(1, 2), V(3, 4)) == V(3, 8)
    x = V(Fraction(2, 3), -1, 5)
    assert odot(x, Vec.ones(3), Vec.ones(3)) == x
    assert odot(abs_(V(-2, 3)), abs_(V(-2, 3))) == V(4, 9) == abs_(odot(V(-2, 3), V(-2, 3)))
    assert odot(V(1, 0), V(0, 1)).is_zero()
    with pytest.raises(ValidationError):
        odot(V(1, 2), V(1, 2, 3))


@given(vecs(3), vecs(3), vecs(3))
def test_odot_kills_disjoint_pairs(x, y, z):
    y0 = Vec([0 if a != 0 else b for a, b in zip(x.entries, y.entries)])
    assert odot(x, z, y0).is_zero()


def test_check_morphism():
    rep = check_morphism(n=2, d=3, trials=500, seed=1)
    assert rep.verdict and all(rep.details.values())
    assert check_morphism(n=3, d=2, trials=100, seed=2).verdict


@pytest.mark.parametrize("d,n,kernel", [(2, 2, 2), (3, 2, 6), (1, 3, 0), (1, 2, 0), (2, 3, 6), (4, 3, 60)])
def test_quotient_shapes(d, n, kernel):
    model = build_npower_quotient(d, n)
    assert model.free_dim == d**n
    assert model.dim == d
    assert model.kernel_rank == kernel
    assert quotient_spans(model)


def test_quotient_kernel_for_d2():
    model = build_npower_quotient(2, 2)
    ker = sorted(model.basis[next(iter(v))] for v in model.kernel)
    assert ker == [(0, 1), (1, 0)]


def test_quotient_limits():
    with pytest.raises(ResourceError):
        build_npower_quotient(5, 6)
    with pytest.raises(ValidationError):
        build_npower_quotient(2, 1)


@given(st.integers(0, 10**6))
def test_induced_product_is_odot(seed):
    rng = random.Random(seed)
    d, n = rng.randint(1, 3), rng.randint(2, 3)
    model = build_npower_quotient(d, n)
    xs = [rand_vec(rng, d) for _ in range(n)]
    assert model.induced(xs) == odot(*xs)


def test_kernel_annihilation():
    model = build_npower_quotient(3, 2)
    assert kernel_annihilated(diagonal_tensor([1, 2, 3], 2), model).verdict
    rep = kernel_annihilated(FullTensor(3, 2, {(0, 2): 1}), model)
    assert not rep.verdict and rep.witness["kernel_vector"] == (0, 2)
    assert lift(SymTensor(3, 2, {(0, 1): 2}), model) == {1: 2, 3: 2}


def test_factor_through_examples():
    T = FullTensor(2, 2, {(0, 0): 3, (1, 1): 5})
    assert factor_through(T).coefficients == (3, 5)
    assert factor_through(FullTensor(2, 2)).is_zero()
    with pytest.raises(RejectedError) as exc:
        factor_through(FullTensor(2, 2, {(0, 1): 1}))
    assert exc.value.witness is not None
    with pytest.raises(RejectedError):
        factor_through(diagonal_tensor([1, -1], 2))


def test_factor_through_random_identity():
    rng = random.Random(32)
    for _ in range(20):
        d, n = rng.randint(1, 4), rng.randint(2, 4)
        T = rand_full_tensor(rng, d, n, kind="diagonal", positive=True)
        phi = factor_through(T)
        for _ in range(100):
            xs = [rand_vec(rng, d) for _ in range(n)]
            assert phi(odot(*xs)) == evaluate(T, *xs)


def test_factor_through_sampled():
    T = SampledForm(2, [(2, (Q1, Q1)), (1, (Q3, Q3))])
    phi = factor_through(T, trials=20)
    f, g = rand_pl(random.Random(1)), rand_pl(random.Random(2))
    assert phi(pl_mul(f, g)) == evaluate(T, f, g)


def test_represent_polynomial_examples():
    P = Polynomial(diagonal_tensor([3, 5], 2))
    L = represent_polynomial(P)
    assert L.coefficients == (3, 5)
    x = V(2, -1)
    assert P(x) == 17 == L(odot(x, x)) and odot(x, x) == V(4, 1)
    ones = represent_polynomial(Polynomial(diagonal_tensor([1, 1, 1], 3)))
    assert ones.coefficients == (1, 1, 1)
    with pytest.raises(RejectedError):
        represent_polynomial(Polynomial(SymTensor(2, 2, {(0, 1): 1})))
    with pytest.raises(RejectedError):
        represent_polynomial(Polynomial(diagonal_tensor([1, -1], 2)))


def test_represent_random_roundtrip():
    rng = random.Random(33)
    for _ in range(30):
        d, n = rng.randint(1, 5), rng.randint(2, 4)
        S = rand_sym_tensor(rng, d, n, diagonal=True, positive=True)
        L = represent_polynomial(Polynomial(S), trials=5)
        assert expand(L, n) == S
        for _ in range(100):
            x = rand_vec(rng, d)
            assert diag_eval(Polynomial(S), x) == L(odot(*([x] * n)))


def test_represent_pl_examples():
    P = Polynomial(SampledForm(2, [(2, (Fraction(1, 3),) * 2)]))
    L = represent_pl_polynomial(P)
    t = PLFunc.identity()
    assert P(t) == Fraction(2, 9) == L(pl_mul(t, t))
    P = Polynomial(SampledForm(3, [(1, (Q1,) * 3), (4, (Q3,) * 3)]))
    f = hat(Q1, Q1, height=2)
    L = represent_pl_polynomial(P)
    assert P(f) == 8 == L(pl_mul(f, f, f))
    assert represent_pl_polynomial(Polynomial(SampledForm(2))).is_zero()
    with pytest.raises(RejectedError):
        represent_pl_polynomial(Polynomial(SampledForm(2, [(1, (Q1, Q3))])))
    with pytest.raises(RejectedError):
        represent_pl_polynomial(Polynomial(SampledForm(2, [(-1, (Q1, Q1))])))


def test_represent_pl_merges_permuted_terms():
    P = Polynomial(SampledForm(2, [(1, (Q1, Q3)), (-1, (Q3, Q1)), (1, (H, H))]))
    L = represent_pl_polynomial(P)
    assert L.samples == ((1, H),)


def test_power_rank_full():
    P = Polynomial(SampledForm(2, [(1, (Q1, Q1)), (2, (Q3, Q3)), (1, (H, H))]))
    L = represent_pl_polynomial(P)
    r = power_rank(L, 2, seed=3)
    assert r == {"rank": 3, "points": 3}


def test_linfunc_validation():
    with pytest.raises(ValidationError):
        LinFunc()
    with pytest.raises(ValidationError):
        LinFunc(coefficients=[1], samples=[(1, H)])
    L = LinFunc(samples=[(1, H), (2, H), (0, Q1)])
    assert L.samples == ((3, H),)
    with pytest.raises(ValidationError):
        LinFunc(coefficients=[1, 2])(Vec([1, 2, 3]))


def test_order_iso():
    rng = random.Random(34)
    pairs = [(rand_full_tensor(rng, 3, 2, kind="diagonal", positive=True),
              rand_full_tensor(rng, 3, 2, kind="diagonal", positive=True)) for _ in range(20)]
    pairs += [(rand_sampled_form(rng, 2, kind="const", positive=True),
               rand_sampled_form(rng, 2, kind="const", positive=True)) for _ in range(10)]
    T = diagonal_tensor([1, 2], 2)
    pairs.append((T, T))
    assert check_order_iso(pairs, trials=10).verdict


def test_order_iso_examples():
    T, T2 = diagonal_tensor([3, 5], 2), diagonal_tensor([1, 2], 2)
    diff = factor_through(T) - factor_through(T2)
    assert diff.coefficients == (2, 3) and diff.is_positive()
    assert check_order_iso([(T, T2), (T2, T), (T, T)]).verdict
    rng = random.Random(35)
    for _ in range(100):
        A = rand_full_tensor(rng, 3, 2, kind="diagonal", positive=True)
        B = rand_full_tensor(rng, 3, 2, kind="diagonal", positive=True)
        assert factor_through(A + B) == factor_through(A) + factor_through(B)
