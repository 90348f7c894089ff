import random

from hypothesis import given, strategies as st

from ortholab.checks import derive_seed, trial_rng
from ortholab.ortho import disjoint, is_p_disjoint
from ortholab.pl import is_support_disjoint, pl_is_disjoint
from ortholab.sampling import (
    disjoint_vec_pair_for_trial,
    rand_disjoint_pl_pair,
    rand_p_disjoint_pls,
    rand_p_disjoint_vecs,
    rand_pl,
    two_colorings,
)

seeds = st.integers(0, 10**9)


def test_seed_derivation_is_stable():
    assert derive_seed(0, 1, 2) == derive_seed(0, 1, 2)
    assert derive_seed(0, 1, 2) != derive_seed(0, 2, 1)
    assert trial_rng(5, 3).random() == trial_rng(5, 3).random()


@given(seeds)
def test_disjoint_pl_pairs(seed):
    rng = random.Random(seed)
    f, g = rand_disjoint_pl_pair(rng)
    assert pl_is_disjoint(f, g)
    f, g = rand_disjoint_pl_pair(rng, support_disjoint=True)
    assert is_support_disjoint(f, g)


@given(seeds, st.integers(1, 5), st.integers(2, 5))
def test_p_disjoint_vec_tuples(seed, d, n):
    xs, _ = rand_p_disjoint_vecs(random.Random(seed), d, n)
    assert len(xs) == n and is_p_disjoint(xs).verdict


@given(seeds, st.integers(2, 4))
def test_p_disjoint_pl_tuples(seed, n):
    fs, _ = rand_p_disjoint_pls(random.Random(seed), n)
    assert len(fs) == n and is_p_disjoint(fs).verdict


def test_vec_pairs_cover_all_colorings_first():
    d = 3
    pairs = [disjoint_vec_pair_for_trial(random.Random(k), d, k) for k in range(len(two_colorings(d)))]
    assert all(disjoint(x, y) for x, y in pairs)
    supports = {(frozenset(x.support()), frozenset(y.support())) for x, y in pairs}
    assert len(supports) == len(pairs)


@given(seeds)
def test_positive_pl(seed):
    assert rand_pl(random.Random(seed), positive=True).is_positive()
