from fractions import Fraction

import pytest

from ortholab.errors import ValidationError
from ortholab.multilinear import Polynomial, SampledForm, SymTensor, diagonal_tensor
from ortholab.theorems import (
    THEOREMS,
    verify_corpus,
    verify_instance,
    verify_lemma32,
    verify_npower,
    verify_thm33,
    verify_thm34,
)

H = Fraction(1, 2)


@pytest.mark.parametrize("name", THEOREMS)
def test_corpus_passes(name):
    rep = verify_corpus(name, count=25, seed=3, inner_trials=10, d_max=3, n_max=3)
    assert rep.verdict, rep.witness


def test_corpus_is_deterministic():
    a = verify_corpus("thm28", count=20, seed=9, inner_trials=5)
    b = verify_corpus("thm28", count=20, seed=9, inner_trials=5)
    assert a == b


def test_lemma32_instance():
    rep = verify_lemma32(diagonal_tensor([1, 2, 3], 2), trials=30)
    assert rep.verdict and rep.details["kernel_annihilated"] and rep.details["unique"]
    rep = verify_lemma32(SymTensor(2, 2, {(0, 1): 1}), trials=10)
    assert not rep.verdict and "rejected" in rep.note


def test_thm33_instance():
    rep = verify_thm33(Polynomial(diagonal_tensor([3, 5], 2)), trials=30)
    assert rep.verdict and rep.details["round_trip"] and rep.details["positivity_equivalent"]


def test_thm34_instance():
    P = Polynomial(SampledForm(3, [(1, (H,) * 3), (2, (Fraction(1, 5),) * 3)]))
    rep = verify_thm34(P, trials=20)
    assert rep.verdict and rep.details["rank"] == rep.details["points"] == 2


def test_npower_sweep():
    rep = verify_npower(d_max=3, n_max=3, trials=20)
    assert rep.verdict and rep.details["quotients"] == [[1, 2], [1, 3], [2, 2], [2, 3], [3, 2], [3, 3]]


def test_instance_errors():
    with pytest.raises(ValidationError):
        verify_instance("npower", None)
    with pytest.raises(ValidationError):
        verify_instance("nope", None)
