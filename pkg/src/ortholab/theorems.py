"""Instance checks and random corpora for each theorem, keyed by a short name.

``verify_instance(name, obj)`` checks one form or polynomial;
``verify_corpus(name, count)`` draws ``count`` random instances and reports
whether every one passes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict

from ortholab.checks import RANDOMIZED, STRUCTURAL, CheckReport, trial_rng
from ortholab.config import LIMITS
from ortholab.errors import RejectedError, ValidationError
from ortholab.generators import rand_full_tensor, rand_sampled_form, rand_sym_tensor
from ortholab.multilinear import (
    FullTensor,
    Polynomial,
    SampledForm,
    SymTensor,
    as_form,
    as_polynomial,
    diag_eval,
    evaluate,
    is_positive,
    symmetric_form,
)
from ortholab.npower import (
    build_npower_quotient,
    check_morphism,
    expand,
    factor_through,
    kernel_annihilated,
    odot,
    power_rank,
    quotient_spans,
    represent_pl_polynomial,
    represent_polynomial,
)
from ortholab.ortho import check_lemma21, check_lemma25, check_thm22, check_thm26, check_thm28
from ortholab.pl import pl_mul
from ortholab.sampling import rand_pl, rand_vec

THEOREMS = ("lemma21", "thm22", "lemma25", "thm26", "thm28", "lemma32", "thm33", "thm34", "npower")


def _rejected(exc: RejectedError, seed) -> CheckReport:
    return CheckReport(False, witness=exc.witness, seed=seed, note=f"rejected: {exc}")


def verify_lemma32(T, trials: int = 100, seed: int = 0) -> CheckReport:
    """Factor a positive p-orthosymmetric form through the n-power and test the identity."""
    form = as_form(T)
    try:
        phi = factor_through(form, trials=trials, seed=seed)
    except RejectedError as exc:
        return _rejected(exc, seed)
    details: Dict = {"functional": phi}
    for k in range(trials):
        rng = trial_rng(seed, k)
        if isinstance(form, SampledForm):
            xs = [rand_pl(rng) for _ in range(form.n)]
            image = pl_mul(*xs)
        else:
            xs = [rand_vec(rng, form.d) for _ in range(form.n)]
            image = odot(*xs)
        if phi(image) != evaluate(form, *xs):
            return CheckReport(False, witness={"args": xs, "Phi": phi(image), "T": evaluate(form, *xs)},
                               trials=k + 1, seed=seed, method=RANDOMIZED, details=details)
    if not isinstance(form, SampledForm) and form.n >= 2 and form.d**form.n <= LIMITS.max_free_dim:
        model = build_npower_quotient(form.d, form.n)
        ker = kernel_annihilated(form, model)
        details["kernel_annihilated"] = ker.verdict
        details["unique"] = quotient_spans(model)
        if not ker.verdict:
            return CheckReport(False, witness=ker.witness, trials=trials, seed=seed, details=details)
    return CheckReport(True, trials=trials, seed=seed, method=RANDOMIZED, details=details)


def verify_thm33(P, trials: int = 100, seed: int = 0) -> CheckReport:
    """``P(x) = L(x ⊙ ... ⊙ x)`` on random x, exact round trip, and positivity equivalence."""
    P = as_polynomial(P)
    try:
        L = represent_polynomial(P, trials=trials, seed=seed)
    except RejectedError as exc:
        return _rejected(exc, seed)
    sym = symmetric_form(P)
    details: Dict = {"functional": L}
    for k in range(trials):
        x = rand_vec(trial_rng(seed, k), sym.d)
        if diag_eval(P, x) != L(odot(*([x] * P.n))):
            return CheckReport(False, witness={"x": x}, trials=k + 1, seed=seed, method=RANDOMIZED, details=details)
    details["round_trip"] = expand(L, P.n) == sym
    details["positivity_equivalent"] = L.is_positive() == is_positive(sym).verdict
    ok = details["round_trip"] and details["positivity_equivalent"]
    return CheckReport(ok, trials=trials, seed=seed, method=RANDOMIZED, details=details)


def verify_thm34(P, trials: int = 100, seed: int = 0) -> CheckReport:
    """``P(f) = L(f^n)`` against exact piecewise-polynomial powers, plus round trip and rank."""
    P = as_polynomial(P)
    try:
        L = represent_pl_polynomial(P)
    except RejectedError as exc:
        return _rejected(exc, seed)
    details: Dict = {"functional": L}
    for k in range(trials):
        f = rand_pl(trial_rng(seed, k))
        if diag_eval(P, f) != L(pl_mul(*([f] * P.n))):
            return CheckReport(False, witness={"f": f}, trials=k + 1, seed=seed, method=RANDOMIZED, details=details)
    details["round_trip"] = expand(L, P.n).canonical() == symmetric_form(P).canonical()
    details.update(power_rank(L, P.n, seed=seed))
    return CheckReport(details["round_trip"], trials=trials, seed=seed, method=RANDOMIZED, details=details)


def verify_npower(d_max: int = 5, n_max: int = 4, trials: int = 100, seed: int = 0) -> CheckReport:
    """Quotient dimension and induced product for every (d, n) in range, plus the morphism check."""
    shapes = []
    for d in range(1, d_max + 1):
        for n in range(2, n_max + 1):
            if d**n <= LIMITS.max_free_dim:
                build_npower_quotient(d, n)
                shapes.append([d, n])
    morph = check_morphism(n=min(3, n_max), d=min(3, d_max), trials=trials, seed=seed)
    return CheckReport(morph.verdict, witness=morph.witness, trials=trials, seed=seed, method=RANDOMIZED,
                       details={"quotients": shapes, "morphism": morph.details})


INSTANCE_CHECKS: Dict[str, Callable] = {
    "lemma21": check_lemma21,
    "thm22": check_thm22,
    "lemma25": check_lemma25,
    "thm26": check_thm26,
    "thm28": check_thm28,
    "lemma32": verify_lemma32,
    "thm33": verify_thm33,
    "thm34": verify_thm34,
}


def verify_instance(name: str, obj, trials: int = 100, seed: int = 0) -> CheckReport:
    if name == "npower":
        raise ValidationError("verify npower takes no arguments")
    if name not in INSTANCE_CHECKS:
        raise ValidationError(f"unknown theorem {name!r}")
    return INSTANCE_CHECKS[name](obj, trials=trials, seed=seed)


def _draw(name: str, rng, d_max: int, n_max: int):
    d = rng.randint(1, d_max)
    n = rng.randint(2, n_max)
    half = rng.random() < 0.5
    if name == "lemma21":
        return Polynomial(rand_sampled_form(rng, n, kind="const" if half else "mixed"))
    if name == "thm22":
        return rand_sym_tensor(rng, d, n, diagonal=half, positive=True)
    if name in ("lemma25", "thm26"):
        return rand_sym_tensor(rng, d, n, diagonal=half)
    if name == "thm28":
        if rng.random() < 0.5:
            return rand_full_tensor(rng, d, n, kind="diagonal" if half else "general", positive=rng.random() < 0.7)
        return rand_sampled_form(rng, n, kind=rng.choice(["const", "mixed", "cancel"]), positive=rng.random() < 0.7)
    if name == "lemma32":
        if half:
            return rand_full_tensor(rng, d, n, kind="diagonal", positive=True)
        return rand_sampled_form(rng, n, kind="const", positive=True)
    if name == "thm33":
        return Polynomial(rand_sym_tensor(rng, d, n, diagonal=True, positive=True))
    if name == "thm34":
        return Polynomial(rand_sampled_form(rng, n, kind="const", positive=True))
    raise ValidationError(f"unknown theorem {name!r}")


def verify_corpus(name: str, count: int = 100, seed: int = 0, inner_trials: int = 20,
                  d_max: int = 4, n_max: int = 4) -> CheckReport:
    if name == "npower":
        return verify_npower(d_max=min(d_max, 5), n_max=n_max, trials=count, seed=seed)
    failures = 0
    first = None
    for k in range(count):
        obj = _draw(name, trial_rng(seed, 7, k), d_max, n_max)
        rep = verify_instance(name, obj, trials=inner_trials, seed=seed + k)
        if not rep.verdict:
            failures += 1
            if first is None:
                first = {"instance": k, "form": obj, "witness": rep.witness}
    return CheckReport(failures == 0, witness=first, trials=count, seed=seed, method=RANDOMIZED,
                       details={"instances": count, "failures": failures})
