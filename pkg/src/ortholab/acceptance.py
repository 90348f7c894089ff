"""The acceptance suite: nine end-to-end criteria with exact checks and time budgets.

``run_all()`` returns one :class:`Criterion` per check; ``ortholab verify-all``
and ``tests/test_acceptance.py`` both print ``Criterion.line()`` for each.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Dict, List, Optional, Tuple

from ortholab.checks import derive_seed, trial_rng
from ortholab.config import LIMITS
from ortholab.dsl import format_script, parse
from ortholab.errors import ValidationError
from ortholab.generators import rand_full_tensor, rand_sampled_form, rand_sym_tensor
from ortholab.lattice import Vec, basis_tuple
from ortholab.multilinear import (
    Polynomial,
    SampledForm,
    diag_eval,
    eval_full,
    evaluate,
    polarize,
    symmetric_form,
    to_full,
)
from ortholab.npower import (
    build_npower_quotient,
    expand,
    kernel_annihilated,
    odot,
    represent_pl_polynomial,
    represent_polynomial,
)
from ortholab.ortho import (
    check_lemma21,
    check_lemma25,
    check_thm26,
    check_thm28,
    disjoint,
    is_p_disjoint,
    p_disjoint_by_partitions,
    touching_hats,
)
from ortholab.pl import (
    is_support_disjoint,
    pl_abs,
    pl_add,
    pl_is_disjoint,
    pl_join,
    pl_meet,
    pl_mul,
    pl_neg,
    pl_pos,
)
from ortholab.sampling import rand_p_disjoint_vecs, rand_pl, rand_point, rand_rat, rand_vec


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: Optional[float] = None
    stats: Dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        return f"[{status}] criterion {self.number}: {self.name}: {self.detail} [{self.seconds:.2f}s{budget}]"


def _timed(number: int, name: str, budget: Optional[float], body: Callable[[], Tuple[bool, str, Dict]]) -> Criterion:
    start = time.perf_counter()
    ok, detail, stats = body()
    seconds = time.perf_counter() - start
    if budget is not None and seconds > budget:
        ok = False
        detail += "; over time budget"
    return Criterion(number, name, ok, detail, seconds, budget, stats)


# 1 -----------------------------------------------------------------------------


def _pattern_vec(rng, d: int, mask: int) -> Vec:
    return Vec([rand_rat(rng, nonzero=True) if mask >> i & 1 else 0 for i in range(d)])


def _cross_blocks_disjoint(part, mat) -> bool:
    return all(mat[i - 1][j - 1] for b1, b2 in itertools.combinations(part.blocks, 2) for i in b1 for j in b2)


def criterion_p_disjoint(d_max: int = 4, n_max: int = 4, seed: int = 0) -> Criterion:
    """Every support-pattern tuple: graph connectivity against set-partition enumeration."""

    def body():
        rng = trial_rng(seed, 1)
        tuples = mismatches = bad_witness = 0
        for d in range(1, d_max + 1):
            patterns = [_pattern_vec(rng, d, m) for m in range(2**d)]
            table = [[disjoint(a, b) for b in patterns] for a in patterns]
            for m1, m2 in itertools.product(range(2**d), repeat=2):
                assert table[m1][m2] == (m1 & m2 == 0)
            for n in range(2, n_max + 1):
                for combo in itertools.product(range(2**d), repeat=n):
                    elems = [patterns[m] for m in combo]
                    mat = [[table[a][b] for b in combo] for a in combo]
                    fast = is_p_disjoint(elems, matrix=mat)
                    slow = p_disjoint_by_partitions(elems, matrix=mat)
                    tuples += 1
                    if fast.verdict != slow.verdict:
                        mismatches += 1
                    elif fast.verdict and not (fast.witness.m >= 2 and _cross_blocks_disjoint(fast.witness, mat)):
                        bad_witness += 1
        ok = mismatches == 0 and bad_witness == 0
        return ok, f"{tuples} tuples, {mismatches} disagreements, {bad_witness} bad witnesses", {"tuples": tuples}

    return _timed(1, "p-disjointness vs partition enumeration", 30, body)


# 2 -----------------------------------------------------------------------------


def criterion_polarization(count: int = 500, args_each: int = 20, d_max: int = 4, seed: int = 0) -> Criterion:
    def body():
        bad = 0
        for k in range(count):
            rng = trial_rng(seed, 2, k)
            d, n = rng.randint(1, d_max), rng.choice([2, 3, 4])
            S = rand_sym_tensor(rng, d, n, diagonal=rng.random() < 0.2)
            P, A = Polynomial(S), to_full(S)
            for _ in range(args_each):
                xs = [rand_vec(rng, d) for _ in range(n)]
                if polarize(P, *xs) != eval_full(A, *xs):
                    bad += 1
        return bad == 0, f"{count} tensors x {args_each} tuples, {bad} mismatches", {}

    return _timed(2, "polarization recovers the symmetric form", 60, body)


# 3, 4 ----------------------------------------------------------------------------


def _corpus_34(count: int, d_max: int, n_max: int, seed: int):
    for k in range(count):
        rng = trial_rng(seed, 3, k)
        d, n = rng.randint(1, d_max), rng.randint(2, n_max)
        yield rand_sym_tensor(rng, d, n, diagonal=k % 2 == 0)


def _porth_witness_ok(A, w) -> bool:
    args = w["args"]
    return is_p_disjoint(list(args)).verdict and evaluate(A, *args) == w["value"] != 0


def _oa_witness_ok(A, w, n) -> bool:
    x, y = w["x"], w["y"]
    P = Polynomial(A)
    lhs, rhs = diag_eval(P, x + y), diag_eval(P, x) + diag_eval(P, y)
    return disjoint(x, y) and lhs != rhs and w["s"] in range(1, n + 1)


def criterion_thm26(count: int = 1000, d_max: int = 4, n_max: int = 4, seed: int = 0, trials: int = 20) -> Criterion:
    def body():
        disagree = unverified = falses = 0
        for k, A in enumerate(_corpus_34(count, d_max, n_max, seed)):
            rep = check_thm26(A, trials=trials, seed=derive_seed(seed, 3, k))
            det = rep.details
            if not rep.verdict:
                disagree += 1
                continue
            if not det["p_orthosymmetric"]:
                falses += 1
                pw, ow = det["p_orthosymmetric_witness"], det["orthogonally_additive_witness"]
                if not (_porth_witness_ok(A, pw) and _oa_witness_ok(A, ow, A.n)):
                    unverified += 1
        ok = disagree == 0 and unverified == 0
        return ok, f"{count} tensors, {disagree} disagreements, {falses} false verdicts, {unverified} unverified", {}

    return _timed(3, "p-orthosymmetric iff orthogonally additive", None, body)


def criterion_lemma25(count: int = 1000, d_max: int = 4, n_max: int = 4, seed: int = 0, trials: int = 20) -> Criterion:
    def body():
        disagree = unverified = 0
        for k, A in enumerate(_corpus_34(count, d_max, n_max, seed)):
            rep = check_lemma25(A, trials=trials, seed=derive_seed(seed, 4, k))
            det = rep.details
            if not rep.verdict:
                disagree += 1
            elif not det["mixed_powers_vanish"]:
                w = det["mixed_power_witness"]
                x, y, i = w["x"], w["y"], w["i"]
                n = A.n
                if not (disjoint(x, y) and 1 <= i <= n - 1 and evaluate(A, *([x] * i + [y] * (n - i))) != 0):
                    unverified += 1
        ok = disagree == 0 and unverified == 0
        return ok, f"{count} tensors, 1 <= i <= n-1, {disagree} disagreements, {unverified} unverified", {}

    return _timed(4, "p-orthosymmetry iff mixed powers vanish", None, body)


# 5 -----------------------------------------------------------------------------


def _thm28_form(rng, d_max: int, n_max: int):
    d, n = rng.randint(1, d_max), rng.randint(2, n_max)
    positive = rng.random() < 0.7
    r = rng.random()
    if r < 0.35:
        return rand_full_tensor(rng, d, n, kind="diagonal", positive=positive)
    if r < 0.6:
        return rand_full_tensor(rng, d, n, kind="general", positive=positive)
    return rand_sampled_form(rng, n, kind=rng.choice(["const", "mixed", "cancel"]), positive=positive)


def criterion_thm28(count: int = 10_000, d_max: int = 4, n_max: int = 4, seed: int = 0, trials: int = 5) -> Criterion:
    def body():
        counterexamples = premises = 0
        for k in range(count):
            rng = trial_rng(seed, 5, k)
            T = _thm28_form(rng, d_max, n_max)
            rep = check_thm28(T, trials=trials, seed=derive_seed(seed, 5, k))
            counterexamples += not rep.verdict
            premises += not rep.details["vacuous"]
        ok = counterexamples == 0 and count >= 10_000
        return ok, f"{count} forms, {premises} satisfy both premises, {counterexamples} counterexamples", {}

    return _timed(5, "positive and p-orthosymmetric forms are symmetric", None, body)


# 6 -----------------------------------------------------------------------------


def criterion_quotient(d_max: int = 5, n_max: int = 4, forms: int = 50, seed: int = 0) -> Criterion:
    def body():
        shapes, problems = [], []
        for d in range(1, d_max + 1):
            for n in range(2, n_max + 1):
                if d**n > LIMITS.max_free_dim:
                    continue
                model = build_npower_quotient(d, n)
                shapes.append((d, n))
                if model.dim != d:
                    problems.append(f"dim {model.dim} at d={d} n={n}")
                killed = {model.basis[next(iter(v))] for v in model.kernel}
                for idx in model.basis:
                    xs = basis_tuple(d, idx)
                    if model.induced(xs) != odot(*xs):
                        problems.append(f"induced product at {idx}")
                    if (idx in killed) != is_p_disjoint(list(xs)).verdict:
                        problems.append(f"kernel membership at {idx}")
                rng = trial_rng(seed, 6, d, n)
                for _ in range(forms):
                    T = rand_full_tensor(rng, d, n, kind="diagonal", positive=rng.random() < 0.5)
                    if not kernel_annihilated(T, model).verdict:
                        problems.append(f"kernel not annihilated at d={d} n={n}")
                    xs, _ = rand_p_disjoint_vecs(rng, d, n)
                    if any(model.project(model.pure_tensor(xs))):
                        problems.append(f"p-disjoint pure tensor survives at d={d} n={n}")
        ok = not problems
        detail = f"{len(shapes)} shapes, {forms} forms each, {len(problems)} problems"
        return ok, detail + (f" (first: {problems[0]})" if problems else ""), {"shapes": shapes}

    return _timed(6, "n-power quotient has dimension d and product odot", 60, body)


# 7 -----------------------------------------------------------------------------


def criterion_representation(count: int = 200, inputs: int = 100, d_max: int = 4, n_max: int = 4,
                             seed: int = 0) -> Criterion:
    def body():
        coord_bad = pl_bad = trips = 0
        for k in range(count):
            rng = trial_rng(seed, 7, 0, k)
            d, n = rng.randint(1, d_max), rng.randint(2, n_max)
            P = Polynomial(rand_sym_tensor(rng, d, n, diagonal=True, positive=True))
            L = represent_polynomial(P, trials=10, seed=k)
            for _ in range(inputs):
                x = rand_vec(rng, d)
                coord_bad += diag_eval(P, x) != L(odot(*([x] * n)))
            trips += expand(L, n) != symmetric_form(P)
        for k in range(count):
            rng = trial_rng(seed, 7, 1, k)
            n = rng.randint(2, n_max)
            P = Polynomial(rand_sampled_form(rng, n, kind="const", positive=True))
            L = represent_pl_polynomial(P)
            for _ in range(inputs):
                f = rand_pl(rng)
                pl_bad += diag_eval(P, f) != L(pl_mul(*([f] * n)))
            trips += expand(L, n).canonical() != symmetric_form(P).canonical()
        ok = coord_bad == pl_bad == trips == 0
        detail = (f"{count} polynomials per model x {inputs} inputs, {coord_bad} coordinate and "
                  f"{pl_bad} PL mismatches, {trips} round-trip failures")
        return ok, detail, {}

    return _timed(7, "representation P(x) = L(x ⊙ ... ⊙ x)", None, body)


# 8 -----------------------------------------------------------------------------


def criterion_pl_lattice(count: int = 200, points: int = 50, seed: int = 0) -> Criterion:
    def body():
        bad = 0
        for k in range(count):
            rng = trial_rng(seed, 8, k)
            f, g = rand_pl(rng), rand_pl(rng)
            j, m, a = pl_join(f, g), pl_meet(f, g), pl_abs(f)
            ts = [rand_point(rng) for _ in range(points - 2)] + [Fraction(0), Fraction(1)]
            for t in ts:
                ft, gt = f(t), g(t)
                bad += j(t) != max(ft, gt)
                bad += m(t) != min(ft, gt)
                bad += a(t) != abs(ft)
            bad += pl_add(pl_pos(f), pl_neg(f)) != a
        x, y = touching_hats()
        boundary = pl_is_disjoint(x, y) and not is_support_disjoint(x, y)
        lemma_ok = True
        for form in ({(Fraction(1, 2),) * 2: 2}, {(Fraction(1, 2),) * 3: 1, (Fraction(1, 4),) * 3: 3}):
            P = Polynomial(SampledForm(len(next(iter(form))), [(w, pts) for pts, w in form.items()]))
            rep = check_lemma21(P, trials=20, seed=seed)
            lemma_ok &= rep.verdict and rep.details["boundary_pairs"] >= 1 and rep.details["disjoint_additive"]
        ok = bad == 0 and boundary and lemma_ok
        detail = (f"{count} pairs x {points} points, {bad} mismatches, touching tents disjoint and not "
                  f"support-disjoint: {boundary}, boundary lemma check: {lemma_ok}")
        return ok, detail, {}

    return _timed(8, "PL lattice operations", None, body)


# 9 -----------------------------------------------------------------------------


def corpus_scripts() -> List[Tuple[str, str]]:
    """``(name, text)`` for every bundled ``.ol`` script, sorted by name."""
    root = resources.files("ortholab") / "corpus"
    out = [(p.name, p.read_text(encoding="utf-8")) for p in root.iterdir() if p.name.endswith(".ol")]
    return sorted(out)


def expected_exit(text: str) -> int:
    first = text.splitlines()[0]
    if not first.startswith("# exit:"):
        raise ValidationError("corpus scripts start with '# exit: N'")
    return int(first.split(":", 1)[1])


def _cli(argv: List[str]) -> Tuple[int, str]:
    from ortholab.cli import main

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def criterion_cli(seed: int = 0) -> Criterion:
    def body():
        problems = []
        scripts = corpus_scripts()
        root = resources.files("ortholab") / "corpus"
        codes = set()
        for name, text in scripts:
            with resources.as_file(root / name) as path:
                argv = ["run", str(path), "--seed", str(seed)]
                c1, o1 = _cli(argv)
                c2, o2 = _cli(argv)
            codes.add(c1)
            if o1 != o2 or c1 != c2:
                problems.append(f"{name}: nondeterministic report")
            if c1 != expected_exit(text):
                problems.append(f"{name}: exit {c1}, expected {expected_exit(text)}")
            try:
                ast = parse(text)
            except ValidationError:
                continue
            if parse(format_script(ast)) != ast:
                problems.append(f"{name}: round trip changed the AST")
        if codes != {0, 1, 2}:
            problems.append(f"corpus exercises exit codes {sorted(codes)} only")
        ok = not problems
        detail = f"{len(scripts)} scripts, exit codes {sorted(codes)}, {len(problems)} problems"
        return ok, detail + (f" (first: {problems[0]})" if problems else ""), {}

    return _timed(9, "CLI determinism, round trip and exit codes", None, body)


def run_all(d_max: Optional[int] = None, n_max: Optional[int] = None, seed: int = 0) -> List[Criterion]:
    """All nine criteria; ``d_max``/``n_max`` override the default shape ranges."""
    d4, n4 = d_max or 4, n_max or 4
    return [
        criterion_p_disjoint(d_max=d4, n_max=n4, seed=seed),
        criterion_polarization(d_max=d4, seed=seed),
        criterion_thm26(d_max=d4, n_max=n4, seed=seed),
        criterion_lemma25(d_max=d4, n_max=n4, seed=seed),
        criterion_thm28(d_max=d4, n_max=n4, seed=seed),
        criterion_quotient(d_max=d_max or 5, n_max=n4, seed=seed),
        criterion_representation(d_max=d4, n_max=n4, seed=seed),
        criterion_pl_lattice(seed=seed),
        criterion_cli(seed=seed),
    ]
