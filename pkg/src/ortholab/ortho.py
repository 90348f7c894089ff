"""Disjointness combinatorics and orthosymmetry / orthogonal-additivity deciders.

A tuple is p-disjoint when its slots split into at least two blocks with
every cross-block pair disjoint. That happens exactly when the graph joining
non-disjoint slots is disconnected, which is how :func:`is_p_disjoint`
decides it; :func:`p_disjoint_by_partitions` is the brute-force oracle over
all set partitions.

On Q^d every non-constant basis tuple ``(e_i1, ..., e_in)`` is p-disjoint, so a
tensor is orthosymmetric iff it is p-orthosymmetric iff all its entries off
the constant tuples vanish. Those structural verdicts always come with a
verified witness when false. Forms on the PL model are decided by search:
first unit tents at the form's own sample points, then pattern-driven random
tuples.

The ``check_*`` functions evaluate both sides of an equivalence or
implication by separate procedures and report whether they agree.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from ortholab.checks import EXHAUSTIVE, RANDOMIZED, STRUCTURAL, CheckReport, trial_rng
from ortholab.config import LIMITS
from ortholab.errors import ValidationError
from ortholab.lattice import Vec, basis_tuple, is_disjoint as vec_disjoint
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
    is_symmetric,
    orderings,
    point_hats,
    symmetric_form,
)
from ortholab.pl import PLFunc, hat, is_support_disjoint, pl_is_disjoint
from ortholab.sampling import (
    disjoint_vec_pair_for_trial,
    rand_disjoint_pl_pair,
    rand_p_disjoint_pls,
    rand_p_disjoint_vecs,
    rand_pl,
    rand_vec,
)

DEFAULT_CHECK_TRIALS = 100


@dataclass(frozen=True)
class Partition:
    """Set partition of ``{1, ..., n}``; blocks sorted, each block sorted."""

    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(i for b in self.blocks for i in b)
        if seen != list(range(1, self.n + 1)) or any(not b for b in self.blocks):
            raise ValidationError(f"not a partition of 1..{self.n}: {self.blocks}")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: Dict[int, List[int]] = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        return cls(len(labels), tuple(sorted(tuple(g) for g in groups.values())))

    @property
    def m(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of ``{1..n}`` into at least two blocks, via restricted-growth strings."""
    if not 2 <= n <= LIMITS.max_partition_n:
        raise ValidationError(f"partition enumeration needs 2 <= n <= {LIMITS.max_partition_n}, got {n}")
    a = [0] * n
    # b[i] = 1 + max(a[:i]); the next string increments the rightmost a[i] < b[i].
    while True:
        if max(a) >= 1:
            yield Partition.from_labels(a)
        i = n - 1
        while i > 0 and a[i] == max(a[:i]) + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0


@functools.lru_cache(maxsize=None)
def _partitions(n: int) -> Tuple[Partition, ...]:
    return tuple(enumerate_partitions(n))


def disjoint(x, y) -> bool:
    if isinstance(x, Vec) and isinstance(y, Vec):
        return vec_disjoint(x, y)
    if isinstance(x, PLFunc) and isinstance(y, PLFunc):
        return pl_is_disjoint(x, y)
    raise ValidationError(f"cannot compare {type(x).__name__} with {type(y).__name__}")


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _check_tuple(elements: Sequence) -> None:
    if len(elements) < 2:
        raise ValidationError("p-disjointness needs at least two elements")
    kinds = {type(e) for e in elements}
    if len(kinds) != 1 or not kinds <= {Vec, PLFunc}:
        raise ValidationError("p-disjointness needs elements of a single model")


def disjointness_matrix(elements: Sequence) -> List[List[bool]]:
    n = len(elements)
    mat = [[False] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        mat[i][j] = mat[j][i] = disjoint(elements[i], elements[j])
    return mat


def is_p_disjoint(elements: Sequence, matrix=None) -> CheckReport:
    """Connectivity of the non-disjointness graph; a disconnected graph gives the witness partition."""
    _check_tuple(elements)
    n = len(elements)
    mat = matrix if matrix is not None else disjointness_matrix(elements)
    dsu = _DisjointSet(n)
    for i, j in itertools.combinations(range(n), 2):
        if not mat[i][j]:
            dsu.union(i, j)
    labels = [dsu.find(i) for i in range(n)]
    if len(set(labels)) >= 2:
        return CheckReport(True, witness=Partition.from_labels(labels))
    return CheckReport(False)


def p_disjoint_by_partitions(elements: Sequence, matrix=None) -> CheckReport:
    """Oracle: search every partition with >= 2 blocks for one with disjoint cross-block pairs."""
    _check_tuple(elements)
    mat = matrix if matrix is not None else disjointness_matrix(elements)
    for part in _partitions(len(elements)):
        if all(
            mat[i - 1][j - 1]
            for b1, b2 in itertools.combinations(part.blocks, 2)
            for i in b1
            for j in b2
        ):
            return CheckReport(True, witness=part, method=EXHAUSTIVE)
    return CheckReport(False, method=EXHAUSTIVE)


# --- orthosymmetry ---------------------------------------------------------


def _coordinate(form) -> bool:
    return isinstance(form, (FullTensor, SymTensor))


def _offdiagonal_witness(form, require_p: bool) -> Optional[dict]:
    for key in form.entries:
        if len(set(key)) == 1:
            continue
        idx = key if isinstance(form, FullTensor) else orderings(key)[0]
        args = basis_tuple(form.d, idx)
        value = evaluate(form, *args)
        if value == 0:
            continue
        w = {"args": args, "value": value}
        if require_p:
            rep = is_p_disjoint(args)
            assert rep.verdict, "non-constant basis tuples are p-disjoint"
            w["partition"] = rep.witness
        else:
            i = next(k for k in range(1, len(idx)) if idx[k] != idx[0])
            w["pair"] = (1, i + 1)
        return w
    return None


def _sampled_targets(form: SampledForm) -> Iterator[tuple]:
    hats = point_hats(form.points())
    for pts in form.merged():
        if len(set(pts)) > 1:
            yield tuple(hats[p] for p in pts)


def _random_tuple_with_disjoint_pair(rng, form, k: int):
    n = form.n
    a, b = sorted(rng.sample(range(n), 2))
    if isinstance(form, SampledForm):
        x, y = rand_disjoint_pl_pair(rng)
        args = [rand_pl(rng) for _ in range(n)]
    else:
        x, y = disjoint_vec_pair_for_trial(rng, form.d, k)
        args = [rand_vec(rng, form.d) for _ in range(n)]
    args[a], args[b] = x, y
    return tuple(args)


def _random_p_disjoint_tuple(rng, form, k: int):
    if isinstance(form, SampledForm):
        args, _ = rand_p_disjoint_pls(rng, form.n)
    else:
        args, _ = rand_p_disjoint_vecs(rng, form.d, form.n)
    return tuple(args)


def _search_vanishing(form, trials, seed, p: bool) -> CheckReport:
    """Randomized: look for a tuple of the right kind on which ``form`` is nonzero."""
    if isinstance(form, SampledForm):
        for args in _sampled_targets(form):
            ok = is_p_disjoint(args).verdict if p else _has_disjoint_pair(args)
            value = evaluate(form, *args)
            if ok and value != 0:
                return CheckReport(False, witness=_vanish_witness(args, value, p), seed=seed, method=RANDOMIZED,
                                   note="witness from unit tents at the form's sample points")
    gen = _random_p_disjoint_tuple if p else _random_tuple_with_disjoint_pair
    for k in range(trials):
        rng = trial_rng(seed, k)
        args = gen(rng, form, k)
        value = evaluate(form, *args)
        if value != 0:
            return CheckReport(False, witness=_vanish_witness(args, value, p), trials=k + 1, seed=seed, method=RANDOMIZED)
    return CheckReport(True, trials=trials, seed=seed, method=RANDOMIZED)


def _has_disjoint_pair(args) -> bool:
    return any(disjoint(x, y) for x, y in itertools.combinations(args, 2))


def _vanish_witness(args, value, p: bool) -> dict:
    w = {"args": tuple(args), "value": value}
    if p:
        w["partition"] = is_p_disjoint(args).witness
    else:
        w["pair"] = next(
            (i + 1, j + 1) for i, j in itertools.combinations(range(len(args)), 2) if disjoint(args[i], args[j])
        )
    return w


def is_orthosymmetric(A, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0, method: Optional[str] = None) -> CheckReport:
    """Does ``A`` vanish whenever two of its arguments are disjoint?"""
    form = as_form(A)
    if form.n < 2:
        return CheckReport(True, note="vacuous for n < 2")
    method = method or (STRUCTURAL if _coordinate(form) else RANDOMIZED)
    if method == STRUCTURAL:
        if not _coordinate(form):
            raise ValidationError("structural orthosymmetry is only defined on coordinate tensors")
        w = _offdiagonal_witness(form, require_p=False)
        return CheckReport(w is None, witness=w)
    return _search_vanishing(form, trials, seed, p=False)


def is_p_orthosymmetric(A, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0, method: Optional[str] = None) -> CheckReport:
    """Does ``A`` vanish on every p-disjoint tuple?"""
    form = as_form(A)
    if form.n < 2:
        return CheckReport(True, note="vacuous for n < 2")
    method = method or (STRUCTURAL if _coordinate(form) else RANDOMIZED)
    if method == STRUCTURAL:
        if not _coordinate(form):
            raise ValidationError("structural p-orthosymmetry is only defined on coordinate tensors")
        w = _offdiagonal_witness(form, require_p=True)
        return CheckReport(w is None, witness=w)
    return _search_vanishing(form, trials, seed, p=True)


# --- orthogonal additivity -------------------------------------------------


def oa_defect(P, x, y) -> Fraction:
    """``P(x + y) - P(x) - P(y)``."""
    return diag_eval(P, x + y) - diag_eval(P, x) - diag_eval(P, y)


def _mixed_multisets(sym) -> List[tuple]:
    """Keys of nonzero entries with at least two distinct labels, two-label ones first."""
    if isinstance(sym, SymTensor):
        keys = [k for k in sym.entries if len(set(k)) > 1]
    else:
        keys = [k for k in sym.merged() if len(set(k)) > 1]
    return sorted(keys, key=lambda k: (len(set(k)), k))


def scalar_scan(P, basis: Dict, mu: tuple, n: int) -> Optional[dict]:
    """Deterministic OA counterexample built from a nonzero mixed multiset ``mu``.

    With ``i`` the smallest label of ``mu`` and ``J`` the rest, take
    ``x = s * b_i`` and ``y = sum_{j in J} c_j * b_j``. The defect is a
    polynomial of degree < n in each of ``s, c_j`` whose coefficient on the
    monomial of ``mu`` is nonzero, so the grid ``{1..n}`` contains a
    non-root. When ``J`` is a single label the scan is over ``s`` only.
    """
    labels = sorted(set(mu))
    i, rest = labels[0], labels[1:]
    grid = range(1, n + 1)
    cs_iter = [(1,)] if len(rest) == 1 else itertools.product(grid, repeat=len(rest))
    for cs in cs_iter:
        y = None
        for c, j in zip(cs, rest):
            y = c * basis[j] if y is None else y + c * basis[j]
        for s in grid:
            x = s * basis[i]
            lhs = diag_eval(P, x + y)
            rhs = diag_eval(P, x) + diag_eval(P, y)
            if lhs != rhs:
                return {"x": x, "y": y, "P(x+y)": lhs, "P(x)+P(y)": rhs, "s": s}
    return None


def _defect_witness(P, x, y) -> Optional[dict]:
    lhs = diag_eval(P, x + y)
    rhs = diag_eval(P, x) + diag_eval(P, y)
    if lhs != rhs:
        return {"x": x, "y": y, "P(x+y)": lhs, "P(x)+P(y)": rhs}
    return None


def is_orthogonally_additive(P, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0) -> CheckReport:
    """``P(x + y) = P(x) + P(y)`` for disjoint ``x, y``?

    Coordinate polynomials: additive iff the symmetric tensor is diagonal; a
    non-diagonal one yields a scalar-scan witness, and a diagonal one is
    additionally cross-checked on ``trials`` disjoint pairs. PL polynomials:
    scalar scan over unit tents at the sample points, then random disjoint
    pairs.
    """
    P = as_polynomial(P)
    sym = symmetric_form(P)
    n = P.n
    if _coordinate(sym):
        mixed = _mixed_multisets(sym)
        if mixed:
            basis = {i: Vec.basis(sym.d, i) for i in range(sym.d)}
            w = scalar_scan(P, basis, mixed[0], n)
            assert w is not None, "a nonzero mixed entry always gives a scan witness"
            return CheckReport(False, witness=w)
        for k in range(trials):
            x, y = disjoint_vec_pair_for_trial(trial_rng(seed, k), sym.d, k)
            w = _defect_witness(P, x, y)
            if w is not None:
                return CheckReport(False, witness=w, trials=k + 1, seed=seed, method=RANDOMIZED)
        return CheckReport(True, trials=trials, seed=seed, note="diagonal tensor")
    hats = point_hats(sym.points())
    for mu in _mixed_multisets(sym)[:1]:
        w = scalar_scan(P, hats, mu, n)
        if w is not None:
            return CheckReport(False, witness=w, seed=seed, method=RANDOMIZED,
                               note="witness from unit tents at the sample points")
    for k in range(trials):
        x, y = rand_disjoint_pl_pair(trial_rng(seed, k))
        w = _defect_witness(P, x, y)
        if w is not None:
            return CheckReport(False, witness=w, trials=k + 1, seed=seed, method=RANDOMIZED)
    return CheckReport(True, trials=trials, seed=seed, method=RANDOMIZED)


# --- theorem checks ----------------------------------------------------------


def _mixed_power(A, x, y, i: int) -> Fraction:
    n = as_form(A).n
    return evaluate(A, *((x,) * i + (y,) * (n - i)))


def check_lemma25(A, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0) -> CheckReport:
    """p-orthosymmetric  <=>  ``A(x^i, y^(n-i)) = 0`` for disjoint x, y and 1 <= i <= n-1."""
    form = as_form(A)
    if not is_symmetric(form).verdict:
        raise ValidationError("check_lemma25 needs a symmetric form")
    lhs = is_p_orthosymmetric(form, trials=trials, seed=seed)
    n = form.n
    rhs_w = None
    if _coordinate(form):
        pairs = [(Vec.basis(form.d, a), Vec.basis(form.d, b)) for a, b in itertools.permutations(range(form.d), 2)]
        pairs += [disjoint_vec_pair_for_trial(trial_rng(seed, 1, k), form.d, k) for k in range(trials)]
    else:
        hats = point_hats(form.points())
        pairs = [(hats[a], hats[b]) for a, b in itertools.permutations(hats, 2)]
        pairs += [rand_disjoint_pl_pair(trial_rng(seed, 1, k)) for k in range(trials)]
    for x, y in pairs:
        for i in range(1, n):
            v = _mixed_power(form, x, y, i)
            if v != 0:
                rhs_w = {"x": x, "y": y, "i": i, "value": v}
                break
        if rhs_w:
            break
    rhs = rhs_w is None
    return CheckReport(
        lhs.verdict == rhs,
        witness=None if lhs.verdict == rhs else {"p_orthosymmetric": lhs.verdict, "mixed_powers_vanish": rhs},
        trials=trials,
        seed=seed,
        method=lhs.method,
        details={
            "p_orthosymmetric": lhs.verdict,
            "p_orthosymmetric_witness": lhs.witness,
            "mixed_powers_vanish": rhs,
            "mixed_power_witness": rhs_w,
            "i_range": [1, n - 1],
        },
    )


def _equivalence(lhs: CheckReport, rhs: CheckReport, names: Tuple[str, str], trials, seed) -> CheckReport:
    agree = lhs.verdict == rhs.verdict
    return CheckReport(
        agree,
        witness=None if agree else {names[0]: lhs.verdict, names[1]: rhs.verdict},
        trials=trials,
        seed=seed,
        method=lhs.method if lhs.method == rhs.method else f"{lhs.method}+{rhs.method}",
        details={
            names[0]: lhs.verdict,
            names[0] + "_witness": lhs.witness,
            names[1]: rhs.verdict,
            names[1] + "_witness": rhs.witness,
        },
    )


def check_thm22(A, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0) -> CheckReport:
    """For symmetric positive A: orthosymmetric  <=>  its diagonal is orthogonally additive."""
    form = as_form(A)
    if not is_symmetric(form).verdict:
        raise ValidationError("check_thm22 needs a symmetric form")
    pos = is_positive(form, seed=seed)
    if not pos.verdict:
        raise ValidationError("check_thm22 needs a positive form")
    lhs = is_orthosymmetric(form, trials=trials, seed=seed)
    rhs = is_orthogonally_additive(Polynomial(form), trials=trials, seed=seed)
    return _equivalence(lhs, rhs, ("orthosymmetric", "orthogonally_additive"), trials, seed)


def check_thm26(A, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0) -> CheckReport:
    """For symmetric A: p-orthosymmetric  <=>  its diagonal is orthogonally additive."""
    form = as_form(A)
    if not is_symmetric(form).verdict:
        raise ValidationError("check_thm26 needs a symmetric form")
    lhs = is_p_orthosymmetric(form, trials=trials, seed=seed)
    rhs = is_orthogonally_additive(Polynomial(form), trials=trials, seed=seed)
    return _equivalence(lhs, rhs, ("p_orthosymmetric", "orthogonally_additive"), trials, seed)


def check_thm28(T, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0) -> CheckReport:
    """positive and p-orthosymmetric  =>  symmetric; true also when the premises fail."""
    form = as_form(T)
    pos = is_positive(form, seed=seed)
    porth = is_p_orthosymmetric(form, trials=trials, seed=seed)
    sym = is_symmetric(form)
    holds = not (pos.verdict and porth.verdict) or sym.verdict
    return CheckReport(
        holds,
        witness=None if holds else {"form": form, "asymmetry": sym.witness},
        trials=trials,
        seed=seed,
        method=porth.method,
        details={
            "positive": pos.verdict,
            "p_orthosymmetric": porth.verdict,
            "symmetric": sym.verdict,
            "vacuous": not (pos.verdict and porth.verdict),
        },
    )


def touching_hats() -> Tuple[PLFunc, PLFunc]:
    """Tents on [0, 1/2] and [1/2, 1]: disjoint, but their supports share the point 1/2."""
    return hat(Fraction(1, 4), Fraction(1, 4)), hat(Fraction(3, 4), Fraction(1, 4))


def _additive_on(P, pairs) -> Tuple[bool, Optional[dict], int]:
    count = 0
    for x, y in pairs:
        count += 1
        w = _defect_witness(P, x, y)
        if w is not None:
            return False, w, count
    return True, None, count


def _scan_pairs(P, hats, n) -> List[tuple]:
    sym = symmetric_form(P)
    out = []
    for mu in _mixed_multisets(sym)[:1]:
        w = scalar_scan(P, hats, mu, n)
        if w is not None:
            out.append((w["x"], w["y"]))
    return out


def check_lemma21(P, trials: int = DEFAULT_CHECK_TRIALS, seed: int = 0) -> CheckReport:
    """Additive on support-disjoint pairs  =>  additive on all disjoint pairs (PL model).

    The disjoint family always contains the touching-supports tent pair.
    """
    P = as_polynomial(P)
    if not isinstance(P.form, SampledForm):
        raise ValidationError("check_lemma21 needs a polynomial built from a sampled form")
    pts = P.form.points()
    sep = point_hats(pts, separated=True)
    touch = point_hats(pts)

    sd_pairs = _scan_pairs(P, sep, P.n) + [rand_disjoint_pl_pair(trial_rng(seed, 0, k), support_disjoint=True) for k in range(trials)]
    assert all(is_support_disjoint(x, y) for x, y in sd_pairs)
    premise, premise_w, _ = _additive_on(P, sd_pairs)

    boundary = [touching_hats()]
    assert all(pl_is_disjoint(x, y) and not is_support_disjoint(x, y) for x, y in boundary)
    d_pairs = boundary + _scan_pairs(P, touch, P.n) + [rand_disjoint_pl_pair(trial_rng(seed, 1, k)) for k in range(trials)]
    assert all(pl_is_disjoint(x, y) for x, y in d_pairs)
    conclusion, conclusion_w, _ = _additive_on(P, d_pairs)

    holds = (not premise) or conclusion
    return CheckReport(
        holds,
        witness=None if holds else conclusion_w,
        trials=trials,
        seed=seed,
        method=RANDOMIZED,
        details={
            "support_disjoint_additive": premise,
            "support_disjoint_witness": premise_w,
            "disjoint_additive": conclusion,
            "disjoint_witness": conclusion_w,
            "boundary_pairs": len(boundary),
        },
    )
