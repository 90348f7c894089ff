"""n-linear forms and their diagonal polynomials on both models.

Three representations of a scalar-valued n-linear form:

* :class:`FullTensor` -- sparse map ``(i1, ..., in) -> value`` on Q^d, possibly asymmetric;
* :class:`SymTensor` -- one value per sorted multiset of indices, standing for the
  symmetric tensor taking that value at every ordering;
* :class:`SampledForm` -- ``T(f1, ..., fn) = sum_k w_k * f1(p_k1) * ... * fn(p_kn)``
  on PL functions.

A :class:`Polynomial` wraps one of these and evaluates on the diagonal.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from ortholab.checks import RANDOMIZED, STRUCTURAL, CheckReport, trial_rng
from ortholab.config import LIMITS, require
from ortholab.errors import ValidationError
from ortholab.lattice import Vec, basis_tuple, rat
from ortholab.pl import PLFunc, hat
from ortholab.sampling import point_gap, rand_pl

Index = Tuple[int, ...]
Points = Tuple[Fraction, ...]


def _check_shape(d: int, n: int) -> None:
    if d < 1 or n < 1:
        raise ValidationError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    require(d <= LIMITS.max_dim, f"dimension {d} exceeds limit {LIMITS.max_dim}")
    require(n <= LIMITS.max_arity, f"arity {n} exceeds limit {LIMITS.max_arity}")


@dataclass(frozen=True)
class FullTensor:
    d: int
    n: int
    entries: Dict[Index, Fraction]

    def __init__(self, d: int, n: int, entries=None):
        _check_shape(d, n)
        clean = {}
        for key, value in (entries or {}).items():
            key = tuple(int(i) for i in key)
            if len(key) != n or any(not 0 <= i < d for i in key):
                raise ValidationError(f"index tuple {key} out of range for d={d}, n={n}")
            value = rat(value)
            if value != 0:
                clean[key] = value
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, key: Index) -> Fraction:
        return self.entries.get(tuple(key), Fraction(0))

    def __add__(self, other: "FullTensor") -> "FullTensor":
        _same_shape(self, other)
        out = defaultdict(Fraction, self.entries)
        for k, v in other.entries.items():
            out[k] += v
        return FullTensor(self.d, self.n, out)

    def __neg__(self) -> "FullTensor":
        return FullTensor(self.d, self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "FullTensor") -> "FullTensor":
        return self + (-other)

    def permuted(self, perm: Sequence[int]) -> "FullTensor":
        """The form ``(x1..xn) -> A(x_perm[0], ..., x_perm[n-1])``."""
        inv = [0] * self.n
        for pos, src in enumerate(perm):
            inv[src] = pos
        return FullTensor(self.d, self.n, {tuple(k[inv[j]] for j in range(self.n)): v for k, v in self.entries.items()})


@dataclass(frozen=True)
class SymTensor:
    d: int
    n: int
    entries: Dict[Index, Fraction]

    def __init__(self, d: int, n: int, entries=None):
        _check_shape(d, n)
        clean = {}
        for key, value in (entries or {}).items():
            key = tuple(sorted(int(i) for i in key))
            if len(key) != n or any(not 0 <= i < d for i in key):
                raise ValidationError(f"multiset {key} out of range for d={d}, n={n}")
            if key in clean:
                raise ValidationError(f"multiset {key} given twice")
            value = rat(value)
            clean[key] = value
        clean = {k: v for k, v in clean.items() if v != 0}
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, key: Index) -> Fraction:
        return self.entries.get(tuple(sorted(key)), Fraction(0))

    def __add__(self, other: "SymTensor") -> "SymTensor":
        _same_shape(self, other)
        out = defaultdict(Fraction, self.entries)
        for k, v in other.entries.items():
            out[k] += v
        return SymTensor(self.d, self.n, out)

    def __neg__(self) -> "SymTensor":
        return SymTensor(self.d, self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + (-other)

    def is_diagonal(self) -> bool:
        return all(k[0] == k[-1] for k in self.entries)


def diagonal_tensor(coeffs: Sequence, n: int) -> SymTensor:
    """``sum_i c_i x_i^n`` as a symmetric tensor."""
    return SymTensor(len(coeffs), n, {(i,) * n: c for i, c in enumerate(coeffs)})


def _same_shape(a, b) -> None:
    if (a.d, a.n) != (b.d, b.n):
        raise ValidationError(f"shape mismatch: (d={a.d}, n={a.n}) vs (d={b.d}, n={b.n})")


@dataclass(frozen=True)
class SampledForm:
    n: int
    terms: Tuple[Tuple[Fraction, Points], ...]

    def __init__(self, n: int, terms: Iterable = ()):
        if n < 1:
            raise ValidationError("arity must be positive")
        require(n <= LIMITS.max_arity, f"arity {n} exceeds limit {LIMITS.max_arity}")
        clean = []
        for weight, pts in terms:
            weight = rat(weight)
            pts = tuple(rat(p) for p in pts)
            if len(pts) != n:
                raise ValidationError(f"term has {len(pts)} points, arity is {n}")
            if any(not 0 <= p <= 1 for p in pts):
                raise ValidationError(f"sample points must lie in [0, 1]: {pts}")
            if weight != 0:
                clean.append((weight, pts))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", tuple(clean))

    def merged(self) -> Dict[Points, Fraction]:
        """Total weight per point tuple; these weights determine the form uniquely."""
        out: Dict[Points, Fraction] = defaultdict(Fraction)
        for w, pts in self.terms:
            out[pts] += w
        return {k: v for k, v in sorted(out.items()) if v != 0}

    def canonical(self) -> "SampledForm":
        return SampledForm(self.n, [(w, p) for p, w in self.merged().items()])

    def points(self) -> List[Fraction]:
        return sorted({p for _, pts in self.terms for p in pts})

    def __add__(self, other: "SampledForm") -> "SampledForm":
        if self.n != other.n:
            raise ValidationError("arity mismatch")
        return SampledForm(self.n, self.terms + other.terms).canonical()

    def __neg__(self) -> "SampledForm":
        return SampledForm(self.n, [(-w, p) for w, p in self.terms])

    def __sub__(self, other: "SampledForm") -> "SampledForm":
        return self + (-other)


Form = Union[FullTensor, SymTensor, SampledForm]


@dataclass(frozen=True)
class Polynomial:
    """``P(x) = A(x, ..., x)`` for an underlying form ``A``."""

    form: Form

    @property
    def n(self) -> int:
        return self.form.n

    def __call__(self, x) -> Fraction:
        return diag_eval(self, x)


def as_polynomial(obj) -> Polynomial:
    return obj if isinstance(obj, Polynomial) else Polynomial(obj)


def as_form(obj) -> Form:
    return obj.form if isinstance(obj, Polynomial) else obj


# --- combinatorics of multisets -------------------------------------------


@lru_cache(maxsize=None)
def orderings(mu: Index) -> Tuple[Index, ...]:
    """All distinct orderings of the multiset ``mu``."""
    return tuple(sorted(set(itertools.permutations(mu))))


@lru_cache(maxsize=None)
def multiplicity(mu: Index) -> int:
    """Number of distinct orderings: ``n! / prod(count!)``."""
    out = math.factorial(len(mu))
    for c in Counter(mu).values():
        out //= math.factorial(c)
    return out


def multisets(d: int, n: int) -> Iterable[Index]:
    return itertools.combinations_with_replacement(range(d), n)


def to_full(S: SymTensor) -> FullTensor:
    return FullTensor(S.d, S.n, {o: v for mu, v in S.entries.items() for o in orderings(mu)})


# --- evaluation -------------------------------------------------------------


def _check_vec_args(form, xs: Sequence) -> None:
    if len(xs) != form.n:
        raise ValidationError(f"arity mismatch: form has n={form.n}, got {len(xs)} arguments")
    for x in xs:
        if not isinstance(x, Vec):
            raise ValidationError(f"coordinate forms take Vec arguments, got {type(x).__name__}")
        if x.dim != form.d:
            raise ValidationError(f"dimension mismatch: form has d={form.d}, argument has {x.dim}")


def eval_full(A: FullTensor, *xs: Vec) -> Fraction:
    _check_vec_args(A, xs)
    total = Fraction(0)
    for idx, v in A.entries.items():
        term = v
        for x, i in zip(xs, idx):
            term *= x.entries[i]
            if not term:
                break
        total += term
    return total


def eval_sym(S: SymTensor, *xs: Vec) -> Fraction:
    _check_vec_args(S, xs)
    total = Fraction(0)
    for mu, v in S.entries.items():
        inner = Fraction(0)
        for idx in orderings(mu):
            term = Fraction(1)
            for x, i in zip(xs, idx):
                term *= x.entries[i]
                if not term:
                    break
            inner += term
        total += v * inner
    return total


def eval_sampled(T: SampledForm, *fs: PLFunc) -> Fraction:
    if len(fs) != T.n:
        raise ValidationError(f"arity mismatch: form has n={T.n}, got {len(fs)} arguments")
    for f in fs:
        if not isinstance(f, PLFunc):
            raise ValidationError(f"sampled forms take PL arguments, got {type(f).__name__}")
    total = Fraction(0)
    for w, pts in T.terms:
        term = w
        for f, p in zip(fs, pts):
            term *= f(p)
            if not term:
                break
        total += term
    return total


def evaluate(form, *args) -> Fraction:
    form = as_form(form)
    if isinstance(form, FullTensor):
        return eval_full(form, *args)
    if isinstance(form, SymTensor):
        return eval_sym(form, *args)
    if isinstance(form, SampledForm):
        return eval_sampled(form, *args)
    raise ValidationError(f"not a form: {type(form).__name__}")


def diag_eval(P, x) -> Fraction:
    """``P(x) = A(x, ..., x)``.

    For a SymTensor this is ``sum_mu mult(mu) * A[mu] * x^mu``.
    """
    form = as_form(P)
    if isinstance(form, SymTensor):
        _check_vec_args(form, (x,) * form.n)
        total = Fraction(0)
        for mu, v in form.entries.items():
            term = v * multiplicity(mu)
            for i in mu:
                term *= x.entries[i]
            total += term
        return total
    return evaluate(form, *((x,) * form.n))


def symmetrize(A: FullTensor) -> SymTensor:
    """Average of ``A`` over the distinct orderings of each multiset."""
    sums: Dict[Index, Fraction] = defaultdict(Fraction)
    for idx, v in A.entries.items():
        sums[tuple(sorted(idx))] += v
    return SymTensor(A.d, A.n, {mu: s / multiplicity(mu) for mu, s in sums.items()})


def symmetrize_sampled(T: SampledForm) -> SampledForm:
    """Average over slot permutations: each term's weight is spread over the distinct orderings of its points."""
    terms = []
    for w, pts in T.terms:
        perms = sorted(set(itertools.permutations(pts)))
        terms.extend((w / len(perms), p) for p in perms)
    return SampledForm(T.n, terms).canonical()


def symmetric_form(P) -> Form:
    """The unique symmetric n-linear form with diagonal ``P``."""
    form = as_form(P)
    if isinstance(form, FullTensor):
        return symmetrize(form)
    if isinstance(form, SampledForm):
        return symmetrize_sampled(form)
    return form


def polarize(P, *xs) -> Fraction:
    """``1/(n! 2^n) * sum_eps eps_1...eps_n * P(eps_1 x_1 + ... + eps_n x_n)``.

    Works for any elements supporting ``+`` and scalar ``*``.
    """
    P = as_polynomial(P)
    n = len(xs)
    if n < 1:
        raise ValidationError("polarization needs at least one argument")
    if n != P.n:
        raise ValidationError(f"arity mismatch: polynomial has degree {P.n}, got {n} arguments")
    require(n <= LIMITS.max_arity, f"polarization arity {n} exceeds limit {LIMITS.max_arity}")
    total = Fraction(0)
    for signs in itertools.product((1, -1), repeat=n):
        z = signs[0] * xs[0]
        for s, x in zip(signs[1:], xs[1:]):
            z = z + s * x
        total += math.prod(signs) * diag_eval(P, z)
    return total / (math.factorial(n) * 2**n)


# --- point hats -------------------------------------------------------------


def point_hats(points: Sequence[Fraction], separated: bool = False) -> Dict[Fraction, PLFunc]:
    """Unit tents at each distinct point, pairwise disjoint.

    Default radius is half the smallest gap, so neighbouring tents touch at a
    common zero. ``separated`` shrinks it to a third so supports are disjoint.
    """
    pts = sorted(set(points))
    r = point_gap(pts) / (3 if separated else 2)
    return {p: hat(p, r) for p in pts}


# --- positivity and symmetry -------------------------------------------------


def is_positive(form, trials: int = 200, seed: int = 0) -> CheckReport:
    """Positivity of a form (or of a polynomial's symmetric form).

    On Q^d the positive cone is generated by basis vectors, so a tensor is
    positive iff all its entries are nonnegative. A sampled form is positive
    iff every merged point-tuple weight is nonnegative; a negative merged
    weight is exposed by unit tents at that tuple's points.
    """
    if isinstance(form, Polynomial):
        form = symmetric_form(form)
    if isinstance(form, (FullTensor, SymTensor)):
        for key, v in form.entries.items():
            if v < 0:
                idx = key if isinstance(form, FullTensor) else orderings(key)[0]
                return CheckReport(False, witness={"args": basis_tuple(form.d, idx), "value": v})
        return CheckReport(True)
    if not isinstance(form, SampledForm):
        raise ValidationError(f"not a form: {type(form).__name__}")
    if all(w >= 0 for w, _ in form.terms):
        return CheckReport(True)
    merged = form.merged()
    if all(w >= 0 for w in merged.values()):
        return CheckReport(True, note="negative raw weights cancel after merging equal point tuples")
    hats = point_hats(form.points())
    for pts, w in merged.items():
        if w < 0:
            args = tuple(hats[p] for p in pts)
            value = eval_sampled(form, *args)
            if value < 0:
                return CheckReport(False, witness={"args": args, "value": value})
    for k in range(trials):
        rng = trial_rng(seed, k)
        args = tuple(rand_pl(rng, positive=True) for _ in range(form.n))
        value = eval_sampled(form, *args)
        if value < 0:
            return CheckReport(False, witness={"args": args, "value": value}, trials=k + 1, seed=seed, method=RANDOMIZED)
    return CheckReport(
        False,
        trials=trials,
        seed=seed,
        method=RANDOMIZED,
        note="structurally non-positive, no semantic witness found",
    )


def is_symmetric(form) -> CheckReport:
    """Invariance under every permutation of the argument slots."""
    form = as_form(form)
    if isinstance(form, SymTensor):
        return CheckReport(True)
    if isinstance(form, FullTensor):
        for idx, v in form.entries.items():
            for o in orderings(tuple(idx)):
                if form[o] != v:
                    return CheckReport(False, witness={"index": idx, "permuted": o, "values": (v, form[o])})
        return CheckReport(True)
    if isinstance(form, SampledForm):
        merged = form.merged()
        for pts, w in merged.items():
            for o in sorted(set(itertools.permutations(pts))):
                if merged.get(o, Fraction(0)) != w:
                    return CheckReport(False, witness={"points": pts, "permuted": o, "weights": (w, merged.get(o, Fraction(0)))})
        return CheckReport(True)
    raise ValidationError(f"not a form: {type(form).__name__}")
