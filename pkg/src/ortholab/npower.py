"""The n-power of the coordinate and PL models, and the representation maps.

Two realizations of the n-power of Q^d are compared:

* the carrier Q^d itself with the componentwise product :func:`odot`;
* the free tensor power of dimension d^n modulo the span of the pure basis
  tensors of p-disjoint (non-constant) index tuples, built by exact row
  reduction in :func:`build_npower_quotient`.

On the PL model the n-power is represented inside the piecewise-polynomial
algebra, where ``x ⊙ ... ⊙ x`` is the exact power ``pl_mul(x, ..., x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ortholab.checks import RANDOMIZED, STRUCTURAL, CheckReport, trial_rng
from ortholab.config import LIMITS, require
from ortholab.errors import RejectedError, ValidationError
from ortholab.lattice import Vec, abs_, is_disjoint, join, rat
from ortholab.linalg import dot, nullspace, rank, rref
from ortholab.multilinear import (
    FullTensor,
    Polynomial,
    SampledForm,
    SymTensor,
    as_form,
    as_polynomial,
    diag_eval,
    diagonal_tensor,
    evaluate,
    is_positive,
    symmetric_form,
)
from ortholab.ortho import (
    is_orthogonally_additive,
    is_p_orthosymmetric,
)
from ortholab.pl import PLFunc, PPoly, pl_mul
from ortholab.sampling import rand_disjoint_vec_pair, rand_pl, rand_vec


def odot(*xs: Vec) -> Vec:
    """Componentwise product ``(x1)_i * ... * (xn)_i``."""
    if not xs:
        raise ValidationError("odot needs at least one argument")
    d = xs[0].dim
    out = [Fraction(1)] * d
    for x in xs:
        if not isinstance(x, Vec):
            raise ValidationError("odot takes Vec arguments")
        if x.dim != d:
            raise ValidationError(f"dimension mismatch: {d} vs {x.dim}")
        out = [a * b for a, b in zip(out, x.entries)]
    return Vec(out)


def odot_pl(*fs: PLFunc) -> PPoly:
    return pl_mul(*fs)


@dataclass(frozen=True)
class LinFunc:
    """Linear functional on the n-power.

    Coordinate model: ``L(z) = sum_i coefficients[i] * z_i``.
    PL model: ``L(h) = sum_k w_k * h(s_k)`` over ``samples = ((w_k, s_k), ...)``.
    """

    coefficients: Optional[Tuple[Fraction, ...]] = None
    samples: Optional[Tuple[Tuple[Fraction, Fraction], ...]] = None

    def __post_init__(self):
        if (self.coefficients is None) == (self.samples is None):
            raise ValidationError("LinFunc needs exactly one of coefficients or samples")
        if self.coefficients is not None:
            object.__setattr__(self, "coefficients", tuple(rat(c) for c in self.coefficients))
        else:
            merged: Dict[Fraction, Fraction] = {}
            for w, s in self.samples:
                s = rat(s)
                merged[s] = merged.get(s, Fraction(0)) + rat(w)
            object.__setattr__(self, "samples", tuple((w, s) for s, w in sorted(merged.items()) if w != 0))

    def __call__(self, z) -> Fraction:
        if self.coefficients is not None:
            if not isinstance(z, Vec) or z.dim != len(self.coefficients):
                raise ValidationError("argument does not match the functional's dimension")
            return sum((c * v for c, v in zip(self.coefficients, z.entries)), Fraction(0))
        if isinstance(z, PLFunc):
            z = PPoly.from_pl(z)
        if not isinstance(z, PPoly):
            raise ValidationError("sampled functionals act on piecewise polynomials")
        return sum((w * z(s) for w, s in self.samples), Fraction(0))

    def is_zero(self) -> bool:
        if self.coefficients is not None:
            return not any(self.coefficients)
        return not self.samples

    def is_positive(self) -> bool:
        if self.coefficients is not None:
            return all(c >= 0 for c in self.coefficients)
        return all(w >= 0 for w, _ in self.samples)

    def __add__(self, other: "LinFunc") -> "LinFunc":
        if self.coefficients is not None and other.coefficients is not None:
            if len(self.coefficients) != len(other.coefficients):
                raise ValidationError("dimension mismatch")
            return LinFunc(coefficients=[a + b for a, b in zip(self.coefficients, other.coefficients)])
        if self.samples is not None and other.samples is not None:
            return LinFunc(samples=self.samples + other.samples)
        raise ValidationError("cannot add functionals on different models")

    def __neg__(self) -> "LinFunc":
        if self.coefficients is not None:
            return LinFunc(coefficients=[-c for c in self.coefficients])
        return LinFunc(samples=[(-w, s) for w, s in self.samples])

    def __sub__(self, other: "LinFunc") -> "LinFunc":
        return self + (-other)


# --- the coordinate n-power as a morphism ------------------------------------


def check_morphism(n: int, d: int, trials: int = 500, seed: int = 0) -> CheckReport:
    """Randomized check that ``odot`` is an orthosymmetric n-morphism.

    Properties: multilinear in each slot, positive on positive tuples, zero on
    tuples with a disjoint pair, a lattice homomorphism in each slot when the
    other slots are positive, and ``odot(|x|,...,|x|) = |odot(x,...,x)|``.
    """
    props = {"multilinear": True, "positive": True, "orthosymmetric": True, "separately_lattice": True, "diagonal_abs": True}
    for k in range(trials):
        rng = trial_rng(seed, k)
        xs = [rand_vec(rng, d) for _ in range(n)]
        j = rng.randrange(n)
        u, v = rand_vec(rng, d), rand_vec(rng, d)
        a, b = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4))

        def at(slot_value, args=xs):
            return odot(*args[:j], slot_value, *args[j + 1:])

        failures = {}
        if at(a * u + b * v) != a * at(u) + b * at(v):
            failures["multilinear"] = {"slot": j + 1, "u": u, "v": v, "a": a, "b": b}
        pos = [rand_vec(rng, d, positive=True) for _ in range(n)]
        if not odot(*pos).is_positive():
            failures["positive"] = {"args": pos}
        if n >= 2:
            x, y = rand_disjoint_vec_pair(rng, d)
            p, q = sorted(rng.sample(range(n), 2))
            args = list(xs)
            args[p], args[q] = x, y
            if not odot(*args).is_zero():
                failures["orthosymmetric"] = {"args": args}
        others = [abs_(x) for x in xs]
        if at(join(u, v), others) != join(at(u, others), at(v, others)):
            failures["separately_lattice"] = {"slot": j + 1, "u": u, "v": v, "others": others}
        x = xs[0]
        if odot(*([abs_(x)] * n)) != abs_(odot(*([x] * n))):
            failures["diagonal_abs"] = {"x": x}
        if failures:
            name, w = sorted(failures.items())[0]
            for key in failures:
                props[key] = False
            return CheckReport(False, witness={"property": name, **w}, trials=k + 1, seed=seed, method=RANDOMIZED, details=props)
    return CheckReport(True, trials=trials, seed=seed, method=RANDOMIZED, details=props)


# --- the tensor-power quotient -------------------------------------------------


@dataclass
class QuotientModel:
    """Free tensor power of Q^d (basis: index tuples in lexicographic order) modulo ker π.

    ``projection`` rows are the RREF basis of the annihilator of the kernel,
    so ``π(v) = (row . v for row in projection)``. ``iso[r]`` is the constant
    index tuple's coordinate ``i`` matched with quotient coordinate ``r``.
    """

    d: int
    n: int
    basis: List[Tuple[int, ...]]
    kernel: List[Dict[int, Fraction]]
    kernel_rank: int
    projection: List[Dict[int, Fraction]]
    iso: List[int] = field(default_factory=list)

    @property
    def free_dim(self) -> int:
        return self.d**self.n

    @property
    def dim(self) -> int:
        return len(self.projection)

    def column(self, idx: Sequence[int]) -> int:
        c = 0
        for i in idx:
            c = c * self.d + i
        return c

    def pure_tensor(self, xs: Sequence[Vec]) -> Dict[int, Fraction]:
        """Coordinates of ``x1 ⊗ ... ⊗ xn`` in the free basis (sparse)."""
        out = {0: Fraction(1)}
        for x in xs:
            nxt = {}
            for c, v in out.items():
                for i, xi in enumerate(x.entries):
                    if xi:
                        nxt[c * self.d + i] = v * xi
            out = nxt
        return out

    def project(self, vec: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
        return tuple(dot(row, vec) for row in self.projection)

    def induced(self, xs: Sequence[Vec]) -> Vec:
        """``[x1 ⊗ ... ⊗ xn]`` read in the carrier coordinates through ``iso``."""
        q = self.project(self.pure_tensor(xs))
        out = [Fraction(0)] * self.d
        for r, i in enumerate(self.iso):
            out[i] = q[r]
        return Vec(out)


def build_npower_quotient(d: int, n: int) -> QuotientModel:
    """Quotient of the n-fold tensor power by the pure tensors of p-disjoint basis tuples.

    Raises :class:`ResourceError` when ``d**n`` exceeds the configured bound,
    and ``AssertionError`` if the quotient is not d-dimensional or the induced
    product differs from :func:`odot`.
    """
    if d < 1 or n < 2:
        raise ValidationError("need d >= 1 and n >= 2")
    require(d**n <= LIMITS.max_free_dim, f"free dimension {d}^{n} exceeds limit {LIMITS.max_free_dim}")
    basis = list(itertools.product(range(d), repeat=n))
    kernel = [{c: Fraction(1)} for c, idx in enumerate(basis) if len(set(idx)) > 1]
    k_rank = rank(kernel)
    projection = rref(nullspace(kernel, len(basis)))
    model = QuotientModel(d, n, basis, kernel, k_rank, projection)
    assert model.dim == len(basis) - k_rank
    assert model.dim == d, f"quotient dimension {model.dim} != {d}"
    for r, row in enumerate(projection):
        lead = min(row)
        idx = basis[lead]
        assert len(set(idx)) == 1 and row == {lead: 1}, "quotient basis must be the constant tuples"
        model.iso.append(idx[0])
    for idx in basis:
        xs = [Vec.basis(d, i) for i in idx]
        assert model.induced(xs) == odot(*xs), f"induced product differs from odot at {idx}"
    return model


def lift(T, model: QuotientModel) -> Dict[int, Fraction]:
    """The linear functional on the free tensor power with ``lift(e_idx) = T(e_i1, ..., e_in)``."""
    form = as_form(T)
    if isinstance(form, SymTensor):
        return {model.column(idx): form[idx] for idx in model.basis if form[idx] != 0}
    if isinstance(form, FullTensor):
        return {model.column(idx): v for idx, v in form.entries.items()}
    raise ValidationError("lift is defined for coordinate tensors")


def kernel_annihilated(T, model: QuotientModel) -> CheckReport:
    """``ker π ⊆ ker lift(T)``: every kernel basis vector is sent to 0."""
    functional = lift(T, model)
    for k, vec in enumerate(model.kernel):
        value = dot(functional, vec)
        if value != 0:
            (col,) = vec
            return CheckReport(False, witness={"kernel_vector": model.basis[col], "value": value})
    return CheckReport(True, details={"kernel_size": len(model.kernel)})


def quotient_spans(model: QuotientModel) -> bool:
    """The odot images of the basis tuples span the carrier, so a factorization is unique."""
    images = [odot(*(Vec.basis(model.d, i) for i in idx)) for idx in model.basis]
    rows = [{i: v for i, v in enumerate(img.entries) if v} for img in images]
    return rank(rows) == model.d


# --- factorization and representation --------------------------------------


def factor_through(T, trials: int = 100, seed: int = 0) -> LinFunc:
    """The positive functional Φ with ``Φ(x1 ⊙ ... ⊙ xn) = T(x1, ..., xn)``.

    Coordinate tensors give ``Φ = (T(e_i, ..., e_i))_i``; sampled forms whose
    terms all sit at a single point give ``Φ(h) = sum w_k h(s_k)``. Raises
    :class:`RejectedError` with the violating witness when ``T`` is not
    positive or not p-orthosymmetric.
    """
    form = as_form(T)
    pos = is_positive(form, seed=seed)
    if not pos.verdict:
        raise RejectedError("form is not positive", pos.witness)
    porth = is_p_orthosymmetric(form, trials=trials, seed=seed)
    if not porth.verdict:
        raise RejectedError("form is not p-orthosymmetric", porth.witness)
    if isinstance(form, (FullTensor, SymTensor)):
        return LinFunc(coefficients=[evaluate(form, *([Vec.basis(form.d, i)] * form.n)) for i in range(form.d)])
    samples = []
    for pts, w in form.merged().items():
        if len(set(pts)) != 1:
            raise RejectedError("sampled term at distinct points", {"points": pts, "weight": w})
        samples.append((w, pts[0]))
    return LinFunc(samples=samples)


def represent_polynomial(P, trials: int = 100, seed: int = 0) -> LinFunc:
    """L with ``P(x) = L(x ⊙ ... ⊙ x)`` for a positive orthogonally additive P on Q^d."""
    P = as_polynomial(P)
    sym = symmetric_form(P)
    if not isinstance(sym, SymTensor):
        raise ValidationError("represent_polynomial works on coordinate polynomials")
    pos = is_positive(sym)
    if not pos.verdict:
        raise RejectedError("polynomial is not positive", pos.witness)
    oa = is_orthogonally_additive(P, trials=trials, seed=seed)
    if not oa.verdict:
        raise RejectedError("polynomial is not orthogonally additive", oa.witness)
    L = LinFunc(coefficients=[sym[(i,) * sym.n] for i in range(sym.d)])
    assert L.is_positive() == pos.verdict
    return L


def represent_pl_polynomial(P) -> LinFunc:
    """L with ``P(f) = L(f^n)`` for ``P(f) = sum w_k f(s_k)^n`` with ``w_k >= 0``.

    Terms are merged over permutations of their points first, since
    permuted tuples give the same diagonal.
    """
    P = as_polynomial(P)
    form = P.form
    if not isinstance(form, SampledForm):
        raise ValidationError("represent_pl_polynomial needs a sampled form")
    merged: Dict[Tuple[Fraction, ...], Fraction] = {}
    for w, pts in form.terms:
        key = tuple(sorted(pts))
        merged[key] = merged.get(key, Fraction(0)) + w
    samples = []
    for pts, w in sorted(merged.items()):
        if w == 0:
            continue
        if len(set(pts)) != 1:
            raise RejectedError("term at distinct points is outside the representable class", {"points": pts, "weight": w})
        if w < 0:
            raise RejectedError("negative weight", {"points": pts, "weight": w})
        samples.append((w, pts[0]))
    return LinFunc(samples=samples)


def expand(L: LinFunc, n: int):
    """Inverse of the representation: the polynomial ``x -> L(x ⊙ ... ⊙ x)`` as a form."""
    if L.coefficients is not None:
        return diagonal_tensor(L.coefficients, n)
    return SampledForm(n, [(w, (s,) * n) for w, s in L.samples])


def power_rank(L: LinFunc, n: int, count: int = 24, seed: int = 0) -> Dict[str, int]:
    """Rank of the evaluation matrix of ``count`` random n-th powers at L's sample points.

    Full rank means L is the only functional supported on those points that
    agrees with P on the sampled powers.
    """
    points = [s for _, s in L.samples]
    rows = []
    for k in range(count):
        h = pl_mul(*([rand_pl(trial_rng(seed, k))] * n))
        rows.append({j: h(s) for j, s in enumerate(points) if h(s) != 0})
    return {"rank": rank(rows), "points": len(points)}


def _is_zero_form(form) -> bool:
    if isinstance(form, SampledForm):
        return not form.merged()
    return not form.entries


def check_order_iso(pairs, trials: int = 100, seed: int = 0) -> CheckReport:
    """T -> Φ_T is additive, injective and order-preserving in both directions on ``pairs``."""
    for k, (T1, T2) in enumerate(pairs):
        f1, f2 = factor_through(T1, trials, seed), factor_through(T2, trials, seed)
        f12 = factor_through(as_form(T1) + as_form(T2), trials, seed)
        if f12 != f1 + f2:
            return CheckReport(False, witness={"pair": k, "property": "additive"})
        diff = as_form(T1) - as_form(T2)
        if _is_zero_form(diff) != (f1 - f2).is_zero():
            return CheckReport(False, witness={"pair": k, "property": "injective"})
        if is_positive(diff, seed=seed).verdict != (f1 - f2).is_positive():
            return CheckReport(False, witness={"pair": k, "property": "order"})
    return CheckReport(True, trials=len(pairs), seed=seed)
