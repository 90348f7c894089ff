"""Exact rational scalars and the coordinate Riesz space Q^d.

The order on :class:`Vec` is coordinatewise, so join and meet are the
componentwise max and min and two vectors are disjoint exactly when their
supports are disjoint index sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from ortholab.config import LIMITS
from ortholab.errors import ValidationError

# Rat is the stdlib Fraction: always in lowest terms with positive denominator.
Rat = Fraction
Scalar = Union[int, Fraction]


def rat(value) -> Fraction:
    """Convert ints, Fractions and exact decimal strings to a Fraction.

    Floats are rejected: every value in the library must be exact.
    """
    if isinstance(value, bool):
        raise ValidationError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational literal: {value!r}") from exc
    raise ValidationError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Vec:
    entries: Tuple[Fraction, ...]

    def __init__(self, entries: Iterable):
        values = tuple(rat(v) for v in entries)
        if not values:
            raise ValidationError("Vec must have positive dimension")
        if len(values) > LIMITS.max_dim:
            raise ValidationError(f"dimension {len(values)} exceeds limit {LIMITS.max_dim}")
        object.__setattr__(self, "entries", values)

    @classmethod
    def zeros(cls, d: int) -> "Vec":
        return cls([0] * d)

    @classmethod
    def ones(cls, d: int) -> "Vec":
        return cls([1] * d)

    @classmethod
    def basis(cls, d: int, i: int) -> "Vec":
        if not 0 <= i < d:
            raise ValidationError(f"basis index {i} out of range for dimension {d}")
        return cls([1 if k == i else 0 for k in range(d)])

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "Vec") -> "Vec":
        _check_dims(self, other)
        return Vec(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "Vec") -> "Vec":
        _check_dims(self, other)
        return Vec(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "Vec":
        return Vec(-a for a in self.entries)

    def __mul__(self, c: Scalar) -> "Vec":
        if isinstance(c, Vec):
            return NotImplemented
        c = rat(c)
        return Vec(c * a for a in self.entries)

    __rmul__ = __mul__

    def __le__(self, other: "Vec") -> bool:
        _check_dims(self, other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def __ge__(self, other: "Vec") -> bool:
        return other <= self

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_positive(self) -> bool:
        return all(a >= 0 for a in self.entries)

    def support(self) -> frozenset:
        return frozenset(i for i, a in enumerate(self.entries) if a != 0)

    def __repr__(self) -> str:
        return "Vec(" + ", ".join(str(a) for a in self.entries) + ")"


def _check_dims(x: Vec, y: Vec) -> None:
    if x.dim != y.dim:
        raise ValidationError(f"dimension mismatch: {x.dim} vs {y.dim}")


def join(x: Vec, y: Vec) -> Vec:
    _check_dims(x, y)
    return Vec(max(a, b) for a, b in zip(x, y))


def meet(x: Vec, y: Vec) -> Vec:
    _check_dims(x, y)
    return Vec(min(a, b) for a, b in zip(x, y))


def abs_(x: Vec) -> Vec:
    return join(x, -x)


def pos_part(x: Vec) -> Vec:
    return join(x, Vec.zeros(x.dim))


def neg_part(x: Vec) -> Vec:
    return join(-x, Vec.zeros(x.dim))


def is_disjoint(x: Vec, y: Vec) -> bool:
    """``|x| ∧ |y| = 0``."""
    return meet(abs_(x), abs_(y)).is_zero()


def basis_tuple(d: int, idx: Sequence[int]) -> Tuple[Vec, ...]:
    return tuple(Vec.basis(d, i) for i in idx)
