"""Continuous piecewise-linear functions on [0, 1] and piecewise polynomials.

:class:`PLFunc` is the second Riesz-space model. It is not closed under
multiplication, so products land in :class:`PPoly`, whose pieces are
polynomials in the global variable ``t`` with exact rational coefficients.
Lattice operations are only defined on ``PLFunc``: crossings of higher-degree
pieces can be irrational.

Both types are kept in canonical form so ``==`` is function equality.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from ortholab.errors import ValidationError
from ortholab.lattice import Scalar, rat

ZERO = Fraction(0)
ONE = Fraction(1)

Coeffs = Tuple[Fraction, ...]


def _normalize_pl(ts: Sequence[Fraction], vs: Sequence[Fraction]):
    # Drop interior breakpoints where the adjacent affine pieces have equal slope.
    out_t = [ts[0]]
    out_v = [vs[0]]
    for i in range(1, len(ts)):
        if len(out_t) >= 2:
            t0, v0 = out_t[-2], out_v[-2]
            t1, v1 = out_t[-1], out_v[-1]
            if (v1 - v0) * (ts[i] - t1) == (vs[i] - v1) * (t1 - t0):
                out_t[-1] = ts[i]
                out_v[-1] = vs[i]
                continue
        out_t.append(ts[i])
        out_v.append(vs[i])
    return tuple(out_t), tuple(out_v)


@dataclass(frozen=True)
class PLFunc:
    breakpoints: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]

    def __init__(self, breakpoints: Iterable, values: Iterable):
        ts = tuple(rat(t) for t in breakpoints)
        vs = tuple(rat(v) for v in values)
        if len(ts) != len(vs):
            raise ValidationError("breakpoints and values differ in length")
        if len(ts) < 2:
            raise ValidationError("a PL function needs at least the breakpoints 0 and 1")
        if ts[0] != 0 or ts[-1] != 1:
            raise ValidationError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValidationError("breakpoints must be strictly increasing")
        ts, vs = _normalize_pl(ts, vs)
        object.__setattr__(self, "breakpoints", ts)
        object.__setattr__(self, "values", vs)

    @classmethod
    def from_points(cls, points: Iterable[Tuple]) -> "PLFunc":
        pts = list(points)
        return cls([p[0] for p in pts], [p[1] for p in pts])

    @classmethod
    def constant(cls, c: Scalar) -> "PLFunc":
        return cls([0, 1], [c, c])

    @classmethod
    def zero(cls) -> "PLFunc":
        return cls.constant(0)

    @classmethod
    def identity(cls) -> "PLFunc":
        return cls([0, 1], [0, 1])

    def points(self) -> List[Tuple[Fraction, Fraction]]:
        return list(zip(self.breakpoints, self.values))

    def __call__(self, t) -> Fraction:
        t = rat(t)
        ts = self.breakpoints
        if t < 0 or t > 1:
            raise ValidationError(f"evaluation point {t} outside [0, 1]")
        k = bisect_right(ts, t) - 1
        if k >= len(ts) - 1:
            return self.values[-1]
        t0, t1 = ts[k], ts[k + 1]
        v0, v1 = self.values[k], self.values[k + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def is_positive(self) -> bool:
        # Affine pieces attain their minimum at a breakpoint.
        return all(v >= 0 for v in self.values)

    def __add__(self, other: "PLFunc") -> "PLFunc":
        return pl_add(self, other)

    def __sub__(self, other: "PLFunc") -> "PLFunc":
        return pl_add(self, pl_scale(-1, other))

    def __neg__(self) -> "PLFunc":
        return pl_scale(-1, self)

    def __mul__(self, c: Scalar) -> "PLFunc":
        if isinstance(c, PLFunc):
            return NotImplemented
        return pl_scale(c, self)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        pts = ", ".join(f"({t},{v})" for t, v in self.points())
        return "PLFunc{" + pts + "}"


def hat(center, radius, height=1) -> PLFunc:
    """Tent ``height * max(0, 1 - |t - center| / radius)``, clipped to [0, 1]."""
    c, r, h = rat(center), rat(radius), rat(height)
    if r <= 0:
        raise ValidationError("hat radius must be positive")
    if not 0 <= c <= 1:
        raise ValidationError("hat center must lie in [0, 1]")
    ts = sorted({ZERO, ONE} | {t for t in (c - r, c, c + r) if 0 <= t <= 1})
    return PLFunc(ts, [h * max(ZERO, 1 - abs(t - c) / r) for t in ts])


def values_on(f: PLFunc, grid: Sequence[Fraction]) -> List[Fraction]:
    """``f`` at every point of a sorted grid within [0, 1], in one sweep."""
    ts, vs = f.breakpoints, f.values
    out = []
    k = 0
    last = len(ts) - 2
    for t in grid:
        while k < last and ts[k + 1] < t:
            k += 1
        t0, t1 = ts[k], ts[k + 1]
        if t == t0:
            out.append(vs[k])
        elif t == t1:
            out.append(vs[k + 1])
        else:
            out.append(vs[k] + (vs[k + 1] - vs[k]) * (t - t0) / (t1 - t0))
    return out


def merged_grid(*fs: PLFunc) -> List[Fraction]:
    grid = set()
    for f in fs:
        grid.update(f.breakpoints)
    return sorted(grid)


def pl_add(f: PLFunc, g: PLFunc) -> PLFunc:
    ts = merged_grid(f, g)
    return PLFunc(ts, [a + b for a, b in zip(values_on(f, ts), values_on(g, ts))])


def pl_scale(c: Scalar, f: PLFunc) -> PLFunc:
    c = rat(c)
    return PLFunc(f.breakpoints, [c * v for v in f.values])


def _crossing_grid(f: PLFunc, g: PLFunc) -> List[Fraction]:
    ts = merged_grid(f, g)
    diff = [a - b for a, b in zip(values_on(f, ts), values_on(g, ts))]
    out = [ts[0]]
    for k, (a, b) in enumerate(zip(ts, ts[1:])):
        da, db = diff[k], diff[k + 1]
        if da * db < 0:
            out.append(a + (b - a) * da / (da - db))
        out.append(b)
    return out


def pl_join(f: PLFunc, g: PLFunc) -> PLFunc:
    """Pointwise maximum, with the exact crossing point inserted on each segment."""
    ts = _crossing_grid(f, g)
    return PLFunc(ts, [max(a, b) for a, b in zip(values_on(f, ts), values_on(g, ts))])


def pl_meet(f: PLFunc, g: PLFunc) -> PLFunc:
    ts = _crossing_grid(f, g)
    return PLFunc(ts, [min(a, b) for a, b in zip(values_on(f, ts), values_on(g, ts))])


def pl_abs(f: PLFunc) -> PLFunc:
    return pl_join(f, -f)


def pl_pos(f: PLFunc) -> PLFunc:
    return pl_join(f, PLFunc.zero())


def pl_neg(f: PLFunc) -> PLFunc:
    return pl_join(-f, PLFunc.zero())


def pl_is_disjoint(f: PLFunc, g: PLFunc) -> bool:
    """``|f| ∧ |g| = 0``.

    Decided per segment of the merged grid: two affine pieces have a
    pointwise zero minimum of absolute values only if one of them vanishes
    at both ends.
    """
    ts = merged_grid(f, g)
    fv, gv = values_on(f, ts), values_on(g, ts)
    for k in range(len(ts) - 1):
        if (fv[k] or fv[k + 1]) and (gv[k] or gv[k + 1]):
            return False
    return True


def support(f: PLFunc) -> List[Tuple[Fraction, Fraction]]:
    """Closure of ``{t : f(t) != 0}`` as a minimal list of closed intervals.

    An affine piece vanishing at both ends vanishes identically; otherwise it
    has at most one zero, which the closure swallows.
    """
    out: List[List[Fraction]] = []
    ts, vs = f.breakpoints, f.values
    for k in range(len(ts) - 1):
        if vs[k] == 0 and vs[k + 1] == 0:
            continue
        a, b = ts[k], ts[k + 1]
        if out and out[-1][1] == a:
            out[-1][1] = b
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def is_support_disjoint(f: PLFunc, g: PLFunc) -> bool:
    for a, b in support(f):
        for c, d in support(g):
            if a <= d and c <= b:
                return False
    return True


# --- polynomial coefficients (low degree first) ---------------------------


def _trim(c: Sequence[Fraction]) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(p: Coeffs, q: Coeffs) -> Coeffs:
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n))


def poly_mul(p: Coeffs, q: Coeffs) -> Coeffs:
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def poly_eval(p: Coeffs, t: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class PPoly:
    """Continuous piecewise polynomial on [0, 1].

    ``pieces[k]`` holds the coefficients (in ``t``, low degree first) valid on
    ``[breakpoints[k], breakpoints[k+1]]``.
    """

    breakpoints: Tuple[Fraction, ...]
    pieces: Tuple[Coeffs, ...]

    def __init__(self, breakpoints: Iterable, pieces: Iterable[Iterable]):
        ts = tuple(rat(t) for t in breakpoints)
        ps = tuple(_trim(rat(c) for c in p) for p in pieces)
        if len(ts) < 2 or ts[0] != 0 or ts[-1] != 1:
            raise ValidationError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValidationError("breakpoints must be strictly increasing")
        if len(ps) != len(ts) - 1:
            raise ValidationError("need exactly one piece per segment")
        for k in range(1, len(ps)):
            if poly_eval(ps[k - 1], ts[k]) != poly_eval(ps[k], ts[k]):
                raise ValidationError(f"discontinuity at t={ts[k]}")
        out_t, out_p = [ts[0]], [ps[0]]
        for k in range(1, len(ps)):
            if ps[k] == out_p[-1]:
                continue
            out_t.append(ts[k])
            out_p.append(ps[k])
        out_t.append(ts[-1])
        object.__setattr__(self, "breakpoints", tuple(out_t))
        object.__setattr__(self, "pieces", tuple(out_p))

    @classmethod
    def zero(cls) -> "PPoly":
        return cls([0, 1], [()])

    @classmethod
    def constant(cls, c) -> "PPoly":
        return cls([0, 1], [(rat(c),)])

    @classmethod
    def from_pl(cls, f: PLFunc) -> "PPoly":
        pieces = []
        ts, vs = f.breakpoints, f.values
        for k in range(len(ts) - 1):
            slope = (vs[k + 1] - vs[k]) / (ts[k + 1] - ts[k])
            pieces.append((vs[k] - slope * ts[k], slope))
        return cls(ts, pieces)

    def piece_at(self, t: Fraction) -> Coeffs:
        k = bisect_right(self.breakpoints, t) - 1
        return self.pieces[min(k, len(self.pieces) - 1)]

    def __call__(self, t) -> Fraction:
        t = rat(t)
        if t < 0 or t > 1:
            raise ValidationError(f"evaluation point {t} outside [0, 1]")
        return poly_eval(self.piece_at(t), t)

    @property
    def degree(self) -> int:
        return max((len(p) - 1 for p in self.pieces), default=-1)

    def is_zero(self) -> bool:
        return all(not p for p in self.pieces)

    def __add__(self, other: "PPoly") -> "PPoly":
        return pp_add(self, other)

    def __mul__(self, other):
        if isinstance(other, PPoly):
            return pp_mul(self, other)
        c = rat(other)
        return PPoly(self.breakpoints, [tuple(c * a for a in p) for p in self.pieces])

    __rmul__ = __mul__

    def __neg__(self) -> "PPoly":
        return self * -1

    def __sub__(self, other: "PPoly") -> "PPoly":
        return pp_add(self, -other)


def _refine(hs: Sequence[PPoly]):
    grid = sorted({t for h in hs for t in h.breakpoints})
    mids = [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    return grid, [[h.piece_at(m) for m in mids] for h in hs]


def pp_add(g: PPoly, h: PPoly) -> PPoly:
    grid, (pg, ph) = _refine([g, h])
    return PPoly(grid, [poly_add(a, b) for a, b in zip(pg, ph)])


def pp_mul(g: PPoly, h: PPoly) -> PPoly:
    grid, (pg, ph) = _refine([g, h])
    return PPoly(grid, [poly_mul(a, b) for a, b in zip(pg, ph)])


def pp_eval(h: PPoly, t) -> Fraction:
    return h(t)


def pp_eq(g: PPoly, h: PPoly) -> bool:
    return g == h


def pl_mul(*fs: PLFunc) -> PPoly:
    """Exact product ``f1 * ... * fn`` as a piecewise polynomial of degree <= n."""
    if not fs:
        return PPoly.constant(1)
    grid, pieces = _refine([PPoly.from_pl(f) for f in fs])
    out = []
    for k in range(len(grid) - 1):
        acc: Coeffs = (ONE,)
        for per_factor in pieces:
            acc = poly_mul(acc, per_factor[k])
        out.append(acc)
    return PPoly(grid, out)
