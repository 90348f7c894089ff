"""Random elements of both models, and pattern-driven disjoint tuples.

Uniformly random elements are almost never disjoint, so disjoint and
p-disjoint tuples are generated by first fixing a support pattern (which
coordinates or which subintervals each element may use) and then filling in
random values there.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Sequence, Tuple

from ortholab.lattice import Vec
from ortholab.pl import PLFunc

GRID_DENOM = 24
DENOMS = (1, 2, 3, 4)


def rand_rat(rng: random.Random, bound: int = 10, nonzero: bool = False) -> Fraction:
    while True:
        q = rng.choice(DENOMS)
        x = Fraction(rng.randint(-bound * q, bound * q), q)
        if x != 0 or not nonzero:
            return x


def rand_pos_rat(rng: random.Random, bound: int = 10) -> Fraction:
    q = rng.choice(DENOMS)
    return Fraction(rng.randint(1, bound * q), q)


def rand_point(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(0, GRID_DENOM), GRID_DENOM)


def rand_vec(rng: random.Random, d: int, positive: bool = False, support=None) -> Vec:
    idx = range(d) if support is None else support
    vals = [Fraction(0)] * d
    for i in idx:
        vals[i] = rand_pos_rat(rng) if positive else rand_rat(rng, nonzero=True)
    return Vec(vals)


def rand_pl(rng: random.Random, max_breaks: int = 6, positive: bool = False) -> PLFunc:
    """At most ``max_breaks`` breakpoints from the 1/24 grid, values in [-10, 10]."""
    interior = rng.sample(range(1, GRID_DENOM), rng.randint(0, max_breaks - 2))
    ts = [Fraction(0)] + sorted(Fraction(k, GRID_DENOM) for k in interior) + [Fraction(1)]
    if positive:
        vs = [abs(rand_rat(rng)) for _ in ts]
    else:
        vs = [rand_rat(rng) for _ in ts]
    return PLFunc(ts, vs)


def rand_pl_on(rng: random.Random, intervals: Sequence[Tuple[Fraction, Fraction]], positive: bool = False) -> PLFunc:
    """Random PL function vanishing outside the union of closed ``intervals``.

    Each interval carries zero at both ends and random values at up to two
    interior points, so distinct intervals never share a nonzero value.
    """
    pts = {Fraction(0): Fraction(0), Fraction(1): Fraction(0)}
    for a, b in intervals:
        pts[a] = Fraction(0)
        pts[b] = Fraction(0)
        k = rng.randint(1, 2)
        for j in range(1, k + 1):
            t = a + (b - a) * j / (k + 1)
            pts[t] = rand_pos_rat(rng) if positive else rand_rat(rng, nonzero=True)
    ts = sorted(pts)
    return PLFunc(ts, [pts[t] for t in ts])


def _cuts(rng: random.Random, m: int) -> List[Fraction]:
    inner = sorted(rng.sample(range(1, GRID_DENOM), m - 1))
    return [Fraction(0)] + [Fraction(k, GRID_DENOM) for k in inner] + [Fraction(1)]


def interleaved_intervals(rng: random.Random, groups: int, gaps: bool = False) -> List[List[Tuple[Fraction, Fraction]]]:
    """Assign consecutive closed subintervals of [0, 1] to ``groups`` owners.

    Intervals of different owners touch at most at an endpoint. With
    ``gaps`` every other interval is left unowned so supports are separated.
    """
    pieces = rng.randint(groups, max(groups, min(groups + 4, 11)))
    if gaps:
        pieces = 2 * pieces - 1
    cuts = _cuts(rng, pieces)
    owners: List[List[Tuple[Fraction, Fraction]]] = [[] for _ in range(groups)]
    slots = list(range(0, pieces, 2)) if gaps else list(range(pieces))
    order = list(range(groups)) + [rng.randrange(groups) for _ in range(len(slots) - groups)]
    rng.shuffle(order)
    for slot, owner in zip(slots, order):
        owners[owner].append((cuts[slot], cuts[slot + 1]))
    return owners


def rand_disjoint_pl_pair(rng: random.Random, support_disjoint: bool = False) -> Tuple[PLFunc, PLFunc]:
    f_iv, g_iv = interleaved_intervals(rng, 2, gaps=support_disjoint)
    return rand_pl_on(rng, f_iv), rand_pl_on(rng, g_iv)


def rand_disjoint_vec_pair(rng: random.Random, d: int) -> Tuple[Vec, Vec]:
    colors = [rng.randrange(3) for _ in range(d)]
    sx = [i for i, c in enumerate(colors) if c == 0]
    sy = [i for i, c in enumerate(colors) if c == 1]
    return rand_vec(rng, d, support=sx), rand_vec(rng, d, support=sy)


def rand_block_labels(rng: random.Random, n: int, min_blocks: int = 2) -> List[int]:
    """Random restricted-growth string of length ``n`` with at least ``min_blocks`` blocks."""
    while True:
        labels = [0]
        for _ in range(1, n):
            labels.append(rng.randint(0, max(labels) + 1))
        if max(labels) + 1 >= min_blocks:
            return labels


def rand_p_disjoint_vecs(rng: random.Random, d: int, n: int):
    """``n`` vectors whose slots are grouped into >= 2 blocks with disjoint supports.

    Returns ``(vectors, labels)``.
    """
    labels = rand_block_labels(rng, n)
    if d == 1:
        # Only one coordinate: every block but the first must vanish.
        return [rand_vec(rng, 1) if lab == 0 else Vec.zeros(1) for lab in labels], labels
    m = max(labels) + 1
    if m > d:
        labels = [min(l, d - 1) for l in labels]
        if max(labels) == 0:
            labels[-1] = 1
        m = max(labels) + 1
    owner = list(range(m)) + [rng.randrange(-1, m) for _ in range(d - m)]
    rng.shuffle(owner)
    vecs = []
    for lab in labels:
        region = [i for i, o in enumerate(owner) if o == lab]
        sub = [i for i in region if rng.random() < 0.8] or region[:1]
        vecs.append(rand_vec(rng, d, support=sub))
    return vecs, labels


def rand_p_disjoint_pls(rng: random.Random, n: int, positive: bool = False):
    labels = rand_block_labels(rng, n)
    m = max(labels) + 1
    owners = interleaved_intervals(rng, m)
    return [rand_pl_on(rng, owners[lab], positive=positive) for lab in labels], labels


def point_gap(points) -> Fraction:
    pts = sorted(set(points))
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    return min(gaps) if gaps else Fraction(1)


def two_colorings(d: int) -> List[Tuple[List[int], List[int]]]:
    """Ordered splits of ``range(d)`` into two nonempty sets."""
    out = []
    for mask in range(1, 2**d - 1):
        out.append(([i for i in range(d) if mask >> i & 1], [i for i in range(d) if not mask >> i & 1]))
    return out


def disjoint_vec_pair_for_trial(rng: random.Random, d: int, k: int) -> Tuple[Vec, Vec]:
    """Trial ``k`` cycles through every split of the coordinates, then random patterns.

    Covering each split once with random values suffices to expose a nonzero
    polynomial identity in ``(x, y)`` supported on that split.
    """
    splits = two_colorings(d)
    if k < len(splits):
        sx, sy = splits[k]
        return rand_vec(rng, d, support=sx), rand_vec(rng, d, support=sy)
    return rand_disjoint_vec_pair(rng, d)
