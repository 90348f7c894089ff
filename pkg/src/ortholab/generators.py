"""Random forms and polynomials for the theorem corpora."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ortholab.multilinear import FullTensor, SampledForm, SymTensor, multisets
from ortholab.sampling import rand_point, rand_pos_rat, rand_rat


def _value(rng: random.Random, positive: bool) -> Fraction:
    return rand_pos_rat(rng) if positive else rand_rat(rng, nonzero=True)


def rand_sym_tensor(rng: random.Random, d: int, n: int, diagonal: bool = False, positive: bool = False,
                    density: float = 0.4) -> SymTensor:
    """Random symmetric tensor; a non-diagonal one always has a nonzero mixed entry."""
    entries = {}
    for i in range(d):
        if rng.random() < 0.8:
            entries[(i,) * n] = _value(rng, positive)
    if not diagonal and d >= 2 and n >= 2:
        mixed = [mu for mu in multisets(d, n) if len(set(mu)) > 1]
        for mu in mixed:
            if rng.random() < density:
                entries[mu] = _value(rng, positive)
        if not any(len(set(k)) > 1 for k in entries):
            entries[rng.choice(mixed)] = _value(rng, positive)
    return SymTensor(d, n, entries)


def rand_full_tensor(rng: random.Random, d: int, n: int, kind: str = "general", positive: bool = False) -> FullTensor:
    """``kind``: 'diagonal' (constant tuples only), 'general' (sparse, usually asymmetric)."""
    entries = {}
    for i in range(d):
        if rng.random() < 0.8:
            entries[(i,) * n] = _value(rng, positive)
    if kind == "general":
        for idx in itertools.product(range(d), repeat=n):
            if len(set(idx)) > 1 and rng.random() < 0.25:
                entries[idx] = _value(rng, positive)
    return FullTensor(d, n, entries)


def rand_sampled_form(rng: random.Random, n: int, kind: str = "mixed", positive: bool = False,
                      terms: int = 4) -> SampledForm:
    """``kind``: 'const' (each term at one point), 'mixed', or 'cancel' (const plus a mixed term and its negative)."""
    out = []
    for _ in range(rng.randint(1, terms)):
        w = _value(rng, positive)
        if kind == "const":
            out.append((w, (rand_point(rng),) * n))
        else:
            out.append((w, tuple(rand_point(rng) for _ in range(n))))
    if kind == "cancel":
        out = [(w, (p[0],) * n) for w, p in out]
        pts = tuple(rand_point(rng) for _ in range(n))
        w = rand_pos_rat(rng)
        out += [(w, pts), (-w, pts)]
    return SampledForm(n, out)
