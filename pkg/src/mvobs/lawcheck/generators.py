"""Deterministic generators of observables on a rational grid."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..effect import EffectAlgebra
from ..observable import Observable, rational


@dataclass(frozen=True)
class Grid:
    """Rationals ``p/q`` with ``1 <= q <= denominator`` in ``[lo, hi]``."""

    denominator: int = 2
    lo: Fraction = Fraction(-2)
    hi: Fraction = Fraction(2)

    def __post_init__(self):
        object.__setattr__(self, "lo", rational(self.lo))
        object.__setattr__(self, "hi", rational(self.hi))
        if self.denominator < 1:
            raise ValueError("grid denominator must be >= 1")
        if not self.lo < self.hi:
            raise ValueError("grid needs lo < hi")

    def points(self) -> list[Fraction]:
        out = set()
        for q in range(1, self.denominator + 1):
            p = -((-self.lo.numerator * q) // self.lo.denominator)  # ceil(lo * q)
            while Fraction(p, q) <= self.hi:
                out.add(Fraction(p, q))
                p += 1
        return sorted(out)

    def as_dict(self):
        return {"denominator": self.denominator, "lo": str(self.lo), "hi": str(self.hi)}


@lru_cache(maxsize=256)
def decompositions(E: EffectAlgebra, k: int, masses: frozenset | None = None) -> tuple:
    """All ordered ``(m_1, ..., m_k)`` of nonzero masses with
    ``m_1 + ... + m_k = 1``, found by depth-first search over partial sums."""
    allowed = [m for m in E.elements if m != E.zero and (masses is None or m in masses)]
    out = []

    def rec(acc, prefix):
        if len(prefix) == k:
            if acc == E.one:
                out.append(tuple(prefix))
            return
        for m in allowed:
            s = E._add(acc, m)
            if s is not None:
                prefix.append(m)
                rec(s, prefix)
                prefix.pop()

    rec(E.zero, [])
    return tuple(out)


def _build(E, points, masses) -> Observable:
    return Observable(E, tuple(points), tuple(masses))


def enumerate_observables(E: EffectAlgebra, grid_points, max_support: int, masses=None):
    """Every observable with support of size ``<= max_support`` inside
    ``grid_points``; smaller supports first."""
    grid_points = sorted({rational(t) for t in grid_points})
    masses = frozenset(masses) if masses is not None else None
    for k in range(1, max_support + 1):
        decs = decompositions(E, k, masses)
        if not decs:
            continue
        for pts in itertools.combinations(grid_points, k):
            for dec in decs:
                yield _build(E, pts, dec)


def gen_observables(
    E: EffectAlgebra,
    grid,
    max_support: int,
    seed: int,
    count: int,
    *,
    exhaustive: bool = False,
    masses=None,
) -> list[Observable]:
    """Seeded list of canonical observables supported on ``grid``.

    ``grid`` is a :class:`Grid` or an iterable of rationals.  With
    ``exhaustive`` every observable up to ``max_support`` points is returned
    and ``count``/``seed`` are ignored.  ``masses`` restricts the allowed
    mass values (e.g. to sharp elements).
    """
    points = grid.points() if isinstance(grid, Grid) else sorted({rational(t) for t in grid})
    if exhaustive:
        return list(enumerate_observables(E, points, max_support, masses))
    masses = frozenset(masses) if masses is not None else None
    sizes = [k for k in range(1, min(max_support, len(points)) + 1) if decompositions(E, k, masses)]
    if not sizes:
        return []
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.choice(sizes)
        pts = sorted(rng.sample(points, k))
        dec = rng.choice(decompositions(E, k, masses))
        out.append(_build(E, pts, dec))
    return out
