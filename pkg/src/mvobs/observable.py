"""Discrete bounded observables.

An observable is stored in canonical form: strictly increasing rational
support points, each carrying a nonzero mass, with the masses summing to the
unit of the algebra.  Two observables are equal exactly when their canonical
forms are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .effect import EffectAlgebra
from .errors import ObservableError

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def rational(value) -> Fraction:
    """Exact rational from an int, a Fraction or a ``"p/q"`` string.

    Floats are refused so that no rounding can sneak in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"expected an integer or 'p/q' string, got {value!r}")


@dataclass(frozen=True)
class Observable:
    algebra: EffectAlgebra
    points: tuple
    masses: tuple
    # set on sums computed outside the distributive setting
    forced: bool = field(default=False, compare=False)

    def __repr__(self):
        body = ", ".join(f"{t}: {self.algebra.show(m)}" for t, m in self.support)
        return "Observable{" + body + "}"

    @property
    def support(self):
        return list(zip(self.points, self.masses))

    @property
    def lower(self) -> Fraction:
        return self.points[0]

    @property
    def upper(self) -> Fraction:
        return self.points[-1]

    def value(self, points: Iterable) -> object:
        """``x(A)`` for the finite set ``A`` of points."""
        wanted = {rational(t) for t in points}
        E = self.algebra
        acc = E.zero
        for t, m in self.support:
            if t in wanted:
                acc = E._add(acc, m)
        return acc


def make_discrete(E: EffectAlgebra, points_and_masses, *, forced: bool = False) -> Observable:
    """Build the canonical observable with the given point masses.

    Accepts a mapping ``{t: mass}`` or an iterable of ``(t, mass)`` pairs.
    Masses at repeated points are added, zero masses are dropped.  The total
    must be exactly the unit; otherwise :class:`ObservableError` reports the
    prefix at which summation failed.
    """
    if isinstance(points_and_masses, Mapping):
        items = list(points_and_masses.items())
    else:
        items = list(points_and_masses)
    merged: dict[Fraction, object] = {}
    for t, m in items:
        t = rational(t)
        if not E.contains(m):
            m = E.elem(m)
        if t in merged:
            s = E._add(merged[t], m)
            if s is None:
                raise ObservableError(
                    f"masses at {t} are not summable: {E.show(merged[t])} + {E.show(m)}"
                )
            merged[t] = s
        else:
            merged[t] = m
    points = sorted(t for t, m in merged.items() if m != E.zero)
    total = E.zero
    for i, t in enumerate(points):
        s = E._add(total, merged[t])
        if s is None:
            prefix = ", ".join(f"{p}: {E.show(merged[p])}" for p in points[: i + 1])
            raise ObservableError(f"masses are not summable; failing prefix {{{prefix}}}")
        total = s
    if total != E.one:
        raise ObservableError(f"masses sum to {E.show(total)}, not to the unit")
    return Observable(E, tuple(points), tuple(merged[t] for t in points), forced)


def question(E: EffectAlgebra, a) -> Observable:
    """The two-valued observable with mass ``a'`` at 0 and ``a`` at 1."""
    if not E.contains(a):
        a = E.elem(a)
    return make_discrete(E, [(0, E.complement(a)), (1, a)])


def neutral(E: EffectAlgebra) -> Observable:
    """Point mass at 0, the neutral element of the sum."""
    return make_discrete(E, [(0, E.one)])


def point_mass(E: EffectAlgebra, t) -> Observable:
    return make_discrete(E, [(t, E.one)])


# ---------------------------------------------------------------------------
# functional calculus

PointMap = Callable[[Fraction], Fraction]


def compose(f: PointMap | Mapping, x: Observable) -> Observable:
    """Push ``x`` forward along ``f``: mass at ``v`` collects the masses of
    all support points mapped to ``v``.

    ``f`` is a callable on rationals or a finite mapping which must cover the
    support of ``x``.
    """
    if isinstance(f, Mapping):
        table = {rational(k): rational(v) for k, v in f.items()}

        def f(t, table=table):
            try:
                return table[t]
            except KeyError:
                raise ObservableError(f"map undefined at support point {t}") from None

    E = x.algebra
    image: dict[Fraction, object] = {}
    for t, m in x.support:
        v = rational(f(t))
        image[v] = E._add(image[v], m) if v in image else m
    return make_discrete(E, image.items(), forced=x.forced)


def negate(t):
    return -t


def one_minus(t):
    return 1 - t


def square(t):
    return t * t


def scale(n) -> PointMap:
    n = rational(n)

    def f(t):
        return n * t

    f.__name__ = f"scale_{n}"
    return f


def affine(p, q) -> PointMap:
    p, q = rational(p), rational(q)

    def f(t):
        return p * t + q

    f.__name__ = f"affine_{p}_{q}"
    return f


def add_maps(f: PointMap, g: PointMap) -> PointMap:
    """Pointwise sum ``t -> f(t) + g(t)``."""

    def h(t):
        return rational(f(t)) + rational(g(t))

    return h


BUILTIN_MAPS = {
    "negate": negate,
    "one_minus": one_minus,
    "square": square,
}


def parse_map(spec: str) -> PointMap:
    """Named map: ``negate``, ``one_minus``, ``square``, ``scale:N`` or
    ``affine:P,Q``."""
    name, _, arg = spec.partition(":")
    if name in BUILTIN_MAPS and not arg:
        return BUILTIN_MAPS[name]
    if name == "scale" and arg:
        return scale(arg)
    if name == "affine" and arg.count(",") == 1:
        p, q = arg.split(",")
        return affine(p, q)
    raise ValueError(f"unknown map {spec!r}")
