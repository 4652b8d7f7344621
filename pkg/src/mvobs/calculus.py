"""Sum, Olson order, lattice operations and sharp observables.

The sum of two bounded observables is defined through resolutions by

    B_{x+y}(t) = sup over rational r of  B_x(r) meet B_y(t - r).

For step resolutions the supremum is attained: on the piece ``(s_i, s_{i+1}]``
of ``B_x`` the map ``r -> B_y(t - r)`` is nonincreasing and, by
left-continuity, equals ``B_y(t - s_i)`` for ``r`` just above ``s_i``.  So

    B_{x+y}(t) = join over i of  c_i meet B_y(t - s_i),

where ``s_i`` are the breakpoints of ``x`` and ``c_i`` its post-jump values.
:func:`obs_sum` evaluates this finite join; :func:`sum_oracle` evaluates the
defining supremum directly on a finite grid and serves only as a check.
"""

from __future__ import annotations

import enum
import itertools
import math
from bisect import bisect_left
from fractions import Fraction
from typing import Iterable, Sequence

from .effect import EffectAlgebra
from .errors import DistributivityRequired, NotLatticeError, ObservableError
from .observable import Observable, compose, negate, neutral, point_mass, rational, scale
from .spectral import SpectralResolution, from_pointwise, resolution_of


class OrderRelation(enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


def _same_algebra(xs: Sequence[Observable]) -> EffectAlgebra:
    E = xs[0].algebra
    for x in xs[1:]:
        if x.algebra != E:
            raise ValueError("observables live on different algebras")
    return E


def _lattice(E: EffectAlgebra):
    if not E.properties.is_lattice:
        raise NotLatticeError(f"{E!r} is not a lattice; meets of resolutions are undefined")


# ---------------------------------------------------------------------------
# sum


def obs_sum(x: Observable, y: Observable, *, force: bool = False) -> Observable:
    """Sum of two bounded observables.

    Algebras without the distributive laws are refused unless ``force`` is
    set; forced results carry ``forced=True``.
    """
    E = _same_algebra([x, y])
    _lattice(E)
    forced = x.forced or y.forced
    if not E.properties.is_distributive:
        if not force:
            raise DistributivityRequired(
                f"{E!r} does not satisfy the distributive laws; pass force=True"
            )
        forced = True
    bx, by = resolution_of(x), resolution_of(y)
    meet, join, zero = E._meet, E._join, E.zero
    pairs = list(zip(bx.breakpoints, bx.values))
    y_low = by.breakpoints[0]

    def evaluate(t):
        acc = zero
        for s, c in pairs:
            u = t - s
            if u <= y_low:
                # B_y vanishes here and for all later s
                break
            acc = join(acc, meet(c, by(u)))
        return acc

    candidates = {s + u for s in x.points for u in y.points}
    return from_pointwise(E, candidates, evaluate, forced=forced)


def obs_sum_many(xs: Iterable[Observable], *, force: bool = False) -> Observable:
    xs = list(xs)
    acc = xs[0]
    for x in xs[1:]:
        acc = obs_sum(acc, x, force=force)
    return acc


def multiple(x: Observable, n: int, *, force: bool = False) -> Observable:
    """``x + ... + x`` (n times); compare with ``compose(scale(n), x)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return obs_sum_many([x] * n, force=force)


# ---------------------------------------------------------------------------
# direct evaluation on a grid


def sum_oracle(x: Observable, y: Observable, grid: Iterable, probes: Iterable) -> dict:
    """``t -> join over s in grid of B_x(s) meet B_y(t - s)`` at each probe.

    Returns a dict ordered by probe.  A coarse grid gives values below the
    true resolution; it need not even be normalized, so no resolution object
    is built.  Arithmetic is done on integers after scaling by a common
    denominator.
    """
    E = _same_algebra([x, y])
    _lattice(E)
    grid = sorted({rational(s) for s in grid})
    probes = sorted({rational(t) for t in probes})
    scale_ = 1
    for v in itertools.chain(grid, probes, x.points, y.points):
        scale_ = math.lcm(scale_, v.denominator)

    def ints(vals):
        return [int(v * scale_) for v in vals]

    bx, by = resolution_of(x), resolution_of(y)
    xb, xv = ints(bx.breakpoints), bx.values
    yb, yv = ints(by.breakpoints), by.values
    g = ints(grid)
    zero, meet, join = E.zero, E._meet, E._join

    def B(bps, vals, t):
        j = bisect_left(bps, t)
        return vals[j - 1] if j else zero

    out = {}
    for t, ti in zip(probes, ints(probes)):
        acc = zero
        for s in g:
            a = B(xb, xv, s)
            if a == zero:
                continue
            b = B(yb, yv, ti - s)
            if b == zero:
                continue
            acc = join(acc, meet(a, b))
        out[t] = acc
    return out


def sum_probes(x: Observable, y: Observable) -> list[Fraction]:
    """Candidate breakpoints of ``x + y``, midpoints between consecutive
    candidates, and one point beyond each end."""
    cands = sorted({s + u for s in x.points for u in y.points})
    out = [cands[0] - 1]
    for s, t in zip(cands, cands[1:]):
        out += [s, (s + t) / 2]
    out += [cands[-1], cands[-1] + 1]
    return out


def oracle_grid(x: Observable, y: Observable, probes: Iterable, base: int = 2) -> list[Fraction]:
    """Grid ``{j / base^k}`` fine enough for :func:`sum_oracle` to be exact.

    ``k`` is the least exponent whose mesh is below every positive gap
    ``|t - s - u|`` (probe t, support points s of x and u of y) and every gap
    between support points of x.  The grid spans all support points and their
    pairwise sums with a margin of 1.
    """
    probes = [rational(t) for t in probes]
    gaps = {abs(t - s - u) for t in probes for s in x.points for u in y.points}
    gaps |= {b - a for a, b in zip(x.points, x.points[1:])}
    gap = min((g for g in gaps if g > 0), default=Fraction(1))
    k = 0
    while Fraction(1, base**k) >= gap:
        k += 1
    ends = [x.lower, y.lower, x.lower + y.lower, x.upper, y.upper, x.upper + y.upper]
    lo = math.floor(min(ends)) - 1
    hi = math.ceil(max(ends)) + 1
    step = base**k
    return [Fraction(j, step) for j in range(lo * step, hi * step + 1)]


# ---------------------------------------------------------------------------
# Olson order and lattice operations


def olson_leq(x: Observable, y: Observable) -> bool:
    """``x`` below ``y``: the resolution of ``y`` lies pointwise below that of ``x``."""
    E = _same_algebra([x, y])
    bx, by = resolution_of(x), resolution_of(y)
    leq = E._leq
    return all(leq(by(t), bx(t)) for t in set(x.points) | set(y.points))


def olson_compare(x: Observable, y: Observable) -> OrderRelation:
    _same_algebra([x, y])
    if x == y:
        return OrderRelation.EQUAL
    if olson_leq(x, y):
        return OrderRelation.LESS
    if olson_leq(y, x):
        return OrderRelation.GREATER
    return OrderRelation.INCOMPARABLE


def _pointwise(xs: Sequence[Observable], combine) -> Observable:
    if not xs:
        raise ValueError("need at least one observable")
    E = _same_algebra(xs)
    _lattice(E)
    resolutions = [resolution_of(x) for x in xs]

    def evaluate(t):
        vals = [B(t) for B in resolutions]
        acc = vals[0]
        for v in vals[1:]:
            acc = combine(E, acc, v)
        return acc

    candidates = {t for x in xs for t in x.points}
    return from_pointwise(E, candidates, evaluate, forced=any(x.forced for x in xs))


def obs_meet(xs: Sequence[Observable]) -> Observable:
    """Greatest lower bound: pointwise join of resolutions."""
    return _pointwise(list(xs), lambda E, a, b: E._join(a, b))


def obs_join(xs: Sequence[Observable]) -> Observable:
    """Least upper bound: pointwise meet of resolutions."""
    return _pointwise(list(xs), lambda E, a, b: E._meet(a, b))


# ---------------------------------------------------------------------------
# sharp observables


class SharpnessReport:
    """The three finite-scale readings of sharpness of an observable."""

    __slots__ = ("masses", "cumulative", "unions")

    def __init__(self, masses: bool, cumulative: bool, unions: bool):
        self.masses = masses
        self.cumulative = cumulative
        self.unions = unions

    @property
    def agree(self) -> bool:
        return self.masses == self.cumulative == self.unions

    def as_dict(self):
        return {"masses": self.masses, "cumulative": self.cumulative, "unions": self.unions}

    def __repr__(self):
        return f"SharpnessReport({self.as_dict()})"


def sharpness_report(x: Observable) -> SharpnessReport:
    E = x.algebra
    sharp = E.properties.sharp
    masses = all(m in sharp for m in x.masses)
    cumulative = all(c in sharp for c in resolution_of(x).values)
    unions = True
    n = len(x.masses)
    for mask in range(1, 1 << n):
        acc = E.zero
        for i in range(n):
            if mask >> i & 1:
                acc = E._add(acc, x.masses[i])
        if acc not in sharp:
            unions = False
            break
    return SharpnessReport(masses, cumulative, unions)


def is_sharp_observable(x: Observable) -> bool:
    """Every value ``x(A)`` is a sharp element.

    On algebras with RDP the mass-wise and resolution-wise readings must
    agree with this; a disagreement there is an internal error.
    """
    report = sharpness_report(x)
    if x.algebra.properties.has_rdp and not report.agree:
        raise AssertionError(f"sharpness readings disagree on an RDP algebra: {report}")
    return report.unions


def sharp_inverse(x: Observable) -> Observable:
    if not is_sharp_observable(x):
        raise ObservableError("only sharp observables have an additive inverse")
    return compose(negate, x)


def strong_unit_bound(x: Observable) -> int:
    """Least integer ``n >= 1`` strictly above the support of ``x``; then
    ``x`` lies below ``n`` times the unit question."""
    if not is_sharp_observable(x):
        raise ObservableError("strong unit bound is defined for sharp observables")
    return max(1, math.floor(x.upper) + 1)


def unit_question(E: EffectAlgebra) -> Observable:
    """Question of the unit: point mass at 1."""
    return point_mass(E, 1)


def unit_multiple(E: EffectAlgebra, n: int) -> Observable:
    return compose(scale(n), unit_question(E))


__all__ = [
    "OrderRelation",
    "SharpnessReport",
    "is_sharp_observable",
    "multiple",
    "neutral",
    "obs_join",
    "obs_meet",
    "obs_sum",
    "obs_sum_many",
    "olson_compare",
    "olson_leq",
    "oracle_grid",
    "sharp_inverse",
    "sharpness_report",
    "strong_unit_bound",
    "sum_oracle",
    "sum_probes",
    "unit_multiple",
    "unit_question",
]
