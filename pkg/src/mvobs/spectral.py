"""Spectral resolutions as exact left-continuous step functions.

A resolution is stored as its jump list: breakpoints ``t_1 < ... < t_n`` and
the values ``c_1 <= ... <= c_n = 1`` taken just after each jump.  The value
at ``t`` is the last ``c_j`` with ``t_j < t`` (0 if there is none), so the
function is left-continuous by construction and a breakpoint evaluates to
the value before its jump.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .effect import EffectAlgebra
from .errors import DistributivityRequired, ResolutionError
from .observable import Observable, rational


@dataclass(frozen=True)
class SpectralResolution:
    algebra: EffectAlgebra
    breakpoints: tuple
    values: tuple

    def __call__(self, t) -> object:
        j = bisect_left(self.breakpoints, t)
        return self.values[j - 1] if j else self.algebra.zero

    def __repr__(self):
        E = self.algebra
        body = ", ".join(f"{t}: {E.show(c)}" for t, c in zip(self.breakpoints, self.values))
        return "SpectralResolution{" + body + "}"

    def pieces(self):
        """``(lo, hi, value)`` triples covering the real line; ``None``
        stands for an infinite end.  Each piece is the interval ``(lo, hi]``."""
        E = self.algebra
        bps = self.breakpoints
        out = [(None, bps[0], E.zero)]
        for j, c in enumerate(self.values):
            hi = bps[j + 1] if j + 1 < len(bps) else None
            out.append((bps[j], hi, c))
        return out


def _canonical(E, breakpoints, values):
    bps, vals = [], []
    prev = E.zero
    for t, c in zip(breakpoints, values):
        if c != prev:
            bps.append(t)
            vals.append(c)
            prev = c
    return SpectralResolution(E, tuple(bps), tuple(vals))


def make_resolution(E: EffectAlgebra, breakpoints, values, *, force: bool = False) -> SpectralResolution:
    """Validate and canonicalize a step resolution.

    Rejects non-monotone values and a top value other than 1.  Algebras that
    are not distributive lattices are refused unless ``force`` is set.
    """
    props = E.properties
    if not props.is_lattice:
        raise ResolutionError(f"{E!r} is not a lattice")
    if not props.is_distributive and not force:
        raise DistributivityRequired(f"{E!r} does not satisfy the distributive laws")
    breakpoints = [rational(t) for t in breakpoints]
    values = [v if E.contains(v) else E.elem(v) for v in values]
    if len(breakpoints) != len(values):
        raise ResolutionError("breakpoints and values differ in length")
    if not breakpoints:
        raise ResolutionError("a resolution needs at least one jump to reach 1")
    for s, t in zip(breakpoints, breakpoints[1:]):
        if not s < t:
            raise ResolutionError(f"breakpoints not strictly increasing at {s}, {t}")
    prev = E.zero
    for t, c in zip(breakpoints, values):
        if not E._leq(prev, c):
            raise ResolutionError(
                f"not monotone at t={t}: {E.show(prev)} is not below {E.show(c)}"
            )
        prev = c
    if values[-1] != E.one:
        raise ResolutionError(f"top value {E.show(values[-1])} is not 1")
    return _canonical(E, breakpoints, values)


def eval_resolution(B: SpectralResolution, t) -> object:
    return B(rational(t))


def resolution_of(x: Observable) -> SpectralResolution:
    """Cumulative masses ``x((-inf, t))`` as a step resolution."""
    E = x.algebra
    acc = E.zero
    cumulative = []
    for m in x.masses:
        acc = E._add(acc, m)
        cumulative.append(acc)
    return SpectralResolution(E, x.points, tuple(cumulative))


def observable_of(B: SpectralResolution, *, forced: bool = False) -> Observable:
    """The unique observable whose resolution is ``B``."""
    E = B.algebra
    masses = []
    prev = E.zero
    for c in B.values:
        masses.append(E.diff(prev, c))
        prev = c
    return Observable(E, B.breakpoints, tuple(masses), forced)


def from_pointwise(E: EffectAlgebra, candidates, evaluate, *, forced: bool = False) -> Observable:
    """Observable of a left-continuous step function known to jump only at
    ``candidates``; ``evaluate(t)`` gives its value at ``t``.

    On ``(p_k, p_{k+1}]`` the function equals its value at ``p_{k+1}``, and it
    is 1 beyond the last candidate.
    """
    cands = sorted(set(candidates))
    values = [evaluate(p) for p in cands[1:]] + [E.one]
    return observable_of(_canonical(E, cands, values), forced=forced)


def resolutions_equal_on(B1: SpectralResolution, B2: SpectralResolution, probes) -> bool:
    return all(B1(t) == B2(t) for t in probes)


def probe_points(*resolutions: SpectralResolution) -> list[Fraction]:
    """Every breakpoint, the midpoints between consecutive ones and a point
    on either side; enough to tell two step functions apart."""
    bps = sorted({t for B in resolutions for t in B.breakpoints})
    out = [bps[0] - 1]
    for s, t in zip(bps, bps[1:]):
        out += [s, (s + t) / 2]
    out += [bps[-1], bps[-1] + 1]
    return out
