"""The law catalog.

Each law is a predicate on a small tuple of inputs (observables, algebra
elements or finite point maps).  A check returns ``None`` when the law holds,
a :class:`Failure` when it is violated, or a :class:`Finding` for
observations that are reported but do not count as violations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..calculus import (
    multiple,
    obs_join,
    obs_meet,
    obs_sum,
    olson_leq,
    oracle_grid,
    sharpness_report,
    strong_unit_bound,
    sum_oracle,
    sum_probes,
    unit_multiple,
    unit_question,
)
from ..effect import EffectAlgebra
from ..observable import Observable, add_maps, compose, negate, neutral, one_minus, question
from ..spectral import probe_points, resolution_of


@dataclass
class Failure:
    message: str
    lhs: object = None
    rhs: object = None
    probe: Fraction | None = None
    lhs_value: object = None
    rhs_value: object = None


class Finding(Failure):
    """Reported, but not a violation."""


# returned by a check whose hypotheses do not hold for the given inputs
NOT_APPLICABLE = object()


class Context:
    """Shared state for evaluating laws on one algebra."""

    def __init__(self, E: EffectAlgebra, force: bool = False, upper_pool=()):
        self.E = E
        self.force = force
        self.o = neutral(E)
        self.q1 = unit_question(E)
        self.upper_pool = list(upper_pool)

    def add(self, x, y):
        return obs_sum(x, y, force=self.force)

    def in_unit_interval(self, x) -> bool:
        return olson_leq(self.o, x) and olson_leq(x, self.q1)


def differ(label: str, X: Observable, Y: Observable) -> Failure | None:
    """``None`` if equal, else a failure pinned to a probe where the two
    resolutions take different values."""
    if X == Y:
        return None
    BX, BY = resolution_of(X), resolution_of(Y)
    for t in probe_points(BX, BY):
        if BX(t) != BY(t):
            return Failure(label, X, Y, t, BX(t), BY(t))
    return Failure(label, X, Y)


def _first(*results):
    for r in results:
        if r is not None:
            return r
    return None


# -- semigroup ----------------------------------------------------------------


def sum_comm(ctx, items):
    x, y = items
    return differ("x+y != y+x", ctx.add(x, y), ctx.add(y, x))


def sum_assoc(ctx, items):
    x, y, z = items
    return differ("(x+y)+z != x+(y+z)", ctx.add(ctx.add(x, y), z), ctx.add(x, ctx.add(y, z)))


def sum_neutral(ctx, items):
    (x,) = items
    return _first(differ("x+o != x", ctx.add(x, ctx.o), x), differ("o+x != x", ctx.add(ctx.o, x), x))


# -- direct evaluation ----------------------------------------------------------


def _compare_tables(label, left: dict, right: dict):
    for t in left:
        if left[t] != right[t]:
            return Failure(label, None, None, t, left[t], right[t])
    return None


def dense_inv(ctx, items):
    x, y = items
    probes = sum_probes(x, y)
    dyadic = sum_oracle(x, y, oracle_grid(x, y, probes, base=2), probes)
    triadic = sum_oracle(x, y, oracle_grid(x, y, probes, base=3), probes)
    return _compare_tables("dyadic and triadic grids disagree", dyadic, triadic)


def oracle_eq(ctx, items):
    x, y = items
    z = ctx.add(x, y)
    probes = sum_probes(x, y)
    B = resolution_of(z)
    direct = sum_oracle(x, y, oracle_grid(x, y, probes, base=2), probes)
    reduced = {t: B(t) for t in probes}
    fail = _compare_tables("finite reduction differs from grid evaluation", reduced, direct)
    if fail is not None:
        fail.lhs = z
    return fail


# -- order and lattice ------------------------------------------------------------


def olson_po(ctx, items):
    x, y, z = items
    if not olson_leq(x, x):
        return Failure("not reflexive", x, x)
    if olson_leq(x, y) and olson_leq(y, x) and x != y:
        return Failure("not antisymmetric", x, y)
    if olson_leq(x, y) and olson_leq(y, z) and not olson_leq(x, z):
        return Failure("not transitive", x, z)
    return None


def lattice_dist(ctx, items):
    x, y, z = items
    m = lambda *a: obs_meet(a)  # noqa: E731
    j = lambda *a: obs_join(a)  # noqa: E731
    neg = lambda a: compose(negate, a)  # noqa: E731
    mxy, jxy = m(x, y), j(x, y)
    if not (olson_leq(mxy, x) and olson_leq(mxy, y)):
        return Failure("meet is not a lower bound", mxy)
    if not (olson_leq(x, jxy) and olson_leq(y, jxy)):
        return Failure("join is not an upper bound", jxy)
    if olson_leq(z, x) and olson_leq(z, y) and not olson_leq(z, mxy):
        return Failure("meet is not the greatest lower bound", z, mxy)
    if olson_leq(x, z) and olson_leq(y, z) and not olson_leq(jxy, z):
        return Failure("join is not the least upper bound", jxy, z)
    return _first(
        differ("meet not commutative", mxy, m(y, x)),
        differ("join not commutative", jxy, j(y, x)),
        differ("meet not associative", m(mxy, z), m(x, m(y, z))),
        differ("join not associative", j(jxy, z), j(x, j(y, z))),
        differ("absorption x meet (x join y) fails", m(x, jxy), x),
        differ("absorption x join (x meet y) fails", j(x, mxy), x),
        differ("(x join y) meet z != (x meet z) join (y meet z)", m(jxy, z), j(m(x, z), m(y, z))),
        differ("(x meet y) join z != (x join z) meet (y join z)", j(mxy, z), m(j(x, z), j(y, z))),
        differ("-(-x) != x", neg(neg(x)), x),
        None if olson_leq(x, y) == olson_leq(neg(y), neg(x)) else Failure("negation does not reverse order", x, y),
        differ("-(x join y) != -x meet -y", neg(jxy), m(neg(x), neg(y))),
        differ("-(x meet y) != -x join -y", neg(mxy), j(neg(x), neg(y))),
    )


def translate_mono(ctx, items):
    x, w, z = items
    y = obs_join([x, w])
    if not olson_leq(x, y):
        return Failure("x is not below x join w", x, y)
    xz, yz = ctx.add(x, z), ctx.add(y, z)
    if not olson_leq(xz, yz):
        return _order_witness("x <= y but x+z is not below y+z", xz, yz)
    if olson_leq(x, w):
        xz, wz = ctx.add(x, z), ctx.add(w, z)
        if not olson_leq(xz, wz):
            return _order_witness("x <= w but x+z is not below w+z", xz, wz)
    return None


def _order_witness(label, X, Y):
    """Failure of ``X <= Y``: a probe with ``B_Y(t)`` not below ``B_X(t)``."""
    BX, BY = resolution_of(X), resolution_of(Y)
    leq = X.algebra._leq
    for t in probe_points(BX, BY):
        if not leq(BY(t), BX(t)):
            return Failure(label, X, Y, t, BX(t), BY(t))
    return Failure(label, X, Y)


def lattice_ordered_semigroup(ctx, items):
    x, y, z = items
    return differ(
        "(x join y)+z != (x+z) join (y+z)",
        ctx.add(obs_join([x, y]), z),
        obs_join([ctx.add(x, z), ctx.add(y, z)]),
    )


# -- sharp observables ----------------------------------------------------------------


def sharp_char(ctx, items):
    (x,) = items
    report = sharpness_report(x)
    if report.agree:
        return None
    msg = f"sharpness readings disagree: {report.as_dict()}"
    if ctx.E.properties.has_rdp:
        return Failure(msg, x)
    return Finding(msg, x)


def _is_sharp(x):
    return sharpness_report(x).unions


def sharp_group(ctx, items):
    x, y, z = items
    s = ctx.add(x, y)
    for label, v in (("x+y", s), ("x meet y", obs_meet([x, y])), ("x join y", obs_join([x, y]))):
        if not _is_sharp(v):
            return Failure(f"{label} is not sharp", v)
    inv = compose(negate, x)
    if not _is_sharp(inv):
        return Failure("-x is not sharp", inv)
    return _first(
        differ("x+(-x) != o", ctx.add(x, inv), ctx.o),
        differ("(-x)+x != o", ctx.add(inv, x), ctx.o),
        differ("(x+y)+z != x+(y+z)", ctx.add(s, z), ctx.add(x, ctx.add(y, z))),
        differ("x+y != y+x", s, ctx.add(y, x)),
    )


def strong_unit(ctx, items):
    (x,) = items
    n = strong_unit_bound(x)
    if n < 1 or not x.upper < n:
        return Failure(f"bound {n} is not a positive integer above the support", x)
    nq = unit_multiple(ctx.E, n)
    if not olson_leq(x, nq):
        return _order_witness(f"x is not below {n} q_1", x, nq)
    if not (_is_sharp(ctx.q1) and olson_leq(ctx.o, ctx.q1)):
        return Failure("q_1 is not a positive sharp observable", ctx.q1)
    return differ(f"{n} q_1 via scaling != {n}-fold sum", nq, multiple(ctx.q1, n, force=ctx.force))


def q_add(ctx, items):
    a, b = items
    E = ctx.E
    s = E._add(a, b)
    if s is None:
        return NOT_APPLICABLE
    return differ("q_a + q_b != q_(a+b)", ctx.add(question(E, a), question(E, b)), question(E, s))


def _as_question(ctx, x):
    """Sharp elements ``a`` with ``x = q_a``."""
    E = ctx.E
    return [a for a in E.properties.sharp if question(E, a) == x]


def q_char(ctx, items):
    (x,) = items
    if not (_is_sharp(x) and ctx.in_unit_interval(x)):
        return NOT_APPLICABLE
    xc = compose(one_minus, x)
    if not ctx.in_unit_interval(xc):
        return Failure("x' leaves [o, q_1]", x, xc)
    covers = obs_join([x, xc]) == ctx.q1
    reps = _as_question(ctx, x)
    if len(reps) > 1:
        return Failure("x is the question of several sharp elements", x)
    if covers != bool(reps):
        return Failure(f"x join x' = q_1 is {covers} but x is{'' if reps else ' not'} a sharp question", x, obs_join([x, xc]))
    return None


def sharp_iso(ctx, items):
    a, b = items
    E = ctx.E
    qa, qb = question(E, a), question(E, b)
    if not (_is_sharp(qa) and ctx.in_unit_interval(qa)):
        return Failure("q_a is not a sharp observable in [o, q_1]", qa)
    if obs_join([qa, compose(one_minus, qa)]) != ctx.q1:
        return Failure("q_a join q_a' != q_1", qa)
    if qa == qb and a != b:
        return Failure("a -> q_a is not injective", qa, qb)
    fail = _first(
        differ("q_(a') != (q_a)'", question(E, E._complement(a)), compose(one_minus, qa)),
        differ("q_(a join b) != q_a join q_b", question(E, E._join(a, b)), obs_join([qa, qb])),
    )
    if fail is not None:
        return fail
    s = E._add(a, b)
    total = ctx.add(qa, qb)
    if s is not None:
        return differ("q_(a+b) != q_a + q_b", question(E, s), total)
    if olson_leq(total, ctx.q1):
        return Failure("q_a + q_b lies in [o, q_1] but a+b is undefined", total)
    return None


def dedekind_fin(ctx, items):
    xs = list(items)
    top = obs_join(xs)
    if not _is_sharp(top):
        return Failure("join of sharp observables is not sharp", top)
    for x in xs:
        if not olson_leq(x, top):
            return _order_witness("join is not an upper bound", x, top)
    for u in ctx.upper_pool:
        if all(olson_leq(x, u) for x in xs) and not olson_leq(top, u):
            return _order_witness("join is not the least upper bound", top, u)
    return None


def comonotone(points, f, g) -> bool:
    """No pair of points on which ``f`` and ``g`` move in opposite directions."""
    return all((f[s] - f[t]) * (g[s] - g[t]) >= 0 for s, t in itertools.combinations(points, 2))


def fcalc_add(ctx, items):
    # Unrestricted additivity needs a sharp x: with f = id, g = -id and an
    # unsharp question it would give q_a + (-q_a) = o.  For arbitrary x it
    # holds when f and g are comonotone.
    x, f, g = items
    if not (_is_sharp(x) or comonotone(x.points, f, g)):
        return NOT_APPLICABLE
    return differ(
        "f(x) + g(x) != (f+g)(x)",
        ctx.add(compose(f, x), compose(g, x)),
        compose(add_maps(f.__getitem__, g.__getitem__), x),
    )


# -- catalog ------------------------------------------------------------------------------


@dataclass(frozen=True)
class Law:
    id: str
    statement: str
    arity: int
    domain: str
    needs_sum: bool
    check: Callable


CATALOG: dict[str, Law] = {
    law.id: law
    for law in [
        Law("SUM-COMM", "x + y = y + x", 2, "obs", True, sum_comm),
        Law("SUM-ASSOC", "(x + y) + z = x + (y + z)", 3, "obs", True, sum_assoc),
        Law("SUM-NEUTRAL", "x + o = o + x = x", 1, "obs", True, sum_neutral),
        Law("DENSE-INV", "sum over dyadic and triadic grids agree", 2, "obs", True, dense_inv),
        Law("ORACLE-EQ", "finite reduction equals grid evaluation of the sum", 2, "obs", True, oracle_eq),
        Law("OLSON-PO", "Olson order is a partial order", 3, "obs", False, olson_po),
        Law("LATTICE-DIST", "observables form a distributive lattice; negation is a dual automorphism", 3, "obs", False, lattice_dist),
        Law("TRANSLATE-MONO", "x <= y implies x + z <= y + z", 3, "obs", True, translate_mono),
        Law("LOS", "(x join y) + z = (x + z) join (y + z)", 3, "obs", True, lattice_ordered_semigroup),
        Law("SHARP-CHAR", "sharp masses iff sharp resolution values iff all values sharp", 1, "mixed", False, sharp_char),
        Law("SHARP-GROUP", "sharp observables: closed under +, meet, join; x + (-x) = o", 3, "sharp", True, sharp_group),
        Law("STRONG-UNIT", "every sharp x lies below n q_1; n q_1 is the n-fold sum", 1, "sharp", True, strong_unit),
        Law("Q-ADD", "q_a + q_b = q_(a+b) for sharp a, b", 2, "sharp_elements", True, q_add),
        Law("Q-CHAR", "sharp x in [o, q_1]: x join x' = q_1 iff x = q_a, a sharp", 1, "unit_sharp", False, q_char),
        Law("SHARP-ISO", "a -> q_a preserves +, complement, join and is injective", 2, "sharp_elements", True, sharp_iso),
        Law("DEDEKIND-FIN", "finite sets of sharp observables have join as least upper bound", 3, "sharp", False, dedekind_fin),
        Law("FCALC-ADD", "f(x) + g(x) = (f + g)(x) for sharp x, or comonotone f, g", 3, "fcalc", True, fcalc_add),
    ]
}

SUM_LAWS = frozenset(law_id for law_id, law in CATALOG.items() if law.needs_sum)
