"""Running law suites and searching for counterexamples."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..effect import EffectAlgebra, algebra_from_dict
from ..observable import Observable, rational
from ..serial import observable_from_dict, observable_to_dict
from .generators import Grid, enumerate_observables, gen_observables
from .laws import CATALOG, NOT_APPLICABLE, SUM_LAWS, Context, Failure, Finding

UPPER_POOL_LIMIT = 64
RANDOM_DRAW_FACTOR = 20


class SuiteRejected(ValueError):
    pass


@dataclass
class LawSuiteConfig:
    algebra: EffectAlgebra
    laws: tuple = tuple(CATALOG)
    samples: int = 200
    seed: int = 0
    grid: Grid = field(default_factory=Grid)
    max_support: int = 3
    exhaustive: bool = False
    force: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        unknown = [law for law in self.laws if law not in CATALOG]
        if unknown:
            raise KeyError(f"unknown law(s) {unknown}; catalog: {sorted(CATALOG)}")

    def as_dict(self):
        return {
            "algebra": self.algebra.to_dict(),
            "laws": list(self.laws),
            "samples": self.samples,
            "seed": self.seed,
            "grid": self.grid.as_dict(),
            "max_support": self.max_support,
            "exhaustive": self.exhaustive,
            "force": self.force,
        }


# -- serialization of law inputs -----------------------------------------------


def dump_item(E, item):
    if isinstance(item, Observable):
        return {"observable": observable_to_dict(item, with_algebra=False)}
    if isinstance(item, dict):
        return {"map": [[str(k), str(v)] for k, v in sorted(item.items())]}
    return {"element": E.dump_element(item)}


def load_item(E, data):
    if "observable" in data:
        return observable_from_dict(data["observable"], algebra=E)
    if "map" in data:
        return {rational(k): rational(v) for k, v in data["map"]}
    value = data["element"]
    return E.elem(tuple(value) if isinstance(value, list) else value)


def dump_value(E, value):
    if isinstance(value, Observable):
        return observable_to_dict(value, with_algebra=False)
    if value is None or isinstance(value, (bool, str)):
        return value
    return E.dump_element(value)


@dataclass
class Counterexample:
    law: str
    algebra: dict
    inputs: list
    message: str
    lhs: object = None
    rhs: object = None
    probe: str | None = None
    lhs_value: object = None
    rhs_value: object = None
    force: bool = False

    @classmethod
    def from_failure(cls, law_id, E, items, failure: Failure, force):
        return cls(
            law=law_id,
            algebra=E.to_dict(),
            inputs=[dump_item(E, it) for it in items],
            message=failure.message,
            lhs=dump_value(E, failure.lhs),
            rhs=dump_value(E, failure.rhs),
            probe=None if failure.probe is None else str(failure.probe),
            lhs_value=dump_value(E, failure.lhs_value),
            rhs_value=dump_value(E, failure.rhs_value),
            force=force,
        )

    def as_dict(self):
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


def replay(cex: Counterexample) -> bool:
    """Re-evaluate the stored inputs; ``True`` if the law still fails."""
    E = algebra_from_dict(cex.algebra)
    items = tuple(load_item(E, d) for d in cex.inputs)
    # an upper-bound witness is stored on the right-hand side
    pool = []
    if isinstance(cex.rhs, dict) and "points" in cex.rhs:
        pool.append(observable_from_dict(cex.rhs, algebra=E))
    result = CATALOG[cex.law].check(Context(E, cex.force, pool), items)
    return isinstance(result, Failure) and not isinstance(result, Finding)


# -- reports -------------------------------------------------------------------


@dataclass
class LawResult:
    law: str
    checked: int = 0
    passed: int = 0
    counterexample: Counterexample | None = None
    findings: int = 0
    first_finding: dict | None = None

    @property
    def ok(self):
        return self.checked == self.passed

    def as_dict(self):
        return {
            "law": self.law,
            "checked": self.checked,
            "passed": self.passed,
            "ok": self.ok,
            "counterexample": None if self.counterexample is None else self.counterexample.as_dict(),
            "findings": self.findings,
            "first_finding": self.first_finding,
        }


@dataclass
class LawReport:
    config: dict
    classification: dict
    results: list

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def __getitem__(self, law_id):
        for r in self.results:
            if r.law == law_id:
                return r
        raise KeyError(law_id)

    def as_dict(self):
        return {
            "ok": self.ok,
            "classification": self.classification,
            "config": self.config,
            "laws": [r.as_dict() for r in self.results],
        }

    def table(self) -> str:
        rows = [("law", "checked", "passed", "status")]
        for r in self.results:
            status = "pass" if r.ok else "FAIL"
            if r.findings:
                status += f" ({r.findings} findings)"
            rows.append((r.law, str(r.checked), str(r.passed), status))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        for r in self.results:
            if r.counterexample is not None:
                c = r.counterexample
                lines.append(f"{r.law}: {c.message}" + (f" at t={c.probe}" if c.probe else ""))
        return "\n".join(lines)


def classification(E: EffectAlgebra) -> dict:
    p = E.properties
    return {
        "size": len(E),
        "lattice": p.is_lattice,
        "distributive": p.is_distributive,
        "rdp": p.has_rdp,
        "mv": p.is_mv,
        "orthoalgebra": p.is_orthoalgebra,
        "boolean": p.is_boolean,
        "sharp": sorted((E.show(a) for a in p.sharp)),
    }


# -- tuple streams ---------------------------------------------------------------


def _check_applicable(E, laws, force):
    if not E.properties.is_lattice:
        raise SuiteRejected(f"{E!r} is not a lattice; observables have no sum or Olson lattice there")
    sum_laws = [law for law in laws if law in SUM_LAWS]
    if sum_laws and not E.properties.is_mv and not force:
        raise SuiteRejected(
            f"laws {sum_laws} involve the sum and are guaranteed only on MV algebras; "
            f"{E!r} is not MV; pass force to evaluate them anyway"
        )


def _pool(E, domain, grid_points, max_support, rng_seed, count, exhaustive):
    sharp = E.properties.sharp
    if domain == "sharp_elements":
        return []
    if domain == "fcalc":
        domain = "mixed"
    if domain == "obs":
        masses = None
    elif domain in ("sharp", "unit_sharp"):
        masses = sharp
    elif domain == "mixed":
        return _pool(E, "obs", grid_points, max_support, rng_seed, count, exhaustive) + _pool(
            E, "sharp", grid_points, max_support, rng_seed + 1, count, exhaustive
        )
    else:
        raise ValueError(domain)
    if domain == "unit_sharp":
        grid_points = [t for t in grid_points if 0 <= t <= 1]
    return gen_observables(E, grid_points, max_support, rng_seed, count, exhaustive=exhaustive, masses=masses)


def _random_maps(rng, x, grid_points):
    """Two random maps on the support of ``x``; comonotone unless ``x`` is
    sharp, so that most draws fall under the law's hypotheses."""
    f = [rng.choice(grid_points) for _ in x.points]
    g = [rng.choice(grid_points) for _ in x.points]
    if not all(m in x.algebra.properties.sharp for m in x.masses):
        f.sort(reverse=rng.random() < 0.5)
        g.sort(reverse=f[0] > f[-1])
    return dict(zip(x.points, f)), dict(zip(x.points, g))


def _all_maps(x, values):
    for image in itertools.product(values, repeat=len(x.points)):
        yield dict(zip(x.points, image))


def _tuples(law, E, pool, rng, samples, exhaustive, grid_points):
    """Deterministic stream of input tuples for one law."""
    if law.domain == "sharp_elements":
        sharp = sorted(E.properties.sharp, key=E.elements.index)
        combos = list(itertools.product(sharp, repeat=law.arity))
        if exhaustive or len(combos) <= samples:
            yield from combos
        else:
            for _ in range(samples):
                yield tuple(rng.choice(sharp) for _ in range(law.arity))
        return
    if not pool:
        return
    if law.domain == "fcalc":
        if exhaustive:
            for x in pool:
                for f in _all_maps(x, grid_points):
                    for g in _all_maps(x, grid_points):
                        yield (x, f, g)
        else:
            for _ in range(samples):
                x = rng.choice(pool)
                yield (x, *_random_maps(rng, x, grid_points))
        return
    if exhaustive:
        yield from itertools.product(pool, repeat=law.arity)
    elif law.arity == 1:
        yield from ((x,) for x in pool[:samples])
    else:
        for _ in range(samples):
            yield tuple(rng.choice(pool) for _ in range(law.arity))


def _law_seed(seed, law_id):
    return random.Random(f"{seed}:{law_id}").randrange(2**32)


def suite_inputs(config: LawSuiteConfig, law_id: str):
    """The evaluation context and the input tuples :func:`run_suite` feeds
    to ``law_id`` under ``config``."""
    E = config.algebra
    law = CATALOG[law_id]
    grid_points = config.grid.points()
    seed = _law_seed(config.seed, law_id)
    rng = random.Random(seed)
    pool = _pool(E, law.domain, grid_points, config.max_support, seed, config.samples, config.exhaustive)
    upper = pool[:UPPER_POOL_LIMIT] if law.domain == "sharp" else []
    ctx = Context(E, config.force, upper)
    return ctx, _tuples(law, E, pool, rng, config.samples, config.exhaustive, grid_points)


def run_suite(config: LawSuiteConfig) -> LawReport:
    E = config.algebra
    _check_applicable(E, config.laws, config.force)
    results = []
    for law_id in config.laws:
        law = CATALOG[law_id]
        ctx, tuples = suite_inputs(config, law_id)
        result = LawResult(law_id)
        for items in tuples:
            outcome = law.check(ctx, items)
            if outcome is NOT_APPLICABLE:
                continue
            result.checked += 1
            if isinstance(outcome, Finding):
                result.passed += 1
                result.findings += 1
                if result.first_finding is None:
                    result.first_finding = Counterexample.from_failure(law_id, E, items, outcome, config.force).as_dict()
            elif outcome is None:
                result.passed += 1
            elif result.counterexample is None:
                result.counterexample = Counterexample.from_failure(law_id, E, items, outcome, config.force)
        results.append(result)
    return LawReport(config.as_dict(), classification(E), results)


# -- counterexample search ---------------------------------------------------------


# (grid points, max support) in increasing size; small witnesses come first.
STRATA = [
    ((0, 1), 2),
    ((-1, 0, 1), 2),
    ((-1, 0, 1), 3),
    ((-1, Fraction(-1, 2), 0, Fraction(1, 2), 1), 2),
    ((-1, Fraction(-1, 2), 0, Fraction(1, 2), 1), 3),
    ((-2, -1, 0, 1, 2), 3),
]


@dataclass
class NoneFound:
    """Certificate that no counterexample exists in the searched space."""

    law: str
    algebra: dict
    examined: int
    strata: list
    exhausted: list
    random_examined: int
    seed: int

    def as_dict(self):
        return dict(self.__dict__)


def search_counterexample(E: EffectAlgebra, law_id: str, budget: int, *, force: bool = False,
                          seed: int = 0, restrict=None):
    """Look for a violation of ``law_id`` on ``E``, examining at most
    ``budget`` tuples.

    Strata of growing grids are enumerated exhaustively first, then seeded
    random tuples on a wider grid.  ``restrict`` optionally filters tuples.
    Returns a :class:`Counterexample` or a :class:`NoneFound` certificate.
    """
    if law_id not in CATALOG:
        raise KeyError(f"unknown law {law_id!r}; catalog: {sorted(CATALOG)}")
    law = CATALOG[law_id]
    _check_applicable(E, [law_id], force)
    seen = set()
    examined = 0
    exhausted = []
    strata_desc = []

    def examine(items, ctx):
        nonlocal examined
        key = tuple(_item_key(it) for it in items)
        if key in seen:
            return None
        seen.add(key)
        if restrict is not None and not restrict(items):
            return None
        examined += 1
        outcome = law.check(ctx, items)
        if outcome is NOT_APPLICABLE:
            return None
        if outcome is not None and not isinstance(outcome, Finding):
            return Counterexample.from_failure(law_id, E, items, outcome, force)
        return None

    for points, support in STRATA:
        points = [rational(t) for t in points]
        desc = {"grid": [str(t) for t in points], "max_support": support}
        strata_desc.append(desc)
        pool = _pool(E, law.domain, points, support, seed, 0, True)
        ctx = Context(E, force, pool[:UPPER_POOL_LIMIT] if law.domain == "sharp" else [])
        complete = True
        for items in _tuples(law, E, pool, None, 0, True, points):
            if examined >= budget:
                complete = False
                break
            cex = examine(items, ctx)
            if cex is not None:
                return cex
        if complete:
            exhausted.append(desc)
        if examined >= budget:
            break

    random_examined = 0
    if examined < budget:
        grid = Grid(2, -2, 2)
        points = grid.points()
        rng = random.Random(_law_seed(seed, law_id))
        pool = _pool(E, law.domain, points, 4, seed, 500, False)
        ctx = Context(E, force, pool[:UPPER_POOL_LIMIT] if law.domain == "sharp" else [])
        # duplicates are skipped, so draw more than the budget; the cap ends
        # the phase on spaces smaller than the budget
        stream = _tuples(law, E, pool, rng, RANDOM_DRAW_FACTOR * budget, False, points)
        before = examined
        for items in stream:
            if examined >= budget:
                break
            cex = examine(items, ctx)
            if cex is not None:
                return cex
        random_examined = examined - before
    return NoneFound(law_id, E.to_dict(), examined, strata_desc, exhausted, random_examined, seed)


def _item_key(item):
    if isinstance(item, dict):
        return tuple(sorted(item.items()))
    return item
