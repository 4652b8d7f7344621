"""JSON file formats for algebras and observables.

Algebra::

    {"kind": "product_chains", "orders": [2, 3]}
    {"kind": "table", "elements": [...], "zero": "0", "one": "1",
     "sums": [["a", "a", "1"], ...]}

Observable::

    {"algebra": <algebra object or path>,
     "points": [{"t": "-1/2", "mass": [1, 0]}, ...],
     "meta": {"forced": true}}        # meta only on forced results

Rationals are written as ``"p/q"`` or integer strings, never as floats.
Writing is canonical: reading a written file and writing it again yields the
same bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .effect import EffectAlgebra, algebra_from_dict
from .observable import Observable, make_discrete, rational


class FormatError(ValueError):
    """Malformed input file; ``location`` says where."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def dump_rational(t: Fraction) -> str:
    return str(t)


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(str(exc), str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


def algebra_to_dict(E: EffectAlgebra) -> dict:
    return E.to_dict()


def parse_algebra(data, location: str = "", base: Path | None = None) -> EffectAlgebra:
    """Algebra from a dict, or from a path string relative to ``base``."""
    if isinstance(data, str):
        path = Path(data)
        if base is not None and not path.is_absolute():
            path = base / path
        return read_algebra(path)
    if not isinstance(data, dict):
        raise FormatError("algebra must be an object or a path", location)
    try:
        return algebra_from_dict(data)
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}", location) from exc
    except TypeError as exc:
        raise FormatError(str(exc), location) from exc


def read_algebra(path) -> EffectAlgebra:
    """Read an algebra file.  Axiom violations propagate as
    :class:`~mvobs.errors.AxiomError`; syntax problems as :class:`FormatError`."""
    return parse_algebra(load_json(path), str(path), Path(path).parent)


def write_algebra(E: EffectAlgebra, path) -> None:
    Path(path).write_text(dumps(algebra_to_dict(E)), encoding="utf-8")


def observable_to_dict(x: Observable, *, with_algebra: bool = True) -> dict:
    E = x.algebra
    data = {}
    if with_algebra:
        data["algebra"] = algebra_to_dict(E)
    data["points"] = [{"t": dump_rational(t), "mass": E.dump_element(m)} for t, m in x.support]
    if x.forced:
        data["meta"] = {"forced": True, "laws_not_guaranteed": True}
    return data


def parse_points(E: EffectAlgebra, points, location: str = "", forced: bool = False) -> Observable:
    if not isinstance(points, list):
        raise FormatError("'points' must be a list", location)
    pairs = []
    for i, entry in enumerate(points):
        where = f"{location}points[{i}]"
        if not isinstance(entry, dict) or "t" not in entry or "mass" not in entry:
            raise FormatError("expected {'t': ..., 'mass': ...}", where)
        try:
            t = rational(entry["t"])
        except TypeError as exc:
            raise FormatError(str(exc), where) from exc
        mass = entry["mass"]
        if isinstance(mass, list):
            mass = tuple(mass)
        try:
            pairs.append((t, E.elem(mass)))
        except (ValueError, TypeError) as exc:
            raise FormatError(str(exc), where) from exc
    return make_discrete(E, pairs, forced=forced)


def observable_from_dict(data, location: str = "", base: Path | None = None,
                         algebra: EffectAlgebra | None = None) -> Observable:
    if not isinstance(data, dict):
        raise FormatError("observable must be an object", location)
    if algebra is None:
        if "algebra" not in data:
            raise FormatError("missing field 'algebra'", location)
        algebra = parse_algebra(data["algebra"], location, base)
    forced = bool(data.get("meta", {}).get("forced", False))
    return parse_points(algebra, data.get("points"), location, forced)


def read_observable(path) -> Observable:
    path = Path(path)
    return observable_from_dict(load_json(path), str(path) + ":", path.parent)


def write_observable(x: Observable, path=None) -> str:
    text = dumps(observable_to_dict(x))
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
