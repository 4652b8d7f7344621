"""Finite effect algebras.

Two concrete representations are provided.  :class:`ChainProduct` realizes a
finite MV-effect algebra as a product of chains ``[0, u_1] x ... x [0, u_k]``
with elements stored as coordinate tuples; :class:`TableAlgebra` takes an
arbitrary partial addition table and validates the effect-algebra axioms.

Both share the :class:`EffectAlgebra` interface.  ``add``, ``meet`` and
``join`` return ``None`` where the result is undefined.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple, Sequence

from .errors import AxiomError, ForeignElementError, NotLatticeError

Element = Hashable

# Above this many elements a chain product is classified from its known
# structure instead of exhaustively.
EXHAUSTIVE_LIMIT = 64


class Comparison(NamedTuple):
    leq: bool
    geq: bool
    meet: Element | None
    join: Element | None


@dataclass(frozen=True)
class AlgebraProperties:
    is_lattice: bool
    is_distributive: bool
    has_rdp: bool
    is_mv: bool
    is_orthoalgebra: bool
    is_boolean: bool
    sharp: frozenset
    # first failing instance of each property, if any
    distributivity_witness: tuple | None = field(default=None, compare=False)
    rdp_witness: tuple | None = field(default=None, compare=False)


class EffectAlgebra(ABC):
    """Common interface of finite effect algebras."""

    zero: Element
    one: Element

    # -- representation hooks -------------------------------------------

    @property
    @abstractmethod
    def elements(self) -> tuple:
        """All elements in a fixed deterministic order."""

    @abstractmethod
    def contains(self, a) -> bool: ...

    @abstractmethod
    def _add(self, a, b): ...

    @abstractmethod
    def _complement(self, a): ...

    @abstractmethod
    def _leq(self, a, b) -> bool: ...

    @abstractmethod
    def _meet(self, a, b): ...

    @abstractmethod
    def _join(self, a, b): ...

    @abstractmethod
    def elem(self, value) -> Element:
        """Coerce a user-facing value (int, list, name) to an element."""

    @abstractmethod
    def dump_element(self, a):
        """JSON-ready form of an element."""

    @abstractmethod
    def show(self, a) -> str: ...

    @abstractmethod
    def to_dict(self) -> dict: ...

    @abstractmethod
    def _key(self) -> tuple: ...

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, EffectAlgebra):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self):
        return len(self.elements)

    # -- checked operations ----------------------------------------------

    def _require(self, *elements):
        for a in elements:
            if not self.contains(a):
                raise ForeignElementError(f"{a!r} is not an element of {self!r}")

    def add(self, a, b):
        """Partial sum ``a + b``; ``None`` when undefined."""
        self._require(a, b)
        return self._add(a, b)

    def complement(self, a):
        self._require(a)
        return self._complement(a)

    def leq(self, a, b) -> bool:
        self._require(a, b)
        return self._leq(a, b)

    def meet(self, a, b):
        self._require(a, b)
        return self._meet(a, b)

    def join(self, a, b):
        self._require(a, b)
        return self._join(a, b)

    def diff(self, a, b):
        """Return ``b - a``, the unique ``c`` with ``a + c = b``."""
        self._require(a, b)
        if not self._leq(a, b):
            raise ValueError(f"{self.show(a)} is not below {self.show(b)}")
        return self._complement(self._add(self._complement(b), a))

    def compare(self, a, b) -> Comparison:
        self._require(a, b)
        return Comparison(self._leq(a, b), self._leq(b, a), self._meet(a, b), self._join(a, b))

    def oplus(self, a, b):
        """Total MV sum ``a + (a' meet b)``."""
        self._require_mv()
        self._require(a, b)
        return self._add(a, self._meet(self._complement(a), b))

    def odot(self, a, b):
        self._require_mv()
        self._require(a, b)
        c = self._complement
        return c(self.oplus(c(a), c(b)))

    def _require_mv(self):
        if not self.properties.is_mv:
            raise ValueError(f"{self!r} is not an MV-effect algebra")

    def is_sharp(self, a) -> bool:
        self._require(a)
        return self._meet(a, self._complement(a)) == self.zero

    def sharp_set(self) -> frozenset:
        return self.properties.sharp

    def require_lattice(self):
        if not self.properties.is_lattice:
            raise NotLatticeError(f"{self!r} is not a lattice")

    @cached_property
    def properties(self) -> AlgebraProperties:
        return check_properties(self)


# ---------------------------------------------------------------------------
# product of chains


class ChainProduct(EffectAlgebra):
    """``[0,u_1] x ... x [0,u_k]`` with coordinatewise integer addition."""

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(u) for u in orders)
        if not orders:
            raise ValueError("a chain product needs at least one factor")
        if any(u < 1 for u in orders):
            raise ValueError(f"chain orders must be positive, got {orders}")
        self.orders = orders
        self.zero = (0,) * len(orders)
        self.one = orders

    def __repr__(self):
        return "ChainProduct(" + "x".join(f"C({u})" for u in self.orders) + ")"

    def _key(self):
        return ("product_chains", self.orders)

    @cached_property
    def elements(self) -> tuple:
        return tuple(itertools.product(*(range(u + 1) for u in self.orders)))

    def __len__(self):
        n = 1
        for u in self.orders:
            n *= u + 1
        return n

    def contains(self, a) -> bool:
        return (
            type(a) is tuple
            and len(a) == len(self.orders)
            and all(type(c) is int and 0 <= c <= u for c, u in zip(a, self.orders))
        )

    def _add(self, a, b):
        s = tuple(x + y for x, y in zip(a, b))
        for c, u in zip(s, self.orders):
            if c > u:
                return None
        return s

    def _complement(self, a):
        return tuple(u - x for u, x in zip(self.orders, a))

    def _leq(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def _meet(self, a, b):
        return tuple(map(min, a, b))

    def _join(self, a, b):
        return tuple(map(max, a, b))

    def elem(self, value):
        if isinstance(value, int) and len(self.orders) == 1:
            value = (value,)
        a = tuple(int(c) for c in value)
        self._require(a)
        return a

    def dump_element(self, a):
        return list(a)

    def show(self, a):
        if len(a) == 1:
            return str(a[0])
        return "(" + ",".join(map(str, a)) + ")"

    def to_dict(self):
        return {"kind": "product_chains", "orders": list(self.orders)}

    @cached_property
    def properties(self) -> AlgebraProperties:
        if len(self) <= EXHAUSTIVE_LIMIT:
            return check_properties(self)
        boolean = all(u == 1 for u in self.orders)
        sharp = frozenset(
            itertools.product(*((0, u) for u in self.orders))
        )
        return AlgebraProperties(
            is_lattice=True,
            is_distributive=True,
            has_rdp=True,
            is_mv=True,
            is_orthoalgebra=boolean,
            is_boolean=boolean,
            sharp=sharp,
        )


def make_chain(n: int) -> ChainProduct:
    """The chain ``C(n) = {0, 1, ..., n}``."""
    if n < 1:
        raise ValueError("C(0) is degenerate (0 = 1)")
    return ChainProduct((n,))


def make_product(factors: Iterable[ChainProduct]) -> ChainProduct:
    factors = list(factors)
    if not factors:
        raise ValueError("empty product")
    orders = []
    for f in factors:
        if not isinstance(f, ChainProduct):
            raise TypeError("only chain products can be multiplied")
        orders.extend(f.orders)
    return ChainProduct(orders)


def boolean_algebra(k: int) -> ChainProduct:
    """The Boolean algebra ``2^k``."""
    return ChainProduct((1,) * k)


# ---------------------------------------------------------------------------
# table algebras


class TableAlgebra(EffectAlgebra):
    """Effect algebra given by an explicit partial addition table.

    Elements are integer indices into ``names``.  Use :func:`make_table` to
    build one; it validates the axioms.
    """

    def __init__(self, names, sums, zero, one):
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}
        self.zero = zero
        self.one = one
        self._sums = dict(sums)
        n = len(self.names)
        comp = [None] * n
        leq = [[False] * n for _ in range(n)]
        for (a, b), c in self._sums.items():
            leq[a][c] = True
            if c == one:
                comp[a] = b
        self._comp = comp
        self._leq_table = leq
        self._meet_table = _bound_table(n, leq, lower=True)
        self._join_table = _bound_table(n, leq, lower=False)

    def __repr__(self):
        return f"TableAlgebra({list(self.names)!r})"

    def _key(self):
        return ("table", self.names, self.zero, self.one, frozenset(self._sums.items()))

    @property
    def elements(self) -> tuple:
        return tuple(range(len(self.names)))

    def contains(self, a) -> bool:
        return type(a) is int and 0 <= a < len(self.names)

    def _add(self, a, b):
        return self._sums.get((a, b))

    def _complement(self, a):
        return self._comp[a]

    def _leq(self, a, b):
        return self._leq_table[a][b]

    def _meet(self, a, b):
        return self._meet_table[a][b]

    def _join(self, a, b):
        return self._join_table[a][b]

    def elem(self, value):
        if isinstance(value, str):
            try:
                return self._index[value]
            except KeyError:
                raise ForeignElementError(f"no element named {value!r}") from None
        self._require(value)
        return value

    def dump_element(self, a):
        return self.names[a]

    def show(self, a):
        return self.names[a]

    def to_dict(self):
        sums = [
            [self.names[a], self.names[b], self.names[c]]
            for (a, b), c in sorted(self._sums.items())
            if a <= b and a != self.zero and b != self.zero
        ]
        return {
            "kind": "table",
            "elements": list(self.names),
            "zero": self.names[self.zero],
            "one": self.names[self.one],
            "sums": sums,
        }


def _bound_table(n, leq, lower):
    table = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            if lower:
                bounds = [c for c in range(n) if leq[c][a] and leq[c][b]]
                best = [c for c in bounds if all(leq[d][c] for d in bounds)]
            else:
                bounds = [c for c in range(n) if leq[a][c] and leq[b][c]]
                best = [c for c in bounds if all(leq[c][d] for d in bounds)]
            if best:
                table[a][b] = table[b][a] = best[0]
    return table


def make_table(elements, sums, zero, one) -> TableAlgebra:
    """Build and validate a table effect algebra.

    ``sums`` lists triples ``(x, y, z)`` of names meaning ``x + y = z``.
    Mirrored triples and the neutral sums ``0 + x = x`` are implied; anything
    else omitted is undefined.  Raises :class:`AxiomError` naming the first
    violated condition together with the witnessing elements.
    """
    names = [str(e) for e in elements]
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise AxiomError("names", "duplicate element name", (dup,))
    index = {name: i for i, name in enumerate(names)}
    for special in (zero, one):
        if special not in index:
            raise AxiomError("names", f"unknown element {special!r}", (special,))
    z, u = index[zero], index[one]
    if z == u:
        raise AxiomError("names", "zero and one coincide", (zero,))

    table: dict[tuple[int, int], int] = {}

    def put(a, b, c, axiom):
        old = table.get((a, b))
        if old is not None and old != c:
            raise AxiomError(
                axiom,
                f"{names[a]}+{names[b]} is both {names[old]} and {names[c]}",
                (names[a], names[b], names[old], names[c]),
            )
        table[(a, b)] = c

    for triple in sums:
        if len(triple) != 3:
            raise AxiomError("names", f"malformed sum {triple!r}", tuple(triple))
        for name in triple:
            if name not in index:
                raise AxiomError("names", f"unknown element {name!r}", tuple(triple))
        a, b, c = (index[t] for t in triple)
        if a == z and c != b or b == z and c != a:
            raise AxiomError("zero", "zero is not neutral", tuple(triple))
        put(a, b, c, "functional")
    for (a, b), c in list(table.items()):
        put(b, a, c, "(i)")
    for a in range(len(names)):
        put(z, a, a, "zero")
        put(a, z, a, "zero")

    n = len(names)
    for a in range(n):
        comps = [b for b in range(n) if table.get((a, b)) == u]
        if len(comps) != 1:
            what = "no complement" if not comps else "several complements"
            raise AxiomError("(iii)", f"{names[a]} has {what}", (names[a],) + tuple(names[b] for b in comps))
    for a in range(n):
        if a != z and (a, u) in table:
            raise AxiomError("(iv)", f"{names[a]}+1 is defined", (names[a],))
    for a, b, c in itertools.product(range(n), repeat=3):
        ab = table.get((a, b))
        left = table.get((ab, c)) if ab is not None else None
        bc = table.get((b, c))
        right = table.get((a, bc)) if bc is not None else None
        if left != right:
            raise AxiomError(
                "(ii)",
                f"({names[a]}+{names[b]})+{names[c]} and {names[a]}+({names[b]}+{names[c]}) differ",
                (names[a], names[b], names[c]),
            )

    alg = TableAlgebra(names, table, z, u)
    for a, b in itertools.combinations(range(n), 2):
        if alg._leq(a, b) and alg._leq(b, a):
            raise AxiomError("order", "derived order is not antisymmetric", (names[a], names[b]))
    return alg


def diamond() -> TableAlgebra:
    """Four-element distributive non-MV algebra: a+a = b+b = 1, a+b undefined."""
    return make_table(["0", "a", "b", "1"], [["a", "a", "1"], ["b", "b", "1"]], "0", "1")


def mo2() -> TableAlgebra:
    """Horizontal sum of two four-element Boolean algebras."""
    return make_table(
        ["0", "a", "a'", "b", "b'", "1"],
        [["a", "a'", "1"], ["b", "b'", "1"]],
        "0",
        "1",
    )


# ---------------------------------------------------------------------------
# classification


def check_properties(E: EffectAlgebra) -> AlgebraProperties:
    """Classify ``E`` by exhaustive enumeration."""
    els = E.elements
    zero = E.zero
    pairs = list(itertools.product(els, repeat=2))

    lattice = all(E._meet(a, b) is not None and E._join(a, b) is not None for a, b in pairs)

    dist_witness = None
    if lattice:
        meet, join = E._meet, E._join
        for a, b, c in itertools.product(els, repeat=3):
            if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)) or join(a, meet(b, c)) != meet(
                join(a, b), join(a, c)
            ):
                dist_witness = (a, b, c)
                break
    distributive = lattice and dist_witness is None

    rdp_witness = _rdp_witness(E)
    mv = lattice and all(E._add(a, b) is not None for a, b in pairs if E._meet(a, b) == zero)
    ortho = all(E._add(a, a) is None for a in els if a != zero)
    boolean = lattice and all((E._add(a, b) is not None) == (E._meet(a, b) == zero) for a, b in pairs)
    sharp = frozenset(a for a in els if E._meet(a, E._complement(a)) == zero)
    return AlgebraProperties(
        is_lattice=lattice,
        is_distributive=distributive,
        has_rdp=rdp_witness is None,
        is_mv=mv,
        is_orthoalgebra=ortho,
        is_boolean=boolean,
        sharp=sharp,
        distributivity_witness=dist_witness,
        rdp_witness=rdp_witness,
    )


def _rdp_witness(E: EffectAlgebra):
    """First ``(a1, a2, b1, b2)`` with ``a1+a2 = b1+b2`` admitting no
    refinement matrix, or ``None`` if the algebra has RDP."""
    els = E.elements
    by_sum: dict = {}
    for a1, a2 in itertools.product(els, repeat=2):
        s = E._add(a1, a2)
        if s is not None:
            by_sum.setdefault(s, []).append((a1, a2))
    for decomps in by_sum.values():
        for (a1, a2), (b1, b2) in itertools.product(decomps, repeat=2):
            if not _refines(E, a1, a2, b1, b2):
                return (a1, a2, b1, b2)
    return None


def _refines(E, a1, a2, b1, b2) -> bool:
    comp, add, leq = E._complement, E._add, E._leq

    def minus(small, big):
        return comp(add(comp(big), small))

    for c11 in E.elements:
        if not (leq(c11, a1) and leq(c11, b1)):
            continue
        c12 = minus(c11, a1)
        c21 = minus(c11, b1)
        if not leq(c21, a2):
            continue
        c22 = minus(c21, a2)
        if add(c12, c22) == b2:
            return True
    return False


def algebra_from_dict(data: dict) -> EffectAlgebra:
    kind = data.get("kind")
    if kind == "product_chains":
        return ChainProduct(data["orders"])
    if kind == "table":
        return make_table(data["elements"], data.get("sums", []), data["zero"], data["one"])
    raise ValueError(f"unknown algebra kind {kind!r}")
