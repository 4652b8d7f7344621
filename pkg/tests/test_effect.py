import itertools

import pytest

from mvobs.effect import (
    ChainProduct,
    boolean_algebra,
    check_properties,
    diamond,
    make_chain,
    make_product,
    make_table,
    mo2,
)
from mvobs.errors import AxiomError, ForeignElementError

from .conftest import MV_ALGEBRAS


def brute_axioms(E):
    """Check effect-algebra axioms straight from the partial addition."""
    els = E.elements
    add = E._add
    for a, b in itertools.product(els, repeat=2):
        assert add(a, b) == add(b, a)
    for a, b, c in itertools.product(els, repeat=3):
        ab, bc = add(a, b), add(b, c)
        left = add(ab, c) if ab is not None else None
        right = add(a, bc) if bc is not None else None
        assert left == right
    for a in els:
        comps = [b for b in els if add(a, b) == E.one]
        assert len(comps) == 1
        if add(a, E.one) is not None:
            assert a == E.zero


def brute_bound(E, a, b, lower):
    """glb/lub by scanning all elements against the derived order."""
    def leq(x, y):
        return any(E._add(x, c) == y for c in E.elements)

    if lower:
        bounds = [c for c in E.elements if leq(c, a) and leq(c, b)]
        best = [c for c in bounds if all(leq(d, c) for d in bounds)]
    else:
        bounds = [c for c in E.elements if leq(a, c) and leq(b, c)]
        best = [c for c in bounds if all(leq(c, d) for d in bounds)]
    return best[0] if best else None


# -- construction ---------------------------------------------------------------


def test_chain_one_is_two_element_boolean():
    E = make_chain(1)
    assert E.elements == ((0,), (1,))
    assert E.properties.is_boolean


def test_chain_zero_rejected():
    with pytest.raises(ValueError):
        make_chain(0)


def test_chain_two_arithmetic(c2):
    assert c2.add((1,), (1,)) == (2,)
    assert c2.add((2,), (1,)) is None
    assert c2.complement((1,)) == (1,)
    assert c2.complement((0,)) == (2,)
    assert c2.diff((1,), (2,)) == (1,)


def test_chain_two_properties(c2):
    p = c2.properties
    assert p.is_mv and p.has_rdp
    assert p.sharp == {(0,), (2,)}
    assert not c2.is_sharp((1,))


def test_product_boolean_square():
    E = make_product([make_chain(1), make_chain(1)])
    p = E.properties
    assert p.is_boolean and p.is_orthoalgebra
    assert p.sharp == set(E.elements)
    assert E.complement((1, 0)) == (0, 1)


def test_product_identity_and_complement():
    assert make_product([make_chain(2)]) == make_chain(2)
    E = make_product([make_chain(1), make_chain(2)])
    assert E.complement((1, 0)) == (0, 2)


def test_product_rejects_empty():
    with pytest.raises(ValueError):
        make_product([])


@pytest.mark.parametrize("name", sorted(MV_ALGEBRAS))
def test_chain_products_satisfy_axioms(name):
    brute_axioms(MV_ALGEBRAS[name])


def test_neutral_zero_everywhere():
    for E in list(MV_ALGEBRAS.values()) + [diamond(), mo2()]:
        for x in E.elements:
            assert E.add(E.zero, x) == x


def test_foreign_elements_rejected(c2):
    with pytest.raises(ForeignElementError):
        c2.add((3,), (0,))
    with pytest.raises(ForeignElementError):
        c2.add((1, 0), (0,))
    with pytest.raises(ForeignElementError):
        diamond().add(7, 0)


def test_diff_requires_order(c2):
    with pytest.raises(ValueError):
        c2.diff((2,), (1,))


# -- comparisons ---------------------------------------------------------------------


def test_compare_chain(c2):
    cmp = c2.compare((1,), (2,))
    assert cmp.leq and not cmp.geq
    assert cmp.meet == (1,) and cmp.join == (2,)


def test_compare_square(b2):
    cmp = b2.compare((1, 0), (0, 1))
    assert (cmp.leq, cmp.geq) == (False, False)
    assert cmp.meet == (0, 0) and cmp.join == (1, 1)


def test_mo2_bounds():
    E = mo2()
    a, b = E.elem("a"), E.elem("b")
    assert E.meet(a, b) == E.zero
    assert E.join(a, b) == E.one


@pytest.mark.parametrize("E", [diamond(), mo2(), make_chain(3), boolean_algebra(2)], ids=repr)
def test_meet_join_match_brute_force(E):
    for a, b in itertools.product(E.elements, repeat=2):
        assert E.meet(a, b) == brute_bound(E, a, b, lower=True)
        assert E.join(a, b) == brute_bound(E, a, b, lower=False)


# -- MV operations ----------------------------------------------------------------------


def test_mv_ops_chain(c2):
    assert c2.oplus((1,), (2,)) == (2,)
    assert c2.odot((1,), (2,)) == (1,)


@pytest.mark.parametrize("name", sorted(MV_ALGEBRAS))
def test_mv_identities(name):
    E = MV_ALGEBRAS[name]
    c = E.complement
    for a in E.elements:
        assert E.oplus(a, E.zero) == a
        assert E.oplus(a, c(a)) == E.one
        assert E.oplus(a, E.one) == E.one
    for a, b in itertools.product(E.elements, repeat=2):
        assert E.oplus(a, b) == E.oplus(b, a)
        assert E.oplus(c(E.oplus(c(a), b)), b) == E.oplus(c(E.oplus(c(b), a)), a)


def test_mv_ops_rejected_on_diamond(dia):
    with pytest.raises(ValueError):
        dia.oplus(dia.zero, dia.one)


# -- table algebras ----------------------------------------------------------------------


def test_diamond_classification(dia):
    p = dia.properties
    assert p.is_lattice and p.is_distributive
    assert not p.is_mv and not p.has_rdp
    assert p.sharp == {dia.zero, dia.one}
    a, b = dia.elem("a"), dia.elem("b")
    # 1 = a + a = b + b has no refinement
    assert p.rdp_witness == (a, a, b, b)
    brute_axioms(dia)


def test_mo2_classification(mo):
    p = mo.properties
    assert p.is_lattice and not p.is_distributive
    assert p.is_orthoalgebra and not p.is_mv
    a, ac, b = mo.elem("a"), mo.elem("a'"), mo.elem("b")
    assert mo.meet(a, mo.join(ac, b)) != mo.join(mo.meet(a, ac), mo.meet(a, b))


def test_idempotent_sum_rejected():
    with pytest.raises(AxiomError):
        make_table(["0", "a", "1"], [["a", "a", "a"]], "0", "1")


def test_missing_complement_reports_axiom_iii():
    with pytest.raises(AxiomError) as info:
        make_table(["0", "a", "b", "1"], [["a", "a", "1"]], "0", "1")
    assert info.value.axiom == "(iii)"
    assert info.value.witness[0] == "b"


def test_non_functional_table():
    with pytest.raises(AxiomError) as info:
        make_table(["0", "a", "1"], [["a", "a", "1"], ["a", "a", "a"]], "0", "1")
    assert info.value.axiom == "functional"


def test_commutativity_conflict():
    with pytest.raises(AxiomError) as info:
        make_table(
            ["0", "a", "b", "c", "1"],
            [["a", "b", "c"], ["b", "a", "1"], ["c", "c", "1"]],
            "0",
            "1",
        )
    assert info.value.axiom in ("(i)", "functional")


def test_unit_absorbing_violation():
    with pytest.raises(AxiomError) as info:
        make_table(["0", "a", "1"], [["a", "a", "1"], ["a", "1", "1"]], "0", "1")
    assert info.value.axiom in ("(iii)", "(iv)")


def test_associativity_violation():
    # (a+a)+c = c+c = 1 while a+c is undefined
    names = ["0", "a", "b", "c", "1"]
    sums = [["a", "b", "1"], ["c", "c", "1"], ["a", "a", "c"]]
    with pytest.raises(AxiomError) as info:
        make_table(names, sums, "0", "1")
    assert info.value.axiom == "(ii)"


def test_table_chain_equals_chain_classification():
    T = make_table(["0", "1/2", "1"], [["1/2", "1/2", "1"]], "0", "1")
    assert T.properties.is_mv
    assert len(T.properties.sharp) == 2


# -- invariants ---------------------------------------------------------------------------


ALL_SMALL = list(MV_ALGEBRAS.values()) + [diamond(), mo2()]


@pytest.mark.parametrize("E", ALL_SMALL, ids=repr)
def test_order_coherence(E):
    c = E.complement
    for a, b in itertools.product(E.elements, repeat=2):
        if E.leq(a, b):
            assert E.add(a, E.diff(a, b)) == b
            assert E.leq(c(b), c(a))
    for a in E.elements:
        assert c(c(a)) == a


@pytest.mark.parametrize("E", ALL_SMALL, ids=repr)
def test_mv_iff_lattice_and_rdp(E):
    p = E.properties
    assert p.is_mv == (p.is_lattice and p.has_rdp)
    if p.is_boolean:
        assert p.is_mv and p.sharp == set(E.elements)


@pytest.mark.parametrize("E", [E for E in ALL_SMALL if E.properties.has_rdp], ids=repr)
def test_sharp_elements_form_boolean_subalgebra(E):
    sh = E.properties.sharp
    assert E.zero in sh and E.one in sh
    for a in sh:
        assert E.complement(a) in sh
    for a, b in itertools.product(sh, repeat=2):
        s = E.add(a, b)
        assert s is None or s in sh
        assert E.meet(a, b) in sh and E.join(a, b) in sh
        # Boolean: a+b exists exactly for disjoint sharp elements
        assert (s is not None) == (E.meet(a, b) == E.zero)
    for a, b, c in itertools.product(sh, repeat=3):
        assert E.meet(a, E.join(b, c)) == E.join(E.meet(a, b), E.meet(a, c))


def test_large_product_uses_structure():
    E = ChainProduct((4, 4, 4))
    p = E.properties
    assert p.is_mv and len(p.sharp) == 8


@pytest.mark.parametrize("orders", [(1,), (3,), (1, 1), (2, 3), (1, 2, 2), (4, 4)])
def test_structural_classification_matches_exhaustive(orders, monkeypatch):
    monkeypatch.setattr("mvobs.effect.EXHAUSTIVE_LIMIT", 0)
    E = ChainProduct(orders)
    assert E.properties == check_properties(E)
