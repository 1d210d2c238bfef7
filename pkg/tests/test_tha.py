from fractions import Fraction

import pytest

from conftest import engine_for, tables_for
from tha_forge import tha
from tha_forge.errors import NotPeripheralError, PreconditionError
from tha_forge.focal import LocalElement

F = Fraction


def test_special_node():
    assert tha.special_node(tables_for("A", 2, (1, 0)).ext) == 1
    assert tha.special_node(tables_for("A", 3, (0, 1, 0)).ext) == 2
    assert tha.special_node(tables_for("D", 4, (0, 0, 0, 1)).ext) == 4
    assert tha.special_node(tables_for("A", 1, (2,)).ext) is None


def test_presentation_shape():
    ext = tables_for("A", 2, (1, 0)).ext
    p = tha.w_presentation(ext)
    names = p.names()
    assert names[:3] == ["e0", "e1", "e2"] and "f0_0" in names and "f0_2" in names
    assert "f0_1" not in names and "f0" not in names
    groups = {r["group"] for r in p.relations}
    assert groups == {"eigen", "serre", "f0K", "ideal"}
    assert len(p.group("ideal")) == 4
    s = tha.w_presentation(ext, variant="S")
    assert "h0" not in s.names() and "f0_0" not in s.names()
    with pytest.raises(ValueError):
        tha.w_presentation(ext, variant="X")
    # no relation with i = 0 in the [e_i, [f_j, f_0K]] family
    assert all(r["indices"][0] != 0 for r in p.group("f0K") if len(r["indices"]) == 3)


def test_tree_json_roundtrip():
    p = tha.w_presentation(tables_for("A", 3, (1, 0, 0)).ext)
    for r in p.relations:
        assert tha.tree_from_json(tha.tree_to_json(r["lhs"])) == r["lhs"]
        assert tha.tree_from_json(tha.tree_to_json(r["rhs"])) == r["rhs"]
    assert tha.show(tha.ad(tha.gen("e1"), 2, tha.gen("e2"))) == "(ad e1)^2(e2)"


def test_generator_map_grading(a2):
    gm = tha.GeneratorMap(a2, tha.w_presentation(a2.t.ext))
    assert all(gm.preserves_grading().values())
    # eigen and serre relations hold identically in the commutator algebra
    for r in gm.presentation.relations:
        if r["group"] in ("eigen", "serre"):
            assert gm.residue(r).is_zero(), r["schema"]


@pytest.mark.parametrize("lab", [(1,), ])
def test_w_commutes_with_B1_a1(lab):
    eng = engine_for("A", 1, lab)
    rep = tha.lemma42_check(eng.t, eng)
    assert rep["passed"] and len(rep["brackets"]) == 2


def test_w_needs_equal_constants():
    eng = engine_for("A", 1, (1,), (1, 2, 1))
    rep = tha.lemma42_check(eng.t, eng)
    assert not rep["passed"]
    # a common rescaling is harmless; b = c alone is not enough for this w
    assert tha.lemma42_check(engine_for("A", 1, (1,), (2, 2, 2)).t,
                             engine_for("A", 1, (1,), (2, 2, 2)))["passed"]
    eng = engine_for("A", 1, (1,), (1, 2, 2))
    assert not tha.lemma42_check(eng.t, eng)["passed"]


def test_w_check_precondition():
    eng = engine_for("A", 1, (2,))
    with pytest.raises(PreconditionError):
        tha.lemma42_check(eng.t, eng)
    rep = tha.lemma42_check(eng.t, eng, require_pseudo_minuscule=False)
    assert "passed" in rep


def _is_ideal(eng, V, D):
    for d in (-1, 1):
        for x in D.span.basis(d):
            for dv in (-1, 0, 1):
                if d + dv not in (-1, 0, 1):
                    continue
                for v in V.basis(dv):
                    z = eng.commutator(v, x)
                    if z.filtration() <= V.cutoff and not D.contains(z):
                        return False
    return True


@pytest.mark.parametrize("case", [("A", 1, (1,)), ("A", 2, (1, 0))])
def test_ideals(case):
    eng = engine_for(*case)
    V = tha.SubalgebraV(eng, 3)
    w = tha.w_element(eng)
    assert V.contains(w)
    D = tha.ideal_span(eng, w, V)
    Dmax = tha.maximal_peripheral_ideal(eng, V)
    assert D.peripheral and Dmax.peripheral
    assert _is_ideal(eng, V, D) and _is_ideal(eng, V, Dmax)
    assert all(Dmax.contains(x) for d in (-1, 1) for x in D.span.basis(d))
    # the scalar 1 is never reached from the generators
    assert not V.contains(LocalElement.scalar())


def test_ideal_leaks_for_non_pm():
    eng = engine_for("A", 1, (2,))
    V = tha.SubalgebraV(eng, 2)
    with pytest.raises(NotPeripheralError) as err:
        tha.ideal_span(eng, tha.w_element(eng), V)
    assert err.value.witness
    D = tha.ideal_span(eng, tha.w_element(eng), V, strict=False)
    assert not D.peripheral


def test_presentation_reduces_a1():
    eng = engine_for("A", 1, (1,))
    rep = tha.thm43_check(eng.t, eng, cutoff=3)
    assert rep["passed"]
    assert rep["groups"]["ideal"]["fails"] == 0
    assert rep["ideal"]["peripheral"]
    assert all(r["zero_mod_maximal"] for r in rep["relations"])


def test_presentation_check_preconditions():
    eng = engine_for("A", 1, (2,))
    with pytest.raises(PreconditionError):
        tha.thm43_check(eng.t, eng)
    eng = engine_for("A", 1, (1,), (1, 2, 2))
    with pytest.raises(PreconditionError):
        tha.thm43_check(eng.t, eng)


def test_presentation_special_node_permutation():
    eng = engine_for("A", 3, (0, 1, 0))
    rep = tha.thm43_check(eng.t, eng, cutoff=2)
    assert rep["special_node"] == 2 and rep["numbering"]["permutation"] == [2, 1, 3]
    assert rep["passed"]


@pytest.mark.parametrize("case,expect", [(("A", 1, (1,)), 2), (("A", 2, (1, 0)), 9)])
def test_conjecture_probe(case, expect):
    eng = engine_for(*case)
    rep = tha.conjecture_probe(eng.t, eng, cutoff=2)
    row = {r["degree"]: r for r in rep["table"]}
    assert rep["informational"]
    assert row[-1]["W"] == expect and row[-1]["agree"]
    assert row[1]["V/D"] == eng.t.n1
