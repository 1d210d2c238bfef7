from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import engine_for, tables_for
from helpers import a2_degree0_rep, madd, mat_zero, mmul
from tha_forge import focal
from tha_forge.errors import DomainError
from tha_forge.focal import LocalElement, ZERO

F = Fraction


def el(engine, text):
    """Tiny parser for products of generator names: 'e0*h1' etc."""
    out = None
    for name in text.split("*"):
        g = engine.gen(name)
        out = g if out is None else engine.product(out, g)
    return out


def test_a1_products_by_hand(a1):
    one = LocalElement.scalar()
    h0, h1 = a1.gen("h0"), a1.gen("h1")
    e1, f1 = a1.gen("e1"), a1.gen("f1")
    assert el(a1, "f0*e0") == h0 + h1
    assert el(a1, "e0*f0") == one - h0 - h1
    assert a1.commutator(a1.gen("e0"), a1.gen("f0")) == one
    assert a1.commutator(a1.gen("f0"), a1.gen("e0")) == one
    assert a1.product(f1, e1) == a1.product(e1, f1) - h1
    e0 = a1.gen("e0")
    assert a1.product(a1.L, e0) == e0 + a1.product(e0, a1.L)
    # L = -2 h0 - h1 grades: [L, x] = deg(x) x
    for d in (-1, 0, 1):
        for i in range(len(a1.t.keys(d))):
            x = a1.embed(d, {i: 1})
            assert a1.commutator(a1.L, x) == x.scale(d)


def test_domain_errors(a1):
    e0 = a1.gen("e0")
    with pytest.raises(DomainError):
        a1.product(e0, e0)
    with pytest.raises(DomainError):
        a1.cross_base(0, 0, 0)


def _rep_of_env(rep, keys, vec):
    n = len(next(iter(rep.values())))
    total = mat_zero(n)
    for m, c in vec.items():
        p = [[F(int(i == j)) for j in range(n)] for i in range(n)]
        for k in m:
            p = mmul(p, rep[keys[k]])
        total = madd(total, p, c)
    return total


words = st.lists(st.integers(0, 8), max_size=5)


@given(words)
@settings(max_examples=80, deadline=None)
def test_pbw_normal_form_against_gl3(word):
    eng = engine_for("A", 2, (1, 0))
    tb = eng.t
    rep = a2_degree0_rep(tb)
    nf = eng.normal_form(word)
    assert all(list(m) == sorted(m) and len(m) <= len(word) for m in nf)
    assert _rep_of_env(rep, tb.basis0, nf) == _rep_of_env(rep, tb.basis0, {tuple(word): 1})


@given(words, words, words)
@settings(max_examples=60, deadline=None)
def test_pbw_associative_random(u, v, w):
    eng = engine_for("A", 2, (1, 0))
    a, b, c = (eng.normal_form(x) for x in (u, v, w))
    assert eng.pbw_product(eng.pbw_product(a, b), c) == eng.pbw_product(a, eng.pbw_product(b, c))


@given(st.integers(0, 2), st.lists(st.integers(0, 8), max_size=3), st.integers(0, 2),
       st.sampled_from([(1, -1), (-1, 1), (0, 1), (0, -1)]))
@settings(max_examples=60, deadline=None)
def test_product_independent_of_factorisation(x, word, y, degs):
    """Unsorted word on the left gives the same product as its normal form."""
    eng = engine_for("A", 2, (1, 0))
    dx, dy = degs
    lhs = eng.product_by_word(dx, x, tuple(word), dy, y)
    left = LocalElement({(dx, ZERO if dx == 0 else x, m): c
                         for m, c in eng.normal_form(word).items()})
    assert lhs == eng.product(left, LocalElement.basis(dy, y))


@given(st.integers(0, 2), st.lists(st.integers(0, 8), max_size=3), st.sampled_from([1, -1]))
@settings(max_examples=40, deadline=None)
def test_decompose_roundtrip(y, word, d):
    eng = engine_for("A", 2, (1, 0))
    vec = {(y, m): c for m, c in eng.normal_form(word).items()}
    assert eng.recompose(d, eng.decompose(d, vec)) == {k: c for k, c in vec.items() if c}


def test_check_focal_a1_full():
    rep = focal.check_focal(engine_for("A", 1, (1,)), cutoff=3, samples=300, seed=7)
    assert rep["passed"] and len(rep["identities"]) == 13
    assert all(r["exhaustive"] > 0 for r in rep["identities"])


def test_check_focal_other_constants():
    """The 13 identities do not depend on the product constants."""
    eng = engine_for("A", 1, (1,), (2, 3, 5))
    assert focal.check_focal(eng, cutoff=2, samples=100, seed=1)["passed"]


def test_check_focal_a3_small():
    assert focal.check_focal(engine_for("A", 3, (1, 0, 0)), cutoff=1, samples=60)["passed"]


def test_local_lie_and_commutator():
    for eng in (engine_for("A", 1, (1,)), engine_for("A", 3, (0, 1, 0))):
        assert focal.check_commutator(eng)["passed"]
    rep = focal.check_local_lie(engine_for("A", 1, (1,)), cutoff=2, samples=160, seed=3)
    assert rep["passed"] and len(rep["identities"]) == 8


def test_cross_commutator_scales_with_c():
    eng = engine_for("A", 1, (1,), (1, 1, 2))
    assert eng.commutator(eng.gen("e0"), eng.gen("f0")) == LocalElement.scalar(2)
    assert focal.check_commutator(eng)["passed"]


def test_extra_identities_are_reported_only():
    rep = focal.check_assoc_extra(engine_for("A", 1, (1,)), cutoff=2, samples=20)
    assert rep["informational"] and rep["status"] in ("holds", "violated")
    assert rep["status"] == "violated"
    assert any(r["witness"] for r in rep["identities"])


def test_pbw_exhaustive_small():
    rep = focal.check_pbw(engine_for("A", 1, (1,)), max_degree=4)
    assert rep["passed"] and rep["checked"] > 100


def test_sampler_deterministic():
    tb = tables_for("A", 2, (1, 0))
    a = [focal.Sampler(tb, 5).element(d) for d in (1, 0, -1)]
    b = [focal.Sampler(tb, 5).element(d) for d in (1, 0, -1)]
    assert a == b
    assert focal.check_focal(engine_for("A", 1, (1,)), 1, 40, seed=9) == \
        focal.check_focal(engine_for("A", 1, (1,)), 1, 40, seed=9)


def test_constants_parse():
    k = focal.ProductConstants.parse("1,2,3/2")
    assert k.as_tuple() == (1, 2, F(3, 2))
    with pytest.raises(ValueError):
        focal.ProductConstants.parse("1,2")


def test_element_basics():
    x = LocalElement.basis(1, 0, (2,)) + LocalElement.scalar(3)
    assert x.degrees() == [0, 1] and x.filtration() == 1
    assert (x - x).is_zero() and not (x - x)
    with pytest.raises(ValueError):
        x.parity()
    assert (2 * x).component(0) == {(): 6}
