from fractions import Fraction
from itertools import product as iproduct

import pytest

from conftest import tables_for
from helpers import a2_degree0_rep, gl_model, homomorphism_defects, madd, unit, weyl_dimension
from tha_forge import rootsys, superlocal
from tha_forge.errors import DomainError, SingularBError

F = Fraction
PM = [("A", 1, (1,)), ("A", 2, (1, 0)), ("A", 3, (0, 1, 0)), ("B", 3, (1, 0, 0)),
      ("C", 3, (0, 0, 1)), ("D", 4, (1, 0, 0, 0)), ("D", 4, (0, 0, 0, 1))]


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_chevalley_against_matrices(r):
    c = rootsys.build_cartan("A", r)
    tab = superlocal.chevalley_constants(c)
    n = r + 1
    seeds = {}
    for i in range(r):
        simple = tuple(int(j == i) for j in range(r))
        seeds[(simple, 0)] = unit(n, i, i + 1)
        seeds[(tuple(-x for x in simple), 0)] = unit(n, i + 1, i)
        seeds[((), i)] = madd(unit(n, i, i), unit(n, i + 1, i + 1), -1)
    rep = gl_model(tab.keys, tab.lie.bracket_keys, seeds)
    assert homomorphism_defects(tab.keys, tab.lie.bracket_keys, rep) == []


@pytest.mark.parametrize("t,r", [("B", 2), ("G", 2), ("C", 3)])
def test_chevalley_integral_and_jacobi(t, r):
    tab = superlocal.chevalley_constants(rootsys.build_cartan(t, r))
    br = tab.lie.bracket_keys
    keys = tab.keys
    for x, y in iproduct(keys, keys):
        v = br(x, y)
        assert all(c.denominator == 1 for c in v.values())
        assert {k: -c for k, c in br(y, x).items()} == v
    for x, y, z in iproduct(keys, repeat=3):
        tot = {}
        for a, b, cc in ((x, y, z), (y, z, x), (z, x, y)):
            for k, c in br(b, cc).items():
                for k2, c2 in br(a, k).items():
                    tot[k2] = tot.get(k2, 0) + c * c2
        assert not any(tot.values())


@pytest.mark.parametrize("t,r,lab", PM)
def test_dim_B1_is_weyl_dimension(t, r, lab):
    tb = tables_for(t, r, lab)
    c = rootsys.build_cartan(t, r)
    assert tb.n1 == weyl_dimension(c, lab) == len(tb.basism)
    assert tb.n0 == c.dim + 1


def test_a2_local_part_is_gl3():
    """B_0 for (A2, Lambda_1) acts faithfully as gl(3), with h_0 diagonal."""
    tb = tables_for("A", 2, (1, 0))
    br = tb.lie.bracket_keys
    rep = a2_degree0_rep(tb)
    assert homomorphism_defects(tb.basis0, br, rep) == []


@pytest.mark.parametrize("t,r,lab", PM)
def test_super_jacobi_and_invariance(t, r, lab):
    tb = tables_for(t, r, lab)
    lie = tb.lie
    deg = {k: d for d in (-1, 0, 1) for k in tb.keys(d)}
    par = {k: d % 2 for k, d in deg.items()}
    keys = list(deg)
    # a light sweep: Jacobi with one argument in degree 0 generators plus all pairs
    gens = [tb.basis0[i] for i in range(tb.rank + 1)] + \
           [tb.basis0[tb.e(k)] for k in range(1, tb.rank + 1)] + \
           [tb.basis0[tb.f(k)] for k in range(1, tb.rank + 1)] + \
           [tb.basis1[tb.e(0)], tb.basism[tb.f(0)]]
    for x in gens:
        for y, z in iproduct(keys, keys):
            if deg[x] + deg[y] + deg[z] not in (-1, 0, 1) or abs(deg[y] + deg[z]) > 1 \
                    or abs(deg[x] + deg[y]) > 1 or abs(deg[x] + deg[z]) > 1:
                continue
            lhs = lie.bracket({x: 1}, lie.bracket_keys(y, z))
            s = -1 if par[x] and par[y] else 1
            rhs = lie.bracket(lie.bracket_keys(x, y), {z: 1})
            superlocal.vadd(rhs, lie.bracket({y: 1}, lie.bracket_keys(x, z)), s)
            assert lhs == rhs, (x, y, z)
    # invariance <[x,y]|z> = <x|[y,z]> with x in B_1, y in B_0, z in B_-1
    for x, y, z in iproduct(tb.basis1, tb.basis0, tb.basism):
        assert lie.pair(lie.bracket_keys(x, y), {z: 1}) == lie.pair({x: 1}, lie.bracket_keys(y, z))


@pytest.mark.parametrize("t,r,lab", PM)
def test_pairing_nondegenerate_and_L(t, r, lab):
    tb = tables_for(t, r, lab)
    from tha_forge import linalg
    M = [[tb.pair(1, a, -1, b) for b in range(tb.n1)] for a in range(tb.n1)]
    assert linalg.det(M) != 0
    for d in (-1, 0, 1):
        assert all(tb.L_bracket(d, i) == d for i in range(len(tb.keys(d))))
    # [x, y] for x in B_1, y in B_-1 lands in degree 0 and the h-part matches the pairing
    f0, e0 = tb.f(0), tb.e(0)
    assert tb.pair(1, e0, -1, f0) == 1
    d, v = tb.bracket(1, e0, -1, f0)
    assert d == 0 and v == {0: 1}


def test_a1_tables_by_hand():
    tb = tables_for("A", 1, (1,))
    assert tb.names == {0: ["h0", "h1", "e1", "f1"], 1: ["e0", "e[1,1]"], -1: ["f0", "f[1,1]"]}
    assert tb.L == {0: F(-2), 1: F(-1)}
    # [f_1, e_0] = 0, [e_1, e_0] spans the other weight
    assert tb.bracket(0, 3, 1, 0) == (1, {})
    assert tb.bracket(0, 2, 1, 0) == (1, {1: F(1)})
    with pytest.raises(DomainError):
        tb.bracket(1, 0, 1, 0)
    with pytest.raises(DomainError):
        tb.pair(1, 0, 0, 0)


@pytest.mark.parametrize("t,r,lab", [("A", 2, (1, 0)), ("D", 4, (1, 0, 0, 0)), ("A", 3, (0, 1, 0)),
                                     ("E", 6, (1, 0, 0, 0, 0, 0))])
def test_vanishing_scan_all_zero(t, r, lab):
    assert superlocal.prop41_scan(tables_for(t, r, lab))["all_zero"]


def test_vanishing_scan_witness():
    rep = superlocal.prop41_scan(tables_for("A", 1, (2,)))
    assert not rep["all_zero"]
    w = rep["nonzero"][0]
    assert w["factor"] == -1 and w["value"] == {"e1": F(-2)}


def test_singular_B():
    c = rootsys.cartan_from_matrix([[2, -1], [-1, 2]])
    # lambda with (lambda, lambda) = 0 is impossible on finite type; force det B = 0 directly
    ext = rootsys.ExtendedMatrix(B=((0,) * 3,) * 3, det=F(0), det_A=F(3), inverse=None,
                                 epsilon=(1, 1, 1), singular=True)
    with pytest.raises(SingularBError):
        superlocal.build_local_part(c, rootsys.make_weight(c, [1, 0]), ext)


def test_lie_bracket_domain():
    tb = tables_for("A", 1, (1,))
    e0 = tb.basis1[0]
    with pytest.raises(DomainError):
        superlocal.lie_bracket(tb, {e0: 1}, {e0: 1})
    assert superlocal.lie_pair(tb, {e0: 1}, {tb.basism[0]: 1}) == 1
