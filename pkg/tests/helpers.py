"""Independent oracles used across the tests."""
from fractions import Fraction
from itertools import product as iproduct

from tha_forge import rootsys


def mat_zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def unit(n, i, j):
    m = mat_zero(n)
    m[i][j] = Fraction(1)
    return m


def mmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]), Fraction(0))
             for j in range(n)] for i in range(n)]


def madd(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mscale(a, s):
    return [[s * x for x in r] for r in a]


def comm(a, b):
    return madd(mmul(a, b), mmul(b, a), -1)


def gl_model(keys, bracket, seeds):
    """Extend a representation given on generators to every key.

    ``seeds`` maps some keys to matrices; ``bracket(x, y)`` returns {key: c}.
    Each remaining key is reached as [s, y] for a seeded-or-built s and y.
    """
    rep = dict(seeds)
    todo = [k for k in keys if k not in rep]
    while todo:
        progress = False
        for k in list(todo):
            for s in list(seeds):
                for y in list(rep):
                    v = bracket(s, y)
                    if set(v) == {k}:
                        rep[k] = mscale(comm(rep[s], rep[y]), 1 / v[k])
                        break
                if k in rep:
                    break
            if k in rep:
                todo.remove(k)
                progress = True
        if not progress:
            raise RuntimeError(f"cannot reach {todo}")
    return rep


def homomorphism_defects(keys, bracket, rep):
    bad = []
    for x, y in iproduct(keys, keys):
        lhs = mat_zero(len(rep[x]))
        for k, c in bracket(x, y).items():
            lhs = madd(lhs, rep[k], c)
        if lhs != comm(rep[x], rep[y]):
            bad.append((x, y))
    return bad


def weyl_dimension(cartan, labels):
    """Weyl dimension formula, using the kappa-independent ratio form."""
    form = rootsys.weight_form(cartan, rootsys.kappa_normalised_at(cartan, 0))
    mu = form.weight(labels)
    rho = form.weight([1] * cartan.rank)
    out = Fraction(1)
    for a in cartan.positive:
        out *= form.inner([x + y for x, y in zip(mu, rho)], a) / form.inner(rho, a)
    return out


def a2_degree0_rep(tb):
    """gl(3) matrices for the degree-0 part of the (A2, Lambda_1) tables."""
    seeds = {}
    for k in (1, 2):
        seeds[tb.basis0[tb.e(k)]] = unit(3, k - 1, k)
        seeds[tb.basis0[tb.f(k)]] = unit(3, k, k - 1)
        seeds[tb.basis0[k]] = madd(unit(3, k - 1, k - 1), unit(3, k, k), -1)
    B = tb.ext.B
    d = [Fraction(0), -B[0][1], -B[0][1] - B[0][2]]
    h0 = mat_zero(3)
    for i in range(3):
        h0[i][i] = d[i]
    seeds[tb.basis0[0]] = h0
    return gl_model(tb.basis0, tb.lie.bracket_keys, seeds)
