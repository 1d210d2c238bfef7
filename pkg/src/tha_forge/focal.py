"""The focally associative local algebra built on U(B_0), and its commutator algebra.

Elements live in three graded pieces:

    degree 0:   U(B_0), PBW monomials = non-decreasing tuples of B_0 indices
    degree +-1: B_+-1 (x) U(B_0), pairs (module index, monomial)

Internally an element is one sparse dict keyed by ``(degree, index, monomial)``
with ``index == -1`` at degree 0.  ``LocalElement`` wraps that dict.

The product is defined by the cross products of B_-1 and B_1 (landing in
K + B_0), the base rule x (y (x) v) = (x y) v, and the recursion that peels the
last factor of the left tensor's monomial, so that

    (x (x) z_1...z_m)(y (x) v) = x . (z_1 . ( ... (z_m . (y (x) v))))

where z . (y (x) v) = [[z, y]] (x) v + y (x) z v.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .linalg import vadd

ZERO = -1   # module index placeholder at degree 0


@dataclass(frozen=True)
class ProductConstants:
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    c: Fraction = Fraction(1)

    @classmethod
    def parse(cls, text):
        if text is None:
            return cls()
        if isinstance(text, str):
            parts = [p for p in text.replace(" ", "").split(",") if p]
        else:
            parts = list(text)
        if len(parts) != 3:
            raise ValueError("constants are given as a,b,c")
        return cls(*(Fraction(p) for p in parts))

    def as_tuple(self):
        return (self.a, self.b, self.c)


# -- elements ---------------------------------------------------------------

def _mono_str(names, mono):
    if not mono:
        return "1"
    out = []
    for k, grp in itertools.groupby(mono):
        n = len(list(grp))
        out.append(names[k] + (f"^{n}" if n > 1 else ""))
    return "*".join(out)


class LocalElement:
    """Element of the local algebra: sparse map (degree, index, monomial) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def scalar(cls, c=1):
        return cls({(0, ZERO, ()): Fraction(c)})

    @classmethod
    def env(cls, vec):
        """From {monomial: coef}."""
        return cls({(0, ZERO, tuple(m)): c for m, c in vec.items()})

    @classmethod
    def tensor(cls, degree, vec):
        """From {(index, monomial): coef} at degree +-1."""
        return cls({(degree, i, tuple(m)): c for (i, m), c in vec.items()})

    @classmethod
    def basis(cls, degree, index, mono=()):
        return cls({(degree, ZERO if degree == 0 else index, tuple(mono)): Fraction(1)})

    # linear structure
    def __add__(self, other):
        out = dict(self.terms)
        vadd(out, other.terms)
        return LocalElement(out)

    def __sub__(self, other):
        out = dict(self.terms)
        vadd(out, other.terms, -1)
        return LocalElement(out)

    def __neg__(self):
        return LocalElement({k: -c for k, c in self.terms.items()})

    def scale(self, s):
        return LocalElement({k: c * s for k, c in self.terms.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        return isinstance(other, LocalElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({k[0] for k in self.terms})

    def component(self, degree):
        """Degree 0: {monomial: c}; degree +-1: {(index, monomial): c}."""
        if degree == 0:
            return {k[2]: c for k, c in self.terms.items() if k[0] == 0}
        return {(k[1], k[2]): c for k, c in self.terms.items() if k[0] == degree}

    def part(self, degree):
        return LocalElement({k: c for k, c in self.terms.items() if k[0] == degree})

    def filtration(self):
        return max((len(k[2]) for k in self.terms), default=0)

    def parity(self):
        ps = {k[0] % 2 for k in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0

    def render(self, tables):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            d, i, m = k
            c = self.terms[k]
            if d == 0:
                body = _mono_str(tables.names[0], m)
            else:
                body = tables.names[d][i] + ("" if not m else "(x)" + _mono_str(tables.names[0], m))
            bits.append(f"{c}*{body}")
        return " + ".join(bits)

    def __repr__(self):
        return f"LocalElement({self.terms!r})"


# -- the product engine -------------------------------------------------------

class FocalAlgebra:
    """Products on the local algebra attached to ``LocalTables``.

    All caches are keyed on basis data only, so they behave as if absent.
    """

    def __init__(self, tables, constants=None):
        self.t = tables
        self.k = constants or ProductConstants()
        self.n0 = tables.n0
        # structure constants of B_0 as lists of sparse rows
        self._br00 = {}
        self._mg = {}       # (monomial, generator) -> {monomial: c}
        self._mm = {}       # (monomial, monomial) -> {monomial: c}
        self._act = {}      # (degree, monomial, index) -> {(index, monomial): c}
        self._peel = {}     # (dx, ix, monomial, iy) -> {monomial: c}
        self._cross = {}
        self._basis = {}
        self.Lvec = {(i,): c for i, c in tables.L.items()}

    # -- U(B_0) ----------------------------------------------------------------

    def br0(self, i, j):
        hit = self._br00.get((i, j))
        if hit is None:
            hit = self.t.bracket(0, i, 0, j)[1]
            self._br00[(i, j)] = hit
        return hit

    def mono_gen(self, m, j):
        """PBW normal form of monomial * generator."""
        if not m or m[-1] <= j:
            return {m + (j,): 1}
        key = (m, j)
        hit = self._mg.get(key)
        if hit is not None:
            return hit
        head, k = m[:-1], m[-1]
        # head b_k b_j = (head b_j) b_k + head [b_k, b_j]
        out = {}
        for m1, c1 in self.mono_gen(head, j).items():
            vadd(out, self.mono_gen(m1, k), c1)
        for l, c in self.br0(k, j).items():
            vadd(out, self.mono_gen(head, l), c)
        self._mg[key] = out
        return out

    def mono_mono(self, u, v):
        if not v:
            return {u: 1}
        if not u:
            return {v: 1}
        key = (u, v)
        hit = self._mm.get(key)
        if hit is not None:
            return hit
        if len(v) == 1:
            out = self.mono_gen(u, v[0])
        else:
            out = {}
            for m, c in self.mono_mono(u, v[:-1]).items():
                vadd(out, self.mono_gen(m, v[-1]), c)
        self._mm[key] = out
        return out

    def pbw_product(self, u, v):
        """Product of EnvElements given as {monomial: coef}."""
        out = {}
        for mu, a in u.items():
            for mv, c in v.items():
                vadd(out, self.mono_mono(mu, mv), a * c)
        return out

    def normal_form(self, word):
        """PBW normal form of an arbitrary word of B_0 indices."""
        out = {(): 1}
        for j in word:
            nxt = {}
            for m, c in out.items():
                vadd(nxt, self.mono_gen(m, j), c)
            out = nxt
        return out

    # -- B_+-1 (x) U -----------------------------------------------------------

    def cross_base(self, dx, x, y):
        """x y for x in B_dx, y in B_-dx, as {monomial: coef} in K + B_0."""
        key = (dx, x, y)
        hit = self._cross.get(key)
        if hit is not None:
            return hit
        if dx not in (1, -1):
            raise DomainError("cross products are between degrees -1 and 1")
        a, b, c = self.k.as_tuple()
        _, br = self.t.bracket(dx, x, -dx, y)
        pr = self.t.pair(dx, x, -dx, y)
        out = {}
        sa = a if dx == 1 else -a
        for i, v in br.items():
            vadd(out, {(i,): v}, sa)
        if pr:
            vadd(out, self.Lvec, b * pr)
            if dx == 1 and c:
                vadd(out, {(): 1}, c * pr)
        self._cross[key] = out
        return out

    def left_act_gen(self, z, d, vec):
        """z . t for a B_0 index z and t = {(index, monomial): coef} at degree d."""
        out = {}
        for (y, m), c in vec.items():
            _, br = self.t.bracket(0, z, d, y)
            for y2, v in br.items():
                vadd(out, {(y2, m): v}, c)
            for m2, v in self.mono_mono((z,), m).items():
                vadd(out, {(y, m2): v}, c)
        return out

    def act(self, d, u, y):
        """u . (y (x) 1) for a monomial u; the last factor of u acts first."""
        if not u:
            return {(y, ()): 1}
        key = (d, u, y)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        out = self.left_act_gen(u[0], d, self.act(d, u[1:], y))
        self._act[key] = out
        return out

    def peel(self, dx, x, u, y):
        """(x (x) u)(y (x) 1) in U(B_0), for x in B_dx and y in B_-dx."""
        key = (dx, x, u, y)
        hit = self._peel.get(key)
        if hit is not None:
            return hit
        out = {}
        for (y2, m), c in self.act(-dx, u, y).items():
            for m1, c1 in self.cross_base(dx, x, y2).items():
                vadd(out, self.mono_mono(m1, m), c * c1)
        self._peel[key] = out
        return out

    # -- products of basis keys and of elements ----------------------------------

    def basis_product(self, kx, ky):
        key = (kx, ky)
        hit = self._basis.get(key)
        if hit is not None:
            return hit
        dx, ix, mx = kx
        dy, iy, my = ky
        if dx + dy not in (-1, 0, 1):
            raise DomainError(f"product undefined between degrees {dx} and {dy}")
        out = {}
        if dx == 0 and dy == 0:
            for m, c in self.mono_mono(mx, my).items():
                out[(0, ZERO, m)] = c
        elif dx == 0:
            for (y, m), c in self.act(dy, mx, iy).items():
                for m2, c2 in self.mono_mono(m, my).items():
                    vadd(out, {(dy, y, m2): c2}, c)
        elif dy == 0:
            for m, c in self.mono_mono(mx, my).items():
                out[(dx, ix, m)] = c
        else:
            for m, c in self.peel(dx, ix, mx, iy).items():
                for m2, c2 in self.mono_mono(m, my).items():
                    vadd(out, {(0, ZERO, m2): c2}, c)
        self._basis[key] = out
        return out

    def product(self, X, Y):
        out = {}
        for kx, a in X.terms.items():
            for ky, c in Y.terms.items():
                vadd(out, self.basis_product(kx, ky), a * c)
        return LocalElement(out)

    def commutator(self, X, Y):
        """Graded commutator, split over homogeneous components."""
        out = {}
        for kx, a in X.terms.items():
            for ky, c in Y.terms.items():
                vadd(out, self.basis_product(kx, ky), a * c)
                sign = -1 if (kx[0] % 2 and ky[0] % 2) else 1
                vadd(out, self.basis_product(ky, kx), -sign * a * c)
        return LocalElement(out)

    # -- convenience ------------------------------------------------------------

    def left_act(self, z, degree, t):
        """Public form of the degree-0 action: z a {B_0 index: coef} vector."""
        out = {}
        for zi, c in z.items():
            vadd(out, self.left_act_gen(zi, degree, t), c)
        return out

    def embed(self, degree, vec):
        """B^L element ({index: coef} at a degree) into the local algebra."""
        if degree == 0:
            return LocalElement({(0, ZERO, (i,)): c for i, c in vec.items()})
        return LocalElement({(degree, i, ()): c for i, c in vec.items()})

    def gen(self, name):
        """Basis element of B^L by name, e.g. 'e0', 'h1', 'f[1,1]'."""
        for d in (0, 1, -1):
            if name in self.t.names[d]:
                return self.embed(d, {self.t.names[d].index(name): 1})
        raise KeyError(name)

    @property
    def L(self):
        return LocalElement({(0, ZERO, m): c for m, c in self.Lvec.items()})

    def product_by_word(self, dx, x, word, dy, y, v=()):
        """(x (x) word)(y (x) v) with the recursion applied to an unsorted word.

        Used to check that the product does not depend on how the left
        monomial is factorised.
        """
        if not word:
            if dx == 0:
                out = {}
                for (y2, m), c in self.act(dy, (), y).items():
                    for m2, c2 in self.mono_mono(m, v).items():
                        vadd(out, {(dy, y2, m2): c2}, c)
                return LocalElement(out)
            out = {}
            for m, c in self.cross_base(dx, x, y).items():
                for m2, c2 in self.mono_mono(m, v).items():
                    vadd(out, {(0, ZERO, m2): c2}, c)
            return LocalElement(out)
        head, z = word[:-1], word[-1]
        total = LocalElement()
        _, br = self.t.bracket(0, z, dy, y)
        for y2, c in br.items():
            total = total + self.product_by_word(dx, x, head, dy, y2, v).scale(c)
        for m, c in self.mono_mono((z,), v).items():
            total = total + self.product_by_word(dx, x, head, dy, y, m).scale(c)
        return total

    def decompose(self, degree, vec):
        """Write y (x) v as a combination of u . (x (x) 1).

        Returns {(monomial, index): coef}; exact inverse of :meth:`recompose`.
        """
        rest = dict(vec)
        out = {}
        while rest:
            # leading term: longest monomial, then largest key
            (y, m) = max(rest, key=lambda k: (len(k[1]), k))
            c = rest[(y, m)]
            vadd(out, {(m, y): c})
            vadd(rest, self.act(degree, m, y), -c)
        return out

    def recompose(self, degree, decomposition):
        out = {}
        for (m, y), c in decomposition.items():
            vadd(out, self.act(degree, m, y), c)
        return out


def commutator(engine, X, Y):
    return engine.commutator(X, Y)


def product(engine, X, Y):
    return engine.product(X, Y)


# -- identity harnesses ---------------------------------------------------------

FOCAL_CONFIGS = [
    (0, 0, 0),
    (1, 0, 0), (-1, 0, 0),
    (0, 0, 1), (0, 0, -1),
    (0, 1, 0), (0, -1, 0),
    (0, 1, -1), (0, -1, 1),
    (1, -1, 0), (-1, 1, 0),
    (1, 0, -1), (-1, 0, 1),
]

EXTRA_CONFIGS = [(1, -1, 1), (-1, 1, -1)]

ANTISYM_CONFIGS = [(0, 0), (1, -1), (-1, 1)]
JACOBI_CONFIGS = [(0, 0, 0), (0, 0, 1), (0, 0, -1), (1, -1, 0), (-1, 1, 0)]


def monomials(n, k):
    return list(itertools.combinations_with_replacement(range(n), k))


def basis_keys(tables, degree, filtration):
    """All basis keys of the given degree with monomial length exactly ``filtration``."""
    monos = monomials(tables.n0, filtration)
    if degree == 0:
        return [(0, ZERO, m) for m in monos]
    dim = tables.n1
    return [(degree, i, m) for i in range(dim) for m in monos]


def basis_tuples(tables, degrees, cutoff):
    """Basis tuples of the given degrees with total filtration <= cutoff."""
    n = len(degrees)
    for total in range(cutoff + 1):
        for split in _compositions(total, n):
            pools = [basis_keys(tables, d, f) for d, f in zip(degrees, split)]
            yield from itertools.product(*pools)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class Sampler:
    """Seeded sparse random elements of a fixed degree."""

    def __init__(self, tables, seed, max_filtration=2, max_terms=3, max_coef=3):
        self.t = tables
        self.seed = int(seed)
        self.rng = np.random.default_rng(self.seed)
        self.max_filtration = max_filtration
        self.max_terms = max_terms
        self.max_coef = max_coef

    def element(self, degree):
        terms = {}
        for _ in range(int(self.rng.integers(1, self.max_terms + 1))):
            f = int(self.rng.integers(0, self.max_filtration + 1))
            m = tuple(sorted(int(x) for x in self.rng.integers(0, self.t.n0, size=f)))
            idx = ZERO if degree == 0 else int(self.rng.integers(0, self.t.n1))
            c = int(self.rng.integers(1, self.max_coef + 1)) * (1 if self.rng.random() < 0.5 else -1)
            vadd(terms, {(degree, idx, m): Fraction(c)})
        return LocalElement(terms)


def _key_element(k):
    return LocalElement({k: Fraction(1)})


def _witness(engine, parts, lhs, rhs):
    t = engine.t
    return {"args": [p.render(t) for p in parts], "lhs": lhs.render(t), "rhs": rhs.render(t)}


def _left_then(engine, first, k):
    """(sum c m) * k for a vector of keys and a basis key."""
    out = {}
    for m, c in first.items():
        vadd(out, engine.basis_product(m, k), c)
    return out


def _then_right(engine, k, second):
    out = {}
    for m, c in second.items():
        vadd(out, engine.basis_product(k, m), c)
    return out


def _assoc_keys(engine, ku, kv, kw):
    """Fast path on basis keys: True when (uv)w == u(vw)."""
    bp = engine.basis_product
    return _left_then(engine, bp(ku, kv), kw) == _then_right(engine, ku, bp(kv, kw))


def _assoc_violation(engine, u, v, w):
    lhs = engine.product(engine.product(u, v), w)
    rhs = engine.product(u, engine.product(v, w))
    return None if lhs == rhs else (lhs, rhs)


def _run_assoc(engine, configs, cutoff, samples, seed, stop_at_first=False):
    t = engine.t
    results = []
    sampler = Sampler(t, seed, max_filtration=max(1, cutoff - 1))
    for cfg in configs:
        checked = 0
        violations = 0
        witness = None
        for triple in basis_tuples(t, cfg, cutoff):
            checked += 1
            if _assoc_keys(engine, *triple):
                continue
            u, v, w = (_key_element(k) for k in triple)
            bad = _assoc_violation(engine, u, v, w)
            if bad:
                violations += 1
                if witness is None:
                    witness = _witness(engine, (u, v, w), *bad)
                    if stop_at_first:
                        break
        sampled = 0
        if not (stop_at_first and witness):
            for _ in range(samples):
                u, v, w = (sampler.element(d) for d in cfg)
                bad = _assoc_violation(engine, u, v, w)
                sampled += 1
                if bad:
                    violations += 1
                    if witness is None:
                        witness = _witness(engine, (u, v, w), *bad)
                        if stop_at_first:
                            break
        results.append({"config": list(cfg), "exhaustive": checked, "sampled": sampled,
                        "violations": violations, "witness": witness})
    return results


def check_focal(engine, cutoff=3, samples=1000, seed=0, configs=None):
    """All 13 focal identities, exhaustively up to total filtration ``cutoff`` plus samples.

    ``samples`` random triples are drawn per report (spread over the 13
    configurations round robin).  ``configs`` restricts the run to a subset
    without changing what each configuration does.
    """
    per = _spread(samples, len(FOCAL_CONFIGS))
    rows = []
    for cfg, s in zip(FOCAL_CONFIGS, per):
        if configs is not None and cfg not in configs:
            continue
        rows += _run_assoc(engine, [cfg], cutoff, s, _subseed(seed, cfg))
    total = sum(r["violations"] for r in rows)
    return {"suite": "focal", "cutoff": cutoff, "samples": samples, "seed": seed,
            "identities": rows, "violations": total, "passed": total == 0}


def check_assoc_extra(engine, cutoff=2, samples=200, seed=0):
    """The two remaining associativity identities; status only, never asserted."""
    per = _spread(samples, len(EXTRA_CONFIGS))
    rows = []
    for cfg, s in zip(EXTRA_CONFIGS, per):
        rows += _run_assoc(engine, [cfg], cutoff, s, _subseed(seed, cfg), stop_at_first=True)
    status = "holds" if all(r["violations"] == 0 for r in rows) else "violated"
    return {"suite": "assoc-status", "cutoff": cutoff, "samples": samples, "seed": seed,
            "identities": rows, "status": status, "informational": True}


def _spread(total, n):
    base, extra = divmod(int(total), n)
    return [base + (1 if i < extra else 0) for i in range(n)]


def _subseed(seed, cfg):
    # one independent stream per configuration, stable across runs
    return int(np.random.SeedSequence([int(seed)] + [c + 1 for c in cfg]).generate_state(1)[0])


def _sign(x, y):
    return -1 if (x.parity() and y.parity()) else 1


def _antisym_violation(engine, x, y):
    lhs = engine.commutator(x, y)
    rhs = engine.commutator(y, x).scale(-_sign(x, y))
    return None if lhs == rhs else (lhs, rhs)


def _comm_keys(engine, kx, ky):
    out = dict(engine.basis_product(kx, ky))
    sign = -1 if (kx[0] % 2 and ky[0] % 2) else 1
    vadd(out, engine.basis_product(ky, kx), -sign)
    return out


def _comm_vk(engine, vec, k, left=True):
    out = {}
    for m, c in vec.items():
        vadd(out, _comm_keys(engine, m, k) if left else _comm_keys(engine, k, m), c)
    return out


def _antisym_keys(engine, kx, ky):
    sign = -1 if (kx[0] % 2 and ky[0] % 2) else 1
    other = {m: -sign * c for m, c in _comm_keys(engine, ky, kx).items()}
    return _comm_keys(engine, kx, ky) == other


def _jacobi_keys(engine, kx, ky, kz):
    lhs = _comm_vk(engine, _comm_keys(engine, kx, ky), kz)
    rhs = _comm_vk(engine, _comm_keys(engine, ky, kz), kx, left=False)
    sign = -1 if (kx[0] % 2 and ky[0] % 2) else 1
    vadd(rhs, _comm_vk(engine, _comm_keys(engine, kx, kz), ky, left=False), -sign)
    return lhs == rhs


def _jacobi_violation(engine, x, y, z):
    # [[x,y],z] = [x,[y,z]] - (-1)^{xy} [y,[x,z]]
    br = engine.commutator
    lhs = br(br(x, y), z)
    rhs = br(x, br(y, z)) - br(y, br(x, z)).scale(_sign(x, y))
    return None if lhs == rhs else (lhs, rhs)


def check_local_lie(engine, cutoff=3, samples=1000, seed=0, configs=None):
    """Graded antisymmetry (3 cases) and Jacobi (5 cases) for the commutator algebra."""
    t = engine.t
    rows = []
    jobs = [("antisymmetry", cfg) for cfg in ANTISYM_CONFIGS] + \
           [("jacobi", cfg) for cfg in JACOBI_CONFIGS]
    per = _spread(samples, len(jobs))
    for (kind, cfg), s in zip(jobs, per):
        if configs is not None and (kind, cfg) not in configs:
            continue
        test = _antisym_violation if kind == "antisymmetry" else _jacobi_violation
        fast = _antisym_keys if kind == "antisymmetry" else _jacobi_keys
        sampler = Sampler(t, _subseed(seed, (7,) + cfg), max_filtration=max(1, cutoff - 1))
        checked = violations = 0
        witness = None
        for tup in basis_tuples(t, cfg, cutoff):
            checked += 1
            if fast(engine, *tup):
                continue
            els = [_key_element(k) for k in tup]
            bad = test(engine, *els)
            if bad:
                violations += 1
                witness = witness or _witness(engine, els, *bad)
        for _ in range(s):
            els = [sampler.element(d) for d in cfg]
            bad = test(engine, *els)
            if bad:
                violations += 1
                witness = witness or _witness(engine, els, *bad)
        rows.append({"identity": kind, "config": list(cfg), "exhaustive": checked,
                     "sampled": s, "violations": violations, "witness": witness})
    total = sum(r["violations"] for r in rows)
    return {"suite": "lie", "cutoff": cutoff, "samples": samples, "seed": seed,
            "identities": rows, "violations": total, "passed": total == 0}


def check_commutator(engine):
    """Commutators of B^L elements compared with the bracket of B^L and with the pairing.

    [x_0, y_0], [x_0, y_+-1], [x_+-1, y_0] must equal [[x, y]]; and
    [x_+-1, y_-+1] must equal +-<x|y> (with c = 1).
    """
    t = engine.t
    c = engine.k.c
    rows = []
    for dx, dy in ((0, 0), (0, 1), (0, -1), (1, 0), (-1, 0), (1, -1), (-1, 1)):
        checked = bad = 0
        witness = None
        for i in range(len(t.keys(dx))):
            for j in range(len(t.keys(dy))):
                x = engine.embed(dx, {i: 1})
                y = engine.embed(dy, {j: 1})
                got = engine.commutator(x, y)
                if dx + dy == 0 and dx != 0:
                    val = -c * t.pair(dx, i, dy, j) if dx == -1 else c * t.pair(dx, i, dy, j)
                    want = LocalElement.scalar(val) if val else LocalElement()
                else:
                    d, vec = t.bracket(dx, i, dy, j)
                    want = engine.embed(d, vec)
                checked += 1
                if got != want:
                    bad += 1
                    witness = witness or {"x": t.names[dx][i], "y": t.names[dy][j],
                                          "got": got.render(t), "want": want.render(t)}
        rows.append({"config": [dx, dy], "checked": checked, "violations": bad, "witness": witness})
    total = sum(r["violations"] for r in rows)
    return {"suite": "commutator", "cases": rows, "violations": total, "passed": total == 0}


def check_pbw(engine, max_degree=4):
    """Associativity of U(B_0) on all monomial triples of total length <= max_degree."""
    n = engine.n0
    checked = bad = 0
    witness = None
    for total in range(max_degree + 1):
        for split in _compositions(total, 3):
            for u, v, w in itertools.product(*(monomials(n, k) for k in split)):
                lhs = engine.pbw_product(engine.mono_mono(u, v), {w: 1})
                rhs = engine.pbw_product({u: 1}, engine.mono_mono(v, w))
                checked += 1
                if lhs != rhs:
                    bad += 1
                    witness = witness or {"u": u, "v": v, "w": w}
    return {"suite": "pbw", "max_degree": max_degree, "checked": checked,
            "violations": bad, "witness": witness, "passed": bad == 0}
