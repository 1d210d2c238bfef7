"""The local part of a contragredient Lie superalgebra.

A contragredient (super)algebra with Cartan matrix ``B`` is built root space
by root space.  A positive root space is spanned by the brackets
``[e_i, b]`` with ``b`` in a lower root space, modulo everything killed by all
``ad f_j`` (the radical of the contravariant pairing); the negative side is the
mirror image.  Each basis vector keeps the bracket it was built from, which is
all that is needed to evaluate arbitrary brackets recursively.

Keys.  Every basis vector of the local part is addressed by a key
``(root, k)``: ``root`` is a tuple of coefficients on alpha_0..alpha_r (all
>= 0 or all <= 0) and ``k`` indexes the basis of that root space.  Cartan
elements use the empty root: ``((), I)`` is ``h_I``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, SingularBError, UnsupportedError
from .linalg import Echelon, vadd

H = ()


def h_key(i):
    return (H, i)


def is_h(key):
    return key[0] == H


def _add_root(a, b, sign=1):
    return tuple(x + sign * y for x, y in zip(a, b))


def _neg(root):
    return tuple(-x for x in root)


class ContragredientBuilder:
    """Root spaces of the contragredient superalgebra of a Cartan matrix.

    ``odd`` is the set of odd simple indices.  ``bounds`` maps a simple index
    to the largest coefficient kept on it (0 keeps it out entirely); the
    construction is truncated there, which is what makes the local part of an
    otherwise infinite-dimensional algebra finite.
    """

    def __init__(self, B, odd=(), bounds=None, max_height=200):
        self.B = [[Fraction(x) for x in row] for row in B]
        self.n = len(B)
        self.odd = frozenset(odd)
        self.bounds = dict(bounds or {})
        self.simple = [tuple(int(i == j) for j in range(self.n)) for i in range(self.n)]
        self.dims = {}           # root (positive or negative) -> dimension
        self.construction = {}   # key -> (i, sub_key or None, scale)
        self.f_image = {}        # positive key -> {j: vector}
        self.e_action = {}       # positive key -> {i: vector}
        self.e_image = {}        # negative key -> {j: vector}
        self.f_action = {}       # negative key -> {i: vector}
        self._build(max_height)

    # -- weights and parities ------------------------------------------------

    def weight(self, root, i):
        """Eigenvalue of h_i on the root space ``root``."""
        if root == H:
            return 0
        return sum((self.B[i][j] * root[j] for j in range(self.n) if root[j]), Fraction(0))

    def parity(self, key):
        root = key[0]
        if root == H:
            return 0
        return sum(abs(root[i]) for i in self.odd) % 2

    def allowed(self, root):
        if all(x >= 0 for x in root):
            r = root
        elif all(x <= 0 for x in root):
            r = _neg(root)
        else:
            return False
        if not any(r):
            return False
        return all(r[i] <= b for i, b in self.bounds.items())

    def _sf(self, i):
        # [f_i, e_i] = s_i h_i
        return 1 if i in self.odd else -1

    # -- construction ----------------------------------------------------------

    def _p_string(self, gamma, i):
        p = 0
        while True:
            g = list(gamma)
            g[i] -= p + 1
            g = tuple(g)
            if any(x < 0 for x in g) or not any(g) or not self.dims.get(g):
                return p
            p += 1

    def _fimage_of(self, i, b):
        """f-image of [e_i, b] for a positive basis key b (as {(j, key): c})."""
        gamma = b[0]
        out = {}
        si = self._sf(i)
        pi = i in self.odd
        for j in range(self.n):
            comp = {}
            if j == i:
                c = si * self.weight(gamma, i)
                if c:
                    comp[b] = c
            fb = self.f_image[b].get(j)
            if fb:
                sign = -1 if (pi and j in self.odd) else 1
                vadd(comp, self._ad_e_on(i, fb), sign)
            for key, c in comp.items():
                out[(j, key)] = c
        return out

    def _eimage_of(self, i, b):
        """e-image of [f_i, b] for a negative basis key b."""
        gamma = b[0]
        out = {}
        pi = i in self.odd
        for j in range(self.n):
            comp = {}
            if j == i:
                c = self.weight(gamma, i)      # [h_i, b], gamma already negative
                if c:
                    comp[b] = c
            eb = self.e_image[b].get(j)
            if eb:
                sign = -1 if (pi and j in self.odd) else 1
                vadd(comp, self._ad_f_on(i, eb), sign)
            for key, c in comp.items():
                out[(j, key)] = c
        return out

    def _ad_e_on(self, i, vec):
        """ad e_i applied to a vector of already-built keys (h or positive)."""
        out = {}
        for key, c in vec.items():
            if is_h(key):
                # [e_i, h_J] = -B_Ji e_i
                w = self.B[key[1]][i]
                if w:
                    vadd(out, {(self.simple[i], 0): -w}, c)
            else:
                vadd(out, self.e_action[key].get(i, {}), c)
        return out

    def _ad_f_on(self, i, vec):
        out = {}
        for key, c in vec.items():
            if is_h(key):
                # [f_i, h_J] = B_Ji f_i
                w = self.B[key[1]][i]
                if w:
                    vadd(out, {(_neg(self.simple[i]), 0): w}, c)
            else:
                vadd(out, self.f_action[key].get(i, {}), c)
        return out

    def _build(self, max_height):
        n = self.n
        by_height = {1: []}
        for i in range(n):
            a = self.simple[i]
            if not self.allowed(a):
                continue
            by_height[1].append(a)
            self.dims[a] = 1
            self.dims[_neg(a)] = 1
            pk, nk = (a, 0), (_neg(a), 0)
            self.construction[pk] = (i, None, 1)
            self.construction[nk] = (i, None, 1)
            self.f_image[pk] = {i: {h_key(i): self._sf(i)}}
            self.e_image[nk] = {i: {h_key(i): 1}}
            self.e_action[pk] = {}
            self.f_action[nk] = {}
        height = 1
        while by_height.get(height):
            height += 1
            if height > max_height:
                raise UnsupportedError("root spaces do not terminate: not of finite type")
            candidates = {}
            for gamma in by_height[height - 1]:
                for i in range(n):
                    beta = list(gamma)
                    beta[i] += 1
                    beta = tuple(beta)
                    if self.allowed(beta):
                        candidates.setdefault(beta, None)
            built = []
            for beta in sorted(candidates):
                if self._build_positive(beta):
                    built.append(beta)
            for beta in built:
                self._build_negative(beta)
            # ad e_i / ad f_i into the new spaces from every lower space
            for beta in built:
                self._fill_actions(beta)
            by_height[height] = built
        self.heights = by_height

    def _order_i(self, beta):
        # module closure first: odd generators last, so a space reached by
        # an even e_i acting on an odd vector prefers that description
        return sorted(range(self.n), key=lambda i: (i in self.odd, i))

    def _build_positive(self, beta):
        ech = Echelon()
        basis = []
        for i in self._order_i(beta):
            gamma = list(beta)
            gamma[i] -= 1
            gamma = tuple(gamma)
            if any(x < 0 for x in gamma) or not self.dims.get(gamma):
                continue
            for kb in range(self.dims[gamma]):
                b = (gamma, kb)
                img = self._fimage_of(i, b)
                if ech.add(img):
                    even = not any(beta[j] for j in self.odd)
                    scale = Fraction(1, self._p_string(gamma, i) + 1) if even else Fraction(1)
                    basis.append((i, b, scale, img))
        if not basis:
            return False
        self.dims[beta] = len(basis)
        for k, (i, b, scale, img) in enumerate(basis):
            key = (beta, k)
            self.construction[key] = (i, b, scale)
            fi = {}
            for (j, sub), c in img.items():
                fi.setdefault(j, {})[sub] = c * scale
            self.f_image[key] = fi
            self.e_action[key] = {}
        self._pos_echelon = getattr(self, "_pos_echelon", {})
        self._pos_echelon[beta] = ech
        return True

    def _build_negative(self, beta):
        nbeta = _neg(beta)
        ech = Echelon()
        self.dims[nbeta] = self.dims[beta]
        for k in range(self.dims[beta]):
            i, b, scale = self.construction[(beta, k)]
            nb = (_neg(b[0]), b[1])
            even = not any(beta[j] for j in self.odd)
            # f_beta = -[f_i, f_gamma]/(p+1) on the even part mirrors -omega(e_beta)
            nscale = -scale if even else scale
            img = self._eimage_of(i, nb)
            if not ech.add(img):
                raise ArithmeticError(f"mirrored basis of root space {nbeta} is dependent")
            key = (nbeta, k)
            self.construction[key] = (i, nb, nscale)
            ei = {}
            for (j, sub), c in img.items():
                ei.setdefault(j, {})[sub] = c * nscale
            self.e_image[key] = ei
            self.f_action[key] = {}
        self._neg_echelon = getattr(self, "_neg_echelon", {})
        self._neg_echelon[nbeta] = ech

    def _fill_actions(self, beta):
        nbeta = _neg(beta)
        pech = self._pos_echelon[beta]
        nech = self._neg_echelon[nbeta]
        pscales = [self.construction[(beta, k)][2] for k in range(self.dims[beta])]
        nscales = [self.construction[(nbeta, k)][2] for k in range(self.dims[beta])]
        for i in range(self.n):
            gamma = list(beta)
            gamma[i] -= 1
            gamma = tuple(gamma)
            if any(x < 0 for x in gamma) or not self.dims.get(gamma):
                continue
            for kb in range(self.dims[gamma]):
                b = (gamma, kb)
                coords = pech.coordinates(self._fimage_of(i, b))
                # basis vector k = (inserted img k) * scale_k
                self.e_action[b][i] = {(beta, k): c / pscales[k] for k, c in coords.items()}
                nb = (_neg(gamma), kb)
                coords = nech.coordinates(self._eimage_of(i, nb))
                self.f_action[nb][i] = {(nbeta, k): c / nscales[k] for k, c in coords.items()}

    # -- queries ---------------------------------------------------------------

    def positive_roots(self):
        return sorted((r for r in self.dims if all(x >= 0 for x in r)),
                      key=lambda r: (sum(r), r))

    def keys_of(self, root):
        return [(root, k) for k in range(self.dims.get(root, 0))]


class LocalLie:
    """Bracket and invariant form on the keys of a :class:`ContragredientBuilder`.

    The form is fixed by ``<e_K|f_K> = epsilon[K]`` and invariance
    ``<[x,y]|z> = <x|[y,z]>``; on the Cartan subalgebra
    ``<h_I|h_J> = B_IJ epsilon_J``.
    """

    def __init__(self, builder, epsilon):
        self.b = builder
        self.eps = [Fraction(x) for x in epsilon]
        self._br = {}
        self._pair = {}

    def parity(self, key):
        return self.b.parity(key)

    def ad_e(self, i, key):
        b = self.b
        if is_h(key):
            w = b.B[key[1]][i]
            return {(b.simple[i], 0): -w} if w else {}
        root = key[0]
        if all(x >= 0 for x in root):
            beta = list(root)
            beta[i] += 1
            if not b.allowed(tuple(beta)):
                raise DomainError(f"[e_{i}, {key}] leaves the local part")
            return b.e_action[key].get(i, {})
        return b.e_image[key].get(i, {})

    def ad_f(self, i, key):
        b = self.b
        if is_h(key):
            w = b.B[key[1]][i]
            return {(_neg(b.simple[i]), 0): w} if w else {}
        root = key[0]
        if all(x <= 0 for x in root):
            beta = list(root)
            beta[i] -= 1
            if not b.allowed(tuple(beta)):
                raise DomainError(f"[f_{i}, {key}] leaves the local part")
            return b.f_action[key].get(i, {})
        return b.f_image[key].get(i, {})

    def bracket_keys(self, x, y):
        """[x, y] for basis keys, as a sparse vector over keys."""
        hit = self._br.get((x, y))
        if hit is not None:
            return hit
        b = self.b
        if is_h(x):
            w = b.weight(y[0], x[1])
            out = {y: w} if w else {}
        elif is_h(y):
            w = b.weight(x[0], y[1])
            out = {x: -w} if w else {}
        else:
            i, sub, scale = b.construction[x]
            positive = all(v >= 0 for v in x[0])
            ad = self.ad_e if positive else self.ad_f
            if sub is None:
                out = dict(ad(i, y))
            else:
                # [[g_i, s], y] = [g_i, [s, y]] - (-1)^{g_i s} [s, [g_i, y]]
                out = {}
                for k, c in self.bracket_keys(sub, y).items():
                    vadd(out, ad(i, k), c)
                sign = -1 if (i in b.odd and self.parity(sub)) else 1
                for k, c in ad(i, y).items():
                    vadd(out, self.bracket_keys(sub, k), -sign * c)
                if scale != 1:
                    out = {k: c * scale for k, c in out.items()}
        self._br[(x, y)] = out
        return out

    def bracket(self, u, v):
        """Bilinear bracket of sparse vectors over keys."""
        out = {}
        for x, a in u.items():
            for y, c in v.items():
                vadd(out, self.bracket_keys(x, y), a * c)
        return out

    def pair_keys(self, x, y):
        """<x|y> for basis keys."""
        hit = self._pair.get((x, y))
        if hit is not None:
            return hit
        b = self.b
        if is_h(x) or is_h(y):
            if is_h(x) and is_h(y):
                val = b.B[x[1]][y[1]] * self.eps[y[1]]
            else:
                val = Fraction(0)
        elif _neg(x[0]) != y[0]:
            val = Fraction(0)
        elif all(v >= 0 for v in x[0]):
            i, sub, scale = b.construction[x]
            fi = (_neg(b.simple[i]), 0)
            if sub is None:
                val = self.eps[i] if y == fi else Fraction(0)
            else:
                # <[e_i, s]|y> = <e_i|[s, y]>
                val = scale * self.bracket_keys(sub, y).get(fi, 0) * self.eps[i]
        else:
            sign = -1 if (self.parity(x) and self.parity(y)) else 1
            val = sign * self.pair_keys(y, x)
        self._pair[(x, y)] = val
        return val

    def pair(self, u, v):
        return sum((a * c * self.pair_keys(x, y) for x, a in u.items() for y, c in v.items()),
                   Fraction(0))


# -- the Lie algebra g on its own ----------------------------------------------

@dataclass
class LieTable:
    """Basis and bracket of a finite-dimensional Lie algebra g (Chevalley basis)."""

    keys: list
    names: list
    lie: LocalLie

    def index(self):
        return {k: i for i, k in enumerate(self.keys)}

    def bracket(self, i, j):
        idx = self.index()
        return {idx[k]: c for k, c in self.lie.bracket_keys(self.keys[i], self.keys[j]).items()}


def root_name(root, prefix):
    return prefix + "[" + ",".join(str(abs(x)) for x in root) + "]"


def key_name(key, multiplicity=1):
    root, k = key
    if root == H:
        return f"h{k}"
    nz = [i for i, x in enumerate(root) if x]
    pre = "e" if root[nz[0]] > 0 else "f"
    if len(nz) == 1 and abs(root[nz[0]]) == 1:
        name = f"{pre}{nz[0]}"
    else:
        name = root_name(root, pre)
    return name if multiplicity == 1 else f"{name}#{k}"


def chevalley_constants(cartan):
    """Chevalley basis of g: h_1..h_r, e_alpha, f_alpha (alpha > 0 by height)."""
    builder = ContragredientBuilder(cartan.matrix)
    lie = LocalLie(builder, [Fraction(1)] * cartan.rank)
    pos = builder.positive_roots()
    keys = [h_key(i) for i in range(cartan.rank)]
    keys += [(r, 0) for r in pos] + [(_neg(r), 0) for r in pos]
    return LieTable(keys=keys, names=[key_name(k) for k in keys], lie=lie)


# -- the local part of B -------------------------------------------------------

class LocalTables:
    """Bases, brackets, weights and invariant form of B^L = B_-1 + B_0 + B_1.

    Degree-0 basis (the PBW order): h_0..h_r, positive root vectors of g by
    height then lex, then the negative ones in the same order.  Degree +-1
    bases are ordered by the height of alpha - alpha_0 (resp. -alpha - ...).
    """

    def __init__(self, cartan, weight, ext):
        if ext.singular:
            raise SingularBError("B is singular: the local part is not defined")
        if not cartan.finite:
            raise UnsupportedError("the local part is only constructed for finite-type g")
        self.cartan = cartan
        self.weight = weight
        self.ext = ext
        r = cartan.rank
        self.rank = r
        self.builder = ContragredientBuilder(ext.B, odd={0}, bounds={0: 1})
        self.lie = LocalLie(self.builder, ext.epsilon)

        pos = self.builder.positive_roots()
        even = [b for b in pos if b[0] == 0]
        odd = [b for b in pos if b[0] == 1]
        if len(even) != len(cartan.positive):
            raise UnsupportedError("degree-0 part does not match the root system of g")
        self.basis0 = [h_key(i) for i in range(r + 1)]
        self.basis0 += [k for b in even for k in self.builder.keys_of(b)]
        self.basis0 += [k for b in even for k in self.builder.keys_of(_neg(b))]
        self.basis1 = [k for b in odd for k in self.builder.keys_of(b)]
        self.basism = [k for b in odd for k in self.builder.keys_of(_neg(b))]
        self.index = {0: {k: i for i, k in enumerate(self.basis0)},
                      1: {k: i for i, k in enumerate(self.basis1)},
                      -1: {k: i for i, k in enumerate(self.basism)}}
        self.n0, self.n1 = len(self.basis0), len(self.basis1)

        mult = {}
        for k in self.basis0 + self.basis1 + self.basism:
            mult[k[0]] = mult.get(k[0], 0) + 1
        self.names = {d: [key_name(k, mult[k[0]] if k[0] != H else 1) for k in keys]
                      for d, keys in ((0, self.basis0), (1, self.basis1), (-1, self.basism))}

        # L = sum_I (B^-1)_{0I} h_I
        self.L = {i: c for i, c in enumerate(ext.Lcoef) if c}
        self._cache = {}

    # -- basis bookkeeping ---------------------------------------------------

    def keys(self, degree):
        return {0: self.basis0, 1: self.basis1, -1: self.basism}[degree]

    def key(self, degree, i):
        return self.keys(degree)[i]

    def root(self, degree, i):
        return self.key(degree, i)[0]

    def e(self, k):
        """Index in B_0 (k >= 1) or B_1 (k = 0) of the Chevalley generator e_k."""
        key = (self.builder.simple[k], 0)
        return self.index[1 if k == 0 else 0][key]

    def f(self, k):
        key = (_neg(self.builder.simple[k]), 0)
        return self.index[-1 if k == 0 else 0][key]

    def h(self, k):
        return k

    def h_weight(self, degree, i, I):
        """Eigenvalue of h_I on basis element i of the given degree."""
        return self.builder.weight(self.root(degree, i), I)

    def alpha0_pairing(self, root):
        """(alpha_0^vee, alpha) = sum_J alpha_J B_0J for a root on alpha_0..alpha_r."""
        return sum((self.ext.B[0][j] * root[j] for j in range(self.rank + 1) if root[j]),
                   Fraction(0))

    # -- structure constants over degree indices --------------------------------

    def bracket(self, dx, i, dy, j):
        """[[x, y]] of basis elements, as (degree, {index: coef}).

        Defined when dx + dy is in {-1, 0, 1}.
        """
        d = dx + dy
        if d not in (-1, 0, 1):
            raise DomainError(f"bracket undefined between degrees {dx} and {dy}")
        ck = (dx, i, dy, j)
        hit = self._cache.get(ck)
        if hit is not None:
            return d, hit
        vec = self.lie.bracket_keys(self.key(dx, i), self.key(dy, j))
        idx = self.index[d]
        out = {idx[k]: c for k, c in vec.items()}
        self._cache[ck] = out
        return d, out

    def pair(self, dx, i, dy, j):
        """<x|y> for x, y at opposite nonzero degrees."""
        if {dx, dy} != {1, -1}:
            raise DomainError("the pairing is between degrees -1 and 1")
        return self.lie.pair_keys(self.key(dx, i), self.key(dy, j))

    def form0(self, i, j):
        """The invariant form restricted to B_0 (kappa on g, extended to h_0)."""
        return self.lie.pair_keys(self.basis0[i], self.basis0[j])

    def L_bracket(self, degree, i):
        """[[L, x]] = k x: returns the scalar k."""
        return sum((c * self.h_weight(degree, i, I) for I, c in self.L.items()), Fraction(0))

    def as_dict(self):
        """Structure tables in a serialisable form (rationals left as Fractions)."""
        out = {"rank": self.rank,
               "basis": {str(d): [{"name": self.names[d][i], "root": list(self.root(d, i))
                                   if self.root(d, i) != H else [], "index": i}
                                  for i in range(len(self.keys(d)))] for d in (-1, 0, 1)},
               "L": {str(i): c for i, c in self.L.items()},
               "brackets": [], "pairing": []}
        for dx, dy in ((0, 0), (0, 1), (0, -1), (1, -1)):
            for i in range(len(self.keys(dx))):
                for j in range(len(self.keys(dy))):
                    d, vec = self.bracket(dx, i, dy, j)
                    if vec:
                        out["brackets"].append({"x": [dx, i], "y": [dy, j], "degree": d,
                                                "value": {str(k): c for k, c in sorted(vec.items())}})
        for a in range(self.n1):
            for b in range(len(self.basism)):
                v = self.pair(1, a, -1, b)
                if v:
                    out["pairing"].append({"x": a, "y": b, "value": v})
        return out


def build_local_part(cartan, weight, ext):
    return LocalTables(cartan, weight, ext)


# -- elements of B^L as graded sparse vectors ---------------------------------

def degree_of_key(key):
    root = key[0]
    return 0 if root == H else root[0]


def lie_bracket(tables, x, y):
    """[[x, y]] for elements of B^L given as {key: coef} dicts.

    Raises DomainError for any nonzero pair at an undefined degree sum.
    """
    out = {}
    for kx, a in x.items():
        for ky, c in y.items():
            if degree_of_key(kx) + degree_of_key(ky) not in (-1, 0, 1):
                raise DomainError("bracket undefined: degree sum outside {-1, 0, 1}")
            vadd(out, tables.lie.bracket_keys(kx, ky), a * c)
    return out


def lie_pair(tables, x, y):
    for kx in x:
        for ky in y:
            if {degree_of_key(kx), degree_of_key(ky)} != {1, -1}:
                raise DomainError("pairing needs arguments at opposite nonzero degrees")
    return tables.lie.pair(x, y)


def prop41_scan(tables):
    """((alpha_0^vee, alpha) + 1) [[f_0, e_alpha]] for every e_alpha in B_1, alpha != alpha_0.

    Returns the list of nonzero results (empty iff the condition holds).
    """
    f0 = tables.f(0)
    alpha0 = tables.builder.simple[0]
    nonzero = []
    for a in range(tables.n1):
        root = tables.root(1, a)
        if root == alpha0:
            continue
        factor = tables.alpha0_pairing(root) + 1
        _, br = tables.bracket(-1, f0, 1, a)
        if factor and br:
            nonzero.append({"root": list(root), "element": tables.names[1][a],
                            "factor": factor,
                            "value": {tables.names[0][k]: factor * c for k, c in sorted(br.items())}})
    return {"nonzero": nonzero, "all_zero": not nonzero}
