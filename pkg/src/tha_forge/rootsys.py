"""Finite root systems, weights, and the extended Cartan matrix B.

Conventions: Bourbaki numbering, Cartan matrix ``A[i][j] = alpha_j(h_i)``,
roots stored as integer coordinate tuples in the simple-root basis.  Indices
are 0-based internally; reports and labels use the usual 1-based numbering.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg
from .errors import ConfigurationError, InvalidNormalisationError, SingularBError

FINITE_TYPES = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}


def cartan_matrix(type_label, rank):
    t = type_label.upper()
    if t not in FINITE_TYPES or rank < FINITE_TYPES[t]:
        raise ConfigurationError(f"invalid finite type {type_label}{rank}")
    if t == "E" and rank not in (6, 7, 8):
        raise ConfigurationError(f"invalid finite type E{rank}")
    if t == "F" and rank != 4:
        raise ConfigurationError(f"invalid finite type F{rank}")
    if t == "G" and rank != 2:
        raise ConfigurationError(f"invalid finite type G{rank}")

    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if t in "ABC":
        for i in range(rank - 1):
            link(i, i + 1)
        if t == "B":
            link(rank - 2, rank - 1, -1, -2)
        elif t == "C":
            link(rank - 2, rank - 1, -2, -1)
    elif t == "D":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif t == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, rank - 1):
            link(i, i + 1)
    elif t == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif t == "G":
        link(0, 1, -3, -1)
    return a


def symmetriser(a):
    """Positive rationals d with d_i A_ij = d_j A_ji (smallest entry 1).

    Raises ConfigurationError if A is not symmetrisable.
    """
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or a[i][j] == 0:
                    continue
                if a[j][i] == 0:
                    raise ConfigurationError("Cartan matrix has A_ij != 0 but A_ji == 0")
                dj = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise ConfigurationError("Cartan matrix is not symmetrisable")
    m = min(d)
    return [x / m for x in d]


def reflect(root, i, a):
    # s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
    pairing = sum(root[j] * a[i][j] for j in range(len(root)))
    if not pairing:
        return root
    out = list(root)
    out[i] -= pairing
    return tuple(out)


def height(root):
    return sum(root)


def root_order_key(root):
    """Deterministic order: by height, then lexicographic."""
    return (height(root), tuple(root))


@dataclass(frozen=True)
class CartanData:
    label: str
    rank: int
    matrix: tuple
    d: tuple                 # symmetriser, d_i A_ij symmetric
    roots: frozenset
    positive: tuple          # sorted by height then lex
    theta: tuple
    coxeter: tuple           # c_k, the coordinates of theta

    @property
    def dim(self):
        return self.rank + 2 * len(self.positive)

    def is_root(self, beta):
        return tuple(beta) in self.roots

    @property
    def finite(self):
        return self.roots is not None

    @property
    def simply_laced(self):
        return all(x == self.d[0] for x in self.d)


def cartan_from_matrix(a, label=None, max_roots=100000, allow_infinite=False):
    """Cartan data from an integer matrix.

    With ``allow_infinite`` a matrix whose reflection closure does not stop
    is kept as B-level data only: ``roots`` is None and so are theta and the
    Coxeter labels.
    """
    a = [list(map(int, row)) for row in a]
    r = len(a)
    if r == 0 or any(len(row) != r for row in a):
        raise ConfigurationError("Cartan matrix must be square and nonempty")
    for i in range(r):
        if a[i][i] != 2:
            raise ConfigurationError("Cartan matrix needs A_ii = 2")
        for j in range(r):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                raise ConfigurationError("invalid off-diagonal Cartan entries")
    d = symmetriser(a)
    if linalg.det(a) == 0:
        raise ConfigurationError("Cartan matrix is not invertible")

    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                g = reflect(beta, i, a)
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        if len(seen) > max_roots:
            if allow_infinite:
                return CartanData(label=label or f"matrix{r}", rank=r, matrix=tuple(map(tuple, a)),
                                  d=tuple(d), roots=None, positive=(), theta=None, coxeter=None)
            raise ConfigurationError("reflection closure does not terminate: not of finite type")
        frontier = nxt
    roots = frozenset(seen) | frozenset(tuple(-x for x in b) for b in seen)
    positive = tuple(sorted((b for b in roots if all(x >= 0 for x in b)), key=root_order_key))
    top = max(height(b) for b in positive)
    highest = [b for b in positive if height(b) == top]
    if len(highest) != 1:
        raise ConfigurationError("no unique highest root: Cartan matrix is decomposable")
    theta = highest[0]
    return CartanData(label=label or f"matrix{r}", rank=r, matrix=tuple(map(tuple, a)),
                      d=tuple(d), roots=roots, positive=positive, theta=theta,
                      coxeter=tuple(theta))


def build_cartan(type_label, rank):
    """Cartan data of the finite type ``type_label`` of rank ``rank``."""
    a = cartan_matrix(type_label, rank)
    return cartan_from_matrix(a, label=f"{type_label.upper()}{rank}")


# -- weights and normalisation -----------------------------------------------

def parse_kappa(cartan, kappa, lam=None):
    """Turn a kappa description into r positive Fractions.

    ``"symmetric"`` sets every kappa(e_k,f_k) = 1 (simply laced only);
    ``"auto"`` takes kappa proportional to 1/d, equal to 1 at the first node
    where ``lam`` is nonzero; a sequence is taken literally.
    """
    r = cartan.rank
    if isinstance(kappa, str):
        if kappa == "symmetric":
            out = [Fraction(1)] * r
        elif kappa == "auto":
            k0 = next((i for i, x in enumerate(lam or []) if x), 0)
            out = [cartan.d[k0] / cartan.d[i] for i in range(r)]
        else:
            raise ConfigurationError(f"unknown kappa mode {kappa!r}")
    else:
        out = [Fraction(x) for x in kappa]
        if len(out) != r:
            raise ConfigurationError(f"kappa needs {r} entries, got {len(out)}")
    if any(x <= 0 for x in out):
        raise ConfigurationError("kappa entries must be positive")
    check_kappa(cartan, out)
    return tuple(out)


def check_kappa(cartan, kappa):
    a = cartan.matrix
    r = cartan.rank
    for i in range(r):
        for j in range(i + 1, r):
            if Fraction(a[i][j]) / kappa[i] != Fraction(a[j][i]) / kappa[j]:
                raise InvalidNormalisationError(
                    f"kappa ratios inconsistent with symmetrisability at nodes {i + 1},{j + 1}")


def kappa_normalised_at(cartan, k):
    """kappa proportional to 1/d with kappa_k = 1 (k is 0-based)."""
    return tuple(cartan.d[k] / cartan.d[i] for i in range(cartan.rank))


@dataclass(frozen=True)
class WeightData:
    labels: tuple            # Dynkin labels lambda_k of lambda
    kappa: tuple             # kappa(e_k, f_k)

    def __post_init__(self):
        if any(int(x) != x or x < 0 for x in self.labels):
            raise ConfigurationError("Dynkin labels must be non-negative integers")
        if not any(self.labels):
            raise ConfigurationError("Dynkin labels must not all be zero")
        if len(self.labels) != len(self.kappa):
            raise ConfigurationError("labels and kappa have different lengths")

    @property
    def hat(self):
        """Dynkin labels of lambda^: lambda_k / kappa(e_k, f_k)."""
        return tuple(Fraction(l) / k for l, k in zip(self.labels, self.kappa))


def make_weight(cartan, labels, kappa="symmetric"):
    labels = tuple(int(x) for x in labels)
    if len(labels) != cartan.rank:
        raise ConfigurationError(f"lambda needs {cartan.rank} labels, got {len(labels)}")
    return WeightData(labels, parse_kappa(cartan, kappa, labels))


@dataclass(frozen=True)
class WeightForm:
    """The symmetric form on h* fixed by kappa: (alpha_i, alpha_j) = A_ij / kappa_i."""

    roots: tuple             # Gram matrix of simple roots
    fundamental: tuple       # row k: Lambda_k in the simple-root basis
    kappa: tuple

    def inner(self, mu, nu):
        """(mu, nu) for mu, nu given in the simple-root basis."""
        g = self.roots
        return sum((Fraction(mu[i]) * g[i][j] * nu[j] for i in range(len(mu))
                    for j in range(len(nu)) if mu[i] and nu[j]), Fraction(0))

    def weight(self, labels):
        """Simple-root coordinates of the weight with the given Dynkin labels."""
        r = len(labels)
        return tuple(sum((Fraction(labels[i]) * self.fundamental[i][j] for i in range(r)),
                         Fraction(0)) for j in range(r))

    def dynkin_labels(self, mu):
        """(mu, alpha_k^vee) with alpha_k^vee = kappa_k alpha_k."""
        r = len(mu)
        return tuple(self.kappa[k] * self.inner(mu, [int(i == k) for i in range(r)])
                     for k in range(r))


def weight_form(cartan, kappa):
    kappa = tuple(Fraction(x) for x in kappa)
    check_kappa(cartan, kappa)
    r = cartan.rank
    a = cartan.matrix
    gram = [[Fraction(a[i][j]) / kappa[i] for j in range(r)] for i in range(r)]
    ginv = linalg.inverse(gram)
    # (Lambda_i, alpha_j) = delta_ij / kappa_j  =>  M = diag(1/kappa) G^{-1}
    fund = [[ginv[i][j] / kappa[i] for j in range(r)] for i in range(r)]
    return WeightForm(roots=tuple(map(tuple, gram)), fundamental=tuple(map(tuple, fund)),
                      kappa=kappa)


def lambda_theta(cartan, weight):
    if not cartan.finite:
        return None
    form = weight_form(cartan, weight.kappa)
    return form.inner(form.weight(weight.labels), cartan.theta)


@dataclass(frozen=True)
class Verdict:
    pseudo_minuscule: bool
    lambda_theta: Fraction
    hat_labels: tuple
    hat_dominant_integral: bool
    index: Optional[int]     # 1-based k with lambda^ = Lambda_k, when true

    def __bool__(self):
        return self.pseudo_minuscule

    def as_dict(self):
        return {"pseudo_minuscule": self.pseudo_minuscule, "lambda_theta": self.lambda_theta,
                "hat_labels": list(self.hat_labels),
                "hat_dominant_integral": self.hat_dominant_integral, "index": self.index}


def is_pseudo_minuscule(cartan, weight):
    hat = weight.hat
    integral = all(x.denominator == 1 and x >= 0 for x in hat)
    lt = lambda_theta(cartan, weight)
    index = None
    if integral:
        nz = [k for k, x in enumerate(hat) if x]
        if cartan.finite and len(nz) == 1 and hat[nz[0]] == 1 and cartan.coxeter[nz[0]] == 1:
            index = nz[0] + 1
    return Verdict(pseudo_minuscule=index is not None, lambda_theta=lt, hat_labels=hat,
                   hat_dominant_integral=integral, index=index)


def pseudo_minuscule_nodes(cartan):
    """1-based k such that Lambda_k is pseudo-minuscule (lambda = Lambda_k, kappa_k = 1)."""
    out = []
    for k in range(cartan.rank):
        labels = tuple(int(i == k) for i in range(cartan.rank))
        w = WeightData(labels, kappa_normalised_at(cartan, k))
        if is_pseudo_minuscule(cartan, w):
            out.append(k + 1)
    return out


def weyl_orbit(cartan, labels):
    """Weyl orbit of a weight given by (integral) Dynkin labels, as label tuples."""
    a = cartan.matrix
    r = cartan.rank
    start = tuple(labels)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(r):
                if not mu[i]:
                    continue
                # s_i(mu) = mu - mu_i alpha_i; alpha_i has Dynkin labels A[*][i]
                nu = tuple(mu[j] - mu[i] * a[j][i] for j in range(r))
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return seen


# -- the extended matrix B ---------------------------------------------------

@dataclass(frozen=True)
class ExtendedMatrix:
    B: tuple
    det: Fraction
    det_A: Fraction
    inverse: Optional[tuple]
    epsilon: tuple           # <e_K|f_K>: 1 for K = 0, then kappa
    singular: bool = False

    @property
    def order(self):
        return len(self.B)

    @property
    def Binv(self):
        if self.singular:
            raise SingularBError("B is singular; no inverse")
        return self.inverse

    @property
    def Lcoef(self):
        """Row 0 of B^{-1}: L = sum_I (B^{-1})_{0I} h_I."""
        return self.Binv[0]

    def h_form(self, i, j):
        """<h_I | h_J> = B_IJ <e_J | f_J>."""
        return self.B[i][j] * self.epsilon[j]


def build_B(cartan, weight):
    """B_00 = 0, B_i0 = -lambda_i, B_0j = -lambda^_j, B_ij = A_ij."""
    r = cartan.rank
    hat = weight.hat
    B = [[Fraction(0)] * (r + 1) for _ in range(r + 1)]
    for i in range(r):
        B[i + 1][0] = Fraction(-weight.labels[i])
        B[0][i + 1] = -hat[i]
        for j in range(r):
            B[i + 1][j + 1] = Fraction(cartan.matrix[i][j])
    dB = linalg.det(B)
    dA = linalg.det(cartan.matrix)
    inv = None if dB == 0 else tuple(map(tuple, linalg.inverse(B)))
    return ExtendedMatrix(B=tuple(map(tuple, B)), det=dB, det_A=dA, inverse=inv,
                          epsilon=(Fraction(1),) + tuple(weight.kappa), singular=dB == 0)


def L_norm(ext):
    """<L|L> computed from the form on the Cartan subalgebra."""
    c = ext.Lcoef
    n = ext.order
    return sum((c[i] * c[j] * ext.h_form(i, j) for i in range(n) for j in range(n)),
               Fraction(0))


def check_L_identities(ext, form, weight):
    """Exact checks of the identities satisfied by the grading element L.

    Returns a dict with one entry per identity and an overall ``holds``.
    """
    binv = ext.Binv
    r = ext.order - 1
    lam = form.weight(weight.labels)
    lam_sq = form.inner(lam, lam)
    LL = L_norm(ext)
    b00 = binv[0][0]
    recon = tuple(binv[j + 1][0] / b00 for j in range(r))
    recon_labels = form.dynkin_labels(recon)
    checks = [
        ("<L|L> = (B^-1)_00", LL, b00),
        ("(B^-1)_00 = det A / det B", b00, ext.det_A / ext.det),
        ("(B^-1)_00 = -1/(lambda,lambda)", b00, -1 / lam_sq),
        ("sum_j (B^-1)_j0/(B^-1)_00 alpha_j has Dynkin labels lambda",
         list(recon_labels), [Fraction(x) for x in weight.labels]),
    ]
    items = [{"name": n, "lhs": lhs, "rhs": rhs, "holds": lhs == rhs} for n, lhs, rhs in checks]
    return {"identities": items, "holds": all(i["holds"] for i in items),
            "L_norm": LL, "lambda_norm": lam_sq}


def extended_symmetriser(ext):
    """1/<e_I|f_I>: D B is symmetric with D = diag of these."""
    return tuple(1 / e for e in ext.epsilon)


def alpha0_pairing(ext, mu):
    """(alpha_0^vee, mu) for mu in the span of alpha_1..alpha_r (simple-root coords)."""
    return sum((ext.B[0][i + 1] * mu[i] for i in range(len(mu))), Fraction(0))
