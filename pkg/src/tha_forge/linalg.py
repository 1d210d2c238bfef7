"""Exact rational linear algebra.

Dense helpers for the small square matrices of the root-system layer, and an
incremental sparse echelon basis used everywhere a span has to be tested or
reduced (root-space quotients, subalgebra closures, ideal membership).

Coefficients are ``int`` or ``fractions.Fraction``; nothing here ever rounds.
"""

from fractions import Fraction


class SingularMatrixError(ValueError):
    pass


def as_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)]
            for i in range(n)]


def det(rows):
    """Determinant by fraction-exact Gaussian elimination."""
    m = as_fraction_matrix(rows)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        result *= p
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return sign * result


def inverse(rows):
    m = as_fraction_matrix(rows)
    n = len(m)
    aug = [row + ident for row, ident in zip(m, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve(rows, rhs):
    """Solve ``rows @ x = rhs`` for square nonsingular ``rows``."""
    inv = inverse(rows)
    return [sum((inv[i][j] * Fraction(rhs[j]) for j in range(len(rhs))), Fraction(0))
            for i in range(len(rhs))]


# -- sparse vectors -----------------------------------------------------------
# A sparse vector is a dict key -> nonzero coefficient.  Keys within one space
# must be mutually comparable (pivots are chosen as the smallest key).

def vadd(target, vec, scale=1):
    """target += scale * vec, in place; drops zeros."""
    if not scale:
        return target
    for k, c in vec.items():
        s = target.get(k, 0) + scale * c
        if s:
            target[k] = s
        else:
            target.pop(k, None)
    return target


def vscale(vec, scale):
    if not scale:
        return {}
    return {k: c * scale for k, c in vec.items()}


def vcombine(pairs):
    """Sum of scale * vec over (scale, vec) pairs."""
    out = {}
    for s, v in pairs:
        vadd(out, v, s)
    return out


class Echelon:
    """Incrementally built echelon basis of a subspace of sparse vectors.

    Every stored row remembers how it was formed from the vectors passed to
    :meth:`add`, so :meth:`coordinates` can express a member of the span in
    terms of the inserted vectors (the "basis" in insertion order).
    """

    def __init__(self):
        self.rows = {}        # pivot key -> (row, combo); row[pivot] == 1
        self.basis = []       # the independent vectors actually inserted

    def __len__(self):
        return len(self.basis)

    def reduce(self, vec, track=False):
        """Return the remainder of ``vec`` modulo the span (and the combo used).

        The remainder is fully reduced: it has no entry on any pivot.  With
        ``track`` the second value maps basis positions to coefficients such
        that ``vec = remainder + sum(c * basis[i])``.
        """
        v = dict(vec)
        combo = {} if track else None
        # rows are kept mutually reduced, so subtracting one never reintroduces
        # another pivot: a single pass suffices
        for piv in [k for k in v if k in self.rows]:
            c = v.get(piv)
            if not c:
                continue
            row, rc = self.rows[piv]
            vadd(v, row, -c)
            if track:
                vadd(combo, rc, c)
        return (v, combo) if track else v

    def add(self, vec):
        """Insert ``vec``; return True if it enlarged the span."""
        rem, combo = self.reduce(vec, track=True)
        if not rem:
            return False
        idx = len(self.basis)
        self.basis.append(dict(vec))
        piv = min(rem)
        p = rem[piv]
        inv = Fraction(1, 1) / p
        row = {k: c * inv for k, c in rem.items()}
        # rc expresses row in terms of inserted vectors: row = (vec - sum combo)/p
        rc = {idx: inv}
        vadd(rc, combo, -inv)
        # keep rows reduced against the new pivot
        for opiv, (orow, orc) in list(self.rows.items()):
            c = orow.get(piv)
            if c:
                vadd(orow, row, -c)
                vadd(orc, rc, -c)
        self.rows[piv] = (row, rc)
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    def coordinates(self, vec):
        """Coefficients of ``vec`` in the inserted basis; ValueError if outside."""
        rem, combo = self.reduce(vec, track=True)
        if rem:
            raise ValueError("vector not in span")
        return {i: c for i, c in combo.items() if c}


def rank(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(columns, dim):
    """Basis of {x in Q^dim : sum_i x_i * columns[i] = 0}.

    ``columns`` is a list of ``dim`` sparse vectors (images of the unit
    vectors).  Returns dense lists of Fractions.
    """
    e = Echelon()
    pos_to_col = []
    relations = []
    for i, col in enumerate(columns):
        rem, combo = e.reduce(col, track=True)
        if rem:
            e.add(col)
            pos_to_col.append(i)
        else:
            x = [Fraction(0)] * dim
            x[i] = Fraction(1)
            for pos, c in combo.items():
                x[pos_to_col[pos]] -= c
            relations.append(x)
    return relations
