"""Tensor hierarchy algebra W: presentation, generator map and the checks inside B^L-commutator.

Relation trees are nested tuples:

    ("gen", name)            a generator
    ("br", x, y)             [x, y]
    ("ad", x, n, y)          (ad x)^n y
    ("scale", c, x)          c x
    ("sum", (x, y, ...))     x + y + ...

With ``f0_k`` standing for f_{0k}.  A relation is lhs = rhs; its residue
under a generator map is value(lhs) - value(rhs).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import rootsys
from .errors import NotPeripheralError, PreconditionError
from .focal import LocalElement, ProductConstants
from .linalg import Echelon, kernel, vadd
from .superlocal import prop41_scan

ZERO_TREE = ("sum", ())


def gen(name):
    return ("gen", name)


def br(x, y):
    return ("br", x, y)


def ad(x, n, y):
    return ("ad", x, n, y)


def scale(c, x):
    return ("scale", Fraction(c), x)


def show(tree):
    kind = tree[0]
    if kind == "gen":
        return tree[1]
    if kind == "br":
        return f"[{show(tree[1])},{show(tree[2])}]"
    if kind == "ad":
        return f"(ad {show(tree[1])})^{tree[2]}({show(tree[3])})"
    if kind == "scale":
        return f"{tree[1]}*{show(tree[2])}"
    if not tree[1]:
        return "0"
    return " + ".join(show(t) for t in tree[1])


def tree_to_json(tree):
    kind = tree[0]
    if kind == "gen":
        return {"gen": tree[1]}
    if kind == "br":
        return {"br": [tree_to_json(tree[1]), tree_to_json(tree[2])]}
    if kind == "ad":
        return {"ad": tree_to_json(tree[1]), "power": tree[2], "of": tree_to_json(tree[3])}
    if kind == "scale":
        return {"scale": tree[1], "of": tree_to_json(tree[2])}
    return {"sum": [tree_to_json(t) for t in tree[1]]}


def tree_from_json(obj):
    if "gen" in obj:
        return gen(obj["gen"])
    if "br" in obj:
        return br(tree_from_json(obj["br"][0]), tree_from_json(obj["br"][1]))
    if "ad" in obj:
        return ad(tree_from_json(obj["ad"]), int(obj["power"]), tree_from_json(obj["of"]))
    if "scale" in obj:
        return scale(Fraction(obj["scale"]), tree_from_json(obj["of"]))
    return ("sum", tuple(tree_from_json(t) for t in obj["sum"]))


def evaluate(tree, values, bracket):
    """Value of a tree given generator values and a bracket function."""
    kind = tree[0]
    if kind == "gen":
        return values[tree[1]]
    if kind == "br":
        return bracket(evaluate(tree[1], values, bracket), evaluate(tree[2], values, bracket))
    if kind == "ad":
        x = evaluate(tree[1], values, bracket)
        y = evaluate(tree[3], values, bracket)
        for _ in range(tree[2]):
            y = bracket(x, y)
        return y
    if kind == "scale":
        return evaluate(tree[2], values, bracket).scale(tree[1])
    out = LocalElement()
    for t in tree[1]:
        out = out + evaluate(t, values, bracket)
    return out


# -- the presentation ------------------------------------------------------------

@dataclass
class Presentation:
    variant: str
    special: int                     # Bourbaki index of the node playing the role of "1"
    generators: list                 # dicts: name, degree, parity
    relations: list                  # dicts: group, schema, indices, lhs, rhs
    B: tuple = field(repr=False, default=())

    def names(self):
        return [g["name"] for g in self.generators]

    def group(self, name):
        return [r for r in self.relations if r["group"] == name]

    def as_dict(self):
        return {"variant": self.variant, "special_node": self.special,
                "generators": self.generators,
                "relations": [{"group": r["group"], "schema": r["schema"], "indices": r["indices"],
                               "text": f"{show(r['lhs'])} = {show(r['rhs'])}",
                               "lhs": tree_to_json(r["lhs"]), "rhs": tree_to_json(r["rhs"])}
                              for r in self.relations]}


def special_node(ext):
    """1-based k with -B_0j = delta_jk, or None."""
    row = [-x for x in ext.B[0][1:]]
    hits = [j for j, x in enumerate(row) if x == 1]
    if len(hits) == 1 and all(x == 0 for j, x in enumerate(row) if j != hits[0]):
        return hits[0] + 1
    return None


def _e(K):
    return gen(f"e{K}")


def _f(K):
    return gen(f"f{K}")


def _h(K):
    return gen(f"h{K}")


def _f0(k):
    return gen(f"f0_{k}")


def w_presentation(ext, special=None, variant="W"):
    """Generators M_W (or M_S) and the four relation groups, with concrete B entries.

    ``special`` is the node s with lambda^ = Lambda_s (detected from B when
    omitted); it plays the part of the index 1 in the relations.  Index
    ranges: I, J, K over 0..r; lower-case i, j, k over 0..r without s; f_K
    only for K != 0.  The Serre relations are kept only where they live in
    the local part (at most one e_0 / f_0 involved).  In the relation
    [e_i, [f_j, f_0K]] = delta_ij B_Kj f_0j, i = 0 is left out: there the
    left side is B_Kj f_j, never a multiple of f_0j.
    """
    ext.Binv  # raises on singular B
    B = ext.B
    n = len(B)
    s = special or special_node(ext) or 1
    if variant not in ("W", "S"):
        raise ValueError("variant is W or S")
    low = [0] + [j for j in range(1, n) if j != s]
    f0_idx = [k for k in low if not (variant == "S" and k == 0)]
    h_idx = [I for I in range(n) if not (variant == "S" and I == 0)]

    gens = []
    for K in range(n):
        gens.append({"name": f"e{K}", "degree": 1 if K == 0 else 0, "parity": 1 if K == 0 else 0})
    for K in range(1, n):
        gens.append({"name": f"f{K}", "degree": 0, "parity": 0})
    for I in h_idx:
        gens.append({"name": f"h{I}", "degree": 0, "parity": 0})
    for k in f0_idx:
        gens.append({"name": f"f0_{k}", "degree": -1, "parity": 1})

    rels = []

    def rel(group, schema, indices, lhs, rhs=ZERO_TREE):
        rels.append({"group": group, "schema": schema, "indices": indices, "lhs": lhs, "rhs": rhs})

    for I in h_idx:
        for J in range(n):
            rel("eigen", "[h_I,e_J]=B_IJ e_J", [I, J], br(_h(I), _e(J)), scale(B[I][J], _e(J)))
        for J in range(1, n):
            rel("eigen", "[h_I,f_J]=-B_IJ f_J", [I, J], br(_h(I), _f(J)), scale(-B[I][J], _f(J)))
    for I in range(n):
        for J in range(1, n):
            rhs = _h(J) if I == J else ZERO_TREE
            rel("eigen", "[e_I,f_J]=delta_IJ h_J", [I, J], br(_e(I), _f(J)), rhs)

    for I in range(n):
        for J in range(n):
            if I == J:
                continue
            power = int(1 - B[I][J])
            if B[I][J].denominator != 1 or power < 1:
                continue
            count = (power if I == 0 else 0) + (1 if J == 0 else 0)
            if count <= 1:
                rel("serre", "(ad e_I)^(1-B_IJ) e_J=0", [I, J], ad(_e(I), power, _e(J)))
            if I != 0 and J != 0:
                rel("serre", "(ad f_I)^(1-B_IJ) f_J=0", [I, J], ad(_f(I), power, _f(J)))

    for I in f0_idx:
        if I in h_idx:
            rel("f0K", "[e_0,f_0I]=h_I", [I], br(_e(0), _f0(I)), _h(I))
    for I in h_idx:
        for J in f0_idx:
            rel("f0K", "[h_I,f_0J]=-B_I0 f_0J", [I, J], br(_h(I), _f0(J)), scale(-B[I][0], _f0(J)))
    for i in low:
        if i == 0:
            continue
        for j in low:
            if j == 0:
                continue
            for K in f0_idx:
                if i == j and B[K][j] and j in f0_idx:
                    rhs = scale(B[K][j], _f0(j))
                elif i == j and B[K][j]:
                    continue
                else:
                    rhs = ZERO_TREE
                rel("f0K", "[e_i,[f_j,f_0K]]=delta_ij B_Kj f_0j", [i, j, K],
                    br(_e(i), br(_f(j), _f0(K))), rhs)

    for K in f0_idx:
        rel("ideal", "[e_1,f_0K]=0", [K], br(_e(s), _f0(K)))
        rel("ideal", "[f_1,[f_1,f_0K]]=0", [K], br(_f(s), br(_f(s), _f0(K))))

    return Presentation(variant=variant, special=s, generators=gens, relations=rels,
                        B=tuple(tuple(row) for row in B))


# -- generator map into the commutator algebra ---------------------------------------

class GeneratorMap:
    """f_0K -> f_0 (x) h_K; every other generator to its own image."""

    def __init__(self, engine, presentation):
        self.engine = engine
        t = engine.t
        self.values = {}
        for g in presentation.generators:
            name = g["name"]
            if name.startswith("f0_"):
                K = int(name[3:])
                self.values[name] = LocalElement({(-1, t.f(0), (t.h(K),)): Fraction(1)})
            elif name[0] == "e":
                K = int(name[1:])
                self.values[name] = LocalElement.basis(1, t.e(0)) if K == 0 else \
                    LocalElement.basis(0, 0, (t.e(K),))
            elif name[0] == "f":
                self.values[name] = LocalElement.basis(0, 0, (t.f(int(name[1:])),))
            else:
                self.values[name] = LocalElement.basis(0, 0, (t.h(int(name[1:])),))
        self.presentation = presentation

    def __getitem__(self, name):
        return self.values[name]

    def preserves_grading(self):
        out = {}
        for g in self.presentation.generators:
            v = self.values[g["name"]]
            out[g["name"]] = v.degrees() == [g["degree"]] and v.parity() == g["parity"]
        return out

    def residue(self, relation):
        b = self.engine.commutator
        return evaluate(relation["lhs"], self.values, b) - evaluate(relation["rhs"], self.values, b)


# -- the vanishing precondition and the generator w ----------------------------------

def w_element(engine):
    """w = f_0 (x) (h_0 + L)."""
    t = engine.t
    terms = {(-1, t.f(0), (t.h(0),)): Fraction(1)}
    for I, c in t.L.items():
        vadd(terms, {(-1, t.f(0), (t.h(I),)): c})
    return LocalElement(terms)


def _require_pm(tables, engine, require_constants=True):
    scan = prop41_scan(tables)
    verdict = rootsys.is_pseudo_minuscule(tables.cartan, tables.weight)
    if not scan["all_zero"] or not verdict.pseudo_minuscule:
        raise PreconditionError("lambda^ is not pseudo-minuscule",
                                {"prop41": scan, "verdict": verdict.as_dict()})
    if require_constants and engine.k != ProductConstants():
        raise PreconditionError("theorem-level checks need a = b = c = 1",
                                {"constants": list(engine.k.as_tuple())})
    return scan


def lemma42_check(tables, engine, require_pseudo_minuscule=True):
    """[e_0, w] and [e_alpha, w] for all basis e_alpha in B_1, with w = f_0 (h_0 + L).

    With ``require_pseudo_minuscule=False`` the check also runs on other
    input (and on non-default constants), so that failures can be observed.
    """
    if require_pseudo_minuscule:
        _require_pm(tables, engine, require_constants=False)
    w = w_element(engine)
    rows = []
    for a in range(tables.n1):
        x = LocalElement.basis(1, a)
        val = engine.commutator(x, w)
        rows.append({"element": tables.names[1][a], "root": list(tables.root(1, a)),
                     "value": val.render(tables), "zero": val.is_zero()})
    ok = all(r["zero"] for r in rows)
    return {"suite": "lemma42", "w": w.render(tables), "constants": list(engine.k.as_tuple()),
            "brackets": rows, "passed": ok}


# -- subalgebras and ideals -------------------------------------------------------

class GradedSpan:
    """Echelon bases per degree of a subspace of the local algebra."""

    def __init__(self):
        self.ech = {-1: Echelon(), 0: Echelon(), 1: Echelon()}

    def add(self, el):
        """Add a homogeneous element; return True if the span grew."""
        (d,) = el.degrees()
        return self.ech[d].add(el.terms)

    def contains(self, el):
        for d in el.degrees():
            if not self.ech[d].contains(el.part(d).terms):
                return False
        return True

    def reduce(self, el):
        out = {}
        for d in el.degrees():
            vadd(out, self.ech[d].reduce(el.part(d).terms))
        return LocalElement(out)

    def basis(self, d):
        return [LocalElement(v) for v in self.ech[d].basis]

    def dims(self):
        return {d: len(self.ech[d]) for d in (-1, 0, 1)}

    def filtration_dims(self, d):
        """Dimension of the subspace of span elements of filtration <= k, per k."""
        out = {}
        vecs = self.ech[d].basis
        if not vecs:
            return out
        top = max(len(k[2]) for v in vecs for k in v)
        for k in range(top + 1):
            # elements of the span with filtration <= k = span intersected with F_k
            cols = [{key: c for key, c in v.items() if len(key[2]) > k} for v in vecs]
            rel = kernel(cols, len(vecs))
            out[k] = len(rel)
        return out


def _homogeneous_parts(el):
    return [el.part(d) for d in el.degrees()]


class SubalgebraV:
    """The subalgebra generated by B_1 and B_-1 B_0, closed under the commutator.

    Elements of filtration above ``cutoff`` are not added; ``truncated``
    records whether that ever happened.
    """

    def __init__(self, engine, cutoff=4, generators=None):
        self.engine = engine
        self.cutoff = cutoff
        self.truncated = False
        self.span = GradedSpan()
        t = engine.t
        if generators is None:
            generators = [LocalElement.basis(1, a) for a in range(t.n1)]
            generators += [LocalElement({(-1, b, (z,)): Fraction(1)})
                           for b in range(t.n1) for z in range(t.n0)]
        self.generators = generators
        self._close(generators)

    def _close(self, generators):
        queue = []
        for g in generators:
            for p in _homogeneous_parts(g):
                if self._admit(p):
                    queue.append(p)
        done = []
        while queue:
            x = queue.pop(0)
            for y in done + [x]:
                dx, dy = x.degrees()[0], y.degrees()[0]
                if dx + dy not in (-1, 0, 1):
                    continue
                for z in _homogeneous_parts(self.engine.commutator(x, y)):
                    if self._admit(z):
                        queue.append(z)
            done.append(x)

    def _admit(self, el):
        if el.is_zero():
            return False
        if el.filtration() > self.cutoff:
            self.truncated = True
            return False
        return self.span.add(el)

    def basis(self, d):
        return self.span.basis(d)

    def dims(self):
        return self.span.dims()

    def contains(self, el):
        return self.span.contains(el)


@dataclass
class PeripheralIdealSpan:
    generator: str
    span: GradedSpan
    cutoff: int
    truncated: bool
    leakage: list

    def dims(self):
        return self.span.dims()

    def contains(self, el):
        return self.span.contains(el)

    def reduce(self, el):
        return self.span.reduce(el)

    @property
    def peripheral(self):
        return not self.leakage and self.span.dims()[0] == 0


def ideal_span(engine, w, V, cutoff=None, strict=True):
    """Ideal of V generated by w: closure of {w} under [v, .] for v in V.

    A nonzero degree-0 element means the ideal is not peripheral; with
    ``strict`` that raises NotPeripheralError (witness attached).
    """
    cutoff = V.cutoff if cutoff is None else cutoff
    if w.filtration() > cutoff:
        raise ValueError("cutoff below the filtration degree of the generator")
    span = GradedSpan()
    leakage = []
    truncated = False
    queue = []
    for p in _homogeneous_parts(w):
        if span.add(p):
            queue.append(p)
    vb = {d: V.basis(d) for d in (-1, 0, 1)}
    while queue:
        x = queue.pop(0)
        dx = x.degrees()[0]
        for dv in (-1, 0, 1):
            if dx + dv not in (-1, 0, 1):
                continue
            for v in vb[dv]:
                for z in _homogeneous_parts(engine.commutator(v, x)):
                    if z.filtration() > cutoff:
                        truncated = True
                        continue
                    if z.degrees() == [0]:
                        if not span.contains(z):
                            leakage.append({"from": x.render(engine.t), "by": v.render(engine.t),
                                            "value": z.render(engine.t)})
                            span.add(z)
                        continue
                    if span.add(z):
                        queue.append(z)
    out = PeripheralIdealSpan(generator=w.render(engine.t), span=span, cutoff=cutoff,
                              truncated=truncated or V.truncated, leakage=leakage)
    if strict and leakage:
        raise NotPeripheralError("the generated ideal meets degree 0", leakage[:5])
    return out


def _coords_map(vectors, images, target):
    """Kernel of x -> sum x_i images[i] modulo the span ``target`` (an Echelon)."""
    cols = [target.reduce(im) if target is not None else im for im in images]
    return kernel(cols, len(vectors))


def maximal_peripheral_ideal(engine, V):
    """Largest D = D_-1 + D_1 inside V that is an ideal of V.

    D_+-1 = {d in V_+-1 : [V_-+1, d] = 0 and ad V_0 keeps it inside}.
    """
    out = GradedSpan()
    for d in (-1, 1):
        vecs = V.basis(d)
        opp = V.basis(-d)
        # start: kernel of d -> ([y, d] for y in V_-d)
        images = []
        for x in vecs:
            img = {}
            for a, y in enumerate(opp):
                for k, c in engine.commutator(y, x).terms.items():
                    img[(a,) + k] = c
            images.append(img)
        current = [_combine(vecs, row) for row in kernel(images, len(vecs))]
        # shrink until stable under ad V_0
        while True:
            ech = Echelon()
            for c in current:
                ech.add(c.terms)
            images = []
            for x in current:
                img = {}
                for a, z in enumerate(V.basis(0)):
                    red = ech.reduce(engine.commutator(z, x).terms)
                    for k, c in red.items():
                        img[(a,) + k] = c
                images.append(img)
            rows = kernel(images, len(current))
            if len(rows) == len(current):
                break
            current = [_combine(current, row) for row in rows]
        for c in current:
            out.add(c)
    return PeripheralIdealSpan(generator="maximal", span=out, cutoff=V.cutoff,
                               truncated=V.truncated, leakage=[])


def _combine(vecs, coeffs):
    out = {}
    for v, c in zip(vecs, coeffs):
        if c:
            vadd(out, v.terms, c)
    return LocalElement(out)


# -- reducing the presentation modulo the ideal of w ---------------------------------

def thm43_check(tables, engine, cutoff=4, variant="W"):
    """Every relation of the presentation under f_0K -> f_0 h_K, modulo the ideal of w.

    Each residue is classified as ``zero`` (identically), ``in_ideal`` (a
    nonzero element of the ideal generated by w) or ``fails``.  Membership
    modulo the maximal peripheral ideal of V is reported alongside.
    """
    _require_pm(tables, engine)
    verdict = rootsys.is_pseudo_minuscule(tables.cartan, tables.weight)
    s = verdict.index
    pres = w_presentation(tables.ext, special=s, variant=variant)
    gm = GeneratorMap(engine, pres)
    V = SubalgebraV(engine, cutoff)
    w = w_element(engine)
    D = ideal_span(engine, w, V, cutoff)
    Dmax = maximal_peripheral_ideal(engine, V)
    rows = []
    for rel in pres.relations:
        res = gm.residue(rel)
        if res.is_zero():
            status = "zero"
        elif D.contains(res):
            status = "in_ideal"
        else:
            status = "fails"
        rows.append({"group": rel["group"], "schema": rel["schema"], "indices": rel["indices"],
                     "relation": f"{show(rel['lhs'])} = {show(rel['rhs'])}",
                     "status": status, "residue": res.render(tables),
                     "in_V": V.contains(res), "zero_mod_maximal": Dmax.contains(res)})
    groups = {}
    for r in rows:
        g = groups.setdefault(r["group"], {"relations": 0, "zero": 0, "in_ideal": 0, "fails": 0})
        g["relations"] += 1
        g[r["status"]] += 1
    ok = all(r["status"] != "fails" for r in rows)
    perm = list(range(1, tables.rank + 1))
    perm[0], perm[s - 1] = perm[s - 1], perm[0]
    return {"suite": "thm43", "variant": variant, "cutoff": cutoff, "special_node": s,
            "numbering": {"node_playing_1": s, "permutation": perm},
            "generator_grading": gm.preserves_grading(),
            "ideal": {"generator": D.generator, "dims": D.dims(), "truncated": D.truncated,
                      "peripheral": D.peripheral},
            "maximal_peripheral_dims": Dmax.dims(),
            "V_dims": V.dims(), "V_truncated": V.truncated,
            "groups": groups, "relations": rows, "passed": ok}


# -- conjecture probe ---------------------------------------------------------------

def _cartan_type_W_minus(tables):
    """dim of the degree -1 piece of W for A_{n-1}, Lambda_1 (or Lambda_{n-1}), where W = W(n)."""
    c = tables.cartan
    labels = tables.weight.labels
    if not c.label.startswith("A"):
        return None
    r = c.rank
    if list(labels) not in ([1] + [0] * (r - 1), [0] * (r - 1) + [1]):
        return None
    n = r + 1
    return n * n * (n - 1) // 2


def conjecture_probe(tables, engine, cutoff=2):
    """Dimensions of V / D against the local part of W.  Never asserts."""
    V = SubalgebraV(engine, cutoff)
    D = maximal_peripheral_ideal(engine, V)
    vd, dd = V.dims(), D.dims()
    quotient = {d: vd[d] - dd[d] for d in (-1, 0, 1)}
    by_filtration = {d: V.span.filtration_dims(d) for d in (-1, 0, 1)}
    g_dim = tables.cartan.dim
    W = {1: tables.n1, 0: g_dim + 1, -1: _cartan_type_W_minus(tables)}
    rows = []
    for d in (1, 0, -1):
        rows.append({"degree": d, "V": vd[d], "D": dd[d], "V/D": quotient[d], "W": W[d],
                     "agree": None if W[d] is None else quotient[d] == W[d],
                     "V_by_filtration": by_filtration[d]})
    return {"suite": "conjecture", "informational": True, "cutoff": cutoff,
            "simply_laced": tables.cartan.simply_laced, "table": rows,
            "caveat": f"V and its maximal peripheral ideal computed with filtration truncated at {cutoff}"
                      f" (truncation {'hit' if V.truncated else 'never hit'}); the W column uses"
                      " dim B_1, dim g + 1, and the Cartan-type value for A_(n-1) with Lambda_1 or Lambda_(n-1)"}
