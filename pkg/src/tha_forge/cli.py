"""tha-forge command line.

    tha-forge build    --type A --rank 2 --lambda 1,0
    tha-forge check    focal --type A --rank 1 --lambda 1 --cutoff 3
    tha-forge emit     presentation --type A --rank 2 --lambda 1,0 [--out FILE]
    tha-forge classify [--type E --rank 6] [--lambda ...]

One JSON document goes to stdout (``--pretty`` for a text rendering).
Exit codes: 0 ok, 1 an asserted check failed, 2 invalid input,
3 singular B, 4 precondition not met, 5 I/O error.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import focal, rootsys, superlocal, tha
from .errors import (ConfigurationError, NotPeripheralError, PreconditionError,
                     SingularBError, ThaForgeError, UnsupportedError)

FORMAT = 1

EXIT_OK, EXIT_FAIL, EXIT_SPEC, EXIT_SINGULAR, EXIT_PRECONDITION, EXIT_IO = 0, 1, 2, 3, 4, 5

SUITES = ("focal", "lie", "commutator", "prop41", "lemma42", "thm43", "assoc-status",
          "conjecture", "pbw")
INFORMATIONAL = {"assoc-status", "conjecture"}

FINITE_TYPES = [("A", r) for r in range(1, 9)] + [("B", r) for r in range(2, 9)] + \
               [("C", r) for r in range(2, 9)] + [("D", r) for r in range(4, 9)] + \
               [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]


# -- serialisation ------------------------------------------------------------------

def jsonable(obj):
    """Fractions become canonical "p/q" strings; tuples become lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(doc):
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(pad + ", ".join(str(v) for v in obj))
        else:
            for v in obj:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


# -- the algebra spec ---------------------------------------------------------------

def _int_list(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise ConfigurationError(f"expected comma-separated integers, got {text!r}")


def _matrix(text):
    try:
        return [[int(x) for x in row.split(",")] for row in text.replace(" ", "").split(";") if row]
    except ValueError:
        raise ConfigurationError(f"bad matrix {text!r}; use rows '2,-1;-1,2'")


@dataclass
class AlgebraSpec:
    type: str = None
    rank: int = None
    matrix: list = None
    lam: list = None
    kappa: object = "auto"
    abc: tuple = (Fraction(1), Fraction(1), Fraction(1))
    cutoff: int = None
    samples: int = None
    seed: int = 0

    def as_dict(self):
        out = {"lambda": self.lam, "kappa": self.kappa, "abc": list(self.abc), "seed": self.seed}
        if self.matrix is not None:
            out["matrix"] = self.matrix
        else:
            out["type"], out["rank"] = self.type, self.rank
        if self.cutoff is not None:
            out["cutoff"] = self.cutoff
        if self.samples is not None:
            out["samples"] = self.samples
        return out

    def cartan(self):
        if self.matrix is not None:
            return rootsys.cartan_from_matrix(self.matrix, allow_infinite=True, max_roots=20000)
        if self.type is None or self.rank is None:
            raise ConfigurationError("give --type and --rank, or --matrix")
        return rootsys.build_cartan(self.type, self.rank)

    def weight(self, cartan):
        if self.lam is None:
            raise ConfigurationError("--lambda is required")
        return rootsys.make_weight(cartan, self.lam, self.kappa)


def spec_from_args(args):
    seed = args.seed
    if seed is None:
        seed = os.environ.get("THA_FORGE_SEED", "0")
    try:
        seed = int(seed)
    except ValueError:
        raise ConfigurationError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed < 2 ** 64:
        raise ConfigurationError("seed must fit in 64 bits")
    kappa = args.kappa
    if kappa not in ("symmetric", "auto"):
        try:
            kappa = [Fraction(x) for x in kappa.replace(" ", "").split(",")]
        except (ValueError, ZeroDivisionError):
            raise ConfigurationError(f"bad kappa {args.kappa!r}")
    try:
        abc = focal.ProductConstants.parse(args.abc).as_tuple()
    except (ValueError, ZeroDivisionError) as ex:
        raise ConfigurationError(str(ex))
    for name in ("cutoff", "samples"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise ConfigurationError(f"--{name} must be non-negative")
    return AlgebraSpec(type=args.type, rank=args.rank,
                       matrix=_matrix(args.matrix) if args.matrix else None,
                       lam=_int_list(args.lam) if args.lam else None,
                       kappa=kappa, abc=abc, cutoff=args.cutoff, samples=args.samples, seed=seed)


class Context:
    """Lazily built objects for one spec."""

    def __init__(self, spec):
        self.spec = spec
        self.cartan = spec.cartan()
        self.weight = spec.weight(self.cartan)
        self.ext = rootsys.build_B(self.cartan, self.weight)
        self._tables = None
        self._engine = None

    @property
    def tables(self):
        if self._tables is None:
            self._tables = superlocal.build_local_part(self.cartan, self.weight, self.ext)
        return self._tables

    @property
    def engine(self):
        if self._engine is None:
            self._engine = focal.FocalAlgebra(self.tables, focal.ProductConstants(*self.spec.abc))
        return self._engine

    def derived(self):
        c, w, ext = self.cartan, self.weight, self.ext
        form = rootsys.weight_form(c, w.kappa)
        lam = form.weight(w.labels)
        out = {"cartan": {"label": c.label, "rank": c.rank, "matrix": c.matrix,
                          "theta": c.theta, "coxeter": c.coxeter, "finite": c.finite,
                          "roots": len(c.roots) if c.finite else None},
               "kappa": w.kappa, "lambda_hat": w.hat,
               "B": ext.B, "det_B": ext.det, "det_A": ext.det_A, "singular": ext.singular,
               "lambda_norm": form.inner(lam, lam),
               "verdict": rootsys.is_pseudo_minuscule(c, w)}
        if not ext.singular:
            out["Binv_row0"] = ext.Lcoef
            out["L"] = {f"h{i}": x for i, x in enumerate(ext.Lcoef)}
            out["L_norm"] = rootsys.L_norm(ext)
        return out


# -- commands -------------------------------------------------------------------------

def cmd_build(ctx):
    doc = ctx.derived()
    if ctx.ext.singular:
        raise SingularBError("B is singular (det B = 0): the local part is not defined")
    form = rootsys.weight_form(ctx.cartan, ctx.weight.kappa)
    doc["L_identities"] = rootsys.check_L_identities(ctx.ext, form, ctx.weight)
    t = ctx.tables
    doc["dims"] = {"B_-1": len(t.basism), "B_0": t.n0, "B_1": t.n1}
    doc["B_1_roots"] = [list(t.root(1, a)) for a in range(t.n1)]
    return doc, EXIT_OK


def _suite_defaults(suite, spec):
    cutoff = spec.cutoff
    samples = spec.samples
    if cutoff is None:
        cutoff = {"focal": 3, "lie": 3, "assoc-status": 2, "thm43": 4, "conjecture": 2,
                  "pbw": 4}.get(suite, 0)
    if samples is None:
        samples = {"focal": 1000, "lie": 1000, "assoc-status": 200}.get(suite, 0)
    return cutoff, samples


def _split_worker(payload):
    spec, suite, configs, cutoff, samples, seed = payload
    ctx = Context(spec)
    if suite == "focal":
        return focal.check_focal(ctx.engine, cutoff, samples, seed, configs=configs)["identities"]
    return focal.check_local_lie(ctx.engine, cutoff, samples, seed, configs=configs)["identities"]


def _run_parallel(ctx, suite, cutoff, samples, jobs):
    """Split the configurations of focal / lie across processes; same result as serial."""
    spec = ctx.spec
    if suite == "focal":
        configs = list(focal.FOCAL_CONFIGS)
    else:
        configs = [("antisymmetry", c) for c in focal.ANTISYM_CONFIGS] + \
                  [("jacobi", c) for c in focal.JACOBI_CONFIGS]
    chunks = [configs[i::jobs] for i in range(jobs)]
    payloads = [(spec, suite, ch, cutoff, samples, spec.seed) for ch in chunks if ch]
    with ProcessPoolExecutor(max_workers=len(payloads)) as pool:
        parts = list(pool.map(_split_worker, payloads))
    rows = [r for part in parts for r in part]
    order = {tuple(c) if suite == "focal" else c: i for i, c in enumerate(configs)}
    if suite == "focal":
        rows.sort(key=lambda r: order[tuple(r["config"])])
    else:
        rows.sort(key=lambda r: order[(r["identity"], tuple(r["config"]))])
    total = sum(r["violations"] for r in rows)
    return {"suite": suite, "cutoff": cutoff, "samples": samples, "seed": spec.seed,
            "identities": rows, "violations": total, "passed": total == 0}


def cmd_check(ctx, suite, jobs=1):
    if suite not in SUITES:
        raise ConfigurationError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if ctx.ext.singular:
        raise SingularBError("B is singular (det B = 0): the local part is not defined")
    spec = ctx.spec
    cutoff, samples = _suite_defaults(suite, spec)
    t, eng = ctx.tables, ctx.engine
    if suite in ("focal", "lie") and jobs > 1:
        rep = _run_parallel(ctx, suite, cutoff, samples, jobs)
    elif suite == "focal":
        rep = focal.check_focal(eng, cutoff, samples, spec.seed)
    elif suite == "lie":
        rep = focal.check_local_lie(eng, cutoff, samples, spec.seed)
    elif suite == "commutator":
        rep = focal.check_commutator(eng)
    elif suite == "pbw":
        rep = focal.check_pbw(eng, cutoff)
    elif suite == "assoc-status":
        rep = focal.check_assoc_extra(eng, cutoff, samples, spec.seed)
    elif suite == "prop41":
        scan = superlocal.prop41_scan(t)
        verdict = rootsys.is_pseudo_minuscule(ctx.cartan, ctx.weight)
        rep = {"suite": "prop41", "scan": scan, "verdict": verdict,
               "agrees_with_classifier": scan["all_zero"] == verdict.pseudo_minuscule,
               "passed": scan["all_zero"] == verdict.pseudo_minuscule}
    elif suite == "lemma42":
        necessity = eng.k.b != eng.k.c
        rep = tha.lemma42_check(t, eng, require_pseudo_minuscule=not necessity)
        if necessity:
            rep["mode"] = "necessity: b != c, failure expected"
    elif suite == "thm43":
        rep = tha.thm43_check(t, eng, cutoff)
    else:
        rep = tha.conjecture_probe(t, eng, cutoff)
    if suite in INFORMATIONAL:
        code = EXIT_OK
    else:
        code = EXIT_OK if rep.get("passed") else EXIT_FAIL
    return {"suite": suite, "derived": ctx.derived(), "result": rep}, code


def tables_document(tables):
    return {"kind": "tables", "tables": tables.as_dict()}


def presentation_document(ctx, variant="W"):
    s = rootsys.is_pseudo_minuscule(ctx.cartan, ctx.weight).index
    pres = tha.w_presentation(ctx.ext, special=s, variant=variant)
    return {"kind": "presentation", "presentation": pres.as_dict()}


def cmd_emit(ctx, what, variant="W"):
    if what == "tables":
        if ctx.ext.singular:
            raise SingularBError("B is singular (det B = 0): the local part is not defined")
        return tables_document(ctx.tables), EXIT_OK
    if what == "presentation":
        return presentation_document(ctx, variant), EXIT_OK
    raise ConfigurationError(f"unknown emit target {what!r}; use tables or presentation")


def cmd_classify(args):
    """Pseudo-minuscule classification for one weight, one type, or every type up to rank 8."""
    if args.lam:
        spec = spec_from_args(args)
        c = spec.cartan()
        w = spec.weight(c)
        return {"verdict": rootsys.is_pseudo_minuscule(c, w), "labels": w.labels,
                "kappa": w.kappa}, EXIT_OK
    if args.type or args.matrix:
        spec = spec_from_args(args)
        c = spec.cartan()
        return {"types": [{"label": c.label, "nodes": rootsys.pseudo_minuscule_nodes(c)}]}, EXIT_OK
    rows = []
    for t, r in FINITE_TYPES:
        c = rootsys.build_cartan(t, r)
        rows.append({"label": c.label, "nodes": rootsys.pseudo_minuscule_nodes(c)})
    return {"types": rows}, EXIT_OK


# -- parser -----------------------------------------------------------------------

def _common(p):
    p.add_argument("--type", help="Cartan type A..G")
    p.add_argument("--rank", type=int)
    p.add_argument("--matrix", help="explicit Cartan matrix, rows separated by ';'")
    p.add_argument("--lambda", dest="lam", help="Dynkin labels, e.g. 1,0,0")
    p.add_argument("--kappa", default="auto",
                   help="'symmetric', 'auto' (1/d scaled to 1 at the first nonzero label), or q1,q2,...")
    p.add_argument("--abc", default="1,1,1", help="product constants a,b,c")
    p.add_argument("--cutoff", type=int, help="filtration cutoff N")
    p.add_argument("--samples", type=int, help="number of random samples")
    p.add_argument("--seed", help="64-bit seed (default: $THA_FORGE_SEED or 0)")
    p.add_argument("--jobs", type=int, default=1, help="processes for focal/lie suites")
    p.add_argument("--timing", action="store_true",
                   help="add wall-clock timing (makes the report non-reproducible)")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    out.add_argument("--pretty", dest="pretty", action="store_true", help="text rendering")
    p.set_defaults(pretty=False)


def make_parser():
    p = argparse.ArgumentParser(prog="tha-forge", description="local superalgebras and tensor hierarchy algebras")
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", help="B, L and the local part")
    _common(b)
    c = sub.add_parser("check", help="run a verification suite")
    c.add_argument("suite", help="|".join(SUITES))
    _common(c)
    e = sub.add_parser("emit", help="write tables or the W presentation as JSON")
    e.add_argument("what", help="tables|presentation")
    e.add_argument("--out", help="file to write (default stdout)")
    e.add_argument("--variant", default="W", choices=("W", "S"))
    _common(e)
    k = sub.add_parser("classify", help="pseudo-minuscule classification")
    _common(k)
    return p


def _error_doc(command, kind, message, witness=None):
    doc = {"format": FORMAT, "command": command, "error": {"kind": kind, "message": message}}
    if witness is not None:
        doc["error"]["witness"] = witness
    return doc


def run(argv=None, stdout=None):
    """Entry point returning the exit code; output goes to ``stdout``."""
    stdout = stdout or sys.stdout
    parser = make_parser()
    args = parser.parse_args(argv)
    command = [args.command] + ([getattr(args, "suite", None) or getattr(args, "what", None)]
                                if args.command in ("check", "emit") else [])
    t0 = time.perf_counter()
    spec_echo = None
    ctx = None
    try:
        if args.command == "classify":
            body, code = cmd_classify(args)
        else:
            spec = spec_from_args(args)
            spec_echo = spec.as_dict()
            ctx = Context(spec)
            if args.command == "build":
                body, code = cmd_build(ctx)
            elif args.command == "check":
                body, code = cmd_check(ctx, args.suite, max(1, args.jobs))
            else:
                body, code = cmd_emit(ctx, args.what, args.variant)
        doc = {"format": FORMAT, "command": command}
        if spec_echo is not None:
            doc["spec"] = spec_echo
        doc.update(body)
    except (ConfigurationError, UnsupportedError) as ex:
        doc, code = _error_doc(command, "invalid-spec", str(ex)), EXIT_SPEC
    except SingularBError as ex:
        doc, code = _error_doc(command, "singular-B", str(ex)), EXIT_SINGULAR
        if ctx is not None:
            doc["derived"] = ctx.derived()
    except (PreconditionError, NotPeripheralError) as ex:
        doc, code = _error_doc(command, "precondition", str(ex), ex.witness), EXIT_PRECONDITION
    except ThaForgeError as ex:
        doc, code = _error_doc(command, "error", str(ex)), EXIT_FAIL
    if spec_echo is not None and "spec" not in doc:
        doc["spec"] = spec_echo
    if args.timing:
        doc["timing_seconds"] = f"{time.perf_counter() - t0:.3f}"
    text = render_text(jsonable(doc)) + "\n" if args.pretty else dumps(doc)
    out_path = getattr(args, "out", None)
    if out_path and code == EXIT_OK:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(dumps(doc))
        except OSError as ex:
            stdout.write(dumps(_error_doc(command, "io", str(ex))))
            return EXIT_IO
        stdout.write(dumps({"format": FORMAT, "command": command, "written": out_path}))
        return code
    stdout.write(text)
    return code


# -- reading documents back ---------------------------------------------------------------

def load_document(text):
    """Parse a JSON document written by this tool (rationals stay "p/q" strings)."""
    doc = json.loads(text)
    if doc.get("format") != FORMAT:
        raise ConfigurationError(f"unsupported document format {doc.get('format')!r}")
    return doc


def tables_from_document(doc):
    """Structure constants of an emitted tables document, with Fractions restored."""
    t = doc["tables"]
    brackets = {}
    for row in t["brackets"]:
        key = (row["x"][0], row["x"][1], row["y"][0], row["y"][1])
        brackets[key] = (row["degree"], {int(k): Fraction(v) for k, v in row["value"].items()})
    pairing = {(row["x"], row["y"]): Fraction(row["value"]) for row in t["pairing"]}
    return {"rank": t["rank"],
            "names": {int(d): [b["name"] for b in t["basis"][d]] for d in t["basis"]},
            "roots": {int(d): [tuple(b["root"]) for b in t["basis"][d]] for d in t["basis"]},
            "L": {int(k): Fraction(v) for k, v in t["L"].items()},
            "brackets": brackets, "pairing": pairing}


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
