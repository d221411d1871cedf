"""Command-line entry point: verification suites, group queries and JSON exports."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Sequence

from . import coordring as cr
from . import groupeng as ge
from . import sl2q as sq
from . import suites
from .errors import BudgetExceeded
from .exactring import InvalidRing, RingDescriptor
from .rootdatum import InvalidDatum, NotDominant, load_datum
from .weylmod import build_weyl_module

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SUITES = ("group", "weylmod", "sl2q", "coord")
GROUP_FAMILIES = {
    "braid": ("s-torus-twist", "s-inverse-pair", "braid-relation-sprime", "braid-relation-sdblprime",
              "weyl-conjugation-projectors"),
    "chevalley": ("x-additivity", "rank-one-exchange", "torus-from-unipotents", "torus-conjugates-x",
                  "torus-conjugates-root-subgroup", "conjugate-stays-raising", "omega-exchange",
                  "omega-conjugate-scalar"),
    "factorize": ("bigcell-uniqueness", "xh-injective"),
}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    datum: str = "A1-sc"
    ring: str = "q"
    window: int = 2
    module_window: int | None = None
    zeta_window: int = 8
    word_depth: int = 4
    degree: int = 3
    suite: str = "all"
    seed: int = 0
    budget: int | None = None
    out: str | None = None
    jobs: int = 1

    def selected(self) -> tuple[str, ...]:
        if self.suite == "all":
            return SUITES
        names = tuple(s.strip() for s in self.suite.split(","))
        bad = [s for s in names if s not in SUITES]
        if bad:
            raise UsageError(f"unknown suite {bad[0]!r}; choose from all, {', '.join(SUITES)}")
        return names

    def report_config(self) -> dict:
        d = asdict(self)
        del d["out"], d["jobs"]
        return d


def _datum(text: str):
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    return load_datum(text)


def _module_window(cfg: RunConfig, rd) -> int:
    if cfg.module_window is not None:
        return cfg.module_window
    return 2 if rd.rank == 1 else 1


def _run_suite(name: str, cfg: RunConfig) -> list:
    rd = _datum(cfg.datum)
    if name == "group":
        ring = RingDescriptor.parse(cfg.ring)
        reg = ge.ModuleRegistry.window(rd, ring, cfg.window, cfg.budget)
        return suites.group_suite(rd, ring, cfg.window, cfg.seed, registry=reg)
    if name == "weylmod":
        return suites.weylmod_suite(rd, _module_window(cfg, rd), cfg.word_depth, budget=cfg.budget)
    if name == "sl2q":
        return suites.quantum_suite(cfg.zeta_window, seed=cfg.seed)
    lams = rd.dominant_window(_module_window(cfg, rd))
    return suites.coord_suite(rd, lams, cfg.seed, degree_bound=cfg.degree)


def verify(cfg: RunConfig) -> tuple[int, dict]:
    names = cfg.selected()
    _datum(cfg.datum)
    RingDescriptor.parse(cfg.ring)
    report = suites.Report(cfg.report_config())
    exceeded = None
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            futures = [pool.submit(_run_suite, n, cfg) for n in names]
            for n, fut in zip(names, futures):
                try:
                    report.items.extend(fut.result())
                except BudgetExceeded as exc:
                    exceeded = exceeded or f"{n}: {exc}"
    else:
        for n in names:
            try:
                report.items.extend(_run_suite(n, cfg))
            except BudgetExceeded as exc:
                exceeded = f"{n}: {exc}"
                break
    out = report.to_json()
    if exceeded:
        out["budget_exceeded"] = exceeded
        out["passed"] = False
        return EXIT_BUDGET, out
    return (EXIT_OK if report.passed else EXIT_FAIL), out


# --- group ---------------------------------------------------------------------

def parse_group_word(text: str, rd, ring: RingDescriptor) -> list[tuple]:
    """Tokens separated by spaces: x:i:h, y:i:h, t:u1,..,ur, sp:i, spp:i (nodes numbered from 1)."""
    word = []
    for raw in text.split():
        parts = raw.split(":")
        kind = parts[0]
        try:
            if kind in ("x", "y") and len(parts) == 3:
                word.append((kind, _node(rd, parts[1]), ring.coerce(_scalar(parts[2]))))
            elif kind == "t" and len(parts) == 2:
                vals = tuple(ring.coerce(_scalar(v)) for v in parts[1].split(","))
                if len(vals) != rd.rank:
                    raise UsageError(f"torus token needs {rd.rank} values")
                word.append(("t", ge.TorusChar(ring, vals)))
            elif kind in ("sp", "spp") and len(parts) == 2:
                word.append((kind, _node(rd, parts[1])))
            else:
                raise UsageError(f"bad group token {raw!r}")
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(f"bad group token {raw!r}: {exc}") from None
    return word


def _node(rd, text: str) -> int:
    i = int(text) - 1
    if i not in rd.nodes:
        raise UsageError(f"node {text} out of range 1..{rd.rank}")
    return i


def _scalar(text: str):
    from fractions import Fraction
    return Fraction(text)


def _weight(rd, text: str) -> tuple[int, ...]:
    """'w<k>' for the k-th dominant generator (from 1) or comma-separated X coordinates."""
    if text.startswith("w"):
        k = int(text[1:])
        if not 1 <= k <= len(rd.dominant_generators):
            raise UsageError(f"no dominant generator {text}")
        return tuple(rd.dominant_generators[k - 1])
    lam = tuple(int(x) for x in text.split(","))
    if len(lam) != rd.rank:
        raise UsageError(f"weight needs {rd.rank} coordinates")
    if not rd.is_dominant(lam):
        raise UsageError(f"{lam} is not dominant")
    return lam


def _matrix_json(ring: RingDescriptor, mat) -> list:
    return [[r, c, ring.to_json(x)] for r, row in enumerate(mat) for c, x in enumerate(row) if x]


def group_order(cfg: RunConfig) -> int:
    ring = RingDescriptor.parse(cfg.ring)
    if ring.kind != "fp":
        raise UsageError("group order needs a ring fp:<p>")
    return ge.enumerate_group(_datum(cfg.datum), ring, cfg.budget or 1000000)


def group_eval(cfg: RunConfig, word_text: str, module: str) -> dict:
    rd = _datum(cfg.datum)
    ring = RingDescriptor.parse(cfg.ring)
    lam = _weight(rd, module)
    reg = ge.ModuleRegistry(rd, ring, [build_weyl_module(rd, lam, cfg.budget)])
    g = ge.GroupElt.from_word(reg, parse_group_word(word_text, rd, ring))
    m = reg.modules[0]
    return {"schema": suites.SCHEMA, "kind": "matrices", "datum": rd.name, "ring": str(ring),
            "word": word_text, "lambda": list(lam), "dim": m.dim,
            "weights": [list(w) for w in m.weights], "matrix": _matrix_json(ring, g.mats[0])}


# --- exports -------------------------------------------------------------------

def export_module(cfg: RunConfig, lam_text: str) -> dict:
    rd = _datum(cfg.datum)
    m = build_weyl_module(rd, _weight(rd, lam_text), cfg.budget)
    return {"schema": suites.SCHEMA, "kind": "module", **m.to_json()}


def export_tables(window: int) -> dict:
    return {"schema": suites.SCHEMA, "kind": "tables", **sq.tables(window)}


def export_polynomial(cfg: RunConfig, lam_text: str, row: int, col: int) -> dict:
    rd = _datum(cfg.datum)
    lam = _weight(rd, lam_text)
    dim = build_weyl_module(rd, lam, cfg.budget).dim
    if not (0 <= row < dim and 0 <= col < dim):
        raise UsageError(f"row/col out of range for a module of dimension {dim}")
    word = rd.longest_element.word
    poly = cr.iota_tilde_prime(cr.matcoeff(rd, lam, row, col), word)
    return {"schema": suites.SCHEMA, "kind": "polynomial", "datum": rd.name, "lambda": list(lam),
            "row": row, "col": col, "word": list(word),
            "polynomial": poly.to_json(cr.variable_names(rd))}


# --- argument parsing ----------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--datum", default="A1-sc", help="preset name or path to a YAML/JSON datum")
    p.add_argument("--ring", default="q", help="laurent | q | z | zmod:<m> | fp:<p>")
    p.add_argument("--window", type=int, default=2, help="dominant-weight window of the registry")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.add_argument("--budget", type=int, default=None, help="cap on module dimension or group size")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="chevalley", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--suite", default="all", help="all or a comma list of " + ", ".join(SUITES))
    v.add_argument("--module-window", type=int, default=None)
    v.add_argument("--zeta-window", type=int, default=8)
    v.add_argument("--word-depth", type=int, default=4)
    v.add_argument("--degree", type=int, default=3, help="monomial degree bound for generation")
    v.add_argument("--jobs", type=int, default=1, help="run suites in this many processes")

    g = sub.add_parser("group", help="group-element computations")
    gs = g.add_subparsers(dest="action", required=True)
    gs.add_parser("order", parents=[common], help="order of the group over fp:<p> by closure")
    gv = gs.add_parser("verify", parents=[common], help="group identity suite")
    gv.add_argument("--suite", default="braid,chevalley,factorize",
                    help="comma list of families: " + ", ".join(GROUP_FAMILIES))
    gv.add_argument("--tags", default=None, help="comma list of identity tags (overrides --suite)")
    ge_ = gs.add_parser("eval", parents=[common], help="matrix of a word on a Weyl module")
    ge_.add_argument("--word", required=True)
    ge_.add_argument("--module", default="w1")

    w = sub.add_parser("weylmod", parents=[common], help="build a Weyl module")
    w.add_argument("--lambda", dest="lam", default="w1")

    c = sub.add_parser("coord", help="coordinate-ring checks at v = 1")
    cs = c.add_subparsers(dest="action", required=True)
    for name in ("hopf-check", "iota", "kostant-compare", "generation"):
        sp = cs.add_parser(name, parents=[common])
        if name == "hopf-check":
            sp.add_argument("--instances", type=int, default=50)
        if name == "iota":
            sp.add_argument("--f", dest="coeff", default="w1:0:0",
                            help="matrix coefficient as module:row:col, module w<k> or a,b,..")
        if name == "generation":
            sp.add_argument("--degree", type=int, default=3)

    s = sub.add_parser("sl2q", help="rank-one quantum tables")
    ss = s.add_subparsers(dest="action", required=True)
    ss.add_parser("tables", parents=[common])
    st = ss.add_parser("tau", parents=[common])
    st.add_argument("--e", type=int, default=1)
    st.add_argument("--r", type=int, default=0)
    st.add_argument("--m", type=int, default=2, help="highest weight of the module")

    e = sub.add_parser("export", help="write JSON artifacts")
    es = e.add_subparsers(dest="kind", required=True)
    em = es.add_parser("module", parents=[common])
    em.add_argument("--lambda", dest="lam", default="w1")
    es.add_parser("tables", parents=[common])
    ex = es.add_parser("matrices", parents=[common])
    ex.add_argument("--word", required=True)
    ex.add_argument("--module", default="w1")
    ep = es.add_parser("polynomial", parents=[common])
    ep.add_argument("--lambda", dest="lam", default="w1")
    ep.add_argument("--row", type=int, default=0)
    ep.add_argument("--col", type=int, default=0)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    keys = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in keys})


def _dispatch(ns: argparse.Namespace) -> tuple[int, object]:
    cfg = _config(ns)
    cmd = ns.cmd
    if cmd == "verify":
        return verify(cfg)
    if cmd == "group":
        if ns.action == "order":
            return EXIT_OK, group_order(cfg)
        if ns.action == "verify":
            rd, ring = _datum(cfg.datum), RingDescriptor.parse(cfg.ring)
            if ns.tags:
                tags = tuple(ns.tags.split(","))
            else:
                fams = ns.suite.split(",")
                if any(f not in GROUP_FAMILIES for f in fams):
                    raise UsageError(f"unknown family in {ns.suite!r}")
                tags = tuple(t for t in suites.GROUP_TAGS if any(t in GROUP_FAMILIES[f] for f in fams))
            bad = [t for t in tags if t not in suites.GROUP_TAGS]
            if bad:
                raise UsageError(f"unknown tag {bad[0]!r}")
            reg = ge.ModuleRegistry.window(rd, ring, cfg.window, cfg.budget)
            rep = suites.Report(cfg.report_config(),
                                suites.group_suite(rd, ring, cfg.window, cfg.seed, tags, registry=reg))
            return (EXIT_OK if rep.passed else EXIT_FAIL), rep.to_json()
        return EXIT_OK, group_eval(cfg, ns.word, ns.module)
    if cmd == "weylmod":
        return EXIT_OK, export_module(cfg, ns.lam)
    if cmd == "coord":
        rd = _datum(cfg.datum)
        lams = rd.dominant_window(cfg.window)
        if ns.action == "hopf-check":
            rep = cr.hopf_check(rd, lams, ns.instances, cfg.seed)
            out = {"schema": suites.SCHEMA, "kind": "hopf-check", "datum": rd.name,
                   "counts": dict(sorted(rep.counts.items())), "passed": rep.passed,
                   "failures": [str(f) for f in rep.failures[:5]]}
            return (EXIT_OK if rep.passed else EXIT_FAIL), out
        if ns.action == "iota":
            parts = ns.coeff.split(":")
            if len(parts) != 3:
                raise UsageError(f"--f expects module:row:col, got {ns.coeff!r}")
            return EXIT_OK, export_polynomial(cfg, parts[0], int(parts[1]), int(parts[2]))
        if ns.action == "kostant-compare":
            if rd.rank != 1:
                raise UsageError("kostant-compare is implemented for rank one")
            reps = [cr.kostant_compare_sl2(w) for w in range(cfg.window + 1)]
            out = {"schema": suites.SCHEMA, "kind": "kostant-compare",
                   "windows": [{"window": r.window, "rank": r.rank, "kostant_rank": r.kostant_rank,
                                "triangular_rank": r.triangular_rank, "equal": r.equal,
                                "dual_equal": r.dual_equal} for r in reps]}
            ok = all(r.equal and r.dual_equal for r in reps)
            return (EXIT_OK if ok else EXIT_FAIL), out
        rep = cr.generation_check(rd, lams, ns.degree, cfg.budget or 100000)
        out = {"schema": suites.SCHEMA, "kind": "generation", "datum": rd.name,
               "degree": ns.degree, "passed": rep.passed, "detail": str(rep)}
        return (EXIT_OK if rep.passed else EXIT_FAIL), out
    if cmd == "sl2q":
        if ns.action == "tables":
            return EXIT_OK, export_tables(cfg.window)
        if ns.e not in (1, -1):
            raise UsageError("--e must be 1 or -1")
        mod = sq.qweyl_module(ns.m)
        mat = sq.tau_direct(mod, ns.e, ns.r)
        table = sq.tau_table(ns.e, ns.r, cfg.window)
        agrees = sq.tau_from_table(mod, ns.e, ns.r) == mat
        return (EXIT_OK if agrees else EXIT_FAIL), {
            "schema": suites.SCHEMA, "kind": "tau", "e": ns.e, "r": ns.r, "window": cfg.window,
            "table": {f"{x},{y}": c.to_json() for (x, y), c in sorted(table.items()) if c},
            "m": ns.m, "matrix": [[r, c, x.to_json()] for r, row in enumerate(mat)
                                  for c, x in enumerate(row) if x],
            "table_agrees": agrees}
    # export
    if ns.kind == "module":
        return EXIT_OK, export_module(cfg, ns.lam)
    if ns.kind == "tables":
        return EXIT_OK, export_tables(cfg.window)
    if ns.kind == "matrices":
        return EXIT_OK, group_eval(cfg, ns.word, ns.module)
    return EXIT_OK, export_polynomial(cfg, ns.lam, ns.row, ns.col)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _emit(obj, out: str | None) -> None:
    text = obj if isinstance(obj, str) else (f"{obj}\n" if isinstance(obj, int) else dumps(obj))
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, result = _dispatch(ns)
    except (UsageError, InvalidDatum, InvalidRing, NotDominant) as exc:
        print(f"chevalley: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"chevalley: budget exceeded: {exc}", file=sys.stderr)
        _emit({"schema": suites.SCHEMA, "budget_exceeded": str(exc), "passed": False, "items": []},
              getattr(ns, "out", None))
        return EXIT_BUDGET
    _emit(result, getattr(ns, "out", None))
    return code


def main() -> None:
    try:
        code = run()
    except BrokenPipeError:
        code = EXIT_OK
    sys.exit(code)
