"""``extricat`` command line.

Exit codes: 0 pass, 1 violation, 2 usage or parse error, 3 pass with
derived-window skips.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import core, io, suites
from .catalog import CatalogError
from .category import CapExceeded, WindowError
from .config import Caps, ConfigError, SessionConfig, parse_window
from .reps import QuiverError

SUITES = ("bijection", "cotorsion", "lemmas", "axioms", "example-4.6", "example-5.9")


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", default="", help="quiver spec JSON (path, or a bundled fixture name such as a3_left)")
    common.add_argument("--p", type=int, default=None, help="field characteristic (overrides the spec)")
    common.add_argument("--backend", choices=("module", "derived"), default=None)
    common.add_argument("--window", default=None, help="derived shift window lo:hi (implies --backend derived)")
    common.add_argument("--x", default=None, help="comma separated labels of a semibrick, e.g. S2,S3 or S1[-1],P1")
    common.add_argument("--s", default=None, help="comma separated labels of a subset of X")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=120, help="sampled pairs for the axioms suite")
    common.add_argument("--ext-cap", type=int, default=2**12)
    common.add_argument("--hom-cap", type=int, default=2**12)
    common.add_argument("--catalog-cap", type=int, default=256)
    common.add_argument("--bound", type=int, default=None, help="summand bound for filtration closures")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="extricat", description="Filtrations, semibricks and cotorsion pairs for quiver representations.")
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("catalog", parents=[common], help="indecomposables with Hom/Ext tables")
    c.add_argument("--dot", default=None, help="write the irreducible-map graph to this DOT file ('-' for stdout)")
    sub.add_parser("filt", parents=[common], help="filtration closure of --x with lengths")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    sub.add_parser("semibricks", parents=[common], help="all semibricks, simple ones flagged")
    return ap


def _config(args) -> SessionConfig:
    backend = args.backend or ("derived" if args.window else "module")
    window = parse_window(args.window) if args.window else (-3, 2)
    return SessionConfig(
        spec=args.spec,
        p=args.p,
        backend=backend,
        window=window,
        caps=Caps(args.catalog_cap, args.ext_cap, args.hom_cap),
        filt_bound=args.bound,
        fmt="json" if args.json else "text",
        seed=args.seed,
        samples=args.samples,
    )


def _need_spec(cfg):
    if not cfg.spec:
        raise UsageError("--spec is required for this command")
    return cfg.category()


def _labels(cat, objs):
    return [cat.label(x) for x in sorted(objs)]


def cmd_catalog(cfg: SessionConfig, dot: str | None = None):
    cat = _need_spec(cfg).cat
    rep = io.catalog_report(cat)
    if dot:
        text = io.catalog_dot(cat, rep["irreducible"])
        if dot == "-":
            sys.stdout.write(text)
        else:
            Path(dot).write_text(text)
    lines = ["%d indecomposables over GF(%d)" % (len(cat.reps), cat.p)]
    for row in rep["indecomposables"]:
        lines.append("  %-6s %s" % (row["label"], " ".join(map(str, row["dims"]))))
    lines.append(io.table_text(cat.labels, rep["hom"], "Hom"))
    lines.append(io.table_text(cat.labels, rep["ext"], "Ext"))
    return rep, "\n".join(lines), 0


def cmd_filt(cfg: SessionConfig, x: str | None):
    cat = _need_spec(cfg)
    X = cat.parse_set(x or "")
    F = core.filt_closure(cat, X, cfg.filt_bound)
    members = {cat.label(M): F.length[M] for M in F.closure.members()} or {"0": 0}
    rep = {"X": _labels(cat, X), "members": members, "objects": len(F.length), "bound": F.bound, "max_length": F.max_length}
    text = "Filt(%s): %s" % (", ".join(rep["X"]) or "{}", ", ".join("%s:%d" % kv for kv in members.items()))
    return rep, text, 0


def cmd_semibricks(cfg: SessionConfig):
    cat = _need_spec(cfg)
    pool = cat.inner_universe() if cat.name == "derived" else cat.universe
    if len(pool) > 12:
        raise OverflowError("universe has %d indecomposables; semibrick enumeration is limited to 12" % len(pool))
    rows = []
    for X in core.semibricks(cat, pool):
        rows.append({"X": _labels(cat, X), "simple": core.is_simple_semibrick(cat, X, cfg.filt_bound)})
    rep = {"semibricks": rows, "count": len(rows), "simple_count": sum(r["simple"] for r in rows)}
    text = "\n".join("%s {%s}" % ("*" if r["simple"] else " ", ", ".join(r["X"])) for r in rows)
    text += "\n%d semibricks, %d simple (*)" % (rep["count"], rep["simple_count"])
    return rep, text, 0


def cmd_verify(cfg: SessionConfig, suite: str, x: str | None = None):
    if suite == "example-4.6":
        rep = suites.semibrick_example(cfg.p)
    elif suite == "example-5.9":
        rep = suites.derived_example(cfg.window, p=cfg.p)
    else:
        cat = _need_spec(cfg)
        X = cat.parse_set(x) if x else None
        if suite == "bijection":
            rep = suites.bijection(cat)
        elif suite == "cotorsion":
            if cat.name == "derived" and not X:
                raise UsageError("the cotorsion suite on a derived window needs --x")
            rep = suites.cotorsion(cat, X)
        elif suite == "lemmas":
            rep = suites.lemmas(cat, X)
        else:
            rep = suites.axioms(cat, cfg.samples, cfg.seed)
    code = suites.status(rep)
    word = {0: "PASS", 1: "VIOLATION", 3: "PASS (window skips)"}[code]
    lines = ["%s: %s" % (suite, word)]
    lines += ["  violation: %s" % v for v in rep.get("violations", [])]
    if rep.get("skipped_window"):
        lines.append("  skipped (outside inner window): %s" % ", ".join(rep["skipped_window"]))
    if "counts" in rep:
        lines.append("  %d simple semibricks <-> %d length wide subcategories" % tuple(rep["counts"]))
    return rep, "\n".join(lines), code


def run(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        cfg = _config(args)
        if args.command == "catalog":
            rep, text, code = cmd_catalog(cfg, args.dot)
        elif args.command == "filt":
            rep, text, code = cmd_filt(cfg, args.x)
        elif args.command == "semibricks":
            rep, text, code = cmd_semibricks(cfg)
        else:
            rep, text, code = cmd_verify(cfg, args.suite, args.x)
    except (UsageError, ConfigError, QuiverError, CatalogError, WindowError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print("extricat: error: %s" % msg, file=sys.stderr)
        return 2
    except (CapExceeded, OverflowError) as exc:
        print("extricat: guard: %s" % exc, file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(io.dumps(rep))
    else:
        print(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
