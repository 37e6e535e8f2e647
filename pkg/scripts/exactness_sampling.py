"""Sampled long exact sequences on both backends across seeds."""

import argparse

from extricat import checks, suites
from extricat.catalog import build_catalog
from extricat.derived import DerivedCategory
from extricat.modcat import ModuleCategory

ap = argparse.ArgumentParser()
ap.add_argument("--samples", type=int, default=120)
ap.add_argument("--seeds", type=int, default=5)
args = ap.parse_args()

for name in ("a3_left", "a3_right", "d4"):
    q, p = suites.load_fixture(name)
    cat = build_catalog(q, p)
    backends = [ModuleCategory(cat)]
    if name != "d4":
        backends.append(DerivedCategory(cat, window=(-2, 2)))
    for B in backends:
        objs = B.inner_universe() if B.name == "derived" else None
        for seed in range(args.seeds):
            r = checks.sample_exactness(B, args.samples, seed, objects=objs)
            print("%-9s %-8s seed %d: %d checked, %d violations" % (name, B.name, seed, r["checked"], len(r["violations"])))
