"""Simple semibricks versus length wide subcategories on the bundled quivers, scoped and ambient."""

import argparse

from extricat import core, suites
from extricat.catalog import build_catalog
from extricat.modcat import ModuleCategory

ap = argparse.ArgumentParser()
ap.add_argument("--specs", default="a1,a2,a3_left,a3_right")
ap.add_argument("--p", type=int, default=None)
args = ap.parse_args()

print("%-10s %8s %8s %8s %s" % ("quiver", "semibr.", "scoped", "ambient", "bijection"))
for name in args.specs.split(","):
    q, p = suites.load_fixture(name, args.p)
    M = ModuleCategory(build_catalog(q, p))
    scoped = core.verify_theorem_main(M)
    ambient = core.verify_theorem_main(M, mode="ambient")
    print("%-10s %8d %8d %8d %s" % (name, len(scoped["simple_semibricks"]), len(scoped["length_wide"]),
                                    len(ambient["length_wide"]), scoped["bijection_ok"]))
