"""Top-row simple-minded system and the two torsion pairs on 1 -> 2 -> 3, for a chosen window."""

import argparse

from extricat import io, suites
from extricat.config import parse_window

ap = argparse.ArgumentParser()
ap.add_argument("--window", default="-3:2")
ap.add_argument("--inner", default=None)
ap.add_argument("--p", type=int, default=None)
args = ap.parse_args()

inner = parse_window(args.inner) if args.inner else None
rep = suites.derived_example(parse_window(args.window), inner, p=args.p)
print(io.dumps(rep), end="")
