"""JSON and DOT serialisation.  Output is deterministic: sorted keys, fixed order."""

from __future__ import annotations

import json

import numpy as np

from . import linalg as la
from .category import Conflation
from .objects import ObjClass
from .reps import coordinates, hom_space


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def dumps(report) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=2) + "\n"


def dobject(cat, X: ObjClass) -> list:
    """``[["S3", -1], ...]``: one entry per summand, catalog label and shift."""
    return [[cat.cat.labels[i], s] for i, s in X]


def parse_dobject(cat, data) -> ObjClass:
    items = []
    for entry in data:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], int)):
            raise ValueError("object entries must be [label, shift] pairs, got %r" % (entry,))
        items.append((cat.cat.index(entry[0]), entry[1]))
    return ObjClass(items)


def conflation_json(cat, conf: Conflation) -> dict:
    return {
        "A": dobject(cat, conf.A),
        "B": dobject(cat, conf.B),
        "C": dobject(cat, conf.C),
        "class_coords": [int(c) for c in conf.coords],
    }


# -- catalog report and the irreducible-map graph ------------------------------------


def irreducible_dims(cat) -> np.ndarray:
    """``dim rad(X, Y) / rad²(X, Y)`` for catalog indecomposables (all bricks in Dynkin type)."""
    reps = cat.reps
    n = len(reps)
    p = cat.p
    bases = [[hom_space(reps[i], reps[j]) for j in range(n)] for i in range(n)]
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i == j or not bases[i][j]:
                continue
            cols = []
            for k in range(n):
                if k in (i, j):
                    continue
                for f in bases[i][k]:
                    for g in bases[k][j]:
                        cols.append(coordinates(g.compose(f), bases[i][j]))
            r = la.rank(np.stack(cols, axis=1), p) if cols else 0
            out[i, j] = len(bases[i][j]) - r
    return out


def catalog_report(cat) -> dict:
    irr = irreducible_dims(cat)
    return {
        "quiver": {"vertices": list(cat.quiver.vertices), "arrows": [[a.name, cat.quiver.vertices[a.source], cat.quiver.vertices[a.target]] for a in cat.quiver.arrows]},
        "p": cat.p,
        "indecomposables": [{"label": l, "dims": list(r.dims)} for l, r in zip(cat.labels, cat.reps)],
        "hom": cat.hom_dim.tolist(),
        "ext": cat.ext_dim.tolist(),
        "irreducible": irr.tolist(),
    }


def catalog_dot(cat, irr=None) -> str:
    """The irreducible-map graph in DOT; edge labels give multiplicities above one."""
    irr = irreducible_dims(cat) if irr is None else np.asarray(irr)
    lines = ["digraph catalog {"]
    for l, r in zip(cat.labels, cat.reps):
        lines.append('  "%s" [label="%s\\n%s"];' % (l, l, "".join(map(str, r.dims))))
    n = len(cat.labels)
    for i in range(n):
        for j in range(n):
            m = int(irr[i, j])
            if m == 1:
                lines.append('  "%s" -> "%s";' % (cat.labels[i], cat.labels[j]))
            elif m > 1:
                lines.append('  "%s" -> "%s" [label="%d"];' % (cat.labels[i], cat.labels[j], m))
    lines.append("}")
    return "\n".join(lines) + "\n"


def table_text(labels, rows, title) -> str:
    w = max(len(l) for l in labels) if labels else 1
    head = " " * (w + 3) + " ".join(l.rjust(w) for l in labels)
    body = ["  " + l.ljust(w) + " " + " ".join(str(v).rjust(w) for v in row) for l, row in zip(labels, rows)]
    return "\n".join([title, head] + body)
