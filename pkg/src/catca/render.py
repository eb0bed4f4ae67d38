"""Frame extraction and output encodings (text grid, binary PGM, JSON)."""
from __future__ import annotations

import itertools
import json

from .categories import FinVect
from .groups import Group, ZPower, ball
from .serialize import alphabet_elem_to_json, elem_to_json


def window_cells(G: Group, radius: int | None = None, cells=None) -> list:
    """Cells shown in a frame, in canonical order.

    Over ``Z^d`` the window is the box ``[-r, r]^d`` (the bounding box of the
    ball), so 2-D frames come out rectangular.  Elsewhere it is ``ball(G, r)``.
    """
    if cells is not None:
        return sorted((G.coerce(c) for c in cells), key=G.sort_key)
    if radius is None or radius < 0:
        raise ValueError("window radius must be a natural number")
    if isinstance(G, ZPower):
        return list(itertools.product(range(-radius, radius + 1), repeat=G.d))
    return ball(G, radius).elements


def symbol(A, v) -> str:
    if isinstance(v, tuple):
        return "".join(str(x) for x in v)
    return str(v)


def intensity(A, v) -> int:
    """Gray level of a cell value: 0 for the first alphabet element, 255 for the last."""
    cat = A.category
    if isinstance(cat, FinVect):
        n = cat.p ** A.dim
        code = 0
        for x in v:
            code = code * cat.p + x
    else:
        n, code = cat.size(A), v
    return 255 * code // (n - 1) if n > 1 else 0


def text_frames(G: Group, A, cells: list, frames: list[list]) -> str:
    rows = []
    syms = [[symbol(A, v) for v in f] for f in frames]
    sep = "" if all(len(s) == 1 for f in syms for s in f) else " "
    if isinstance(G, ZPower) and G.d == 2:
        side = int(round(len(cells) ** 0.5))
        blocks = []
        for f in syms:
            blocks.append("\n".join(sep.join(f[i * side:(i + 1) * side]) for i in range(side)))
        return "\n\n".join(blocks) + "\n"
    for f in syms:
        rows.append(sep.join(f))
    return "\n".join(rows) + "\n"


def pgm(rows: list[list[int]]) -> bytes:
    """8-bit binary PGM (P5)."""
    h = len(rows)
    w = len(rows[0]) if h else 0
    body = bytes(v for r in rows for v in r)
    return b"P5\n%d %d\n255\n" % (w, h) + body


def pgm_frames(G: Group, A, cells: list, frames: list[list]) -> list[bytes]:
    """One space-time image (rows = steps), or one image per step over ``Z^2``."""
    levels = [[intensity(A, v) for v in f] for f in frames]
    if isinstance(G, ZPower) and G.d == 2:
        side = int(round(len(cells) ** 0.5))
        return [pgm([f[i * side:(i + 1) * side] for i in range(side)]) for f in levels]
    return [pgm(levels)]


def json_frames(G: Group, A, cells: list, frames: list[list]) -> str:
    doc = {"cells": [elem_to_json(G, g) for g in cells],
           "frames": [[alphabet_elem_to_json(A, v) for v in f] for f in frames]}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
