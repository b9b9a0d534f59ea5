"""Partition diagrams: points on a horizontal row, blocks joined by lines above.

Blocks are stacked by span length (shorter spans lower), each one level above
every block whose span it overlaps; singletons get a bare tick.  The optional
second panel shows the twisted picture: points reordered by ``s_chi`` (left
points pulled to the left, right points reversed), where a bi-noncrossing
partition becomes noncrossing.
"""
from __future__ import annotations

from typing import Sequence

from .colorings import BIFREE, TwistFamily, as_coloring, untwist
from .partitions import Partition

SPACING = 4


def _levels(p: Partition) -> dict:
    spans = sorted((b for b in p.blocks if len(b) > 1), key=lambda b: (b[-1] - b[0], b[0]))
    level: dict = {}
    for b in spans:
        below = [level[c] for c in level if not (c[-1] < b[0] or c[0] > b[-1])]
        level[b] = 1 + max(below, default=0)
    return level


def _ascii_panel(p: Partition, faces: Sequence[str], labels: Sequence[int]) -> list[str]:
    n = p.n
    level = _levels(p)
    height = max(level.values(), default=0)
    width = SPACING * (n - 1) + 1
    rows = [[" "] * width for _ in range(height * 2 + 1)]
    # row 0 is the top; block at level h has its bar at row 2 * (height - h)
    for b, h in level.items():
        r = 2 * (height - h)
        for c in range(SPACING * (b[0] - 1), SPACING * (b[-1] - 1) + 1):
            if rows[r][c] == " ":
                rows[r][c] = "-"
        for i in b:
            c = SPACING * (i - 1)
            rows[r][c] = "+"
            for rr in range(r + 1, len(rows)):
                rows[rr][c] = "|"
    for b in p.blocks:
        if len(b) == 1:
            rows[-1][SPACING * (b[0] - 1)] = "|"
    lines = ["".join(r).rstrip() for r in rows]
    lines.append("".join(f.ljust(SPACING) for f in faces).rstrip())
    lines.append("".join(str(v).ljust(SPACING) for v in labels).rstrip())
    return lines


def draw_ascii(p: Partition, chi, twist: TwistFamily = BIFREE, twisted_panel: bool = False) -> str:
    chi = as_coloring(chi)
    if p.n != chi.n:
        raise ValueError(f"size mismatch: partition of {p.n} vs coloring of length {chi.n}")
    faces = [str(f) for f in chi.faces]
    out = [f"partition {p}", f"coloring {chi.key()}", ""]
    out += _ascii_panel(p, faces, range(1, p.n + 1))
    if twisted_panel:
        s = twist.perm(chi)
        q = untwist(p, chi, twist)
        out += ["", f"twisted by s_chi = ({' '.join(map(str, s))}): {q}", ""]
        out += _ascii_panel(q, [faces[v - 1] for v in s], s)
    return "\n".join(out) + "\n"


def _svg_panel(p: Partition, faces, labels, y0: int) -> tuple[list[str], int]:
    unit, tick, step = 20, 10, 10
    level = _levels(p)
    height = max(level.values(), default=0)
    base = y0 + tick + step * height
    parts = []
    for b, h in sorted(level.items()):
        y = base - tick - step * (h - 1)
        x1, x2 = unit * b[0], unit * b[-1]
        parts.append(f'<line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="black"/>')
        for i in b:
            parts.append(f'<line x1="{unit * i}" y1="{y}" x2="{unit * i}" y2="{base}" stroke="black"/>')
    for b in p.blocks:
        if len(b) == 1:
            x = unit * b[0]
            parts.append(f'<line x1="{x}" y1="{base - tick // 2}" x2="{x}" y2="{base}" stroke="black"/>')
    for i in range(1, p.n + 1):
        x = unit * i
        parts.append(f'<circle cx="{x}" cy="{base}" r="2" fill="black"/>')
        parts.append(f'<text x="{x}" y="{base + 14}" font-size="10" text-anchor="middle">{faces[i - 1]}</text>')
        parts.append(f'<text x="{x}" y="{base + 26}" font-size="8" text-anchor="middle">{labels[i - 1]}</text>')
    return parts, base + 30


def draw_svg(p: Partition, chi, twist: TwistFamily = BIFREE, twisted_panel: bool = False) -> str:
    chi = as_coloring(chi)
    if p.n != chi.n:
        raise ValueError(f"size mismatch: partition of {p.n} vs coloring of length {chi.n}")
    faces = [str(f) for f in chi.faces]
    parts, y = _svg_panel(p, faces, list(range(1, p.n + 1)), 0)
    if twisted_panel:
        s = twist.perm(chi)
        more, y = _svg_panel(untwist(p, chi, twist), [faces[v - 1] for v in s], list(s), y + 10)
        parts += more
    width = 20 * (p.n + 1)
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{y}" viewBox="0 0 {width} {y}">'
    return "\n".join([head] + ["  " + q for q in parts] + ["</svg>"]) + "\n"
