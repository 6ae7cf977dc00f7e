"""SVG drawings of configurations.

Display only: coordinates are converted to floats here and nothing drawn
feeds back into a verdict.  Roles are filled black (``P``, ``B``), gray
(``G``) and white (``R``).  For circle configurations, points carrying the
generic rotation are drawn larger than the others, and points of ``R`` (chord
directions) sit on an outer ring at their direction angle.
"""

from __future__ import annotations

import math
from typing import Iterable

from .conic_line import DEFAULT_THETA, angle_embedding, class_direction
from .constructions import AngleConfig
from .errors import DegenerateInputError, UsageError
from .plane import PointConfig, determined_lines

SIZE = 480
FILL = {"P": "black", "B": "black", "G": "#888888", "R": "white"}
SMALL, LARGE = 5.0, 9.0


def _header(size: int = SIZE) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]


def _disc(x: float, y: float, r: float, role: str) -> str:
    return (
        f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{FILL[role]}" '
        f'stroke="black" stroke-width="1" class="role-{role}"/>'
    )


def _segment(x1, y1, x2, y2, colour="#bbbbbb", width=0.8) -> str:
    return (
        f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
        f'stroke="{colour}" stroke-width="{width}"/>'
    )


def angle_svg(cfg: AngleConfig, theta: float = DEFAULT_THETA, size: int = SIZE) -> str:
    roles = [(k, v) for k, v in cfg.roles.items() if v]
    if not roles:
        raise DegenerateInputError("nothing to draw")
    c = size / 2
    rad = size * 0.34
    ring = size * 0.45

    def pos(a):
        x, y = angle_embedding(a, theta)
        return c + rad * x, c - rad * y

    out = _header(size)
    out.append(f'<circle cx="{c}" cy="{c}" r="{rad}" fill="none" stroke="black" stroke-width="1"/>')
    if cfg.bipartite:
        pairs = [(b, g) for b in cfg.roles["B"] for g in cfg.roles["G"]]
    else:
        pts = sorted(cfg.roles["P"], key=lambda a: (a.c, a.q))
        pairs = [(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]
    for a, b in pairs:
        out.append(_segment(*pos(a), *pos(b)))
    for cls in sorted(cfg.R, key=lambda a: (a.c, a.q)):
        dx, dy = class_direction(cls, theta)
        out.append(_disc(c + ring * dx, c - ring * dy, SMALL, "R"))
    for role, pts in roles:
        for a in sorted(pts, key=lambda a: (a.c, a.q)):
            out.append(_disc(*pos(a), LARGE if a.c else SMALL, role))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def planar_svg(cfg: PointConfig, size: int = SIZE) -> str:
    if cfg.field.characteristic != 0:
        raise UsageError("only rational configurations can be drawn")
    finite = [(k, p) for k, pts in cfg.roles.items() for p in pts if not p.at_infinity]
    infinite = [(k, p) for k, pts in cfg.roles.items() for p in pts if p.at_infinity]
    if not finite and not infinite:
        raise DegenerateInputError("nothing to draw")
    xy = [tuple(float(v) for v in p.to_affine()) for _, p in finite] or [(0.0, 0.0)]
    xs, ys = [x for x, _ in xy], [y for _, y in xy]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    scale = size * 0.6 / span
    c = size / 2

    def to_screen(x, y):
        return c + scale * (x - cx), c - scale * (y - cy)

    out = _header(size)
    blue = cfg.roles.get("B", []) + cfg.roles.get("G", []) if cfg.bipartite else cfg.roles.get("P", [])
    if len(blue) >= 2:
        reach = size  # long enough to leave the canvas
        for line in sorted(determined_lines(blue), key=repr):
            a, b, cc = (float(v) for v in line.coords)
            n2 = a * a + b * b
            x0, y0 = -a * cc / n2, -b * cc / n2
            dx, dy = -b / math.sqrt(n2), a / math.sqrt(n2)
            sx, sy = to_screen(x0, y0)
            out.append(_segment(sx - reach * dx, sy + reach * dy, sx + reach * dx, sy - reach * dy))
    ring = size * 0.45
    for role, p in infinite:
        X, Y = float(p.X), float(p.Y)
        norm = math.hypot(X, Y)
        out.append(_disc(c + ring * X / norm, c - ring * Y / norm, SMALL, role))
    for (role, _), (x, y) in zip(finite, xy):
        out.append(_disc(*to_screen(x, y), SMALL + 1, role))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(cfg, theta: float = DEFAULT_THETA) -> str:
    if isinstance(cfg, AngleConfig):
        return angle_svg(cfg, theta)
    if isinstance(cfg, PointConfig):
        return planar_svg(cfg)
    raise UsageError("plotting needs a planar or angle configuration")


def role_counts(svg: str, roles: Iterable[str] = ("P", "B", "G", "R")) -> dict[str, int]:
    """Number of discs per role in an SVG produced here."""
    return {r: svg.count(f'class="role-{r}"') for r in roles}
