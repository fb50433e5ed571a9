"""Deterministic SVG rendering of a covering, with the edge set derived
from the partition sequence.

Reconstruction per column: the particle-hole diagrams of the two bounding odd
lines determine every present edge uniquely.  A hole means the odd vertex is
matched rightward, a particle leftward; scanning the column in the direction
the diagonals lean and carrying one bit (whether the previous even vertex is
still unmatched, in which case the diagonal into the current level is forced)
resolves each even vertex exactly once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Set, Tuple

from .graphs import CoveringState, RailYardGraph, diagonal_count, validate
from .partitions import Partition, maya_positions, part

Edge = Tuple[Tuple[float, float], Tuple[float, float], str]  # (p1, p2, kind)


def _particles(lam: Partition, charge: int, lo: int, hi: int) -> Set[Fraction]:
    """Particle positions of (lam, charge) within [lo, hi] (half-integer levels)."""
    need = len(lam) + max(0, charge - lo) + (hi - lo) + 4
    return {q for q in maya_positions(lam, charge, need) if lo <= q <= hi}


def column_edges(
    g: RailYardGraph, s: CoveringState, i: int, lo: int, hi: int
) -> List[Edge]:
    """Present edges incident to even column 2i, for levels in [lo, hi]."""
    a, b = g.a_at(i), g.b_at(i)
    left = _particles(s.seq[i - g.l], s.charge, lo - 2, hi + 2)
    right = _particles(s.seq[i - g.l + 1], s.charge, lo - 2, hi + 2)
    lev = [Fraction(2 * k + 1, 2) for k in range(lo - 1, hi + 1)]
    if b == "-":
        lev = lev[::-1]
    edges: List[Edge] = []
    x_even = 2 * i
    avail_y = None  # level of the pending unmatched even vertex
    up = 1 if b == "+" else -1
    for y in lev:
        l_hole = y not in left
        r_part = y in right
        matched_here = False
        if avail_y is not None:
            if a == "L":
                if not l_hole:
                    raise ValueError(f"column {i}: forced diagonal meets a particle at {y}")
                edges.append(((x_even, float(avail_y)), (x_even - 1, float(y)), "diag"))
                matched_here = "left"
            else:
                if not r_part:
                    raise ValueError(f"column {i}: forced diagonal meets a hole at {y}")
                edges.append(((x_even, float(avail_y)), (x_even + 1, float(y)), "diag"))
                matched_here = "right"
            avail_y = None
        if a == "L":
            if r_part:
                if l_hole and matched_here != "left":
                    raise ValueError(f"column {i}: conflicting matches at level {y}")
                edges.append(((x_even, float(y)), (x_even + 1, float(y)), "horiz"))
            elif l_hole and matched_here != "left":
                edges.append(((x_even - 1, float(y)), (x_even, float(y)), "horiz"))
            else:
                avail_y = y
        else:
            if l_hole:
                if r_part and matched_here != "right":
                    raise ValueError(f"column {i}: conflicting matches at level {y}")
                edges.append(((x_even - 1, float(y)), (x_even, float(y)), "horiz"))
            elif r_part and matched_here != "right":
                edges.append(((x_even, float(y)), (x_even + 1, float(y)), "horiz"))
            else:
                avail_y = y
    return edges


def covering_edges(
    g: RailYardGraph, s: CoveringState, lo: int, hi: int
) -> List[Edge]:
    """All present edges of the covering with levels inside [lo, hi]."""
    edges: List[Edge] = []
    for i in g.columns():
        for e in column_edges(g, s, i, lo, hi):
            if lo - 1 <= e[0][1] <= hi + 1 and lo - 1 <= e[1][1] <= hi + 1:
                edges.append(e)
    # consistency: per-column diagonal counts match the size differences
    for i in g.columns():
        got = sum(
            1
            for e in edges
            if e[2] == "diag" and (e[0][0] == 2 * i or e[1][0] == 2 * i)
            and lo <= min(e[0][1], e[1][1]) and max(e[0][1], e[1][1]) <= hi
        )
        want = diagonal_count(g, s, i)
        if got != want and _support_inside(s, i - g.l, lo, hi):
            raise ValueError(f"column {i}: drew {got} diagonals, expected {want}")
    return edges


def _support_inside(s: CoveringState, idx: int, lo: int, hi: int) -> bool:
    lam1 = max(part(s.seq[idx], 1), part(s.seq[idx + 1], 1))
    ell = max(len(s.seq[idx]), len(s.seq[idx + 1]))
    return lo < -ell - abs(s.charge) - 1 and hi > lam1 + abs(s.charge) + 1


def render_svg(
    g: RailYardGraph, s: CoveringState, window: Tuple[int, int] = (-8, 8), scale: int = 24
) -> str:
    """Deterministic SVG for the covering clipped to levels window=[lo, hi]."""
    if not validate(g, s):
        raise ValueError("cannot render an invalid covering")
    lo, hi = window
    edges = covering_edges(g, s, lo, hi)
    x0, x1 = 2 * g.l - 1, 2 * g.r + 1

    def sx(x):
        return round((x - x0 + 1) * scale, 2)

    def sy(y):
        return round((hi + 1 - y) * scale, 2)

    width = sx(x1 + 1)
    height = sy(lo - 1)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for (xa, ya), (xb, yb), kind in sorted(edges):
        style = 'stroke="black" stroke-width="2.5"' if kind == "horiz" else (
            'stroke="firebrick" stroke-width="2.5"'
        )
        out.append(
            f'<line x1="{sx(xa)}" y1="{sy(ya)}" x2="{sx(xb)}" y2="{sy(yb)}" {style}/>'
        )
    for x in range(x0, x1 + 1):
        fill = "indianred" if x % 2 else "steelblue"
        k = lo
        while k < hi:
            y = k + 0.5
            out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="3" fill="{fill}"/>')
            k += 1
    out.append("</svg>")
    return "\n".join(out)
