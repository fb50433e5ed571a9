"""Integer partitions with interlacing predicates and particle-hole coordinates.

A partition is stored canonically as a tuple of weakly decreasing positive
integers with no trailing zeros; the empty partition is ``()``.  Indexing is
1-based through :func:`part`, which returns 0 beyond the stored length so that
interlacing inequalities can be checked for all rows at once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Partition = Tuple[int, ...]

_INF = float("inf")


def canon(parts: Iterable[int]) -> Partition:
    """Canonical form: drop zeros, check weak decrease."""
    out = tuple(int(v) for v in parts if v)
    if any(v < 0 for v in out):
        raise ValueError(f"negative part in {out}")
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise ValueError(f"parts not weakly decreasing: {out}")
    return out


def part(p: Sequence[int], i: int):
    """1-based part access; rows past the end are 0, row 0 is +infinity.

    The +infinity convention for row 0 makes first-row corner cases of the
    local growth rules come out right without special-casing.
    """
    if i < 1:
        return _INF
    return p[i - 1] if i <= len(p) else 0


def size(p: Partition) -> int:
    return sum(p)


def length(p: Partition) -> int:
    return len(p)


def conjugate(p: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not p:
        return ()
    return tuple(sum(1 for v in p if v >= i) for i in range(1, p[0] + 1))


def multiplicity(p: Partition, k: int) -> int:
    """Number of parts equal to k (k >= 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return sum(1 for v in p if v == k)


def interlaces_h(mu: Partition, lam: Partition) -> bool:
    """True iff lam_1 >= mu_1 >= lam_2 >= mu_2 >= ... (lam/mu a horizontal strip)."""
    n = max(len(mu), len(lam)) + 1
    return all(part(lam, i) >= part(mu, i) >= part(lam, i + 1) for i in range(1, n + 1))


def interlaces_v(mu: Partition, lam: Partition) -> bool:
    """True iff lam/mu is a vertical strip (conjugates interlace horizontally)."""
    return interlaces_h(conjugate(mu), conjugate(lam))


def maya_positions(lam: Partition, charge: int = 0, cutoff: int = 10) -> Tuple[Fraction, ...]:
    """First `cutoff` particle positions lam_i - i + 1/2 + charge, decreasing."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    half = Fraction(1, 2)
    return tuple(part(lam, i) - i + half + charge for i in range(1, cutoff + 1))


def maya_decode(positions: Sequence[Fraction]) -> Tuple[Partition, int]:
    """Invert :func:`maya_positions`.

    `positions` must be the leading particle positions of some (lam, charge),
    listed in decreasing order and long enough that the tail below the last
    listed position is fully occupied (always true for cutoff >= len(lam) + 1).
    """
    pos = [Fraction(q) for q in positions]
    if any(pos[i] <= pos[i + 1] for i in range(len(pos) - 1)):
        raise ValueError("positions must be strictly decreasing")
    if any((q - Fraction(1, 2)).denominator != 1 for q in pos):
        raise ValueError("positions must be half-integers")
    # Every site below pos[-1] is a particle, so the charge (particles above 0
    # minus holes below 0) is computable from the listed segment alone.
    particles = set(pos)
    lowest = pos[-1]
    n_above = sum(1 for q in pos if q > 0)
    if lowest > 0:
        n_above += int(lowest - Fraction(1, 2))  # implicit particles in (0, lowest)
        holes_below = 0
    else:
        holes_below = 0
        q = -Fraction(1, 2)
        while q > lowest:
            if q not in particles:
                holes_below += 1
            q -= 1
    charge = n_above - holes_below
    lam = []
    for i, q in enumerate(pos, start=1):
        v = q - Fraction(1, 2) - charge + i
        if v.denominator != 1 or v < 0:
            raise ValueError(f"positions do not decode to a partition: {positions}")
        lam.append(int(v))
    return canon(lam), charge


def hole_positions(lam: Partition, charge: int = 0, cutoff: int = 10) -> Tuple[Fraction, ...]:
    """First `cutoff` hole positions (complement of the particle set), increasing.

    Holes sit at charge + j - 1/2 - lam'_j for j = 1, 2, ...; they increase and
    are eventually consecutive once j exceeds lam_1.
    """
    lc = conjugate(lam)
    half = Fraction(1, 2)
    return tuple(charge + j - half - part(lc, j) for j in range(1, cutoff + 1))


def box_partitions(max_part: int, max_len: int) -> list:
    """All partitions with parts <= max_part and at most max_len parts."""
    out = []

    def rec(prefix, mx):
        out.append(tuple(prefix))
        if len(prefix) < max_len:
            for v in range(1, mx + 1):
                prefix.append(v)
                rec(prefix, v)
                prefix.pop()

    rec([], max_part)
    return out


def partitions_of_size_at_most(max_size: int) -> list:
    """All partitions of total size <= max_size."""
    out = []

    def rec(prefix, mx, budget):
        out.append(tuple(prefix))
        for v in range(1, min(mx, budget) + 1):
            prefix.append(v)
            rec(prefix, v, budget - v)
            prefix.pop()

    rec([], max_size, max_size)
    return out


def from_json(obj) -> Partition:
    """Parse a partition from a JSON array of weakly decreasing integers."""
    return canon(obj)
