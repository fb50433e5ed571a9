"""Partition functions for free/empty boundaries plus the enumeration oracle.

The closed forms are finite products (``z_pure``, ``z_free_empty``, both exact
in rational arithmetic) and a triple infinite product for the doubly free
boundary (``z_free_free``, truncated with a rigorous tail bound).  The oracle
``brute_force_z`` sums covering weights over a bounded configuration box and
is the ground truth every closed form is tested against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .graphs import RailYardGraph
from .partitions import Partition, box_partitions, part, size


class DivergenceError(ArithmeticError):
    """A factor of a closed-form product is at or past its pole."""


@dataclass(frozen=True)
class EnumerationBound:
    max_part: int
    max_len: int

    def __post_init__(self):
        if self.max_part < 1 or self.max_len < 1:
            raise ValueError("bounds must be >= 1")


def z_pair(g: RailYardGraph, i: int, j: int):
    """Interaction factor of a (+,-) column pair: 1 + x_i x_j across letters,
    1/(1 - x_i x_j) within a letter."""
    if not (g.l <= i < j <= g.r):
        raise ValueError("need l <= i < j <= r")
    if g.b_at(i) != "+" or g.b_at(j) != "-":
        raise ValueError("z_pair needs b_i = + and b_j = -")
    xx = g.x_at(i) * g.x_at(j)
    if g.a_at(i) != g.a_at(j):
        return 1 + xx
    if xx >= 1:
        raise DivergenceError(f"columns ({i},{j}): x_i x_j = {xx} >= 1")
    return 1 / (1 - xx)


def z_pure(g: RailYardGraph):
    """Partition function with empty boundary partitions on both sides."""
    z = Fraction(1)
    for i in g.columns():
        for j in range(i + 1, g.r + 1):
            if g.b_at(i) == "+" and g.b_at(j) == "-":
                z *= z_pair(g, i, j)
    return z


def z_free_empty(g: RailYardGraph):
    """Free left boundary (fugacity u), empty right boundary.  Exact."""
    u = g.u
    z = z_pure(g)
    for i in g.columns():
        if g.b_at(i) == "-":
            c = u * g.x_at(i)
            if c >= 1:
                raise DivergenceError(f"column {i}: u x_i = {c} >= 1")
            z /= 1 - c
    for i in g.columns():
        for j in range(i + 1, g.r + 1):
            if g.b_at(i) == "-" and g.b_at(j) == "-":
                c = u * u * g.x_at(i) * g.x_at(j)
                if g.a_at(i) != g.a_at(j):
                    z *= 1 + c
                else:
                    if c >= 1:
                        raise DivergenceError(f"columns ({i},{j}): u^2 x_i x_j >= 1")
                    z /= 1 - c
    return z


def _log1p_abs_bound(c: float) -> float:
    """Upper bound on |log(1 +- c)| for 0 <= c < 1."""
    return c / (1.0 - c)


def z_free_free(g: RailYardGraph, n_terms: int = 30) -> Tuple[float, float]:
    """Doubly free boundary partition function, truncated at ``n_terms``.

    Returns (value, tail_bound) where tail_bound rigorously dominates the
    error from the omitted n > n_terms factors: each omitted factor is
    1 + O((uv)^n), so the omitted log-mass is geometrically summable.

    The three factor families per winding depth n are

      * per column:    1/(1 - u^{n-1} v^n x_i)  (b_i = +)
                       1/(1 - u^n v^{n-1} x_i)  (b_i = -)
      * (+,-) pairs, both orders: 1/(1 - u^n v^n) and, per ordered pair,
        (1 + u^{2n} v^{2n} x_i x_j) across letters or its reciprocal-pole
        variant 1/(1 - ...) within a letter
      * same-sign pairs i < j: arguments u^{2n-2} v^{2n} x_i x_j for (+,+)
        and u^{2n} v^{2n-2} x_i x_j for (-,-), numerators across letters and
        denominators within a letter.
    """
    u, v = float(g.u), float(g.v)
    uv = u * v
    if uv >= 1:
        raise DivergenceError("u v >= 1")
    x = [float(xi) for xi in g.x]
    a, b = g.a, g.b
    n_cols = g.ncols
    value = float(z_pure(g))
    for n in range(1, n_terms + 1):
        for i in range(n_cols):
            c = (u ** (n - 1)) * (v**n) * x[i] if b[i] == "+" else (u**n) * (v ** (n - 1)) * x[i]
            if c >= 1:
                raise DivergenceError(
                    f"single-column factor diverges: column {g.l + i}, depth n={n}, c={c}"
                )
            value /= 1 - c
        c = uv**n
        value /= 1 - c
        for i in range(n_cols):
            for j in range(n_cols):
                if b[i] == "+" and b[j] == "-":
                    c = uv ** (2 * n) * x[i] * x[j]
                    if a[i] != a[j]:
                        value *= 1 + c
                    else:
                        if c >= 1:
                            raise DivergenceError(
                                f"(+,-) pair factor diverges: ({g.l+i},{g.l+j}), n={n}"
                            )
                        value /= 1 - c
        for i in range(n_cols):
            for j in range(i + 1, n_cols):
                if b[i] == b[j]:
                    if b[i] == "+":
                        c = u ** (2 * n - 2) * v ** (2 * n) * x[i] * x[j]
                    else:
                        c = u ** (2 * n) * v ** (2 * n - 2) * x[i] * x[j]
                    if a[i] != a[j]:
                        value *= 1 + c
                    else:
                        if c >= 1:
                            raise DivergenceError(
                                f"same-sign pair factor diverges: ({g.l+i},{g.l+j}), n={n}"
                            )
                        value /= 1 - c
    # tail bound: sum of |log factor| over all omitted n > n_terms
    T = n_terms
    B = 0.0
    if uv > 0:
        for i in range(n_cols):
            c0 = (u**T) * (v ** (T + 1)) * x[i] if b[i] == "+" else (u ** (T + 1)) * (v**T) * x[i]
            B += _log1p_abs_bound(c0) / (1 - uv)
        B += _log1p_abs_bound(uv ** (T + 1)) / (1 - uv)
        for i in range(n_cols):
            for j in range(n_cols):
                if b[i] == "+" and b[j] == "-":
                    c0 = uv ** (2 * (T + 1)) * x[i] * x[j]
                    B += _log1p_abs_bound(c0) / (1 - uv**2)
        for i in range(n_cols):
            for j in range(i + 1, n_cols):
                if b[i] == b[j]:
                    if b[i] == "+":
                        c0 = u ** (2 * T) * v ** (2 * T + 2) * x[i] * x[j]
                    else:
                        c0 = u ** (2 * T + 2) * v ** (2 * T) * x[i] * x[j]
                    B += _log1p_abs_bound(c0) / (1 - uv**2)
    tail_bound = value * math.expm1(B)
    return value, tail_bound


# ---------------------------------------------------------------------------
# enumeration oracle
# ---------------------------------------------------------------------------


def _h_successors(lam: Partition, mp: int, ml: int) -> List[Partition]:
    """All mu in box(mp, ml) with lam < mu (mu/lam a horizontal strip)."""
    rows = min(ml, len(lam) + 1)
    out = []

    def rec(i, prefix, prev):
        if i > rows:
            out.append(tuple(v for v in prefix if v))
            return
        lo = int(part(lam, i))
        hi = min(mp, int(part(lam, i - 1)) if i > 1 else mp, prev)
        for v in range(hi, lo - 1, -1):
            prefix.append(v)
            rec(i + 1, prefix, v)
            prefix.pop()
            if v == 0:
                break

    rec(1, [], mp)
    return sorted(set(out))


def _v_successors(lam: Partition, mp: int, ml: int) -> List[Partition]:
    """All mu in box(mp, ml) with lam <' mu (mu/lam a vertical strip).

    One cell may be added per row, including rows below the last row of lam,
    so the result can be up to ml rows long.
    """
    out = []

    def rec(i, prefix, prev):
        if i > ml or (part(lam, i) == 0 and prev == 0):
            out.append(tuple(v for v in prefix if v))
            return
        base = part(lam, i)
        for add in (0, 1):
            v = base + add
            if v <= min(prev, mp):
                prefix.append(v)
                rec(i + 1, prefix, v)
                prefix.pop()

    rec(1, [], mp)
    return sorted(set(out))


def _h_predecessors(lam: Partition, mp: int, ml: int) -> List[Partition]:
    """All mu with mu < lam (lam/mu a horizontal strip); the box is implicit."""
    choices = [range(int(part(lam, i + 1)), int(part(lam, i)) + 1) for i in range(1, len(lam) + 1)]
    out = set()
    for combo in itertools.product(*choices):
        out.add(tuple(v for v in combo if v))
    return sorted(out)


def _v_predecessors(lam: Partition, mp: int, ml: int) -> List[Partition]:
    """All mu with mu <' lam: one cell removable per row, mu still a partition."""
    out = set()

    def rec(i, prefix):
        if i > len(lam):
            out.add(tuple(v for v in prefix if v))
            return
        prev = prefix[-1] if prefix else 10**9
        for sub in (0, 1):
            v = lam[i - 1] - sub
            if 0 <= v <= prev:
                prefix.append(v)
                rec(i + 1, prefix)
                prefix.pop()

    rec(1, [])
    return sorted(out)


class _BoxTransfer:
    """Cached transfer structure over a partition box for the four relations."""

    _cache: Dict[Tuple[int, int], "_BoxTransfer"] = {}

    def __init__(self, mp: int, ml: int):
        self.mp, self.ml = mp, ml
        self.states = box_partitions(mp, ml)
        self.index = {p: i for i, p in enumerate(self.states)}
        self.sizes = [size(p) for p in self.states]
        self._succ: Dict[str, List[List[int]]] = {}
        self._coo: Dict[str, tuple] = {}

    @classmethod
    def get(cls, bound: EnumerationBound) -> "_BoxTransfer":
        key = (bound.max_part, bound.max_len)
        if key not in cls._cache:
            cls._cache[key] = cls(*key)
        return cls._cache[key]

    def successors(self, letter: str) -> List[List[int]]:
        """succ[i] = indices of mu with states[i] REL mu for the growing relation."""
        if letter not in self._succ:
            gen = _h_successors if letter == "L" else _v_successors
            self._succ[letter] = [
                [self.index[m] for m in gen(lam, self.mp, self.ml)] for lam in self.states
            ]
        return self._succ[letter]

    def predecessors(self, letter: str) -> List[List[int]]:
        key = "pred" + letter
        if key not in self._succ:
            pred: List[List[int]] = [[] for _ in self.states]
            for i, outs in enumerate(self.successors(letter)):
                for j in outs:
                    pred[j].append(i)
            self._succ[key] = pred
        return self._succ[key]

    def grow_coo(self, letter: str):
        """(src, dst, ddiff) arrays of the growing relation, for sparse transfer."""
        if letter not in self._coo:
            import numpy as np

            succ = self.successors(letter)
            src = np.fromiter(
                (i for i, outs in enumerate(succ) for _ in outs), dtype=np.int32
            )
            dst = np.fromiter(
                (j for outs in succ for j in outs), dtype=np.int32
            )
            sizes = np.asarray(self.sizes, dtype=np.int64)
            self._coo[letter] = (src, dst, sizes[dst] - sizes[src])
        return self._coo[letter]


def brute_force_z(
    g: RailYardGraph, bound: EnumerationBound, exact: bool = True
) -> Tuple[object, int]:
    """Sum of covering weights over all states inside the box, by transfer sums.

    Returns (partial_sum, configs).  ``exact=True`` uses Fractions throughout
    (slow but exact); ``exact=False`` runs the same transfer in float sparse
    algebra, which is what large acceptance bounds use.
    """
    if not exact:
        return _brute_force_z_float(g, bound)
    tr = _BoxTransfer.get(bound)
    one = Fraction(1) if exact else 1.0
    u = g.u if exact else float(g.u)
    v = g.v if exact else float(g.v)
    vals = [one * u ** s for s in tr.sizes]
    counts = [1 if (g.u > 0 or s == 0) else 0 for s in tr.sizes]
    for i in g.columns():
        letter, sign = g.a_at(i), g.b_at(i)
        xi = g.x_at(i) if exact else float(g.x_at(i))
        new_vals = [None] * len(tr.states)
        new_counts = [0] * len(tr.states)
        zero = Fraction(0) if exact else 0.0
        for idx in range(len(tr.states)):
            new_vals[idx] = zero
        if sign == "+":
            succ = tr.successors(letter)
            for src, outs in enumerate(succ):
                w = vals[src]
                c = counts[src]
                s_src = tr.sizes[src]
                for dst in outs:
                    new_vals[dst] += w * xi ** (tr.sizes[dst] - s_src)
                    new_counts[dst] += c
        else:
            # shrink: new[mu] = sum over lam with mu < lam of old[lam] x^{|lam|-|mu|},
            # and the growing successors of mu are exactly those lam
            succ = tr.successors(letter)
            for dst_mu, srcs in enumerate(succ):
                acc = zero
                cnt = 0
                s_dst = tr.sizes[dst_mu]
                for src in srcs:
                    acc += vals[src] * xi ** (tr.sizes[src] - s_dst)
                    cnt += counts[src]
                new_vals[dst_mu] = acc
                new_counts[dst_mu] = cnt
        vals, counts = new_vals, new_counts
    total = sum(w * v ** s for w, s in zip(vals, tr.sizes))
    nconfig = sum(c for c, s in zip(counts, tr.sizes) if g.v > 0 or s == 0)
    return total, nconfig


def _brute_force_z_float(g: RailYardGraph, bound: EnumerationBound) -> Tuple[float, int]:
    """Float transfer over the box in sparse algebra; configs counted alongside."""
    import numpy as np
    from scipy.sparse import csr_matrix

    tr = _BoxTransfer.get(bound)
    n = len(tr.states)
    sizes = np.asarray(tr.sizes, dtype=np.float64)
    u, v = float(g.u), float(g.v)
    with np.errstate(divide="ignore"):
        vals = np.where(sizes == 0, 1.0, u**sizes)
    counts = np.ones(n) if u > 0 else (sizes == 0).astype(float)
    for i in g.columns():
        letter, sign = g.a_at(i), g.b_at(i)
        xi = float(g.x_at(i))
        src, dst, dd = tr.grow_coo(letter)
        data = xi ** dd.astype(np.float64)
        if sign == "+":
            M = csr_matrix((data, (src, dst)), shape=(n, n))
            ones = csr_matrix((np.ones_like(data), (src, dst)), shape=(n, n))
        else:
            M = csr_matrix((data, (dst, src)), shape=(n, n))
            ones = csr_matrix((np.ones_like(data), (dst, src)), shape=(n, n))
        vals = vals @ M
        counts = counts @ ones
    w_end = np.where(sizes == 0, 1.0, v**sizes)
    total = float(vals @ w_end)
    mask = np.ones(n) if v > 0 else (sizes == 0).astype(float)
    return total, int(round(counts @ mask))


def exact_distribution(
    g: RailYardGraph,
    bound: EnumerationBound,
    end_max_part: int | None = None,
    min_weight: float = 1e-16,
) -> Dict[Tuple[Partition, ...], float]:
    """Normalized covering weights over the bounded configuration set.

    ``end_max_part`` additionally restricts the first parts of the two
    boundary partitions (the conditioning the sweep sampler targets); interior
    partitions range over the whole box.  Neighbour sets are generated on the
    fly, so only the reachable part of the box is ever touched.

    When every weight parameter is at most 1, partial products only decrease,
    so branches below ``min_weight`` are dropped; this discards at most that
    much unnormalized mass per configuration.  Pass 0 to disable.
    """
    mp, ml = bound.max_part, bound.max_len
    u, v = float(g.u), float(g.v)
    prune = min_weight if (
        min_weight > 0 and u <= 1 and v <= 1 and all(x <= 1 for x in g.x)
    ) else 0.0
    out: Dict[Tuple[Partition, ...], float] = {}
    moves: Dict[Tuple[str, str, Partition], list] = {}

    def neighbours(letter: str, sign: str, lam: Partition) -> list:
        key = (letter, sign, lam)
        if key not in moves:
            if sign == "+":
                gen = _h_successors if letter == "L" else _v_successors
            else:
                gen = _h_predecessors if letter == "L" else _v_predecessors
            moves[key] = [m for m in gen(lam, mp, ml) if len(m) <= ml and part(m, 1) <= mp]
        return moves[key]

    def ok_end(p: Partition) -> bool:
        return end_max_part is None or part(p, 1) <= end_max_part

    def rec(i: int, seq: List[Partition], w: float):
        if w == 0.0 or w < prune:
            return
        if i > g.r:
            if ok_end(seq[-1]):
                w_fin = w * (v ** size(seq[-1]) if size(seq[-1]) else 1.0)
                if w_fin > 0.0:
                    out[tuple(seq)] = w_fin
            return
        xi = float(g.x_at(i))
        cur = seq[-1]
        for mu in neighbours(g.a_at(i), g.b_at(i), cur):
            d = size(mu) - size(cur) if g.b_at(i) == "+" else size(cur) - size(mu)
            rec(i + 1, seq + [mu], w * xi**d)

    start_mp = mp if end_max_part is None else min(mp, end_max_part)
    for lam in box_partitions(start_mp, ml):
        rec(g.l, [lam], u ** size(lam) if size(lam) else 1.0)
    Z = sum(out.values())
    if Z <= 0:
        raise ValueError("empty configuration set")
    return {k: w / Z for k, w in out.items()}
