"""Scaling-limit numerics: generating factors, root isolation, limit shape.

Everything is driven by a factored rational representation of the product

    GF(w) = g_chi(w) * prod_{k=1..K} f_uvk(w),

whose zeros and poles are explicit exponential-lattice points.  The local
density at (chi, kappa) is read off the unique upper-half-plane root w+ of
GF(w) = e^{-n kappa} (2 - 2 arg(w+)/pi in the liquid region; 0 or 2 outside),
and the frozen boundary is the locus where that root collides onto the real
axis, i.e. the solution set of GF(w) = e^{-n kappa}, (log GF)'(w) = 0 over
real w.

Numerical strategy: root *counting* uses a polynomial cleared from a
compressed catalog (factor pairs far outside the physical annulus contribute
less than roundoff and are dropped so the companion matrix stays well
conditioned); every reported root is then polished by Newton iteration on the
full uncompressed evaluation, and residuals are always measured against the
full product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq


class AssumptionViolation(RuntimeError):
    """The root structure contradicts the at-most-one-conjugate-pair regime."""


class RefineContourError(RuntimeError):
    """Branch tracking detected a log jump too large for the discretization."""


@dataclass(frozen=True)
class AsymptoticParams:
    """Periodic-limit data.

    n: period of the letter pattern; m: number of macroscopic segments with
    transition points V[0] < ... < V[m]; tau[j-1] > 0 the weight of residue
    class j; a_pattern the letters per residue; b_patterns[p-1] the signs per
    residue on segment p; u, v the boundary fugacities (u v < 1); beta the
    exponential mesh rate (stored for bookkeeping, the density formula does
    not involve it); K the truncation depth of the product over k.
    """

    n: int
    m: int
    V: Tuple[float, ...]
    tau: Tuple[float, ...]
    a_pattern: str
    b_patterns: Tuple[str, ...]
    u: float
    v: float
    beta: float = 1.0
    K: int = 10

    def __post_init__(self):
        if len(self.V) != self.m + 1 or any(
            self.V[i] >= self.V[i + 1] for i in range(self.m)
        ):
            raise ValueError("V must be strictly increasing with m+1 entries")
        if len(self.tau) != self.n or any(t <= 0 for t in self.tau):
            raise ValueError("tau must hold n positive reals")
        if len(self.a_pattern) != self.n or any(c not in "LR" for c in self.a_pattern):
            raise ValueError("a_pattern must be n letters over {L,R}")
        if len(self.b_patterns) != self.m or any(
            len(bp) != self.n or any(c not in "+-" for c in bp) for bp in self.b_patterns
        ):
            raise ValueError("b_patterns must hold m sign strings of length n")
        if not (0 <= self.u and 0 <= self.v and self.u * self.v < 1):
            raise ValueError("need u, v >= 0 with u v < 1")
        if self.K < 0:
            raise ValueError("K must be >= 0")

    @staticmethod
    def from_dict(cfg: dict) -> "AsymptoticParams":
        return AsymptoticParams(
            n=int(cfg["n"]),
            m=int(cfg["m"]),
            V=tuple(float(x) for x in cfg["V"]),
            tau=tuple(float(x) for x in cfg["tau"]),
            a_pattern=str(cfg["a_pattern"]),
            b_patterns=tuple(str(s) for s in cfg["b_patterns"]),
            u=float(cfg["u"]),
            v=float(cfg["v"]),
            beta=float(cfg.get("beta", 1.0)),
            K=int(cfg.get("K", 10)),
        )


def indicator(params: AsymptoticParams, j: int, p: int, side: str, typ: int) -> bool:
    """Whether residue j contributes to the (side, typ) factor family on segment p.

    side '>' selects shrink columns (sign -), '<' grow columns (sign +);
    typ 1 selects letter L, typ 0 letter R.
    """
    if not (1 <= j <= params.n and 1 <= p <= params.m):
        raise ValueError("indicator indices out of range")
    b = params.b_patterns[p - 1][j - 1]
    a = params.a_pattern[j - 1]
    want_b = "-" if side == ">" else "+"
    want_a = "L" if typ == 1 else "R"
    return b == want_b and a == want_a


# ---------------------------------------------------------------------------
# factored representation
# ---------------------------------------------------------------------------


@dataclass
class RationalFunction:
    """scale * prod (w - zeros[i]) / prod (w - poles[i]) with scale = e^{log_scale}."""

    zeros: np.ndarray
    poles: np.ndarray
    log_scale: float = 0.0

    def __post_init__(self):
        self.zeros = np.asarray(self.zeros, dtype=float)
        self.poles = np.asarray(self.poles, dtype=float)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def eval(self, w) -> complex:
        """Evaluate through log-sums (safe for wide dynamic ranges)."""
        w = complex(w)
        val = self.log_scale + np.sum(np.log(w - self.zeros)) - np.sum(np.log(w - self.poles))
        return cmath.exp(complex(val))

    __call__ = eval

    def log_abs_and_sign(self, w: float) -> Tuple[float, int]:
        """For real w off the catalog: (log |value|, sign of value)."""
        dz = w - self.zeros
        dp = w - self.poles
        la = self.log_scale + np.sum(np.log(np.abs(dz))) - np.sum(np.log(np.abs(dp)))
        sgn = 1 if (np.sum(dz < 0) + np.sum(dp < 0)) % 2 == 0 else -1
        return float(la), sgn

    def log_deriv(self, w) -> complex:
        return complex(np.sum(1.0 / (w - self.zeros)) - np.sum(1.0 / (w - self.poles)))

    def log_deriv2(self, w) -> complex:
        return complex(
            -np.sum(1.0 / (w - self.zeros) ** 2) + np.sum(1.0 / (w - self.poles) ** 2)
        )

    def value_at_zero(self) -> float:
        la = (
            self.log_scale
            + np.sum(np.log(np.abs(self.zeros)))
            - np.sum(np.log(np.abs(self.poles)))
        )
        sgn = 1 if (np.sum(self.zeros > 0) + np.sum(self.poles > 0)) % 2 == 0 else -1
        return sgn * math.exp(la)

    def cancelled(self, rel_tol: float = 1e-12) -> "RationalFunction":
        """Remove coincident zero/pole pairs (exact catalog collisions)."""
        zs = list(self.zeros)
        ps = list(self.poles)
        out_z = []
        for z in zs:
            hit = None
            for i, p in enumerate(ps):
                if abs(z - p) <= rel_tol * max(abs(z), abs(p), 1e-300):
                    hit = i
                    break
            if hit is None:
                out_z.append(z)
            else:
                ps.pop(hit)
        return RationalFunction(np.array(out_z), np.array(ps), self.log_scale)

    def compressed(self, r_lo: float, r_hi: float) -> "RationalFunction":
        """Drop factor pairs with both points outside the annulus [r_lo, r_hi].

        Pairs below r_lo act there as the constant 1; pairs above r_hi act as
        the constant z/p, absorbed into the scale.  The annulus is chosen two
        decades around the order-one catalog, so the cleared polynomial's
        roots span few decades and its companion matrix stays well
        conditioned; the small evaluation error this introduces is removed by
        polishing every root against the full catalog.
        """
        zk, pk = [], []
        ls = self.log_scale
        for z, p in zip(self.zeros, self.poles):
            az, ap = abs(z), abs(p)
            if az < r_lo and ap < r_lo:
                continue
            if az > r_hi and ap > r_hi:
                ls += math.log(z / p)
                continue
            zk.append(z)
            pk.append(p)
        return RationalFunction(np.array(zk), np.array(pk), ls)


def _chi_entries(params: AsymptoticParams, chi: float):
    """(zero, pole, logscale) triples of the chi-local factor g_chi."""
    out = []
    V, tau = params.V, params.tau
    for p in range(1, params.m + 1):
        for j in range(1, params.n + 1):
            t = tau[j - 1]
            if V[p] > chi and indicator(params, j, p, ">", 1):
                out.append((math.exp(V[p]) / t, math.exp(max(V[p - 1], chi)) / t, 0.0))
            if V[p - 1] < chi and indicator(params, j, p, "<", 1):
                mn = min(V[p], chi)
                out.append((math.exp(V[p - 1]) / t, math.exp(mn) / t, mn - V[p - 1]))
            if V[p] > chi and indicator(params, j, p, ">", 0):
                out.append((-math.exp(max(V[p - 1], chi)) / t, -math.exp(V[p]) / t, 0.0))
            if V[p - 1] < chi and indicator(params, j, p, "<", 0):
                mn = min(V[p], chi)
                out.append((-math.exp(mn) / t, -math.exp(V[p - 1]) / t, V[p - 1] - mn))
    return out


def _f_entries(params: AsymptoticParams):
    """Catalog of prod_{k<=K} f_uvk; chi-independent.

    Each level k contributes two copies of every boundary-anchored family,
    with point multipliers (uv)^{2k} and the u- or v-shifted variants.  When
    u or v vanishes the corresponding families degenerate to the constant 1
    and are skipped.
    """
    out = []
    V, tau, u, v = params.V, params.tau, params.u, params.v
    for k in range(1, params.K + 1):
        mults_small = [u ** (2 * k) * v ** (2 * k), u ** (2 * k - 2) * v ** (2 * k)]
        mults_large = [u ** (2 * k) * v ** (2 * k), u ** (2 * k) * v ** (2 * k - 2)]
        for p in range(1, params.m + 1):
            for j in range(1, params.n + 1):
                t = tau[j - 1]
                ea, eb = math.exp(V[p]), math.exp(V[p - 1])
                if indicator(params, j, p, ">", 1):
                    for s in mults_small:
                        if s > 0:
                            out.append((s * ea / t, s * eb / t, 0.0))
                if indicator(params, j, p, "<", 1):
                    for s in mults_large:
                        if s > 0:
                            out.append((eb / (s * t), ea / (s * t), V[p] - V[p - 1]))
                if indicator(params, j, p, ">", 0):
                    for s in mults_small:
                        if s > 0:
                            out.append((-s * eb / t, -s * ea / t, 0.0))
                if indicator(params, j, p, "<", 0):
                    for s in mults_large:
                        if s > 0:
                            out.append((-ea / (s * t), -eb / (s * t), V[p - 1] - V[p]))
    return out


_F_CACHE: Dict[tuple, list] = {}


def _f_entries_cached(params: AsymptoticParams):
    key = (params.n, params.m, params.V, params.tau, params.a_pattern, params.b_patterns,
           params.u, params.v, params.K)
    if key not in _F_CACHE:
        _F_CACHE[key] = _f_entries(params)
    return _F_CACHE[key]


def build_rational(params: AsymptoticParams, chi: float) -> RationalFunction:
    """Factored form of GF(w) = g_chi(w) prod_{k<=K} f_uvk(w), after cancellation."""
    if not (params.V[0] < chi < params.V[-1]):
        raise ValueError(f"chi must lie in ({params.V[0]}, {params.V[-1]})")
    if chi in params.V:
        raise ValueError("chi must avoid the transition points")
    entries = _chi_entries(params, chi) + _f_entries_cached(params)
    z = np.array([e[0] for e in entries])
    p = np.array([e[1] for e in entries])
    ls = float(sum(e[2] for e in entries))
    return RationalFunction(z, p, ls).cancelled()


# ---------------------------------------------------------------------------
# direct product evaluation (dual path used by tests)
# ---------------------------------------------------------------------------


def g_chi(params: AsymptoticParams, chi: float, w) -> complex:
    """The chi-local factor evaluated as the literal four-family product."""
    w = complex(w)
    V, tau = params.V, params.tau
    val = complex(1.0)
    for p in range(1, params.m + 1):
        for j in range(1, params.n + 1):
            t = tau[j - 1]
            if V[p] > chi and indicator(params, j, p, ">", 1):
                val *= (1 - math.exp(V[p]) / (w * t)) / (
                    1 - math.exp(max(V[p - 1], chi)) / (w * t)
                )
            if V[p - 1] < chi and indicator(params, j, p, "<", 1):
                val *= (1 - w * math.exp(-V[p - 1]) * t) / (
                    1 - math.exp(-min(V[p], chi)) * w * t
                )
            if V[p] > chi and indicator(params, j, p, ">", 0):
                val *= (1 + math.exp(max(V[p - 1], chi)) / (w * t)) / (
                    1 + math.exp(V[p]) / (w * t)
                )
            if V[p - 1] < chi and indicator(params, j, p, "<", 0):
                val *= (1 + math.exp(-min(V[p], chi)) * w * t) / (
                    1 + w * math.exp(-V[p - 1]) * t
                )
    return val


def f_uvk(params: AsymptoticParams, k: int, w) -> complex:
    """Level-k boundary factor: the eight boundary-anchored families at once."""
    w = complex(w)
    u, v = params.u, params.v
    V, tau = params.V, params.tau
    val = complex(1.0)
    for p in range(1, params.m + 1):
        for j in range(1, params.n + 1):
            t = tau[j - 1]
            ea, eb = math.exp(V[p]), math.exp(V[p - 1])
            if indicator(params, j, p, ">", 1):
                for s in (u ** (2 * k) * v ** (2 * k), u ** (2 * k - 2) * v ** (2 * k)):
                    if s > 0:
                        val *= (w - s * ea / t) / (w - s * eb / t)
            if indicator(params, j, p, "<", 1):
                for s in (u ** (2 * k) * v ** (2 * k), u ** (2 * k) * v ** (2 * k - 2)):
                    if s > 0:
                        val *= (1 - s * w * t / eb) / (1 - s * w * t / ea)
            if indicator(params, j, p, ">", 0):
                for s in (u ** (2 * k) * v ** (2 * k), u ** (2 * k - 2) * v ** (2 * k)):
                    if s > 0:
                        val *= (w + s * eb / t) / (w + s * ea / t)
            if indicator(params, j, p, "<", 0):
                for s in (u ** (2 * k) * v ** (2 * k), u ** (2 * k) * v ** (2 * k - 2)):
                    if s > 0:
                        val *= (1 + s * w * t / ea) / (1 + s * w * t / eb)
    return val


def gf_product(params: AsymptoticParams, chi: float, w) -> complex:
    """g_chi times the truncated product of f_uvk, by direct multiplication."""
    val = g_chi(params, chi, w)
    for k in range(1, params.K + 1):
        val *= f_uvk(params, k, w)
    return val


# ---------------------------------------------------------------------------
# root isolation
# ---------------------------------------------------------------------------


def _annulus(params: AsymptoticParams) -> Tuple[float, float]:
    """Compression annulus: two decades around the chi-local catalog."""
    mid = 0.5 * (params.V[0] + params.V[-1])
    base = []
    for z, p, _ in _chi_entries(params, mid):
        base.extend((abs(z), abs(p)))
    return min(base) * 1e-2, max(base) * 1e2


def solve_w_plus(
    params: AsymptoticParams,
    chi: float,
    kappa: float,
    rf: Optional[RationalFunction] = None,
) -> Optional[complex]:
    """Unique upper-half-plane root of GF(w) = e^{-n kappa}, or None if frozen.

    Counts conjugate pairs from the cleared polynomial of the compressed
    catalog, then polishes the candidate by Newton iteration against the full
    catalog.  More than one surviving pair raises AssumptionViolation.
    """
    if rf is None:
        rf = build_rational(params, chi)
    r_lo, r_hi = _annulus(params)
    rfc = rf.compressed(r_lo, r_hi)
    s_n = math.exp(-params.n * kappa)
    poly = np.poly(rfc.zeros) * math.exp(rfc.log_scale) - s_n * np.poly(rfc.poles)
    roots = np.roots(poly)
    cands = [complex(r) for r in roots if r.imag > 1e-7 * (1 + abs(r))]
    if not cands:
        return None
    target = math.log(s_n)
    polished = []
    for w in cands:
        f = complex(np.log(complex(rf.eval(w)))) - target
        for _ in range(100):
            fp = rf.log_deriv(w)
            dw = f / fp
            # damped step: never accept a move that grows the residual
            for _ in range(40):
                w_new = w - dw
                f_new = complex(np.log(complex(rf.eval(w_new)))) - target
                if abs(f_new) <= abs(f) or abs(dw) < 1e-16 * (1 + abs(w)):
                    break
                dw /= 2
            w, f = w_new, f_new
            if abs(dw) <= 1e-15 * (1 + abs(w)):
                break
        if w.imag > 1e-9 * (1 + abs(w)) and abs(f) < 1e-8:
            polished.append(w)
    if not polished:
        return None
    # deduplicate (several raw candidates may polish to the same root)
    uniq: List[complex] = []
    for w in polished:
        if all(abs(w - q) > 1e-6 * (1 + abs(w)) for q in uniq):
            uniq.append(w)
    if len(uniq) > 1:
        raise AssumptionViolation(
            f"{len(uniq)} conjugate pairs at chi={chi}, kappa={kappa}: {uniq}"
        )
    w = uniq[0]
    resid = abs(rf.eval(w) - s_n)
    if resid > 1e-8 * max(1.0, s_n):
        raise AssumptionViolation(
            f"root polish failed at chi={chi}, kappa={kappa}: residual {resid}"
        )
    return w


def slice_critical_points(
    params: AsymptoticParams, chi: float, rf: Optional[RationalFunction] = None,
    scan: int = 48,
) -> List[Tuple[float, float]]:
    """Fold points of the slice at fixed chi: real critical points of log GF.

    Returns (kappa, w) pairs sorted by kappa, restricted to w where GF > 0
    (others do not bound the liquid set).  These are the kappa values at which
    a conjugate pair collides onto the real axis at w.
    """
    if rf is None:
        rf = build_rational(params, chi)
    pts = sorted(set(list(rf.zeros) + list(rf.poles)))
    span = 10.0 * (1.0 + max(abs(pts[0]), abs(pts[-1])))
    brackets = []
    rail = [pts[0] - span] + pts + [pts[-1] + span]
    for a, b in zip(rail[:-1], rail[1:]):
        eps_a = 1e-9 * (1 + abs(a))
        eps_b = 1e-9 * (1 + abs(b))
        if b - a > eps_a + eps_b:
            brackets.append((a + eps_a, b - eps_b))

    def S(w: float) -> float:
        return rf.log_deriv(w).real

    def S1(w: float) -> float:
        return rf.log_deriv2(w).real

    folds = []
    for a, b in brackets:
        # log-spaced sampling handles brackets spanning many scales
        if a > 0 and b / a > 50:
            grid = np.geomspace(a, b, scan)
        elif b < 0 and a / b > 50:
            grid = -np.geomspace(-a, -b, scan)
        else:
            grid = np.linspace(a, b, scan)
        # refine with the critical points of S so near-double roots (which
        # leave no sign change across a cell) are still bracketed
        refined = list(grid)
        d1 = [S1(w) for w in grid]
        for i in range(len(grid) - 1):
            if math.isfinite(d1[i]) and math.isfinite(d1[i + 1]) and d1[i] * d1[i + 1] < 0:
                refined.append(brentq(S1, grid[i], grid[i + 1], xtol=1e-14, rtol=1e-15))
        refined.sort()
        vals = [S(w) for w in refined]
        for i in range(len(refined) - 1):
            va, vb = vals[i], vals[i + 1]
            if math.isfinite(va) and math.isfinite(vb) and va * vb < 0:
                w0 = brentq(S, refined[i], refined[i + 1], xtol=1e-14, rtol=1e-15)
                la, sgn = rf.log_abs_and_sign(w0)
                if sgn > 0:
                    folds.append((-la / params.n, float(w0)))
    return sorted(folds)


def density(
    params: AsymptoticParams,
    chi: float,
    kappa: float,
    rf: Optional[RationalFunction] = None,
    folds: Optional[List[Tuple[float, float]]] = None,
) -> float:
    """Vertical slope of the limit shape at (chi, kappa), in [0, 2].

    Liquid points give 2 - 2 arg(w+)/pi.  Frozen points take the value 0 or 2
    according to the sign of the double root at the nearest fold below: the
    pair collides at positive w when the region above is saturated (slope 2)
    and at negative w when it is empty (slope 0); below every fold the slope
    is 0.
    """
    if rf is None:
        rf = build_rational(params, chi)
    wp = solve_w_plus(params, chi, kappa, rf)
    if wp is not None:
        return 2.0 - 2.0 * cmath.phase(wp) / math.pi
    if folds is None:
        folds = slice_critical_points(params, chi, rf)
    below = [f for f in folds if f[0] < kappa]
    if not below:
        return 0.0
    return 2.0 if below[-1][1] > 0 else 0.0


@dataclass(frozen=True)
class FrozenBoundaryPoint:
    chi: float
    kappa: float
    w: float
    resid_value: float  # |GF(w) e^{n kappa} - 1|
    resid_slope: float  # |(log GF)'(w)|


def frozen_boundary(
    params: AsymptoticParams, w_grid: Sequence[float], scan: int = 33
) -> List[FrozenBoundaryPoint]:
    """Trace the frozen boundary over a grid of real w values.

    For each w the slope equation (log GF)'(w) = 0 is solved for chi by
    bracketed root finding on each continuity interval; the interval ends are
    the transition points V_p and the chi values where a moving catalog point
    crosses w itself.  Each root (chi, w) is completed to a boundary point by
    kappa = -log GF(w) / n, defined whenever GF(w) > 0; w values yielding no
    bracketed root contribute nothing.
    """
    f_entries = _f_entries_cached(params)
    fz = np.array([e[0] for e in f_entries])
    fp = np.array([e[1] for e in f_entries])
    f_ls = float(sum(e[2] for e in f_entries))
    out: List[FrozenBoundaryPoint] = []
    V0, Vm = params.V[0], params.V[-1]
    for w in w_grid:
        if w == 0:
            raise ValueError("w grid must avoid 0")
        s_f = float(np.sum(1.0 / (w - fz)) - np.sum(1.0 / (w - fp)))

        def S(chi: float) -> float:
            acc = s_f
            for z, p, _ in _chi_entries(params, chi):
                acc += 1.0 / (w - z) - 1.0 / (w - p)
            return acc

        breaks = set(params.V)
        for t in params.tau:
            c = math.log(abs(w) * t)
            if V0 < c < Vm:
                breaks.add(c)
        rail = sorted(breaks)
        for a, b in zip(rail[:-1], rail[1:]):
            lo, hi = a + 1e-9, b - 1e-9
            if hi <= lo:
                continue
            grid = np.linspace(lo, hi, scan)
            vals = [S(c) for c in grid]
            for i in range(scan - 1):
                va, vb = vals[i], vals[i + 1]
                if math.isfinite(va) and math.isfinite(vb) and va * vb < 0:
                    chi = brentq(S, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15)
                    rf = build_rational(params, chi)
                    la, sgn = rf.log_abs_and_sign(w)
                    if sgn <= 0:
                        continue
                    kappa = -la / params.n
                    r1 = abs(rf.eval(w).real * math.exp(params.n * kappa) - 1.0)
                    r2 = abs(rf.log_deriv(w).real)
                    out.append(FrozenBoundaryPoint(float(chi), float(kappa), float(w), r1, r2))
    return out


def double_root_gap(params: AsymptoticParams, pt: FrozenBoundaryPoint) -> float:
    """Bound on the distance from pt.w to the two local roots of GF = e^{-n kappa}.

    Locates the nearby critical point w' of log GF by Newton iteration on the
    slope, then reads the root pair off the quadratic model around w': the two
    roots sit at w' +- sqrt(2 E(w')/E''(w')) with E = GF - e^{-n kappa}.  On a
    true double root both terms vanish up to roundoff.
    """
    rf = build_rational(params, pt.chi)
    w = pt.w
    for _ in range(60):
        s1 = rf.log_deriv(w).real
        s2 = rf.log_deriv2(w).real
        if s2 == 0:
            break
        dw = s1 / s2
        w -= dw
        if abs(dw) <= 1e-17 * (1 + abs(w)):
            break
    # F(w') = log GF(w') + n kappa with n kappa = -log GF(pt.w) by construction,
    # evaluated as a sum of log1p increments so the near-cancellation is exact.
    delta = w - pt.w
    F = float(
        np.sum(np.log1p(delta / (pt.w - rf.zeros)))
        - np.sum(np.log1p(delta / (pt.w - rf.poles)))
    )
    s2 = rf.log_deriv2(w).real
    if s2 == 0:
        return float("inf")
    return abs(delta) + math.sqrt(abs(2.0 * F / s2))


# ---------------------------------------------------------------------------
# Laplace-transform cross-check
# ---------------------------------------------------------------------------


def default_contour(
    params: AsymptoticParams, chi: float, n_points: int = 1600
) -> List[np.ndarray]:
    """Closed loops enclosing 0 and the shrink-family poles, nothing else.

    One circle around the origin captures the k-level points clustered at 0;
    one small circle is added around each order-one pole of the '>' families.
    Radii are chosen from the gaps to the nearest excluded catalog points.
    """
    rf = build_rational(params, chi)
    chi_poles = []
    for p in range(1, params.m + 1):
        for j in range(1, params.n + 1):
            t = params.tau[j - 1]
            if params.V[p] > chi and indicator(params, j, p, ">", 1):
                chi_poles.append(math.exp(max(params.V[p - 1], chi)) / t)
            if params.V[p] > chi and indicator(params, j, p, ">", 0):
                chi_poles.append(-math.exp(params.V[p]) / t)
    if not chi_poles:
        raise AssumptionViolation("no shrink-family poles; nothing to enclose")
    all_abs = np.abs(np.concatenate([rf.zeros, rf.poles]))
    g = 0.5 * min(abs(q) for q in chi_poles)
    tiny = all_abs[all_abs < g]
    r0 = math.sqrt(tiny.max() * min(all_abs[all_abs >= g])) if tiny.size else g / 10.0
    loops = [_circle(0.0, r0, n_points)]
    pts = np.concatenate([rf.zeros, rf.poles])
    for q in chi_poles:
        others = pts[np.abs(pts - q) > 1e-12]
        gap = min(np.abs(others - q).min(), abs(q) - r0)
        loops.append(_circle(q, 0.45 * gap, n_points))
    return loops


def _circle(center: float, radius: float, n: int) -> np.ndarray:
    th = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    return center + radius * np.exp(1j * th)


def laplace_check(
    params: AsymptoticParams,
    chi: float,
    alpha: float,
    contour: Optional[List[np.ndarray]] = None,
    kappa_points: int = 4000,
) -> Tuple[float, float]:
    """Two routes to the Laplace transform of the limit shape at fixed chi.

    integral: (1/(n^2 alpha^2 pi i)) sum of closed-loop integrals of
    [GF(w)]^alpha dw/w with the log branch tracked continuously along each
    discretized loop (a jump above pi/2 between samples raises
    RefineContourError).

    direct: int e^{-n alpha kappa} H(chi, kappa) dkappa with H the cumulative
    integral of the density in kappa, the flat tails handled in closed form.
    """
    rf = build_rational(params, chi)
    if contour is None:
        contour = default_contour(params, chi)
    na = params.n * alpha
    total = 0.0 + 0.0j
    for loop in contour:
        ws = np.asarray(loop, dtype=complex)
        logs = np.array([
            complex(np.sum(np.log(w - rf.zeros)) - np.sum(np.log(w - rf.poles)))
            + rf.log_scale
            for w in ws
        ])
        for i in range(1, len(logs)):
            jump = logs[i].imag - logs[i - 1].imag
            k = round(jump / (2 * math.pi))
            logs[i] -= 2j * math.pi * k
            if abs(logs[i].imag - logs[i - 1].imag) > math.pi / 2:
                raise RefineContourError("log jump too large; refine the contour")
        vals = np.exp(alpha * logs) / ws
        dws = np.roll(ws, -1) - ws
        # closed trapezoid: average of endpoints per segment
        total += np.sum((vals + np.roll(vals, -1)) / 2.0 * dws)
    integral = (total / (params.n**2 * alpha**2 * math.pi * 1j)).real

    folds = slice_critical_points(params, chi, rf)
    if not folds:
        raise AssumptionViolation("no fold points; slice has no liquid region")
    klo = folds[0][0]
    khi = folds[-1][0]
    ks = np.linspace(klo, khi, kappa_points)
    dens = np.array([density(params, chi, k, rf, folds) for k in ks])
    H = np.concatenate([[0.0], np.cumsum((dens[1:] + dens[:-1]) / 2.0 * np.diff(ks))])
    inner = float(np.trapezoid(np.exp(-na * ks) * H, ks))
    tail = math.exp(-na * khi) * (H[-1] / na + 2.0 / na**2)
    direct = inner + tail
    return integral, direct


def limit_height_profile(
    params: AsymptoticParams, chi: float, kappas: Sequence[float]
) -> np.ndarray:
    """H(chi, kappa) on the given kappa values, normalized to 0 far below."""
    rf = build_rational(params, chi)
    folds = slice_critical_points(params, chi, rf)
    ks = np.asarray(sorted(set(list(kappas))), dtype=float)
    klo = min(folds[0][0] if folds else ks[0], ks[0])
    grid = np.unique(np.concatenate([np.linspace(klo, ks[-1], 1500), ks]))
    dens = np.array([density(params, chi, k, rf, folds) for k in grid])
    H = np.concatenate([[0.0], np.cumsum((dens[1:] + dens[:-1]) / 2.0 * np.diff(grid))])
    out = np.interp(np.asarray(kappas, dtype=float), grid, H)
    return out
