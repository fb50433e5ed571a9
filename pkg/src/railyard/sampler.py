"""Sampling doubly-free-boundary coverings by operator commutation and reflection.

The sampler maintains a word of N dressed column operators between the two
free boundaries, together with the N+1 partitions of the current sample.  An
operator carries its column letter and sign, the column weight, and a dress
u^{eu} v^{ev} recording how many boundary reflections it still owes.  Four
local bijections drive three kinds of rewrite, each of which preserves the
measure of the current word:

  * same-sign neighbours commute deterministically (aa / ab),
  * opposite-sign neighbours in the shrink-grow order commute through a
    geometric or Bernoulli draw (hh / hv), with parameter the product of the
    two dressed weights,
  * the operator next to a boundary reflects: its sign flips, its dress drops
    by u^2 or v^2, and the boundary state is redrawn through hh with
    parameter dress/u or dress/v.

Running K full reflection rounds from the all-equal seeded word (seed drawn
with multiplicity of k geometric of rate (uv)^k, parts capped at K) leaves the
operators in graph order with their bare weights; the states then form a
covering whose law is the target measure conditioned on the seeding event.
Both boundary partitions of the output therefore have first part <= K up to
the geometric excess injected by the draws.

All bijection calls assert their interlacing preconditions; a violation
raises :class:`ContractViolation` identifying the step, which is the primary
defence against bookkeeping errors.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Optional

from .graphs import CoveringState, RailYardGraph, step_holds, validate
from .partitions import (
    Partition,
    canon,
    conjugate,
    interlaces_h,
    interlaces_v,
    multiplicity,
    part,
)


class ContractViolation(AssertionError):
    """A local bijection was invoked outside its precondition."""


# ---------------------------------------------------------------------------
# the four local bijections
# ---------------------------------------------------------------------------


def hh(lam: Partition, mu: Partition, kap: Partition, G: int) -> Partition:
    """Grow past two horizontal strips: kap < lam, kap < mu  ->  nu > lam, mu.

    nu_1 = max(lam_1, mu_1) + G and
    nu_i = max(lam_i, mu_i) + min(lam_{i-1}, mu_{i-1}) - kap_{i-1} for i > 1;
    |nu| + |kap| = |lam| + |mu| + G, and (kap, G) -> nu is a bijection.
    """
    if not (interlaces_h(kap, lam) and interlaces_h(kap, mu)):
        raise ContractViolation(f"hh precondition: {kap} < {lam}, {kap} < {mu}")
    nu = [max(part(lam, 1), part(mu, 1)) + G]
    for i in range(2, max(len(lam), len(mu)) + 2):
        v = max(part(lam, i), part(mu, i)) + min(part(lam, i - 1), part(mu, i - 1)) - part(
            kap, i - 1
        )
        if v:
            nu.append(v)
    return canon(nu)


def hv(lam: Partition, mu: Partition, kap: Partition, B: int) -> Partition:
    """Mixed-strip analogue of hh: kap <' lam, kap < mu  ->  mu <' nu, lam < nu.

    The Bernoulli bit enters at the first free row and is refreshed whenever a
    row of lam is pinched between consecutive rows of mu; |nu| + |kap| =
    |lam| + |mu| + B.
    """
    if not (interlaces_v(kap, lam) and interlaces_h(kap, mu)):
        raise ContractViolation(f"hv precondition: {kap} <' {lam}, {kap} < {mu}")
    nu = []
    for i in range(1, max(len(lam), len(mu)) + 2):
        li, mi = part(lam, i), part(mu, i)
        if li <= mi < part(lam, i - 1):
            nu.append(max(li, mi) + B)
        else:
            nu.append(max(li, mi))
        if part(mu, i + 1) < li <= mi:
            B = min(li, mi) - part(kap, i)
    return canon(nu)


def aa(lam: Partition, mu: Partition, kap: Partition) -> Partition:
    """Reflect the middle of a nested horizontal-strip pair mu < kap < lam.

    nu_i = min(lam_i, mu_{i-1}) + max(lam_{i+1}, mu_i) - kap_i (mu_0 = +inf);
    an involution in kap for fixed (lam, mu), preserving |kap| + |nu|.
    """
    if not (interlaces_h(mu, kap) and interlaces_h(kap, lam)):
        raise ContractViolation(f"aa precondition: {mu} < {kap} < {lam}")
    nu = []
    for i in range(1, max(len(lam), len(mu), len(kap)) + 2):
        v = min(part(lam, i), part(mu, i - 1)) + max(part(lam, i + 1), part(mu, i)) - part(kap, i)
        if v:
            nu.append(v)
    return canon(nu)


def ab(lam: Partition, mu: Partition, kap: Partition) -> Partition:
    """Swap a vertical strip past a horizontal one: mu <' kap < lam -> mu < nu <' lam.

    The unit carried by delta propagates from a row where kap exceeds its
    lower bound down to the next row where nu has slack, so the loop runs from
    the bottom row upward, keeping delta until it is consumed.
    """
    if not (interlaces_v(mu, kap) and interlaces_h(kap, lam)):
        raise ContractViolation(f"ab precondition: {mu} <' {kap} < {lam}")
    n = max(len(lam), len(mu)) + 1
    nu = [0] * (n + 1)
    delta = 0
    for i in range(n, 0, -1):
        li, mi = part(lam, i), part(mu, i)
        if part(lam, i + 1) <= mi < li:
            delta = part(kap, i) - max(part(lam, i + 1), mi)
        if mi < li <= part(mu, i - 1):
            nu[i] = min(li, part(mu, i - 1)) - delta
            delta = 0
        else:
            nu[i] = min(li, part(mu, i - 1))
    return canon(nu[1:])


# ---------------------------------------------------------------------------
# randomness
# ---------------------------------------------------------------------------


def geometric(rng: random.Random, xi: float) -> int:
    """Draw G with P(G = g) = xi^g (1 - xi), g >= 0 (inverse transform)."""
    if not 0.0 <= xi < 1.0:
        raise ValueError(f"geometric parameter {xi} outside [0,1)")
    if xi == 0.0:
        return 0
    return int(math.log(rng.random()) // math.log(xi))


def bernoulli(rng: random.Random, xi: float) -> int:
    """Draw B in {0,1} with P(B = 1) = xi / (1 + xi)."""
    if xi < 0:
        raise ValueError("negative Bernoulli weight")
    return 1 if rng.random() * (1 + xi) < xi else 0


def stream(seed: int, index: int) -> random.Random:
    """Independent reproducible stream for sample `index` under `seed`."""
    return random.Random(f"{seed}/{index}")


def sample_boundary_seed(uv: float, K: int, rng: random.Random) -> Partition:
    """Partition with multiplicity of k drawn Geom((uv)^k), parts <= K."""
    if not 0.0 <= uv < 1.0:
        raise ValueError("need 0 <= uv < 1")
    parts: List[int] = []
    for k in range(K, 0, -1):
        parts.extend([k] * geometric(rng, uv**k))
    return canon(parts)


# ---------------------------------------------------------------------------
# the sweep
# ---------------------------------------------------------------------------


@dataclass
class SamplerConfig:
    graph: RailYardGraph
    K: int
    seed: int = 0

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be >= 1")


class _Op:
    __slots__ = ("c", "sign", "eu", "ev", "x", "col")

    def __init__(self, c, sign, eu, ev, x, col):
        self.c, self.sign, self.eu, self.ev, self.x, self.col = c, sign, eu, ev, x, col

    def arg(self, u: float, v: float) -> float:
        if (u == 0.0 and self.eu > 0) or (v == 0.0 and self.ev > 0):
            return 0.0
        return u**self.eu * v**self.ev * self.x

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"{self.c}{self.sign}[u^{self.eu} v^{self.ev} x{self.col}]"


class _Word:
    """Operator word plus states; all rewrites assert their contracts."""

    def __init__(self, g: RailYardGraph, K: int, rng: random.Random):
        self.g = g
        self.u, self.v = float(g.u), float(g.v)
        self.rng = rng
        seed = sample_boundary_seed(self.u * self.v, K, rng)
        self.ops = [
            _Op(g.a_at(i), g.b_at(i), 2 * K, 2 * K, float(g.x_at(i)), i) for i in g.columns()
        ]
        self.states: List[Partition] = [seed] * (g.ncols + 1)

    # -- primitive rewrites ------------------------------------------------

    def swap(self, t: int) -> None:
        """Exchange ops[t], ops[t+1], resampling the state between them."""
        o1, o2 = self.ops[t], self.ops[t + 1]
        al, be, ga = self.states[t], self.states[t + 1], self.states[t + 2]
        rng = self.rng
        try:
            if o1.sign == "-" and o2.sign == "+":
                xi = o1.arg(self.u, self.v) * o2.arg(self.u, self.v)
                c1, c2 = o1.c, o2.c
                if c1 == "L" and c2 == "L":
                    nb = hh(al, ga, be, geometric(rng, xi))
                elif c1 == "R" and c2 == "R":
                    nb = conjugate(
                        hh(conjugate(al), conjugate(ga), conjugate(be), geometric(rng, xi))
                    )
                elif c1 == "L" and c2 == "R":
                    nb = hv(ga, al, be, bernoulli(rng, xi))
                else:
                    nb = hv(al, ga, be, bernoulli(rng, xi))
            elif o1.sign == "+" and o2.sign == "+":
                c1, c2 = o1.c, o2.c
                if c1 == "L" and c2 == "L":
                    nb = aa(ga, al, be)
                elif c1 == "R" and c2 == "R":
                    nb = conjugate(aa(conjugate(ga), conjugate(al), conjugate(be)))
                elif c1 == "R" and c2 == "L":
                    nb = ab(ga, al, be)
                else:
                    nb = conjugate(ab(conjugate(ga), conjugate(al), conjugate(be)))
            elif o1.sign == "-" and o2.sign == "-":
                c1, c2 = o1.c, o2.c
                if c1 == "L" and c2 == "L":
                    nb = aa(al, ga, be)
                elif c1 == "R" and c2 == "R":
                    nb = conjugate(aa(conjugate(al), conjugate(ga), conjugate(be)))
                elif c1 == "L" and c2 == "R":
                    nb = ab(al, ga, be)
                else:
                    nb = conjugate(ab(conjugate(al), conjugate(ga), conjugate(be)))
            else:
                raise ContractViolation("grow-shrink pairs are never swapped")
        except ContractViolation as exc:
            raise ContractViolation(f"swap at position {t} ({o1} | {o2}): {exc}") from None
        self.states[t + 1] = nb
        self.ops[t], self.ops[t + 1] = o2, o1
        if not step_holds(o2.c, o2.sign, al, nb) or not step_holds(o1.c, o1.sign, nb, ga):
            raise ContractViolation(f"swap postcondition failed at {t}: {o1} {o2}")

    def reflect_right(self) -> None:
        """Shrink operator at the right boundary becomes a grow with dress/v^2."""
        o = self.ops[-1]
        if o.sign != "-":
            raise ContractViolation("right reflection needs a shrink operator")
        al, be = self.states[-2], self.states[-1]
        xi = (
            0.0
            if (self.u == 0.0 and o.eu > 0) or (self.v == 0.0 and o.ev - 1 > 0)
            else self.u**o.eu * self.v ** (o.ev - 1) * o.x
        )
        if o.c == "L":
            nb = hh(al, al, be, geometric(self.rng, xi))
        else:
            nb = conjugate(hh(conjugate(al), conjugate(al), conjugate(be), geometric(self.rng, xi)))
        self.states[-1] = nb
        o.sign = "+"
        o.ev -= 2
        if not step_holds(o.c, "+", al, nb):
            raise ContractViolation("right reflection postcondition failed")

    def reflect_left(self) -> None:
        """Grow operator at the left boundary becomes a shrink with dress/u^2."""
        o = self.ops[0]
        if o.sign != "+":
            raise ContractViolation("left reflection needs a grow operator")
        al, be = self.states[0], self.states[1]
        xi = (
            0.0
            if (self.u == 0.0 and o.eu - 1 > 0) or (self.v == 0.0 and o.ev > 0)
            else self.u ** (o.eu - 1) * self.v**o.ev * o.x
        )
        if o.c == "L":
            na = hh(be, be, al, geometric(self.rng, xi))
        else:
            na = conjugate(hh(conjugate(be), conjugate(be), conjugate(al), geometric(self.rng, xi)))
        self.states[0] = na
        o.sign = "-"
        o.eu -= 2
        if not step_holds(o.c, "-", na, be):
            raise ContractViolation("left reflection postcondition failed")

    def position(self, col: int) -> int:
        for t, o in enumerate(self.ops):
            if o.col == col:
                return t
        raise KeyError(col)


def run_sweep(cfg: SamplerConfig, rng: Optional[random.Random] = None) -> CoveringState:
    """Run the K-round reflection sweep and return the sampled covering.

    The schedule processes, in each round r = K..1, first the shrink columns
    right to left and then the grow columns right to left.  A shrink column's
    round trip is: drift to the right boundary, reflect, travel to the left
    boundary (random commutations past opposite signs, deterministic past its
    own sign), reflect back, and return to its parked slot.  Grow columns make
    the mirror-image trip starting at the left boundary.  During the final
    round each operator parks at its graph position, which leaves the word in
    graph order with bare weights, so the states along it are the covering.
    """
    g = cfg.graph
    if rng is None:
        rng = stream(cfg.seed, 0)
    w = _Word(g, cfg.K, rng)
    N = g.ncols
    minus_cols = [i for i in g.columns() if g.b_at(i) == "-"]
    plus_cols = [i for i in g.columns() if g.b_at(i) == "+"]
    for r in range(cfg.K, 0, -1):
        for col in reversed(minus_cols):
            t = w.position(col)
            while t < N - 1:
                w.swap(t)
                t += 1
            w.reflect_right()
            while t > 0:
                w.swap(t - 1)
                t -= 1
            w.reflect_left()
            while t < N - 1 and (w.ops[t + 1].sign == "+" or w.ops[t + 1].col < col):
                w.swap(t)
                t += 1
        for col in reversed(plus_cols):
            t = w.position(col)
            while t > 0:
                w.swap(t - 1)
                t -= 1
            w.reflect_left()
            while t < N - 1:
                w.swap(t)
                t += 1
            w.reflect_right()
            if r > 1:
                while t > 0 and (w.ops[t - 1].sign == "-" or w.ops[t - 1].col > col):
                    w.swap(t - 1)
                    t -= 1
            else:
                while t > 0 and w.ops[t - 1].col > col:
                    w.swap(t - 1)
                    t -= 1
    for t, o in enumerate(w.ops):
        if o.col != g.l + t or o.eu or o.ev or o.sign != g.b_at(o.col):
            raise ContractViolation(f"sweep left operator {o} at position {t}")
    state = CoveringState(tuple(w.states), charge=0)
    if not validate(g, state):
        raise ContractViolation("sweep produced an invalid covering")
    return state


def sample_many(cfg: SamplerConfig, n: int) -> List[CoveringState]:
    """n independent samples with per-index derived streams (reproducible)."""
    return [run_sweep(cfg, stream(cfg.seed, i)) for i in range(n)]
