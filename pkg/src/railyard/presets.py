"""Canned model: the four-periodic two-letter showcase used across demos and
tests, in both its scaling-limit form and finite-graph instances.

One period holds columns typed (L,-), (L,+), (R,+), (R,-) with weights
tau = (1, 0.3, 0.3, 1), a single macroscopic segment V = (0, 1), and boundary
fugacities u = v = 0.1.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .asymptotics import AsymptoticParams
from .graphs import RailYardGraph


def four_periodic_params(K: int = 10, u: float = 0.1, v: float = 0.1) -> AsymptoticParams:
    return AsymptoticParams(
        n=4,
        m=1,
        V=(0.0, 1.0),
        tau=(1.0, 0.3, 0.3, 1.0),
        a_pattern="LLRR",
        b_patterns=("-++-",),
        u=u,
        v=v,
        beta=1.0,
        K=K,
    )


def four_periodic_graph(n_cols: int, u: float = 0.1, v: float = 0.1) -> RailYardGraph:
    """Finite instance with mesh 1/n_cols and periodic exponential weights.

    Column i carries the letter/sign of its residue class and weight
    exp(-eps(i - res)) tau_res for grow columns, exp(+eps(i - res)) / tau_res
    for shrink columns, so that the rescaled graph converges to the
    four-periodic limit on chi in (0, 1].
    """
    params = four_periodic_params()
    eps = (params.V[-1] - params.V[0]) / n_cols
    a = []
    b = []
    x = []
    for i in range(1, n_cols + 1):
        res = (i - 1) % params.n + 1
        a.append(params.a_pattern[res - 1])
        sign = params.b_patterns[0][res - 1]
        b.append(sign)
        tau = params.tau[res - 1]
        if sign == "+":
            xi = math.exp(-eps * (i - res)) * tau
        else:
            xi = math.exp(eps * (i - res)) / tau
        x.append(Fraction(xi).limit_denominator(10**12))
    return RailYardGraph(
        l=1,
        r=n_cols,
        a="".join(a),
        b="".join(b),
        x=tuple(x),
        u=Fraction(u).limit_denominator(10**12),
        v=Fraction(v).limit_denominator(10**12),
    )
