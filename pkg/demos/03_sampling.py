"""Sampling doubly free boundary coverings and checking the law.

Draws from the reflection sweep on a two-column graph and compares the
empirical distribution with the exact conditioned law computed by
enumeration; prints the most likely coverings side by side.
"""

from fractions import Fraction

from railyard import (
    EnumerationBound,
    RailYardGraph,
    SamplerConfig,
    exact_distribution,
    run_sweep,
)
from railyard.sampler import stream

K = 3
g = RailYardGraph(l=0, r=1, a="LR", b="+-", x=(Fraction(1, 2), Fraction(2, 5)),
                  u=Fraction(1, 10), v=Fraction(1, 10))
cfg = SamplerConfig(graph=g, K=K, seed=2024)

n = 40_000
emp = {}
kept = 0
for i in range(n):
    s = run_sweep(cfg, stream(cfg.seed, i))
    lam0, lamN = s.seq[0], s.seq[-1]
    if (not lam0 or lam0[0] <= K) and (not lamN or lamN[0] <= K):
        emp[s.seq] = emp.get(s.seq, 0) + 1
        kept += 1

exact = exact_distribution(g, EnumerationBound(10, 10), end_max_part=K)
tv = 0.5 * sum(abs(emp.get(k, 0) / kept - p) for k, p in exact.items())
tv += 0.5 * sum(c / kept for k, c in emp.items() if k not in exact)

print(f"{kept} of {n} samples inside the truncation event")
print(f"total variation to the exact conditioned law: {tv:.4f}\n")
print(f"{'covering':44s} {'empirical':>10s} {'exact':>10s}")
for seq, p in sorted(exact.items(), key=lambda kv: -kv[1])[:10]:
    label = " ".join(str(list(q)) for q in seq)
    print(f"{label:44s} {emp.get(seq, 0) / kept:10.5f} {p:10.5f}")
