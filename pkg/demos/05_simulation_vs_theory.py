"""Finite samples against the limit shape.

Draws coverings of a 70-column instance of the four-periodic family, averages
the rescaled height function over the samples, and prints it against the
limit shape H obtained by integrating the density; agreement is then checked
away from the frozen boundary.
"""

import numpy as np

from railyard import SamplerConfig, height, limit_height_profile, run_sweep
from railyard.presets import four_periodic_graph, four_periodic_params
from railyard.sampler import stream

n_cols, n_samples, K = 70, 120, 3
eps = 1.0 / n_cols
g = four_periodic_graph(n_cols)
params = four_periodic_params(K=10)
cfg = SamplerConfig(graph=g, K=K, seed=7)

print(f"sampling {n_samples} coverings of the {n_cols}-column instance (K={K})...")
samples = [run_sweep(cfg, stream(cfg.seed, i)) for i in range(n_samples)]

print(f"\n{'chi':>5s} {'kappa':>6s} {'eps*h':>8s} {'H':>8s} {'diff':>8s}")
for m in (14, 28, 35, 49):
    chi = eps * m
    kaps = [-0.9, -0.45, 0.0, 0.45, 0.9]
    H = limit_height_profile(params, chi, kaps)
    for kap, Hval in zip(kaps, H):
        y = kap / eps + 0.25
        emp = eps * np.mean([height(g, s, 2 * m - 0.5, y) for s in samples])
        print(f"{chi:5.2f} {kap:+6.2f} {emp:8.4f} {Hval:8.4f} {emp - Hval:+8.4f}")
