"""Shared oracles for the test suite: independent re-implementations of the
interlacing predicates and exhaustive contract checkers for the local
bijections.  These deliberately avoid the library's own fast paths.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from railyard.partitions import box_partitions
from railyard.sampler import aa, ab, hh, hv


def transpose_diagram(p) -> tuple:
    """Conjugate via the literal Young-diagram cell set."""
    cells = {(i, j) for i, v in enumerate(p) for j in range(v)}
    flipped = {(j, i) for (i, j) in cells}
    rows: Dict[int, int] = {}
    for i, _ in flipped:
        rows[i] = rows.get(i, 0) + 1
    return tuple(rows[i] for i in sorted(rows))


def strip_h(mu, lam) -> bool:
    """lam/mu is a horizontal strip: containment + at most one cell per column."""
    width = max([0] + list(lam) + list(mu))
    colc_l = [sum(1 for v in lam if v > j) for j in range(width)]
    colc_m = [sum(1 for v in mu if v > j) for j in range(width)]
    return all(0 <= a - b <= 1 for a, b in zip(colc_l, colc_m))


def strip_v(mu, lam) -> bool:
    """lam/mu is a vertical strip: at most one cell per row."""
    n = max(len(lam), len(mu))
    get = lambda p, i: p[i] if i < len(p) else 0
    return all(0 <= get(lam, i) - get(mu, i) <= 1 for i in range(n))


def bijection_violations(max_part: int = 3, max_len: int = 3, aux: int = 3):
    """Exhaustively check hh/hv/aa/ab contracts; returns per-op failure counts
    and case counts."""
    P = box_partitions(max_part, max_len)
    fails = {"hh": 0, "hv": 0, "aa": 0, "ab": 0, "aa_invol": 0}
    cases = {"hh": 0, "hv": 0, "aa": 0, "ab": 0}
    from railyard.partitions import interlaces_h as ih, interlaces_v as iv

    for lam in P:
        for mu in P:
            img_hh: dict = {}
            img_hv: dict = {}
            img_aa: dict = {}
            img_ab: dict = {}
            for kap in P:
                if ih(kap, lam) and ih(kap, mu):
                    for G in range(aux + 1):
                        nu = hh(lam, mu, kap, G)
                        cases["hh"] += 1
                        ok = (
                            ih(lam, nu)
                            and ih(mu, nu)
                            and sum(nu) + sum(kap) == sum(lam) + sum(mu) + G
                            and nu not in img_hh
                        )
                        img_hh[nu] = (kap, G)
                        fails["hh"] += not ok
                if iv(kap, lam) and ih(kap, mu):
                    for B in (0, 1):
                        nu = hv(lam, mu, kap, B)
                        cases["hv"] += 1
                        ok = (
                            ih(lam, nu)
                            and iv(mu, nu)
                            and sum(nu) + sum(kap) == sum(lam) + sum(mu) + B
                            and nu not in img_hv
                        )
                        img_hv[nu] = (kap, B)
                        fails["hv"] += not ok
                if ih(mu, kap) and ih(kap, lam):
                    nu = aa(lam, mu, kap)
                    cases["aa"] += 1
                    ok = (
                        ih(mu, nu)
                        and ih(nu, lam)
                        and sum(nu) + sum(kap) == sum(lam) + sum(mu)
                        and nu not in img_aa
                    )
                    img_aa[nu] = kap
                    fails["aa"] += not ok
                    if ok and aa(lam, mu, nu) != kap:
                        fails["aa_invol"] += 1
                if iv(mu, kap) and ih(kap, lam):
                    nu = ab(lam, mu, kap)
                    cases["ab"] += 1
                    ok = (
                        ih(mu, nu)
                        and iv(nu, lam)
                        and sum(nu) + sum(kap) == sum(lam) + sum(mu)
                        and nu not in img_ab
                    )
                    img_ab[nu] = kap
                    fails["ab"] += not ok
    return fails, cases


def total_variation(emp: Dict, n: int, exact: Dict) -> float:
    keys = set(emp) | set(exact)
    return 0.5 * sum(abs(emp.get(k, 0) / n - exact.get(k, 0.0)) for k in keys)


def chi_square_pvalue(emp: Dict, n: int, exact: Dict, min_expected: float = 5.0) -> float:
    """Pearson test with tail pooling; p-value from the chi2 survival function."""
    from scipy.stats import chi2

    items = sorted(exact.items(), key=lambda kv: -kv[1])
    buckets: List[Tuple[List, float]] = []
    pool: List = []
    pool_p = 0.0
    for k, p in items:
        if p * n >= min_expected:
            buckets.append(([k], p))
        else:
            pool.append(k)
            pool_p += p
    if pool and pool_p * n >= min_expected:
        buckets.append((pool, pool_p))
    elif pool:
        # tail too thin for its own bucket: merge into the smallest regular one
        keys, p = buckets.pop()
        buckets.append((keys + pool, p + pool_p))
    if len(buckets) < 2:
        raise ValueError("not enough buckets for a chi-square test")
    stat = 0.0
    seen = set()
    for keys, p in buckets:
        obs = sum(emp.get(k, 0) for k in keys)
        seen.update(keys)
        exp = p * n
        stat += (obs - exp) ** 2 / exp
    extra = sum(c for k, c in emp.items() if k not in seen)
    if extra:
        # observed states of zero exact probability inside the enumeration
        # bound would make the statistic infinite; treat as immediate failure
        return 0.0
    return float(chi2.sf(stat, df=len(buckets) - 1))
