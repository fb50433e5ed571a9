import math

import numpy as np
import pytest

from railyard.asymptotics import (
    AsymptoticParams,
    build_rational,
    density,
    double_root_gap,
    f_uvk,
    frozen_boundary,
    g_chi,
    gf_product,
    indicator,
    laplace_check,
    limit_height_profile,
    slice_critical_points,
    solve_w_plus,
)
from railyard.presets import four_periodic_params

E = math.e
P = four_periodic_params(K=10)


def test_params_validation():
    with pytest.raises(ValueError):
        four_periodic_params(u=2.0, v=0.6)
    with pytest.raises(ValueError):
        AsymptoticParams(2, 1, (0.0, 1.0), (1.0,), "LL", ("+-",), 0.1, 0.1)


def test_indicator_four_periodic():
    # residues: 1 (L,-), 2 (L,+), 3 (R,+), 4 (R,-)
    assert indicator(P, 1, 1, ">", 1)
    assert not indicator(P, 2, 1, ">", 1)
    assert indicator(P, 2, 1, "<", 1)
    assert indicator(P, 3, 1, "<", 0)
    assert indicator(P, 4, 1, ">", 0)
    assert not indicator(P, 1, 1, "<", 0)


def test_g_chi_closed_form():
    chi, w = 0.5, 2.0
    expected = (
        ((w - E) / (w - E**chi))
        * ((1 - 0.3 * w) / (1 - 0.3 * math.exp(-chi) * w))
        * ((w + E**chi) / (w + E))
        * ((1 + 0.3 * math.exp(-chi) * w) / (1 + 0.3 * w))
    )
    assert abs(g_chi(P, chi, w) - expected) < 1e-14


def test_f_uvk_closed_form():
    k, w = 1, 1.0
    q2, q4 = 0.01 ** (2 * k), 0.1 ** (4 * k - 2)
    expected = (
        ((w - q2 * E) / (w - q2))
        * ((w - q4 * E) / (w - q4))
        * ((1 - 0.3 * w * q2) / (1 - 0.3 / E * w * q2))
        * ((1 - 0.3 * w * q4) / (1 - 0.3 / E * w * q4))
        * ((w + q2) / (w + q2 * E))
        * ((w + q4) / (w + q4 * E))
        * ((1 + 0.3 / E * q2 * w) / (1 + 0.3 * q2 * w))
        * ((1 + 0.3 / E * q4 * w) / (1 + 0.3 * q4 * w))
    )
    assert abs(f_uvk(P, k, w) - expected) < 1e-13


def test_f_uvk_degenerations():
    P0 = four_periodic_params(K=5, u=0.0, v=0.0)
    for k in (1, 2):
        for w in (0.5, 2.0, -1.3):
            assert abs(f_uvk(P0, k, w) - 1.0) < 1e-15
    Pu = four_periodic_params(K=5, u=0.2, v=0.0)
    # only the u-shifted level-1 factors survive at v = 0
    val = f_uvk(Pu, 1, 2.0)
    assert abs(val - 1.0) > 1e-3
    assert abs(f_uvk(Pu, 2, 2.0) - 1.0) < 1e-15


def test_f_uvk_geometric_decay():
    # |f_k - 1| shrinks like (uv)^2 per level until it hits the float floor
    rate = [abs(f_uvk(P, k, 1.7) - 1.0) for k in (1, 2, 3)]
    for a, b in zip(rate, rate[1:]):
        assert b < a * (P.u * P.v) ** 2 * 10
    for k in (5, 6, 8):
        assert abs(f_uvk(P, k, 1.7) - 1.0) < 1e-13


def test_g_chi_limits_and_symmetry():
    big = g_chi(P, 0.5, 1e9)
    assert abs(big - 1.0) < 1e-8
    w = 1.3 + 0.7j
    assert abs(g_chi(P, 0.5, w.conjugate()) - g_chi(P, 0.5, w).conjugate()) < 1e-14


def test_build_rational_matches_product():
    rng = np.random.default_rng(0)
    for chi in (0.21, 0.5, 0.83):
        rf = build_rational(P, chi)
        for _ in range(40):
            w = complex(rng.uniform(-6, 6), rng.uniform(-4, 4))
            if min(abs(w - q) for q in list(rf.zeros) + list(rf.poles)) < 1e-3:
                continue
            a = rf.eval(w)
            b = gf_product(P, chi, w)
            assert abs(a - b) <= 1e-12 * abs(b)


def test_build_rational_zero_pole_counts():
    rf5 = build_rational(four_periodic_params(K=5), 0.5)
    rf6 = build_rational(four_periodic_params(K=6), 0.5)
    assert rf6.degree - rf5.degree == 8
    assert rf5.degree == 4 + 8 * 5


def test_solve_w_plus_liquid():
    rf = build_rational(P, 0.5)
    wp = solve_w_plus(P, 0.5, 0.0, rf)
    assert wp is not None and wp.imag > 0
    assert abs(wp.real) < 1e-9  # symmetric slice: purely imaginary root
    resid = abs(rf.eval(wp) - math.exp(-P.n * 0.0))
    assert resid < 1e-10
    # conjugate root satisfies the equation too
    assert abs(rf.eval(wp.conjugate()) - 1.0) < 1e-10


def test_solve_w_plus_frozen():
    assert solve_w_plus(P, 0.5, 2.0) is None
    assert solve_w_plus(P, 0.5, -2.0) is None


def test_density_values_and_range():
    rf = build_rational(P, 0.5)
    folds = slice_critical_points(P, 0.5, rf)
    assert abs(density(P, 0.5, 0.0, rf, folds) - 1.0) < 1e-9
    assert density(P, 0.5, 2.0, rf, folds) == 2.0
    assert density(P, 0.5, -2.0, rf, folds) == 0.0
    for kap in np.linspace(-1.2, 1.2, 25):
        d = density(P, 0.5, float(kap), rf, folds)
        assert 0.0 <= d <= 2.0


def test_density_monotone_on_slice():
    rf = build_rational(P, 0.35)
    folds = slice_critical_points(P, 0.35, rf)
    ds = [density(P, 0.35, float(k), rf, folds) for k in np.linspace(-1.5, 1.5, 41)]
    assert all(b >= a - 1e-9 for a, b in zip(ds, ds[1:]))


def test_slice_folds_match_wplus_transition():
    rf = build_rational(P, 0.62)
    folds = slice_critical_points(P, 0.62, rf)
    assert len(folds) == 2
    k_lo, k_hi = folds[0][0], folds[-1][0]
    eps = 1e-4
    assert solve_w_plus(P, 0.62, k_lo + eps, rf) is not None
    assert solve_w_plus(P, 0.62, k_lo - eps, rf) is None
    assert solve_w_plus(P, 0.62, k_hi - eps, rf) is not None
    assert solve_w_plus(P, 0.62, k_hi + eps, rf) is None


def test_frozen_boundary_structure():
    wg = list(-np.geomspace(25, 0.03, 60)) + list(np.geomspace(0.03, 25, 60))
    pts = frozen_boundary(P, wg)
    core = [p for p in pts if abs(p.kappa) < 5]
    assert len(core) > 60
    assert all(0.0 < p.chi < 1.0 for p in core)
    assert max(p.resid_value for p in core) < 1e-9
    assert max(p.resid_slope for p in core) < 1e-9
    assert max(double_root_gap(P, p) for p in core[:20]) < 1e-6


def test_laplace_check_example():
    integral, direct = laplace_check(P, 0.5, 1.0, kappa_points=1500)
    assert abs(integral - direct) / abs(direct) < 1e-3


def test_laplace_check_alpha_continuity():
    vals = []
    for alpha in (0.8, 1.0, 1.2):
        integral, direct = laplace_check(P, 0.4, alpha, kappa_points=800)
        vals.append((alpha, integral, direct))
    for (a1, i1, d1), (a2, i2, d2) in zip(vals, vals[1:]):
        assert abs(i2 - i1) < 0.8 * abs(i1)
        assert abs(d2 - d1) < 0.8 * abs(d1)


def test_laplace_check_boundary_degenerations():
    # empty-boundary and single-free regimes run through the same machinery
    P0 = four_periodic_params(K=3, u=0.0, v=0.0)
    assert build_rational(P0, 0.5).degree == 4
    i, d = laplace_check(P0, 0.5, 1.0, kappa_points=1500)
    assert abs(i - d) / abs(d) < 1e-3
    Pv = four_periodic_params(K=6, u=0.2, v=0.0)
    i, d = laplace_check(Pv, 0.5, 1.0, kappa_points=1500)
    assert abs(i - d) / abs(d) < 1e-3


def test_limit_height_profile_monotone():
    ks = np.linspace(-1.5, 1.5, 13)
    H = limit_height_profile(P, 0.5, [float(k) for k in ks])
    assert H[0] < 1e-6
    assert all(b >= a - 1e-9 for a, b in zip(H, H[1:]))
    assert abs((H[-1] - H[-2]) - 2 * (ks[-1] - ks[-2])) < 1e-2
