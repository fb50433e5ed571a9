import random
from fractions import Fraction

import pytest

from railyard.graphs import RailYardGraph
from railyard.zfunction import (
    DivergenceError,
    EnumerationBound,
    brute_force_z,
    exact_distribution,
    z_free_empty,
    z_free_free,
    z_pair,
    z_pure,
)

H = Fraction(1, 2)


def G(a, b, x, u=0, v=0):
    return RailYardGraph(
        l=1,
        r=len(a),
        a=a,
        b=b,
        x=tuple(Fraction(xi) for xi in x),
        u=Fraction(u),
        v=Fraction(v),
    )


def test_z_pair_values():
    g = G("LR", "+-", (H, H))
    assert z_pair(g, 1, 2) == Fraction(5, 4)
    g2 = G("LL", "+-", (H, H))
    assert z_pair(g2, 1, 2) == Fraction(4, 3)
    with pytest.raises(DivergenceError):
        z_pair(G("LL", "+-", (1, 1)), 1, 2)


def test_z_pure_closed_forms():
    assert z_pure(G("LR", "+-", (H, H))) == 1 + H * H
    assert z_pure(G("LL", "+-", (H, H))) == 1 / (1 - H * H)
    assert z_pure(G("LR", "-+", (H, H))) == 1  # no (+,-) pair with i < j


def test_z_pure_matches_oracle():
    bound = EnumerationBound(8, 8)
    for a, b in [("LR", "+-"), ("LL", "+-"), ("LRRL", "++--")]:
        g = G(a, b, [Fraction(2, 5)] * len(a))
        z, _ = brute_force_z(g, bound, exact=True)
        closed = z_pure(g)
        # finite box truncates a geometric tail when letters repeat
        assert 0 <= float(closed) - float(z) < 1e-3
        assert abs(float(closed) - float(z)) < 1e-3


def test_brute_force_examples():
    g = G("LR", "+-", (H, H))
    z, configs = brute_force_z(g, EnumerationBound(1, 1), exact=True)
    assert z == 1 + H * H and configs == 2
    gK = G("LL", "+-", (H, H))
    K = 5
    zK, _ = brute_force_z(gK, EnumerationBound(K, 1), exact=True)
    assert zK == sum((H * H) ** k for k in range(K + 1))


def test_brute_force_float_matches_exact():
    g = G("LRL", "+--", (H, Fraction(1, 3), Fraction(2, 5)), u=Fraction(1, 10), v=Fraction(1, 5))
    ze, ce = brute_force_z(g, EnumerationBound(5, 5), exact=True)
    zf, cf = brute_force_z(g, EnumerationBound(5, 5), exact=False)
    assert ce == cf
    assert abs(float(ze) - zf) < 1e-12 * float(ze)


def test_z_free_empty_examples():
    g = G("L", "-", (H,), u=Fraction(1, 3))
    assert z_free_empty(g) == 1 / (1 - Fraction(1, 3) * H)
    g2 = G("LL", "--", (H, H), u=Fraction(1, 3))
    expected = (
        1 / (1 - Fraction(1, 3) * H) ** 2 / (1 - Fraction(1, 9) * H * H)
    )
    assert z_free_empty(g2) == expected


def test_z_free_free_degenerations():
    g = G("LLRR", "-++-", (H, Fraction(1, 3), Fraction(1, 3), H), u=0, v=0)
    value, tail = z_free_free(g, 10)
    assert tail == 0.0
    assert abs(value - float(z_pure(g))) < 1e-14
    gu = G("LL", "--", (H, H), u=Fraction(1, 4), v=0)
    value_u, _ = z_free_free(gu, 20)
    assert abs(value_u - float(z_free_empty(gu))) < 1e-12


def test_z_free_free_matches_oracle():
    rng = random.Random(11)
    bound = EnumerationBound(8, 8)
    for _ in range(4):
        ncols = rng.randrange(1, 4)
        a = "".join(rng.choice("LR") for _ in range(ncols))
        b = "".join(rng.choice("+-") for _ in range(ncols))
        x = [Fraction(rng.randrange(5, 45), 100) for _ in range(ncols)]
        uv = rng.choice([Fraction(1, 10), Fraction(3, 10)])
        g = G(a, b, x, u=uv, v=uv)
        value, tail = z_free_free(g, 30)
        oracle, _ = brute_force_z(g, bound, exact=False)
        # oracle is a lower partial sum; geometric extrapolation bounds its gap
        o7, _ = brute_force_z(g, EnumerationBound(7, 7), exact=False)
        o6, _ = brute_force_z(g, EnumerationBound(6, 6), exact=False)
        step2, step1 = oracle - o7, o7 - o6
        rho = step2 / step1 if step1 > 0 else 0.0
        trunc = step2 * rho / (1 - rho) if 0 < rho < 1 else 10 * step2 + 1e-12
        assert 0 <= value - oracle <= tail + max(trunc, 1e-9) * 3 + 1e-9


def test_z_free_free_divergence():
    g = RailYardGraph(l=1, r=2, a="LL", b="+-", x=(Fraction(3), Fraction(1, 2))
                      , u=Fraction(4, 5), v=Fraction(4, 5))
    with pytest.raises(DivergenceError):
        z_free_free(g, 10)


def test_reflection_symmetry_of_z():
    """u<->v with a left-right flip (signs flipped) preserves Z.

    Flipping the picture maps grow columns to shrink columns read in the
    opposite order and exchanges the two free boundaries; the letters swap
    roles as well.
    """
    rng = random.Random(3)
    for _ in range(4):
        ncols = rng.randrange(1, 4)
        a = "".join(rng.choice("LR") for _ in range(ncols))
        b = "".join(rng.choice("+-") for _ in range(ncols))
        x = [Fraction(rng.randrange(10, 40), 100) for _ in range(ncols)]
        u, v = Fraction(1, 10), Fraction(1, 4)
        g = G(a, b, x, u=u, v=v)
        flip = {"+": "-", "-": "+"}
        swap = {"L": "R", "R": "L"}
        g_ref = G(
            "".join(swap[c] for c in reversed(a)),
            "".join(flip[c] for c in reversed(b)),
            list(reversed(x)),
            u=v,
            v=u,
        )
        z1, _ = brute_force_z(g, EnumerationBound(7, 7), exact=False)
        z2, _ = brute_force_z(g_ref, EnumerationBound(7, 7), exact=False)
        assert abs(z1 - z2) < 1e-9 * abs(z1)


def test_exact_distribution_examples():
    g = G("LR", "+-", (H, Fraction(2, 3)), u=0, v=0)  # x1 x2 = 1/3
    dist = exact_distribution(g, EnumerationBound(1, 1))
    assert abs(dist[((), (), ())] - 0.75) < 1e-12
    assert abs(dist[((), (1,), ())] - 0.25) < 1e-12
    assert abs(sum(dist.values()) - 1.0) < 1e-12


def test_exact_distribution_conditioning():
    g = G("LL", "+-", (H, H), u=Fraction(1, 10), v=Fraction(1, 10))
    dist = exact_distribution(g, EnumerationBound(8, 8), end_max_part=2)
    assert all(
        (not s[0] or s[0][0] <= 2) and (not s[-1] or s[-1][0] <= 2) for s in dist
    )
    assert abs(sum(dist.values()) - 1.0) < 1e-12
