import pytest

from railyard.sampler import ContractViolation, aa, ab, bernoulli, geometric, hh, hv, stream
from helpers import bijection_violations


def test_hh_examples():
    assert hh((), (), (), 0) == ()
    nu = hh((2,), (1,), (), 1)
    assert sum(nu) == 2 + 1 + 1
    from railyard.partitions import interlaces_h

    assert interlaces_h((2,), nu) and interlaces_h((1,), nu)
    with pytest.raises(ContractViolation):
        hh((1,), (), (2,), 0)


def test_hv_examples():
    assert hv((), (), (), 0) == ()
    assert hv((), (), (), 1) == (1,)
    with pytest.raises(ContractViolation):
        hv((), (1,), (1, 1), 0)


def test_aa_examples():
    assert aa((2, 1), (2, 1), (2, 1)) == (2, 1)
    assert aa((2,), (), (1,)) == (1,)
    with pytest.raises(ContractViolation):
        aa((1,), (2,), (1,))


def test_ab_examples():
    assert ab((), (), ()) == ()
    assert ab((1,), (), (1,)) == ()
    with pytest.raises(ContractViolation):
        ab((), (2,), (1,))


def test_exhaustive_contracts():
    fails, cases = bijection_violations(3, 3, 3)
    assert all(v == 0 for v in fails.values()), fails
    assert min(cases.values()) > 100


def test_geometric_distribution():
    rng = stream(1, 0)
    assert all(geometric(rng, 0.0) == 0 for _ in range(10))
    n = 40000
    xi = 0.35
    draws = [geometric(rng, xi) for _ in range(n)]
    mean = sum(draws) / n
    expect = xi / (1 - xi)
    sd = (xi / (1 - xi) ** 2) ** 0.5
    assert abs(mean - expect) < 4 * sd / n**0.5
    with pytest.raises(ValueError):
        geometric(rng, 1.0)


def test_bernoulli_distribution():
    rng = stream(2, 0)
    n = 40000
    xi = 0.6
    p = sum(bernoulli(rng, xi) for _ in range(n)) / n
    assert abs(p - xi / (1 + xi)) < 0.01
