import itertools
import random

import pytest

import oracles
from evoshare.errors import BudgetExceeded, DegenerateCodewords
from evoshare.prefixcode import TableCode, get_codec
from evoshare.ringpoly import TruncatedPoly
from evoshare.scheme import SchemeParams, new_dealer, reconstruct
from evoshare.secrecy import (
    all_secrets,
    check_secrecy,
    check_secrecy_all,
    count_solutions,
    enumerate_distribution,
    homogeneous_residuals,
    shift_vector,
)


def params_of(p, k, ell, name):
    return SchemeParams(p, k, ell, get_codec(name, p))


def test_single_share_uniform_k2():
    params = params_of(2, 2, 1, "gamma")
    for t in (1, 2, 3, 4):
        n = params.share_truncation(t)
        for s in all_secrets(params):
            d = enumerate_distribution(params, s, [t])
            assert len(d.counts) == 2**n
            assert set(d.counts.values()) == {1}
            assert d.total == 2**n


def test_empty_coalition():
    params = params_of(2, 3, 1, "gamma")
    d = enumerate_distribution(params, params.secret("1"), [])
    assert d.counts == {(): 1}


def test_k3_pair_matches_brute_force():
    params = params_of(2, 3, 1, "gamma")
    for s in all_secrets(params):
        d = enumerate_distribution(params, s, [1, 2])
        ys = [list(params.codec.symbols(t)) for t in (1, 2)]
        assert d.counts == oracles.brute_distribution(ys, list(s.coeffs), 3, 1, 2)
        assert d.total == 2 ** (2 * d.n_max)
        # uniform over the image of the affine map
        assert len(set(d.counts.values())) == 1


def test_distribution_matches_brute_force_ternary():
    params = params_of(3, 3, 1, "m1")
    s = params.secret("2")
    ys = [list(params.codec.symbols(t)) for t in (1, 3)]
    assert enumerate_distribution(params, s, [1, 3]).counts == oracles.brute_distribution(
        ys, [2], 3, 1, 3
    )


def test_check_secrecy_examples():
    g = params_of(2, 2, 1, "gamma")
    assert check_secrecy(g, g.secret("0"), g.secret("0"), [3])
    assert check_secrecy(g, g.secret("0"), g.secret("1"), [3])
    m = params_of(3, 2, 1, "m1")
    assert check_secrecy(m, m.secret("1"), m.secret("2"), [2])


def test_qualified_coalition_not_secret():
    params = params_of(2, 2, 1, "gamma")
    assert not check_secrecy(params, params.secret("0"), params.secret("1"), [2, 3])
    report = check_secrecy_all(params, [1, 2, 3], size=2)
    assert not report.ok
    # and the qualified set does reconstruct
    d = new_dealer(params, params.secret("1"), seed=0)
    assert reconstruct([d.issue_share(2), d.issue_share(3)]).to_digits() == "1"


def test_count_solutions():
    params = params_of(2, 2, 1, "gamma")
    s = params.secret("1")
    assert count_solutions(params, [3], ["111111"], s) == 0  # wrong length
    n_max = params.share_truncation(3)
    for t in (1, 3):
        n = params.share_truncation(t)
        for z in itertools.product("01", repeat=n):
            c = count_solutions(params, [t], ["".join(z)], s)
            d = enumerate_distribution(params, s, [t])
            assert c == 2 ** (d.n_max - n)
    assert n_max == 3


def test_counts_independent_of_secret():
    for p, k, ell in itertools.product((2, 3), (2, 3), (1,)):
        codec = get_codec("m1", p)
        params = SchemeParams(p, k, ell, codec)
        for ts in itertools.combinations([1, 2, 3], k - 1):
            dists = [enumerate_distribution(params, s, ts) for s in all_secrets(params)]
            keys = set().union(*(d.counts for d in dists))
            for key in keys:
                counts = {d.counts.get(key, 0) for d in dists}
                assert len(counts) == 1


def test_custom_table_secrecy():
    params = SchemeParams(3, 3, 1, TableCode(3, {1: "1", 2: "2", 3: "01", 4: "02"}))
    assert check_secrecy_all(params, [1, 2, 3, 4]).ok


def test_budget():
    params = params_of(3, 3, 4, "m1")
    with pytest.raises(BudgetExceeded) as info:
        enumerate_distribution(params, params.secret("0000"), [1, 9])
    assert info.value.exponent == 2 * params.share_truncation(9)
    with pytest.raises(BudgetExceeded):
        enumerate_distribution(params_of(2, 2, 1, "gamma"), TruncatedPoly(2, [1]), [8], budget=16)


def test_shift_vector_examples():
    p = 3
    s = TruncatedPoly(p, [1, 2])
    ys = [TruncatedPoly(p, [0, 1]), TruncatedPoly(p, [1, 0, 2])]
    shift = shift_vector(s, s, ys, 6)
    assert all(r.is_zero() for r in shift.r)
    # k = 2: r_0 = (s0 - s1) y
    s0, s1 = TruncatedPoly(2, [1, 1]), TruncatedPoly(2, [0, 1])
    y = TruncatedPoly(2, [1, 0, 1])
    shift = shift_vector(s0, s1, [y], 4)
    assert shift.r[0] == (s0 - s1).zero_extend(4) * y.zero_extend(4)
    with pytest.raises(DegenerateCodewords):
        shift_vector(s0, s1, [y, TruncatedPoly(2, [1, 0, 1, 0])], 4)


def test_shift_maps_solutions_between_secrets():
    rng = random.Random(8)
    for _ in range(100):
        p = rng.choice((2, 3, 5))
        k = rng.randrange(2, 5)
        ell = rng.randrange(1, 4)
        params = params_of(p, k, ell, "m1")
        ts = rng.sample(range(1, 30), k - 1)
        ys = [params.codec.encode(t).to_poly() for t in ts]
        n = max(params.share_truncation(t) for t in ts)
        s0 = TruncatedPoly(p, [rng.randrange(p) for _ in range(ell)])
        s1 = TruncatedPoly(p, [rng.randrange(p) for _ in range(ell)])
        shift = shift_vector(s0, s1, ys, n)
        assert all(r.is_zero() for r in homogeneous_residuals(shift, s0, s1, ys))
        rs = [TruncatedPoly(p, [rng.randrange(p) for _ in range(n)]) for _ in range(k - 1)]
        moved = shift.apply(rs)
        for t, y in zip(ts, ys):
            m = params.share_truncation(t)
            z0 = oracles.share([r.coeffs for r in rs], s0.coeffs, y.coeffs, k, m, p)
            z1 = oracles.share([r.coeffs for r in moved], s1.coeffs, y.coeffs, k, m, p)
            assert z0 == z1
