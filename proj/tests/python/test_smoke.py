import pytest

import gfe13


def test_sieve_p5_case_i():
    rep = gfe13.run_sieve(5, "I", threads=1)
    assert rep["p"] == 5
    assert rep["case"] == "CASE_I"
    assert rep["candidateCount"] == 62
    assert len(rep["survivors"]) == 2


def test_sieve_rejects_thirteen():
    with pytest.raises(gfe13.UnsupportedPrime):
        gfe13.run_sieve(13)
    assert issubclass(gfe13.UnsupportedPrime, gfe13.Error)


def test_extraneous_unit_exponent():
    for p in (5, 7, 11, 17):
        k = gfe13.extraneous_unit(p)["k"]
        assert 1 <= k < p
        assert (12 * k + 1) % p == 0


def test_mod_q_pair_list_p7():
    pairs = gfe13.mod_q_pair_list(7, 19)
    assert pairs == sorted(pairs)
    assert pairs[-1] == (9, 10)
    assert gfe13.default_auxiliary_prime(29) == 233


def test_identities():
    assert gfe13.verify_cyclotomic_factorization()
    assert gfe13.descent_identity_holds()


def test_curves_and_points():
    assert len(gfe13.known_points(5)) == 5
    assert len(gfe13.known_points(7)) == 3
    for pt in gfe13.known_points(5):
        x, _, y = pt.partition(";")
        assert gfe13.is_on_curve(5, x, y)
    assert gfe13.point_verdict(5, "-4,4,0", "96,-288,176") == "NO_INTEGER_SOLUTION"
    assert not gfe13.is_on_curve(5, "1,0,0", "1,0,0")
    with pytest.raises(gfe13.UnknownPointSet):
        gfe13.known_points(11)


def test_search_small_bound_is_trivial():
    sols = gfe13.search(20, [5, 6], threads=1)
    for a, b, c, n in sols:
        assert a**13 + b**13 == c**n
        assert a * b == 0 or a + b == 0
    assert (1, -1, 0, 5) in sols


def test_gcd_facts():
    f = gfe13.gcd_facts(2, 1)
    assert f["phi"] == 2731
    assert f["gcd"] == 1
    assert gfe13.gcd_facts(1, 12)["gcd"] == 13
    with pytest.raises(gfe13.NotCoprime):
        gfe13.gcd_facts(2, 4)
