import pytest

from excprimes import (
    DomainError,
    candidate_report,
    dihedral_bound_chain,
    dihedral_candidates,
    exceptional_image_candidates,
    factorize,
    fundamental_orders,
    is_prime,
    lcm_pow_minus_one,
    primes_up_to,
    reducible_candidates,
    reducible_primes,
    reducible_weight2_signs,
)


FROZEN_SETS = {
    (4, 11): [2, 3, 5, 11, 61],
    (6, 81): [2, 3, 5, 7, 43, 1171],
    (2, 11): [2, 3, 5, 11],
    (2, 12): [2, 3],
    (2, 8): [2, 3],
    (2, 25): [2, 3, 5],
    (2, 44): [2, 3, 5, 11],
    (2, 99): [2, 3, 5, 11],
    (2, 300): [2, 3, 5],
    (4, 176): [2, 3, 5, 11, 61],
    (6, 1): [2, 3, 5, 7],
}


def test_frozen_reducible_sets():
    for (k, N), want in FROZEN_SETS.items():
        assert reducible_primes(k, N) == want, (k, N)


def test_unconditional_gates_always_present():
    for k, N in ((2, 7), (4, 90), (6, 128), (8, 1)):
        got = set(reducible_primes(k, N))
        for ell in primes_up_to(k + 1):
            assert ell in got
        for p in factorize(N).primes() if N > 1 else ():
            assert p in got


def test_gcd_clause_attribution_at_prime_level():
    pairs = reducible_candidates(4, 11)
    clause = "divides gcd over p | N of lcm(p^k - 1, p^(k-2) - 1)"
    assert (61, clause) in pairs
    # 61 enters through lcm(11^4 - 1, 11^2 - 1) = 14640 = 2^4 * 3 * 5 * 61
    assert lcm_pow_minus_one(11, 4) == 14640
    assert all(isinstance(p, int) and isinstance(c, str) and c for p, c in pairs)
    assert pairs == sorted(pairs)


def test_square_level_clause_attribution():
    pairs = reducible_candidates(6, 81)
    big = [c for p, c in pairs if p == 1171]
    assert big and all("B_(k,eps)" in c for c in big)


def test_weight2_squarefree_uses_lcm_of_p2_minus_1():
    pairs = reducible_candidates(2, 11)
    clause = "divides lcm over p | N of p^2 - 1"
    assert (5, clause) in pairs and (3, clause) in pairs


def test_reducible_input_validation():
    with pytest.raises(DomainError):
        reducible_primes(3, 11)
    with pytest.raises(DomainError):
        reducible_primes(4, 0)


def test_weight2_sign_reports():
    rep = reducible_weight2_signs({11: 1})
    assert rep.primes() == [2, 5] and not rep.impossible

    rep = reducible_weight2_signs([(7, -1)])
    assert rep.primes() == [2] and rep.impossible
    assert "impossible" in rep.note

    rep = reducible_weight2_signs([(3, -1), (5, -1)])
    assert rep.primes() == [2] and rep.impossible

    rep = reducible_weight2_signs([(3, -1), (5, 1)])
    assert not rep.impossible
    assert rep.primes() == [2]  # gcd branch: only minus primes contribute

    d = rep.to_dict()
    assert d["signs"] == {"3": -1, "5": 1} and d["clauses"]


def test_weight2_sign_validation():
    with pytest.raises(DomainError):
        reducible_weight2_signs({})
    with pytest.raises(DomainError):
        reducible_weight2_signs([(4, 1)])
    with pytest.raises(DomainError):
        reducible_weight2_signs([(3, 1), (3, -1)])
    with pytest.raises(DomainError):
        reducible_weight2_signs({5: 0})


def test_dihedral_squarefree_sets():
    rep = dihedral_candidates(2, 11)
    assert rep.squarefree and rep.bound is None
    assert rep.primes == (2, 3, 11)  # 2k - 1 = 3 is prime
    rep = dihedral_candidates(6, 11)
    assert rep.primes == (2, 3, 5, 11)  # 2k - 1 = 11 already present
    rep = dihedral_candidates(4, 15)
    assert rep.primes == (2, 3, 5, 7)  # includes 2k - 1 = 7
    assert rep.assumptions == ("newform assumed non-CM",)


def test_dihedral_bound_for_non_squarefree_levels():
    rep = dihedral_candidates(2, 1888, degree=5)
    assert not rep.squarefree and rep.primes is None
    assert rep.degree == 5 and rep.bound > 0
    smaller = dihedral_candidates(2, 1888, degree=1)
    assert smaller.bound < rep.bound
    # default degree comes from the new-subspace dimension
    auto = dihedral_candidates(2, 1888)
    assert auto.degree == 58
    d = rep.to_dict()
    assert d["bound"] == str(rep.bound) and d["degree"] == 5


def test_dihedral_bound_chain_frozen():
    chain = dihedral_bound_chain(2, 2)
    assert chain["n_bound"] == 24
    assert chain["n_bound_sharp"] == 16
    assert chain["q_bound"] == 25
    with pytest.raises(DomainError):
        dihedral_bound_chain(2, 1)
    with pytest.raises(DomainError):
        dihedral_bound_chain(3, 4)


def test_exceptional_image_candidates():
    for k, N in ((2, 11), (6, 1), (4, 90)):
        want = set(primes_up_to(4 * k - 3))
        if N > 1:
            want.update(factorize(N).primes())
        assert exceptional_image_candidates(k, N) == sorted(want)


def test_fundamental_orders_characterizations():
    for k in (2, 4, 6, 8, 10, 12):
        for ell in primes_up_to(300):
            if ell <= k:
                continue
            n, m = fundamental_orders(ell, k)
            assert (ell - 1) % n == 0 and (ell + 1) % m == 0
            assert (n == 2) == (ell == 2 * k - 1)
            assert (m == 2) == (ell == 2 * k - 3)
            if ell > 4 * k - 3:
                assert n > 5 and m > 5
    with pytest.raises(DomainError):
        fundamental_orders(4, 2)
    with pytest.raises(DomainError):
        fundamental_orders(5, 6)


def test_candidate_report_round_trip():
    rep = candidate_report(4, 11)
    assert rep.reducible_primes() == [2, 3, 5, 11, 61]
    d = rep.to_dict()
    assert d["weight"] == 4 and d["level"] == 11
    assert d["reducible_primes"] == [2, 3, 5, 11, 61]
    assert d["dihedral"]["squarefree"] is True
    assert d["exceptional_image"] == exceptional_image_candidates(4, 11)
    assert {c["prime"] for c in d["reducible"]} == set(d["reducible_primes"])
    assert is_prime(61)
