import json
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from excprimes import (
    DenominatorObstruction,
    DomainError,
    FiniteField,
    FixtureError,
    NewformFixture,
    compositum_norm,
    cyclotomic_polynomial,
    find_residue_points,
)
from excprimes.residues import (
    factor_degree_multiset,
    is_square_in_field,
    poly_roots_in_field,
    quadratic_irreducible,
)


# -- finite fields ---------------------------------------------------------------


def test_field_construction_is_deterministic():
    a = FiniteField(5, 3)
    b = FiniteField(5, 3)
    assert a == b and a.modulus == b.modulus and a.q == 125
    with pytest.raises(DomainError):
        FiniteField(6, 2)
    with pytest.raises(DomainError):
        FiniteField(5, 0)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(2, 1), (2, 3), (3, 2), (5, 1), (5, 2), (7, 3)]), st.data())
def test_field_ring_axioms(params, data):
    ell, d = params
    F = FiniteField(ell, d)
    draw = lambda: F.element([data.draw(st.integers(0, ell - 1)) for _ in range(d)])
    a, b, c = draw(), draw(), draw()
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a and a + b == b + a
    assert a + (-a) == F.zero()
    if a:
        assert a * a.inverse() == F.one()
    # Frobenius is a field automorphism
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()


def test_frobenius_fixes_prime_field_and_trace_lands_there():
    F = FiniteField(7, 3)
    for c in range(7):
        x = F.element(c)
        assert x.frobenius() == x
    x = F.element([1, 2, 3])
    y = x
    for _ in range(3):
        y = y.frobenius()
    assert y == x  # Frobenius has order d
    assert 0 <= x.trace() < 7


def test_from_fraction_and_denominator_obstruction():
    F = FiniteField(5, 1)
    assert F.from_fraction(Fraction(1, 7)) == F.element(3)
    with pytest.raises(DenominatorObstruction):
        F.from_fraction(Fraction(1, 10))


def test_squares_by_euler_criterion():
    for ell, d in ((3, 2), (5, 1), (7, 1)):
        F = FiniteField(ell, d)
        squares = {(x * x).coeffs for x in F.all_elements()}
        for x in F.all_elements():
            assert is_square_in_field(x) == (x.coeffs in squares)
    with pytest.raises(DomainError):
        is_square_in_field(FiniteField(2, 2).one())


def test_quadratic_irreducible_matches_brute_force():
    # degree 2 over a field: irreducible iff X^2 - aX + c has no root
    for ell, d in ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1)):
        F = FiniteField(ell, d)
        for a in F.all_elements():
            for c in F.all_elements():
                has_root = any(x * x - a * x + c == F.zero() for x in F.all_elements())
                assert quadratic_irreducible(a, c) == (not has_root), (ell, d, a, c)


# -- root finding ----------------------------------------------------------------


QUARTIC = (792, -72, -84, 3, 1)


def test_poly_roots_vanish_and_respect_degree():
    for ell, d in ((43, 1), (43, 3), (7, 2), (1171, 2)):
        F = FiniteField(ell, d)
        roots = poly_roots_in_field(QUARTIC, F)
        assert len(roots) <= 4
        for r in roots:
            acc = F.zero()
            for c in reversed(QUARTIC):
                acc = acc * r + F.element(c)
            assert not acc
    assert poly_roots_in_field(QUARTIC, FiniteField(43, 1))[0] == FiniteField(43, 1).element(13)


def test_factor_degree_multiset_consistency():
    for ell in (2, 3, 5, 7, 11, 43, 61, 1171):
        degs = factor_degree_multiset(QUARTIC, ell)
        assert sum(d * c for d, c in degs) <= 4
        # squarefree part may drop degree only for ramified primes
        if ell not in (2, 3):
            assert sum(d * c for d, c in degs) == 4
    assert factor_degree_multiset((*QUARTIC,), 43) == [(1, 1), (3, 1)]


def test_large_field_root_finding_agrees_with_enumeration():
    # force the EDF branch with q > 10^6 and compare against the small field
    F_big = FiniteField(1171, 2)
    assert F_big.q > 10 ** 6
    roots = poly_roots_in_field(QUARTIC, F_big)
    for r in roots:
        acc = F_big.zero()
        for c in reversed(QUARTIC):
            acc = acc * r + F_big.element(c)
        assert not acc
    in_prime_field = [r for r in roots if all(c == 0 for c in r.coeffs[1:])]
    small = poly_roots_in_field(QUARTIC, FiniteField(1171, 1))
    assert sorted(r.coeffs[0] for r in in_prime_field) == sorted(
        r.coeffs[0] for r in small
    )


# -- residue points ----------------------------------------------------------------


def test_residue_points_frozen_level81_example(fx81):
    points = find_residue_points(fx81, 3, 43)
    descs = [pt.describe() for pt in points]
    assert any(d["alpha"] == [13, 0, 0] and d["zeta"] == [36, 0, 0] for d in descs)
    for d in descs:
        assert d["ell"] == 43 and d["cyclo_index"] == 3
        assert d["field_degree"] == 3


def test_residue_points_without_cyclotomic_part(fx11_4):
    points = find_residue_points(fx11_4, 1, 5)
    assert len(points) == 1
    d = points[0].describe()
    assert d["alpha"] == [1, 2] and d["degree"] == 2
    assert "zeta" not in d and "cyclo_index" not in d


def test_residue_point_count_matches_gcd_formula(fx81, fx11_4):
    for fixture, n, ell in ((fx81, 3, 7), (fx81, 3, 1171), (fx11_4, 1, 61), (fx11_4, 3, 11)):
        fdegs = factor_degree_multiset(fixture.field_poly, ell)
        if n > 1:
            pdegs = factor_degree_multiset(cyclotomic_polynomial(n), ell)
        else:
            pdegs = [(1, 1)]
        expected = sum(cf * cp * math.gcd(df, dp) for df, cf in fdegs for dp, cp in pdegs)
        assert len(find_residue_points(fixture, n, ell)) == expected


def test_reduce_vector_is_a_ring_map(fx11_4, fx81):
    pt = find_residue_points(fx11_4, 1, 61)[0]
    # alpha^2 = 2 alpha + 2 must hold for the reduced image
    a = pt.alpha_image
    assert a * a == 2 * a + 2
    # multiplicativity of the reduced eigenvalues: a_2 a_5 = a_10
    pt81 = find_residue_points(fx81, 1, 7)[0]
    a2 = pt81.reduce_vector(fx81.a(2))
    a5 = pt81.reduce_vector(fx81.a(5))
    a10 = pt81.reduce_vector(fx81.a(10))
    assert a2 * a5 == a10
    # and the prime-power recurrence a_4 = a_2^2 - 2^(k-1)
    a4 = pt81.reduce_vector(fx81.a(4))
    assert a4 == a2 * a2 - 32


def test_denominator_obstruction_routes_to_norm_mode(fx81):
    with pytest.raises(DenominatorObstruction):
        find_residue_points(fx81, 3, 2)


def test_residue_points_input_validation(fx11_4):
    with pytest.raises(DomainError):
        find_residue_points(fx11_4, 1, 15)
    with pytest.raises(DomainError):
        find_residue_points(fx11_4, 0, 5)


# -- compositum norms ---------------------------------------------------------------


def test_compositum_norm_known_value():
    # product over roots of x^2 - 2 and z^2 + 1 of (alpha - zeta) = 9
    f = [-2, 0, 1]
    phi = [1, 0, 1]
    assert compositum_norm([0, 1], [0, 1], f, phi) == 9


def test_compositum_norm_zero_when_images_collide():
    # P(alpha) = 1 for alpha = 1; Q(zeta) = -zeta^2 = 1 for zeta = +-i
    assert compositum_norm([0, 0, 1], [0, 0, -1], [-1, 1], [1, 0, 1]) == 0


def test_compositum_norm_against_numeric_product():
    f = [792, -72, -84, 3, 1]
    phi = [1, 1, 1]  # zeta_3
    P = [Fraction(0), Fraction(1)]  # alpha itself
    Q = [Fraction(-1), Fraction(2)]  # 2 zeta - 1
    exact = compositum_norm(P, Q, f, phi)
    with mpmath.workdps(40):
        alphas = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f)], maxsteps=200)
        zetas = mpmath.polyroots([mpmath.mpf(c) for c in reversed(phi)], maxsteps=200)
        prod = mpmath.mpc(1)
        for a in alphas:
            for z in zetas:
                prod *= a - (2 * z - 1)
        target = mpmath.mpf(exact.numerator) / exact.denominator
        assert abs(prod - target) < 1e-20 * (1 + abs(target))


def test_compositum_norm_rejects_constant_minimal_polys():
    with pytest.raises(DomainError):
        compositum_norm([0, 1], [0, 1], [5], [1, 0, 1])


# -- fixture validation ---------------------------------------------------------------


def _base_fixture_dict():
    return {
        "label": "test",
        "weight": 4,
        "level": 11,
        "field_poly": [-2, -2, 1],
        "an": {"1": ["1"], "2": ["0", "1"]},
        "non_cm": True,
    }


def test_fixture_short_vectors_are_zero_padded():
    fx = NewformFixture.from_dict(_base_fixture_dict())
    assert fx.a(1) == (Fraction(1), Fraction(0))
    assert fx.a(2) == (Fraction(0), Fraction(1))
    assert fx.n_max == 2 and fx.degree() == 2


def test_fixture_rejections():
    bad = _base_fixture_dict()
    bad["field_poly"] = [-2, -2, 3]
    with pytest.raises(FixtureError, match="monic"):
        NewformFixture.from_dict(bad)

    bad = _base_fixture_dict()
    bad["field_poly"] = [-1, 0, 1]  # x^2 - 1 is reducible
    with pytest.raises(FixtureError, match="reducible"):
        NewformFixture.from_dict(bad)

    bad = _base_fixture_dict()
    bad["an"] = {"1": ["2"]}
    with pytest.raises(FixtureError, match="a_1"):
        NewformFixture.from_dict(bad)

    bad = _base_fixture_dict()
    bad["an"]["3"] = ["1", "0", "5"]
    with pytest.raises(FixtureError, match="coordinates"):
        NewformFixture.from_dict(bad)

    bad = _base_fixture_dict()
    bad["weight"] = 3
    with pytest.raises(FixtureError, match="weight"):
        NewformFixture.from_dict(bad)

    bad = _base_fixture_dict()
    del bad["field_poly"]
    with pytest.raises(FixtureError, match="missing"):
        NewformFixture.from_dict(bad)

    bad = _base_fixture_dict()
    bad["an"]["0"] = ["1"]
    with pytest.raises(FixtureError, match="out of range"):
        NewformFixture.from_dict(bad)


def test_fixture_steinberg_validation():
    good = {
        "label": "t",
        "weight": 2,
        "level": 11,
        "field_poly": [0, 1],
        "an": {"1": ["1"], "11": ["1"]},
        "steinberg_signs": {"11": 1},
    }
    fx = NewformFixture.from_dict(good)
    assert fx.steinberg_signs == {11: 1}

    bad = dict(good)
    bad["steinberg_signs"] = {"11": 2}
    with pytest.raises(FixtureError, match="sign"):
        NewformFixture.from_dict(bad)

    bad = dict(good)
    bad["steinberg_signs"] = {"7": 1}  # 7 does not divide 11
    with pytest.raises(FixtureError, match="exactly divide"):
        NewformFixture.from_dict(bad)

    bad = dict(good)
    bad["an"] = {"1": ["1"], "11": ["-1"]}  # contradicts sign +1
    with pytest.raises(FixtureError, match="contradicts"):
        NewformFixture.from_dict(bad)


def test_fixture_level_square_divisor_forces_vanishing_ap():
    bad = {
        "label": "t",
        "weight": 6,
        "level": 81,
        "field_poly": [0, 1],
        "an": {"1": ["1"], "3": ["1"]},
    }
    with pytest.raises(FixtureError, match="vanish"):
        NewformFixture.from_dict(bad)


def test_fixture_from_json_file_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    with pytest.raises(FixtureError, match="JSON"):
        NewformFixture.from_json_file(p)
    p2 = tmp_path / "ok.json"
    p2.write_text(json.dumps(_base_fixture_dict()), encoding="utf-8")
    fx = NewformFixture.from_json_file(p2)
    with pytest.raises(DomainError):
        fx.a(50)
