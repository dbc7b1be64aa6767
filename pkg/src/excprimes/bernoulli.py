"""Classical and character-twisted Bernoulli numbers, plus numeric L-values.

B_{k,chi} is computed through the Bernoulli-polynomial identity
B_{k,chi} = f^(k-1) * sum_{a=1..f} chi(a) B_k(a/f), exact over Q(zeta_ord).
The numeric L(k, chi) goes through per-class Hurwitz zeta values and serves
as an independent cross-check of the exact route.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exact import DomainError, FactoredInteger, factorize
from .cyclotomic import CycloElement
from .characters import DirichletCharacter


class VacuousClauseError(ValueError):
    """A divisibility clause whose target vanishes constrains nothing."""


@lru_cache(maxsize=None)
def bernoulli_classical(m: int) -> Fraction:
    """B_m under the generating-function convention (B_1 = -1/2)."""
    if m < 0:
        raise DomainError(f"Bernoulli index must be nonnegative, got {m}")
    if m == 0:
        return Fraction(1)
    if m % 2 == 1 and m > 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(m):
        acc += math.comb(m + 1, j) * bernoulli_classical(j)
    return -acc / (m + 1)


def bernoulli_polynomial(m: int, x: Fraction) -> Fraction:
    """B_m(x) = sum_j C(m,j) B_j x^(m-j)."""
    x = Fraction(x)
    acc = Fraction(0)
    for j in range(m + 1):
        acc += math.comb(m, j) * bernoulli_classical(j) * x ** (m - j)
    return acc


def von_staudt_denominator(m: int) -> int:
    """Product of primes p with (p-1) | m; the exact denominator of B_m, m even."""
    if m <= 0 or m % 2:
        raise DomainError(f"need a positive even index, got {m}")
    out = 1
    for p in range(2, m + 2):
        if m % (p - 1) == 0 and _is_small_prime(p):
            out *= p
    return out


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, int(math.isqrt(p)) + 1):
        if p % q == 0:
            return False
    return True


def bernoulli_generalized(k: int, chi: DirichletCharacter) -> CycloElement:
    """B_{k,chi} as an exact element of Q(zeta_ord(chi))."""
    if not chi.is_primitive():
        raise DomainError("bernoulli_generalized requires a primitive character")
    f = chi.modulus
    total = CycloElement(1, [Fraction(0)])
    for a in range(1, f + 1):
        if math.gcd(a, f) != 1:
            continue
        total = total + chi.value(a) * bernoulli_polynomial(k, Fraction(a, f))
    return Fraction(f) ** (k - 1) * total


def bernoulli_norm_numerator(k: int, eps: DirichletCharacter) -> FactoredInteger:
    """Factored numerator of |N(B_{k,eps} / 2k)|, norm from Q(zeta_ord(eps))."""
    b = bernoulli_generalized(k, eps)
    if not b:
        raise VacuousClauseError(
            f"B_{{{k},chi({eps.modulus},{eps.index})}} = 0: clause is vacuous"
        )
    norm = (b / (2 * k)).norm()
    return factorize(abs(norm.numerator))


def lvalue_numeric(k: int, chi: DirichletCharacter, precision: int = 50):
    """L(k, chi) by Hurwitz-zeta summation over residue classes (mpmath)."""
    if k < 2 or k % 2:
        raise DomainError(f"need even k >= 2, got {k}")
    if not chi.is_even():
        raise DomainError("numeric L-values implemented for even characters only")
    import mpmath

    with mpmath.workdps(precision):
        f = chi.modulus
        total = mpmath.mpc(0)
        for a in range(1, f + 1):
            if math.gcd(a, f) != 1:
                continue
            total += chi.value(a).embed_numeric(precision) * mpmath.zeta(
                k, mpmath.mpf(a) / f
            )
        return total / mpmath.mpf(f) ** k


def lvalue_functional_rhs(k: int, chi: DirichletCharacter, precision: int = 50):
    """-W(chi) (2 i pi)^k / ((k-1)! f^k) * B_{k,chi^(-1)} / 2k, numerically."""
    from .cyclotomic import gauss_sum_exact

    import mpmath

    with mpmath.workdps(precision):
        f = chi.modulus
        w = gauss_sum_exact(chi).embed_numeric(precision)
        ck = (2j * mpmath.pi) ** k / mpmath.factorial(k - 1)
        b = bernoulli_generalized(k, chi.inverse()).embed_numeric(precision)
        return -w * ck / mpmath.mpf(f) ** k * b / (2 * k)


# Inline self-checks.
assert bernoulli_classical(6) == Fraction(1, 42)
assert bernoulli_classical(0) == 1 and bernoulli_classical(3) == 0
assert bernoulli_classical(1) == Fraction(-1, 2)
assert bernoulli_polynomial(1, Fraction(1)) == Fraction(1, 2)  # B_1(1) = +1/2
assert von_staudt_denominator(6) == 42
