"""Standard invariants of X_0(N) and dimensions of cusp-form spaces.

Supplies the genus/index/elliptic-point data, dim S_k(Gamma_0(N)), the new
subspace dimension through Moebius-style inclusion-exclusion over divisor
levels, and the Sturm bound ceil(k * index / 12).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import DomainError, factorize


@dataclass(frozen=True)
class LevelInvariants:
    N: int
    index: int
    nu2: int
    nu3: int
    nu_inf: int
    genus: int


@lru_cache(maxsize=None)
def level_invariants(N: int) -> LevelInvariants:
    if N < 1:
        raise DomainError(f"level must be positive, got {N}")
    fac = factorize(N).factors
    index = N
    for p, _ in fac:
        index = index // p * (p + 1)

    nu2 = _count_elliptic(N, fac, -1)
    nu3 = _count_elliptic(N, fac, -3)

    nu_inf = 0
    for d in _divisors(N):
        nu_inf += _phi(math.gcd(d, N // d))

    genus_frac = 1 + Fraction(index, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)
    assert genus_frac.denominator == 1, (N, genus_frac)
    genus = int(genus_frac)
    assert genus >= 0
    return LevelInvariants(N, index, nu2, nu3, nu_inf, genus)


def _count_elliptic(N: int, fac, disc: int) -> int:
    """Number of elliptic points of order 2 (disc=-1 => i) or 3 (disc=-3)."""
    if disc == -1:
        if N % 4 == 0:
            return 0
        count = 1
        for p, _ in fac:
            if p == 2:
                continue
            if p % 4 == 1:
                count *= 2
            elif p % 4 == 3:
                return 0
        return count
    if N % 9 == 0:
        return 0
    count = 1
    for p, _ in fac:
        if p == 3:
            continue
        if p % 3 == 1:
            count *= 2
        elif p % 3 == 2:
            return 0
    return count


def _divisors(N: int) -> list[int]:
    divs = [1]
    for p, e in factorize(N).factors:
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _phi(n: int) -> int:
    out = n
    for p, _ in factorize(n).factors if n > 1 else []:
        out = out // p * (p - 1)
    return out


def dim_cusp_forms(k: int, N: int) -> int:
    """dim S_k(Gamma_0(N)) for even k >= 2."""
    if k % 2 or k < 2:
        raise DomainError(f"weight must be even and >= 2, got {k}")
    inv = level_invariants(N)
    if k == 2:
        return inv.genus
    dim = (
        (k - 1) * (inv.genus - 1)
        + (k // 2 - 1) * inv.nu_inf
        + (k // 4) * inv.nu2
        + (k // 3) * inv.nu3
    )
    assert dim >= 0
    return dim


@lru_cache(maxsize=None)
def _beta(n: int) -> int:
    """Multiplicative, beta(p) = -2, beta(p^2) = 1, beta(p^e) = 0 for e >= 3."""
    out = 1
    for _, e in factorize(n).factors if n > 1 else []:
        if e == 1:
            out *= -2
        elif e == 2:
            out *= 1
        else:
            return 0
    return out


def dim_new(k: int, N: int) -> int:
    """Dimension of the new subspace of S_k(Gamma_0(N))."""
    total = 0
    for M in _divisors(N):
        b = _beta(N // M)
        if b:
            total += b * dim_cusp_forms(k, M)
    assert total >= 0, (k, N, total)
    return total


def sturm_bound(k: int, N: int) -> int:
    """ceil(k * [SL_2(Z) : Gamma_0(N)] / 12)."""
    inv = level_invariants(N)
    return -(-k * inv.index // 12)


# Inline self-checks.
assert level_invariants(11).genus == 1 and level_invariants(23).genus == 2
assert dim_cusp_forms(2, 1) == 0 and dim_cusp_forms(2, 23) == 2
assert dim_new(6, 81) == 18 and dim_cusp_forms(6, 81) == 39
assert dim_new(4, 11) == 2 and dim_new(2, 23) == 2
assert sturm_bound(6, 81) == 54 and sturm_bound(2, 23) == 4 and sturm_bound(2, 1) == 1
