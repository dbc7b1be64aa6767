"""Dense univariate polynomial helpers over Fraction (and int) coefficients.

Polynomials are lists indexed by degree (lowest degree first), trimmed so the
last entry is nonzero; the zero polynomial is the empty list. The resultant
follows the fraction-free subresultant PRS to keep intermediate integers
small; rational inputs are cleared to integer polynomials first.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exact import DomainError


def trim(poly: list) -> list:
    """Drop trailing zeros; [] is the zero polynomial."""
    i = len(poly)
    while i > 0 and poly[i - 1] == 0:
        i -= 1
    return poly[:i]


def degree(poly: list) -> int:
    """Degree, with deg 0 = -1 convention for the zero polynomial."""
    return len(poly) - 1


def add(f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] += c
    return trim(out)


def neg(f: list) -> list:
    return [-c for c in f]


def sub(f: list, g: list) -> list:
    return add(f, neg(g))


def mul(f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def scale(f: list, c) -> list:
    if c == 0:
        return []
    return [a * c for a in f]


def divmod_exact(f: list, g: list) -> tuple[list, list]:
    """Quotient and remainder over a field (Fraction coefficients)."""
    if not g:
        raise DomainError("division by the zero polynomial")
    f = [Fraction(c) for c in f]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lc = Fraction(g[-1])
    while len(f) >= len(g) and trim(f):
        f = trim(f)
        if len(f) < len(g):
            break
        k = len(f) - len(g)
        coeff = f[-1] / lc
        q[k] = coeff
        for i, b in enumerate(g):
            f[k + i] -= coeff * Fraction(b)
        f = f[:-1]
    return trim(q), trim(f)


def poly_mod(f: list, g: list) -> list:
    return divmod_exact(f, g)[1]


def evaluate(f: list, x):
    """Horner evaluation; works for any coefficient/point ring."""
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def content(f: list[int]) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, abs(c))
    return g if g else 1


def _pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    """prem(f, g): remainder of lc(g)^(deg f - deg g + 1) * f by g over Z."""
    f = list(f)
    d = len(f) - len(g)
    lc = g[-1]
    e = d + 1
    while len(f) >= len(g) and trim(f):
        f = trim(f)
        if len(f) < len(g):
            break
        k = len(f) - len(g)
        top = f[-1]
        f = [lc * c for c in f]
        for i, b in enumerate(g):
            f[k + i] -= top * b
        f = trim(f[:-1])
        e -= 1
    # normalize remaining scaling so the total factor is exactly lc^(d+1)
    if e > 0:
        f = [lc ** e * c for c in f]
    return trim(f)


def _resultant_int(f: list[int], g: list[int]) -> int:
    """Resultant of nonzero integer polynomials via subresultant PRS."""
    f, g = trim(list(f)), trim(list(g))
    if not f or not g:
        raise DomainError("resultant of the zero polynomial")
    if degree(f) == 0:
        return f[0] ** degree(g)
    if degree(g) == 0:
        return g[0] ** degree(f)
    s = 1
    if degree(f) < degree(g):
        if degree(f) % 2 == 1 and degree(g) % 2 == 1:
            s = -s
        f, g = g, f
    a, b = content(f), content(g)
    f = [c // a for c in f]
    g = [c // b for c in g]
    t = a ** degree(g) * b ** degree(f)
    gg = 1  # running leading-coefficient product
    h = 1
    while True:
        dF, dG = degree(f), degree(g)
        delta = dF - dG
        if dF % 2 == 1 and dG % 2 == 1:
            s = -s
        r = _pseudo_rem(f, g)
        if not r:
            return 0  # nontrivial common factor
        f = g
        divisor = gg * h ** delta
        g = [c // divisor for c in r]
        gg = f[-1]
        if delta == 0:
            h = h  # unchanged when degrees drop by 0 via gg**0
        else:
            h = gg ** delta // h ** (delta - 1)
        if degree(g) == 0:
            break
    dF = degree(f)
    h = g[0] ** dF // h ** (dF - 1) if dF >= 1 else h
    return s * t * h


def _clear_denominators(f: list) -> tuple[list[int], int]:
    """Return (integer polynomial, d) with int_poly = d * f."""
    d = 1
    for c in f:
        d = math.lcm(d, Fraction(c).denominator)
    out = []
    for c in f:
        q = Fraction(c) * d
        assert q.denominator == 1
        out.append(q.numerator)
    return out, d


def resultant(f: list, g: list) -> Fraction:
    """Res(f, g) for rational polynomials (fraction-free PRS underneath)."""
    f, g = trim(list(f)), trim(list(g))
    if not f or not g:
        raise DomainError("resultant of the zero polynomial")
    fi, df = _clear_denominators(f)
    gi, dg = _clear_denominators(g)
    r = _resultant_int(fi, gi)
    return Fraction(r, df ** degree(g) * dg ** degree(f))


def lagrange_interpolate(points: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """The unique polynomial of degree < len(points) through the points."""
    n = len(points)
    result: list[Fraction] = []
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = mul(basis, [-xj, Fraction(1)])
            denom *= xi - xj
        result = add(result, scale(basis, yi / denom))
    out = [Fraction(c) for c in result] + [Fraction(0)] * (n - len(result))
    return out[:n]


def gcd_poly(f: list, g: list) -> list:
    """Monic gcd over Q."""
    f, g = trim([Fraction(c) for c in f]), trim([Fraction(c) for c in g])
    while g:
        f, g = g, poly_mod(f, g)
    if f:
        lc = f[-1]
        f = [c / lc for c in f]
    return f


# Inline self-checks.
assert _resultant_int([1, 1, 1], [-1, 1]) == 3  # Res(x^2+x+1, x-1) = value at 1
assert resultant([1, 1, 1], [-1, 1]) == 3
assert resultant([-1, 1], [1, 1, 1]) == 3  # deg product even: same sign
assert resultant([Fraction(1, 2), 1], [1, 0, 1]) == Fraction(5, 4)  # (x+1/2): x^2+1 at -1/2
assert divmod_exact([1, 0, 1], [1, 1]) == ([-1, 1], [2])
