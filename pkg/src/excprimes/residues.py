"""Finite fields F_{ell^d}, newform fixtures, and residue points.

A residue point is a concrete reduction of the coefficient field (and, when
needed, a cyclotomic field) into one finite field: a pair (alpha_image,
zeta_image) with f(alpha) = 0 and Phi_n(zeta) = 0. Points are produced up to
Frobenius orbits with a lexicographically least canonical representative,
which keeps reports byte-identical across runs.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import DomainError, is_prime, factorize
from . import polys
from .cyclotomic import CycloElement, cyclotomic_polynomial


class FixtureError(ValueError):
    """A fixture file violates one of its load-time invariants."""


class DenominatorObstruction(ValueError):
    """ell divides a coefficient denominator: residue-point mode unavailable."""


# -- polynomials over F_p as int tuples, lowest degree first -------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    inv_lc = pow(m[-1], -1, p)
    while len(a) >= len(m):
        a = _ptrim(a)
        if len(a) < len(m):
            break
        c = a[-1] * inv_lc % p
        shift = len(a) - len(m)
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _ptrim(a[:-1])
    return _ptrim(a)


def _pmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return _pmonic(a, p)


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pderiv(a, p):
    return _ptrim([i * a[i] % p for i in range(1, len(a))])


def _psquarefree(a, p):
    """The radical (product of distinct irreducible factors) of a mod p."""
    a = _pmonic(_ptrim(list(a)), p)
    if len(a) <= 2:
        return a
    d = _pderiv(a, p)
    if not d:
        # a = g(x^p) = (g under identity Frobenius on F_p coefficients)^p
        root = [a[i] for i in range(0, len(a), p)]
        return _psquarefree(root, p)
    g = _pgcd(a, d, p)
    if len(g) == 1:
        return a
    quotient = _pdiv_exact(a, g, p)
    part = _psquarefree(g, p)
    extra = _pdiv_exact(part, _pgcd(part, quotient, p), p)
    return _pmul(quotient, extra, p)


def _pdiv_exact(a, b, p):
    a = list(a)
    inv_lc = pow(b[-1], -1, p)
    q = [0] * (len(a) - len(b) + 1)
    while _ptrim(a) and len(a) >= len(b):
        c = a[-1] * inv_lc % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = a[:-1]
        while a and a[-1] == 0 and len(a) >= len(b):
            a = a[:-1]
    assert not _ptrim(a), "division was not exact"
    return _ptrim(q)


def factor_degree_multiset(coeffs, p) -> list[tuple[int, int]]:
    """(degree, count) pairs for the distinct irreducible factors of coeffs mod p."""
    fp = _psquarefree([c % p for c in coeffs], p)
    if len(fp) <= 1:
        raise DomainError("polynomial vanishes mod p")
    out = []
    v = fp
    h = [0, 1]
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, v, p)
        g = _pgcd(_psub(h, [0, 1], p), v, p)
        if len(g) > 1:
            out.append((d, (len(g) - 1) // d))
            v = _pdiv_exact(v, g, p)
            h = _pmod(h, v, p)
    if len(v) > 1:
        out.append((len(v) - 1, 1))
    return out


def _pirreducible(m, p):
    d = len(m) - 1
    if d < 1 or m[-1] % p != 1:
        return False
    x = [0, 1]
    if _ppowmod(x, p ** d, m, p) != _pmod(x, m, p):
        return False
    for r in {r for r, _ in factorize(d).factors} if d > 1 else set():
        g = _pgcd(_psub(_ppowmod(x, p ** (d // r), m, p), x, p), m, p)
        if len(g) != 1:
            return False
    return True


# -- the field F_{ell^d} -------------------------------------------------------


class FiniteField:
    """F_{ell^d} as F_ell[x] mod a deterministic seeded irreducible polynomial."""

    __slots__ = ("p", "d", "q", "modulus")

    def __init__(self, ell: int, d: int):
        if not is_prime(ell):
            raise DomainError(f"field characteristic {ell} is not prime")
        if d < 1:
            raise DomainError(f"field degree must be >= 1, got {d}")
        object.__setattr__(self, "p", ell)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", ell ** d)
        object.__setattr__(self, "modulus", self._find_modulus(ell, d))

    def __setattr__(self, *args):
        raise AttributeError("FiniteField is immutable")

    @staticmethod
    def _find_modulus(p: int, d: int) -> tuple[int, ...]:
        if d == 1:
            return (0, 1)
        rng = random.Random(f"modulus:{p}:{d}")
        while True:
            cand = [rng.randrange(p) for _ in range(d)] + [1]
            if _pirreducible(cand, p):
                return tuple(cand)

    def element(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        vec = [c % self.p for c in coeffs]
        if len(vec) > self.d:
            vec = _pmod(vec, list(self.modulus), self.p)
        vec = vec + [0] * (self.d - len(vec))
        return FieldElement(self, tuple(vec[: self.d]))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def from_fraction(self, x: Fraction, context: str = "coefficient") -> "FieldElement":
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise DenominatorObstruction(
                f"{context}: denominator {x.denominator} is divisible by {self.p}"
            )
        return self.element(x.numerator * pow(x.denominator, -1, self.p))

    def all_elements(self):
        for tup in itertools.product(range(self.p), repeat=self.d):
            yield FieldElement(self, tup)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    def __repr__(self):
        return f"F_{self.p}^{self.d}" if self.d > 1 else f"F_{self.p}"


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *args):
        raise AttributeError("FieldElement is immutable")

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.element(other)
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise DomainError("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return FieldElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        prod = _pmul(list(self.coeffs), list(other.coeffs), self.field.p)
        red = _pmod(prod, list(self.field.modulus), self.field.p)
        red = red + [0] * (self.field.d - len(red))
        return FieldElement(self.field, tuple(red))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise DomainError("inverse of zero field element")
        p = self.field.p
        r0, r1 = list(self.field.modulus), _ptrim(list(self.coeffs))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        inv_c = pow(r1[0], -1, p)
        s1 = [c * inv_c % p for c in s1]
        return self.field.element(s1)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def trace(self) -> int:
        """Absolute trace down to F_p, returned as an int mod p."""
        acc = self.field.zero()
        x = self
        for _ in range(self.field.d):
            acc = acc + x
            x = x.frobenius()
        assert all(c == 0 for c in acc.coeffs[1:])
        return acc.coeffs[0]

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.d, self.coeffs))

    def sort_key(self):
        return self.coeffs

    def __repr__(self):
        if self.field.d == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def _pdivmod(a, b, p):
    a = list(a)
    inv_lc = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while _ptrim(a) and len(a) >= len(b):
        c = a[-1] * inv_lc % p
        q[len(a) - len(b)] = c
        for i, y in enumerate(b):
            a[len(a) - len(b) + i] = (a[len(a) - len(b) + i] - c * y) % p
        a = _ptrim(a[:-1])
    return _ptrim(q), _ptrim(a)


def is_square_in_field(x: FieldElement) -> bool:
    """Euler criterion; zero counts as a square. Characteristic 2 is an error."""
    if x.field.p == 2:
        raise DomainError("squareness via the Euler criterion needs odd characteristic")
    if not x:
        return True
    return x ** ((x.field.q - 1) // 2) == x.field.one()


def quadratic_irreducible(a: FieldElement, c: FieldElement) -> bool:
    """Is X^2 - aX + c irreducible over the field of a and c?

    Odd characteristic: discriminant a^2 - 4c a non-square (and nonzero).
    Characteristic 2: a != 0 and Tr(c / a^2) = 1 (Artin-Schreier criterion).
    """
    if a.field.p == 2:
        if not a:
            return False  # X^2 + c is a Frobenius square
        return (c / (a * a)).trace() == 1
    disc = a * a - 4 * c
    return bool(disc) and not is_square_in_field(disc)


# -- root finding ---------------------------------------------------------------


def poly_roots_in_field(coeffs, field: FiniteField) -> list[FieldElement]:
    """All roots in F_{p^d} of an integer polynomial, sorted canonically."""
    p = field.p
    fp = _ptrim([c % p for c in coeffs])
    if not fp:
        raise DomainError("polynomial vanishes identically mod p")
    if len(fp) == 1:
        return []
    if field.q <= 10 ** 6:
        fe = [field.element(c) for c in fp]
        roots = []
        for x in field.all_elements():
            acc = field.zero()
            for c in reversed(fe):
                acc = acc * x + c
            if not acc:
                roots.append(x)
        return sorted(roots, key=lambda r: r.sort_key())
    # large field: strip to the product of linear factors, then split it
    fF = [field.element(c) for c in fp]
    fF = _fmonic(fF)
    x_poly = [field.zero(), field.one()]
    xq = _fpowmod(x_poly, field.q, fF, field)
    h = _fgcd(_fsub(xq, x_poly, field), fF, field)
    roots = []
    _split_linear_product(h, field, roots, random.Random(f"edf:{p}:{field.d}:{tuple(fp)}"))
    return sorted(set(roots), key=lambda r: r.sort_key())


def _ftrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _fsub(a, b, field):
    n = max(len(a), len(b))
    z = field.zero()
    return _ftrim([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)])


def _fmul(a, b, field):
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _ftrim(out)


def _fmonic(a):
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _fmod(a, m, field):
    a = list(a)
    inv_lc = m[-1].inverse()
    while _ftrim(a) and len(a) >= len(m):
        c = a[-1] * inv_lc
        shift = len(a) - len(m)
        for i, y in enumerate(m):
            a[shift + i] = a[shift + i] - c * y
        a = _ftrim(a[:-1])
    return _ftrim(a)


def _fgcd(a, b, field):
    a, b = _ftrim(list(a)), _ftrim(list(b))
    while b:
        a, b = b, _fmod(a, b, field)
    return _fmonic(a) if a else a


def _fpowmod(base, e, m, field):
    result = [field.one()]
    base = _fmod(list(base), m, field)
    while e:
        if e & 1:
            result = _fmod(_fmul(result, base, field), m, field)
        base = _fmod(_fmul(base, base, field), m, field)
        e >>= 1
    return result


def _split_linear_product(h, field, out: list, rng: random.Random):
    """h is monic and splits into distinct linear factors; collect the roots."""
    h = _ftrim(list(h))
    if len(h) <= 1:
        return
    if len(h) == 2:
        out.append(-h[0] / h[1])
        return
    while True:
        a = field.element([rng.randrange(field.p) for _ in range(field.d)])
        shifted = [a, field.one()]
        if field.p == 2:
            # trace polynomial of a random multiple splits Artin-Schreier style
            t = []
            term = _fmod([field.zero(), a], h, field)
            for _ in range(field.d):
                t = _fsub(t, [-c for c in term], field)
                term = _fmod(_fmul(term, term, field), h, field)
            g = _fgcd(t, h, field)
        else:
            power = _fpowmod(shifted, (field.q - 1) // 2, h, field)
            g = _fgcd(_fsub(power, [field.one()], field), h, field)
        if 1 < len(g) < len(h):
            _split_linear_product(g, field, out, rng)
            _split_linear_product(_fdiv_exact(h, g, field), field, out, rng)
            return


def _fdiv_exact(a, b, field):
    a = list(a)
    inv_lc = b[-1].inverse()
    q = [field.zero()] * (len(a) - len(b) + 1)
    while _ftrim(a) and len(a) >= len(b):
        c = a[-1] * inv_lc
        q[len(a) - len(b)] = c
        for i, y in enumerate(b):
            a[len(a) - len(b) + i] = a[len(a) - len(b) + i] - c * y
        a = _ftrim(a[:-1])
    assert not _ftrim(a)
    return _ftrim(q)


# -- resultants and compositum norms --------------------------------------------


def resultant(f, g) -> Fraction:
    """Res(f, g) over Q; zero polynomial is a domain error."""
    return polys.resultant(list(f), list(g))


def compositum_norm(P, Q, f, Phi) -> Fraction:
    """Product of P(alpha_i) - Q(zeta_j) over all root pairs of f and Phi.

    Computed as Res_x(f(x), R(x)) with R(x) = Res_z(Phi(z), P(x) - Q(z)),
    where R is recovered by evaluation and Lagrange interpolation.
    """
    P = polys.trim([Fraction(c) for c in P])
    Q = polys.trim([Fraction(c) for c in Q])
    f = polys.trim(list(f))
    Phi = polys.trim(list(Phi))
    if polys.degree(f) < 1 or polys.degree(Phi) < 1:
        raise DomainError("minimal polynomials must have positive degree")
    e = polys.degree(Phi)

    def sample(t: Fraction) -> Fraction:
        pt = polys.evaluate(P, t) if P else Fraction(0)
        zpoly = polys.trim([pt - (Q[0] if Q else Fraction(0))] + [-c for c in Q[1:]])
        if not zpoly:
            return Fraction(0)
        return polys.resultant(Phi, zpoly)

    deg_P = max(polys.degree(P), 0)
    n_points = e * deg_P + 1
    pts = [(Fraction(t), sample(Fraction(t))) for t in range(n_points)]
    R = polys.trim(polys.lagrange_interpolate(pts))
    if not R:
        return Fraction(0)
    if polys.degree(R) == 0:
        return R[0] ** polys.degree(f)
    return polys.resultant(f, R)


# -- newform fixtures -------------------------------------------------------------


def _parse_rational(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int):
        return Fraction(s)
    raise FixtureError(f"coefficient entries must be decimal strings, got {s!r}")


class NewformFixture:
    """Ingested newform data: defining polynomial plus power-basis a_n vectors."""

    __slots__ = (
        "label",
        "weight",
        "level",
        "field_poly",
        "an",
        "non_cm",
        "steinberg_signs",
        "n_max",
    )

    def __init__(self, label, weight, level, field_poly, an, non_cm=False, steinberg_signs=None):
        self.label = str(label)
        self.weight = int(weight)
        self.level = int(level)
        self.field_poly = tuple(int(c) for c in field_poly)
        self.non_cm = bool(non_cm)
        self.steinberg_signs = {int(p): int(s) for p, s in (steinberg_signs or {}).items()}
        deg = len(self.field_poly) - 1
        parsed = {}
        for key, vec in an.items():
            n = int(key)
            if n < 1:
                raise FixtureError(f"coefficient index {n} out of range")
            if len(vec) > deg:
                raise FixtureError(
                    f"a_{n} has {len(vec)} coordinates, field degree is {deg}"
                )
            padded = tuple(vec) + (0,) * (deg - len(vec))
            parsed[n] = tuple(_parse_rational(c) for c in padded)
        self.an = parsed
        n = 0
        while (n + 1) in parsed:
            n += 1
        self.n_max = n
        self._validate()

    def _validate(self):
        if self.weight < 2 or self.weight % 2:
            raise FixtureError(f"weight must be even and >= 2, got {self.weight}")
        if self.level < 1:
            raise FixtureError(f"level must be positive, got {self.level}")
        deg = len(self.field_poly) - 1
        if deg < 1:
            raise FixtureError("field_poly must have positive degree")
        if self.field_poly[-1] != 1:
            raise FixtureError("field_poly must be monic")
        if not _is_irreducible_over_q(list(self.field_poly)):
            raise FixtureError("field_poly is reducible over Q")
        one = tuple([Fraction(1)] + [Fraction(0)] * (deg - 1))
        if self.an.get(1) != one:
            raise FixtureError("a_1 != 1: fixture is not a normalized eigenform")
        for p, e in factorize(self.level).factors:
            if e >= 2 and p in self.an:
                if any(self.an[p]):
                    raise FixtureError(f"a_{p} must vanish since {p}^2 divides the level")
        for p, s in self.steinberg_signs.items():
            if s not in (1, -1):
                raise FixtureError(f"steinberg sign for {p} must be +-1, got {s}")
            if self.level % p != 0 or (self.level // p) % p == 0:
                raise FixtureError(f"{p} does not exactly divide the level {self.level}")
            if p in self.an:
                expected = Fraction(s) * p ** (self.weight // 2 - 1)
                vec = self.an[p]
                if vec[0] != expected or any(vec[1:]):
                    raise FixtureError(
                        f"a_{p} = {vec} contradicts steinberg sign {s}"
                    )

    @classmethod
    def from_dict(cls, data: dict) -> "NewformFixture":
        try:
            return cls(
                data["label"],
                data["weight"],
                data["level"],
                data["field_poly"],
                data["an"],
                data.get("non_cm", False),
                data.get("steinberg_signs"),
            )
        except KeyError as exc:
            raise FixtureError(f"fixture is missing required key {exc}") from exc

    @classmethod
    def from_json_file(cls, path) -> "NewformFixture":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FixtureError(f"fixture is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def a(self, n: int) -> tuple:
        if n not in self.an:
            raise DomainError(f"a_{n} is not available in fixture {self.label}")
        return self.an[n]

    def degree(self) -> int:
        return len(self.field_poly) - 1

    def __repr__(self):
        return f"NewformFixture({self.label}, k={self.weight}, N={self.level}, n<={self.n_max})"


def _is_irreducible_over_q(coeffs: list[int]) -> bool:
    """Monic integer polynomial irreducibility: inert-prime sieve, sympy fallback."""
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    from .exact import primes_up_to

    for p in primes_up_to(200):
        if coeffs[0] % p == 0:
            continue
        try:
            degs = factor_degree_multiset(coeffs, p)
        except DomainError:
            continue
        if sum(d * c for d, c in degs) != deg:
            continue  # lost degree mod p, not usable
        if degs == [(deg, 1)]:
            return True
    import sympy

    x = sympy.Symbol("x")
    poly = sum(c * x ** i for i, c in enumerate(coeffs))
    return sympy.Poly(poly, x).is_irreducible


# -- residue points ----------------------------------------------------------------


@dataclass(frozen=True)
class ResiduePoint:
    ell: int
    field: FiniteField
    alpha_image: FieldElement
    zeta_image: FieldElement | None
    cyclo_index: int
    degree: int

    def reduce_vector(self, vec) -> FieldElement:
        """Power-basis coordinates in alpha down to the residue field."""
        acc = self.field.zero()
        for c in reversed([Fraction(v) for v in vec]):
            acc = acc * self.alpha_image + self.field.from_fraction(c, "coefficient of alpha")
        return acc

    def reduce_cyclo(self, x: CycloElement) -> FieldElement:
        """Image of an element of Q(zeta_m), for m dividing the point's index."""
        if self.cyclo_index % x.n != 0:
            raise DomainError(
                f"cannot reduce Q(zeta_{x.n}) through a point for zeta_{self.cyclo_index}"
            )
        x = x.embed(self.cyclo_index)
        z = self.zeta_image if self.zeta_image is not None else self.field.one()
        acc = self.field.zero()
        for c in reversed(x.coeffs):
            acc = acc * z + self.field.from_fraction(c, "cyclotomic coordinate")
        return acc

    def sort_key(self):
        zkey = self.zeta_image.sort_key() if self.zeta_image is not None else ()
        return (self.alpha_image.sort_key(), zkey)

    def describe(self) -> dict:
        out = {
            "ell": self.ell,
            "field_degree": self.field.d,
            "field_modulus": list(self.field.modulus),
            "alpha": list(self.alpha_image.coeffs),
            "degree": self.degree,
        }
        if self.zeta_image is not None:
            out["zeta"] = list(self.zeta_image.coeffs)
            out["cyclo_index"] = self.cyclo_index
        return out


def find_residue_points(fixture: NewformFixture, n: int, ell: int) -> list[ResiduePoint]:
    """All (alpha, zeta_n) reductions mod ell, one per Frobenius orbit."""
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if n < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {n}")
    for idx in sorted(fixture.an):
        for c in fixture.an[idx]:
            if c.denominator % ell == 0:
                raise DenominatorObstruction(
                    f"a_{idx} has denominator divisible by {ell}; "
                    "use norm-divisibility mode"
                )
    f = list(fixture.field_poly)
    fdegs = factor_degree_multiset(f, ell)
    degs_all = [d for d, _ in fdegs]
    phi = None
    if n > 1:
        phi = list(cyclotomic_polynomial(n))
        pdegs = factor_degree_multiset(phi, ell)
        degs_all += [d for d, _ in pdegs]
    else:
        pdegs = [(1, 1)]
    D = math.lcm(*degs_all)
    field = FiniteField(ell, D)
    alpha_roots = poly_roots_in_field(f, field)
    if phi is not None:
        zeta_roots = poly_roots_in_field(phi, field)
    else:
        zeta_roots = [None]

    seen = set()
    points = []
    for a in alpha_roots:
        for z in zeta_roots:
            key = (a.coeffs, z.coeffs if z is not None else None)
            if key in seen:
                continue
            orbit = []
            aa, zz = a, z
            while True:
                orbit.append((aa, zz))
                seen.add((aa.coeffs, zz.coeffs if zz is not None else None))
                aa = aa.frobenius()
                zz = zz.frobenius() if zz is not None else None
                if (aa.coeffs, zz.coeffs if zz is not None else None) == key:
                    break
            rep = min(
                orbit,
                key=lambda t: (t[0].sort_key(), t[1].sort_key() if t[1] is not None else ()),
            )
            points.append(
                ResiduePoint(ell, field, rep[0], rep[1], n, len(orbit))
            )
    expected = sum(
        cf * cp * math.gcd(df, dp) for df, cf in fdegs for dp, cp in pdegs
    )
    assert len(points) == expected, (len(points), expected)
    return sorted(points, key=lambda pt: pt.sort_key())
