"""Dirichlet characters of (Z/mZ)^x with a fixed generator convention.

Generator convention (stable across runs, used for CLI addressing):
  - CRT over prime powers, components in increasing prime order;
  - odd p^e: the smallest primitive root g mod p, replaced by g + p when
    g^(p-1) = 1 mod p^2, giving one generator of order phi(p^e);
  - 2^1: no generators; 2^2: [-1] of order 2; 2^e (e >= 3): [-1, 5] of
    orders [2, 2^(e-2)].

A character is (modulus, exponents): exponent t on a generator of order d
means the generator maps to zeta_d^t. Characters are addressed externally
as (modulus, index) with index ranking exponent tuples lexicographically
(first generator most significant).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exact import DomainError, factorize
from .cyclotomic import CycloElement, zeta


@lru_cache(maxsize=None)
def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = [q for q, _ in factorize(p - 1).factors]
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
        g += 1


@lru_cache(maxsize=None)
def _component_generators(p: int, e: int) -> tuple[tuple[int, int], ...]:
    """Generators (residue, order) of (Z/p^eZ)^x under the fixed convention."""
    pe = p ** e
    if p == 2:
        if e == 1:
            return ()
        if e == 2:
            return ((3, 2),)
        return ((pe - 1, 2), (5, 2 ** (e - 2)))
    g = _smallest_primitive_root(p)
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    phi = pe // p * (p - 1)
    return ((g % pe, phi),)


@lru_cache(maxsize=None)
def _component_dlog(p: int, e: int) -> dict:
    """residue mod p^e -> exponent tuple over _component_generators(p, e)."""
    pe = p ** e
    gens = _component_generators(p, e)
    table = {1 % pe: tuple(0 for _ in gens)}
    if not gens:
        return table
    if len(gens) == 1:
        g, d = gens[0]
        x = 1
        for j in range(d):
            table[x] = (j,)
            x = x * g % pe
        assert x == 1
    else:
        (m1, d1), (g5, d5) = gens
        for s in range(d1):
            for j in range(d5):
                x = pow(m1, s, pe) * pow(g5, j, pe) % pe
                table[x] = (s, j)
    assert len(table) == (pe // p) * (p - 1)
    return table


@lru_cache(maxsize=None)
def _group(m: int) -> tuple:
    """((p, e, generators), ...) for the CRT components of (Z/mZ)^x."""
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    if m == 1:
        return ()
    return tuple((p, e, _component_generators(p, e)) for p, e in factorize(m).factors)


def generator_orders(m: int) -> tuple[int, ...]:
    orders = []
    for _, _, gens in _group(m):
        orders.extend(d for _, d in gens)
    return tuple(orders)


class DirichletCharacter:
    """Character of (Z/mZ)^x; immutable once constructed."""

    __slots__ = ("modulus", "exponents", "order", "conductor", "index")

    def __init__(self, modulus: int, exponents):
        orders = generator_orders(modulus)
        exps = tuple(int(e) % d for e, d in zip(exponents, orders))
        if len(exponents) != len(orders):
            raise DomainError(
                f"modulus {modulus} needs {len(orders)} exponents, got {len(exponents)}"
            )
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "exponents", exps)
        order = 1
        for e, d in zip(exps, orders):
            order = math.lcm(order, d // math.gcd(d, e))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "conductor", self._compute_conductor())
        idx = 0
        for e, d in zip(exps, orders):
            idx = idx * d + e
        object.__setattr__(self, "index", idx)

    def __setattr__(self, *args):
        raise AttributeError("DirichletCharacter is immutable")

    def _compute_conductor(self) -> int:
        cond = 1
        pos = 0
        for p, e, gens in _group(self.modulus):
            exps = self.exponents[pos : pos + len(gens)]
            pos += len(gens)
            if p != 2:
                (_, d) = gens[0]
                o = d // math.gcd(d, exps[0])
                if o > 1:
                    vp = 0
                    while o % p == 0:
                        o //= p
                        vp += 1
                    cond *= p ** (1 + vp)
            else:
                if e == 1:
                    continue
                if e == 2:
                    if exps[0] % 2 == 1:
                        cond *= 4
                else:
                    s, j = exps
                    d5 = gens[1][1]
                    o5 = d5 // math.gcd(d5, j)
                    if o5 > 1:
                        cond *= 4 * o5
                    elif s % 2 == 1:
                        cond *= 4
        return cond

    # -- evaluation ----------------------------------------------------------

    def value_exponent(self, a: int) -> Fraction:
        """t in [0,1) with chi(a) = e^(2 pi i t); requires gcd(a, m) = 1."""
        a %= self.modulus
        if math.gcd(a, self.modulus) != 1:
            raise DomainError(f"{a} is not a unit mod {self.modulus}")
        t = Fraction(0)
        pos = 0
        for p, e, gens in _group(self.modulus):
            table = _component_dlog(p, e)
            ks = table[a % p ** e]
            for (gen, d), k, x in zip(gens, ks, self.exponents[pos : pos + len(gens)]):
                t += Fraction(x * k, d)
            pos += len(gens)
        return t % 1

    def value(self, a: int) -> CycloElement:
        """chi(a) in Q(zeta_order); 0 when gcd(a, m) > 1."""
        a %= self.modulus
        if math.gcd(a, self.modulus) != 1:
            return CycloElement(1, [Fraction(0)])
        t = self.value_exponent(a) * self.order
        assert t.denominator == 1
        return zeta(self.order, t.numerator)

    def __call__(self, a: int) -> CycloElement:
        return self.value(a)

    def parity(self) -> str:
        return "even" if self.value_exponent(self.modulus - 1) == 0 else "odd"

    def is_even(self) -> bool:
        return self.parity() == "even"

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def is_trivial(self) -> bool:
        return self.order == 1

    # -- group operations ----------------------------------------------------

    def _combine(self, other, op):
        if not isinstance(other, DirichletCharacter):
            raise DomainError("can only combine with another character")
        if other.modulus != self.modulus:
            raise DomainError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}"
            )
        orders = generator_orders(self.modulus)
        return DirichletCharacter(
            self.modulus,
            tuple(op(e, f) % d for e, f, d in zip(self.exponents, other.exponents, orders)),
        )

    def __mul__(self, other):
        return self._combine(other, lambda e, f: e + f)

    def inverse(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(k * e for e in self.exponents))

    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"chi({self.modulus},{self.index})"

    # -- conductor descent -----------------------------------------------------

    def primitive_associate(self) -> "DirichletCharacter":
        """The primitive character mod conductor inducing this one."""
        f = self.conductor
        if f == self.modulus:
            return self
        exps = []
        for p, e, gens in _group(f):
            pe = p ** e
            for g, d in gens:
                x = self._lift_unit(g, pe)
                t = self.value_exponent(x) * d
                assert t.denominator == 1
                exps.append(t.numerator % d)
        out = DirichletCharacter(f, tuple(exps))
        assert out.conductor == f
        return out

    def _lift_unit(self, a: int, pe: int) -> int:
        """x = a mod pe, x = 1 mod (other prime powers of modulus), unit mod m."""
        m = self.modulus
        rest = 1
        for p, e in factorize(m).factors:
            q = p ** e
            if pe % p != 0:
                rest *= q
        # pe divides the p-part of m; lift a through that p-part directly
        p_part = 1
        for p, e in factorize(m).factors:
            if pe % p == 0:
                p_part = p ** e
        assert p_part % pe == 0 and math.gcd(a, pe) == 1
        # CRT: x = a (mod p_part works since value depends only on a mod conductor part)
        g, u, v = _egcd(p_part, rest)
        assert g == 1
        x = (a * rest * v + 1 * p_part * u) % (p_part * rest)
        assert x % pe == a % pe and math.gcd(x, m) == 1
        return x


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def character_count(m: int) -> int:
    count = 1
    for d in generator_orders(m):
        count *= d
    return count


def character_by_index(m: int, index: int) -> DirichletCharacter:
    orders = generator_orders(m)
    total = character_count(m)
    if not 0 <= index < total:
        raise DomainError(f"character index {index} out of range 0..{total - 1} for modulus {m}")
    exps = []
    for d in reversed(orders):
        exps.append(index % d)
        index //= d
    return DirichletCharacter(m, tuple(reversed(exps)))


def enumerate_characters(m: int, which: str = "all") -> list[DirichletCharacter]:
    """All characters mod m in index order, optionally filtered."""
    if which not in ("all", "even", "primitive", "even-primitive"):
        raise DomainError(f"unknown character filter {which!r}")
    out = []
    for i in range(character_count(m)):
        chi = character_by_index(m, i)
        if which == "even" and not chi.is_even():
            continue
        if which == "primitive" and not chi.is_primitive():
            continue
        if which == "even-primitive" and not (chi.is_primitive() and chi.is_even()):
            continue
        out.append(chi)
    return out


def trivial_character() -> DirichletCharacter:
    return DirichletCharacter(1, ())


def square_inverse_eps(nu: DirichletCharacter) -> DirichletCharacter:
    """(primitive character attached to nu^2)^(-1), on its conductor."""
    if not nu.is_primitive():
        raise DomainError("square_inverse_eps requires a primitive character")
    return (nu * nu).primitive_associate().inverse()


# Inline self-checks.
assert len(enumerate_characters(9, "all")) == 6
assert sorted(c.order for c in enumerate_characters(9, "primitive")) == [3, 3, 6, 6]
assert [c.order for c in enumerate_characters(1, "all")] == [1]
_nu = character_by_index(9, 2)
assert _nu.value(2) == zeta(3) and _nu.order == 3 and _nu.is_primitive()
assert _nu.value(5) == zeta(3, 2)  # 2^5 = 5 mod 9
assert not _nu.value(3)
assert _nu.parity() == "even" and _nu.conductor == 9
assert square_inverse_eps(_nu) == _nu  # nu^3 = 1 so (nu^2)^(-1) = nu
assert character_by_index(9, 3).conductor == 3  # quadratic factors through mod 3
assert trivial_character().is_primitive()
assert character_by_index(8, 1).conductor == 8 and character_by_index(8, 2).conductor == 4
