"""Truncated exact q-expansions and the Eisenstein series used for congruences.

A QExpansion stores coefficients 0..truncation; reading past the truncation
raises, and operators that consume coefficients (U_p, T_r) shrink the
truncation rather than zero-fill. Coefficients are CycloElement, Fraction,
or small ints (mod-ell series).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import DomainError, factorize
from .cyclotomic import CycloElement
from .characters import DirichletCharacter
from .bernoulli import bernoulli_classical, bernoulli_generalized


class TruncationError(ValueError):
    """Requested coefficients beyond the stored truncation."""


class QExpansion:
    """Formal series sum a_n q^n known exactly for 0 <= n <= truncation."""

    __slots__ = ("coeffs", "weight", "level")

    def __init__(self, coeffs, weight: int, level: int):
        if not coeffs:
            raise DomainError("a q-expansion needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "level", level)

    def __setattr__(self, *args):
        raise AttributeError("QExpansion is immutable")

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int):
        if n < 0:
            raise DomainError(f"coefficient index must be nonnegative, got {n}")
        if n > self.truncation:
            raise TruncationError(
                f"coefficient {n} requested but series is truncated at {self.truncation}"
            )
        return self.coeffs[n]

    def truncate(self, new_truncation: int) -> "QExpansion":
        if new_truncation > self.truncation:
            raise TruncationError(
                f"cannot extend truncation {self.truncation} to {new_truncation}"
            )
        return QExpansion(self.coeffs[: new_truncation + 1], self.weight, self.level)

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise DomainError("weight mismatch in q-expansion sum")
        t = min(self.truncation, other.truncation)
        return QExpansion(
            [self.coeffs[n] + other.coeffs[n] for n in range(t + 1)],
            self.weight,
            math.lcm(self.level, other.level),
        )

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "QExpansion":
        return QExpansion([scalar * c for c in self.coeffs], self.weight, self.level)

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and self.weight == other.weight
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QExpansion(w={self.weight}, N={self.level}, [{head}, ...])"


@dataclass(frozen=True)
class ConstantTerm:
    cusp: tuple
    value: CycloElement


# -- Hecke-type operators ------------------------------------------------------


def apply_Up(f: QExpansion, p: int) -> QExpansion:
    """a_n -> a_{pn}; truncation divides by p."""
    out_trunc = f.truncation // p
    if out_trunc < 1:
        raise TruncationError(
            f"U_{p} needs truncation >= {p}, have {f.truncation}"
        )
    return QExpansion([f.coeffs[p * n] for n in range(out_trunc + 1)], f.weight, f.level)


def apply_Vm(f: QExpansion, m: int) -> QExpansion:
    """a_n -> coefficient at mn (i.e. tau -> m tau)."""
    if m < 1:
        raise DomainError(f"V_m needs m >= 1, got {m}")
    coeffs = [0] * (f.truncation * m + 1)
    for n, c in enumerate(f.coeffs):
        coeffs[m * n] = c
    return QExpansion(coeffs, f.weight, f.level * m)


def apply_Tr(f: QExpansion, r: int, k: int | None = None) -> QExpansion:
    """T_r for prime r not dividing the level: a_n -> a_{rn} + r^(k-1) a_{n/r}."""
    k = f.weight if k is None else k
    out_trunc = f.truncation // r
    if out_trunc < 1:
        raise TruncationError(f"T_{r} needs truncation >= {r}, have {f.truncation}")
    coeffs = []
    for n in range(out_trunc + 1):
        c = f.coeffs[r * n]
        if n % r == 0:
            c = c + r ** (k - 1) * f.coeffs[n // r]
        coeffs.append(c)
    return QExpansion(coeffs, f.weight, f.level)


def twist(f: QExpansion, psi: DirichletCharacter) -> QExpansion:
    """a_n -> a_n psi(n); level becomes lcm(level, conductor-modulus^2)."""
    coeffs = [psi.value(n) * c for n, c in enumerate(f.coeffs)]
    return QExpansion(coeffs, f.weight, math.lcm(f.level, psi.modulus ** 2))


def theta_operator(f: QExpansion) -> QExpansion:
    """q d/dq on coefficients (intended for series already reduced mod ell)."""
    return QExpansion([n * c for n, c in enumerate(f.coeffs)], f.weight, f.level)


def reduce_mod(f: QExpansion, ell: int) -> QExpansion:
    """Rational coefficients to F_ell as small ints; denominators must be units."""
    out = []
    for c in f.coeffs:
        c = Fraction(c) if not isinstance(c, Fraction) else c
        if c.denominator % ell == 0:
            raise DomainError(f"denominator {c.denominator} not invertible mod {ell}")
        out.append(c.numerator * pow(c.denominator, -1, ell) % ell)
    return QExpansion(out, f.weight, f.level)


# -- Eisenstein series ---------------------------------------------------------


def sigma_nu(k: int, nu: DirichletCharacter, n: int) -> CycloElement:
    """sum over 0 < m | n of nu(n/m) nu^(-1)(m) m^(k-1)."""
    nu_inv = nu.inverse()
    total = CycloElement(1, [Fraction(0)])
    for m in range(1, n + 1):
        if n % m == 0:
            term = nu.value(n // m) * nu_inv.value(m)
            if term:
                total = total + term * (m ** (k - 1))
    return total


def eisenstein_E(k: int, nu: DirichletCharacter, truncation: int) -> QExpansion:
    """The weight-k level-c^2 Eisenstein series attached to primitive nu mod c."""
    if k < 2 or k % 2:
        raise DomainError(f"weight must be even and >= 2, got {k}")
    if not nu.is_primitive():
        raise DomainError("eisenstein_E requires a primitive character")
    c = nu.modulus
    if k == 2 and c == 1:
        raise DomainError("(k, c) = (2, 1) is excluded: no such Eisenstein series")
    if c == 1:
        a0 = CycloElement(1, [-bernoulli_classical(k) / (2 * k)])
    else:
        a0 = CycloElement(1, [Fraction(0)])
    coeffs = [a0] + [sigma_nu(k, nu, n) for n in range(1, truncation + 1)]
    return QExpansion(coeffs, k, c * c)


def eisenstein_E2u(u: int, truncation: int) -> QExpansion:
    """E_2(tau) - u E_2(u tau): constant term (u-1)/24, a_n = sum of m | n, u not | m."""
    if u < 2:
        raise DomainError(f"E_2^(u) needs u >= 2, got {u}")
    coeffs: list = [Fraction(u - 1, 24)]
    for n in range(1, truncation + 1):
        coeffs.append(Fraction(sum(m for m in range(1, n + 1) if n % m == 0 and m % u)))
    return QExpansion(coeffs, 2, u)


def _e2_series(truncation: int) -> QExpansion:
    """E_2 = -1/24 + sum sigma_1(n) q^n (quasi-modular; used mod ell only)."""
    coeffs: list = [Fraction(-1, 24)]
    for n in range(1, truncation + 1):
        coeffs.append(Fraction(sum(m for m in range(1, n + 1) if n % m == 0)))
    return QExpansion(coeffs, 2, 1)


def eprime_weight2_steinberg(signs, ell: int, truncation: int) -> QExpansion:
    """[prod_i (a_{p_i} U_{p_i} - p_i Id)] E_2 reduced mod ell; signs = [(p, +-1)].

    Constant term comes out to (-1/24) prod (a_p - p) exactly, which reduces
    to (-1)^(t+1) prod(p_i - 1)/24 mod ell when all signs are +1.
    """
    signs = sorted(signs)
    primes = [p for p, _ in signs]
    if len(set(primes)) != len(primes):
        raise DomainError("steinberg primes must be distinct")
    N = 1
    for p, s in signs:
        if s not in (1, -1):
            raise DomainError(f"steinberg sign must be +-1, got {s}")
        N *= p
    if (6 * N) % ell == 0:
        raise DomainError(f"ell = {ell} divides 6N = {6 * N}")
    need = truncation
    for p in primes:
        need *= p
    g = _e2_series(max(need, 1))
    for p, s in signs:
        g = s * apply_Up(g, p) - p * g.truncate(g.truncation // p)
    g = g.truncate(truncation)
    out = reduce_mod(g, ell)
    return QExpansion(out.coeffs, 2, N)


def eprime_twisted(nu: DirichletCharacter, steinberg_primes, truncation: int) -> QExpansion:
    """E + sum over nonempty subsets S of {p_i}: (-1)^|S| (prod S) nu^(-1)(prod S) E(prod S tau)."""
    c = nu.modulus
    if c <= 1 or not nu.is_primitive():
        raise DomainError("eprime_twisted needs a primitive character of modulus > 1")
    primes = sorted(set(steinberg_primes))
    if len(primes) != len(list(steinberg_primes)):
        raise DomainError("steinberg primes must be distinct")
    for p in primes:
        if c % p == 0:
            raise DomainError(f"steinberg prime {p} divides the character modulus {c}")
    base = eisenstein_E(2, nu, truncation)
    nu_inv = nu.inverse()
    coeffs = list(base.coeffs)
    t = len(primes)
    for mask in range(1, 1 << t):
        u = 1
        bits = 0
        for i in range(t):
            if mask >> i & 1:
                u *= primes[i]
                bits += 1
        scalar = (-1) ** bits * u * nu_inv.value(u)
        for n in range(0, truncation // u + 1):
            if base.coeffs[n]:
                coeffs[n * u] = coeffs[n * u] + scalar * base.coeffs[n]
    level = c * c
    for p in primes:
        level *= p
    return QExpansion(coeffs, 2, level)


# -- Constant terms at cusps ---------------------------------------------------


def constant_term_E(nu: DirichletCharacter, k: int, cusp: tuple) -> ConstantTerm:
    """Constant term of E at the cusp u/v of Gamma_0(c^2); nonzero iff v = c."""
    from .cyclotomic import gauss_sum_exact

    c = nu.modulus
    if c <= 1 or not nu.is_primitive():
        raise DomainError("constant terms need a primitive character of modulus > 1")
    u, v = cusp
    if v <= 0 or math.gcd(u, v) != 1 or (c * c) % v != 0:
        raise DomainError(f"({u}, {v}) is not a cusp label for level {c * c}")
    if v != c:
        return ConstantTerm((u, v), CycloElement(1, [Fraction(0)]))
    nusq0 = (nu * nu).primitive_associate()
    c0 = nusq0.modulus
    w_ratio = gauss_sum_exact(nusq0) / gauss_sum_exact(nu)
    b_part = bernoulli_generalized(k, nusq0.inverse()) / (2 * k)
    euler = CycloElement(1, [Fraction(1)])
    for p, _ in factorize(c).factors:
        euler = euler * (1 - nusq0.value(p) * Fraction(1, p ** k))
    value = -1 * nu.value(-u) * Fraction(c, c0) ** k * w_ratio * b_part * euler
    return ConstantTerm((u, v), value)


def constant_term_Eprime(nu: DirichletCharacter, steinberg_primes) -> ConstantTerm:
    """Constant term of the twisted weight-2 E' at the cusp 1/c."""
    base = constant_term_E(nu, 2, (1, nu.modulus))
    value = base.value
    for p in sorted(set(steinberg_primes)):
        value = value * Fraction(p - 1, p)
    return ConstantTerm((1, nu.modulus), value)


def lattice_sum_oracle(
    nu: DirichletCharacter, k: int, M_max: int, precision: int = 50, u: int = 1
):
    """Truncated double sum: over classes j mod c, then integers m with
    m = j/u (mod c) and 0 < |m| <= M_max, of nu^2(m)/m^k, scaled by nu(-u)/2.

    Converges to nu(-u) L(k, nu^2) at rate O(M_max^(1-k)); serves as a brute
    numeric oracle against the Hurwitz-zeta route and the exact formula.
    """
    if k < 4 or k % 2:
        raise DomainError("lattice oracle needs even k >= 4 (k = 2 excluded)")
    if M_max < 10 ** 3:
        raise DomainError("lattice oracle needs M_max >= 1000")
    import mpmath

    c = nu.modulus
    if math.gcd(u, c) != 1:
        raise DomainError(f"cusp numerator {u} must be a unit mod {c}")
    nusq = nu * nu
    with mpmath.workdps(precision):
        vals = [
            nusq.value(r).embed_numeric(precision)
            if math.gcd(r, c) == 1
            else mpmath.mpc(0)
            for r in range(c)
        ]
        u_inv = pow(u, -1, c) if c > 1 else 1
        total = mpmath.mpc(0)
        for j in range(c):
            r = j * u_inv % c
            # every m in the class has nu^2(m) = vals[r]; with k even the
            # negative m contribute through |m| = -r (mod c)
            parts = []
            for sign_class in (r, (-r) % c):
                start = sign_class if sign_class > 0 else c
                for m in range(start, M_max + 1, c):
                    parts.append(mpmath.mpf(m) ** (-k))
            total += vals[r] * mpmath.fsum(parts)
        return nu.value(-u).embed_numeric(precision) * total / 2
