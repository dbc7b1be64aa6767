"""Finite candidate sets for primes where a residual representation can degenerate.

Three families of candidates are produced for a weight-k, level-N newform:
reducible, dihedral projective image, and exceptional projective image
(A4/S4/A5). Every listed prime carries an ASCII provenance clause naming the
inequality or norm that produced it, so reports are auditable and stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import DomainError, factorize, is_prime, lcm_pow_minus_one, primes_up_to
from .characters import DirichletCharacter, enumerate_characters, square_inverse_eps
from .bernoulli import VacuousClauseError, bernoulli_norm_numerator
from .dimensions import dim_new

GATE_SMALL = "small prime gate (ell <= k+1)"
GATE_LEVEL = "divides the level"


def _chi_name(chi: DirichletCharacter) -> str:
    return f"chi({chi.modulus},{chi.index})"


def _norm_primes(value) -> tuple[int, ...] | None:
    """Prime divisors of the norm of a cyclotomic value; None when the norm is 0."""
    nrm = value.norm() if hasattr(value, "norm") else Fraction(value)
    nrm = Fraction(nrm)
    if nrm == 0:
        return None
    assert nrm.denominator == 1, nrm
    n = abs(nrm.numerator)
    if n == 1:
        return ()
    return factorize(n).primes()


def _square_part_root(fac) -> int:
    """Largest c with c^2 dividing the factored integer."""
    c = 1
    for p, e in fac.factors:
        c *= p ** (e // 2)
    return c


def reducible_candidates(k: int, N: int) -> list[tuple[int, str]]:
    """(prime, provenance clause) pairs covering every possibly-reducible ell."""
    if k < 2 or k % 2:
        raise DomainError(f"weight must be even and >= 2, got {k}")
    if N < 1:
        raise DomainError(f"level must be positive, got {N}")
    fac = factorize(N)
    level_primes = list(fac.primes())
    pairs: set[tuple[int, str]] = set()
    for ell in primes_up_to(k + 1):
        pairs.add((ell, GATE_SMALL))
    for p in level_primes:
        pairs.add((p, GATE_LEVEL))

    squarefree = all(e == 1 for _, e in fac.factors)
    c = _square_part_root(fac)

    if N == 1:
        pass
    elif squarefree:
        if k > 2:
            g = 0
            for p in level_primes:
                g = math.gcd(g, lcm_pow_minus_one(p, k))
            clause = "divides gcd over p | N of lcm(p^k - 1, p^(k-2) - 1)"
            for ell in factorize(g).primes():
                pairs.add((ell, clause))
        else:
            lcm_val = 1
            for p in level_primes:
                lcm_val = math.lcm(lcm_val, p * p - 1)
            clause = "divides lcm over p | N of p^2 - 1"
            for ell in factorize(lcm_val).primes():
                pairs.add((ell, clause))
    elif c * c == N:
        for p, e in fac.factors:
            if e == 2:
                clause = f"p = {p} with v_p(N) = 2: ell divides p^2 - 1"
                for ell in factorize(p * p - 1).primes():
                    pairs.add((ell, clause))
        for nu in enumerate_characters(c, "primitive"):
            eps = square_inverse_eps(nu)
            eps_inv = eps.inverse()
            for p in factorize(c).primes():
                primes = _norm_primes(p ** k - eps_inv.value(p))
                assert primes is not None, "p^k - root of unity cannot vanish"
                clause = f"norm of p^k - eps^(-1)(p) at p = {p}, nu = {_chi_name(nu)}"
                for ell in primes:
                    pairs.add((ell, clause))
            try:
                bn = bernoulli_norm_numerator(k, eps)
            except VacuousClauseError:
                continue
            clause = f"numerator of norm of B_(k,eps)/2k, nu = {_chi_name(nu)}"
            for ell in bn.primes():
                pairs.add((ell, clause))
    elif (
        k == 2
        and all(e == 1 for _, e in fac.factors if e % 2)
        and c > 1
        and (c % 2 == 1 or c % 4 == 0)
    ):
        steinberg = [p for p, e in fac.factors if e == 1]
        for nu in enumerate_characters(c, "primitive"):
            eps = square_inverse_eps(nu)
            eps_inv = eps.inverse()
            name = _chi_name(nu)
            for p in steinberg:
                primes = _norm_primes(p * p - nu.value(p) ** 2)
                assert primes is not None
                clause = f"norm of p^2 - nu^2(p) at p = {p}, nu = {name}"
                for ell in primes:
                    pairs.add((ell, clause))
                clause = f"divides p - 1 for p = {p}"
                for ell in factorize(p - 1).primes() if p > 2 else ():
                    pairs.add((ell, clause))
            for p in factorize(c).primes():
                primes = _norm_primes(p * p - eps_inv.value(p))
                assert primes is not None
                clause = f"norm of p^2 - eps^(-1)(p) at p = {p}, nu = {name}"
                for ell in primes:
                    pairs.add((ell, clause))
            try:
                bn = bernoulli_norm_numerator(2, eps)
            except VacuousClauseError:
                continue
            clause = f"numerator of norm of B_(2,eps)/4, nu = {name}"
            for ell in bn.primes():
                pairs.add((ell, clause))
    else:
        v2 = dict(fac.factors).get(2, 0)
        if v2 == 2 or (v2 >= 3 and v2 % 2 == 1):
            pairs.add((3, "2-adic valuation of the level forces ell = 3"))
        for p, e in fac.factors:
            if e % 2 == 1 and e >= 3:
                clause = f"p = {p} with odd v_p(N) >= 3: ell divides p^2 - 1"
                for ell in factorize(p * p - 1).primes():
                    pairs.add((ell, clause))
        steinberg = [p for p, e in fac.factors if e == 1]
        if steinberg:
            for eta in enumerate_characters(c, "even"):
                name = _chi_name(eta)
                for p in steinberg:
                    for exp in (k, k - 2):
                        primes = _norm_primes(p ** exp - eta.value(p))
                        if primes is None:
                            continue  # p^0 = eta(p): vacuous clause, dropped
                        clause = f"norm of p^{exp} - eta(p) at p = {p}, eta = {name}"
                        for ell in primes:
                            pairs.add((ell, clause))
    return sorted(pairs)


def reducible_primes(k: int, N: int) -> list[int]:
    return sorted({p for p, _ in reducible_candidates(k, N)})


@dataclass(frozen=True)
class Weight2SignReport:
    signs: tuple[tuple[int, int], ...]
    impossible: bool
    clauses: tuple[tuple[int, str], ...]
    note: str

    def primes(self) -> list[int]:
        return sorted({p for p, _ in self.clauses})

    def to_dict(self) -> dict:
        return {
            "signs": {str(p): s for p, s in self.signs},
            "impossible": self.impossible,
            "clauses": [{"prime": p, "clause": c} for p, c in self.clauses],
            "note": self.note,
        }


def reducible_weight2_signs(signs) -> Weight2SignReport:
    """Refined weight-2 square-free candidates from a full Atkin-Lehner sign vector."""
    pairs = sorted((int(p), int(s)) for p, s in (signs.items() if isinstance(signs, dict) else signs))
    if not pairs:
        raise DomainError("at least one (prime, sign) pair is required")
    seen = set()
    for p, s in pairs:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if p in seen:
            raise DomainError(f"duplicate prime {p}: level would not be square-free")
        seen.add(p)
        if s not in (1, -1):
            raise DomainError(f"sign for {p} must be +-1, got {s}")
    note = "constraints hold for ell not dividing 6N"
    minus = [p for p, s in pairs if s == -1]
    impossible = len(minus) == len(pairs)
    if impossible:
        note += "; all signs -1 is impossible for a reducible representation"
    clauses = []
    if minus:
        g = 0
        for p in minus:
            g = math.gcd(g, p + 1)
        clause = "ell divides gcd of p + 1 over primes with sign -1 (" + ",".join(map(str, minus)) + ")"
        for ell in factorize(g).primes():
            clauses.append((ell, clause))
    else:
        prod = 1
        for p, _ in pairs:
            prod *= p - 1
        clause = "all signs +1: ell divides product of p - 1 over p | N"
        for ell in factorize(prod).primes() if prod > 1 else ():
            clauses.append((ell, clause))
    return Weight2SignReport(tuple(pairs), impossible, tuple(sorted(clauses)), note)


@dataclass(frozen=True)
class DihedralReport:
    weight: int
    level: int
    squarefree: bool
    primes: tuple[int, ...] | None
    bound: int | None
    degree: int | None
    assumptions: tuple[str, ...]

    def to_dict(self) -> dict:
        out = {
            "weight": self.weight,
            "level": self.level,
            "squarefree": self.squarefree,
            "assumptions": list(self.assumptions),
        }
        if self.primes is not None:
            out["primes"] = list(self.primes)
        if self.bound is not None:
            out["bound"] = str(self.bound)
            out["degree"] = self.degree
        return out


def dihedral_candidates(k: int, N: int, degree: int | None = None) -> DihedralReport:
    """Square-free levels: explicit prime set. Otherwise an integer upper bound."""
    if k < 2 or k % 2:
        raise DomainError(f"weight must be even and >= 2, got {k}")
    if N < 1:
        raise DomainError(f"level must be positive, got {N}")
    fac = factorize(N)
    assumptions = ("newform assumed non-CM",)
    if all(e == 1 for _, e in fac.factors):
        primes = set(fac.primes())
        primes.update(primes_up_to(k))
        if is_prime(2 * k - 1):
            primes.add(2 * k - 1)
        return DihedralReport(k, N, True, tuple(sorted(primes)), None, None, assumptions)
    D = degree if degree is not None else dim_new(k, N)
    if D < 1:
        raise DomainError(f"field degree must be >= 1, got {D}")
    with mpmath.workprec(240):
        q = mpmath.mpf("4.8") * k * mpmath.mpf(N) ** 2 * (1 + mpmath.log(mpmath.log(N)))
        total = (2 * q ** (mpmath.mpf(k - 1) / 2)) ** D
        # directed rounding: nudge up before taking the ceiling
        bound = int(mpmath.ceil(total * (1 + mpmath.mpf(2) ** -200)))
    return DihedralReport(k, N, False, None, bound, D, assumptions)


def exceptional_image_candidates(k: int, N: int) -> list[int]:
    """Primes where the projective image could be A4, S4 or A5."""
    if k < 2 or k % 2:
        raise DomainError(f"weight must be even and >= 2, got {k}")
    if N < 1:
        raise DomainError(f"level must be positive, got {N}")
    primes = set(factorize(N).primes())
    primes.update(primes_up_to(4 * k - 3))
    return sorted(primes)


def fundamental_orders(ell: int, k: int) -> tuple[int, int]:
    """Orders of the mod-ell cyclotomic character data attached to weight k.

    n = (ell-1)/gcd(ell-1, k-1) and m = (ell+1)/gcd(ell+1, k-1);
    n = 2 iff ell = 2k-1, m = 2 iff ell = 2k-3, and both exceed 5
    once ell > 4k-3.
    """
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if ell <= k:
        raise DomainError(f"need ell > k, got ell = {ell}, k = {k}")
    n = (ell - 1) // math.gcd(ell - 1, k - 1)
    m = (ell + 1) // math.gcd(ell + 1, k - 1)
    return n, m


def dihedral_distinguishing_index(k: int, N: int) -> int:
    """The displayed integer bound 2 k N^2 prod_{p|N} (1 + 1/p)."""
    chain = dihedral_bound_chain(k, N)
    return chain["n_bound"]


def dihedral_bound_chain(k: int, N: int) -> dict:
    """All three intermediate bounds of the dihedral argument, for audit output."""
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    if k < 2 or k % 2:
        raise DomainError(f"weight must be even and >= 2, got {k}")
    prod_N = Fraction(1)
    for p in factorize(N).primes():
        prod_N *= Fraction(p + 1, p)
    prod_2N = Fraction(1)
    for p in factorize(2 * N).primes():
        prod_2N *= Fraction(p + 1, p)
    n_bound = 2 * k * N * N * prod_N
    assert n_bound.denominator == 1
    sharp = Fraction(4 * k, 3) * N * N * prod_2N
    with mpmath.workprec(120):
        q = mpmath.mpf("4.8") * k * mpmath.mpf(N) ** 2 * (1 + mpmath.log(mpmath.log(N)))
        q_bound = int(mpmath.ceil(q * (1 + mpmath.mpf(2) ** -100)))
    assert sharp <= n_bound
    return {
        "n_bound": int(n_bound),
        "n_bound_sharp": sharp,
        "q_bound": q_bound,
    }


@dataclass(frozen=True)
class CandidateReport:
    weight: int
    level: int
    reducible: tuple[tuple[int, str], ...]
    dihedral: DihedralReport
    exceptional_image: tuple[int, ...]
    assumptions: tuple[str, ...]

    def reducible_primes(self) -> list[int]:
        return sorted({p for p, _ in self.reducible})

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "level": self.level,
            "reducible": [{"prime": p, "clause": c} for p, c in self.reducible],
            "reducible_primes": self.reducible_primes(),
            "dihedral": self.dihedral.to_dict(),
            "exceptional_image": list(self.exceptional_image),
            "assumptions": list(self.assumptions),
        }


def candidate_report(k: int, N: int, degree: int | None = None) -> CandidateReport:
    reducible = tuple(reducible_candidates(k, N))
    dihedral = dihedral_candidates(k, N, degree)
    exceptional = tuple(exceptional_image_candidates(k, N))
    return CandidateReport(
        k,
        N,
        reducible,
        dihedral,
        exceptional,
        dihedral.assumptions,
    )
