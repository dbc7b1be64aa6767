"""Congruence verification between newform fixtures and Eisenstein series.

The verifier certifies reducibility congruences a_n(f) = a_n(E) mod ell up to
the Sturm bound, either through an explicit residue point (preferred: one
ideal, coherent across all n) or through per-n norm divisibility (weaker,
labeled norm-certified). It also runs the Frobenius irreducibility scan:
the characteristic polynomial X^2 - a_p X + p^(k-1) being irreducible at a
residue point certifies that no such congruence can exist there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import DomainError, factorize, is_prime, primes_up_to
from .characters import DirichletCharacter, enumerate_characters, trivial_character
from .cyclotomic import CycloElement, cyclotomic_polynomial
from .dimensions import sturm_bound
from .eisenstein import (
    QExpansion,
    eisenstein_E,
    eprime_twisted,
    eprime_weight2_steinberg,
)
from .residues import (
    DenominatorObstruction,
    NewformFixture,
    ResiduePoint,
    compositum_norm,
    find_residue_points,
    is_square_in_field,
    quadratic_irreducible,
)

VERDICT_CERTIFIED = "certified"
VERDICT_NORM = "norm-certified"
VERDICT_REFUTED_STRUCTURAL = "refuted-structural"
INSUFFICIENT = "inconclusive(insufficient coefficients)"


@dataclass(frozen=True)
class VerificationResult:
    label: str
    ell: int
    mode: str  # "residue-point" | "norm-divisibility"
    eisenstein: str
    checked_up_to: int
    sturm: int
    verdict: str
    witnesses: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.verdict in (VERDICT_CERTIFIED, VERDICT_NORM)

    @property
    def refuted(self) -> bool:
        return self.verdict.startswith("refuted")

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "ell": self.ell,
            "mode": self.mode,
            "eisenstein": self.eisenstein,
            "checked_up_to": self.checked_up_to,
            "sturm": self.sturm,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "warnings": list(self.warnings),
        }


def _divides_rational(ell: int, x: Fraction) -> bool:
    """ell | x for rational x: nonnegative valuation everywhere and >= 1 at ell."""
    if x == 0:
        return True
    if x.denominator % ell == 0:
        return False
    return x.numerator % ell == 0


def _point_name(pt: ResiduePoint) -> str:
    alpha = ",".join(str(c) for c in pt.alpha_image.coeffs)
    if pt.zeta_image is None:
        return f"(alpha=[{alpha}])"
    zeta = ",".join(str(c) for c in pt.zeta_image.coeffs)
    return f"(alpha=[{alpha}], zeta=[{zeta}])"


def _eisenstein_candidates(fixture: NewformFixture, nu, window: int):
    """(description, q-expansion, cyclotomic index) triples to test against."""
    k, N = fixture.weight, fixture.level
    steinberg = sorted(p for p, e in factorize(N).factors if e == 1)
    out = []

    def series_for(nu_: DirichletCharacter):
        c = nu_.modulus
        if k == 2:
            if c == 1:
                raise DomainError(
                    "weight 2 with trivial character has no Eisenstein series; "
                    "use verify_weight2_squarefree"
                )
            desc = f"Eprime(weight 2, nu=chi({c},{nu_.index}), steinberg={steinberg})"
            return desc, eprime_twisted(nu_, steinberg, window), nu_.order
        if c == 1:
            return f"classical E_{k}", eisenstein_E(k, nu_, window), 1
        desc = f"E(k={k}, nu=chi({c},{nu_.index}))"
        return desc, eisenstein_E(k, nu_, window), nu_.order

    if nu is not None:
        out.append(series_for(nu))
        return out
    if k > 2:
        out.append(series_for(trivial_character()))
    c_max = 1
    fac = factorize(N)
    for p, e in fac.factors:
        c_max *= p ** (e // 2)
    for c in range(2, c_max + 1):
        if c_max % c == 0:
            for nu_ in enumerate_characters(c, "primitive"):
                out.append(series_for(nu_))
    return out


def _compare_at_point(fixture, E: QExpansion, pt: ResiduePoint, ell: int, window: int):
    """First n <= window (ell coprime) where the congruence fails, or None."""
    for n in range(1, window + 1):
        if n % ell == 0:
            continue
        lhs = pt.reduce_vector(fixture.a(n))
        target = E.coefficient(n)
        if isinstance(target, CycloElement):
            rhs = pt.reduce_cyclo(target)
        else:
            rhs = pt.field.from_fraction(Fraction(target), f"a_{n}(E)")
        if lhs != rhs:
            return n
    return None


def _norm_mode_check(fixture, E: QExpansion, n_cyclo: int, ell: int, window: int):
    """Per-n divisibility ell | N(a_n(f) - a_n(E)); first failing n or None."""
    phi = list(cyclotomic_polynomial(n_cyclo))
    f = list(fixture.field_poly)
    for n in range(1, window + 1):
        if n % ell == 0:
            continue
        target = E.coefficient(n)
        if isinstance(target, CycloElement):
            target = target.embed(n_cyclo)
            q_poly = list(target.coeffs)
        else:
            q_poly = [Fraction(target)]
        nrm = compositum_norm(list(fixture.a(n)), q_poly, f, phi)
        if not _divides_rational(ell, nrm):
            return n
    return None


def verify_reducible(fixture: NewformFixture, ell: int, nu=None, mode: str = "auto") -> VerificationResult:
    """Check a_n(f) = a_n(E) mod ell for n up to the Sturm bound.

    nu omitted: the classical series (weight > 2) and every primitive nu mod c
    with c^2 | N are tried; the best verdict across candidates is returned.
    """
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if mode not in ("auto", "residue", "norm"):
        raise DomainError(f"unknown mode {mode!r}")
    warnings = []
    if fixture.level % ell == 0:
        warnings.append(
            f"ell = {ell} divides the level {fixture.level}: outside the congruence "
            "theorem's hypotheses, checking anyway"
        )
    sturm = sturm_bound(fixture.weight, fixture.level)
    window = min(fixture.n_max, sturm)
    if window < 1:
        return VerificationResult(
            fixture.label, ell, "residue-point", "(none)", 0, sturm,
            INSUFFICIENT, (), tuple(warnings),
        )
    candidates = _eisenstein_candidates(fixture, nu, window)
    if not candidates:
        return VerificationResult(
            fixture.label, ell, "residue-point", "(none)", window, sturm,
            "inconclusive(no Eisenstein candidate for this level shape)",
            (), tuple(warnings),
        )

    results = []
    for desc, E, n_cyclo in candidates:
        use_norm = mode == "norm"
        if not use_norm:
            try:
                points = find_residue_points(fixture, n_cyclo, ell)
            except DenominatorObstruction as exc:
                if mode == "residue":
                    results.append(VerificationResult(
                        fixture.label, ell, "residue-point", desc, 0, sturm,
                        f"inconclusive(denominator obstruction: {exc})",
                        (), tuple(warnings),
                    ))
                    continue
                note = f"denominator obstruction ({exc}); falling back to norm mode"
                if note not in warnings:
                    warnings.append(note)
                use_norm = True
        if use_norm:
            fail = _norm_mode_check(fixture, E, n_cyclo, ell, window)
            if fail is None:
                verdict = VERDICT_NORM if window >= sturm else INSUFFICIENT
                witness = (
                    f"ell | N(a_n - a_n(E)) for all n <= {window} coprime to {ell} "
                    "(per-n divisibility, no single-ideal coherence)",
                )
                results.append(VerificationResult(
                    fixture.label, ell, "norm-divisibility", desc, window, sturm,
                    verdict, witness, tuple(warnings),
                ))
            else:
                results.append(VerificationResult(
                    fixture.label, ell, "norm-divisibility", desc, window, sturm,
                    f"refuted-at-{fail}",
                    (f"ell does not divide N(a_{fail} - a_{fail}(E))",),
                    tuple(warnings),
                ))
            continue
        passing = []
        failures = []
        for pt in points:
            fail = _compare_at_point(fixture, E, pt, ell, window)
            if fail is None:
                passing.append(pt)
            else:
                failures.append((pt, fail))
        if passing:
            verdict = VERDICT_CERTIFIED if window >= sturm else INSUFFICIENT
            witness = tuple(f"congruence holds at {_point_name(pt)}" for pt in passing)
            results.append(VerificationResult(
                fixture.label, ell, "residue-point", desc, window, sturm,
                verdict, witness, tuple(warnings),
            ))
        else:
            worst = max(f for _, f in failures)
            witness = tuple(
                f"{_point_name(pt)}: first mismatch at n = {f}" for pt, f in failures
            )
            results.append(VerificationResult(
                fixture.label, ell, "residue-point", desc, window, sturm,
                f"refuted-at-{worst}", witness, tuple(warnings),
            ))

    def rank(res: VerificationResult) -> int:
        if res.verdict == VERDICT_CERTIFIED:
            return 0
        if res.verdict == VERDICT_NORM:
            return 1
        if res.verdict == INSUFFICIENT:
            return 2
        if res.verdict.startswith("inconclusive"):
            return 3
        return 4

    results.sort(key=lambda r: (rank(r), r.eisenstein))
    return results[0]


def verify_weight2_squarefree(fixture: NewformFixture, ell: int) -> VerificationResult:
    """Weight-2 square-free congruence against the sign-twisted E2 combination."""
    if fixture.weight != 2:
        raise DomainError(f"weight must be 2, got {fixture.weight}")
    N = fixture.level
    fac = factorize(N)
    if any(e > 1 for _, e in fac.factors):
        raise DomainError(f"level {N} is not square-free")
    if (6 * N) % ell == 0:
        raise DomainError(f"ell = {ell} divides 6N")
    sturm = sturm_bound(2, N)
    window = min(fixture.n_max, sturm)
    level_primes = list(fac.primes())
    missing = [p for p in level_primes if p not in fixture.steinberg_signs]
    if missing:
        return VerificationResult(
            fixture.label, ell, "residue-point", "Eprime(weight 2, steinberg)",
            0, sturm, f"inconclusive(missing steinberg signs for {missing})",
        )
    signs = [(p, fixture.steinberg_signs[p]) for p in level_primes]
    desc = "Eprime(weight 2, signs={" + ",".join(f"{p}:{s:+d}" for p, s in signs) + "})"
    if all(s == -1 for _, s in signs):
        return VerificationResult(
            fixture.label, ell, "residue-point", desc, 0, sturm,
            VERDICT_REFUTED_STRUCTURAL,
            ("all Atkin-Lehner style signs are -1: the constant-term clause "
             "makes the congruence impossible",),
        )
    E = eprime_weight2_steinberg(signs, ell, window)
    try:
        points = find_residue_points(fixture, 1, ell)
    except DenominatorObstruction as exc:
        return VerificationResult(
            fixture.label, ell, "residue-point", desc, 0, sturm,
            f"inconclusive(denominator obstruction: {exc})",
        )
    passing = []
    failures = []
    for pt in points:
        first_fail = None
        for n in range(1, window + 1):
            if n % ell == 0:
                continue
            lhs = pt.reduce_vector(fixture.a(n))
            rhs = pt.field.element(E.coefficient(n))
            if lhs != rhs:
                first_fail = n
                break
        if first_fail is None:
            passing.append(pt)
        else:
            failures.append((pt, first_fail))
    if passing:
        verdict = VERDICT_CERTIFIED if window >= sturm else INSUFFICIENT
        witness = tuple(f"congruence holds at {_point_name(pt)}" for pt in passing)
        return VerificationResult(
            fixture.label, ell, "residue-point", desc, window, sturm, verdict, witness,
        )
    worst = max(f for _, f in failures)
    witness = tuple(f"{_point_name(pt)}: first mismatch at n = {f}" for pt, f in failures)
    return VerificationResult(
        fixture.label, ell, "residue-point", desc, window, sturm,
        f"refuted-at-{worst}", witness,
    )


@dataclass(frozen=True)
class ScanResult:
    label: str
    ell: int
    p_max: int
    points: tuple[dict, ...]  # {"point", "tested", "witness"}
    partial: bool
    warnings: tuple[str, ...] = ()

    def witnesses(self) -> list:
        return [pt["witness"] for pt in self.points]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "ell": self.ell,
            "p_max": self.p_max,
            "points": [
                {
                    "point": pt["point"],
                    "tested": {str(p): v for p, v in pt["tested"].items()},
                    "witness": pt["witness"],
                }
                for pt in self.points
            ],
            "partial": self.partial,
            "warnings": list(self.warnings),
        }


def frobenius_scan(fixture: NewformFixture, ell: int, p_max: int) -> ScanResult:
    """Irreducibility scan: is X^2 - a_p X + p^(k-1) irreducible at each point?

    Reports, per residue point, each tested prime p <= p_max with p coprime to
    ell N, and the smallest p whose characteristic polynomial is irreducible
    (a certificate that no reducibility congruence can hold at that point).
    """
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if p_max < 2:
        raise DomainError(f"p_max must be >= 2, got {p_max}")
    warnings = []
    if fixture.level % ell == 0:
        warnings.append(
            f"ell = {ell} divides the level: scan restricted to p coprime to ell N"
        )
    k = fixture.weight
    points = find_residue_points(fixture, 1, ell)
    partial = p_max > fixture.n_max
    if partial:
        warnings.append(
            f"p_max = {p_max} exceeds available coefficients (n_max = {fixture.n_max}): "
            "partial scan"
        )
    usable = [
        p for p in primes_up_to(p_max)
        if p % ell != 0 and fixture.level % p != 0 and p in fixture.an
    ]
    out = []
    for pt in points:
        tested = {}
        witness = None
        for p in usable:
            a_bar = pt.reduce_vector(fixture.a(p))
            pk = pt.field.element(pow(p, k - 1, ell))
            if ell == 2:
                irred = quadratic_irreducible(a_bar, pk)
            else:
                disc = a_bar * a_bar - 4 * pk
                irred = not is_square_in_field(disc)
            tested[p] = irred
            if irred and witness is None:
                witness = p
        out.append({"point": _point_name(pt), "tested": tested, "witness": witness})
    return ScanResult(fixture.label, ell, p_max, tuple(out), partial, tuple(warnings))


def steinberg_consistency(fixture: NewformFixture) -> dict:
    """Check a_p^2 = p^(k-2) at p || N and a_p = 0 at p^2 | N; emit the sign vector."""
    from .residues import FixtureError

    k, N = fixture.weight, fixture.level
    signs = {}
    missing = []
    for p, e in factorize(N).factors:
        if p not in fixture.an:
            missing.append(p)
            continue
        vec = fixture.a(p)
        if e >= 2:
            if any(vec):
                raise FixtureError(f"a_{p} must vanish since {p}^2 | {N}")
            continue
        expected_sq = Fraction(p) ** (k - 2)
        if any(vec[1:]) or vec[0] ** 2 != expected_sq:
            raise FixtureError(
                f"a_{p} = {vec} violates a_p^2 = p^(k-2) for p || N"
            )
        signs[p] = 1 if vec[0] > 0 else -1
    return {
        "label": fixture.label,
        "weight": k,
        "level": N,
        "signs": signs,
        "missing": missing,
        "weight2_sign_vector": signs if k == 2 else None,
    }
