"""Command-line interface: bound / verify / dims / eisenstein / scan / characters.

Reports are JSON envelopes with sorted keys and canonical number strings, so
identical inputs produce byte-identical output. Exit codes: 0 success (verify:
certified), 1 refuted, 2 bad arguments or malformed fixture, 3 inconclusive.
"""

from __future__ import annotations

import json
import math
import sys
import time
from fractions import Fraction

import click

from . import __version__
from .exact import DomainError, FactorCache, set_factor_cache  # noqa: F401
from .characters import character_by_index, enumerate_characters
from .cyclotomic import CycloElement
from .residues import FixtureError, NewformFixture

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _canonical(obj):
    """Recursively render exact values as canonical strings for JSON."""
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, CycloElement):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return obj


class Reporter:
    """Assembles the report envelope and handles --format/--out/--cache-dir."""

    def __init__(self, subcommand: str, inputs: dict, fmt: str, out, cache_dir, timing: bool):
        self.subcommand = subcommand
        self.inputs = inputs
        self.fmt = fmt
        self.out = out
        self.timing = timing
        self.t0 = time.monotonic()
        self.warnings: list[str] = []
        self.cache = None
        if cache_dir is not None:
            self.cache = FactorCache(cache_dir)
            set_factor_cache(self.cache)
            self.warnings.extend(self.cache.warnings)

    def emit(self, outputs: dict, text_lines: list[str]) -> None:
        if self.cache is not None:
            self.cache.flush()
            set_factor_cache(None)
        if self.fmt == "json":
            envelope = {
                "tool": "excprimes",
                "version": __version__,
                "command": self.subcommand,
                "inputs": _canonical(self.inputs),
                "outputs": _canonical(outputs),
                "warnings": list(self.warnings),
            }
            if self.timing:
                envelope["timing"] = {"seconds": round(time.monotonic() - self.t0, 6)}
            payload = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
        else:
            lines = list(text_lines)
            for w in self.warnings:
                lines.append(f"warning: {w}")
            if self.timing:
                lines.append(f"elapsed: {time.monotonic() - self.t0:.6f}s")
            payload = "\n".join(lines) + "\n"
        if self.out is not None:
            with open(self.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        else:
            click.echo(payload, nl=False)


def _common_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                      default="json", show_default=True, help="Report format.")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False, writable=True),
                      default=None, help="Write the report to this file instead of stdout.")(fn)
    fn = click.option("--cache-dir", type=click.Path(file_okay=False),
                      default=None, help="Directory for the persistent factorization cache.")(fn)
    fn = click.option("--timing", is_flag=True, default=False,
                      help="Include elapsed time (breaks byte-for-byte determinism).")(fn)
    return fn


def _load_fixture(path: str) -> NewformFixture:
    try:
        return NewformFixture.from_json_file(path)
    except FixtureError as exc:
        click.echo(f"error: malformed fixture: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except OSError as exc:
        click.echo(f"error: cannot read fixture: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _check_weight(k: int) -> None:
    if k < 2 or k % 2:
        raise click.UsageError(f"--weight must be even and >= 2, got {k}")


@click.group()
@click.version_option(version=__version__, prog_name="excprimes")
def main():
    """Candidate primes and congruence certificates for newform residual data."""


@main.command("bound")
@click.option("--weight", type=int, required=True, help="Even weight k >= 2.")
@click.option("--level", type=int, required=True, help="Level N >= 1.")
@click.option("--degree", type=int, default=None,
              help="Coefficient-field degree for the dihedral bound (default: new-subspace dimension).")
@click.option("--non-cm", is_flag=True, default=False,
              help="Record the non-CM assumption explicitly (the dihedral bound always assumes it).")
@_common_options
def cmd_bound(weight, level, degree, non_cm, fmt, out, cache_dir, timing):
    """Candidate primes: reducible, dihedral, and exceptional projective image."""
    _check_weight(weight)
    if level < 1:
        raise click.UsageError(f"--level must be >= 1, got {level}")
    inputs = {"weight": weight, "level": level, "degree": degree, "non_cm": non_cm}
    rep = Reporter("bound", inputs, fmt, out, cache_dir, timing)
    from .bounds import candidate_report

    report = candidate_report(weight, level, degree)
    lines = [f"bound report for weight {weight}, level {level}"]
    lines.append("reducible candidates: " + ", ".join(map(str, report.reducible_primes())))
    for p, clause in report.reducible:
        lines.append(f"  {p}: {clause}")
    if report.dihedral.primes is not None:
        lines.append("dihedral candidates: " + ", ".join(map(str, report.dihedral.primes)))
    else:
        lines.append(
            f"dihedral bound (degree {report.dihedral.degree}): {report.dihedral.bound}"
        )
    lines.append("exceptional image candidates: " + ", ".join(map(str, report.exceptional_image)))
    for a in report.assumptions:
        lines.append(f"assumption: {a}")
    rep.emit(report.to_dict(), lines)
    sys.exit(EXIT_OK)


@main.command("verify")
@click.option("--form", type=click.Path(exists=False), required=True, help="Fixture JSON file.")
@click.option("--ell", type=int, required=True, help="Prime ell to verify.")
@click.option("--char-modulus", type=int, default=None, help="Modulus of nu (with --char-index).")
@click.option("--char-index", type=int, default=None, help="Index of nu (with --char-modulus).")
@click.option("--mode", type=click.Choice(["auto", "residue", "norm"]), default="auto",
              show_default=True, help="Residue-point mode, norm-divisibility mode, or automatic.")
@click.option("--pmax", type=int, default=100, show_default=True,
              help="Scan limit for the irreducibility certificate attached to refutations.")
@_common_options
def cmd_verify(form, ell, char_modulus, char_index, mode, pmax, fmt, out, cache_dir, timing):
    """Certify (or refute) the reducibility congruence for a fixture at ell."""
    if (char_modulus is None) != (char_index is None):
        raise click.UsageError("--char-modulus and --char-index must be given together")
    inputs = {
        "form": form, "ell": ell, "char_modulus": char_modulus,
        "char_index": char_index, "mode": mode,
    }
    rep = Reporter("verify", inputs, fmt, out, cache_dir, timing)
    fixture = _load_fixture(form)
    from .verify import frobenius_scan, verify_reducible, verify_weight2_squarefree
    from .exact import factorize

    nu = None
    if char_modulus is not None:
        try:
            nu = character_by_index(char_modulus, char_index)
        except DomainError as exc:
            raise click.UsageError(str(exc))
    try:
        result = verify_reducible(fixture, ell, nu=nu, mode=mode)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    if (
        nu is None
        and fixture.weight == 2
        and all(e == 1 for _, e in factorize(fixture.level).factors)
        and fixture.steinberg_signs
        and (6 * fixture.level) % ell != 0
    ):
        def decisiveness(res):
            if res.verdict == "certified":
                return 0
            if res.verdict == "norm-certified":
                return 1
            if res.refuted:
                return 2
            return 3

        w2 = verify_weight2_squarefree(fixture, ell)
        if decisiveness(w2) < decisiveness(result):
            result = w2
    outputs = result.to_dict()
    refuted = result.refuted
    scan = None
    if not result.certified:
        # A Frobenius irreducibility witness at every residue point rules the
        # congruence out even when the coefficient window alone is silent.
        try:
            scan = frobenius_scan(fixture, ell, pmax)
            outputs["scan"] = scan.to_dict()
        except Exception as exc:
            outputs["scan_error"] = str(exc)
        if scan is not None and not refuted and scan.points:
            if all(pt["witness"] is not None for pt in scan.points):
                refuted = True
                outputs["verdict"] = "refuted-by-scan"
    lines = [
        f"verify {fixture.label} at ell = {ell}",
        f"eisenstein side: {result.eisenstein}",
        f"mode: {result.mode}",
        f"checked n <= {result.checked_up_to} (sturm bound {result.sturm})",
        f"verdict: {outputs['verdict']}",
    ]
    for w in result.witnesses:
        lines.append(f"  {w}")
    for w in result.warnings:
        lines.append(f"warning: {w}")
    if scan is not None:
        for pt in scan.points:
            lines.append(f"  scan {pt['point']}: witness {pt['witness']}")
    rep.emit(outputs, lines)
    if refuted:
        sys.exit(EXIT_REFUTED)
    if result.certified:
        sys.exit(EXIT_OK)
    sys.exit(EXIT_INCONCLUSIVE)


@main.command("dims")
@click.option("--weight", type=int, required=True, help="Even weight k >= 2.")
@click.option("--level", type=int, required=True, help="Level N >= 1.")
@_common_options
def cmd_dims(weight, level, fmt, out, cache_dir, timing):
    """Dimensions and the Sturm bound for weight k on Gamma_0(N)."""
    _check_weight(weight)
    if level < 1:
        raise click.UsageError(f"--level must be >= 1, got {level}")
    inputs = {"weight": weight, "level": level}
    rep = Reporter("dims", inputs, fmt, out, cache_dir, timing)
    from .dimensions import dim_cusp_forms, dim_new, level_invariants, sturm_bound

    inv = level_invariants(level)
    outputs = {
        "weight": weight,
        "level": level,
        "index": inv.index,
        "nu2": inv.nu2,
        "nu3": inv.nu3,
        "cusps": inv.nu_inf,
        "genus": inv.genus,
        "dim_cusp_forms": dim_cusp_forms(weight, level),
        "dim_new": dim_new(weight, level),
        "sturm_bound": sturm_bound(weight, level),
    }
    lines = [f"dimensions for weight {weight}, level {level}"] + [
        f"{key}: {val}" for key, val in outputs.items() if key not in ("weight", "level")
    ]
    rep.emit(outputs, lines)
    sys.exit(EXIT_OK)


@main.command("eisenstein")
@click.option("--weight", type=int, required=True, help="Even weight k.")
@click.option("--char-modulus", type=int, required=True, help="Modulus of the character nu.")
@click.option("--char-index", type=int, required=True, help="Index of nu (see 'characters').")
@click.option("--terms", type=int, required=True, help="Number of q-expansion terms (through q^terms).")
@_common_options
def cmd_eisenstein(weight, char_modulus, char_index, terms, fmt, out, cache_dir, timing):
    """q-expansion of the Eisenstein series attached to nu at the given weight."""
    _check_weight(weight)
    if terms < 1:
        raise click.UsageError(f"--terms must be >= 1, got {terms}")
    inputs = {
        "weight": weight, "char_modulus": char_modulus,
        "char_index": char_index, "terms": terms,
    }
    rep = Reporter("eisenstein", inputs, fmt, out, cache_dir, timing)
    from .eisenstein import eisenstein_E

    try:
        nu = character_by_index(char_modulus, char_index)
        E = eisenstein_E(weight, nu, terms)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    coeffs = {str(n): E.coefficient(n) for n in range(terms + 1)}
    outputs = {
        "weight": weight,
        "character": f"chi({char_modulus},{char_index})",
        "character_order": nu.order,
        "level": E.level,
        "coefficients": coeffs,
    }
    lines = [f"E(k={weight}, nu=chi({char_modulus},{char_index})) on level {E.level}"]
    for n in range(terms + 1):
        lines.append(f"a_{n} = {E.coefficient(n)}")
    rep.emit(outputs, lines)
    sys.exit(EXIT_OK)


@main.command("scan")
@click.option("--form", type=click.Path(exists=False), required=True, help="Fixture JSON file.")
@click.option("--ell", type=int, required=True, help="Prime ell.")
@click.option("--pmax", type=int, required=True, help="Scan primes p <= pmax.")
@_common_options
def cmd_scan(form, ell, pmax, fmt, out, cache_dir, timing):
    """Frobenius irreducibility scan of X^2 - a_p X + p^(k-1) at each residue point."""
    inputs = {"form": form, "ell": ell, "pmax": pmax}
    rep = Reporter("scan", inputs, fmt, out, cache_dir, timing)
    fixture = _load_fixture(form)
    from .verify import frobenius_scan

    try:
        result = frobenius_scan(fixture, ell, pmax)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    lines = [f"scan {fixture.label} at ell = {ell}, p <= {pmax}"]
    for pt in result.points:
        tested = ", ".join(f"{p}:{'irr' if v else 'red'}" for p, v in pt["tested"].items())
        lines.append(f"{pt['point']}: witness = {pt['witness']}  [{tested}]")
    if result.partial:
        lines.append("scan is partial (coefficients exhausted before pmax)")
    for w in result.warnings:
        lines.append(f"warning: {w}")
    rep.emit(result.to_dict(), lines)
    sys.exit(EXIT_OK)


@main.command("characters")
@click.option("--modulus", type=int, required=True, help="List the character table mod this modulus.")
@_common_options
def cmd_characters(modulus, fmt, out, cache_dir, timing):
    """Index / order / conductor / parity table for characters mod m."""
    if modulus < 1:
        raise click.UsageError(f"--modulus must be >= 1, got {modulus}")
    inputs = {"modulus": modulus}
    rep = Reporter("characters", inputs, fmt, out, cache_dir, timing)
    rows = []
    sample = [a for a in range(2, min(modulus, 11)) if math.gcd(a, modulus) == 1]
    for chi in enumerate_characters(modulus, "all"):
        rows.append({
            "index": chi.index,
            "order": chi.order,
            "conductor": chi.conductor,
            "parity": "even" if chi.is_even() else "odd",
            "primitive": chi.is_primitive(),
            "values": {str(a): chi.value(a) for a in sample},
        })
    outputs = {"modulus": modulus, "characters": rows}
    lines = [f"characters mod {modulus} ({len(rows)} total)"]
    for r in rows:
        vals = ", ".join(f"chi({a})={_canonical(v)}" for a, v in r["values"].items())
        lines.append(
            f"index {r['index']}: order {r['order']}, conductor {r['conductor']}, "
            f"{r['parity']}, {'primitive' if r['primitive'] else 'imprimitive'}"
            + (f"; {vals}" if vals else "")
        )
    rep.emit(outputs, lines)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
