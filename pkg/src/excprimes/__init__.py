"""excprimes: candidate primes and congruence certificates for newform data.

The library answers two questions about a weight-k newform on Gamma_0(N),
entirely in exact arithmetic:

* which primes ell could carry non-maximal residual behavior (reducible,
  dihedral, or small exceptional projective image) -- see `candidate_report`;
* for a concrete coefficient fixture, does the reducibility congruence
  against an explicit Eisenstein series actually hold through the Sturm
  bound -- see `verify_reducible`, `verify_weight2_squarefree`, and
  `frobenius_scan`.
"""

__version__ = "0.1.0"

from .exact import (
    DomainError,
    FactorCache,
    FactoredInteger,
    factorize,
    is_prime,
    lcm_pow_minus_one,
    primes_up_to,
    set_factor_cache,
)
from .cyclotomic import CycloElement, cyclotomic_polynomial, euler_phi, gauss_sum_exact, zeta
from .characters import (
    DirichletCharacter,
    character_by_index,
    character_count,
    enumerate_characters,
    square_inverse_eps,
    trivial_character,
)
from .bernoulli import (
    VacuousClauseError,
    bernoulli_classical,
    bernoulli_generalized,
    bernoulli_norm_numerator,
    von_staudt_denominator,
)
from .dimensions import dim_cusp_forms, dim_new, level_invariants, sturm_bound
from .eisenstein import (
    QExpansion,
    TruncationError,
    constant_term_E,
    constant_term_Eprime,
    eisenstein_E,
    eisenstein_E2u,
    eprime_twisted,
    eprime_weight2_steinberg,
)
from .residues import (
    DenominatorObstruction,
    FiniteField,
    FixtureError,
    NewformFixture,
    ResiduePoint,
    compositum_norm,
    find_residue_points,
)
from .bounds import (
    CandidateReport,
    DihedralReport,
    Weight2SignReport,
    candidate_report,
    dihedral_bound_chain,
    dihedral_candidates,
    exceptional_image_candidates,
    fundamental_orders,
    reducible_candidates,
    reducible_primes,
    reducible_weight2_signs,
)
from .verify import (
    INSUFFICIENT,
    ScanResult,
    VerificationResult,
    frobenius_scan,
    steinberg_consistency,
    verify_reducible,
    verify_weight2_squarefree,
)

__all__ = [
    "__version__",
    "DomainError",
    "FactorCache",
    "FactoredInteger",
    "factorize",
    "is_prime",
    "lcm_pow_minus_one",
    "primes_up_to",
    "set_factor_cache",
    "CycloElement",
    "cyclotomic_polynomial",
    "euler_phi",
    "gauss_sum_exact",
    "zeta",
    "DirichletCharacter",
    "character_by_index",
    "character_count",
    "enumerate_characters",
    "square_inverse_eps",
    "trivial_character",
    "VacuousClauseError",
    "bernoulli_classical",
    "bernoulli_generalized",
    "bernoulli_norm_numerator",
    "von_staudt_denominator",
    "dim_cusp_forms",
    "dim_new",
    "level_invariants",
    "sturm_bound",
    "QExpansion",
    "TruncationError",
    "constant_term_E",
    "constant_term_Eprime",
    "eisenstein_E",
    "eisenstein_E2u",
    "eprime_twisted",
    "eprime_weight2_steinberg",
    "DenominatorObstruction",
    "FiniteField",
    "FixtureError",
    "NewformFixture",
    "ResiduePoint",
    "compositum_norm",
    "find_residue_points",
    "CandidateReport",
    "DihedralReport",
    "Weight2SignReport",
    "candidate_report",
    "dihedral_bound_chain",
    "dihedral_candidates",
    "exceptional_image_candidates",
    "fundamental_orders",
    "reducible_candidates",
    "reducible_primes",
    "reducible_weight2_signs",
    "INSUFFICIENT",
    "ScanResult",
    "VerificationResult",
    "frobenius_scan",
    "steinberg_consistency",
    "verify_reducible",
    "verify_weight2_squarefree",
]
