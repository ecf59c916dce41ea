"""Primes outside a two-generator numerical semigroup.

For coprime positive a and b, every sufficiently large integer is a
nonnegative combination au + bv; the finitely many that are not are the
gaps of the semigroup, the largest being s = ab - a - b. This package
counts the primes among the gaps (pi_star), evaluates the explicit
prime-counting bounds that control that count, and reproduces, by exact
finite computation, the verification claims behind the headline results
(see verify module docstring for the claim catalog).
"""

from .arith import coprime_count_up_to, euler_phi, factor, mobius, omega
from .bounds import (
    ap_fixed_range_bounds,
    case4_constant,
    delta,
    mv_upper,
    rs_pi_lower,
    rs_pi_upper,
    thm2_rhs,
    thm2_upper_decomposition,
)
from .errors import CheckpointCorrupt, DomainError, LimitExceeded, NotCoprime, NotInvertible
from .pistar import (
    pi_star_bruteforce,
    pi_star_closed_small,
    pi_star_fast,
    pi_star_residue_sum,
    primes_in_semigroup_below_s,
)
from .primes import is_prime, pi, pi_ap, primes_in
from .semigroup import SemigroupPair, apery_set, contains, gaps, new_pair
from .verify import (
    EXPECTED_COJ1_EQUALITIES,
    EXPECTED_COJ2_EXCEPTIONS,
    check_pair,
    reproduce_thm1_cases,
    reproduce_thm3,
    scan_coj1_equalities,
    scan_coj2_exceptions,
    sweep,
)

__version__ = "1.0.0"

__all__ = [
    "CheckpointCorrupt",
    "DomainError",
    "EXPECTED_COJ1_EQUALITIES",
    "EXPECTED_COJ2_EXCEPTIONS",
    "LimitExceeded",
    "NotCoprime",
    "NotInvertible",
    "SemigroupPair",
    "ap_fixed_range_bounds",
    "apery_set",
    "case4_constant",
    "check_pair",
    "contains",
    "coprime_count_up_to",
    "delta",
    "euler_phi",
    "factor",
    "gaps",
    "is_prime",
    "mobius",
    "mv_upper",
    "new_pair",
    "omega",
    "pi",
    "pi_ap",
    "pi_star_bruteforce",
    "pi_star_closed_small",
    "pi_star_fast",
    "pi_star_residue_sum",
    "primes_in",
    "primes_in_semigroup_below_s",
    "reproduce_thm1_cases",
    "reproduce_thm3",
    "rs_pi_lower",
    "rs_pi_upper",
    "scan_coj1_equalities",
    "scan_coj2_exceptions",
    "sweep",
    "thm2_rhs",
    "thm2_upper_decomposition",
    "__version__",
]
