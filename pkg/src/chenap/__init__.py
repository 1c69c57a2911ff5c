"""Sieve decompositions, Chen-prime censuses and linear-sieve constants for
Chen primes in arithmetic progressions."""

__version__ = "0.1.0"

from ._errors import ChenAPError, DependencyError, DomainError, NumericalError, ResourceError
from .arith import APClass, SieveDensity, mangoldt, mangoldt_aq, mertens_V, mobius, phi2, pi2_constant
from .chen import classify, is_chen_prime, lemma14_rhs, p2_indicator, verify_lemma14
from .decomp import SieveParams, chen_count_ap, decompose
from .primes import SegmentedRange, coprime_to_small_primes, factorize_interval, sieve_primes
from .sieve_theory import big_F, headline_constants, small_f

__all__ = [
    "APClass", "ChenAPError", "DependencyError", "DomainError", "NumericalError",
    "ResourceError", "SegmentedRange", "SieveDensity", "SieveParams", "big_F",
    "chen_count_ap", "classify", "coprime_to_small_primes", "decompose",
    "factorize_interval", "headline_constants", "is_chen_prime", "lemma14_rhs",
    "mangoldt", "mangoldt_aq", "mertens_V", "mobius", "p2_indicator", "phi2",
    "pi2_constant", "sieve_primes", "small_f", "verify_lemma14",
]
