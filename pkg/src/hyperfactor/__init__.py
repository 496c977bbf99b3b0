"""Hyperbolic-sieve factoring toolkit.

Sieve sets from modular hyperbolas, streaming CRT enumeration, two
Fermat-style searches for numbers with close divisors, and the reduction of
such factorizations to multiple-choice subset-sum instances.
"""
from .crt import CrtEnumerator, crt_combine
from .errors import (
    BudgetExceededError,
    CommonFactorError,
    HyperfactorError,
    InstanceFormatError,
    LambdaTooSmall,
    LikelyPrime,
    NotInvertibleError,
    SearchExhausted,
)
from .fermat import (
    FactorReport,
    FermatParams,
    build_modulus,
    factor_auto,
    factor_with_lambda,
    lambda_bound,
)
from .mcss import (
    MCSSClass,
    MCSSInstance,
    build_exact_instance,
    build_max_instance,
    deserialize,
    serialize,
    solve_small,
    verify_selection,
)
from .numeric import ceil_sqrt, is_square, isqrt, jacobi, legendre, mod_inverse
from .sieve import (
    FactoredModulus,
    SieveSet,
    build_sieve_set,
    card_prime,
    card_prime_power,
    card_two_power,
    hyperbola,
    sieve_cardinality,
    sieve_enumerate,
)
from .tradeoff import SplitModulus, build_meet_lists, factor_tradeoff, split_modulus, survivor_estimate

__version__ = "0.1.0"
