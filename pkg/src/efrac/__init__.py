"""Exact enumeration and certified growth bounds for unit-fraction sum sets."""

from .arith import (
    FactoredInteger,
    divisors_sorted,
    factorize,
    is_prime,
    lcm_range,
    p_adic_valuation,
    primes_upto,
    sigma,
)
from .bounds import (
    BoundReport,
    ceil_decimal,
    full_divisor_bound,
    general_chain_bound,
    mixed_bound,
    reachable_count_cap,
    reevaluate,
    single_set_bound,
)
from .certlog import LogLower, LogUpper, log_lower, log_upper
from .config import RunConfig, default_cache_dir, load_config
from .density import (
    ValuationProfile,
    delta_from_profile,
    empirical_density,
    profile_from_set,
    profile_of_modulus,
    valuation_profile,
)
from .errors import (
    CacheError,
    ConfigError,
    EfracError,
    InvalidCountError,
    ResourceBudgetError,
    StructureError,
)
from .subsetsum import (
    DivisorChain,
    EgyptianSet,
    ReachableSet,
    chain_counts,
    divisor_chain,
    egyptian_set,
    enumerate_egyptian,
    reachable_prefixes,
    signed_set_cardinality_check,
    subset_sum_counts,
    sum_set_stats,
)
from .uset import (
    GmTable,
    UCertificate,
    certify_u,
    count_u,
    decide_u_exact,
    g_m_table,
    lower_bound_report,
    recursive_count_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CacheError",
    "ConfigError",
    "DivisorChain",
    "EfracError",
    "EgyptianSet",
    "FactoredInteger",
    "GmTable",
    "InvalidCountError",
    "LogLower",
    "LogUpper",
    "ReachableSet",
    "ResourceBudgetError",
    "RunConfig",
    "StructureError",
    "UCertificate",
    "ValuationProfile",
    "ceil_decimal",
    "certify_u",
    "chain_counts",
    "count_u",
    "decide_u_exact",
    "default_cache_dir",
    "delta_from_profile",
    "divisor_chain",
    "divisors_sorted",
    "egyptian_set",
    "empirical_density",
    "enumerate_egyptian",
    "factorize",
    "full_divisor_bound",
    "g_m_table",
    "general_chain_bound",
    "is_prime",
    "lcm_range",
    "load_config",
    "log_lower",
    "log_upper",
    "lower_bound_report",
    "mixed_bound",
    "p_adic_valuation",
    "primes_upto",
    "profile_from_set",
    "profile_of_modulus",
    "reachable_count_cap",
    "reachable_prefixes",
    "recursive_count_bound",
    "reevaluate",
    "sigma",
    "signed_set_cardinality_check",
    "single_set_bound",
    "subset_sum_counts",
    "sum_set_stats",
    "valuation_profile",
]
