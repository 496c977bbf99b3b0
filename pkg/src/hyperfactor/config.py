"""Enumeration budgets, overridable through ``HYPERFACTOR_*`` environment variables.

Budgets are read at call time so a test or the CLI can change them without
reimporting anything.
"""
import os

DEFAULTS = {
    # largest modulus hyperbola()/sieve_enumerate() will walk
    "ENUM_BUDGET": 2**24,
    # largest prime power a single sieve factor may have
    "FACTOR_BUDGET": 2**20,
    # |N1| + |N2| ceiling for the meet-in-the-middle lists
    "MEET_BUDGET": 2**27,
    # exhaustive MCSS search ceiling (product of class sizes)
    "MCSS_PRODUCT_BUDGET": 10**8,
    # modular DP ceiling for exact-target MCSS
    "MCSS_DP_BUDGET": 10**7,
}


def budget(name, override=None):
    """Return budget ``name``; an explicit ``override`` wins over the environment."""
    if override is not None:
        return int(override)
    raw = os.environ.get("HYPERFACTOR_" + name)
    if raw is None:
        return DEFAULTS[name]
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"HYPERFACTOR_{name} must be an integer, got {raw!r}") from None
