"""Budget knobs, overridable through the environment.

Defaults are chosen so every named example passes within its stated
budget.  The element cap is a hard guard: closures refuse to enumerate
groups beyond it instead of going silently quadratic.
"""

import os

# Full element enumeration refuses beyond this many elements.
DEFAULT_ELEMENT_CAP = 20_000

# aut_group refuses base groups larger than this (soft; see carrier cap).
DEFAULT_AUT_BASE_CAP = 512

# aut_group refuses when the automorphism group itself would exceed this.
DEFAULT_AUT_CARRIER_CAP = 20_000

# all_subgroups is exhaustive up to this order.
DEFAULT_LATTICE_CAP = 2_000


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    return int(raw)


def element_cap():
    return _env_int("GASCHUETZ_ELEMENT_CAP", DEFAULT_ELEMENT_CAP)


def aut_base_cap():
    return _env_int("GASCHUETZ_AUT_CAP", DEFAULT_AUT_BASE_CAP)


def aut_carrier_cap():
    return _env_int("GASCHUETZ_AUT_CARRIER_CAP", DEFAULT_AUT_CARRIER_CAP)


def lattice_cap():
    return _env_int("GASCHUETZ_LATTICE_CAP", DEFAULT_LATTICE_CAP)


def time_budget_per_group():
    """Optional per-group wall-clock budget (seconds) for classification runs."""
    raw = os.environ.get("GASCHUETZ_TIME_BUDGET")
    return float(raw) if raw else None
