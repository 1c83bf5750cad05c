"""Enumeration guards for the exponential-cost operations.

Every subset-enumerating operation refuses instances above a guard so a
stray large input cannot silently start a 2^n computation.  The guard is,
in order of precedence: an explicit ``max_n`` argument, the
``DELTATWIST_MAX_N`` environment variable, then the per-operation default.
"""

from __future__ import annotations

import os

from .errors import TooLarge

SUBSET_GUARD = 20       # plain 2^n subset loops (set systems, minors of graphs)
RANK_TABLE_GUARD = 26   # full rank table, one byte per subset
BOUQUET_GUARD = 16      # boundary walks over all edge subsets

ENV_VAR = "DELTATWIST_MAX_N"


def effective_guard(explicit: int | None, default: int) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(ENV_VAR)
    if env is not None:
        return int(env)
    return default


def check_size(n: int, explicit: int | None, default: int, what: str) -> None:
    guard = effective_guard(explicit, default)
    if n > guard:
        raise TooLarge(f"{what}: size {n} exceeds enumeration guard {guard}")
