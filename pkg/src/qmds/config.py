"""
Runtime defaults and their resolution from flags and the environment.
"""

import os
from typing import Optional

DEFAULT_BUDGET = 10 ** 6
BUDGET_ENV_VAR = "QMDS_BUDGET"


def resolve_budget(value: Optional[int] = None) -> int:
    """Enumeration budget: explicit value, then $QMDS_BUDGET, then the default."""
    if value is not None:
        budget = int(value)
    else:
        raw = os.environ.get(BUDGET_ENV_VAR)
        try:
            budget = int(raw) if raw else DEFAULT_BUDGET
        except ValueError:
            raise ValueError(f"{BUDGET_ENV_VAR}={raw!r} is not an integer") from None
    if budget < 1:
        raise ValueError(f"enumeration budget must be positive, got {budget}")
    return budget


def resolve_threads(value: Optional[int] = None) -> int:
    """Worker count: explicit value or the number of available cores."""
    if value is None:
        return os.cpu_count() or 1
    if value < 1:
        raise ValueError(f"thread count must be positive, got {value}")
    return int(value)
