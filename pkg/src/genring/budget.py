import os

DEFAULT_BUDGET = 2_000_000


def enumeration_budget(default: int = DEFAULT_BUDGET) -> int:
    """Cap on enumeration sizes; overridable with GENRING_BUDGET."""
    raw = os.environ.get("GENRING_BUDGET")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default
