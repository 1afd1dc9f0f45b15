import os

BUDGET_ENV = "MOVEGRAPH_BUDGET"
DEFAULT_SIZE_BUDGET = 10**8
DEFAULT_MAX_LEVEL_R = 13


def size_budget(override: int | None = None) -> int:
    """Vertex budget: explicit override, else $MOVEGRAPH_BUDGET, else 10**8."""
    if override is not None:
        return int(override)
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_SIZE_BUDGET
