"""Global size bounds.

POSETFORGE_MAX_ELEMENTS overrides the element cap for constructed posets.
"""

import os


def max_elements() -> int:
    raw = os.environ.get("POSETFORGE_MAX_ELEMENTS")
    if raw is None:
        return 50_000
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"POSETFORGE_MAX_ELEMENTS must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError("POSETFORGE_MAX_ELEMENTS must be positive")
    return value


# Completions larger than this many elements are refused.
RO_MAX_ELEMENTS = 2**20

# Free algebras on more generators than this are refused (2^(2^k) elements).
FREE_ALGEBRA_MAX_GENERATORS = 4

# State space for the accumulation game is 2^|P|.
GAME_G_MAX_ELEMENTS = 12
