"""Independent oracle: rational plane curves of degree d through 3d-1 points.

The classical recursion from the WDVV associativity relations, seeded with
N(1) = N(2) = 1.  Used in tests (and a hidden CLI subcommand) to cross-check
the genus-0 nodal counts produced by the lattice path engine; it shares no
code with the engine.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def kontsevich_oracle(d: int) -> int:
    """Number of rational plane curves of degree d through 3d - 1 general points."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    if d <= 2:
        return 1
    total = 0
    for d1 in range(1, d):
        d2 = d - d1
        total += (
            kontsevich_oracle(d1)
            * kontsevich_oracle(d2)
            * (
                d1 * d1 * d2 * d2 * comb(3 * d - 4, 3 * d1 - 2)
                - d1 ** 3 * d2 * comb(3 * d - 4, 3 * d1 - 1)
            )
        )
    return total
