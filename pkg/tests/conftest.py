from __future__ import annotations

import pytest

from cuspcount import Mode, count, parse_polygon_spec, validate_instance


@pytest.fixture(scope="session")
def run_count():
    """Memoized engine runner shared across the suite; heavy instances are
    only enumerated once."""
    cache: dict = {}

    def runner(spec: str, genus: int, mode: Mode, threads: int = 1):
        key = (spec, genus, mode, threads)
        if key not in cache:
            instance = validate_instance(parse_polygon_spec(spec), genus, mode)
            cache[key] = count(instance, threads=threads)
        return cache[key]

    return runner
