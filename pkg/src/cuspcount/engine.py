"""Orchestration: validation -> path streaming -> subdivisions -> aggregation.

The canonical path stream is split into contiguous index ranges, one per
worker.  Workers are pure functions of (instance, range), and all arithmetic
is exact, so per-shard results can be concatenated in shard order and the
grand total is independent of the worker count.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .lattice import LatticePoint, is_h_transversal, lattice_points
from .multiplicity import cuspidal_multiplicity, severi_multiplicity
from .paths import LambdaPath, enumerate_lambda_paths, path_count
from .problem import Mode, ProblemInstance
from .subdivision import (
    MarkedEdge,
    Tile,
    check_admissible,
    enumerate_markings,
    interior_edges,
    irreducible,
    run_recursion,
)

log = logging.getLogger(__name__)


class ResourceLimitError(RuntimeError):
    """A --max-paths / --max-subdivisions budget was exceeded (exit code 3)."""


class InvariantViolationError(RuntimeError):
    """An internal invariant failed, e.g. a non-integer grand total (exit code 4)."""


@dataclass(frozen=True)
class Contribution:
    path: tuple[LatticePoint, ...]
    tiles: tuple[Tile, ...]
    marking: Union[Tile, MarkedEdge, None]
    multiplicity: Fraction


@dataclass
class CountResult:
    instance: ProblemInstance
    total: int
    contributions: list[Contribution]
    stats: dict = field(default_factory=dict)


_COUNTER_KEYS = (
    "paths_scanned",
    "subdivisions_emitted",
    "contributions",
    "duplicate_subdivisions",
    "special_with_long_edge",
    "nonvertical_marked_edges",
)


def _process_path(
    instance: ProblemInstance,
    path: LambdaPath,
    collect: bool,
    counters: dict,
    sink: list[Contribution],
    warn_h_transversal: bool,
) -> Fraction:
    cuspidal = instance.mode is Mode.CUSPIDAL
    subtotal = Fraction(0)
    rec_stats: dict = {}
    for sub in run_recursion(path, instance.polygon, special_allowed=cuspidal, stats=rec_stats):
        counters["subdivisions_emitted"] += 1
        edges = interior_edges(sub)
        report = check_admissible(sub, instance.polygon, edges=edges)
        if not report.admissible(require_marking=cuspidal):
            continue
        if not irreducible(sub, edges=edges):
            continue
        if sub.special is not None and any(e.length >= 3 for e in edges):
            counters["special_with_long_edge"] += 1
        if cuspidal:
            markings = enumerate_markings(sub, edges=edges)
            for ms in markings:
                if isinstance(ms.marking, MarkedEdge) and not ms.marking.is_vertical:
                    counters["nonvertical_marked_edges"] += 1
                    if warn_h_transversal:
                        log.warning(
                            "non-vertical marked edge %s-%s on an h-transversal polygon",
                            ms.marking.a,
                            ms.marking.b,
                        )
                mu = cuspidal_multiplicity(path, ms)
                subtotal += mu
                counters["contributions"] += 1
                if collect:
                    sink.append(Contribution(path.points, sub.tiles, ms.marking, mu))
        else:
            mu = severi_multiplicity(sub)
            subtotal += mu
            counters["contributions"] += 1
            if collect:
                sink.append(Contribution(path.points, sub.tiles, None, mu))
    counters["duplicate_subdivisions"] += rec_stats.get("duplicate_subdivisions", 0)
    return subtotal


def _run_shard(
    instance: ProblemInstance,
    start: int,
    stop: int,
    collect: bool,
    max_subdivisions: Optional[int],
) -> tuple[Fraction, list[Contribution], dict]:
    counters = {k: 0 for k in _COUNTER_KEYS}
    sink: list[Contribution] = []
    subtotal = Fraction(0)
    warn_h = instance.polygon.dimension == 2 and is_h_transversal(instance.polygon)
    for path in enumerate_lambda_paths(instance.polygon, instance.n, start, stop):
        counters["paths_scanned"] += 1
        subtotal += _process_path(instance, path, collect, counters, sink, warn_h)
        if max_subdivisions is not None and counters["subdivisions_emitted"] > max_subdivisions:
            raise ResourceLimitError(
                f"subdivision budget exceeded: more than {max_subdivisions} subdivisions"
            )
    return subtotal, sink, counters


def count(
    instance: ProblemInstance,
    threads: int = 1,
    collect: bool = True,
    max_paths: Optional[int] = None,
    max_subdivisions: Optional[int] = None,
) -> CountResult:
    """Exact count for a validated instance.

    ``collect=False`` drops the per-contribution breakdown (the total is still
    exact).  The resource budgets abort the run with ResourceLimitError rather
    than ever truncating silently.
    """
    t0 = time.monotonic()
    if instance.mode is Mode.CUSPIDAL and instance.genus < instance.p_a - 1:
        log.warning(
            "cuspidal totals below the maximal genus (g < p_a - 1 = %d) are "
            "not verified against any closed form; the integer-total guard "
            "aborts the run if the weight aggregation is inconsistent",
            instance.p_a - 1,
        )
    n_paths = path_count(instance.polygon, instance.n)
    if max_paths is not None and n_paths > max_paths:
        raise ResourceLimitError(
            f"path budget exceeded: {n_paths} lambda-paths of length {instance.n}, "
            f"limit {max_paths}"
        )

    shards = _shard_ranges(n_paths, threads)
    results = []
    if len(shards) <= 1:
        results.append(_run_shard(instance, 0, n_paths, collect, max_subdivisions))
    else:
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            futures = [
                pool.submit(_run_shard, instance, a, b, collect, max_subdivisions)
                for a, b in shards
            ]
            results = [f.result() for f in futures]

    total = Fraction(0)
    contributions: list[Contribution] = []
    counters = {k: 0 for k in _COUNTER_KEYS}
    for subtotal, sink, shard_counters in results:
        total += subtotal
        contributions.extend(sink)
        for k in _COUNTER_KEYS:
            counters[k] += shard_counters[k]
    if max_subdivisions is not None and counters["subdivisions_emitted"] > max_subdivisions:
        raise ResourceLimitError(
            f"subdivision budget exceeded: {counters['subdivisions_emitted']} subdivisions, "
            f"limit {max_subdivisions}"
        )

    if total.denominator != 1:
        raise InvariantViolationError(
            f"grand total {total} is not an integer; per-contribution weights "
            "must sum to an integer over a full enumeration"
        )
    if total < 0:
        raise InvariantViolationError(f"grand total {total} is negative")

    stats = dict(counters)
    stats["wall_time"] = time.monotonic() - t0
    stats["threads"] = max(1, threads)
    return CountResult(
        instance=instance, total=int(total), contributions=contributions, stats=stats
    )


def _shard_ranges(n_paths: int, threads: int) -> list[tuple[int, int]]:
    workers = max(1, threads)
    if workers == 1 or n_paths == 0:
        return [(0, n_paths)]
    per = -(-n_paths // workers)
    return [(i, min(i + per, n_paths)) for i in range(0, n_paths, per)]


_FAMILY_KEYS = ("a", "b", "c", "d", "e")


def decompose_families(result: CountResult, d: int) -> dict[str, Fraction]:
    """Bucket the contributions of a maximal-genus cuspidal run on triangle:d
    by the case analysis of the two lattice points the path omits.

    The buckets are: (a) an interior vertical pair, (b) a vertical pair
    touching the hypotenuse, (c)/(d) a vertical pair on the bottom edge (away
    from / near the right corner), (e) the two staggered-column patterns.
    Anything else lands in "other", which is empty for admissible runs.
    """
    inst = result.instance
    expected_genus = inst.p_a - 1
    tri = {(0, 0), (d, 0), (0, d)}
    if (
        inst.mode is not Mode.CUSPIDAL
        or inst.genus != expected_genus
        or {v.as_tuple() for v in inst.polygon.vertices} != tri
    ):
        raise ValueError(
            "family decomposition applies to cuspidal runs on triangle:d with "
            f"genus p_a - 1 = {expected_genus}; got mode={inst.mode.value}, "
            f"genus={inst.genus}, polygon={[v.as_tuple() for v in inst.polygon.vertices]}"
        )
    if not result.contributions:
        raise ValueError("family decomposition needs the per-contribution breakdown")

    all_points = set(lattice_points(inst.polygon))
    table: dict[str, Fraction] = {k: Fraction(0) for k in (*_FAMILY_KEYS, "other")}
    for contrib in result.contributions:
        missing = sorted(p.as_tuple() for p in all_points - set(contrib.path))
        table[_classify_missing(d, missing)] += contrib.multiplicity
    table["total"] = sum(table.values(), Fraction(0))
    return table


def _classify_missing(d: int, missing: list[tuple[int, int]]) -> str:
    if len(missing) != 2:
        return "other"
    (i1, j1), (i2, j2) = missing
    if i1 == i2 and abs(j1 - j2) == 1:
        if max(j1, j2) == d - i1:
            return "b"
        if min(j1, j2) == 0:
            if 1 <= i1 <= d - 4:
                return "c"
            if i1 in (d - 3, d - 2):
                return "d"
            return "other"
        return "a"
    if i2 == i1 + 1:
        if j2 == d - i2 and i1 >= 1 and 1 <= j1 <= d - i1 - 1:
            return "e"
        if j1 == 0 and 1 <= j2 <= d - i2 - 1:
            return "e"
    return "other"
