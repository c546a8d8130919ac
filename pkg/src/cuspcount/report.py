"""Output rendering: JSON, CSV, a terminal table, and SVG figures.

JSON is the machine interface; its top-level keys and the contribution record
layout are stable.  Totals are serialized as decimal strings and per-subdivision
weights as reduced fraction strings, so consumers never touch floats.  Figures
are rendered with matplotlib straight to SVG text, one per contribution.
"""

from __future__ import annotations

import io
import json
import os
from typing import Optional, Sequence, Union

from .engine import Contribution, CountResult
from .lattice import LatticePoint, LatticePolygon, convex_hull, lattice_points
from .subdivision import MarkedEdge, Subdivision, Tile, TileKind


def _point_list(points: Sequence[LatticePoint]) -> list[list[int]]:
    return [[p.x, p.y] for p in points]


def _marking_dict(marking: Union[Tile, MarkedEdge, None]) -> Optional[dict]:
    if marking is None:
        return None
    if isinstance(marking, MarkedEdge):
        return {"type": "edge", "data": _point_list([marking.a, marking.b])}
    return {
        "type": "tile",
        "data": {"kind": marking.kind.value, "vertices": _point_list(marking.vertices)},
    }


def contribution_to_dict(c: Contribution) -> dict:
    return {
        "path": _point_list(c.path),
        "tiles": [
            {"kind": t.kind.value, "vertices": _point_list(t.vertices)} for t in c.tiles
        ],
        "marking": _marking_dict(c.marking),
        "multiplicity": str(c.multiplicity),
    }


def result_to_dict(result: CountResult, scrub_stats: bool = False) -> dict:
    inst = result.instance
    out = {
        "polygon": _point_list(inst.polygon.vertices),
        "genus": inst.genus,
        "mode": inst.mode.value,
        "n": inst.n,
        "pa": inst.p_a,
        "delta_size": inst.delta_size,
        "total": str(result.total),
        "contributions": [contribution_to_dict(c) for c in result.contributions],
        "stats": {} if scrub_stats else dict(result.stats),
    }
    return out


def emit_json(result: CountResult, scrub_stats: bool = False) -> str:
    return json.dumps(result_to_dict(result, scrub_stats=scrub_stats), indent=2) + "\n"


def _flat_points(points: Sequence[LatticePoint]) -> str:
    return ";".join(f"{p.x}:{p.y}" for p in points)


def emit_csv(result: CountResult) -> str:
    """Delimited contributions, preceded by a single commented summary line."""
    inst = result.instance
    lines = [
        "# polygon={} genus={} mode={} n={} pa={} delta_size={} total={}".format(
            _flat_points(inst.polygon.vertices),
            inst.genus,
            inst.mode.value,
            inst.n,
            inst.p_a,
            inst.delta_size,
            result.total,
        ),
        "index,path,tiles,marking_type,marking_data,multiplicity",
    ]
    for i, c in enumerate(result.contributions):
        tiles = "|".join(f"{t.kind.value}:{_flat_points(t.vertices)}" for t in c.tiles)
        mark = _marking_dict(c.marking)
        if mark is None:
            mtype, mdata = "", ""
        elif mark["type"] == "edge":
            mtype = "edge"
            mdata = _flat_points([c.marking.a, c.marking.b])
        else:
            mtype = "tile"
            mdata = f"{c.marking.kind.value}:{_flat_points(c.marking.vertices)}"
        lines.append(f"{i},{_flat_points(c.path)},{tiles},{mtype},{mdata},{c.multiplicity}")
    return "\n".join(lines) + "\n"


def emit_table(result: CountResult) -> str:
    inst = result.instance
    head = [
        f"polygon      {_flat_points(inst.polygon.vertices)}",
        f"mode         {inst.mode.value}",
        f"genus        {inst.genus}    p_a {inst.p_a}    |Delta| {inst.delta_size}    n {inst.n}",
        f"total        {result.total}",
        "",
    ]
    if result.contributions:
        head.append(f"{'#':>4}  {'multiplicity':>12}  marking")
        for i, c in enumerate(result.contributions):
            if c.marking is None:
                mark = "-"
            elif isinstance(c.marking, MarkedEdge):
                mark = f"edge {c.marking.a}-{c.marking.b} (length {c.marking.length})"
            else:
                mark = f"{c.marking.kind.value} {_flat_points(c.marking.vertices)}"
            head.append(f"{i:>4}  {str(c.multiplicity):>12}  {mark}")
    stats = result.stats
    head.append("")
    head.append(
        "paths {}  subdivisions {}  contributions {}  wall {:.3f}s".format(
            stats.get("paths_scanned", 0),
            stats.get("subdivisions_emitted", 0),
            stats.get("contributions", 0),
            stats.get("wall_time", 0.0),
        )
    )
    return "\n".join(head) + "\n"


_TILE_FACE = {
    TileKind.TRIANGLE: "#f0f0f0",
    TileKind.PARALLELOGRAM: "#dce6f2",
    TileKind.QUAD_NO_PARALLEL: "#ffd9a0",
    TileKind.TRAPEZE: "#ffd9a0",
}


def emit_svg(
    subdivision: Subdivision,
    path: Sequence[LatticePoint],
    polygon: Optional[LatticePolygon] = None,
    marking: Union[Tile, MarkedEdge, None] = None,
) -> str:
    """Render one subdivision as SVG text.

    Draws the lattice grid of the polygon, every tile (special tile
    highlighted), the lambda-path on top, and the marking.  Tiles carry
    ``tile-<kind>-<index>`` element ids so the faces are countable in the
    output.
    """
    from matplotlib.figure import Figure
    from matplotlib.patches import Polygon as MplPolygon

    if polygon is None:
        polygon = convex_hull(v for t in subdivision.tiles for v in t.vertices)

    fig = Figure(figsize=(4.5, 4.5))
    ax = fig.add_subplot(111)
    for i, tile in enumerate(subdivision.tiles):
        face = _TILE_FACE[tile.kind]
        if subdivision.special is not None and tile == subdivision.special:
            face = "#ffb55f"
        patch = MplPolygon(
            [v.as_tuple() for v in tile.vertices],
            closed=True,
            facecolor=face,
            edgecolor="#404040",
            linewidth=0.9,
        )
        patch.set_gid(f"tile-{tile.kind.value}-{i}")
        ax.add_patch(patch)

    grid = lattice_points(polygon)
    ax.plot([p.x for p in grid], [p.y for p in grid], ".", color="#909090", markersize=3)

    if isinstance(marking, MarkedEdge):
        ax.plot(
            [marking.a.x, marking.b.x],
            [marking.a.y, marking.b.y],
            color="#d62728",
            linewidth=3.2,
            solid_capstyle="round",
            gid="marked-edge",
        )

    xs = [p.x for p in path]
    ys = [p.y for p in path]
    ax.plot(xs, ys, "-o", color="#1f77b4", linewidth=1.6, markersize=4.5, gid="lambda-path")

    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.margins(0.08)
    ax.set_xticks([])
    ax.set_yticks([])
    for spine in ax.spines.values():
        spine.set_visible(False)

    buf = io.StringIO()
    fig.savefig(buf, format="svg")
    return buf.getvalue()


def write_svg_files(result: CountResult, directory: str) -> list[str]:
    """One SVG per contribution, named contribution-<index>.svg."""
    os.makedirs(directory, exist_ok=True)
    written = []
    for i, c in enumerate(result.contributions):
        sub = Subdivision(tiles=c.tiles, special=c.marking if isinstance(c.marking, Tile) else None)
        svg = emit_svg(sub, c.path, polygon=result.instance.polygon, marking=c.marking)
        target = os.path.join(directory, f"contribution-{i}.svg")
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(svg)
        written.append(target)
    return written
