import json

from cuspcount.engine import CountResult
from cuspcount.problem import Mode, parse_polygon_spec, validate_instance
from cuspcount.report import (
    emit_csv,
    emit_json,
    emit_svg,
    emit_table,
    result_to_dict,
    write_svg_files,
)
from cuspcount.subdivision import MarkedEdge, Subdivision, Tile


TOP_KEYS = ["polygon", "genus", "mode", "n", "pa", "delta_size", "total", "contributions", "stats"]
CONTRIB_KEYS = ["path", "tiles", "marking", "multiplicity"]


def test_json_schema(run_count):
    result = run_count("triangle:3", 0, Mode.CUSPIDAL)
    doc = json.loads(emit_json(result))
    assert list(doc.keys()) == TOP_KEYS
    assert doc["total"] == "24"
    assert doc["genus"] == 0
    assert doc["mode"] == "cuspidal"
    assert doc["n"] == 7
    assert doc["pa"] == 1
    assert doc["delta_size"] == 9
    assert len(doc["contributions"]) == 6
    for contrib in doc["contributions"]:
        assert list(contrib.keys()) == CONTRIB_KEYS
        assert contrib["marking"]["type"] in ("edge", "tile")
        assert "/" in contrib["multiplicity"] or contrib["multiplicity"].isdigit()
        for tile in contrib["tiles"]:
            assert set(tile.keys()) == {"kind", "vertices"}


def test_json_severi_marking_null(run_count):
    doc = json.loads(emit_json(run_count("triangle:3", 1, Mode.SEVERI)))
    assert doc["mode"] == "severi_irreducible"
    assert doc["contributions"][0]["marking"] is None


def test_json_empty_contributions():
    inst = validate_instance(parse_polygon_spec("triangle:3"), 0, Mode.CUSPIDAL)
    empty = CountResult(instance=inst, total=0, contributions=[], stats={})
    doc = json.loads(emit_json(empty))
    assert doc["contributions"] == []
    assert doc["total"] == "0"


def test_json_fractional_multiplicity_strings(run_count):
    doc = json.loads(emit_json(run_count("triangle:4", 1, Mode.CUSPIDAL)))
    values = {c["multiplicity"] for c in doc["contributions"]}
    assert any("/" in v for v in values)


def test_stats_scrubbing(run_count):
    result = run_count("triangle:3", 0, Mode.CUSPIDAL)
    assert result_to_dict(result, scrub_stats=True)["stats"] == {}
    assert result_to_dict(result)["stats"]["paths_scanned"] == 28


def test_csv_output(run_count):
    result = run_count("triangle:3", 0, Mode.CUSPIDAL)
    text = emit_csv(result)
    lines = text.strip().splitlines()
    assert lines[0].startswith("#") and "total=24" in lines[0]
    assert lines[1] == "index,path,tiles,marking_type,marking_data,multiplicity"
    assert len(lines) == 2 + 6


def test_table_output(run_count):
    text = emit_table(run_count("triangle:3", 0, Mode.CUSPIDAL))
    assert "total        24" in text
    assert "cuspidal" in text


def test_svg_face_count(run_count):
    # maximal path on triangle:3 gives the fan of 9 unit triangles
    result = run_count("triangle:3", 1, Mode.SEVERI)
    c = result.contributions[0]
    svg = emit_svg(Subdivision(tiles=c.tiles, special=None), c.path, polygon=result.instance.polygon)
    assert svg.count('id="tile-Triangle-') == 9
    assert 'id="lambda-path"' in svg


def test_svg_marking_rendering(run_count):
    result = run_count("triangle:4", 2, Mode.CUSPIDAL)
    edge_contrib = next(c for c in result.contributions if isinstance(c.marking, MarkedEdge))
    sub = Subdivision(tiles=edge_contrib.tiles, special=None)
    svg = emit_svg(sub, edge_contrib.path, polygon=result.instance.polygon, marking=edge_contrib.marking)
    assert 'id="marked-edge"' in svg
    tile_contrib = next(c for c in result.contributions if isinstance(c.marking, Tile))
    sub = Subdivision(tiles=tile_contrib.tiles, special=tile_contrib.marking)
    svg = emit_svg(sub, tile_contrib.path, polygon=result.instance.polygon, marking=tile_contrib.marking)
    assert 'id="tile-Trapeze-' in svg or 'id="tile-QuadNoParallel-' in svg


def test_write_svg_files(tmp_path, run_count):
    result = run_count("triangle:3", 0, Mode.CUSPIDAL)
    files = write_svg_files(result, str(tmp_path))
    assert len(files) == 6
    for i, name in enumerate(files):
        assert name.endswith(f"contribution-{i}.svg")
        text = open(name).read()
        assert text.lstrip().startswith("<?xml")
