"""Text formats: round trips, canonical emission, reports, error paths."""

import json

import pytest

from unknotforge import codec as cd
from unknotforge import invariants as iv
from unknotforge import planemap as pm
from unknotforge.errors import (
    CodecSyntaxError,
    UnrealizableCode,
    UnsupportedConversion,
)


def test_trivial_rotmap_text():
    assert cd.emit(pm.trivial(), "rotmap") == "shadow v=0 loops=1 outer=0\n"
    assert cd.parse("shadow v=0 loops=1 outer=0\n", "rotmap") == pm.trivial()


def test_rotmap_round_trip_exact(corpus_shadow):
    s = corpus_shadow
    text = cd.emit(s, "rotmap")
    assert cd.parse(text, "rotmap") == s
    assert cd.emit(cd.parse(text, "rotmap"), "rotmap") == text


def test_gauss_round_trip_shadow(corpus_shadow):
    s = corpus_shadow
    if s.n == 0:
        return
    text = cd.emit(s, "gauss")
    back = cd.parse(text, "gauss")
    assert pm.plane_map_equal(s, back)
    assert cd.emit(back, "gauss") == text


def test_gauss_round_trip_diagram(corpus_shadow):
    s = corpus_shadow
    if s.n == 0:
        return
    d = iv.alternating_diagram(s)
    text = cd.emit(d, "gauss")
    back = cd.parse(text, "gauss")
    assert pm.plane_map_equal(d.shadow, back.shadow, d.bits, back.bits)
    assert cd.emit(back, "gauss") == text


def test_pd_round_trip(corpus_shadow):
    s = corpus_shadow
    if s.n == 0:
        return
    for d in (iv.alternating_diagram(s), iv.Diagram(s, (0,) * s.n)):
        text = cd.emit(d, "pd")
        back = cd.parse(text, "pd")
        assert pm.plane_map_equal(d.shadow, back.shadow, d.bits, back.bits)
        assert cd.emit(back, "pd") == text


def test_pd_of_alternating_trefoil_classifies_trefoil():
    d = iv.alternating_diagram(pm.standard_trefoil())
    back = cd.parse(cd.emit(d, "pd"), "pd")
    assert iv.classify(back).kind in ("trefoil_left", "trefoil_right")


def test_random_shadow_round_trips():
    for seed in range(100):
        s = pm.random_shadow(1 + seed % 12, seed)
        assert cd.parse(cd.emit(s, "rotmap"), "rotmap") == s
        back = cd.parse(cd.emit(s, "gauss"), "gauss")
        assert pm.plane_map_equal(s, back)
        if seed % 5 == 0:
            d = iv.alternating_diagram(s)
            dback = cd.parse(cd.emit(d, "pd"), "pd")
            assert pm.plane_map_equal(d.shadow, dback.shadow, d.bits, dback.bits)


def test_canonical_emission_under_slot_rotation():
    s = pm.standard_figure8()
    perm = {8 + i: 8 + ((i + 3) & 3) for i in range(4)}
    twin = [0] * 16
    for d in range(16):
        twin[perm.get(d, d)] = perm.get(s.twin[d], s.twin[d])
    rotated = pm.Shadow(4, tuple(twin), 0, 0)
    pm.validate_shadow(rotated)
    assert pm.plane_map_equal(s, rotated)
    assert cd.emit(s, "gauss") == cd.emit(rotated, "gauss")
    d1 = iv.alternating_diagram(s)
    d2 = iv.alternating_diagram(rotated)
    assert cd.emit(d1, "pd") == cd.emit(d2, "pd")


def test_gauss_label_occurring_once_is_syntax_error():
    with pytest.raises(CodecSyntaxError):
        cd.parse("+1 -2 +1", "gauss")


def test_gauss_same_layer_twice_rejected():
    with pytest.raises(CodecSyntaxError):
        cd.parse("+U1 +U1", "gauss")


def test_nonplanar_gauss_rejected():
    with pytest.raises(UnrealizableCode):
        cd.parse("+1 +2 +1 +2", "gauss")


def test_diagram_to_shadow_format_needs_strip():
    d = iv.alternating_diagram(pm.standard_trefoil())
    with pytest.raises(UnsupportedConversion):
        cd.emit(d, "rotmap")
    stripped = cd.emit(d, "rotmap", strip=True)
    assert cd.parse(stripped, "rotmap") == d.shadow
    gauss_shadow = cd.emit(d, "gauss", strip=True)
    assert "U" not in gauss_shadow and "L" not in gauss_shadow


def test_pd_rejects_shadow_and_trivial():
    with pytest.raises(UnsupportedConversion):
        cd.emit(pm.standard_trefoil(), "pd")
    with pytest.raises(UnsupportedConversion):
        cd.emit(iv.trivial_diagram(), "pd")


def test_detect_format():
    assert cd.detect_format("shadow v=0 loops=1 outer=0") == "rotmap"
    assert cd.detect_format("X[1,2,3,4]") == "pd"
    assert cd.detect_format("+1 -1") == "gauss"


def test_census_csv_sorted():
    census = iv.census(pm.standard_figure8())
    text = cd.census_csv(census)
    lines = text.strip().splitlines()
    assert lines[0] == "class,count"
    names = [ln.split(",")[0] for ln in lines[1:]]
    assert names == sorted(names)
    assert "unknot,12" in lines


def test_census_report_json_schema():
    census = iv.census(pm.chorizo(4))
    payload = json.loads(cd.census_report_json(
        pm.chorizo(4), census, generated_count=16, method="cycles"))
    assert set(payload) == {"shadow", "n", "census", "unknot_count",
                            "generated_count", "method", "runtime_ms"}
    assert payload["n"] == 4
    assert payload["unknot_count"] == 16
    assert payload["census"] == {"unknot": 16}
    assert payload["runtime_ms"] == 0
