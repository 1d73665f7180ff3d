"""End-to-end command-line checks."""

import json

import pytest

from unknotforge import cli
from unknotforge import codec as cd
from unknotforge import planemap as pm


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = cli.main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err
    return _run


@pytest.fixture
def fig8_file(tmp_path):
    p = tmp_path / "fig8.rot"
    p.write_text(cd.emit(pm.standard_figure8(), "rotmap"))
    return str(p)


def test_family_and_validate(run, tmp_path):
    code, out, _ = run("family", "chorizo", "4")
    assert code == 0 and out.startswith("shadow v=4")
    p = tmp_path / "c4.rot"
    p.write_text(out)
    code, out, _ = run("validate", str(p))
    assert code == 0
    assert "kind: knot" in out


def test_validate_rejects_link(run, tmp_path):
    p = tmp_path / "link.rot"
    link = pm.build_shadow([(0, 6), (2, 4), (1, 5), (3, 7)])
    p.write_text(cd.emit(link, "rotmap"))
    code, out, _ = run("validate", str(p))
    assert code == 1
    assert "kind: link" in out


def test_census_text_and_json(run, fig8_file):
    code, out, _ = run("census", fig8_file)
    assert code == 0
    assert "unknot,12" in out
    assert "unknot_fraction,12/16" in out
    code, out, _ = run("--format", "json", "census", fig8_file)
    payload = json.loads(out)
    assert payload["unknot_count"] == 12
    assert payload["runtime_ms"] == 0


def test_census_byte_identical_across_threads(run, fig8_file):
    _, out1, _ = run("--threads", "1", "census", fig8_file)
    _, out2, _ = run("--threads", "2", "census", fig8_file)
    assert out1 == out2


def test_generate_bound(run, fig8_file):
    code, out, _ = run("--format", "json", "generate", fig8_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["bound_satisfied"] is True
    assert payload["replay_ok"] is True
    assert payload["count"] >= payload["bound"]


def test_generate_methods(run, tmp_path):
    p = tmp_path / "cn5.rot"
    p.write_text(cd.emit(pm.cn(5), "rotmap"))
    for method in ("auto", "cycles", "digons", "descending"):
        code, out, _ = run("generate", str(p), "--method", method)
        assert code == 0, method
        assert "bound_satisfied: true" in out or method == "descending"


def test_classify_bits(run, fig8_file):
    code, out, _ = run("classify", fig8_file, "--bits", "0000")
    assert code == 0
    assert out.strip() in {"unknot", "trefoil_left", "trefoil_right",
                           "figure_eight"} or out.startswith("other")


def test_classify_usage_error(run, fig8_file):
    code, out, _ = run("classify", fig8_file, "--bits", "01")
    assert code == 64


def test_trefoil_on_chorizo_and_cn3(run, tmp_path):
    p = tmp_path / "c5.rot"
    p.write_text(cd.emit(pm.chorizo(5), "rotmap"))
    code, out, _ = run("trefoil", str(p))
    assert code == 0 and "all-unknot shadow" in out
    q = tmp_path / "cn3.rot"
    q.write_text(cd.emit(pm.cn(3), "rotmap"))
    code, out, _ = run("trefoil", str(q))
    assert code == 0 and "class: trefoil" in out


def test_cutcheck(run, tmp_path):
    p = tmp_path / "c4.rot"
    p.write_text(cd.emit(pm.chorizo(4), "rotmap"))
    code, out, _ = run("cutcheck", str(p))
    assert code == 0
    assert "all_cut: true" in out
    q = tmp_path / "t.rot"
    q.write_text(cd.emit(pm.standard_trefoil(), "rotmap"))
    code, out, _ = run("cutcheck", str(q))
    assert "all_cut: false" in out
    assert "cut_vertices: none" in out


def test_depth(run, tmp_path):
    p = tmp_path / "c4.rot"
    p.write_text(cd.emit(pm.chorizo(4), "rotmap"))
    code, out, _ = run("depth", str(p))
    assert code == 0 and out.strip() == "1"


def test_connsum(run, tmp_path, fig8_file):
    code, out, _ = run("connsum", fig8_file, fig8_file)
    assert code == 0
    merged = cd.parse(out, "rotmap")
    assert merged.n == 8


def test_gauss_and_pd_inputs(run, tmp_path):
    g = tmp_path / "trefoil.gauss"
    g.write_text(cd.emit(pm.standard_trefoil(), "gauss"))
    code, out, _ = run("validate", str(g))
    assert code == 0 and "kind: knot" in out
    from unknotforge import invariants as iv
    d = iv.alternating_diagram(pm.standard_trefoil())
    p = tmp_path / "trefoil.pd"
    p.write_text(cd.emit(d, "pd"))
    code, out, _ = run("classify", str(p))
    assert code == 0 and out.startswith("trefoil")


def test_bad_file_exit_code(run, tmp_path):
    p = tmp_path / "bad.rot"
    p.write_text("shadow v=1 loops=0 outer=0\nv0: 0 1 2 3\n")
    code, _, err = run("validate", str(p))
    assert code == 1


def test_missing_file(run):
    code, _, err = run("census", "/nonexistent/file")
    assert code == 1


def test_usage_error_exit(run):
    code, _, _ = run("frobnicate")
    assert code == 64


def test_deterministic_output(run, fig8_file):
    _, out1, _ = run("--format", "json", "generate", fig8_file)
    _, out2, _ = run("--format", "json", "generate", fig8_file)
    assert out1 == out2


def test_selftest_fast(run):
    code, out, _ = run("selftest", "--fast")
    assert code == 0
    assert out.count("[PASS]") == 10
    assert "10/10 criteria passed" in out
