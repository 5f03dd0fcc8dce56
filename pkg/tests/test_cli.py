import io
import json
import pathlib

import numpy as np
import pytest

from adhmkit import cli
from adhmkit.hirz import chart_coords, hirz_adhm
from adhmkit.plane import plane_adhm
from adhmkit.serialize import dumps, load_path, loads

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    payload = json.loads(out) if out.strip() else None
    return code, payload


def g(name):
    return str(GOLDEN / name)


def test_validate_golden_verdicts(capsys):
    code, payload = run(capsys, "validate", g("hirz_valid_n2c2.json"))
    assert code == 0
    assert payload["passed"] is True
    assert any(c["name"] == "pencil_nondegenerate" for c in payload["checks"])
    for bad in ("hirz_bad_p1.json", "hirz_bad_p2.json", "hirz_bad_p3.json"):
        code, payload = run(capsys, "validate", g(bad))
        assert code == 1, bad
        assert payload["passed"] is False


def test_validate_malformed_inputs(capsys):
    for name in ("malformed_not_json.json", "malformed_kind.json",
                 "malformed_badnum.json", "malformed_c_mismatch.json"):
        code, payload = run(capsys, "validate", g(name))
        assert code == 2, name
        assert payload["error"] == "parse"
        assert payload["path"]


def test_validate_indeterminate_pencil(capsys, tmp_path):
    a1 = np.diag([1.0 + 0j, 1e-20])
    d = hirz_adhm(1, 2, a1, 2.0 * a1, (np.eye(2, dtype=complex),),
                  np.ones(2, dtype=complex))
    path = tmp_path / "tiny.json"
    path.write_text(dumps(d))
    code, payload = run(capsys, "validate", str(path))
    assert code == 2
    assert payload["passed"] is False


def test_validate_p3_method_both(capsys):
    code, payload = run(capsys, "validate", g("hirz_valid_n1c1.json"),
                        "--p3-method", "both")
    assert code == 0
    names = [c["name"] for c in payload["checks"]]
    assert "costability" in names and "costability_direct" in names


def test_validate_wrong_kind(capsys):
    code, payload = run(capsys, "validate", g("plane_valid_c2.json"))
    assert code == 2
    assert payload["error"] == "kind"


def test_validate_plane_goldens(capsys):
    code, payload = run(capsys, "validate-plane", g("plane_valid_c2.json"))
    assert code == 0 and payload["passed"]
    code, payload = run(capsys, "validate-plane", g("plane_bad_t1.json"))
    assert code == 1 and not payload["passed"]


def test_chart_set(capsys):
    code, payload = run(capsys, "chart-set", g("hirz_valid_n2c2.json"))
    assert code == 0
    charts = payload["charts"]
    assert charts and all(0 <= m <= 2 for m in charts)


def test_to_chart_bad_index_is_domain_error(capsys):
    code, payload = run(capsys, "to-chart", g("hirz_valid_n2c2.json"), "--m", "99")
    assert code == 2
    assert payload["error"] == "domain"


def test_chart_roundtrip_through_files(capsys, tmp_path):
    chart_path = tmp_path / "cc.json"
    code, payload = run(capsys, "chart-set", g("hirz_valid_n2c2.json"))
    m = payload["charts"][0]
    code, _ = run(capsys, "to-chart", g("hirz_valid_n2c2.json"), "--m", str(m),
                  "--out", str(chart_path))
    assert code == 0
    back_path = tmp_path / "back.json"
    code, _ = run(capsys, "from-chart", str(chart_path), "--out", str(back_path))
    assert code == 0
    orig = load_path(g("hirz_valid_n2c2.json"))
    back = load_path(str(back_path))
    assert np.allclose(orig.A1, back.A1, atol=1e-10)
    assert np.allclose(orig.A2, back.A2, atol=1e-10)
    assert all(np.allclose(x, y, atol=1e-10) for x, y in zip(orig.C, back.C))


def test_transition_frozen_scalar(capsys, tmp_path):
    cc = chart_coords(1, 1, 1, np.array([[2.0 + 0j]]), np.array([[5.0 + 0j]]),
                      np.array([7.0 + 0j]), np.array([[3.0 + 0j]]))
    path = tmp_path / "cc.json"
    path.write_text(dumps(cc))
    code, payload = run(capsys, "transition", str(path), "--l", "0")
    assert code == 0
    assert payload["m"] == 0
    assert payload["B"][0][0] == pytest.approx([-0.5, 0.0])
    assert payload["E"][0][0] == pytest.approx([-10.0, 0.0])
    assert payload["A2m"][0][0] == pytest.approx([-6.0, 0.0])


def test_transition_plane_command(capsys, tmp_path):
    p = plane_adhm([[2.0 + 0j]], [[5.0 + 0j]], [7.0 + 0j])
    path = tmp_path / "p.json"
    path.write_text(dumps(p))
    code, payload = run(capsys, "transition-plane", str(path),
                        "--m", "1", "--l", "0", "--n", "1", "--cbase", "1")
    assert code == 0
    assert payload["b1"][0][0] == pytest.approx([-0.5, 0.0])
    assert payload["b2"][0][0] == pytest.approx([-10.0, 0.0])


def test_canonical_dispatches_on_kind(capsys):
    code, payload = run(capsys, "canonical", g("plane_valid_c2.json"))
    assert code == 0
    assert "gauge" in payload and payload["point"]["kind"] == "plane_adhm"
    code, payload = run(capsys, "canonical", g("hirz_valid_n2c2.json"))
    assert code == 0
    assert "chart" in payload and payload["point"]["kind"] == "hirz_adhm"


def test_orbit_equal_exit_codes(capsys):
    code, payload = run(capsys, "orbit-equal", g("hirz_valid_n2c2.json"),
                        g("hirz_valid_n2c2_gauged.json"))
    assert code == 0 and payload["equal"] is True
    code, payload = run(capsys, "orbit-equal", g("hirz_valid_n2c2.json"),
                        g("hirz_valid_n2c2_other.json"))
    assert code == 1 and payload["equal"] is False
    code, payload = run(capsys, "orbit-equal", g("hirz_valid_n2c2.json"),
                        g("plane_valid_c2.json"))
    assert code == 2 and payload["error"] == "kind"


def test_support_and_chart_pairs(capsys):
    code, payload = run(capsys, "support", g("hirz_valid_n2c2.json"))
    assert code == 0
    assert sum(entry["multiplicity"] for entry in payload["base"]) == 2
    code2, payload2 = run(capsys, "chart-set", g("hirz_valid_n2c2.json"))
    m = payload2["charts"][0]
    code3, payload3 = run(capsys, "support", g("hirz_valid_n2c2.json"), "--m", str(m))
    assert code3 == 0
    assert payload3["chart"]["m"] == m
    assert len(payload3["chart"]["pairs"]) == 2


def test_hilbert_chow_normalization(capsys):
    code, payload = run(capsys, "hilbert-chow", g("hirz_valid_n2c2.json"))
    assert code == 0
    assert payload["degree"] == 2
    mags = [abs(complex(re, im)) for re, im in payload["form"]]
    assert max(mags) == pytest.approx(1.0)
    assert sum(e["multiplicity"] for e in payload["cycle"]) == 2


def test_sigma_frozen(capsys):
    code, payload = run(capsys, "sigma", "--h", "2", "--m", "1", "--cbase", "1")
    assert code == 0
    assert payload["entries"] == [[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]]


def test_rank_and_dimension_commands(capsys):
    code, payload = run(capsys, "syst-rank", g("hirz_valid_n2c2.json"))
    assert code == 0 and payload["rank"] == payload["expected"] == 4
    code, payload = run(capsys, "jacobian-dim", g("hirz_valid_n2c2.json"))
    assert code == 0 and payload["nullity"] == payload["expected"] == 12
    assert payload["orbit_dim"] == 4


def test_c1_pipeline(capsys, tmp_path):
    lifted = tmp_path / "lifted.json"
    code, payload = run(capsys, "c1-from-ytilde", g("ytilde_n2.json"), "--n", "2",
                        "--out", str(lifted))
    assert code == 0
    code, payload = run(capsys, "c1-to-tot", str(lifted))
    assert code == 0
    assert payload["kind"] == "tot_point"
    y = load_path(g("ytilde_n2.json"))
    u1 = complex(*payload["u1"])
    u2 = complex(*payload["u2"])
    assert abs(u1 - y.x1 * y.y2) < 1e-12
    assert abs(u2 - y.x2 * y.y1) < 1e-12


def test_property_run_small(capsys):
    code, payload = run(capsys, "property-run", "--samples", "2",
                        "--max-n", "2", "--max-c", "2", "--filter", "sigma")
    assert code == 0
    assert payload["passed"] is True
    assert all(p["cases"] > 0 for p in payload["properties"])


def test_property_run_vacuous_warns(capsys):
    code, payload = run(capsys, "property-run", "--samples", "0")
    assert code == 0
    assert "vacuous" in payload["warning"]
    assert all(p["cases"] == 0 for p in payload["properties"])


def test_env_tolerance_rejected_when_malformed(capsys, monkeypatch):
    monkeypatch.setenv("ADHMKIT_TOL", "rank=notanumber")
    code, payload = run(capsys, "chart-set", g("hirz_valid_n2c2.json"))
    assert code == 2 and payload["error"] == "config"
    monkeypatch.setenv("ADHMKIT_TOL", "bogus_key=1e-9")
    code, payload = run(capsys, "chart-set", g("hirz_valid_n2c2.json"))
    assert code == 2 and payload["error"] == "config"
    monkeypatch.setenv("ADHMKIT_TOL", "rank")
    code, payload = run(capsys, "chart-set", g("hirz_valid_n2c2.json"))
    assert code == 2 and payload["error"] == "config"


def test_env_tolerance_applies(capsys, monkeypatch):
    monkeypatch.setenv("ADHMKIT_TOL", "rank=1e-9,eq=1e-8,root=1e-6")
    code, payload = run(capsys, "validate", g("hirz_valid_n2c2.json"))
    assert code == 0 and payload["passed"]


def test_tol_flags_accepted(capsys):
    code, payload = run(capsys, "validate", g("hirz_valid_n2c2.json"),
                        "--tol.eq", "1e-6", "--tol.rank", "1e-8", "--tol.root", "1e-5")
    assert code == 0


def test_stdin_input(capsys, monkeypatch):
    text = open(g("plane_valid_c2.json")).read()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, payload = run(capsys, "validate-plane", "-")
    assert code == 0 and payload["passed"]


def test_stdin_invalid_json(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("{nope"))
    code, payload = run(capsys, "validate-plane", "-")
    assert code == 2 and payload["error"] == "parse" and payload["path"] == "stdin"


def test_unknown_command_exits_2(capsys):
    code = cli.main(["frobnicate"])
    capsys.readouterr()
    assert code == 2


def test_missing_file_is_parse_error(capsys):
    code, payload = run(capsys, "validate", "/nonexistent/file.json")
    assert code == 2 and payload["error"] == "parse"


def test_out_flag_writes_file_not_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code = cli.main(["validate", g("hirz_valid_n2c2.json"), "--out", str(target)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip() == ""
    assert json.loads(target.read_text())["passed"] is True
