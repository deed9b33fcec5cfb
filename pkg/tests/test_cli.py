import json

import numpy as np
import pytest

from chebzeros import cli
from chebzeros import funcspace as fs


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# argument parsing units


def test_parse_system_kinds():
    s = cli.parse_system("poly:3")
    assert s.order_n == 4 and s.dom.a == -1.0
    s2 = cli.parse_system("poly:2:0:5")
    assert s2.dom.b == 5.0
    assert cli.parse_system("trig:2").order_n == 5
    s3 = cli.parse_system("power:1,2.5:1:3")
    assert s3.order_n == 3  # constant term plus the two powers
    with pytest.raises(ValueError):
        cli.parse_system("fourier:3")


def test_parse_curve_kinds():
    assert cli.parse_curve("moment:3").d == 3
    assert cli.parse_curve("moment:2:-2:2").dom.b == 2.0
    assert cli.parse_curve("trig:2").d == 4
    assert cli.parse_curve("expgraph").d == 2
    assert cli.parse_curve("smoothedpolygon:6").dom.is_circle
    assert cli.parse_curve("sinegraph").label == "sinegraph"
    with pytest.raises(ValueError):
        cli.parse_curve("helix:3")


def test_parse_func_kinds():
    dom = fs.interval(-1.0, 1.0)
    f = cli.parse_func("poly:0,1", dom)  # t
    assert f(np.array([0.25]))[0] == pytest.approx(0.25)
    g = cli.parse_func("roots:-0.5,0.5", dom)
    assert abs(g(np.array([0.5]))[0]) < 1e-12
    h = cli.parse_func("trig:1,0,1", fs.circle())  # 1 + sin t
    assert h(np.array([np.pi / 2]))[0] == pytest.approx(2.0)
    with pytest.raises(ValueError):
        cli.parse_func("spline:1", dom)


# ---------------------------------------------------------------------------
# verify reports


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "assertion1", "--trials", "2",
                       "--no-timing")
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {"schema", "command", "seed", "trials_run",
                        "pass_count", "fail_count", "failures",
                        "wall_time_ms"}
    assert rep["schema"] == 1
    assert rep["command"] == "verify assertion1"
    assert rep["fail_count"] == 0
    assert rep["pass_count"] == rep["trials_run"] > 0
    assert rep["wall_time_ms"] == 0


def test_verify_csv_format(capsys):
    code, out, _ = run(capsys, "verify", "hurwitz", "--trials", "1",
                       "--harmonics", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "instance,ok,expected,observed"
    assert len(lines) > 1
    assert all(",1," in ln for ln in lines[1:])


def test_no_timing_reruns_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code = cli.main(["verify", "theorem6", "--trials", "1", "--seed", "3",
                         "--no-timing", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_theorem6_overrides(capsys):
    code, out, _ = run(capsys, "verify", "theorem6", "--trials", "1",
                       "--n", "1", "--k", "9", "--no-timing")
    assert code == 0
    rep = json.loads(out)
    assert rep["fail_count"] == 0


def test_verify_all_smoke(capsys):
    code, out, _ = run(capsys, "verify", "all", "--trials", "1",
                       "--no-timing")
    assert code == 0
    rep = json.loads(out)
    assert rep["fail_count"] == 0
    assert rep["trials_run"] > 20


# ---------------------------------------------------------------------------
# synth payloads


def test_synth_ortho_oracle(capsys):
    code, out, _ = run(capsys, "synth", "ortho", "--system", "poly:1",
                       "--points=-0.3333333333333333,0.3333333333333333")
    assert code == 0
    payload = json.loads(out)
    expect = np.array([1.0, 10.0, 1.0]) / np.sqrt(102.0)
    got = np.asarray(payload["heights"])
    assert np.max(np.abs(np.abs(got) - expect)) < 1e-9
    assert payload["sign_changes"] == 2
    assert payload["max_residual"] <= 1e-8


def test_synth_weight_support(capsys):
    code, out, _ = run(capsys, "synth", "weight", "--system", "poly:1",
                       "--func", "roots:-0.6,-0.2,0.2,0.6")
    assert code == 0
    payload = json.loads(out)
    assert payload["support"] is not None
    assert payload["support"][1] == pytest.approx(0.2, abs=1e-6)


def test_synth_masses_roundtrip(tmp_path, capsys):
    import chebzeros as cz
    P = cz.random_convex_polygon(8, rng_seed=2)
    poly_file = tmp_path / "poly.txt"
    poly_file.write_text(cz.format_polyline(P))
    code, out, _ = run(capsys, "synth", "masses", "--poly", str(poly_file),
                       "--n", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 8 and payload["closed"]
    assert payload["bound"] == 4
    assert payload["sign_changes"] >= 4
    assert payload["max_residual"] <= 1e-10


def test_synth_annihilator(capsys):
    code, out, _ = run(capsys, "synth", "annihilator", "--system", "poly:3",
                       "--simple", "-0.4", "--double", "0.3")
    assert code == 0
    payload = json.loads(out)
    co = np.asarray(payload["coeffs"])
    assert np.linalg.norm(co) == pytest.approx(1.0, abs=1e-10)


# ---------------------------------------------------------------------------
# curve payloads


def test_curve_convexity_witness(capsys):
    code, out, _ = run(capsys, "curve", "convexity", "--curve", "sinegraph")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "Counterexample"
    assert payload["witness_crossings"] > 2
    code2, out2, _ = run(capsys, "curve", "convexity", "--curve", "moment:2")
    payload2 = json.loads(out2)
    assert payload2["status"] == "NoViolationFound"


def test_curve_dimension(capsys):
    code, out, _ = run(capsys, "curve", "dimension", "--curve", "expgraph",
                       "--n", "2")
    assert code == 0
    assert json.loads(out)["dimension"] == 6


def test_payload_csv(capsys):
    code, out, _ = run(capsys, "curve", "dimension", "--curve", "moment:2",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "key,value"
    assert any(ln.startswith("dimension,") for ln in lines)


# ---------------------------------------------------------------------------
# error paths


def test_exit_2_on_bad_inputs(capsys):
    code, _, err = run(capsys, "synth", "ortho", "--system", "poly:1",
                       "--points", "0.0,0.3,0.6")
    assert code == 2 and "points" in err
    code2, _, err2 = run(capsys, "curve", "convexity", "--curve", "helix:3")
    assert code2 == 2 and err2
    code3, _, err3 = run(capsys, "synth", "masses", "--poly",
                         "/nonexistent/poly.txt", "--n", "1")
    assert code3 == 2
    code4, _, err4 = run(capsys, "synth", "ortho", "--system", "poly:1")
    assert code4 == 2 and "needs" in err4
