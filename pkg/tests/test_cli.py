import json

import numpy as np
import pytest

from isoperim import cli, disk

SQRT2 = np.sqrt(2.0)


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_domain_info_disk(capsys):
    code, out, _ = run_cli(["domain-info", "--preset", "disk"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["area"] == pytest.approx(np.pi)
    assert payload["kappa_max"] == pytest.approx(1.0)
    assert payload["is_disk"] is True
    assert payload["pestov_ionin"]["satisfied"] is True


def test_domain_info_ellipse_flags(capsys):
    code, out, _ = run_cli(
        ["domain-info", "--preset", "ellipse",
         "--a", "1.41421356", "--b", "0.70710678"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["is_class_A"] is True
    assert payload["kappa_max"] == pytest.approx(2.0 * SQRT2, rel=1e-6)


def test_malformed_spec_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = run_cli(["domain-info", "--spec", str(bad)], capsys)
    assert code == 2
    assert err.strip()


def test_missing_domain_exits_2(capsys):
    code, _, err = run_cli(["domain-info"], capsys)
    assert code == 2
    assert "no domain" in err


def test_profile_disk_has_quarter_pi_row(tmp_path, capsys):
    out_file = tmp_path / "profile.csv"
    code, _, _ = run_cli(
        ["profile", "--preset", "disk", "--samples", "256",
         "-o", str(out_file)], capsys)
    assert code == 0
    rows = out_file.read_text(encoding="utf-8").strip().split("\n")
    assert rows[0] == "theta,area,length,curvature"
    assert len(rows) == 257
    hit = [r for r in rows[1:]
           if abs(float(r.split(",")[0]) - np.pi / 4.0) < 1e-15]
    assert len(hit) == 1
    _, area, length, _ = (float(x) for x in hit[0].split(","))
    assert abs(length - np.pi / 2.0) < 1e-10
    assert abs(area - (np.pi / 2.0 - 1.0)) < 1e-10


def test_profile_rerun_byte_identical(tmp_path, capsys):
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["profile", "--preset", "ellipse", "--a", str(SQRT2),
            "--b", str(1.0 / SQRT2), "--samples", "64"]
    assert run_cli(args + ["-o", str(f1)], capsys)[0] == 0
    assert run_cli(args + ["-o", str(f2)], capsys)[0] == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_profile_not_class_a_exits_3(capsys):
    code, _, err = run_cli(
        ["profile", "--spec-json",
         '{"support_cos": [1.0, 0.0, 0.05], "support_sin": [0.0, 0.02]}'],
        capsys)
    assert code == 3
    assert "precondition" in err


def test_check_conjecture_ellipse(capsys):
    code, out, _ = run_cli(
        ["check-conjecture", "--preset", "ellipse",
         "--a", str(SQRT2), "--b", str(1.0 / SQRT2), "--samples", "96"],
        capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["sup_ratio"] < 1.0


def test_check_conjecture_disk_exits_3(capsys):
    code, _, err = run_cli(["check-conjecture", "--preset", "disk"], capsys)
    assert code == 3
    assert "precondition" in err


def test_check_conjecture_near_disk(capsys):
    eps = 1e-3
    code, out, _ = run_cli(
        ["check-conjecture", "--preset", "ellipse",
         "--a", str(1.0 + eps), "--b", str(1.0 / (1.0 + eps)),
         "--samples", "96"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert 0.0 < payload["margin"] < 0.01


def test_arcs_find(capsys):
    code, out, _ = run_cli(
        ["arcs-find", "--preset", "ellipse", "--a", str(SQRT2),
         "--b", str(1.0 / SQRT2), "--s1", "0.3"], capsys)
    assert code == 0
    found = json.loads(out)
    assert len(found) == 2
    s2s = sorted(item["s2"] for item in found)
    assert s2s[0] == pytest.approx(np.pi - 0.3, abs=1e-9)
    assert s2s[1] == pytest.approx(2.0 * np.pi - 0.3, abs=1e-9)
    assert all(item["ortho_residual"] < 1e-9 for item in found)


def test_perturb_roots(capsys):
    code, out, _ = run_cli(["perturb", "roots", "--n", "4"], capsys)
    assert code == 0
    roots = json.loads(out)
    assert len(roots) == 1
    assert roots[0]["b"] == pytest.approx(1.150262, abs=1e-6)
    code, out, _ = run_cli(["perturb", "roots", "--n", "2"], capsys)
    assert code == 0
    assert json.loads(out) == []


def test_implicit_curve_csv(tmp_path, capsys):
    out_file = tmp_path / "curve.csv"
    code, _, _ = run_cli(
        ["implicit-curve", "--xmax", "2.0", "--ymax", "1.4",
         "--resolution", "80", "-o", str(out_file)], capsys)
    assert code == 0
    rows = out_file.read_text(encoding="utf-8").strip().split("\n")
    assert rows[0] == "x,y"
    pts = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
    assert len(pts) > 50
    assert np.min(np.abs(pts[:, 0])) < 0.05  # the x = 0 translation line


def test_flags_override_spec_file(tmp_path, capsys):
    spec = tmp_path / "domain.json"
    spec.write_text(
        '{"preset": "ellipse", "params": {"a": 2.0, "b": 1.0}}',
        encoding="utf-8")
    code, out, _ = run_cli(
        ["domain-info", "--spec", str(spec), "--preset", "ellipse",
         "--a", str(SQRT2), "--b", str(1.0 / SQRT2)], capsys)
    assert code == 0
    assert json.loads(out)["area"] == pytest.approx(np.pi, abs=1e-9)


def test_threads_env_fallback(tmp_path, capsys, monkeypatch):
    f1, f2 = tmp_path / "e1.json", tmp_path / "e2.json"
    base = ["check-conjecture", "--preset", "ellipse",
            "--a", str(SQRT2), "--b", str(1.0 / SQRT2), "--samples", "48"]
    monkeypatch.setenv("ISOPERIM_THREADS", "3")
    assert cli.main(base + ["-o", str(f1)]) == 0
    monkeypatch.delenv("ISOPERIM_THREADS")
    assert cli.main(base + ["-o", str(f2)]) == 0
    capsys.readouterr()
    assert f1.read_bytes() == f2.read_bytes()


def test_threads_flag_identical_output(tmp_path, capsys):
    f1, f2 = tmp_path / "t1.json", tmp_path / "t2.json"
    base = ["check-conjecture", "--preset", "ellipse",
            "--a", str(SQRT2), "--b", str(1.0 / SQRT2), "--samples", "48"]
    assert cli.main(["--threads", "1"] + base + ["-o", str(f1)]) == 0
    assert cli.main(["--threads", "4"] + base + ["-o", str(f2)]) == 0
    capsys.readouterr()
    assert f1.read_bytes() == f2.read_bytes()


def test_experiment_cli_smoke(tmp_path, capsys):
    out_file = tmp_path / "exp.json"
    code, _, _ = run_cli(
        ["perturb", "experiment", "--mode", "2",
         "--area", str(np.pi / 2.0 - 1.0), "--s-max", "3e-3",
         "--s-steps", "3", "--grid", "64", "-o", str(out_file)], capsys)
    assert code == 0
    payload = json.loads(out_file.read_text(encoding="utf-8"))
    assert payload["verdict"] == "first_order_decrease"
    assert payload["alpha"] == pytest.approx(-1.0, rel=0.05)
    assert payload["profile_values"][0] == pytest.approx(
        disk.profile(np.pi / 2.0 - 1.0), abs=1e-6)
