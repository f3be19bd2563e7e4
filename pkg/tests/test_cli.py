import csv
import json

import pytest

from sprt_coherent.cli import build_parser, main

FIG4 = ["--n", "100", "--theta0", "0.2", "--theta1", "-0.1", "--alpha", "0.00005", "--beta", "0.2"]
FIG2 = ["--n", "100", "--theta0", "0.1", "--theta1", "-0.1", "--alpha", "0.01", "--beta", "0.05"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_closed_form_fig4_curve(capsys):
    code, out, _ = run(capsys, "closed-form", *FIG4, "--l-range", "1:100")
    assert code == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert list(rows[0]) == ["l", "p0", "p1", "ps"]
    best = max(rows, key=lambda r: float(r["ps"]))
    assert abs(int(best["l"]) - 32.74) <= 2
    assert "\r" not in out


def test_closed_form_symmetric_constant(capsys):
    _, out, _ = run(capsys, "closed-form", *FIG2, "--l-range", "1:100")
    assert len({r["ps"] for r in csv.DictReader(out.splitlines())}) == 1


def test_closed_form_fifteen_digits(capsys):
    _, out, _ = run(capsys, "closed-form", *FIG4, "--l", "33")
    ps = out.splitlines()[1].split(",")[3]
    assert len(ps.lstrip("0.").replace(".", "")) <= 15
    assert float(ps) == pytest.approx(0.980261604034907, abs=1e-15)


def test_closed_form_invalid_budget(capsys):
    code, _, err = run(capsys, "closed-form", "--n", "100", "--theta0", "0.1", "--theta1", "-0.1",
                       "--alpha", "0.6", "--beta", "0.6", "--l", "1")
    assert code == 2 and "alpha + beta must be < 1" in err


def test_closed_form_json(capsys):
    _, out, _ = run(capsys, "closed-form", *FIG4, "--l-range", "1:3", "--json")
    obj = json.loads(out)
    assert obj["schema_version"] == 1 and len(obj["rows"]) == 3


def test_optimize_fig4(capsys):
    code, out, _ = run(capsys, "optimize", *FIG4)
    rep = json.loads(out)
    assert code == 0
    assert rep["case"] == "II"
    assert rep["l_opt_closed_form"] == pytest.approx(32.74, abs=5e-3)
    assert abs(rep["l_argmax"] - rep["l_opt_closed_form"]) <= 2
    assert set(rep) >= {"case", "l_argmax", "p_s_max", "l_opt_closed_form", "l_min", "l_max",
                        "schema_version"}


def test_optimize_symmetric(capsys):
    rep = json.loads(run(capsys, "optimize", *FIG2)[1])
    assert rep["l_opt_closed_form"] is None and rep["l_min"] is None
    assert "l-invariant" in rep["note"]


def test_optimize_case1(capsys):
    rep = json.loads(run(capsys, "optimize", "--n", "10", "--theta0", "0.01", "--theta1", "0",
                         "--alpha", "0.01", "--beta", "0.01")[1])
    assert rep["case"] == "I" and rep["recommendation"] == "random guess"
    assert rep["p_s_max"] <= 0.5 + 1e-3


def test_unambiguous(capsys):
    code, out, _ = run(capsys, "unambiguous", "--overlap", "0.9", "--n", "10", "--l", "2")
    row = out.splitlines()[1].split(",")
    assert code == 0 and row[3] == row[4] and row[3].startswith("0.65132")
    _, out, _ = run(capsys, "unambiguous", "--overlap", "0", "--n", "10")
    assert out.splitlines()[1].split(",")[3] == "1"
    code, _, err = run(capsys, "unambiguous", "--overlap", "0.9", "--n", "10", "--l", "3")
    assert code == 2 and "divide" in err
    _, out, _ = run(capsys, "unambiguous", "--theta-angle", "0", "--n", "4", "--json")
    assert json.loads(out)["unbatched"] == 0.0


def test_unknown_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["optimize", *FIG4, "--bogus", "1"])
    assert e.value.code == 2


def test_help_lists_flags():
    helptext = build_parser()._subparsers._group_actions[0].choices["simulate"].format_help()
    for flag in ("--n", "--theta0", "--theta1", "--alpha", "--beta", "--l", "--truth",
                 "--trajectories", "--seed", "--mean-out", "--paths-out", "--summary-out"):
        assert flag in helptext


def _simulate(tmp_path, tag, extra=()):
    d = tmp_path / tag
    d.mkdir()
    argv = ["simulate", *FIG2, "--l", "2", "--truth", "0", "--trajectories", "3000", "--seed", "42",
            "--mean-out", str(d / "mean.csv"), "--summary-out", str(d / "summary.json"),
            "--paths-out", str(d / "paths.csv"), *extra]
    assert main(argv) == 0
    return d


def test_simulate_outputs_and_determinism(tmp_path, monkeypatch):
    a = _simulate(tmp_path, "a")
    monkeypatch.setenv("SPRT_COHERENT_THREADS", "1")
    b = _simulate(tmp_path, "b")
    for name in ("mean.csv", "summary.json", "paths.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    summary = json.loads((a / "summary.json").read_text())
    assert summary["schema_version"] == 1
    assert summary["horizon_batches"] == 50
    for key in ("horizon_estimate", "first_crossing_estimate"):
        assert set(summary[key]) == {"point", "stderr", "n_trials"}
    mean = list(csv.DictReader((a / "mean.csv").read_text().splitlines()))
    assert len(mean) == 50 and list(mean[0]) == ["n", "z_mean"]
    assert (a / "summary.json.manifest.json").exists()


def test_manifest_replay(tmp_path, capsys):
    a = _simulate(tmp_path, "a")
    before = {p.name: p.read_bytes() for p in a.iterdir() if not p.name.endswith("manifest.json")}
    for p in a.iterdir():
        if not p.name.endswith("manifest.json"):
            p.unlink()
    manifest = json.loads((a / "mean.csv.manifest.json").read_text())
    assert manifest["seed"] == 42 and manifest["command"] == "simulate"
    assert main(["--from-manifest", str(a / "mean.csv.manifest.json")]) == 0
    after = {p.name: p.read_bytes() for p in a.iterdir() if not p.name.endswith("manifest.json")}
    assert before == after


def test_simulate_unwritable(tmp_path, capsys):
    code, _, err = run(capsys, "simulate", *FIG2, "--l", "1", "--truth", "0", "--trajectories", "10",
                       "--seed", "1", "--summary-out", str(tmp_path / "missing" / "s.json"))
    assert code == 3 and "cannot write" in err


def test_simulate_bad_l(capsys):
    code, _, _ = run(capsys, "simulate", *FIG2, "--l", "101", "--truth", "0", "--seed", "1")
    assert code == 2
