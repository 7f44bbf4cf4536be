import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from circfrechet.cli import main
from circfrechet.circle import PI, SortedSample
from circfrechet.distributions import CASES, population_means, sim_family
from circfrechet.frechet import intrinsic_sample_mean


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def fields(text, key):
    return [line.split(": ", 1)[1] for line in text.splitlines() if line.startswith(key + ":")]


def write_angles(tmp_path, values, name="x.txt"):
    path = tmp_path / name
    path.write_text("".join(f"{float(v)!r}\n" for v in values))
    return str(path)


def test_mean_single_point(tmp_path):
    code, out = run_cli("mean", "--input", write_angles(tmp_path, [0.0]))
    assert code == 0
    assert fields(out, "intrinsic_mean") == ["0"]
    assert float(fields(out, "sample_variance")[0]) == 0.0


def test_mean_three_points(tmp_path):
    code, out = run_cli("mean", "--input", write_angles(tmp_path, [-PI / 2, 0.0, PI / 2]))
    assert code == 0
    assert float(fields(out, "intrinsic_mean")[0]) == 0.0
    assert float(fields(out, "sample_variance")[0]) == pytest.approx(PI ** 2 / 6, rel=1e-14)
    assert len(fields(out, "local_minimum")) == 3


def test_mean_matches_library_exactly(tmp_path):
    rng = np.random.default_rng(10)
    x = np.angle(np.exp(1j * rng.normal(1.0, 0.8, 10)))
    code, out = run_cli("mean", "--input", write_angles(tmp_path, x))
    res = intrinsic_sample_mean(SortedSample.from_angles(x))
    assert [float(v) for v in fields(out, "intrinsic_mean")] == res.global_means
    assert float(fields(out, "sample_variance")[0]) == res.global_value
    assert float(fields(out, "euclidean_average")[0]) == SortedSample.from_angles(x).mean


def test_mean_degrees(tmp_path):
    code, out = run_cli("mean", "--degrees", "--input", write_angles(tmp_path, [-90, 0, 90]))
    assert code == 0
    assert float(fields(out, "sample_variance")[0]) == pytest.approx(PI ** 2 / 6, rel=1e-14)


def test_mean_candidates_csv(tmp_path):
    csv_path = tmp_path / "c.csv"
    code, _ = run_cli("mean", "--input", write_angles(tmp_path, [-1.0, 0.5, 2.0, 2.5]),
                      "--candidates", str(csv_path))
    lines = csv_path.read_text().splitlines()
    assert code == 0
    assert lines[0] == "index,location,value,is_local_min"
    assert len(lines) == 5


def test_mean_verify(tmp_path):
    code, out = run_cli("mean", "--input", write_angles(tmp_path, [0.1, 0.2, 3.0]),
                        "--verify", "--grid", "20000")
    assert code == 0
    assert fields(out, "oracle_agrees") == ["true"]


@pytest.mark.parametrize("content,message", [
    ("", "no angles"),
    ("0.1\nabc\n", ":2:"),
    ("0.1\n7.0\n", "outside"),
    ("nan\n", "non-finite"),
])
def test_mean_input_errors(tmp_path, capsys, content, message):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    code, _ = run_cli("mean", "--input", str(path))
    assert code == 2
    assert message in capsys.readouterr().err


def test_mean_missing_file(tmp_path, capsys):
    code, _ = run_cli("mean", "--input", str(tmp_path / "nope.txt"))
    assert code == 2


def test_unknown_flag_is_an_error():
    with pytest.raises(SystemExit) as err:
        main(["mean", "--input", "x", "--frobnicate"])
    assert err.value.code == 2


def test_requires_exactly_one_subcommand():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
    with pytest.raises(SystemExit):
        main(["mean", "population"])


def test_population_example_two_means(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"family": "example", "alpha": 1.2, "delta": 0.4}))
    code, out = run_cli("population", "--input", str(path))
    assert code == 0
    means = [float(v) for v in fields(out, "global_mean")]
    assert means == pytest.approx([-0.48 * PI, 0.48 * PI], abs=1e-9)


def test_population_case_1a():
    code, out = run_cli("population", "--case", "1a")
    assert code == 0
    assert [float(v) for v in fields(out, "global_mean")] == [0.0]
    assert "antipode=subuniform" in fields(out, "local_minimum")[0]


def test_population_flat_case():
    code, out = run_cli("population", "--case", "0b")
    lo, hi = map(float, fields(out, "flat_interval")[0].split())
    assert (lo, hi) == pytest.approx((-0.4 * PI, 0.4 * PI), abs=1e-12)


def test_population_matches_library():
    code, out = run_cli("population", "--case", "3")
    res = population_means(sim_family(CASES["3"]))
    assert float(fields(out, "global_value")[0]) == res.global_value
    assert "k=3 k_tilde=3" in fields(out, "local_minimum")[0]


def test_population_invalid_file(tmp_path, capsys):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"atoms": [[0.0, 0.5]]}))
    code, _ = run_cli("population", "--input", str(path))
    assert code == 2
    assert "mass" in capsys.readouterr().err


def test_predict_case_0a():
    code, out = run_cli("predict", "--case", "0a", "--n", "100", "--n", "10000")
    assert code == 0
    assert fields(out, "rate") == ["-0.5"]
    sigma = math.sqrt(float(fields(out, "sigma_sq")[0]))
    assert float(fields(out, "scale")[0]) == pytest.approx(10 * sigma, rel=1e-12)
    assert len(fields(out, "predicted_mad")) == 2


def test_predict_case_2():
    code, out = run_cli("predict", "--case", "2")
    assert float(fields(out, "rate")[0]) == pytest.approx(-1 / 6)


def test_predict_flat_refusal():
    code, out = run_cli("predict", "--case", "0b")
    assert code == 3
    assert "refused" in out and "interval" in out


def test_predict_unsupported_refusal(tmp_path):
    # unequal one-sided levels at the antipode, balanced so the mean is 0
    u = [(-PI, -PI + 0.5, [0.1]), (PI - 0.5, PI, [0.05])]
    moment = 0.05 * (-PI + 0.25) + 0.025 * (PI - 0.25)
    obj = {"atoms": [[1.0, -moment], [0.0, 1 - 0.075 + moment]],
           "segments": [[a, b, c] for a, b, c in u]}
    path = tmp_path / "d.json"
    path.write_text(json.dumps(obj))
    code, out = run_cli("predict", "--input", str(path))
    assert code == 3
    assert "unsupported" in out


def test_predict_needs_distribution(capsys):
    code, _ = run_cli("predict")
    assert code == 2


def _simulate(tmp_path, name, *extra):
    out_dir = tmp_path / name
    code, out = run_cli("simulate", "--output", str(out_dir), "--reps", "30",
                        "--n", "20", "--n", "40", "--n", "80", *extra)
    return code, out, out_dir


def test_simulate_all_cases(tmp_path):
    code, out, out_dir = _simulate(tmp_path, "all")
    assert code == 0
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == sorted(f"case_{c}_mad_curve.csv" for c in CASES)
    assert "case 1b: estimated slope" in out and "predicted slope -0.25" in out


def test_simulate_is_deterministic(tmp_path):
    _, _, a = _simulate(tmp_path, "a", "--case", "2", "--outputs", "mad_curve,histogram,qq")
    _, _, b = _simulate(tmp_path, "b", "--case", "2", "--outputs", "mad_curve,histogram,qq",
                        "--workers", "2")
    for p in a.iterdir():
        assert p.read_bytes() == (b / p.name).read_bytes()


def test_simulate_seed_changes_output(tmp_path):
    _, _, a = _simulate(tmp_path, "a", "--case", "1b", "--seed", "1")
    _, _, b = _simulate(tmp_path, "b", "--case", "1b", "--seed", "2")
    name = "case_1b_mad_curve.csv"
    assert (a / name).read_bytes() != (b / name).read_bytes()


def test_simulate_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cases": ["0a", "0b"], "n_grid": [20, 40, 80],
                               "replications": 30, "seed": 3,
                               "outputs": ["mad_curve", "histogram", "qq"]}))
    out_dir = tmp_path / "out"
    code, out = run_cli("simulate", "--input", str(cfg), "--output", str(out_dir))
    assert code == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert "case_0b_qq.csv" not in names and "case_0a_qq.csv" in names
    assert "qq skipped" in out


@pytest.mark.parametrize("cfg,message", [
    ({"cases": ["9"]}, "unknown case"),
    ({"replications": 5}, "replications"),
    ({"n_grid": [100, 50]}, "increasing"),
    ({"colour": "red"}, "unknown config key"),
])
def test_simulate_config_errors(tmp_path, capsys, cfg, message):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, _ = run_cli("simulate", "--input", str(path), "--output", str(tmp_path / "o"))
    assert code == 2
    assert message in capsys.readouterr().err


def test_simulate_cleans_up_partial_output(tmp_path, monkeypatch):
    from circfrechet import experiments

    calls = {"n": 0}
    real = experiments.run

    def flaky(cfg):
        calls["n"] += 1
        if calls["n"] == 2:
            raise RuntimeError("boom")
        return real(cfg)

    monkeypatch.setattr(experiments, "run", flaky)
    out_dir = tmp_path / "o"
    with pytest.raises(RuntimeError):
        run_cli("simulate", "--output", str(out_dir), "--reps", "30", "--n", "20",
                "--n", "40", "--n", "80")
    assert list(out_dir.iterdir()) == []


def test_console_entry_point(tmp_path):
    path = write_angles(tmp_path, [0.25])
    res = subprocess.run([sys.executable, "-m", "circfrechet", "mean", "--input", path],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "intrinsic_mean: 0.25" in res.stdout
    res = subprocess.run([sys.executable, "-m", "circfrechet", "predict", "--case", "0b"],
                         capture_output=True, text=True)
    assert res.returncode == 3
