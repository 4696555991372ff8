"""End-to-end checks of the command line front end.

Each test drives ``varwit.cli.main`` directly with an argv list, reads
stdout through capsys, and inspects the files a command leaves behind.
"""

import csv
import json
import os

import numpy as np
import pytest

from varwit import (
    TestStateParams,
    __version__,
    make_singlet,
    make_test_state,
    spin1_moment_pairs,
    variance,
)
from varwit.cli import (
    EXIT_IO,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    main,
    replay_manifest,
)


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    return rows[0], rows[1:]


def test_unknown_subcommand_is_usage_error():
    assert main(["frobnicate"]) == EXIT_USAGE


def test_missing_required_flag_is_usage_error():
    assert main(["bound", "--mu", "0.5"]) == EXIT_USAGE


def test_witness_sources_are_mutually_exclusive():
    assert main(["witness", "--state", "singlet", "--tuple", "0.1,0.1"]) == EXIT_USAGE
    assert main(["witness"]) == EXIT_USAGE


def test_malformed_tuple_is_usage_error():
    assert main(["witness", "--tuple", "nope"]) == EXIT_USAGE
    assert main(["witness", "--tuple", "1,2,3"]) == EXIT_USAGE


def test_bad_env_seed_is_usage_error(monkeypatch):
    monkeypatch.setenv("VARWIT_SEED", "three")
    assert main(["simulate", "--shots", "100", "--trials", "4"]) == EXIT_USAGE


def test_bound_noiseless_both_methods(capsys):
    code, payload = run_cli(
        ["bound", "--lambda", "0.5", "--mu", "0.5", "--method", "both"], capsys
    )
    assert code == EXIT_OK
    assert abs(payload["c_sep"] - 7.0 / 16.0) < 1e-6
    assert abs(payload["results"]["seesaw"]["c_sep"] - 7.0 / 16.0) < 1e-6
    assert abs(payload["results"]["grid"]["c_sep"] - 7.0 / 16.0) < 1e-4
    assert payload["lambda"] == 0.5 and payload["mu"] == 0.5
    assert payload["alpha"] == 0.0 and payload["alpha_b"] == 0.0


def test_bound_mixed_party_noise(capsys):
    code, payload = run_cli(
        [
            "bound",
            "--lambda", "0.5",
            "--mu", "0.5",
            "--alpha", "0.0",
            "--alpha-b", "0.2",
            "--method", "seesaw",
        ],
        capsys,
    )
    assert code == EXIT_OK
    local_a = payload["results"]["seesaw"]["local_a"]["value"]
    local_b = payload["results"]["seesaw"]["local_b"]["value"]
    assert abs(local_a - 7.0 / 32.0) < 1e-6
    assert local_b > local_a
    assert abs(payload["c_sep"] - (local_a + local_b)) < 1e-12
    assert abs(payload["c_sep"] - (0.4375 + 0.7614) / 2.0) < 2e-3


def test_region_writes_csv_svg_and_manifests(tmp_path, capsys):
    out = str(tmp_path)
    code = main(
        ["region", "--lambdas", "0.2,0.5,0.8", "--output-dir", out, "--svg", "--seed", "5"]
    )
    capsys.readouterr()
    assert code == EXIT_OK
    header, rows = read_csv(os.path.join(out, "region.csv"))
    assert header == ["lambda", "c", "delta2x", "delta2y"]
    assert len(rows) == 3
    mid = rows[1]
    assert float(mid[0]) == 0.5
    assert abs(float(mid[1]) - 7.0 / 32.0) < 1e-6
    assert (
        abs(0.5 * float(mid[2]) + 0.5 * float(mid[3]) - float(mid[1])) < 1e-8
    )
    assert os.path.exists(os.path.join(out, "region.svg"))
    for name in ("region.csv", "region.svg"):
        manifest_path = os.path.join(out, name + ".manifest.json")
        with open(manifest_path, encoding="utf-8") as fh:
            manifest = json.load(fh)
        assert manifest["command"] == "region"
        assert manifest["seed"] == 5
        assert manifest["tool_version"] == __version__
        assert manifest["artifact_paths"] == [
            os.path.join(out, "region.csv"),
            os.path.join(out, "region.svg"),
        ]
        assert manifest["parameters"]["argv"][0] == "region"


def test_region_uncertified_point_warns(tmp_path, capsys):
    # a single start from this seed stalls near a shallow stationary
    # value well above the mesh oracle's answer
    out = str(tmp_path)
    code = main(
        ["region", "--lambdas", "0.2", "--starts", "1", "--seed", "2", "--output-dir", out]
    )
    captured = capsys.readouterr()
    assert code == EXIT_NUMERICAL
    assert "did not certify" in captured.err
    assert os.path.exists(os.path.join(out, "region.csv"))


def test_region_replay_reproduces_bytes(tmp_path, capsys):
    out = str(tmp_path)
    assert main(["region", "--lambdas", "3", "--output-dir", out, "--seed", "11"]) == EXIT_OK
    capsys.readouterr()
    csv_path = os.path.join(out, "region.csv")
    with open(csv_path, "rb") as fh:
        original = fh.read()
    os.remove(csv_path)
    code = replay_manifest(csv_path + ".manifest.json")
    capsys.readouterr()
    assert code == EXIT_OK
    with open(csv_path, "rb") as fh:
        replayed = fh.read()
    assert replayed == original


def test_witness_singlet_adapted(capsys):
    code, payload = run_cli(["witness", "--state", "singlet", "--alpha", "0.2"], capsys)
    assert code == EXIT_OK
    assert payload["adapted"] is True
    assert payload["detected"] is True
    assert abs(payload["v_value"] - 0.48) < 1e-9
    assert abs(payload["c_sep"] - 0.7614) < 2e-3
    assert payload["margin"] > 0.25
    assert abs(payload["lambda"] - 0.5) < 1e-15 and abs(payload["mu"] - 0.5) < 1e-15


def test_witness_non_adapted_misses_noisy_singlet(capsys):
    code, payload = run_cli(
        ["witness", "--state", "singlet", "--alpha", "0.2", "--non-adapted"], capsys
    )
    assert code == EXIT_OK
    assert payload["adapted"] is False
    assert payload["detected"] is False
    assert abs(payload["v_value"] - 0.48) < 1e-9
    assert abs(payload["c_sep"] - 7.0 / 16.0) < 1e-6
    assert payload["margin"] < 0.0


def test_witness_accepts_state_file(tmp_path, capsys):
    path = str(tmp_path / "singlet.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(make_singlet().to_dict(), fh)
    code, from_file = run_cli(["witness", "--state", path, "--alpha", "0.2"], capsys)
    assert code == EXIT_OK
    code, by_name = run_cli(["witness", "--state", "singlet", "--alpha", "0.2"], capsys)
    assert code == EXIT_OK
    assert from_file == by_name


def test_witness_rejects_unrecognized_state_file(tmp_path, capsys):
    path = str(tmp_path / "state.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"vector": [1, 0, 0]}, fh)
    assert main(["witness", "--state", path]) == EXIT_USAGE
    capsys.readouterr()


def test_witness_sweep_csv_and_replay_flags(tmp_path, capsys):
    out = str(tmp_path)
    code, payload = run_cli(
        [
            "witness",
            "--tuple", "0.48,0.48",
            "--alpha", "0.2",
            "--lambda-grid", "41",
            "--output-dir", out,
        ],
        capsys,
    )
    assert code == EXIT_OK
    assert payload["d2x"] == 0.48 and payload["d2y"] == 0.48
    csv_path = os.path.join(out, "witness_sweep.csv")
    header, rows = read_csv(csv_path)
    assert header == ["lambda", "V", "c", "detected"]
    assert len(rows) == 41
    for row in rows:
        assert abs(float(row[1]) - 0.48) < 1e-12
        assert row[3] in ("true", "false")
        assert (float(row[1]) < float(row[2])) == (row[3] == "true")
    with open(csv_path + ".manifest.json", encoding="utf-8") as fh:
        argv = json.load(fh)["parameters"]["argv"]
    assert "--tuple" in argv and "--lambda" in argv and "--adapted" in argv
    with open(csv_path, "rb") as fh:
        original = fh.read()
    os.remove(csv_path)
    assert replay_manifest(csv_path + ".manifest.json") == EXIT_OK
    capsys.readouterr()
    with open(csv_path, "rb") as fh:
        assert fh.read() == original


def test_simulate_is_seed_deterministic(capsys, monkeypatch):
    argv = ["simulate", "--alpha", "0.2", "--shots", "1000", "--trials", "4"]
    code, first = run_cli(argv + ["--seed", "3"], capsys)
    assert code == EXIT_OK
    code, second = run_cli(argv + ["--seed", "3"], capsys)
    assert code == EXIT_OK
    assert first == second
    monkeypatch.setenv("VARWIT_SEED", "3")
    code, from_env = run_cli(argv, capsys)
    assert code == EXIT_OK
    assert from_env == first
    assert from_env["seed"] == 3
    assert len(from_env["per_trial"]) == 4
    assert abs(from_env["v_half_half"] - 0.5 * (from_env["d2x"] + from_env["d2y"])) < 1e-15


def test_fit_noise_round_trip(tmp_path, capsys):
    x_pair, y_pair = spin1_moment_pairs(0.2)
    path = str(tmp_path / "calibration.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta1_deg", "theta2_deg", "V_measured"])
        for k in range(1, 20):
            theta1 = k * 180.0 / 20.0
            psi = make_test_state(TestStateParams(theta1=theta1, theta2=23.3))
            v = 0.5 * variance(psi, x_pair) + 0.5 * variance(psi, y_pair)
            writer.writerow([theta1, 23.3, repr(v)])
    code, payload = run_cli(["fit-noise", "--input", path], capsys)
    assert code == EXIT_OK
    assert abs(payload["alpha"] - 0.2) < 1e-4
    assert payload["residual"] < 1e-10
    assert len(payload["per_state_residuals"]) == 19


def test_fit_noise_accepts_calibrate_output(tmp_path, capsys):
    out = str(tmp_path)
    code = main(
        [
            "calibrate",
            "--sweep", "theta1",
            "--alpha", "0.2",
            "--steps", "15",
            "--shots", "4000",
            "--trials", "5",
            "--output-dir", out,
            "--seed", "9",
        ]
    )
    capsys.readouterr()
    assert code == EXIT_OK
    code, payload = run_cli(
        ["fit-noise", "--input", os.path.join(out, "calibration.csv")], capsys
    )
    assert code == EXIT_OK
    assert abs(payload["alpha"] - 0.2) < 0.05


def test_fit_noise_missing_file_is_io_error(capsys):
    assert main(["fit-noise", "--input", "/no/such/file.csv"]) == EXIT_IO
    capsys.readouterr()


def test_fit_noise_wrong_columns_is_io_error(tmp_path, capsys):
    path = str(tmp_path / "bad.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["angle", "value"])
        writer.writerow([10.0, 0.3])
    assert main(["fit-noise", "--input", path]) == EXIT_IO
    capsys.readouterr()


def test_calibrate_with_sweep_file(tmp_path, capsys):
    sweep_path = str(tmp_path / "sweep.csv")
    with open(sweep_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta1_deg", "theta2_deg"])
        for theta1 in (30.0, 90.0, 150.0):
            writer.writerow([theta1, 45.0])
    out = str(tmp_path / "out")
    code = main(
        [
            "calibrate",
            "--sweep", sweep_path,
            "--alpha", "0.2",
            "--shots", "500",
            "--trials", "3",
            "--output-dir", out,
            "--seed", "1",
        ]
    )
    capsys.readouterr()
    assert code == EXIT_OK
    header, rows = read_csv(os.path.join(out, "calibration.csv"))
    assert header == ["theta1", "theta2", "V_ideal", "V_noisy", "V_mean", "V_std"]
    assert len(rows) == 3
    assert [float(r[0]) for r in rows] == [30.0, 90.0, 150.0]
    for row in rows:
        assert abs(float(row[4]) - float(row[3])) < 0.1
    assert os.path.exists(os.path.join(out, "calibration.csv.manifest.json"))


def test_calibrate_rejects_bad_sweep_columns(tmp_path, capsys):
    sweep_path = str(tmp_path / "sweep.csv")
    with open(sweep_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta1_deg"])
        writer.writerow([30.0])
    assert main(["calibrate", "--sweep", sweep_path]) == EXIT_IO
    capsys.readouterr()


def test_report_tuple_outside_any_window(tmp_path, capsys):
    out = str(tmp_path)
    code, payload = run_cli(
        [
            "report",
            "--tuple", "10,10",
            "--alpha", "0.2",
            "--lambda-grid", "21",
            "--resolution", "0.01",
            "--output-dir", out,
        ],
        capsys,
    )
    assert code == EXIT_OK
    assert payload["detected"] is False
    assert payload["windows"] == {"ideal": [], "adapted": [], "non_adapted": []}
    header, rows = read_csv(os.path.join(out, "report.csv"))
    assert header == [
        "lambda",
        "v_ideal",
        "v_noisy",
        "c_noiseless",
        "c_adapted",
        "detected_ideal",
        "detected_adapted",
        "detected_non_adapted",
    ]
    assert len(rows) == 21
    assert all(row[5] == row[6] == row[7] == "false" for row in rows)
    with open(os.path.join(out, "windows.json"), encoding="utf-8") as fh:
        assert json.load(fh) == payload
    assert os.path.exists(os.path.join(out, "report.csv.manifest.json"))
    assert os.path.exists(os.path.join(out, "windows.json.manifest.json"))


def test_output_dir_collision_is_io_error(tmp_path, capsys):
    clash = tmp_path / "out"
    clash.write_text("occupied")
    code = main(["region", "--lambdas", "1", "--output-dir", str(clash)])
    capsys.readouterr()
    assert code == EXIT_IO
