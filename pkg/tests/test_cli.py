import json

import pytest

from polygonmoduli.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_trees_text(capsys):
    code, out, _ = run(capsys, "trees", "--n", "4", "--format", "text")
    assert code == 0
    assert sorted(out.split()) == ["1-2", "2-3"]


def test_trees_json(capsys):
    code, out, _ = run(capsys, "trees", "--n", "5")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 5
    assert len(data["trees"]) == 5


def test_chambers_equal_fifths(capsys):
    code, out, _ = run(capsys, "chambers", "--alpha", "1/5x5")
    assert code == 0
    data = json.loads(out)
    assert data["total"] == "1"
    assert data["poincare"] == [1, 5, 1]
    assert len(data["steps"]) == 4
    assert all(s["kind"] == "BlowUpPoint" for s in data["steps"])


def test_chambers_on_wall_exit_code(capsys):
    code, out, _ = run(capsys, "chambers", "--alpha", "1/4x4")
    assert code == 2
    data = json.loads(out)
    assert data["on_wall"]
    assert "steps" not in data


def test_chambers_large_weight_skips_path(capsys):
    code, out, _ = run(capsys, "chambers", "--alpha", "2/5x5")
    assert code == 0
    data = json.loads(out)
    assert data["wall_path"].startswith("skipped")


def test_bad_alpha_usage_error(capsys):
    code, _, err = run(capsys, "chambers", "--alpha", "0.2,0.2,0.2")
    assert code == 3
    assert "error" in err


def test_bad_tree_usage_error(capsys, tmp_path):
    code, _, err = run(
        capsys,
        "sample",
        "--alpha",
        "1/5x5",
        "--tree",
        "1-2,2-3",  # crossing diagonals
        "--out",
        str(tmp_path / "s.csv"),
    )
    assert code == 3
    assert "tree" in err


def test_unknown_subcommand_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 3


def test_sample_csv_and_figure(tmp_path, capsys):
    out = tmp_path / "sample.csv"
    code, _, _ = run(
        capsys,
        "sample", "--alpha", "1/5x5", "--count", "5", "--seed", "7",
        "--out", str(out),
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 6
    header = lines[0].split(",")
    assert header[:3] == ["x1_x", "x1_y", "x1_z"]
    assert header[-2:] == ["phi_1-2", "phi_1-3"]
    assert (tmp_path / "sample.png").exists()


def test_sample_no_figure(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(
        capsys,
        "sample", "--alpha", "1/5x4", "--count", "3", "--no-figure",
        "--out", str(out),
    )
    assert code == 0
    assert not (tmp_path / "s.png").exists()


def test_sample_deterministic(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(
            capsys,
            "sample", "--alpha", "1/5x5", "--count", "10", "--seed", "3",
            "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


def test_polytope_report(capsys):
    code, out, _ = run(
        capsys,
        "polytope", "--alpha", "1/4x4", "--vertices", "--volume", "exact",
    )
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "delta"
    assert data["volume"] == "1/2"
    assert data["vertices"] == [["0"], ["1/2"]]


def test_polytope_goldman_and_fusion(capsys):
    code, out, _ = run(
        capsys,
        "polytope", "--alpha", "2/5x4", "--goldman", "--vertices",
        "--count-level", "2", "--labels", "1,1,1,1",
    )
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "goldman"
    assert data["vertices"] == [["0"], ["1/5"]]
    assert data["fusion_count"] == 2


def test_stability_text(capsys):
    code, out, _ = run(
        capsys,
        "stability", "--w", "2/5x5", "--points", "0,0,0,1,2", "--format", "text",
    )
    assert code == 0
    assert out.strip() == "unstable"


def test_stability_json_with_infinity(capsys):
    code, out, _ = run(
        capsys,
        "stability", "--w", "2/5x5", "--points", "inf,inf,0,1,2",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "stable"


def test_verify_passes_and_writes_artifacts(tmp_path, capsys):
    out = tmp_path / "verify.csv"
    code, stdout, _ = run(
        capsys,
        "verify", "--alpha", "1/5x5", "--count", "20", "--seed", "1",
        "--out", str(out),
    )
    assert code == 0
    lines = [l for l in stdout.splitlines() if l.startswith("[")]
    assert len(lines) == 3
    assert all(l.startswith("[PASS]") for l in lines)
    assert out.read_text().startswith("t,defect")
    assert (tmp_path / "verify.png").exists()


def test_verify_skips_identification_for_large_weight(capsys):
    code, stdout, _ = run(
        capsys,
        "verify", "--alpha", "2/5x5", "--count", "10", "--seed", "1",
        "--no-figure",
    )
    assert code == 0
    assert stdout.count("[SKIP]") == 2
    assert "[PASS] flow-commutation" in stdout


def test_verify_deterministic_stdout(tmp_path, capsys):
    outputs = []
    for tag in ("a", "b"):
        out = tmp_path / f"{tag}.csv"
        code, stdout, _ = run(
            capsys,
            "verify", "--alpha", "1/5x5", "--count", "10", "--seed", "5",
            "--out", str(out),
        )
        assert code == 0
        outputs.append(stdout)
    assert outputs[0] == outputs[1]
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


def test_verify_failure_exit_code(capsys):
    # an impossibly tight commutation tolerance must fail with exit code 1
    code, stdout, _ = run(
        capsys,
        "verify", "--alpha", "1/5x5", "--count", "5", "--seed", "1",
        "--tol-commutation", "1e-30", "--no-figure",
    )
    assert code == 1
    assert "[FAIL] flow-commutation" in stdout
    assert "verification failed" in stdout
