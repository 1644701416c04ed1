import json

import numpy as np
import pytest

from poldeg.cli import main


def write_doc(path, dim, re, im=None):
    doc = {"dim": dim, "re": re}
    if im is not None:
        doc["im"] = im
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def diag2(tmp_path):
    return write_doc(tmp_path / "m2.json", 2, [[0.75, 0.0], [0.0, 0.25]])


@pytest.fixture
def diag3(tmp_path):
    return write_doc(tmp_path / "m3.json", 3, [[0.5, 0, 0], [0, 0.3, 0], [0, 0, 0.2]])


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


class TestDegree:
    def test_diagonal_report(self, capsys, diag2):
        code, report = run(capsys, ["degree", "--input", diag2])
        assert code == 0
        assert report["degrees"]["p_hs"] == pytest.approx(0.5)
        assert report["eigenvalues"] == pytest.approx([0.75, 0.25])
        assert report["method"] == "analytic"

    def test_measure_selection(self, capsys, diag3):
        code, report = run(capsys, ["degree", "--input", diag3, "--measure", "hs,sheppard"])
        assert code == 0
        assert set(report["degrees"]) == {"p_hs", "p_pp", "p_u", "p_pu"}

    def test_unknown_measure_is_usage_error(self, capsys, diag3):
        assert main(["degree", "--input", diag3, "--measure", "bogus"]) == 1

    def test_invalid_matrix_exit_1(self, capsys, tmp_path):
        path = write_doc(tmp_path / "bad.json", 3,
                         [[1.0, 0, 0], [0, -0.5, 0], [0, 0, 0.5]])
        code = main(["degree", "--input", path])
        assert code == 1
        assert "NotPositiveSemidefinite" in capsys.readouterr().err

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["degree", "--input", str(tmp_path / "nope.json")]) == 2

    def test_malformed_json_exit_2(self, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("{not json")
        assert main(["degree", "--input", str(path)]) == 2

    def test_wrong_shape_exit_2(self, tmp_path):
        path = write_doc(tmp_path / "shape.json", 3, [[1.0, 0.0], [0.0, 1.0]])
        assert main(["degree", "--input", str(path)]) == 2

    def test_deterministic_output(self, capsys, diag3):
        main(["degree", "--input", diag3])
        first = capsys.readouterr().out
        main(["degree", "--input", diag3])
        second = capsys.readouterr().out
        assert first == second

    def test_dim_flag_validates(self, capsys, diag3):
        assert main(["degree", "--input", diag3, "--dim", "3"]) == 0
        capsys.readouterr()
        assert main(["degree", "--input", diag3, "--dim", "2"]) == 1
        assert "--dim" in capsys.readouterr().err


class TestStokes:
    def test_pole(self, capsys, tmp_path):
        path = write_doc(tmp_path / "p.json", 2, [[1.0, 0.0], [0.0, 0.0]])
        code, report = run(capsys, ["stokes", "--input", path])
        assert code == 0
        assert report["stokes"] == pytest.approx([0.0, 0.0, 1.0])

    def test_apex(self, capsys, tmp_path):
        path = write_doc(tmp_path / "a.json", 3, [[0, 0, 0], [0, 0, 0], [0, 0, 1.0]])
        code, report = run(capsys, ["stokes", "--input", path])
        assert code == 0
        assert report["stokes"][7] == pytest.approx(-1.0)
        assert np.linalg.norm(report["stokes"]) == pytest.approx(1.0)

    def test_unpolarized(self, capsys, tmp_path):
        path = write_doc(tmp_path / "u.json", 3, np.eye(3).tolist())
        code, report = run(capsys, ["stokes", "--input", path])
        assert code == 0
        assert report["norm"] == pytest.approx(0.0, abs=1e-12)


class TestOracle:
    def test_benchmark_gap(self, capsys, diag3):
        code, report = run(capsys, [
            "oracle", "--input", diag3,
            "--samples", "100000", "--seed", "7", "--sweeps", "50",
        ])
        assert code == 0
        assert abs(report["gap_to_analytic"]) <= 1e-4
        assert report["analytic"]["min_overlap"] == pytest.approx(0.29, abs=1e-9)

    def test_invariant_state_zero_gap(self, capsys, tmp_path):
        path = write_doc(tmp_path / "i.json", 3, (np.eye(3) / 3).tolist())
        code, report = run(capsys, [
            "oracle", "--input", path, "--samples", "50", "--seed", "1", "--sweeps", "1",
        ])
        assert code == 0
        assert abs(report["gap_to_analytic"]) <= 1e-12

    def test_zero_samples_usage_error(self, diag3):
        assert main(["oracle", "--input", diag3, "--samples", "0"]) == 1


class TestSimulate:
    def test_rank_one(self, capsys, tmp_path):
        path = write_doc(tmp_path / "r.json", 2, [[1.0, 0.0], [0.0, 0.0]])
        code, report = run(capsys, ["simulate", "--input", path, "--shots", "10", "--seed", "1"])
        assert code == 0
        assert report["estimated"]["degrees"]["p_hs"] == pytest.approx(1.0)

    def test_unpolarized_low_degree(self, capsys, tmp_path):
        path = write_doc(tmp_path / "u.json", 2, (np.eye(2) / 2).tolist())
        code, report = run(capsys, [
            "simulate", "--input", path, "--shots", "100000", "--seed", "2",
        ])
        assert code == 0
        assert report["estimated"]["degrees"]["p_hs"] <= 0.03

    def test_too_few_shots_usage_error(self, tmp_path):
        path = write_doc(tmp_path / "m.json", 3, (np.eye(3) / 3).tolist())
        assert main(["simulate", "--input", path, "--shots", "1"]) == 1


class TestScan:
    def test_small_grid_row_count(self, tmp_path):
        out = tmp_path / "grid.csv"
        assert main(["scan", "--resolution", "3", "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n3,n8,inside,min_overlap,p_hs,p_pp,p_u,p_pu,p_length,p_purity"
        assert len(lines) == 1 + 9

    def test_center_row_values(self, tmp_path):
        out = tmp_path / "grid7.csv"
        assert main(["scan", "--resolution", "7", "--output", str(out)]) == 0
        for line in out.read_text().splitlines()[1:]:
            cells = line.split(",")
            if abs(float(cells[0])) < 1e-12 and abs(float(cells[1])) < 1e-12:
                assert cells[2] == "1"
                row = dict(zip(
                    ("min_overlap", "p_hs", "p_pp", "p_u", "p_pu"), map(float, cells[3:8])))
                assert row["p_hs"] == pytest.approx(0.0, abs=1e-12)
                assert row["p_u"] == pytest.approx(1.0, abs=1e-12)
                break
        else:
            pytest.fail("grid did not contain the center point")

    def test_vertex_row_values(self, tmp_path):
        out = tmp_path / "grid9.csv"
        assert main(["scan", "--resolution", "9", "--output", str(out)]) == 0
        vertex = np.sqrt(3) / 2
        for line in out.read_text().splitlines()[1:]:
            cells = line.split(",")
            if abs(float(cells[0]) - vertex) < 1e-9 and abs(float(cells[1]) - 0.5) < 1e-12:
                assert cells[2] == "1"
                assert float(cells[4]) == pytest.approx(1.0, abs=1e-10)  # p_hs
                break
        else:
            pytest.fail("grid did not contain the pure-state vertex")

    def test_byte_identical_reruns(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        main(["scan", "--resolution", "5", "--output", str(out1)])
        main(["scan", "--resolution", "5", "--output", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_unwritable_output_exit_2(self, tmp_path):
        assert main(["scan", "--resolution", "3",
                     "--output", str(tmp_path / "no" / "dir" / "x.csv")]) == 2

    def test_small_resolution_usage_error(self, tmp_path):
        assert main(["scan", "--resolution", "1", "--output", str(tmp_path / "x.csv")]) == 1

    def test_twelve_significant_digits(self, tmp_path):
        out = tmp_path / "digits.csv"
        main(["scan", "--resolution", "5", "--output", str(out)])
        first = out.read_text().splitlines()[1].split(",")[0]
        assert first == "-1.15470053838"  # -2/sqrt(3) at 12 significant digits
