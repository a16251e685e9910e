import csv
import json
import math

import numpy as np
import pytest

from stategeom.cli import (
    EXIT_FLAT,
    EXIT_OK,
    EXIT_ORTHOGONAL,
    EXIT_PARSE,
    EXIT_STATIONARY,
    load_problem_spec,
    main,
    serialize_problem_spec,
)

SQRT3 = math.sqrt(3.0)

THREE_LEVEL_SPEC = {
    "hamiltonian": [
        [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [0.0, 0.0], [3.0, 0.0]],
    ],
    "state": [[1.0 / SQRT3, 0.0], [1.0 / SQRT3, 0.0], [1.0 / SQRT3, 0.0]],
}


def write_spec(tmp_path, payload, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


class TestReport:
    def test_three_level_report(self, tmp_path, capsys):
        spec = write_spec(tmp_path, THREE_LEVEL_SPEC)
        assert main(["report", spec]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["kappa_bar"] == pytest.approx(0.5, rel=1e-10)
        assert payload["tau_bar"] == pytest.approx(243.0 / 686.0, rel=1e-10)
        assert payload["speed"] == pytest.approx(2.0 * math.sqrt(14.0) / 3.0, rel=1e-10)
        assert payload["radius"] == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-10)
        assert payload["moments"]["var"] == pytest.approx(14.0 / 9.0, rel=1e-10)

    def test_eigenstate_nulls(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": THREE_LEVEL_SPEC["hamiltonian"],
            "state": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
        })
        assert main(["report", spec]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["speed"] == pytest.approx(0.0, abs=1e-9)
        assert payload["kappa"] == pytest.approx(0.0, abs=1e-12)
        assert payload["kappa_bar"] is None
        assert payload["tau"] is None
        assert payload["radius"] is None

    def test_eigenstate_with_dimensionless_gate(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": THREE_LEVEL_SPEC["hamiltonian"],
            "state": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
        })
        assert main(["report", spec, "--require-dimensionless"]) == EXIT_STATIONARY
        assert "stationary" in capsys.readouterr().err

    def test_two_level_balanced_superposition(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": {"omega": 1.0, "n": [0.0, 0.0, 1.0], "epsilon": 5.0},
            "state": [[1.0 / math.sqrt(2.0), 0.0], [1.0 / math.sqrt(2.0), 0.0]],
        })
        assert main(["report", spec]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["kappa_bar"] == pytest.approx(0.0, abs=1e-10)
        assert payload["tau_bar"] == pytest.approx(0.0, abs=1e-10)
        assert payload["moments"]["mean"] == pytest.approx(5.0)

    def test_determinism(self, tmp_path, capsys):
        spec = write_spec(tmp_path, THREE_LEVEL_SPEC)
        main(["report", spec])
        first = capsys.readouterr().out
        main(["report", spec])
        assert capsys.readouterr().out == first


class TestParseErrors:
    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["report", str(path)]) == EXIT_PARSE
        assert "invalid JSON" in capsys.readouterr().err

    def test_state_norm_out_of_tolerance(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": THREE_LEVEL_SPEC["hamiltonian"],
            "state": [[0.9, 0.0], [0.0, 0.0], [0.0, 0.0]],
        })
        assert main(["report", spec]) == EXIT_PARSE
        assert "state" in capsys.readouterr().err

    def test_state_mild_truncation_is_renormalized(self, tmp_path, capsys):
        truncated = round(1.0 / SQRT3, 8)
        spec = write_spec(tmp_path, {
            "hamiltonian": THREE_LEVEL_SPEC["hamiltonian"],
            "state": [[truncated, 0.0]] * 3,
        })
        assert main(["report", spec]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["kappa_bar"] == pytest.approx(0.5, rel=1e-10)

    def test_non_hermitian_matrix(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
            "state": [[1.0, 0.0], [0.0, 0.0]],
        })
        assert main(["report", spec]) == EXIT_PARSE
        assert "hamiltonian" in capsys.readouterr().err

    def test_bad_complex_entry(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], "x"]],
            "state": [[1.0, 0.0], [0.0, 0.0]],
        })
        assert main(["report", spec]) == EXIT_PARSE
        assert "hamiltonian[1][1]" in capsys.readouterr().err

    def test_dimension_mismatch(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": THREE_LEVEL_SPEC["hamiltonian"],
            "state": [[1.0, 0.0], [0.0, 0.0]],
        })
        assert main(["report", spec]) == EXIT_PARSE
        assert "dimension" in capsys.readouterr().err

    def test_bad_two_level_axis(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": {"omega": 1.0, "n": [1.0, 1.0, 0.0]},
            "state": [[1.0, 0.0], [0.0, 0.0]],
        })
        assert main(["report", spec]) == EXIT_PARSE
        assert "unit vector" in capsys.readouterr().err

    def test_unknown_key_rejected(self, tmp_path, capsys):
        payload = dict(THREE_LEVEL_SPEC)
        payload["hamiltonain"] = payload["hamiltonian"]
        spec = write_spec(tmp_path, payload)
        assert main(["report", spec]) == EXIT_PARSE
        assert "hamiltonain" in capsys.readouterr().err


class TestRoundTrip:
    def test_bit_for_bit(self, tmp_path):
        spec = write_spec(tmp_path, {
            "hamiltonian": {"omega": 1.7, "n": [0.6, 0.0, 0.8], "epsilon": 0.3},
            "state": [[0.8, 0.1], [0.1, math.sqrt(1.0 - 0.66)]],
            "constants": {"hbar": 0.7, "gamma": 3.0},
        })
        parsed = load_problem_spec(spec)
        reloaded = load_problem_spec(
            write_spec(tmp_path, serialize_problem_spec(parsed), "round.json")
        )
        assert np.array_equal(parsed.hamiltonian, reloaded.hamiltonian)
        assert np.array_equal(parsed.state, reloaded.state)
        assert parsed.constants == reloaded.constants


class TestGeodesic:
    def test_point_at_zero_is_initial_state(self, tmp_path, capsys):
        spec = write_spec(tmp_path, THREE_LEVEL_SPEC)
        psi1 = write_spec(tmp_path, [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]], "psi1.json")
        assert main(["geodesic", spec, psi1, "--xi", "0"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        point = np.array([complex(re, im) for re, im in payload["point"]])
        assert np.allclose(point, np.ones(3) / SQRT3, atol=1e-12)
        assert payload["length"] == pytest.approx(payload["wootters"], abs=1e-12)

    def test_half_overlap_length(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            "state": [[1.0, 0.0], [0.0, 0.0]],
        })
        psi1 = write_spec(
            tmp_path, {"state": [[0.5, 0.0], [math.sqrt(3.0) / 2.0, 0.0]]}, "psi1.json"
        )
        assert main(["geodesic", spec, psi1, "--theta", "1.0"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["length"] == pytest.approx(2.0 * math.pi / 3.0, rel=1e-12)

    def test_orthogonal_endpoints(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            "state": [[1.0, 0.0], [0.0, 0.0]],
        })
        psi1 = write_spec(tmp_path, [[0.0, 0.0], [1.0, 0.0]], "psi1.json")
        assert main(["geodesic", spec, psi1, "--xi", "0.5"]) == EXIT_ORTHOGONAL
        assert "orthogonal" in capsys.readouterr().err


class TestScan:
    def test_curvature_scan(self, tmp_path, capsys):
        spec = write_spec(tmp_path, THREE_LEVEL_SPEC)
        out = tmp_path / "curve.csv"
        code = main([
            "scan", spec, "--mode", "curvature", "--dt-start", "0.01",
            "--points", "8", "--ratio", "0.5", "--out", str(out),
        ])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert 3.9 <= payload["exponent"] <= 4.1
        assert payload["predicted_prefactor"] == pytest.approx(98.0 / 81.0, rel=1e-10)
        assert payload["relative_error"] <= 0.02

        with open(out, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["dt", "value"]
        assert len(rows) == 9
        assert float(rows[1][0]) == 0.01

    def test_csv_precision_round_trips(self, tmp_path, capsys):
        from stategeom.oracles import curvature_deviation_curve

        spec = write_spec(tmp_path, THREE_LEVEL_SPEC)
        out = tmp_path / "curve.csv"
        main(["scan", spec, "--mode", "curvature", "--dt-start", "0.01",
              "--points", "6", "--ratio", "0.5", "--out", str(out)])
        capsys.readouterr()
        parsed = load_problem_spec(spec)
        dts = [0.01 * 0.5**i for i in range(6)]
        expected = curvature_deviation_curve(parsed.hamiltonian, parsed.state, dts)
        with open(out, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))[1:]
        for (dt, value), row in zip(expected, rows):
            assert float(row[0]) == dt
            assert float(row[1]) == value

    def test_torsion_scan_two_level_is_flat(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": {"omega": 1.0, "n": [0.0, 0.0, 1.0]},
            "state": [[0.6, 0.0], [0.8, 0.0]],
        })
        out = tmp_path / "flat.csv"
        code = main(["scan", spec, "--mode", "torsion", "--dt-start", "0.01",
                     "--points", "8", "--ratio", "0.5", "--out", str(out)])
        assert code == EXIT_FLAT
        assert "flat" in capsys.readouterr().err
        assert out.exists()

    def test_curvature_scan_geodesic_state_is_flat(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {
            "hamiltonian": THREE_LEVEL_SPEC["hamiltonian"],
            "state": [[1.0 / math.sqrt(2.0), 0.0], [0.0, 0.0], [1.0 / math.sqrt(2.0), 0.0]],
        })
        out = tmp_path / "flat.csv"
        code = main(["scan", spec, "--mode", "curvature", "--dt-start", "0.01",
                     "--points", "8", "--ratio", "0.5", "--out", str(out)])
        assert code == EXIT_FLAT

    def test_torsion_scan_ratio_two(self, tmp_path, capsys):
        spec = write_spec(tmp_path, THREE_LEVEL_SPEC)
        out = tmp_path / "torsion.csv"
        code = main(["scan", spec, "--mode", "torsion", "--dt-start", "0.01",
                     "--points", "8", "--ratio", "0.5", "--dt-prime-ratio", "2",
                     "--out", str(out)])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert 3.9 <= payload["exponent"] <= 4.1
        assert payload["predicted_prefactor"] == pytest.approx(
            (6.0 / 7.0) * 4.0 * 9.0 / 4.0, rel=1e-10
        )
        assert payload["relative_error"] <= 0.02

    def test_bad_window_parameters(self, tmp_path, capsys):
        spec = write_spec(tmp_path, THREE_LEVEL_SPEC)
        out = tmp_path / "x.csv"
        assert main(["scan", spec, "--mode", "curvature", "--dt-start", "0.01",
                     "--points", "4", "--ratio", "0.5", "--out", str(out)]) == EXIT_PARSE
        assert main(["scan", spec, "--mode", "curvature", "--dt-start", "0.01",
                     "--points", "8", "--ratio", "1.5", "--out", str(out)]) == EXIT_PARSE


class TestVerify:
    def test_quick_run_passes_and_is_deterministic(self, capsys):
        assert main(["verify", "--level", "quick", "--seed", "7"]) == EXIT_OK
        first = capsys.readouterr().out
        assert "PASS" in first
        assert "FAIL" not in first
        assert main(["verify", "--level", "quick", "--seed", "7"]) == EXIT_OK
        assert capsys.readouterr().out == first
