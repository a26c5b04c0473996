import json
import math

import numpy as np
import pytest

from timeobs import build_spectrum, hermiticity_defect, random_state
from timeobs import serialize
from timeobs.cli import EXIT_OK, EXIT_PARSE, EXIT_PHYSICS, main


def _write_problem(tmp_path, name="problem.json", n=4, with_state=True, seed=1):
    spec = build_spectrum("harmonic", n, omega=1.0)
    state = random_state(n, seed, in_zero_sum=True) if with_state else None
    path = tmp_path / name
    serialize.dump_problem(path, spec, state)
    return path


class TestHappyPaths:
    def test_tg_writes_matrix_and_diagnostics(self, tmp_path):
        problem = _write_problem(tmp_path)
        out = tmp_path / "out"
        assert main(["tg", "-i", str(problem), "-o", str(out)]) == EXIT_OK
        top = serialize.load_matrix(out / "tg_matrix.json")
        assert hermiticity_defect(top.entries) <= 1e-15
        diag = json.loads((out / "tg_diagnostics.json").read_text())
        assert diag["basis_size"] == 4
        assert diag["max_weak_defect"] <= 1e-12
        assert diag["max_diagonal_entry"] <= 1e-13

    def test_canonical_density_and_covariance(self, tmp_path):
        problem = _write_problem(tmp_path)
        out = tmp_path / "out"
        code = main(
            ["canonical", "-i", str(problem), "-o", str(out), "--grid", "50", "--tau-max", "6.0"]
        )
        assert code == EXIT_OK
        lines = (out / "density.csv").read_text().splitlines()
        assert lines[0] == "t,p"
        assert len(lines) == 51
        record = json.loads((out / "covariance.json").read_text())
        assert record["max_deviation"] <= 1e-11
        assert record["grid_points"] == 50

    def test_cauchy_ladder(self, tmp_path):
        out = tmp_path / "out"
        assert main(["cauchy", "-o", str(out), "--grid", "64"]) == EXIT_OK
        lines = (out / "convergence.csv").read_text().splitlines()
        assert lines[0] == "N,c0,distance"
        rows = [line.split(",") for line in lines[1:]]
        assert [int(r[0]) for r in rows] == [1, 2, 4, 8, 16, 32, 64]
        # distances strictly decrease along the ladder
        dists = [float(r[2]) for r in rows]
        assert all(b < a for a, b in zip(dists, dists[1:]))

    def test_cauchy_respects_target(self, tmp_path):
        out = tmp_path / "out"
        assert main(["cauchy", "-o", str(out), "--grid", "8", "--target", "2"]) == EXIT_OK
        rows = (out / "convergence.csv").read_text().splitlines()[1:]
        assert [int(r.split(",")[0]) for r in rows] == [2, 4, 8]

    def test_zeroset_outputs(self, tmp_path):
        problem = _write_problem(tmp_path, n=5, seed=3)
        out = tmp_path / "out"
        code = main(
            [
                "zeroset",
                "-i",
                str(problem),
                "-o",
                str(out),
                "--grid",
                "1200",
                "--tau-max",
                str(2.0 * math.pi),
                "--eps",
                "0.1",
                "--eps",
                "0.01",
            ]
        )
        assert code == EXIT_OK
        lines = (out / "measure_scaling.csv").read_text().splitlines()
        assert lines[0] == "epsilon,measure,error_bound"
        eps = [float(line.split(",")[0]) for line in lines[1:]]
        assert eps == [0.1, 0.01]
        record = json.loads((out / "paley_wiener.json").read_text())
        assert record["converged"] is True
        assert math.isfinite(record["value"])

    def test_claims_summary(self, tmp_path):
        out = tmp_path / "out"
        code = main(["claims", "-o", str(out), "--grid", "256", "--seed", "5"])
        assert code == EXIT_OK
        doc = json.loads((out / "claims.json").read_text())
        claims = doc["claims"]
        assert claims["claim_i"]["demonstrated"] is True
        assert claims["claim_i"]["canonical_covariant"] is True
        assert claims["claim_ii"]["demonstrated"] is True
        assert claims["claim_iii"]["demonstrated"] is True
        assert claims["all_demonstrated"] is True


class TestFailurePaths:
    def test_malformed_json_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["tg", "-i", str(bad), "-o", str(tmp_path / "o")]) == EXIT_PARSE

    def test_missing_input_exits_2(self, tmp_path):
        missing = tmp_path / "nope.json"
        assert main(["tg", "-i", str(missing), "-o", str(tmp_path / "o")]) == EXIT_PARSE

    def test_schema_violation_exits_2(self, tmp_path):
        doc = tmp_path / "doc.json"
        doc.write_text(json.dumps({"spectrum": {"kind": "harmonic"}}))
        assert main(["tg", "-i", str(doc), "-o", str(tmp_path / "o")]) == EXIT_PARSE

    def test_degenerate_levels_exit_3(self, tmp_path):
        doc = tmp_path / "doc.json"
        doc.write_text(json.dumps({"spectrum": {"kind": "custom", "levels": [1.0, 1.0]}}))
        assert main(["tg", "-i", str(doc), "-o", str(tmp_path / "o")]) == EXIT_PHYSICS

    def test_unnormalized_state_exit_3(self, tmp_path):
        doc = tmp_path / "doc.json"
        doc.write_text(
            json.dumps(
                {
                    "spectrum": {"kind": "harmonic", "n": 2},
                    "state": {"re": [1.0, 1.0], "im": [0.0, 0.0]},
                }
            )
        )
        assert main(["canonical", "-i", str(doc), "-o", str(tmp_path / "o")]) == EXIT_PHYSICS

    def test_bad_grid_exits_2(self, tmp_path):
        assert main(["canonical", "-o", str(tmp_path / "o"), "--grid", "1"]) == EXIT_PARSE

    def test_bad_eps_exits_2(self, tmp_path):
        code = main(["zeroset", "-o", str(tmp_path / "o"), "--eps", "-0.5"])
        assert code == EXIT_PARSE


class TestDeterminism:
    def test_same_seed_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert main(["claims", "-o", str(out), "--grid", "128", "--seed", "11"]) == EXIT_OK
        assert (a / "claims.json").read_bytes() == (b / "claims.json").read_bytes()

    def test_density_csv_reparses_exactly(self, tmp_path):
        problem = _write_problem(tmp_path)
        out = tmp_path / "out"
        main(["canonical", "-i", str(problem), "-o", str(out), "--grid", "20"])
        from timeobs.canonical import CanonicalDensity, density_at
        spec, state = serialize.load_problem(problem)
        density = CanonicalDensity.from_state(spec, state)
        rows = [line.split(",") for line in (out / "density.csv").read_text().splitlines()[1:]]
        ts = np.array([float(t) for t, _ in rows])
        ps = np.array([float(p) for _, p in rows])
        np.testing.assert_array_equal(ts, np.linspace(0.0, 10.0, 20))
        # 17-digit cells reparse to the exact doubles the command computed
        np.testing.assert_array_equal(ps, density_at(density, ts))
