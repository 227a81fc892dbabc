"""CLI subcommands and the benchmark harness contract."""

import json

import pytest

import zxpoly as zx
from zxpoly.bench import CSV_HEADER, records_to_csv, run_bench
from zxpoly.cli import main


def run_cli(*args):
    return main([str(a) for a in args])


class TestGenerate:
    def test_random_to_file(self, tmp_path):
        out = tmp_path / "poly.json"
        assert run_cli("generate", "--qubits", 4, "--gadgets", 10, "--max-legs", 4,
                       "--seed", 7, "--out", out) == 0
        poly = zx.ZXPolynomial.from_json(out.read_text())
        assert poly == zx.random_poly(4, 10, 4, seed=7)

    def test_maxcut(self, tmp_path):
        out = tmp_path / "mc.json"
        assert run_cli("generate", "--maxcut", "--vertices", 4, "--p-edge", 0.8,
                       "--layers", 2, "--seed", 1, "--out", out) == 0
        poly = zx.ZXPolynomial.from_json(out.read_text())
        assert poly == zx.maxcut_qaoa(4, 0.8, 2, seed=1)


class TestSimplify:
    def test_round_trip(self, tmp_path):
        src = tmp_path / "in.json"
        dst = tmp_path / "out.json"
        poly = zx.ZXPolynomial(1, (
            zx.PhaseGadget.z([0], zx.Phase(1, 4)),
            zx.PhaseGadget.z([0], zx.Phase(7, 4)),
        ))
        src.write_text(poly.to_json())
        assert run_cli("simplify", "--in", src, "--out", dst) == 0
        assert len(zx.ZXPolynomial.from_json(dst.read_text())) == 0


class TestSynthAndVerify:
    @pytest.mark.parametrize("fmt,suffix", [("qasm", "qasm"), ("json", "json")])
    def test_synth_then_verify(self, tmp_path, fmt, suffix):
        poly_path = tmp_path / "poly.json"
        circ_path = tmp_path / f"circ.{suffix}"
        poly_path.write_text(zx.random_poly(4, 8, 4, seed=3).to_json())
        assert run_cli("synth", "--in", poly_path, "--arch", "line:4",
                       "--mode", "fast", "--format", fmt, "--out", circ_path) == 0
        assert run_cli("verify", "--poly", poly_path, "--circuit", circ_path,
                       "--tol", 1e-9) == 0

    def test_gauss_mode(self, tmp_path):
        poly_path = tmp_path / "poly.json"
        circ_path = tmp_path / "circ.qasm"
        poly_path.write_text(zx.random_poly(4, 6, 4, seed=4).to_json())
        assert run_cli("synth", "--in", poly_path, "--arch", "grid:2x2",
                       "--mode", "gauss", "--out", circ_path) == 0
        assert run_cli("verify", "--poly", poly_path, "--circuit", circ_path) == 0

    def test_verify_fails_on_wrong_circuit(self, tmp_path):
        poly_path = tmp_path / "poly.json"
        circ_path = tmp_path / "circ.qasm"
        poly_path.write_text(zx.random_poly(3, 5, 3, seed=5).to_json())
        wrong = zx.Circuit(3, [zx.Cnot(0, 1)])
        circ_path.write_text(zx.to_qasm(wrong))
        assert run_cli("verify", "--poly", poly_path, "--circuit", circ_path) == 1

    def test_arch_size_mismatch(self, tmp_path):
        poly_path = tmp_path / "poly.json"
        poly_path.write_text(zx.random_poly(3, 5, 3, seed=6).to_json())
        assert run_cli("synth", "--in", poly_path, "--arch", "line:5",
                       "--out", tmp_path / "c.qasm") == 2

    def test_explicit_arch_file(self, tmp_path):
        arch_path = tmp_path / "arch.json"
        arch_path.write_text(json.dumps({"qubits": 3, "edges": [[0, 1], [1, 2]]}))
        poly_path = tmp_path / "poly.json"
        circ_path = tmp_path / "circ.qasm"
        poly_path.write_text(zx.random_poly(3, 4, 3, seed=7).to_json())
        assert run_cli("synth", "--in", poly_path, "--arch", arch_path,
                       "--out", circ_path) == 0
        assert run_cli("verify", "--poly", poly_path, "--circuit", circ_path) == 0

    def test_bad_input_reports_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli("simplify", "--in", bad, "--out", tmp_path / "o.json") == 2


class TestBench:
    GRID = {
        "kind": "random",
        "qubits": [3],
        "gadgets": [5, 8],
        "max_legs": 3,
        "architectures": ["line", "complete"],
        "algorithms": ["divide_fast", "naive"],
    }

    def test_record_counts_and_header(self, tmp_path):
        grid_path = tmp_path / "grid.json"
        grid_path.write_text(json.dumps(self.GRID))
        out = tmp_path / "results.csv"
        assert run_cli("bench", "--grid", grid_path, "--reps", 2, "--seed", 11,
                       "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        # 2 gadget counts x 2 architectures x 2 reps x 2 algorithms
        assert len(lines) == 1 + 16

    def test_naive_algorithm_zero_reduction(self):
        records, failures = run_bench(self.GRID, reps=1, base_seed=5)
        assert failures == 0
        for record in records:
            if record.algorithm == "naive":
                assert record.cx_out == record.cx_naive
            assert record.verified is True

    def test_csv_deterministic_apart_from_time(self):
        a, _ = run_bench(self.GRID, reps=2, base_seed=3)
        b, _ = run_bench(self.GRID, reps=2, base_seed=3)

        def strip_time(records):
            return [row.rsplit(",", 1)[0] for row in records_to_csv(records).splitlines()]

        assert strip_time(a) == strip_time(b)

    def test_grid_architecture_requires_square(self):
        grid = dict(self.GRID, architectures=["grid"])
        with pytest.raises(ValueError):
            run_bench(grid, reps=1, base_seed=0)

    def test_maxcut_kind(self):
        grid = {
            "kind": "maxcut",
            "vertices": [4],
            "p_edges": [0.7],
            "layers": [1, 2],
            "architectures": ["complete"],
            "algorithms": ["divide_fast"],
        }
        records, failures = run_bench(grid, reps=2, base_seed=9)
        assert failures == 0
        assert len(records) == 4
        assert all(r.verified for r in records)
