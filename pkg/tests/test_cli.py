import json
import subprocess
import sys

import jsonschema
import pytest

from conftest import CYCLE6, PATH5, PETERSEN, SPIDER3
from extremal_diam import cli
from extremal_diam.generators import gen_spider
from extremal_diam.io import parse_edge_list, write_edge_list


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.txt"):
        p = tmp_path / name
        write_edge_list(g, p)
        return str(p)

    return make


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, cli.REPORT_SCHEMA)
    return code, doc


class TestDiameter:
    def test_path(self, capsys, graph_file):
        code, out, _ = run(capsys, "diameter", graph_file(PATH5))
        assert code == 0 and out.splitlines()[0] == "diameter 4"

    def test_spider_verified(self, capsys, graph_file):
        code, out, _ = run(capsys, "diameter", graph_file(SPIDER3), "--verify")
        assert code == 0 and out.splitlines()[0] == "diameter 4 (verified)"

    def test_alpha_mode(self, capsys, graph_file):
        code, out, _ = run(capsys, "diameter", graph_file(SPIDER3), "--alpha", "3", "--verify")
        assert code == 0 and "verified" in out

    def test_json(self, capsys, graph_file):
        code, doc = run_json(capsys, "diameter", graph_file(PETERSEN), "--verify")
        assert code == 0 and doc["diameter"] == 2 and doc["verification"]["ok"]
        assert doc["schema"] == "extremal-diam/1"

    def test_verification_absent_without_flag(self, capsys, graph_file):
        _, doc = run_json(capsys, "diameter", graph_file(PATH5))
        assert "verification" not in doc

    def test_mismatch_exit_code(self, capsys, graph_file, monkeypatch):
        from extremal_diam import diameter
        from extremal_diam.diameter import DiameterResult

        monkeypatch.setattr(diameter, "exact_diameter", lambda g, alpha=None: DiameterResult(3, (0, 3), {}, True))
        code, out, _ = run(capsys, "diameter", graph_file(PATH5), "--verify")
        assert code == 1 and "MISMATCH" in out

    def test_malformed_line(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("0 1\n1 2\n3 x\n")
        code, _, err = run(capsys, "diameter", str(p))
        assert code == 2 and "line 3" in err

    def test_disconnected(self, capsys, tmp_path):
        p = tmp_path / "two.txt"
        p.write_text("0 1\n2 3\n")
        code, _, err = run(capsys, "diameter", str(p))
        assert code == 2 and "disconnected" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "diameter", str(tmp_path / "nope.txt"))
        assert code == 2

    def test_dimacs(self, capsys, tmp_path):
        p = tmp_path / "g.col"
        p.write_text("c path\np edge 3 2\ne 1 2\ne 2 3\n")
        code, out, _ = run(capsys, "diameter", str(p))
        assert code == 0 and out.startswith("diameter 2")


class TestOtherCommands:
    def test_extremities(self, capsys, graph_file):
        code, out, _ = run(capsys, "extremities", graph_file(SPIDER3))
        assert code == 0 and out.splitlines()[0] == "3 extremities, alpha=3"
        _, doc = run_json(capsys, "extremities", graph_file(SPIDER3))
        assert sorted(doc["extremities"]) == [2, 4, 6] and doc["alpha_exact"]

    def test_ecc_approx(self, capsys, graph_file):
        code, doc = run_json(capsys, "ecc-approx", graph_file(CYCLE6), "--verify")
        assert code == 0 and len(doc["estimates"]) == 6
        assert set(doc["estimates"]) <= {2, 3}

    def test_oracle(self, capsys, graph_file):
        code, out, _ = run(capsys, "oracle", graph_file(PETERSEN))
        assert code == 0 and out.strip() == "diameter 2 radius 2"
        _, doc = run_json(capsys, "oracle", graph_file(PETERSEN))
        assert doc["eccentricities"] == [2] * 10

    def test_chordal(self, capsys, graph_file):
        code, out, _ = run(capsys, "chordal-diameter", graph_file(PATH5), "--verify")
        assert code == 0 and out.startswith("diameter 4 (verified)")
        code, _, err = run(capsys, "chordal-diameter", graph_file(CYCLE6))
        assert code == 2 and "chordal" in err

    def test_domtarget(self, capsys, graph_file):
        code, doc = run_json(capsys, "domtarget-diameter", graph_file(SPIDER3), "--k", "3", "--verify")
        assert code == 0 and doc["diameter"] == 4 and not doc["promise_violated"]

    def test_promise_violation_exit_code(self, capsys, graph_file):
        code, out, _ = run(capsys, "domtarget-diameter", graph_file(gen_spider(8, 2)), "--k", "2")
        assert code == 3 and "promise violated" in out

    def test_gen_spider(self, capsys, tmp_path):
        out_path = tmp_path / "s.txt"
        code, _, _ = run(capsys, "gen", "spider:3:2:0:0", "-o", str(out_path))
        assert code == 0 and parse_edge_list(out_path.read_text()) == SPIDER3
        code, out, _ = run(capsys, "gen", "spider:3:2:0:0")
        assert parse_edge_list(out) == SPIDER3

    def test_gen_bad_spec(self, capsys):
        code, _, err = run(capsys, "gen", "blob:3:2:0:0")
        assert code == 2 and "unknown family" in err

    def test_usage_error(self, capsys):
        assert cli.main(["nonsense"]) == 2
        assert cli.main(["diameter"]) == 2


class TestBench:
    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "bench", "interval", "--sizes", "60,120", "--seeds", "0..1", "--json")
        doc = json.loads(out)
        jsonschema.validate(doc, cli.BENCH_SCHEMA)
        assert code == 0 and doc["seeds"] == [0, 1]
        assert all(r["mismatches"] == 0 for r in doc["rows"])
        assert set(doc["slopes"]) >= {"exact_wall", "oracle_wall", "exact_work", "oracle_work"}

    def test_text_table(self, capsys):
        code, out, _ = run(capsys, "bench", "spider", "--sizes", "3,6", "--k", "4", "--no-oracle")
        assert code == 0 and "slope exact_wall" in out and "oracle" not in out.splitlines()[0]

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "bench", "blob", "--sizes", "10")
        assert code == 2 and "unknown family" in err

    def test_thread_cap(self, monkeypatch):
        monkeypatch.setenv("EXTREMAL_DIAM_THREADS", "1")
        assert cli.worker_count() == 1
        monkeypatch.setenv("EXTREMAL_DIAM_THREADS", "many")
        with pytest.raises(cli.UsageError):
            cli.worker_count()

    def test_parallel_matches_serial(self):
        a = cli.run_bench("interval", [50, 80], [0, 1], workers=1)
        b = cli.run_bench("interval", [50, 80], [0, 1], workers=2)
        for ra, rb in zip(a["rows"], b["rows"]):
            assert (ra["n"], ra["m"], ra["exact"]["work"]) == (rb["n"], rb["m"], rb["exact"]["work"])

    def test_fit_slope(self):
        assert cli.fit_slope([1, 2, 4], [3, 12, 48]) == pytest.approx(2.0)
        assert cli.fit_slope([1], [1]) is None


def test_module_entry_point(tmp_path):
    p = tmp_path / "p.txt"
    write_edge_list(PATH5, p)
    proc = subprocess.run(
        [sys.executable, "-m", "extremal_diam", "diameter", str(p)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("diameter 4")
