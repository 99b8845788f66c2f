import io
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_graphs
from gpgame import verify
from gpgame.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, play_session
from gpgame.families import gen_cycle, gen_petersen
from gpgame.graph import build_graph, format_graph, parse_graph, write_graph
from gpgame.solver import GameSolver, Player


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.gp"):
        path = tmp_path / name
        write_graph(g, path)
        return str(path)

    return make


class TestSolve:
    def test_petersen_builder(self, graph_file):
        code, text = run("solve", graph_file(gen_petersen()), "--first", "builder")
        assert code == EXIT_OK and "gpg = 6" in text

    def test_c6_blocker(self, graph_file):
        code, text = run("solve", graph_file(gen_cycle(6)), "--first", "blocker")
        assert code == EXIT_OK and "gpg' = 3" in text

    def test_single_vertex(self, graph_file):
        code, text = run("solve", graph_file(build_graph(1, [])))
        assert code == EXIT_OK and "gpg = 1" in text

    def test_all_and_report(self, graph_file, tmp_path):
        out = tmp_path / "r.jsonl"
        code, text = run("solve", graph_file(gen_petersen()), "--all", "--out", str(out))
        assert code == EXIT_OK and "gp- = 4" in text
        header, record = [json.loads(line) for line in out.read_text().splitlines()]
        assert header["kind"] == "header" and header["timestamp"]
        assert record["values"] == {"gpg": 6, "gpg_prime": 6, "gp": 6, "gp_lower": 4}

    def test_workers(self, graph_file):
        code, text = run("solve", graph_file(gen_petersen()), "--workers", "2")
        assert code == EXIT_OK and "gpg = 6" in text

    def test_parse_failure(self, tmp_path):
        bad = tmp_path / "bad.gp"
        bad.write_text("p gp 3 5\ne 0 1\n")
        assert run("solve", str(bad))[0] == EXIT_USAGE

    def test_missing_file(self, tmp_path):
        assert run("solve", str(tmp_path / "none.gp"))[0] == EXIT_USAGE

    def test_budget(self, graph_file):
        assert run("solve", graph_file(gen_petersen()), "--budget", "10")[0] == EXIT_BUDGET

    def test_budget_from_environment(self, graph_file, monkeypatch):
        monkeypatch.setenv("GPGAME_NODE_BUDGET", "10")
        assert run("solve", graph_file(gen_petersen()))[0] == EXIT_BUDGET

    def test_bad_flag(self):
        assert run("solve", "x.gp", "--first", "nobody")[0] == EXIT_USAGE


class TestGen:
    @pytest.mark.parametrize(
        "argv, n",
        [
            (["kneser", "5", "2"], 10),
            (["grs", "6", "5"], 19),
            (["caterpillar", "2,0,3", "--subdiv", "0"], 8),
            (["caterpillar", "1,1", "--subdiv", "1,0,2"], 7),
            (["multipartite", "3,2,2"], 7),
            (["family-h", "--blocks", "3,2", "--pendant", "3,0", "--paths", "3,2,1,1"], 18),
            (["random-graph", "8", "12", "7"], 8),
            (["petersen", "10", "2"], 20),
        ],
    )
    def test_orders(self, argv, n):
        code, text = run("gen", *argv)
        assert code == EXIT_OK and parse_graph(text).n == n

    def test_labels_and_file(self, tmp_path):
        out = tmp_path / "k.gp"
        assert run("gen", "kneser", "5", "2", "--labels", "-o", str(out))[0] == EXIT_OK
        text = out.read_text()
        assert "c label 0 {1,2}" in text
        assert parse_graph(text).labels[0] == "{1,2}"

    @pytest.mark.parametrize(
        "argv",
        [
            ["kneser", "5"],
            ["kneser", "five", "2"],
            ["cycle", "2"],
            ["caterpillar", "1"],
            ["caterpillar", "1,x"],
            ["caterpillar", "1,1", "--subdiv", "1,1"],
            ["family-h", "3"],
            ["family-h", "--blocks", "1"],
            ["unknown"],
            ["random-graph", "4", "9", "0"],
        ],
    )
    def test_bad_params(self, argv):
        assert run("gen", *argv)[0] == EXIT_USAGE


class TestVerify:
    def test_cycles(self):
        code, text = run("verify", "cycles")
        assert code == EXIT_OK and "PASS  cycles" in text

    def test_unknown_suite(self):
        assert run("verify", "nope")[0] == EXIT_USAGE

    def test_report_is_stable(self, tmp_path):
        path = tmp_path / "r.jsonl"
        runs = []
        for _ in range(2):
            assert run("verify", "petersen", "kneser", "--out", str(path))[0] == EXIT_OK
            runs.append(path.read_text().splitlines())
        a, b = runs
        assert a[1:] == b[1:]
        ha, hb = json.loads(a[0]), json.loads(b[0])
        ha.pop("timestamp"), hb.pop("timestamp")
        assert ha == hb
        summary = json.loads(a[-1])
        assert summary["kind"] == "summary" and summary["fail"] == 0
        assert all("wall_time" not in json.loads(line) for line in a[1:-1])

    def test_timings_flag(self, tmp_path):
        p = tmp_path / "t.jsonl"
        run("verify", "cycles", "--out", str(p), "--timings")
        assert all("wall_time" in json.loads(line) for line in p.read_text().splitlines()[1:-1])

    def test_mismatch_exit_and_diff(self, monkeypatch):
        def broken():
            rec = verify.InstanceRecord("cycles", "C5", "", 5)
            rec.checks.append(verify.Check("values", "match", (3, 3), (2, 3)))
            return [rec]

        monkeypatch.setitem(verify.SUITES, "cycles", broken)
        code, text = run("verify", "cycles")
        assert code == EXIT_MISMATCH
        assert "FAIL  cycles" in text and "expected (3, 3), observed (2, 3)" in text


class TestPlay:
    def play(self, g, human, first, moves):
        out = io.StringIO()
        result = play_session(g, human, first, io.StringIO("".join(f"{m}\n" for m in moves)), out)
        return result, out.getvalue()

    def test_c5_builder_first(self):
        result, text = self.play(gen_cycle(5), Player.BUILDER, Player.BUILDER, [0, 3])
        assert result == 3 and "optimal play gives 3" in text

    def test_reprompts_on_bad_input(self):
        result, text = self.play(gen_cycle(5), Player.BUILDER, Player.BUILDER, ["x", 99, -1, 0, 0, 3])
        assert result == 3
        assert "not a vertex id" in text and "vertex 99 is not playable" in text

    def test_eof_resigns(self):
        result, text = self.play(gen_cycle(6), Player.BLOCKER, Player.BLOCKER, [])
        assert result is None and "resign" in text

    def test_cli_entry(self, graph_file, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("0\n3\n"))
        code, text = run("play", graph_file(gen_cycle(5)), "--human", "builder", "--first", "builder")
        assert code == EXIT_OK and "game over" in text


@given(
    small_graphs(min_n=1, max_n=8),
    st.sampled_from(list(Player)),
    st.sampled_from(list(Player)),
    st.integers(0, 2**32),
)
@settings(max_examples=60, deadline=None)
def test_solver_never_does_worse_than_value(g, solver_role, first, seed):
    rng = random.Random(seed)
    moves = [rng.randrange(-1, g.n + 1) for _ in range(400)]
    solver = GameSolver(g)
    value = solver.value((), first)
    result = play_session(g, solver_role.other, first, io.StringIO("".join(f"{m}\n" for m in moves)), io.StringIO(), solver)
    if result is None:
        return
    if solver_role is Player.BUILDER:
        assert result >= value
    else:
        assert result <= value


def test_module_entry_point(graph_file):
    import subprocess
    import sys

    path = graph_file(gen_cycle(7))
    proc = subprocess.run([sys.executable, "-m", "gpgame", "solve", path], capture_output=True, text=True)
    assert proc.returncode == 0 and "gpg = 3" in proc.stdout


def test_format_round_trip_via_gen(tmp_path):
    code, text = run("gen", "hjk", "2", "1")
    assert code == EXIT_OK
    assert format_graph(parse_graph(text)) == text


def test_verify_all_passes(tmp_path):
    report = tmp_path / "all.jsonl"
    code, text = run("verify", "all", "--out", str(report))
    assert code == EXIT_OK, text
    summary = json.loads(report.read_text().splitlines()[-1])
    assert summary["fail"] == 0 and set(summary["suites"]) == set(verify.SUITES)
