"""End-to-end command line tests.

Every test calls cli.main(argv) in-process and checks the exit code plus
whatever the command left on disk or stdout.  Exit codes: 0 pass, 1 failed
verdict, 2 usage or parse error, 3 oracle over budget.
"""

import json

import pytest

from hypermatch import cli, generate, io
from hypermatch.core import validate_edge_coloring


def run_cli(*argv):
    return cli.main(list(argv))


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def cycle5(tmp_path):
    return write(tmp_path / "c5.gr", io.format_graph(generate.cycle(5)))


@pytest.fixture
def triangle(tmp_path):
    return write(tmp_path / "k3.gr", io.format_graph(generate.complete(3)))


class TestGenerate:
    def test_cycle_file(self, tmp_path, capsys):
        out = tmp_path / "c5.gr"
        assert run_cli("generate", "cycle", "n=5", "--out", str(out)) == 0
        g = io.parse_graph(out.read_text())
        assert (g.n, g.m) == (5, 5)
        assert capsys.readouterr().out == ""

    def test_complete_to_stdout(self, capsys):
        assert run_cli("generate", "complete", "n=4") == 0
        g = io.parse_graph(capsys.readouterr().out)
        assert g.m == 6

    def test_random_hypergraph_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.hgr", tmp_path / "b.hgr"
        args = ("generate", "random-hypergraph", "n=10", "m=20", "r=3", "--seed", "7")
        assert run_cli(*args, "--out", str(a)) == 0
        assert run_cli(*args, "--out", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()
        h = io.parse_hypergraph(a.read_text())
        assert (h.n, h.m, h.rank) == (10, 20, 3)

    def test_line_graph_of(self, tmp_path, capsys):
        p4 = write(tmp_path / "p4.gr", io.format_graph(generate.path(4)))
        assert run_cli("generate", "line-graph-of", "--in", p4) == 0
        g = io.parse_graph(capsys.readouterr().out)
        assert g.edges == ((0, 1), (1, 2))

    def test_line_graph_needs_input(self):
        assert run_cli("generate", "line-graph-of") == 2

    def test_missing_parameter(self):
        assert run_cli("generate", "cycle") == 2

    def test_unknown_parameter(self):
        assert run_cli("generate", "cycle", "n=5", "girth=9") == 2

    def test_malformed_parameter(self):
        assert run_cli("generate", "cycle", "five") == 2

    def test_family_rejects_bad_size(self):
        # cycle needs three nodes; the ValueError surfaces as usage error
        assert run_cli("generate", "cycle", "n=2") == 2


class TestRunHappyPaths:
    def test_edge_color_triangle(self, triangle, tmp_path, capsys):
        sol = tmp_path / "k3.col"
        code = run_cli("run", "--algo", "edge-color", "--in", triangle,
                       "--out", str(sol))
        assert code == 0
        line = capsys.readouterr().out
        assert line.startswith("edge-color: ok")
        assert "rounds=" in line
        colors = io.parse_coloring(sol.read_text())
        assert set(colors) == {0, 1, 2}
        assert len(set(colors.values())) == 3
        assert max(colors.values()) <= 3

    def test_maximal_matching_star(self, tmp_path):
        star = write(tmp_path / "s5.gr", io.format_graph(generate.star(5)))
        sol = tmp_path / "s5.mat"
        assert run_cli("run", "--algo", "maximal-matching", "--in", star,
                       "--out", str(sol)) == 0
        picked = io.parse_matching(sol.read_text())
        assert len(picked) == 1

    def test_mis_on_complete_graph(self, tmp_path):
        k5 = write(tmp_path / "k5.gr", io.format_graph(generate.complete(5)))
        sol = tmp_path / "k5.mis"
        assert run_cli("run", "--algo", "mis", "--in", k5,
                       "--out", str(sol)) == 0
        assert len(io.parse_id_set(sol.read_text())) == 1

    def test_approx_matching_on_hypergraph(self, tmp_path):
        h = generate.random_hypergraph(9, 10, 3, seed=4)
        inst = write(tmp_path / "h.hgr", io.format_hypergraph(h))
        assert run_cli("run", "--algo", "approx-matching", "--in", inst) == 0

    def test_approx_graph_matching(self, tmp_path, cycle5):
        sol = tmp_path / "c5.mat"
        assert run_cli("run", "--algo", "approx-graph-matching",
                       "--in", cycle5, "--eps", "1/3", "--out", str(sol)) == 0
        assert len(io.parse_matching(sol.read_text())) == 2

    def test_orientation_on_tree(self, tmp_path):
        p6 = write(tmp_path / "p6.gr", io.format_graph(generate.path(6)))
        sol = tmp_path / "p6.or"
        assert run_cli("run", "--algo", "orientation", "--in", p6,
                       "--lambda", "1", "--eps", "1", "--out", str(sol)) == 0
        assert run_cli("verify", "orientation", "--in", p6, str(sol),
                       "--lambda", "1", "--eps", "1") == 0

    def test_pseudo_forests_cycle(self, tmp_path):
        c8 = write(tmp_path / "c8.gr", io.format_graph(generate.cycle(8)))
        sol = tmp_path / "c8.pf"
        assert run_cli("run", "--algo", "pseudo-forests", "--in", c8,
                       "--lambda", "2", "--eps", "1/2", "--out", str(sol)) == 0
        assert run_cli("verify", "pseudo-forests", "--in", c8, str(sol)) == 0

    def test_arboricity_edge_color_path(self, tmp_path):
        p6 = write(tmp_path / "p6.gr", io.format_graph(generate.path(6)))
        assert run_cli("run", "--algo", "arb-edge-color", "--in", p6,
                       "--arboricity", "1", "--eps", "1") == 0

    def test_randomized_edge_color(self, cycle5, tmp_path):
        sol = tmp_path / "c5.col"
        assert run_cli("run", "--algo", "rand-edge-color", "--in", cycle5,
                       "--seed", "3", "--out", str(sol)) == 0
        colors = io.parse_coloring(sol.read_text())
        g = generate.cycle(5)
        assert validate_edge_coloring(g, colors, palette=2 * g.max_degree - 1)

    def test_vertex_color(self, cycle5):
        assert run_cli("run", "--algo", "vertex-color", "--in", cycle5) == 0

    def test_slack_mode(self, tmp_path, capsys):
        h = generate.random_hypergraph(10, 12, 3, seed=2)
        inst = write(tmp_path / "h.hgr", io.format_hypergraph(h))
        sol = tmp_path / "h.mat"
        assert run_cli("run", "--algo", "maximal-matching", "--in", inst,
                       "--slack", "1/2", "--out", str(sol)) == 0
        # the solution is a valid (not necessarily maximal) matching
        assert run_cli("verify", "matching", "--in", inst, str(sol)) == 0


class TestJsonReport:
    def test_report_bytes_are_reproducible(self, tmp_path):
        h = generate.random_hypergraph(10, 14, 3, seed=6)
        inst = write(tmp_path / "h.hgr", io.format_hypergraph(h))
        r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
        args = ("run", "--algo", "maximal-matching", "--in", inst)
        assert run_cli(*args, "--json", str(r1)) == 0
        assert run_cli(*args, "--json", str(r2)) == 0
        assert r1.read_bytes() == r2.read_bytes()

    def test_report_shape(self, triangle, tmp_path):
        rpt = tmp_path / "r.json"
        assert run_cli("run", "--algo", "edge-color", "--in", triangle,
                       "--json", str(rpt)) == 0
        report = json.loads(rpt.read_text())
        assert report["schema_version"] == 1
        assert report["algorithm"] == "edge-color"
        assert report["instance"]["kind"] == "graph"
        assert report["instance"]["n"] == 3
        assert report["verdicts"]["coloring_proper"]["ok"] is True
        assert report["oracle"]["reduction_soundness"]["ok"] is True
        assert report["ledger"]["total"] >= 0
        assert isinstance(report["ledger"]["entries"], list)

    def test_report_to_stdout(self, triangle, capsys):
        assert run_cli("run", "--algo", "edge-color", "--in", triangle,
                       "--json", "-") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["algorithm"] == "edge-color"


class TestVerify:
    def test_edge_coloring_round_trip(self, triangle, tmp_path, capsys):
        sol = tmp_path / "k3.col"
        run_cli("run", "--algo", "edge-color", "--in", triangle,
                "--out", str(sol))
        capsys.readouterr()
        assert run_cli("verify", "edge-coloring", "--in", triangle,
                       str(sol)) == 0
        assert capsys.readouterr().out == "pass\n"

    def test_tampered_coloring_fails(self, triangle, tmp_path, capsys):
        # all three triangle edges share vertices, one color cannot work
        sol = write(tmp_path / "bad.col", "0 1\n1 1\n2 1\n")
        assert run_cli("verify", "edge-coloring", "--in", triangle, sol) == 1
        assert capsys.readouterr().out.startswith("fail:")

    def test_overlapping_matching_fails(self, triangle, tmp_path):
        sol = write(tmp_path / "bad.mat", "0\n1\n")
        assert run_cli("verify", "matching", "--in", triangle, sol) == 1

    def test_non_maximal_matching_fails(self, cycle5, tmp_path, capsys):
        sol = write(tmp_path / "empty.mat", "")
        assert run_cli("verify", "maximal-matching", "--in", cycle5, sol) == 1
        assert "fail:" in capsys.readouterr().out

    def test_vertex_coloring_must_cover_every_node(self, cycle5, tmp_path):
        sol = write(tmp_path / "part.col", "0 1\n1 2\n")
        assert run_cli("verify", "vertex-coloring", "--in", cycle5, sol) == 1

    def test_mis_kind_checks_maximality(self, tmp_path):
        k5 = write(tmp_path / "k5.gr", io.format_graph(generate.complete(5)))
        good = write(tmp_path / "one.set", "2\n")
        empty = write(tmp_path / "none.set", "")
        assert run_cli("verify", "mis", "--in", k5, good) == 0
        assert run_cli("verify", "independent-set", "--in", k5, empty) == 0
        assert run_cli("verify", "mis", "--in", k5, empty) == 1

    def test_orientation_kind_needs_graph(self, tmp_path):
        hgr = write(tmp_path / "h.hgr", "hgr 3 1 3\n0 1 2\n")
        sol = write(tmp_path / "h.or", "0 1\n")
        assert run_cli("verify", "orientation", "--in", hgr, sol) == 2


class TestListEdgeColoring:
    def combined(self, tmp_path):
        # cycle on five nodes, each edge gets a private three-color list
        g = generate.cycle(5)
        lines = [io.format_graph(g).rstrip("\n")]
        for eid in range(g.m):
            lines.append(f"{eid}: {3 * eid + 1} {3 * eid + 2} {3 * eid + 3}")
        return write(tmp_path / "c5.lists", "\n".join(lines) + "\n")

    def test_run_and_verify(self, tmp_path, capsys):
        inst = self.combined(tmp_path)
        sol = tmp_path / "c5.lc"
        assert run_cli("run", "--algo", "list-edge-color", "--in", inst,
                       "--out", str(sol)) == 0
        capsys.readouterr()
        assert run_cli("verify", "list-edge-coloring", "--in", inst,
                       str(sol)) == 0
        colors = io.parse_coloring(sol.read_text())
        for eid, c in colors.items():
            assert c in {3 * eid + 1, 3 * eid + 2, 3 * eid + 3}

    def test_off_list_color_fails(self, tmp_path, capsys):
        inst = self.combined(tmp_path)
        sol = write(tmp_path / "bad.lc", "0 99\n1 4\n2 7\n3 10\n4 13\n")
        assert run_cli("verify", "list-edge-coloring", "--in", inst, sol) == 1
        assert "fail:" in capsys.readouterr().out


class TestExitCodes:
    def test_missing_instance_file(self, tmp_path):
        assert run_cli("run", "--algo", "mis", "--in",
                       str(tmp_path / "absent.gr")) == 2

    def test_malformed_instance(self, tmp_path):
        bad = write(tmp_path / "bad.gr", "gr 2 1\n0\n")
        assert run_cli("run", "--algo", "mis", "--in", bad) == 2

    def test_unknown_algorithm(self, cycle5):
        assert run_cli("run", "--algo", "quantum", "--in", cycle5) == 2

    def test_missing_required_option(self, cycle5):
        assert run_cli("run", "--algo", "approx-graph-matching",
                       "--in", cycle5) == 2
        assert run_cli("run", "--algo", "orientation", "--in", cycle5,
                       "--eps", "1") == 2
        assert run_cli("run", "--algo", "arb-edge-color", "--in", cycle5,
                       "--eps", "1") == 2

    def test_bad_eps_value(self, cycle5):
        assert run_cli("run", "--algo", "approx-graph-matching",
                       "--in", cycle5, "--eps", "zero") == 2

    def test_oracle_unavailable_for_randomized_run(self, cycle5):
        assert run_cli("run", "--algo", "rand-edge-color", "--in", cycle5,
                       "--oracle") == 2
        assert run_cli("run", "--algo", "vertex-color", "--in", cycle5,
                       "--oracle") == 2

    def test_forced_oracle_over_budget(self, tmp_path):
        # thirty hyperedges push the matching oracle past its subset budget
        h = generate.random_hypergraph(12, 30, 3, seed=1)
        inst = write(tmp_path / "big.hgr", io.format_hypergraph(h))
        sol = tmp_path / "big.mat"
        assert run_cli("run", "--algo", "maximal-matching", "--in", inst,
                       "--out", str(sol), "--oracle") == 3
        # the solution was written before the oracle gave up
        assert sol.exists()
        assert run_cli("verify", "maximal-matching", "--in", inst,
                       str(sol)) == 0

    def test_unforced_oracle_over_budget_still_passes(self, tmp_path):
        h = generate.random_hypergraph(12, 30, 3, seed=1)
        inst = write(tmp_path / "big.hgr", io.format_hypergraph(h))
        rpt = tmp_path / "big.json"
        assert run_cli("run", "--algo", "maximal-matching", "--in", inst,
                       "--json", str(rpt)) == 0
        assert json.loads(rpt.read_text())["oracle"] is None

    def test_orientation_bound_error_exits_one(self, tmp_path):
        # fifteen edges on six nodes cannot orient with out-degree two
        k6 = write(tmp_path / "k6.gr", io.format_graph(generate.complete(6)))
        assert run_cli("run", "--algo", "orientation", "--in", k6,
                       "--lambda", "1", "--eps", "1") == 1

    def test_hypergraph_rejected_by_graph_algorithm(self, tmp_path):
        hgr = write(tmp_path / "h.hgr", "hgr 3 1 3\n0 1 2\n")
        assert run_cli("run", "--algo", "edge-color", "--in", hgr) == 2
