"""Front-end behaviour: flags, exit codes, output files, determinism."""

import json

import pytest

from pdcm.cli import main
from pdcm.ingest import read_pdgraph

FIXTURE = "data/fixture_edges.txt"


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestGenerate:
    def test_poisson_dependent_has_no_unconnected_arcs(self, tmp_path, capsys):
        out = tmp_path / "g.pdgraph"
        rep = tmp_path / "g.json"
        rc, _, _ = run(capsys, "generate", "--model", "poisson", "--lambda", "7",
                       "--coupling", "dependent", "--n", "1000", "--seed", "1",
                       "--output", str(out), "--report", str(rep))
        assert rc == 0
        report = json.loads(rep.read_text())
        assert report["unconnected_dir"] == 0

    def test_single_atom_empirical_forces_two_undirected_edges(self, tmp_path, capsys):
        atom = tmp_path / "atom.txt"
        atom.write_text("0 0 1\n")
        out = tmp_path / "g.pdgraph"
        rc, _, _ = run(capsys, "generate", "--model", "empirical", "--degrees",
                       str(atom), "--n", "4", "--seed", "9",
                       "--output", str(out), "--report", str(tmp_path / "r.json"))
        assert rc == 0
        g = read_pdgraph(out)
        assert g.num_directed == 0 and g.num_undirected == 2

    def test_same_seed_same_bytes(self, tmp_path, capsys):
        def once(tag):
            out = tmp_path / f"{tag}.pdgraph"
            rep = tmp_path / f"{tag}.json"
            rc, _, _ = run(capsys, "generate", "--model", "scale_free",
                           "--gamma", "2.5", "--n", "300", "--seed", "17",
                           "--output", str(out), "--report", str(rep))
            assert rc == 0
            return out.read_bytes(), rep.read_bytes()

        assert once("a") == once("b")

    def test_missing_required_flag_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--model", "poisson", "--seed", "1",
                  "--output", str(tmp_path / "g"), "--report", str(tmp_path / "r")])
        assert exc.value.code == 2

    def test_bad_degree_file_is_runtime_error(self, tmp_path, capsys):
        rc, _, err = run(capsys, "generate", "--model", "empirical",
                         "--degrees", str(tmp_path / "nope.txt"),
                         "--n", "4", "--seed", "1",
                         "--output", str(tmp_path / "g"),
                         "--report", str(tmp_path / "r"))
        assert rc == 1
        assert "error" in err


class TestIngest:
    def test_fixture_summary(self, capsys, tmp_path):
        out = tmp_path / "f.pdgraph"
        rc, stdout, _ = run(capsys, "ingest", "--input", FIXTURE,
                            "--output", str(out))
        assert rc == 0
        stats = json.loads(stdout)
        assert stats["n"] == 6
        assert stats["directed"] == 4 and stats["undirected"] == 3
        # the stored graph carries the same edges
        g = read_pdgraph(out)
        assert g.num_directed == 4 and g.num_undirected == 3

    def test_missing_input_is_runtime_error(self, capsys, tmp_path):
        rc, _, err = run(capsys, "ingest", "--input", str(tmp_path / "no.txt"))
        assert rc == 1 and "error" in err


class TestExperiment:
    def test_flags_only_run(self, tmp_path, capsys):
        out = tmp_path / "m.csv"
        rc, stdout, _ = run(capsys, "experiment", "--model", "poisson",
                            "--lambda", "5", "--sizes", "30,60",
                            "--replicates", "2", "--seed", "4",
                            "--output", str(out), "--quiet")
        assert rc == 0
        assert "4 cells computed" in stdout
        lines = out.read_text().splitlines()
        assert len(lines) == 5 and lines[0].startswith("model,coupling,n,seed")

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "e.cfg"
        out = tmp_path / "m.csv"
        cfg.write_text(
            f"model = poisson\nlambda = 5\nsizes = 30\nreplicates = 2\n"
            f"seed = 4\noutput = {out}\n"
        )
        rc, stdout, _ = run(capsys, "experiment", "--config", str(cfg),
                            "--replicates", "1", "--quiet")
        assert rc == 0
        assert len(out.read_text().splitlines()) == 2  # header + 1 row

    def test_progress_lines_unless_quiet(self, tmp_path, capsys):
        out = tmp_path / "m.csv"
        rc, stdout, _ = run(capsys, "experiment", "--model", "poisson",
                            "--sizes", "20", "--replicates", "2",
                            "--seed", "1", "--output", str(out))
        assert rc == 0
        assert "[1/2] n=20" in stdout and "[2/2] n=20" in stdout

    def test_unwritable_output_is_runtime_error(self, tmp_path, capsys):
        rc, _, err = run(capsys, "experiment", "--model", "poisson",
                         "--sizes", "20", "--replicates", "1", "--seed", "1",
                         "--output", str(tmp_path / "no_dir" / "m.csv"))
        assert rc == 1 and "error" in err

    def test_unknown_config_key_is_runtime_error(self, tmp_path, capsys):
        cfg = tmp_path / "e.cfg"
        cfg.write_text("velocity = 9\n")
        rc, _, err = run(capsys, "experiment", "--config", str(cfg))
        assert rc == 1 and "velocity" in err


class TestComponents:
    def test_two_vertex_undirected_graph_is_one_component(self, tmp_path, capsys):
        p = tmp_path / "g.pdgraph"
        p.write_text("# pdgraph n=2\nU 1 2\n")
        rc, stdout, _ = run(capsys, "components", "--input", str(p),
                            "--output", str(tmp_path / "c.csv"))
        assert rc == 0
        summary = json.loads(stdout)
        assert summary == {"n": 2, "num_components": 1, "largest_relative": 1.0}

    def test_directed_edge_does_not_merge(self, tmp_path, capsys):
        p = tmp_path / "g.pdgraph"
        p.write_text("# pdgraph n=2\nD 1 2\n")
        rc, stdout, _ = run(capsys, "components", "--input", str(p))
        assert json.loads(stdout)["num_components"] == 2


class TestOracle:
    def test_third_case_json(self, tmp_path, capsys):
        spec = tmp_path / "tri.txt"
        spec.write_text("1 1 0\n1 1 0\n1 1 0\n")
        rc, stdout, _ = run(capsys, "oracle", "--spec", str(spec),
                            "--replicates", "20000", "--seed", "5")
        assert rc == 0
        result = json.loads(stdout)
        assert result["exact_fraction"] == "1/3"
        assert result["exact"] == pytest.approx(1 / 3)
        assert abs(result["frequency"] - 1 / 3) <= 3 * result["stderr"]

    def test_bad_spec_is_runtime_error(self, tmp_path, capsys):
        spec = tmp_path / "bad.txt"
        spec.write_text("1 1\n")
        rc, _, err = run(capsys, "oracle", "--spec", str(spec))
        assert rc == 1 and "error" in err


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["transmogrify"])
    assert exc.value.code == 2
