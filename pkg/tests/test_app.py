import json

import pytest

from app import EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_LIMIT, EXIT_OK, EXIT_PARSE, main
from data import DataStore
from tools import families
from tools.graph_algebras import complete, cycle, path


@pytest.fixture
def files(tmp_path):
    store = DataStore()
    store.save_graph_text(path(4), tmp_path / "p4.txt")
    store.save_graph_text(complete(3), tmp_path / "k3.txt")
    store.save_graph_text(cycle(13), tmp_path / "c13.txt")
    (tmp_path / "k3_relabelled.txt").write_text("3 3\na b\nb c\nc a\n", encoding="utf-8")
    store.save_algebra(families.heisenberg_sum(3), tmp_path / "h3.json")
    bad = {"dim": 3, "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 3, "num": 1}]},
        {"i": 1, "j": 3, "terms": [{"k": 2, "num": 1}]},
        {"i": 2, "j": 3, "terms": [{"k": 2, "num": 1}]},
    ]}
    (tmp_path / "bad.json").write_text(json.dumps(bad), encoding="utf-8")
    (tmp_path / "broken.json").write_text("{\"dim\": ", encoding="utf-8")
    return tmp_path


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


class TestValidate:
    def test_valid(self, files, capsys):
        code, report = run_json(capsys, ["validate", str(files / "h3.json")])
        assert code == EXIT_OK
        assert report["subcommand"] == "validate"
        assert report["result"]["status"] == "ok"
        assert len(report["input_hash"]) == 64

    def test_invalid(self, files, capsys):
        code, report = run_json(capsys, ["validate", str(files / "bad.json")])
        assert code == EXIT_INVALID
        assert report["result"]["violations"]

    def test_malformed(self, files, capsys):
        assert main(["validate", str(files / "broken.json")]) == EXIT_PARSE

    def test_missing_input(self, capsys):
        assert main(["validate"]) == EXIT_PARSE


class TestCertify:
    def test_family(self, capsys):
        code, report = run_json(capsys, ["certify", "--family", "almost-abelian", "--w", "1,2"])
        assert code == EXIT_OK
        assert report["result"]["status"] == "MAXIMAL"
        assert report["input"] == "s_w(1,2)"

    def test_path_graph(self, files, capsys):
        code, report = run_json(capsys, ["certify", "--graph", str(files / "p4.txt")])
        assert code == EXIT_INCONCLUSIVE
        assert report["result"]["witness"] is not None

    def test_text_format(self, capsys):
        code = main(["certify", "--family", "motion-group-r2", "--format", "text"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert out.splitlines()[0] == "status: MAXIMAL"

    def test_csv_format(self, files, capsys):
        main(["certify", str(files / "k3.txt"), "--format", "csv"])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "name,dim,status,dim_normal,dim_invariant_normal"
        assert lines[1].startswith("k3,6,MAXIMAL")

    def test_out_file(self, files, capsys):
        target = files / "reports" / "cert.json"
        assert main(["certify", "--family", "heisenberg-sum", "--n", "4", "--out", str(target)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["result"]["status"] == "MAXIMAL"

    def test_reversibility_flag(self, capsys):
        _, report = run_json(capsys, ["certify", "--family", "almost-abelian", "--w", "1,2",
                                      "--check-reversible"])
        assert report["result"]["two_reversible"]["status"] == "reversible"

    def test_rejects_a_non_automorphism(self, files, capsys):
        (files / "swap.json").write_text(json.dumps([[["0", "1", "0"], ["1", "0", "0"], ["0", "0", "1"]]]),
                                         encoding="utf-8")
        code = main(["certify", str(files / "h3.json"), "--generators", str(files / "swap.json")])
        assert code == EXIT_INVALID

    def test_invalid_algebra(self, files):
        assert main(["certify", str(files / "bad.json")]) == EXIT_INVALID

    def test_vertex_limit(self, files):
        assert main(["certify", "--graph", str(files / "c13.txt")]) == EXIT_LIMIT

    def test_vertex_limit_override(self, files, capsys):
        assert main(["certify", "--graph", str(files / "k3.txt"), "--max-vertices", "2"]) == EXIT_LIMIT

    def test_unknown_family(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["certify", "--family", "octonions"])
        assert info.value.code == EXIT_PARSE

    def test_bad_family_parameter(self):
        assert main(["certify", "--family", "heisenberg-sum", "--n", "2"]) == EXIT_PARSE

    def test_float_stored_automorphism(self, tmp_path, capsys):
        data = {"dim": 2, "metadata": {"known_automorphisms": [[[1.0, 0], [0, 1]]]}}
        (tmp_path / "plane.json").write_text(json.dumps(data), encoding="utf-8")
        code, report = run_json(capsys, ["certify", str(tmp_path / "plane.json")])
        assert code in (EXIT_OK, EXIT_INCONCLUSIVE)
        assert report["result"]["status"] in ("MAXIMAL", "INCONCLUSIVE")


class TestCurvatureCommands:
    def test_ricci(self, capsys):
        code, report = run_json(capsys, ["ricci", "--family", "heisenberg-sum", "--n", "3"])
        assert code == EXIT_OK
        assert report["result"]["scal"] == "-1/2"
        assert report["result"]["isotropy"]["reason"] == "not_einstein"

    def test_soliton(self, capsys):
        _, report = run_json(capsys, ["soliton", "--family", "almost-abelian", "--w", "1,2"])
        assert report["result"]["status"] == "soliton"
        assert report["result"]["c"] == "-5"

    def test_transitivity(self, capsys):
        _, report = run_json(capsys, ["transitivity", "--family", "motion-group-r2"])
        assert report["result"]["status"] == "not_transitive"
        assert report["result"]["codimension"] == 2
        assert report["result"]["unimodular"] is True


class TestFlow:
    def test_csv_trajectory(self, tmp_path, capsys):
        target = tmp_path / "traj.csv"
        code, report = run_json(capsys, ["flow", "--family", "heisenberg-sum", "--n", "3", "--t-end", "0.05",
                                         "--step", "0.01", "--sample-every", "1", "--csv", str(target)])
        assert code == EXIT_OK
        assert report["result"]["status"] == "completed"
        lines = target.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("t,")
        assert len(lines) == 1 + 6

    def test_yamabe_preset_with_diagonal_g0(self, capsys):
        _, report = run_json(capsys, ["flow", "--family", "almost-abelian", "--w", "1,2", "--preset", "yamabe",
                                      "--g0", "1,2,3", "--t-end", "0.1", "--step", "0.01",
                                      "--normalize", "none"])
        assert report["result"]["problem"]["a"] == 0.0
        assert report["result"]["problem"]["b"] == 1.0

    def test_symmetry_tolerance_flag(self, capsys):
        g0 = "1,1e-8,0,0,1,0,0,0,1"
        argv = ["flow", "--family", "heisenberg-sum", "--n", "3", "--g0", g0, "--t-end", "0.01", "--step", "0.01"]
        assert main(argv) == EXIT_INVALID
        capsys.readouterr()
        code, report = run_json(capsys, argv + ["--tol-symmetry", "1e-6"])
        assert code == EXIT_OK
        assert report["result"]["status"] == "completed"

    def test_bad_g0(self, capsys):
        code = main(["flow", "--family", "heisenberg-sum", "--n", "3", "--g0", "1,2"])
        assert code == EXIT_PARSE


class TestGraphCommands:
    def test_graph_report_with_isomorphism(self, files, capsys):
        code, report = run_json(capsys, ["graph", str(files / "k3.txt"), "--iso", str(files / "k3_relabelled.txt")])
        assert code == EXIT_OK
        assert report["result"]["automorphisms"] == 6
        assert report["result"]["isomorphic"] is True
        assert report["result"]["status"] == "edge_transitive"

    def test_directions(self, files, capsys):
        code, report = run_json(capsys, ["directions", str(files / "k3.txt")])
        assert code == EXIT_OK
        assert report["result"]["directions"] == 8
        assert report["result"]["consistent"] is True


class TestCorpusCommands:
    def test_batch_on_empty_directory(self, tmp_path, capsys):
        (tmp_path / "empty").mkdir()
        code = main(["batch", str(tmp_path / "empty"), "--out", str(tmp_path / "out")])
        assert code == EXIT_OK
        assert capsys.readouterr().out == "name,dim,status,dim_normal,edge_transitive,soliton\n"

    def test_batch(self, graph_corpus, tmp_path, capsys):
        code = main(["batch", str(graph_corpus), "--out", str(tmp_path / "out"), "--jobs", "2"])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert len(lines) == 4
        assert (tmp_path / "out" / "summary.csv").exists()

    def test_family(self, capsys):
        code, data = run_json(capsys, ["family", "almost-abelian", "--w", "1,2"])
        assert code == EXIT_OK
        assert data["dim"] == 3
        assert data["metadata"]["expected_ricci_diagonal"] == ["-5", "-3", "-6"]

    def test_corpus(self, tmp_path, capsys):
        assert main(["corpus", str(tmp_path / "corpus")]) == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 8
