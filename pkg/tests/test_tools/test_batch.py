import json

from data import generate_corpus
from tools import batch
from tools.batch import SUMMARY_HEADER, analyze_file, run_batch


def read_bytes(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


class TestRunBatch:
    def test_edge_transitive_corpus(self, graph_corpus, tmp_path):
        rows = run_batch(graph_corpus, tmp_path / "out")
        assert [r["name"] for r in rows] == ["c5", "k4", "petersen"]
        assert all(r["status"] == "MAXIMAL" for r in rows)
        assert all(r["edge_transitive"] is True for r in rows)
        assert [r["dim"] for r in rows] == [10, 10, 25]

    def test_writes_summary_and_items(self, graph_corpus, tmp_path):
        out = tmp_path / "out"
        run_batch(graph_corpus, out)
        lines = (out / "summary.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(SUMMARY_HEADER)
        assert len(lines) == 4
        item = json.loads((out / "k4.json").read_text(encoding="utf-8"))
        assert item["subcommand"] == "certify"
        assert item["input"] == "k4.txt"
        assert item["result"]["status"] == "MAXIMAL"
        assert "wall_time" not in item

    def test_empty_directory(self, tmp_path):
        corpus = tmp_path / "empty"
        corpus.mkdir()
        out = tmp_path / "out"
        assert run_batch(corpus, out) == []
        assert (out / "summary.csv").read_text(encoding="utf-8") == ",".join(SUMMARY_HEADER) + "\n"

    def test_bad_file_does_not_stop_the_run(self, graph_corpus, tmp_path):
        (graph_corpus / "broken.txt").write_text("3 2\n1 1\n2 3\n", encoding="utf-8")
        out = tmp_path / "out"
        rows = run_batch(graph_corpus, out)
        by_name = {r["name"]: r for r in rows}
        assert by_name["broken"]["status"] == "ERROR"
        assert sum(r["status"] == "MAXIMAL" for r in rows) == 3
        item = json.loads((out / "broken.json").read_text(encoding="utf-8"))
        assert item["result"]["exit_code"] == 2
        assert "line 2" in item["result"]["error"]

    def test_non_utf8_file_is_an_error_row(self, graph_corpus, tmp_path):
        (graph_corpus / "latin.txt").write_bytes(b"\xff\xfe 2 1\n1 2\n")
        out = tmp_path / "out"
        rows = run_batch(graph_corpus, out)
        by_name = {r["name"]: r for r in rows}
        assert by_name["latin"]["status"] == "ERROR"
        assert sum(r["status"] == "MAXIMAL" for r in rows) == 3
        item = json.loads((out / "latin.json").read_text(encoding="utf-8"))
        assert item["result"]["exit_code"] == 2
        assert len((out / "summary.csv").read_text(encoding="utf-8").splitlines()) == 5

    def test_empty_graph_is_an_error_row(self, graph_corpus, tmp_path):
        (graph_corpus / "nothing.txt").write_text("0 0\n", encoding="utf-8")
        rows = run_batch(graph_corpus, tmp_path / "out")
        assert {r["name"]: r["status"] for r in rows}["nothing"] == "ERROR"

    def test_float_stored_automorphism_is_ignored(self, graph_corpus, tmp_path):
        data = {"dim": 2, "name": "plane", "metadata": {"known_automorphisms": [[[1.0, 0], [0, 1]]]}}
        (graph_corpus / "plane.json").write_text(json.dumps(data), encoding="utf-8")
        rows = run_batch(graph_corpus, tmp_path / "out")
        by_name = {r["name"]: r for r in rows}
        assert by_name["plane"]["status"] in ("MAXIMAL", "INCONCLUSIVE")
        assert by_name["plane"]["dim"] == 2
        assert len(rows) == 4

    def test_unexpected_failure_is_an_error_row(self, graph_corpus, tmp_path, monkeypatch):
        real = batch.analyze_file

        def flaky(path, cap, max_vertices):
            if path.endswith("k4.txt"):
                raise RuntimeError("worker blew up")
            return real(path, cap, max_vertices)

        monkeypatch.setattr(batch, "analyze_file", flaky)
        out = tmp_path / "out"
        rows = run_batch(graph_corpus, out)
        assert [r["status"] for r in rows] == ["MAXIMAL", "ERROR", "MAXIMAL"]
        item = json.loads((out / "k4.json").read_text(encoding="utf-8"))
        assert item["result"]["error"] == "RuntimeError: worker blew up"
        assert item["result"]["exit_code"] == 1

    def test_reruns_are_byte_identical(self, graph_corpus, tmp_path):
        run_batch(graph_corpus, tmp_path / "first")
        run_batch(graph_corpus, tmp_path / "second")
        assert read_bytes(tmp_path / "first") == read_bytes(tmp_path / "second")

    def test_worker_count_does_not_change_output(self, graph_corpus, tmp_path):
        serial = run_batch(graph_corpus, tmp_path / "serial", jobs=1)
        parallel = run_batch(graph_corpus, tmp_path / "parallel", jobs=2)
        assert serial == parallel
        assert read_bytes(tmp_path / "serial") == read_bytes(tmp_path / "parallel")

    def test_shipped_corpus(self, tmp_path):
        corpus = tmp_path / "corpus"
        generate_corpus(corpus)
        rows = run_batch(corpus, tmp_path / "out")
        statuses = {r["name"]: r["status"] for r in rows}
        assert statuses == {
            "c5": "MAXIMAL",
            "heisenberg_sum(3)": "MAXIMAL",
            "k1_4_plus1": "MAXIMAL",
            "k4": "MAXIMAL",
            "motion_group_r2": "MAXIMAL",
            "p4": "INCONCLUSIVE",
            "petersen": "MAXIMAL",
            "s_w(1,2)": "MAXIMAL",
        }


class TestAnalyzeFile:
    def test_invalid_algebra(self, tmp_path):
        data = {"dim": 3, "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 3, "num": 1}]},
            {"i": 1, "j": 3, "terms": [{"k": 2, "num": 1}]},
            {"i": 2, "j": 3, "terms": [{"k": 2, "num": 1}]},
        ]}
        target = tmp_path / "bad_jacobi.json"
        target.write_text(json.dumps(data), encoding="utf-8")
        row, result = analyze_file(target)
        assert row["status"] == "INVALID"
        assert result["validation"]["ok"] is False

    def test_algebra_with_rational_frame(self, tmp_path):
        data = {"dim": 3, "name": "scaled_heisenberg",
                "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "num": 1}]}],
                "gram": [["4", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
        target = tmp_path / "scaled.json"
        target.write_text(json.dumps(data), encoding="utf-8")
        row, result = analyze_file(target)
        assert row["status"] == "MAXIMAL"
        assert row["soliton"] is True
        assert row["edge_transitive"] == ""

    def test_graph_row(self, tmp_path):
        target = tmp_path / "p4.txt"
        target.write_text("4 3\n1 2\n2 3\n3 4\n", encoding="utf-8")
        row, result = analyze_file(target)
        assert row["status"] == "INCONCLUSIVE"
        assert row["edge_transitive"] is False
        assert result["edge_transitive"] is False
        assert result["witness"] is not None
