import csv
import hashlib
import json
import logging
import os
from pathlib import Path

from models.graph import DirectedGraph, SimpleGraph
from models.lie_algebra import InnerProduct, LieAlgebra
from models.symmetry import SymmetryGroup
from utils.errors import DimensionMismatchError, LieToolkitError, ParseError
from utils.linalg import frac_matrix, to_fraction

logger = logging.getLogger(__name__)

GRAPH_SUFFIXES = (".txt", ".graph")
ALGEBRA_SUFFIXES = (".json",)


def file_hash(path):
    """sha256 of the raw input bytes"""
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def _int_labels(labels, lo, hi):
    try:
        values = [int(x) for x in labels]
    except ValueError:
        return False
    return all(str(v) == x and lo <= v <= hi for v, x in zip(values, labels))


class DataStore:
    """JSON / graph-file reading and report writing"""

    def __init__(self, base_dir=".", report_dir="reports_dev"):
        """Initialize with the directory inputs are resolved against and where reports go"""
        self.base_dir = Path(base_dir)
        self.report_dir = Path(report_dir)

    def resolve(self, path):
        path = Path(path)
        return path if path.is_absolute() else self.base_dir / path

    # Low level

    def _load_json(self, path):
        """Load a JSON file; decoding errors become ParseError with line context"""
        path = self.resolve(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except FileNotFoundError as exc:
            raise ParseError("file not found", path=path) from exc
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, path=path, line=exc.lineno) from exc
        except UnicodeDecodeError as exc:
            raise ParseError("not UTF-8 text", path=path) from exc

    def save_json(self, data, path):
        """Save data to a JSON file, creating parent directories"""
        path = Path(path)
        if path.parent and str(path.parent) not in ("", "."):
            os.makedirs(path.parent, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, sort_keys=False)
            f.write("\n")
        logger.debug("wrote %s", path)

    def write_csv(self, path, header, rows):
        path = Path(path)
        if str(path.parent) not in ("", "."):
            os.makedirs(path.parent, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        logger.debug("wrote %s (%d rows)", path, len(rows))

    def write_trajectory_csv(self, trajectory, path):
        self.write_csv(path, trajectory.csv_header(), trajectory.csv_rows())

    # Algebras

    def load_algebra(self, path):
        """
        Read a Lie algebra JSON file

        Args:
            path: file in the interchange layout (1-based indices, num/den rationals),
                optionally carrying "gram", "name" and "metadata"

        Returns:
            (LieAlgebra, InnerProduct or None)
        """
        path = self.resolve(path)
        data = self._load_json(path)
        return self.algebra_from_dict(data, path=path)

    def algebra_from_dict(self, data, path=None):
        if not isinstance(data, dict):
            raise ParseError("top level must be an object", path=path)
        try:
            dim = int(data["dim"])
        except KeyError as exc:
            raise ParseError("missing key", path=path, field="dim") from exc
        except (TypeError, ValueError) as exc:
            raise ParseError("dimension must be an integer", path=path, field="dim") from exc
        if dim < 1:
            raise ParseError("dimension must be positive", path=path, field="dim")

        brackets = {}
        for b_idx, entry in enumerate(data.get("brackets", [])):
            where = f"brackets[{b_idx}]"
            try:
                i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
                terms = brackets.setdefault((i, j), {})
                for t_idx, term in enumerate(entry.get("terms", [])):
                    k = int(term["k"]) - 1
                    if not 0 <= k < dim:
                        raise ParseError(f"index k={k + 1} outside 1..{dim}", path=path,
                                         field=f"{where}.terms[{t_idx}]")
                    terms[k] = terms.get(k, 0) + to_fraction(
                        {"num": term["num"], "den": term.get("den", 1)})
            except ParseError:
                raise
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"malformed bracket entry ({exc})", path=path, field=where) from exc
            if not (0 <= i < dim and 0 <= j < dim):
                raise ParseError(f"indices ({i + 1}, {j + 1}) outside 1..{dim}", path=path, field=where)

        try:
            alg = LieAlgebra(dim, data.get("basis"), brackets, name=data.get("name"),
                             metadata=data.get("metadata"))
        except (DimensionMismatchError, ValueError) as exc:
            raise ParseError(str(exc), path=path, field="basis") from exc

        ip = None
        if "gram" in data:
            try:
                ip = InnerProduct(frac_matrix(data["gram"]))
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                if isinstance(exc, LieToolkitError):
                    raise
                raise ParseError(f"malformed Gram matrix ({exc})", path=path, field="gram") from exc
            if ip.dim != dim:
                raise DimensionMismatchError(f"Gram of size {ip.dim} for dimension {dim}")
        if alg.name is None and path is not None:
            alg.name = Path(path).stem
        return alg, ip

    def save_algebra(self, alg, path, ip=None):
        data = alg.to_dict()
        if ip is not None and not ip.is_identity():
            data.update(ip.to_dict())
        self.save_json(data, path)

    # Graphs

    def load_graph(self, path):
        """
        Read a graph file: text ("p q" header, then "u v" edge lines) or JSON

        Returns:
            DirectedGraph (canonical direction unless the JSON gives one)
        """
        path = self.resolve(path)
        if path.suffix == ".json":
            return self.graph_from_dict(self._load_json(path), path=path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                lines = f.readlines()
        except FileNotFoundError as exc:
            raise ParseError("file not found", path=path) from exc
        except UnicodeDecodeError as exc:
            raise ParseError("not UTF-8 text", path=path) from exc
        return self.parse_graph_text(lines, path=path)

    def parse_graph_text(self, lines, path=None):
        name = Path(path).stem if path else None
        content = []
        for number, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                content.append((number, line.split()))
        if not content:
            raise ParseError("empty graph file", path=path)

        number, header = content[0]
        if len(header) != 2:
            raise ParseError("header must be 'p q'", path=path, line=number)
        try:
            p, q = int(header[0]), int(header[1])
        except ValueError as exc:
            raise ParseError("header must hold two integers", path=path, line=number) from exc
        if p < 0 or q < 0:
            raise ParseError("counts must be non-negative", path=path, line=number)
        if p == 0:
            raise ParseError("graph needs at least one vertex", path=path, line=number)

        body = content[1:]
        explicit = None
        if body and body[0][1][0] == "vertices":
            explicit = body[0][1][1:]
            if len(explicit) != p:
                raise ParseError(f"{len(explicit)} vertex labels for p={p}", path=path, line=body[0][0])
            body = body[1:]

        edges = []
        seen = set()
        for number, tokens in body:
            if len(tokens) != 2:
                raise ParseError("edge line must be 'u v'", path=path, line=number)
            u, v = tokens
            if u == v:
                raise ParseError(f"loop at vertex {u}", path=path, line=number)
            key = frozenset((u, v))
            if key in seen:
                raise ParseError(f"duplicate edge {u} {v}", path=path, line=number)
            seen.add(key)
            edges.append((u, v, number))
        if len(edges) != q:
            raise ParseError(f"header declares {q} edges, found {len(edges)}", path=path, line=content[0][0])

        labels = []
        for u, v, _ in edges:
            for x in (u, v):
                if x not in labels:
                    labels.append(x)
        if explicit is not None:
            vertices = explicit
            for u, v, number in edges:
                if u not in vertices or v not in vertices:
                    raise ParseError(f"edge {u} {v} uses an undeclared vertex", path=path, line=number)
        elif _int_labels(labels, 1, p):
            vertices = [str(i) for i in range(1, p + 1)]
        elif _int_labels(labels, 0, p - 1):
            vertices = [str(i) for i in range(p)]
        else:
            if len(labels) > p:
                raise ParseError(f"{len(labels)} distinct vertices for p={p}", path=path, line=content[0][0])
            vertices = list(labels)
            k = 1
            while len(vertices) < p:
                pad = f"iso{k}"
                if pad not in vertices:
                    vertices.append(pad)
                k += 1
        graph = SimpleGraph(vertices, [(u, v) for u, v, _ in edges], name=name)
        return DirectedGraph.canonical(graph)

    def graph_from_dict(self, data, path=None):
        try:
            graph = SimpleGraph(data["vertices"], [tuple(e) for e in data.get("edges", [])],
                                name=data.get("name") or (Path(path).stem if path else None))
        except KeyError as exc:
            raise ParseError("missing key", path=path, field=str(exc.args[0])) from exc
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc), path=path, field="edges") from exc
        direction = data.get("direction")
        if direction is None:
            return DirectedGraph.canonical(graph)
        raw_edges = [tuple(str(x) for x in e) for e in data.get("edges", [])]
        if len(direction) != len(raw_edges):
            raise ParseError("one direction entry per edge", path=path, field="direction")
        heads = {}
        for (u, v), head in zip(raw_edges, direction):
            heads[(u, v)] = str(head)
        try:
            return DirectedGraph(graph, heads)
        except ValueError as exc:
            raise ParseError(str(exc), path=path, field="direction") from exc

    def save_graph_text(self, graph, path):
        path = Path(path)
        if str(path.parent) not in ("", "."):
            os.makedirs(path.parent, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            if graph.name:
                f.write(f"# {graph.name}\n")
            f.write(f"{graph.p} {graph.q}\n")
            if not _int_labels(list(graph.vertices), 1, graph.p):
                f.write("vertices " + " ".join(graph.vertices) + "\n")
            for u, v in graph.edges:
                f.write(f"{u} {v}\n")

    # Symmetry generators

    def load_generators(self, path, dim):
        """
        Read user automorphisms: {"generators": [{"matrix": [[...]]}, ...]} or a bare list of matrices
        """
        path = self.resolve(path)
        data = self._load_json(path)
        if isinstance(data, list):
            data = {"generators": [{"matrix": m} for m in data]}
        try:
            group = SymmetryGroup.from_dict({"dim": dim, **data})
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, LieToolkitError):
                raise
            raise ParseError(f"malformed generator ({exc})", path=path, field="generators") from exc
        return group

    # Corpus

    def list_corpus(self, directory):
        """Input files of a corpus directory in filename order"""
        directory = self.resolve(directory)
        if not directory.is_dir():
            raise ParseError("not a directory", path=directory)
        return sorted(
            (p for p in directory.iterdir()
             if p.is_file() and p.suffix in GRAPH_SUFFIXES + ALGEBRA_SUFFIXES),
            key=lambda p: p.name,
        )

    def is_graph_file(self, path):
        path = Path(path)
        if path.suffix in GRAPH_SUFFIXES:
            return True
        if path.suffix == ".json":
            data = self._load_json(path)
            return isinstance(data, dict) and "vertices" in data
        return False
