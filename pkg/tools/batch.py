"""
Corpus runner behind `app.py batch`.

Each input file is certified independently; results are gathered in filename
order so the summary is identical whatever the worker count.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from data.data_store import DataStore, file_hash
from models.report import RunReport
from tools.curvature import ricci_soliton_check
from tools.graph_algebras import (
    DEFAULT_AUT_CAP,
    DEFAULT_MAX_VERTICES,
    attach_algebra,
    certify_graph,
    edge_transitivity_check,
    graph_automorphisms,
)
from tools.lie_core import change_of_basis, orthonormal_frame, validate
from tools.symmetry import default_group, maximality_certificate
from utils.errors import LieToolkitError, NonIdentityGramError

logger = logging.getLogger(__name__)

SUMMARY_HEADER = ["name", "dim", "status", "dim_normal", "edge_transitive", "soliton"]


def orthonormalize(alg, ip):
    """Rewrite alg in an exact orthonormal frame of ip"""
    if ip is None or ip.is_identity():
        return alg
    frame = orthonormal_frame(ip)
    if frame is None:
        raise NonIdentityGramError("Gram matrix has no rational orthonormal frame")
    return change_of_basis(alg, frame)


def analyze_file(path, cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES):
    """
    Certify one corpus file

    Returns:
        (summary row dict, result dict)
    """
    store = DataStore()
    path = Path(path)
    if store.is_graph_file(path):
        dg = store.load_graph(path)
        alg = attach_algebra(dg)
        automorphisms = graph_automorphisms(dg.graph, cap, max_vertices)
        edge_transitive = edge_transitivity_check(dg.graph, automorphisms=automorphisms)
        certificate = certify_graph(dg, automorphisms)
        name = dg.name or path.stem
    else:
        alg, ip = store.load_algebra(path)
        report = validate(alg)
        if not report.ok:
            row = {"name": alg.name or path.stem, "dim": alg.dim, "status": "INVALID",
                   "dim_normal": "", "edge_transitive": "", "soliton": ""}
            return row, {"validation": report.to_dict()}
        alg = orthonormalize(alg, ip)
        certificate = maximality_certificate(alg, default_group(alg))
        edge_transitive = ""
        name = alg.name or path.stem
    soliton = ricci_soliton_check(alg) is not None
    row = {
        "name": name,
        "dim": alg.dim,
        "status": certificate.status,
        "dim_normal": certificate.dim_normal,
        "edge_transitive": edge_transitive,
        "soliton": soliton,
    }
    result = certificate.to_dict()
    result["soliton"] = soliton
    if edge_transitive != "":
        result["edge_transitive"] = edge_transitive
    return row, result


def _run_item(args):
    path, cap, max_vertices = args
    try:
        row, result = analyze_file(path, cap, max_vertices)
    except LieToolkitError as exc:
        logger.warning("%s failed: %s", path, exc)
        row, result = _error_row(path, str(exc), exc.exit_code)
    except Exception as exc:
        logger.exception("%s failed unexpectedly", path)
        row, result = _error_row(path, f"{type(exc).__name__}: {exc}", LieToolkitError.exit_code)
    return path, row, result


def _error_row(path, message, exit_code):
    row = {"name": Path(path).stem, "dim": "", "status": "ERROR", "dim_normal": "",
           "edge_transitive": "", "soliton": ""}
    return row, {"status": "ERROR", "error": message, "exit_code": exit_code}


def run_batch(corpus_dir, out_dir, jobs=1, cap=DEFAULT_AUT_CAP, max_vertices=DEFAULT_MAX_VERTICES):
    """
    Certify every file of a corpus directory

    Args:
        corpus_dir: directory of graph (.txt/.graph/.json) and algebra (.json) files
        out_dir: where per-item reports and summary.csv are written
        jobs: worker processes (1 runs inline)

    Returns:
        List of summary rows in filename order
    """
    store = DataStore()
    paths = store.list_corpus(corpus_dir)
    logger.info("batch over %d inputs with %d workers", len(paths), jobs)
    work = [(str(p), cap, max_vertices) for p in paths]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_item, work))
    else:
        outcomes = [_run_item(item) for item in work]

    out_dir = Path(out_dir)
    rows = []
    for path, row, result in outcomes:
        try:
            digest = file_hash(path)
        except OSError:
            digest = None
        report = RunReport("certify", digest, result, input_name=Path(path).name)
        store.save_json(report.to_dict(), out_dir / f"{Path(path).stem}.json")
        rows.append(row)
    store.write_csv(out_dir / "summary.csv", SUMMARY_HEADER,
                    [[row[key] for key in SUMMARY_HEADER] for row in rows])
    return rows
