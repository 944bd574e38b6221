"""
Command-line interface for certifying maximal left-invariant metrics.

Subcommands: validate, certify, ricci, soliton, transitivity, flow, graph,
directions, batch, family. Reports go to stdout (or --out), logs to stderr.
Exit codes: 0 success / MAXIMAL, 1 validation failure, 2 I/O or parse
failure, 3 INCONCLUSIVE, 4 internal limit exceeded.
"""
import argparse
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np
from dotenv import load_dotenv

from data import DataStore, file_hash, generate_corpus
from models import FAMILY_NAMES, FamilySpec, RunReport
from tools import batch, curvature, families, flows, graph_algebras, lie_core, symmetry
from utils import (
    LieToolkitError,
    ParseError,
    Settings,
    TOOL_VERSION,
    format_certificate,
    format_csv,
    format_json,
)

# Load environment variables with override to ensure .env takes precedence
load_dotenv(override=True)

logger = logging.getLogger("app")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3
EXIT_LIMIT = 4


def configure_logging(settings, verbose=0):
    level = settings.log_level
    if verbose == 1:
        level = "INFO"
    elif verbose >= 2:
        level = "DEBUG"
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


# Input resolution

class Loaded:
    """Algebra plus where it came from"""

    def __init__(self, alg, ip=None, dg=None, input_hash=None, name=None):
        self.alg = alg
        self.ip = ip
        self.dg = dg
        self.input_hash = input_hash or alg.fingerprint()
        self.name = name or alg.name


def _family_name(text):
    return text.replace("-", "_")


def _family_spec(args):
    w = [x.strip() for x in args.w.split(",")] if args.w else None
    try:
        return FamilySpec(args.family, n=args.n, w=w, path=args.graph)
    except ValueError as exc:
        raise ParseError(str(exc), field="family") from exc


def load_input(args, store, orthonormal=True):
    """Resolve --family / --graph / positional path into a Loaded algebra"""
    if getattr(args, "family", None):
        spec = _family_spec(args)
        alg, ip = families.build(spec, load_graph=lambda p: store.load_graph(p).graph)
        return Loaded(alg, ip, name=spec.label)
    path = getattr(args, "graph", None) or getattr(args, "path", None)
    if not path:
        raise ParseError("no input given; pass a file, --graph or --family")
    if getattr(args, "graph", None) or store.is_graph_file(path):
        dg = store.load_graph(path)
        return Loaded(graph_algebras.attach_algebra(dg), dg=dg, input_hash=file_hash(store.resolve(path)),
                      name=dg.name)
    alg, ip = store.load_algebra(path)
    if orthonormal:
        alg = batch.orthonormalize(alg, ip)
        ip = None
    return Loaded(alg, ip, input_hash=file_hash(store.resolve(path)))


def emit(args, store, report, csv_header=None, csv_rows=None, summary=None):
    """Write a report to --out or stdout in the requested format"""
    if args.format == "csv" and csv_header is not None:
        text = format_csv(csv_header, csv_rows)
    elif args.format == "text" and summary is not None:
        text = summary
    else:
        text = format_json(report.to_dict())
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info("report written to %s", args.out)
    else:
        sys.stdout.write(text)


def _report(args, subcommand, loaded, result, started):
    return RunReport(subcommand, loaded.input_hash, result, wall_time=time.perf_counter() - started,
                     input_name=loaded.name)


# Subcommands

def cmd_validate(args, settings, store):
    started = time.perf_counter()
    loaded = load_input(args, store, orthonormal=False)
    validation = lie_core.validate(loaded.alg)
    result = validation.to_dict()
    result["status"] = "ok" if validation.ok else "invalid"
    result["dim"] = loaded.alg.dim
    emit(args, store, _report(args, "validate", loaded, result, started),
         ["name", "dim", "ok", "violations"],
         [[loaded.name, loaded.alg.dim, validation.ok, len(validation.violations)]])
    return EXIT_OK if validation.ok else EXIT_INVALID


def _require_valid(alg):
    validation = lie_core.validate(alg)
    if not validation.ok:
        logger.error("input is not a Lie algebra: %d violations", len(validation.violations))
        return False
    return True


def cmd_certify(args, settings, store):
    started = time.perf_counter()
    loaded = load_input(args, store)
    alg = loaded.alg
    if not _require_valid(alg):
        return EXIT_INVALID
    if loaded.dg is not None:
        group = graph_algebras.certification_group(loaded.dg, cap=settings.limit_aut,
                                                   max_vertices=settings.max_vertices)
    else:
        group = symmetry.default_group(alg)
    if args.generators:
        user = store.load_generators(args.generators, alg.dim)
        for g in user.generators:
            if not symmetry.is_orthogonal_automorphism(alg, g):
                logger.error("a supplied generator is not an orthogonal automorphism")
                return EXIT_INVALID
        group = group.extended(user)
    certificate = symmetry.maximality_certificate(alg, group)
    result = certificate.to_dict()
    if args.check_reversible:
        result["two_reversible"] = symmetry.two_reversible_check(alg, group, cap=settings.limit_group).to_dict()
    emit(args, store, _report(args, "certify", loaded, result, started),
         ["name", "dim", "status", "dim_normal", "dim_invariant_normal"],
         [[loaded.name, alg.dim, certificate.status, certificate.dim_normal, certificate.dim_invariant_normal]],
         summary=format_certificate(result))
    return EXIT_OK if certificate.is_maximal else EXIT_INCONCLUSIVE


def cmd_ricci(args, settings, store):
    started = time.perf_counter()
    loaded = load_input(args, store)
    if not _require_valid(loaded.alg):
        return EXIT_INVALID
    result = curvature.ricci_report(loaded.alg)
    result["isotropy"] = curvature.isotropy_irreducibility_diagnostic(loaded.alg)
    emit(args, store, _report(args, "ricci", loaded, result, started),
         ["name", "dim", "scal", "einstein"],
         [[loaded.name, loaded.alg.dim, result["scal"], result["einstein"]]])
    return EXIT_OK


def cmd_soliton(args, settings, store):
    started = time.perf_counter()
    loaded = load_input(args, store)
    if not _require_valid(loaded.alg):
        return EXIT_INVALID
    decomposition = curvature.ricci_soliton_check(loaded.alg)
    result = decomposition.to_dict() if decomposition else {}
    result["status"] = "soliton" if decomposition else "none"
    emit(args, store, _report(args, "soliton", loaded, result, started),
         ["name", "dim", "status", "c"],
         [[loaded.name, loaded.alg.dim, result["status"], result.get("c", "")]])
    return EXIT_OK


def cmd_transitivity(args, settings, store):
    started = time.perf_counter()
    loaded = load_input(args, store)
    if not _require_valid(loaded.alg):
        return EXIT_INVALID
    outcome = lie_core.orbit_transitivity_check(loaded.alg)
    result = outcome.to_dict()
    result["unimodular"] = lie_core.unimodularity_check(loaded.alg)
    emit(args, store, _report(args, "transitivity", loaded, result, started),
         ["name", "dim", "status", "codimension", "unimodular"],
         [[loaded.name, loaded.alg.dim, result["status"], result["codimension"], result["unimodular"]]])
    return EXIT_OK


def _parse_g0(text, store, dim):
    if text is None:
        return None
    if os.path.exists(text):
        data = store._load_json(text)
        return np.array(data.get("gram", data) if isinstance(data, dict) else data, dtype=float)
    values = [float(x) for x in text.split(",")]
    if len(values) == dim:
        return np.diag(values)
    if len(values) == dim * dim:
        return np.array(values).reshape(dim, dim)
    raise ParseError(f"--g0 needs {dim} diagonal entries or {dim * dim} entries", field="g0")


def cmd_flow(args, settings, store):
    started = time.perf_counter()
    loaded = load_input(args, store, orthonormal=False)
    alg = loaded.alg
    if not _require_valid(alg):
        return EXIT_INVALID
    if args.preset:
        a, b = flows.preset(args.preset, args.rho)
    else:
        a, b = args.a, args.b
    g0 = _parse_g0(args.g0, store, alg.dim)
    if g0 is None and loaded.ip is not None:
        g0 = np.array(loaded.ip.gram, dtype=float)
    trajectory = flows.run(alg, g0=g0, a=a, b=b, t_end=args.t_end, step=args.step,
                           normalization=args.normalize, sample_every=args.sample_every,
                           symmetry_tol=settings.tol_symmetry)
    if args.csv:
        store.write_trajectory_csv(trajectory, args.csv)
    result = flows.summarize(trajectory, tol=settings.tol_flow)
    emit(args, store, _report(args, "flow", loaded, result, started),
         trajectory.csv_header(), trajectory.csv_rows())
    return EXIT_OK


def cmd_graph(args, settings, store):
    started = time.perf_counter()
    dg = store.load_graph(args.path)
    result = graph_algebras.graph_report(dg.graph, cap=settings.limit_aut, max_vertices=settings.max_vertices)
    if args.iso:
        other = store.load_graph(args.iso).graph
        isomorphic, mapping = graph_algebras.graph_isomorphic(dg.graph, other, max_vertices=settings.max_vertices)
        result["isomorphic"] = isomorphic
        result["isomorphism"] = mapping
    loaded = Loaded(graph_algebras.attach_algebra(dg), dg=dg, input_hash=file_hash(store.resolve(args.path)),
                    name=dg.name)
    result["status"] = "edge_transitive" if result["edge_transitive"] else "not_edge_transitive"
    emit(args, store, _report(args, "graph", loaded, result, started),
         ["name", "vertices", "edges", "automorphisms", "edge_transitive"],
         [[dg.name, result["vertices"], result["edges"], result["automorphisms"], result["edge_transitive"]]])
    return EXIT_OK


def cmd_directions(args, settings, store):
    started = time.perf_counter()
    dg = store.load_graph(args.path)
    result = graph_algebras.direction_independence_check(
        dg.graph, certify=not args.no_certify, max_edges=settings.max_direction_edges,
        cap=settings.limit_aut, max_vertices=settings.max_vertices)
    result["status"] = "consistent" if result["consistent"] else "mismatch"
    loaded = Loaded(graph_algebras.attach_algebra(dg), dg=dg, input_hash=file_hash(store.resolve(args.path)),
                    name=dg.name)
    emit(args, store, _report(args, "directions", loaded, result, started),
         ["name", "directions", "consistent", "mismatches"],
         [[dg.name, result["directions"], result["consistent"], len(result["mismatches"])]])
    return EXIT_OK if result["consistent"] else EXIT_INVALID


def cmd_batch(args, settings, store):
    out_dir = args.out or os.path.join(settings.report_dir, "batch")
    rows = batch.run_batch(args.corpus_dir, out_dir, jobs=settings.jobs, cap=settings.limit_aut,
                           max_vertices=settings.max_vertices)
    sys.stdout.write(format_csv(batch.SUMMARY_HEADER, [[r[k] for k in batch.SUMMARY_HEADER] for r in rows]))
    return EXIT_OK


def cmd_family(args, settings, store):
    spec = _family_spec(args)
    alg, _ = families.build(spec, load_graph=lambda p: store.load_graph(p).graph)
    data = alg.to_dict()
    data["metadata"] = alg.metadata
    text = format_json(data)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_corpus(args, settings, store):
    for path in generate_corpus(args.directory):
        sys.stdout.write(f"{path}\n")
    return EXIT_OK


# Parser

def _add_input(parser, positional=True):
    if positional:
        parser.add_argument("path", nargs="?", help="Lie algebra JSON or graph file")
    parser.add_argument("--graph", help="graph file (text or JSON)")
    parser.add_argument("--family", type=_family_name, choices=FAMILY_NAMES, metavar="NAME",
                        help="built-in family, e.g. almost-abelian")
    parser.add_argument("--n", type=int, help="family size parameter")
    parser.add_argument("--w", help="comma-separated rationals for almost-abelian")


def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", help="write the report here instead of stdout")
    shared.add_argument("--format", choices=["json", "csv", "text"], default="json")
    shared.add_argument("--jobs", type=int, help="batch worker processes")
    shared.add_argument("--limit-aut", type=int, help="graph automorphism cap")
    shared.add_argument("--limit-group", type=int, help="group exploration cap")
    shared.add_argument("--max-vertices", type=int, help="graph enumeration vertex limit")
    shared.add_argument("--tol-flow", type=float, help="self-similarity threshold")
    shared.add_argument("--tol-symmetry", type=float, help="initial Gram symmetry tolerance")
    shared.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="liemax", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[shared], help="check antisymmetry and Jacobi")
    _add_input(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("certify", parents=[shared], help="maximality certificate")
    _add_input(p)
    p.add_argument("--generators", help="JSON file with extra orthogonal automorphisms")
    p.add_argument("--check-reversible", action="store_true", help="also run the 2-reversibility check")
    p.set_defaults(func=cmd_certify)

    for name, func, text in (("ricci", cmd_ricci, "Ricci tensor and scalar curvature"),
                             ("soliton", cmd_soliton, "Ric = cI + D decomposition"),
                             ("transitivity", cmd_transitivity, "R>0 Aut(g) orbit transitivity")):
        p = sub.add_parser(name, parents=[shared], help=text)
        _add_input(p)
        p.set_defaults(func=func)

    p = sub.add_parser("flow", parents=[shared], help="integrate a homogeneous metric flow")
    _add_input(p)
    p.add_argument("--preset", choices=["ricci", "yamabe", "bourguignon"])
    p.add_argument("--rho", type=float, help="Ricci-Bourguignon parameter")
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--normalize", choices=["none", "unit_bracket_norm", "unit_determinant"],
                   default="unit_determinant")
    p.add_argument("--sample-every", type=int, default=10)
    p.add_argument("--g0", help="initial Gram: JSON file, n diagonal entries or n*n entries")
    p.add_argument("--csv", help="trajectory CSV path")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("graph", parents=[shared], help="automorphisms, edge-transitivity, isomorphism")
    p.add_argument("path")
    p.add_argument("--iso", help="second graph to test for isomorphism")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("directions", parents=[shared], help="direction independence sweep")
    p.add_argument("path")
    p.add_argument("--no-certify", action="store_true")
    p.set_defaults(func=cmd_directions)

    p = sub.add_parser("batch", parents=[shared], help="certify a corpus directory")
    p.add_argument("corpus_dir")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("family", parents=[shared], help="print a built-in family as algebra JSON")
    p.add_argument("family", type=_family_name, choices=FAMILY_NAMES)
    p.add_argument("--n", type=int)
    p.add_argument("--w")
    p.add_argument("--graph")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("corpus", parents=[shared], help="write the shipped corpus files")
    p.add_argument("directory", nargs="?", default="corpus")
    p.set_defaults(func=cmd_corpus)
    return parser


def settings_from_args(args):
    settings = Settings.from_env()
    overrides = {
        "jobs": args.jobs,
        "limit_aut": args.limit_aut,
        "limit_group": args.limit_group,
        "max_vertices": args.max_vertices,
        "tol_flow": args.tol_flow,
        "tol_symmetry": args.tol_symmetry,
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(settings, key, value)
    return settings


def main(argv=None):
    args = build_parser().parse_args(argv)
    settings = settings_from_args(args)
    configure_logging(settings, args.verbose)
    logger.debug("settings: %s", settings.to_dict())
    store = DataStore()
    try:
        return args.func(args, settings, store)
    except LieToolkitError as exc:
        logger.error("%s", exc)
        return exc.exit_code
    except (OSError, UnicodeDecodeError) as exc:
        logger.error("cannot read input: %s", exc)
        return EXIT_PARSE
    except (TypeError, ValueError) as exc:
        logger.error("invalid argument: %s", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
