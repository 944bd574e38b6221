import logging
from fractions import Fraction
from pathlib import Path

from data.data_store import DataStore
from models.graph import SimpleGraph
from tools import families
from tools.graph_algebras import complete, cycle, path, petersen, star

logger = logging.getLogger(__name__)


def figure_graphs():
    """The three graphs whose algebras are maximal metrics on R^10"""
    return [complete(4), cycle(5), star(4, isolated=1)]


def acceptance_graphs():
    """Edge-transitive graphs used for the maximality sweep"""
    graphs = [complete(n) for n in range(3, 6)]
    graphs += [cycle(n) for n in range(3, 9)]
    graphs += [star(m) for m in range(1, 7)]
    graphs.append(petersen())
    return graphs


def random_w(rng, n, low=-5, high=5, max_den=4):
    """Random rational w of length n - 1 with no zero entries"""
    w = []
    while len(w) < n - 1:
        x = Fraction(rng.randint(low, high), rng.randint(1, max_den))
        if x:
            w.append(x)
    return w


def random_graph(rng, max_vertices=8, edge_probability=0.4):
    p = rng.randint(1, max_vertices)
    vertices = [str(i + 1) for i in range(p)]
    edges = [(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1:]
             if rng.random() < edge_probability]
    return SimpleGraph(vertices, edges, name=f"random_p{p}_q{len(edges)}")


def generate_corpus(directory, include_negative=True):
    """
    Write the shipped corpus: figure graphs, P4, Petersen and a few algebras

    Args:
        directory: target directory (created if missing)
        include_negative: also write the P4 negative control

    Returns:
        List of written paths
    """
    store = DataStore()
    directory = Path(directory)
    written = []
    graphs = figure_graphs() + [petersen()]
    if include_negative:
        graphs.append(path(4))
    for g in graphs:
        target = directory / f"{g.name.lower().replace('+', '_plus')}.txt"
        store.save_graph_text(g, target)
        written.append(target)

    algebras = [
        families.heisenberg_sum(3),
        families.almost_abelian([1, 2]),
        families.motion_group_r2(),
    ]
    for alg in algebras:
        stem = alg.name.replace("(", "_").replace(")", "").replace(",", "_").replace("/", "over")
        target = directory / f"{stem}.json"
        data = alg.to_dict()
        data["metadata"] = alg.metadata
        store.save_json(data, target)
        written.append(target)
    logger.info("wrote %d corpus files to %s", len(written), directory)
    return written
