import random

import pytest

from data.data_store import DataStore
from models.graph import DirectedGraph
from tools import families
from tools.graph_algebras import attach_algebra, complete, cycle, path, petersen, star


@pytest.fixture
def h3():
    return families.heisenberg_sum(3)


@pytest.fixture
def s_w12():
    return families.almost_abelian([1, 2])


@pytest.fixture
def abelian3():
    return families.abelian(3)


@pytest.fixture
def motion():
    return families.motion_group_r2()


@pytest.fixture
def p4_graph():
    return path(4)


@pytest.fixture
def p4_directed(p4_graph):
    return DirectedGraph.canonical(p4_graph)


@pytest.fixture
def k4_algebra():
    return attach_algebra(DirectedGraph.canonical(complete(4)))


@pytest.fixture
def store(tmp_path):
    return DataStore(base_dir=tmp_path, report_dir=tmp_path / "reports")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def graph_corpus(tmp_path):
    """K4, C5 and Petersen as text graph files"""
    directory = tmp_path / "corpus"
    store = DataStore()
    for g in (complete(4), cycle(5), petersen()):
        store.save_graph_text(g, directory / f"{g.name.lower()}.txt")
    return directory


@pytest.fixture
def star3():
    return star(3)
