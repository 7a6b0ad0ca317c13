"""
Pytest configuration and shared fixtures.
Pin env-driven settings before package imports so a local .env cannot change results.
"""
import os
import sys

os.environ["RECORD_TIMINGS"] = "false"
os.environ.setdefault("LOG_LEVEL", "WARNING")

# Ensure the packages are importable when running from the project root
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from benchmark import synthetic_graphs as sg
from graphcolor.graph_core import format_matrix_market, from_edge_list


@pytest.fixture
def p4():
    """Path 0-1-2-3."""
    return sg.path(4)


@pytest.fixture
def two_edges():
    return from_edge_list(4, [(0, 1), (2, 3)])


@pytest.fixture
def triangle_with_tail():
    """Triangle 0-1-2 plus pendant 3 on vertex 2."""
    return from_edge_list(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.fixture
def petersen():
    return sg.petersen()


@pytest.fixture
def small_corpus(tmp_path):
    """Directory of six small Matrix Market graphs."""
    graphs = {
        "a_path": sg.path(7),
        "b_cycle": sg.cycle(9),
        "c_petersen": sg.petersen(),
        "d_crown": sg.crown(4),
        "e_gnp": sg.gnp(30, 0.2, seed=3),
        "f_geo": sg.random_geometric(40, 0.3, seed=5),
    }
    for name, g in graphs.items():
        (tmp_path / f"{name}.mtx").write_text(format_matrix_market(g))
    return tmp_path
