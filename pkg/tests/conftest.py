import numpy as np
import pytest

from qrank.services.generators import gen_cycle, gen_scale_free, gen_tree
from qrank.services.graph import from_edge_list


@pytest.fixture
def single_edge():
    """0 -> 1."""
    return from_edge_list(2, [(0, 1)])


@pytest.fixture
def cycle3():
    return gen_cycle(3)


@pytest.fixture
def small_tree():
    """Binary tree with two generations below the root (7 nodes)."""
    return gen_tree(2, 2)


@pytest.fixture
def scale_free():
    return gen_scale_free(16, 1, seed=3)


@pytest.fixture
def edge_list_file(tmp_path):
    path = tmp_path / "tree.txt"
    path.write_text(
        "# small tree\n7\n1 0\n2 0\n3 1\n4 1\n5 2\n6 2\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
