import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from weylgraphs import config  # noqa: E402
from weylgraphs.graph import cycle, combine, CARTESIAN_PRODUCT  # noqa: E402
from weylgraphs.recognition import build_locally_f4, wf4, wf4_twisted  # noqa: E402
from weylgraphs.roots import root_system, weyl_graph  # noqa: E402


@pytest.fixture(autouse=True)
def default_config():
    config.activate(config.DEFAULT_CONFIG)
    yield
    config.activate(config.DEFAULT_CONFIG)


@pytest.fixture(scope='session')
def weyl():
    """weyl('F', 4) -> W(F4), cached per session"""
    cache = {}

    def get(label, rank):
        if (label, rank) not in cache:
            cache[(label, rank)] = weyl_graph(root_system(label, rank))
        return cache[(label, rank)]
    return get


@pytest.fixture(scope='session')
def wf4_graph():
    return wf4()


@pytest.fixture(scope='session')
def twisted_wf4():
    return wf4_twisted()


@pytest.fixture(scope='session')
def torus_blocks():
    """C4 x C4 x C4: bipartite, 6-regular, 64 blocks"""
    c4 = cycle(4)
    return combine(combine(c4, c4, CARTESIAN_PRODUCT), c4, CARTESIAN_PRODUCT)


@pytest.fixture(scope='session')
def torus_build(torus_blocks):
    return build_locally_f4(torus_blocks)
