"""
Shared fixtures: small hand-checkable graphs and three mesh-like inputs.
"""

import pytest

from optcolor.graph import Graph, build_graph
from optcolor.graph_io import grid_mesh_2d, lattice_mesh_3d


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run the long statistical checks')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def path3() -> Graph:
    return build_graph([(0, 1), (1, 2)], 3)


@pytest.fixture
def triangle() -> Graph:
    return build_graph([(0, 1), (1, 2), (2, 0)], 3)


@pytest.fixture
def cycle5() -> Graph:
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5)


@pytest.fixture
def star4() -> Graph:
    # center 0, leaves 1..4
    return build_graph([(0, k) for k in range(1, 5)], 5)


@pytest.fixture
def k2() -> Graph:
    return build_graph([(0, 1)], 2)


@pytest.fixture
def mesh2d() -> Graph:
    return grid_mesh_2d(12, 12)


@pytest.fixture
def mesh3d() -> Graph:
    return lattice_mesh_3d(5)


MM_MESH = """%%MatrixMarket matrix coordinate real symmetric
% small triangulated strip, lower triangle only
6 6 11
1 1 4.0
2 1 -1.0
3 1 -1.0
3 2 -1.0
4 2 -1.0
4 3 -1.0
5 3 -1.0
5 4 -1.0
6 4 -1.0
6 5 -1.0
6 6 4.0
"""


@pytest.fixture
def mm_mesh_path(tmp_path):
    path = tmp_path / 'strip.mtx'
    path.write_text(MM_MESH)
    return path


@pytest.fixture
def mesh_fixtures(mesh2d, mesh3d, mm_mesh_path):
    from optcolor.graph_io import load_graph
    return {'mesh2d': mesh2d, 'mesh3d': mesh3d, 'strip': load_graph(mm_mesh_path)}
