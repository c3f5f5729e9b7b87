import io

import networkx as nx
import numpy as np
import pytest
from scipy import stats
from scipy.io import mmread

from optcolor.errors import (
    CapacityError,
    GraphInputError,
    GraphParseError,
    UnsupportedFormatError,
)
from optcolor.graph import build_graph, check_invariants
from optcolor.graph_io import (
    RmatParams,
    generate_rmat,
    grid_mesh_2d,
    lattice_mesh_3d,
    load_edge_list,
    load_graph,
    load_matrix_market,
    read_coloring,
    relabel,
    rmat_preset,
    shuffle_vertices,
    write_coloring,
    write_edge_list,
)


def mm(text: str) -> io.BytesIO:
    return io.BytesIO(text.encode())


PATH_MM = """%%MatrixMarket matrix coordinate pattern symmetric
3 3 2
2 1
3 2
"""


# ========================================
# Matrix Market
# ========================================

def test_mm_pattern_symmetric_path():
    g = load_matrix_market(mm(PATH_MM))
    assert g.num_vertices == 3
    assert list(g.edges()) == [(0, 1), (1, 2)]


def test_mm_diagonal_dropped():
    text = PATH_MM.replace("3 3 2", "3 3 3") + "1 1\n"
    g = load_matrix_market(mm(text))
    assert list(g.edges()) == [(0, 1), (1, 2)]


def test_mm_general_symmetrised():
    text = """%%MatrixMarket matrix coordinate integer general
% both orientations of one edge
2 2 2
1 2 7
2 1 7
"""
    g = load_matrix_market(mm(text))
    assert list(g.edges()) == [(0, 1)]


def test_mm_skew_symmetric_read_as_pattern():
    text = """%%MatrixMarket matrix coordinate real skew-symmetric
3 3 2
2 1 -4.0
3 2 1.5
"""
    g = load_matrix_market(mm(text))
    assert list(g.edges()) == [(0, 1), (1, 2)]


def test_mm_real_values_ignored(mm_mesh_path):
    g = load_graph(mm_mesh_path)
    check_invariants(g)
    assert g.num_vertices == 6
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4),
                               (3, 4), (3, 5), (4, 5)]


@pytest.mark.parametrize('header', [
    "%%MatrixMarket matrix coordinate complex general",
    "%%MatrixMarket matrix array real general",
    "%%MatrixMarket matrix coordinate complex hermitian",
    "%%MatrixMarket matrix coordinate real hermitian",
])
def test_mm_unsupported_variants(header):
    with pytest.raises(UnsupportedFormatError) as excinfo:
        load_matrix_market(mm(header + "\n2 2 1\n1 2 1.0 0.0\n"))
    assert excinfo.value.line == 1


def test_mm_malformed_header_reports_line():
    with pytest.raises(GraphParseError) as excinfo:
        load_matrix_market(mm("%%MatrixMarket matrix\n2 2 0\n"), name='bad.mtx')
    assert excinfo.value.line == 1
    assert str(excinfo.value).startswith('bad.mtx:1:')


def test_mm_malformed_entry_reports_line():
    text = "%%MatrixMarket matrix coordinate pattern general\n% c\n3 3 2\n1 2\n2 x\n"
    with pytest.raises(GraphParseError) as excinfo:
        load_matrix_market(mm(text))
    assert excinfo.value.line == 5


def test_mm_index_beyond_dims_is_input_error():
    text = "%%MatrixMarket matrix coordinate pattern general\n3 3 1\n4 1\n"
    with pytest.raises(GraphInputError) as excinfo:
        load_matrix_market(mm(text))
    assert excinfo.type is GraphInputError


def test_mm_non_square_rejected():
    with pytest.raises(GraphInputError):
        load_matrix_market(mm("%%MatrixMarket matrix coordinate pattern general\n2 3 0\n"))


def test_mm_entry_count_mismatch():
    text = "%%MatrixMarket matrix coordinate pattern general\n3 3 3\n1 2\n"
    with pytest.raises(GraphParseError):
        load_matrix_market(mm(text))


# ========================================
# Edge lists
# ========================================

def test_edge_list_path():
    g = load_edge_list(io.BytesIO(b"0 1\n1 2"))
    assert g.num_vertices == 3
    assert list(g.edges()) == [(0, 1), (1, 2)]


def test_edge_list_comments_and_blanks():
    g = load_edge_list(io.StringIO("# comment\n\n0 1\n"))
    assert list(g.edges()) == [(0, 1)]


def test_edge_list_bad_token_line_number():
    with pytest.raises(GraphParseError) as excinfo:
        load_edge_list(io.BytesIO(b"0 x\n"))
    assert excinfo.value.line == 1


def test_edge_list_empty_input():
    assert load_edge_list(io.BytesIO(b"")).num_vertices == 0


def test_edge_list_explicit_vertex_count():
    g = load_edge_list(io.BytesIO(b"0 1\n"), num_vertices=4)
    assert g.num_vertices == 4
    with pytest.raises(GraphInputError):
        load_edge_list(io.BytesIO(b"0 5\n"), num_vertices=4)


def test_edge_list_round_trip_keeps_isolated_vertices():
    g = build_graph([(0, 1), (1, 2)], 6)
    buf = io.StringIO()
    write_edge_list(g, buf)
    loaded = load_edge_list(io.StringIO(buf.getvalue()))
    assert loaded == g


def test_generated_graph_round_trip(tmp_path):
    g = generate_rmat(rmat_preset('rmat-g', scale=8, seed=3))
    path = tmp_path / 'rmat.txt'
    with open(path, 'w') as f:
        write_edge_list(g, f)
    loaded = load_graph(path)
    assert np.array_equal(loaded.offsets, g.offsets)
    assert np.array_equal(loaded.neighbors, g.neighbors)


def test_load_graph_unknown_format(tmp_path):
    path = tmp_path / 'g.txt'
    path.write_text("0 1\n")
    with pytest.raises(GraphInputError):
        load_graph(path, 'graphml')


# ========================================
# Loaders on random valid files
# ========================================

def _edge_set(pairs):
    return {(min(u, v), max(u, v)) for u, v in pairs if u != v}


def _random_mm_text(rng, field, symmetry):
    n = int(rng.integers(1, 30))
    entries = []
    for _ in range(int(rng.integers(0, 3 * n))):
        i, j = (int(x) for x in rng.integers(1, n + 1, size=2))
        if symmetry == 'symmetric' and i < j:
            i, j = j, i
        entries.append((i, j))
    # duplicates and diagonal entries
    if entries:
        entries.append(entries[int(rng.integers(0, len(entries)))])
    diagonal = int(rng.integers(1, n + 1))
    entries.append((diagonal, diagonal))

    lines = [f"%%MatrixMarket matrix coordinate {field} {symmetry}", "% generated"]
    lines.append(f"{n} {n} {len(entries)}")
    for i, j in entries:
        if field == 'pattern':
            lines.append(f"{i} {j}")
        elif field == 'integer':
            lines.append(f"{i} {j} {int(rng.integers(1, 10))}")
        else:
            lines.append(f"{i} {j} {rng.uniform(0.5, 9.5):.6g}")
    return n, "\n".join(lines) + "\n"


@pytest.mark.parametrize('symmetry', ['symmetric', 'general'])
@pytest.mark.parametrize('field', ['pattern', 'real', 'integer'])
def test_random_matrix_market_files(tmp_path, field, symmetry):
    rng = np.random.default_rng(sum(map(ord, field + symmetry)))
    for k in range(25):
        n, text = _random_mm_text(rng, field, symmetry)
        path = tmp_path / f"m{k}.mtx"
        path.write_text(text)

        g = load_graph(path)
        check_invariants(g)
        reference = nx.from_scipy_sparse_array(mmread(str(path)))
        assert g.num_vertices == n == reference.number_of_nodes()
        assert set(g.edges()) == _edge_set(reference.edges())


def test_random_edge_list_files(tmp_path):
    rng = np.random.default_rng(5)
    for k in range(50):
        n = int(rng.integers(1, 40))
        pairs = [tuple(int(x) for x in rng.integers(0, n, size=2))
                 for _ in range(int(rng.integers(1, 3 * n)))]
        pairs.append(pairs[0])
        loop = int(rng.integers(0, n))
        pairs.append((loop, loop))

        lines = ["# generated"]
        for u, v in pairs:
            roll = rng.random()
            if roll < 0.1:
                lines.append("")
            elif roll < 0.2:
                lines.append("# between edges")
            lines.append(f"{u}  {v}" if roll > 0.9 else f"{u} {v}")
        path = tmp_path / f"e{k}.txt"
        path.write_text("\n".join(lines) + "\n")

        g = load_graph(path)
        check_invariants(g)
        reference = nx.read_edgelist(path, nodetype=int, data=False)
        assert g.num_vertices == max(max(p) for p in pairs) + 1
        assert set(g.edges()) == _edge_set(reference.edges())


# ========================================
# Colorings on disk
# ========================================

def test_coloring_file_round_trip():
    buf = io.StringIO()
    write_coloring([0, 1, 0, 2], buf)
    assert buf.getvalue() == "0\n1\n0\n2\n"
    assert read_coloring(io.StringIO(buf.getvalue())).tolist() == [0, 1, 0, 2]


def test_coloring_file_bad_line():
    with pytest.raises(GraphParseError) as excinfo:
        read_coloring(io.StringIO("0\n1\nred\n"))
    assert excinfo.value.line == 3


def test_coloring_file_rejects_negative_color():
    assert read_coloring(io.StringIO("0\n-1\n")).tolist() == [0, -1]
    with pytest.raises(GraphParseError) as excinfo:
        read_coloring(io.StringIO("-5\n1\n-5\n"))
    assert excinfo.value.line == 1


# ========================================
# R-MAT
# ========================================

def test_rmat_scale_zero():
    g = generate_rmat(RmatParams(scale=0, edge_factor=1, a=0.25, b=0.25, c=0.25, d=0.25))
    assert g.num_vertices == 1
    assert g.num_edges == 0


def test_rmat_deterministic_for_seed():
    p = rmat_preset('rmat-b', scale=9, seed=11)
    assert generate_rmat(p) == generate_rmat(p)
    assert generate_rmat(p) != generate_rmat(rmat_preset('rmat-b', scale=9, seed=12))


def test_rmat_edge_count_bounded_by_samples():
    p = rmat_preset('rmat-b', scale=10, edge_factor=8, seed=2)
    g = generate_rmat(p)
    check_invariants(g)
    assert g.num_vertices == 1024
    assert g.num_edges <= p.num_samples


def test_rmat_capacity_error():
    with pytest.raises(CapacityError):
        generate_rmat(rmat_preset('rmat-er', scale=63))


def test_rmat_rejects_bad_probabilities():
    with pytest.raises(GraphInputError):
        generate_rmat(RmatParams(scale=4, edge_factor=1, a=0.5, b=0.5, c=0.5, d=0.0))


def test_rmat_unknown_preset():
    with pytest.raises(GraphInputError):
        rmat_preset('rmat-x', scale=4)


def test_rmat_er_degrees_are_binomial():
    p = rmat_preset('rmat-er', scale=10, edge_factor=8, seed=1)
    g = generate_rmat(p)
    n, m = p.num_vertices, p.num_samples

    # An unordered pair is an edge iff either orientation was drawn at least once
    q = 1.0 - (1.0 - 2.0 / n ** 2) ** m
    law = stats.binom(n - 1, q)
    lo = 0
    while law.cdf(lo) * n < 5:
        lo += 1
    hi = n - 1
    while law.sf(hi - 1) * n < 5:
        hi -= 1

    degrees = g.degrees()
    observed = [np.sum(degrees <= lo)]
    expected = [law.cdf(lo) * n]
    for k in range(lo + 1, hi):
        observed.append(np.sum(degrees == k))
        expected.append(law.pmf(k) * n)
    observed.append(np.sum(degrees >= hi))
    expected.append(law.sf(hi - 1) * n)

    _, p_value = stats.chisquare(np.array(observed, dtype=float), np.array(expected))
    assert p_value > 0.01


# ========================================
# Meshes and shuffling
# ========================================

def test_grid_mesh_interior_degree():
    g = grid_mesh_2d(3, 3)
    check_invariants(g)
    assert g.degree(4) == 6
    assert g.num_edges == 6 + 6 + 4


def test_lattice_mesh_interior_degree():
    g = lattice_mesh_3d(3)
    check_invariants(g)
    assert g.degree(13) == 14
    assert g.max_degree == 14


def test_shuffle_preserves_degree_multiset(mesh2d):
    shuffled, perm = shuffle_vertices(mesh2d, seed=9)
    assert sorted(shuffled.degrees().tolist()) == sorted(mesh2d.degrees().tolist())
    assert shuffled.num_edges == mesh2d.num_edges
    assert sorted(perm.tolist()) == list(range(mesh2d.num_vertices))
    check_invariants(shuffled)


def test_shuffle_triangle_stays_triangle(triangle):
    shuffled, _ = shuffle_vertices(triangle, seed=123)
    assert shuffled == triangle


def test_relabel_path_by_hand(path3):
    g = relabel(path3, np.array([2, 0, 1]))
    assert list(g.edges()) == [(0, 1), (0, 2)]


def test_relabel_rejects_non_permutation(path3):
    with pytest.raises(GraphInputError):
        relabel(path3, np.array([0, 0, 1]))


def test_shuffle_maps_every_edge():
    g = generate_rmat(rmat_preset('rmat-g', scale=6, seed=4))
    shuffled, perm = shuffle_vertices(g, seed=4)
    mapped = {frozenset((int(perm[u]), int(perm[v]))) for u, v in g.edges()}
    assert mapped == {frozenset(e) for e in shuffled.edges()}
