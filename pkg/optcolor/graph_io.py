"""
Graph ingestion and generation.

Covers the input side of the experiments: Matrix Market and edge-list
loaders, an R-MAT generator with the ER/G/B presets, two mesh-like
generators standing in for simplicial meshes, vertex-index shuffling, and
the edge-list / coloring text writers.
"""

import io
import os
from dataclasses import dataclass
from typing import BinaryIO, Dict, Iterator, List, Optional, TextIO, Tuple, Union

import numpy as np

from optcolor.coloring import UNCOLORED
from optcolor.errors import (
    CapacityError,
    GraphInputError,
    GraphParseError,
    UnsupportedFormatError,
)
from optcolor.graph import VERTEX_DTYPE, Graph, build_graph

Stream = Union[BinaryIO, TextIO]

# Largest scale whose vertex ids still fit a signed 64-bit id
MAX_RMAT_SCALE = 62
PROBABILITY_TOLERANCE = 1e-9

# Header directive written by write_edge_list so trailing isolated
# vertices survive a round trip through load_edge_list(auto)
VERTICES_DIRECTIVE = '# vertices'


# ========================================
# R-MAT parameters and presets
# ========================================

@dataclass(frozen=True)
class RmatParams:
    """
    Recursive-matrix generator parameters.

    Attributes:
        scale: The graph has 2**scale vertices
        edge_factor: edge_factor * 2**scale directed samples are drawn
        a, b, c, d: Quadrant probabilities (top-left, top-right, bottom-left, bottom-right)
        seed: Seed of the random stream
    """
    scale: int
    edge_factor: int
    a: float
    b: float
    c: float
    d: float
    seed: int = 0

    def validate(self) -> None:
        """
        Raises:
            GraphInputError: If the probabilities or sizes are out of range
            CapacityError: If 2**scale vertex ids do not fit the id width
        """
        if self.scale < 0:
            raise GraphInputError(f"scale must be >= 0, got {self.scale}")
        if self.scale > MAX_RMAT_SCALE:
            raise CapacityError(
                f"scale {self.scale} exceeds the 64-bit vertex-id width (max {MAX_RMAT_SCALE})")
        if self.edge_factor < 1:
            raise GraphInputError(f"edge_factor must be >= 1, got {self.edge_factor}")
        for name in ('a', 'b', 'c', 'd'):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise GraphInputError(f"probability {name}={p} outside [0, 1]")
        total = self.a + self.b + self.c + self.d
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise GraphInputError(f"a+b+c+d must equal 1, got {total}")

    @property
    def num_vertices(self) -> int:
        return 1 << self.scale

    @property
    def num_samples(self) -> int:
        return self.edge_factor << self.scale


# Quadrant probabilities of the ER / "good" / "bad" instances used in the
# speculative coloring literature. Convention, overridable from the CLI.
RMAT_PRESETS: Dict[str, Tuple[float, float, float, float]] = {
    'rmat-er': (0.25, 0.25, 0.25, 0.25),
    'rmat-g': (0.45, 0.15, 0.15, 0.25),
    'rmat-b': (0.55, 0.15, 0.15, 0.15),
}


def rmat_preset(name: str, scale: int, edge_factor: int = 8, seed: int = 0) -> RmatParams:
    """
    Build RmatParams from a named preset.

    Raises:
        GraphInputError: If the preset name is unknown
    """
    try:
        a, b, c, d = RMAT_PRESETS[name]
    except KeyError:
        raise GraphInputError(
            f"unknown R-MAT preset {name!r}; choose one of {', '.join(sorted(RMAT_PRESETS))}")
    return RmatParams(scale=scale, edge_factor=edge_factor, a=a, b=b, c=c, d=d, seed=seed)


def generate_rmat(p: RmatParams) -> Graph:
    """
    Generate a plain R-MAT graph (no per-level noise).

    Each of the edge_factor * 2**scale samples descends `scale` levels,
    picking a quadrant with probabilities (a, b, c, d) at every level.
    Self-loops are dropped and duplicates merged afterwards, so the edge
    count is at most the number of samples.

    Args:
        p: Generator parameters

    Returns:
        Graph with 2**scale vertices; bit-identical for a fixed seed
    """
    p.validate()
    n = p.num_vertices
    m = p.num_samples
    rng = np.random.default_rng(p.seed)

    src = np.zeros(m, dtype=VERTEX_DTYPE)
    dst = np.zeros(m, dtype=VERTEX_DTYPE)
    ab = p.a + p.b
    abc = ab + p.c
    for _ in range(p.scale):
        r = rng.random(m)
        row_bit = (r >= ab).astype(VERTEX_DTYPE)
        col_bit = (((r >= p.a) & (r < ab)) | (r >= abc)).astype(VERTEX_DTYPE)
        src = (src << 1) | row_bit
        dst = (dst << 1) | col_bit

    return build_graph(np.stack([src, dst], axis=1), n)


# ========================================
# Mesh-like generators
# ========================================

def grid_mesh_2d(rows: int, cols: int) -> Graph:
    """
    Vertex graph of a triangulated rows x cols grid (each cell split by one diagonal).

    Interior vertices have degree 6, like a structured 2D triangle mesh.
    """
    if rows < 1 or cols < 1:
        raise GraphInputError(f"grid needs rows, cols >= 1, got {rows}x{cols}")
    ids = np.arange(rows * cols, dtype=VERTEX_DTYPE).reshape(rows, cols)
    pairs = [
        np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1),
        np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1),
        np.stack([ids[:-1, :-1].ravel(), ids[1:, 1:].ravel()], axis=1),
    ]
    return build_graph(np.concatenate(pairs), rows * cols)


def lattice_mesh_3d(n: int) -> Graph:
    """
    Vertex graph of an n x n x n cube lattice with face and body diagonals.

    Interior vertices have degree 14, like a structured tetrahedral mesh.
    """
    if n < 1:
        raise GraphInputError(f"lattice needs n >= 1, got {n}")
    ids = np.arange(n ** 3, dtype=VERTEX_DTYPE).reshape(n, n, n)
    steps = [(1, 0, 0), (0, 1, 0), (0, 0, 1),
             (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    pairs = []
    for di, dj, dk in steps:
        a = ids[:n - di, :n - dj, :n - dk].ravel()
        b = ids[di:, dj:, dk:].ravel()
        pairs.append(np.stack([a, b], axis=1))
    return build_graph(np.concatenate(pairs), n ** 3)


# ========================================
# Shuffling
# ========================================

def relabel(g: Graph, permutation: np.ndarray) -> Graph:
    """
    Rename vertex v to permutation[v] and rebuild the CSR arrays.

    Raises:
        GraphInputError: If permutation is not a permutation of range(|V|)
    """
    perm = np.asarray(permutation, dtype=VERTEX_DTYPE)
    n = g.num_vertices
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise GraphInputError(f"not a permutation of {n} vertices")
    src = np.repeat(np.arange(n, dtype=VERTEX_DTYPE), g.degrees())
    keep = src < g.neighbors
    pairs = np.stack([perm[src[keep]], perm[g.neighbors[keep]]], axis=1)
    return build_graph(pairs, n)


def shuffle_vertices(g: Graph, seed: int) -> Tuple[Graph, np.ndarray]:
    """
    Relabel g under a uniform random permutation drawn from seed.

    Destroys the locality of the original numbering; adjacency lists are
    re-sorted under the new ids.

    Returns:
        (relabeled graph, permutation) where old vertex v became permutation[v]
    """
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.num_vertices).astype(VERTEX_DTYPE)
    return relabel(g, perm), perm


# ========================================
# Text loaders
# ========================================

def _lines(source: Stream) -> Iterator[Tuple[int, str]]:
    """Yield (1-based line number, decoded line) from a byte or text stream."""
    for number, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode('utf-8', errors='replace')
        yield number, raw.rstrip('\r\n')


def _source_name(source: Stream, name: Optional[str]) -> Optional[str]:
    if name:
        return name
    stream_name = getattr(source, 'name', None)
    return stream_name if isinstance(stream_name, str) else None


MM_FIELDS = {'real', 'integer', 'pattern', 'complex'}
MM_SYMMETRIES = {'general', 'symmetric', 'skew-symmetric', 'hermitian'}


def load_matrix_market(source: Stream, name: Optional[str] = None) -> Graph:
    """
    Load the sparsity pattern of a square Matrix Market coordinate matrix as a graph.

    Indices are converted from 1-based to 0-based, values are parsed and
    discarded, diagonal entries are dropped, and a "general" matrix is
    symmetrised (edge {i,j} kept if either (i,j) or (j,i) appears).

    Args:
        source: Byte or text stream positioned at the header line
        name: Name used in error messages (defaults to the stream's name)

    Returns:
        Graph with one vertex per matrix row

    Raises:
        GraphParseError: Malformed header, size line or entry (with line number)
        UnsupportedFormatError: complex field, array format or hermitian symmetry
        GraphInputError: Non-square matrix or entry index outside the declared dims
    """
    label = _source_name(source, name)
    lines = _lines(source)

    try:
        number, header = next(lines)
    except StopIteration:
        raise GraphParseError("empty input, expected %%MatrixMarket header", 1, label)

    tokens = header.strip().split()
    if len(tokens) != 5 or tokens[0].lower() != '%%matrixmarket':
        raise GraphParseError(f"malformed header {header.strip()!r}", number, label)
    obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
    if obj != 'matrix':
        raise UnsupportedFormatError(f"unsupported object {obj!r}", number, label)
    if fmt == 'array':
        raise UnsupportedFormatError("dense 'array' format is not supported", number, label)
    if fmt != 'coordinate':
        raise GraphParseError(f"unknown format {fmt!r}", number, label)
    if field not in MM_FIELDS:
        raise GraphParseError(f"unknown field {field!r}", number, label)
    if field == 'complex':
        raise UnsupportedFormatError("'complex' field is not supported", number, label)
    if symmetry not in MM_SYMMETRIES:
        raise GraphParseError(f"unknown symmetry {symmetry!r}", number, label)
    if symmetry == 'hermitian':
        raise UnsupportedFormatError("'hermitian' symmetry is not supported", number, label)

    size = None
    for number, line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith('%'):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise GraphParseError(f"expected 'rows cols entries', got {stripped!r}", number, label)
        try:
            size = tuple(int(x) for x in parts)
        except ValueError:
            raise GraphParseError(f"non-integer size line {stripped!r}", number, label)
        break
    if size is None:
        raise GraphParseError("missing size line", number, label)

    rows, cols, nnz = size
    if rows < 0 or cols < 0 or nnz < 0:
        raise GraphParseError(f"negative size {size}", number, label)
    if rows != cols:
        raise GraphInputError(f"{label or 'matrix'}: matrix is {rows}x{cols}; a graph needs a square matrix")

    arity = 2 if field == 'pattern' else 3
    pairs: List[Tuple[int, int]] = []
    for number, line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith('%'):
            continue
        parts = stripped.split()
        if len(parts) != arity:
            raise GraphParseError(
                f"expected {arity} tokens for a {field} entry, got {len(parts)}", number, label)
        try:
            i, j = int(parts[0]), int(parts[1])
            if arity == 3:
                (int if field == 'integer' else float)(parts[2])
        except ValueError:
            raise GraphParseError(f"malformed entry {stripped!r}", number, label)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise GraphInputError(
                f"{label or 'line'}:{number}: entry ({i}, {j}) outside declared dims {rows}x{cols}")
        pairs.append((i - 1, j - 1))

    if len(pairs) != nnz:
        raise GraphParseError(f"header declares {nnz} entries, found {len(pairs)}", number, label)

    return build_graph(pairs, rows)


def load_edge_list(source: Stream, num_vertices: Optional[int] = None,
                   name: Optional[str] = None) -> Graph:
    """
    Load a whitespace-separated "u v" edge list (0-based ids).

    Lines starting with '#' are comments and blank lines are ignored.
    With num_vertices=None ("auto") the vertex count is 1 + the largest id
    seen, raised to the count announced by a "# vertices N" header line
    when one is present.

    Raises:
        GraphParseError: Non-integer token or wrong token count (with line number)
        GraphInputError: An id is negative or >= an explicit num_vertices
    """
    label = _source_name(source, name)
    pairs: List[Tuple[int, int]] = []
    declared = 0
    for number, line in _lines(source):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith('#'):
            if stripped.startswith(VERTICES_DIRECTIVE):
                rest = stripped[len(VERTICES_DIRECTIVE):].strip()
                if rest.isdigit():
                    declared = int(rest)
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {stripped!r}", number, label)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex id in {stripped!r}", number, label)
        if u < 0 or v < 0:
            raise GraphParseError(f"negative vertex id in {stripped!r}", number, label)
        pairs.append((u, v))

    if num_vertices is None:
        largest = max((max(u, v) for u, v in pairs), default=-1)
        num_vertices = max(largest + 1, declared)

    return build_graph(pairs, num_vertices)


def load_graph(path: Union[str, os.PathLike], fmt: Optional[str] = None) -> Graph:
    """
    Open a graph file and dispatch on format.

    Args:
        path: File path
        fmt: 'mm' or 'edgelist'; None infers from the extension (.mtx/.mm -> mm)
    """
    path = os.fspath(path)
    if fmt is None:
        fmt = 'mm' if path.lower().endswith(('.mtx', '.mm')) else 'edgelist'
    with open(path, 'rb') as f:
        if fmt == 'mm':
            return load_matrix_market(f, name=path)
        if fmt == 'edgelist':
            return load_edge_list(f, name=path)
    raise GraphInputError(f"unknown graph format {fmt!r}; use 'mm' or 'edgelist'")


# ========================================
# Writers
# ========================================

def write_edge_list(g: Graph, sink: TextIO) -> None:
    """Write g as a "u v" edge list (u < v) with a vertex-count header."""
    sink.write(f"{VERTICES_DIRECTIVE} {g.num_vertices}\n")
    sink.write(f"# edges {g.num_edges}\n")
    src = np.repeat(np.arange(g.num_vertices, dtype=VERTEX_DTYPE), g.degrees())
    keep = src < g.neighbors
    block = np.stack([src[keep], g.neighbors[keep]], axis=1)
    if block.size:
        buf = io.StringIO()
        np.savetxt(buf, block, fmt='%d', delimiter=' ')
        sink.write(buf.getvalue())


def write_coloring(colors, sink: TextIO) -> None:
    """Write one color integer per line; line i holds the color of vertex i."""
    values = colors.colors if hasattr(colors, 'colors') else colors
    for value in np.asarray(values).tolist():
        sink.write(f"{value}\n")


def read_coloring(source: Stream, name: Optional[str] = None) -> np.ndarray:
    """
    Read a one-integer-per-line coloring file. Blank lines are not allowed
    except at the very end.

    Raises:
        GraphParseError: Non-integer line or a negative value other than
            UNCOLORED (with line number)
    """
    label = _source_name(source, name)
    values: List[int] = []
    pending_blank = None
    for number, line in _lines(source):
        stripped = line.strip()
        if not stripped:
            pending_blank = pending_blank or number
            continue
        if pending_blank is not None:
            raise GraphParseError("blank line inside coloring", pending_blank, label)
        try:
            value = int(stripped)
        except ValueError:
            raise GraphParseError(f"expected a color integer, got {stripped!r}", number, label)
        if value < UNCOLORED:
            raise GraphParseError(f"color must be non-negative or {UNCOLORED}, got {value}", number, label)
        values.append(value)
    return np.array(values, dtype=VERTEX_DTYPE)
