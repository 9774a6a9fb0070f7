"""Weighted simple graphs with a canonical directed orientation.

Every undirected edge {i, j} is stored exactly once as the directed pair
(min(i, j), max(i, j)).  Node ids are 1-based in the public API.  Vectors
indexed by nodes or edges are plain numpy arrays in 0-based position order:
position k of a node signal belongs to node k+1, and edge positions follow
the lexicographic order of the stored (i, j) pairs.  That edge order fixes
the indexing of every flow vector in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateEdge,
    InvalidEdge,
    InvalidNode,
    InvalidWeight,
    RepeatedAugmentation,
)


def as_node_ids(ids, n: int) -> np.ndarray:
    """Validate an iterable of 1-based node ids against a graph of n nodes.

    Returns a sorted array of unique int64 ids.  Raises InvalidNode for
    non-integer, out-of-range or duplicate entries.
    """
    arr = np.asarray(list(ids) if not isinstance(ids, np.ndarray) else ids)
    if arr.size == 0:
        return np.empty(0, dtype=np.int64)
    if not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.floating) and np.all(arr == np.round(arr)):
            arr = arr.astype(np.int64)
        else:
            raise InvalidNode(f"node ids must be integers, got dtype {arr.dtype}")
    arr = np.sort(arr.astype(np.int64))
    if arr[0] < 1 or arr[-1] > n:
        bad = arr[(arr < 1) | (arr > n)][0]
        raise InvalidNode(f"node id {bad} outside 1..{n}")
    if arr.size > 1 and np.any(arr[1:] == arr[:-1]):
        dup = arr[1:][arr[1:] == arr[:-1]][0]
        raise InvalidNode(f"duplicate node id {dup}")
    return arr


class Graph:
    """Immutable weighted graph over nodes 1..n.

    Do not call the constructor directly; use :func:`build_graph`, which
    canonicalizes and validates the edge list.

    Attributes
    ----------
    n : int
        Number of nodes; ids are 1..n.
    src, dst : ndarray of int64
        0-based endpoints of each edge, src < dst, lexicographically sorted.
    weights : ndarray of float64
        Strictly positive edge weights, aligned with src/dst.
    """

    __slots__ = ("n", "src", "dst", "weights", "degree", "weighted_degree",
                 "_in_order", "_in_dst")

    def __init__(self, n, src, dst, weights):
        self.n = int(n)
        self.src = src
        self.dst = dst
        self.weights = weights
        self.degree = (np.bincount(src, minlength=n)
                       + np.bincount(dst, minlength=n))
        self.weighted_degree = (np.bincount(src, weights=weights, minlength=n)
                                + np.bincount(dst, weights=weights, minlength=n))
        # edge positions sorted by (dst, src): in-neighbour ranges per node
        self._in_order = np.lexsort((src, dst))
        self._in_dst = dst[self._in_order]
        for arr in (self.src, self.dst, self.weights, self.degree,
                    self.weighted_degree, self._in_order, self._in_dst):
            arr.flags.writeable = False

    @property
    def num_edges(self) -> int:
        return self.src.size

    @property
    def edges(self) -> np.ndarray:
        """(m, 2) array of 1-based (i, j) pairs in storage order."""
        return np.column_stack((self.src + 1, self.dst + 1))

    def out_neighbors(self, i: int) -> np.ndarray:
        """Sorted 1-based ids j with a stored edge (i, j)."""
        self._check_node(i)
        lo, hi = np.searchsorted(self.src, [i - 1, i])
        return self.dst[lo:hi] + 1

    def in_neighbors(self, i: int) -> np.ndarray:
        """Sorted 1-based ids j with a stored edge (j, i)."""
        self._check_node(i)
        lo, hi = np.searchsorted(self._in_dst, [i - 1, i])
        return self.src[self._in_order[lo:hi]] + 1

    def neighbors(self, i: int) -> np.ndarray:
        """All neighbours of i, sorted ascending."""
        return np.sort(np.concatenate((self.in_neighbors(i), self.out_neighbors(i))))

    def _check_node(self, i):
        if not 1 <= int(i) <= self.n:
            raise InvalidNode(f"node id {i} outside 1..{self.n}")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.src, other.src)
                and np.array_equal(self.dst, other.dst)
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.n, self.src.tobytes(), self.dst.tobytes(),
                     self.weights.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class AugmentedGraph:
    """A base graph plus one uncapacitated star edge (i, star) per node.

    The star node has id n+1.  Augmented flow vectors have length
    m + n: base edges first, then the star edge of node i at position
    m + i - 1.
    """

    base: Graph

    @property
    def star_node(self) -> int:
        return self.base.n + 1

    @property
    def num_edges(self) -> int:
        return self.base.num_edges + self.base.n

    def __repr__(self):
        return f"AugmentedGraph(n={self.base.n}, m={self.num_edges})"


def build_graph(n: int, edge_list) -> Graph:
    """Build a Graph from (i, j, w) triples.

    Edges are canonicalized to (min(i, j), max(i, j)) and stored sorted
    lexicographically, so the result does not depend on the input order.

    Parameters
    ----------
    n : int
        Node count, at least 1.
    edge_list : iterable of (int, int, float)
        1-based endpoints and a strictly positive weight per edge.

    Raises
    ------
    InvalidNode, InvalidEdge, DuplicateEdge, InvalidWeight
    """
    n = int(n)
    if n < 1:
        raise InvalidNode(f"node count must be positive, got {n}")
    triples = list(edge_list)
    m = len(triples)
    src = np.empty(m, dtype=np.int64)
    dst = np.empty(m, dtype=np.int64)
    w = np.empty(m, dtype=np.float64)
    for k, (i, j, wk) in enumerate(triples):
        i, j = int(i), int(j)
        if not (1 <= i <= n) or not (1 <= j <= n):
            raise InvalidNode(f"edge ({i}, {j}) has an endpoint outside 1..{n}")
        if i == j:
            raise InvalidEdge(f"self-loop at node {i}")
        wk = float(wk)
        if not wk > 0.0:
            raise InvalidWeight(f"edge ({i}, {j}) has non-positive weight {wk}")
        src[k], dst[k] = (i - 1, j - 1) if i < j else (j - 1, i - 1)
        w[k] = wk
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    if m > 1:
        same = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
        if np.any(same):
            k = int(np.flatnonzero(same)[0])
            raise DuplicateEdge(f"edge ({src[k] + 1}, {dst[k] + 1}) listed twice")
    return Graph(n, src, dst, w)


def _as_signal(g: Graph, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise DimensionMismatch(f"expected node signal of length {g.n}, got shape {x.shape}")
    return x


def _as_base_flow(g: Graph, y) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (g.num_edges,):
        raise DimensionMismatch(
            f"expected edge flow of length {g.num_edges}, got shape {y.shape}")
    return y


def incidence_apply(g: Graph, x) -> np.ndarray:
    """Signed edge differences: value x_i - x_j for each stored edge (i, j)."""
    x = _as_signal(g, x)
    return x[g.src] - x[g.dst]


def divergence(g: Graph, y) -> np.ndarray:
    """Net outflow per node: sum of y over out-edges minus sum over in-edges.

    This is the adjoint of :func:`incidence_apply`.  Per-node sums accumulate
    in ascending neighbour order (edges are stored sorted), so the result is
    reproducible bit for bit.
    """
    y = _as_base_flow(g, y)
    return (np.bincount(g.src, weights=y, minlength=g.n)
            - np.bincount(g.dst, weights=y, minlength=g.n))


def boundary(g: Graph, cluster) -> np.ndarray:
    """Edge positions with exactly one endpoint in `cluster`.

    Both orientations count: (i, j) is a boundary edge whenever membership
    differs across it, regardless of which endpoint is inside.
    """
    ids = as_node_ids(cluster, g.n)
    mask = np.zeros(g.n, dtype=bool)
    mask[ids - 1] = True
    return np.flatnonzero(mask[g.src] != mask[g.dst])


def augment(g: Graph) -> AugmentedGraph:
    """Attach the star node n+1 with one uncapacitated edge per base node."""
    if isinstance(g, AugmentedGraph):
        raise RepeatedAugmentation("graph is already augmented")
    if not isinstance(g, Graph):
        raise TypeError(f"expected Graph, got {type(g).__name__}")
    return AugmentedGraph(g)


def isolated_nodes(g: Graph) -> np.ndarray:
    """1-based ids of nodes with no incident edge."""
    return np.flatnonzero(g.degree == 0) + 1


def is_connected(g: Graph) -> bool:
    """True when the graph has a single connected component (n >= 1)."""
    if g.n == 1:
        return True
    if g.num_edges == 0:
        return False
    # union-find over edges
    parent = np.arange(g.n)

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for a, b in zip(g.src, g.dst):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    root = find(0)
    return all(find(k) == root for k in range(1, g.n))


# ---------------------------------------------------------------------------
# file formats


def read_edge_list(path, n: int | None = None) -> Graph:
    """Read an edge-list text file: one `i j w` triple per line.

    Fields are whitespace separated, ids are 1-based, lines starting with
    `#` and blank lines are skipped.  When `n` is omitted the node count is
    the largest id seen.
    """
    triples = []
    max_id = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise InvalidEdge(f"{path}:{lineno}: expected `i j w`, got {line!r}")
            try:
                i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise InvalidEdge(f"{path}:{lineno}: {exc}") from exc
            triples.append((i, j, w))
            max_id = max(max_id, i, j)
    if n is None:
        n = max_id
    return build_graph(n, triples)


def write_edge_list(path, g: Graph) -> None:
    """Write a graph in the `i j w` text format read by read_edge_list."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i, j, w in zip(g.src + 1, g.dst + 1, g.weights):
            fh.write(f"{i} {j} {float(w)!r}\n")


def read_node_set(path, n: int | None = None) -> np.ndarray:
    """Read a node-set file: one 1-based node id per line, `#` comments."""
    ids = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                ids.append(int(line))
            except ValueError as exc:
                raise InvalidNode(f"{path}:{lineno}: {exc}") from exc
    bound = n if n is not None else (max(ids) if ids else 0)
    return as_node_ids(ids, bound)


def write_node_set(path, ids) -> None:
    """Write node ids one per line, ascending."""
    ids = np.sort(np.asarray(ids, dtype=np.int64))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i in ids:
            fh.write(f"{i}\n")
