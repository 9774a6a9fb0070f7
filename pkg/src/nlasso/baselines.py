"""Spectral baseline: graph Laplacians and the Fiedler vector.

The Laplacian is applied matrix free (one pass over the edges), in either
the unnormalized form L = D - A or the symmetric normalization
D^{-1/2} L D^{-1/2}.  The Fiedler vector, the eigenvector for the smallest
non-zero eigenvalue, is computed by power iteration on c*I - L with the
known nullspace direction deflated out; c is a Gershgorin upper bound on
the spectrum, so the smallest non-zero eigenvalue dominates after
deflation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import graph as gc
from .errors import Disconnected, IsolatedNode, NoConvergence
from .graph import Graph

UNNORMALIZED = "unnormalized"
NORMALIZED = "normalized"


@dataclass(frozen=True)
class LaplacianOperator:
    """Matrix-free symmetric positive semidefinite Laplacian."""

    graph: Graph
    mode: str

    def __post_init__(self):
        if self.mode not in (UNNORMALIZED, NORMALIZED):
            raise ValueError(f"mode must be {UNNORMALIZED!r} or {NORMALIZED!r}")
        if self.mode == NORMALIZED and np.any(self.graph.degree == 0):
            bad = int(gc.isolated_nodes(self.graph)[0])
            raise IsolatedNode(f"node {bad} has degree 0; normalization undefined")

    def apply(self, x) -> np.ndarray:
        """One operator application, linear in the edge count."""
        g = self.graph
        x = gc._as_signal(g, x)
        if self.mode == NORMALIZED:
            x = x / np.sqrt(g.weighted_degree)
        t = g.weights * (x[g.src] - x[g.dst])
        out = (np.bincount(g.src, weights=t, minlength=g.n)
               - np.bincount(g.dst, weights=t, minlength=g.n))
        if self.mode == NORMALIZED:
            out = out / np.sqrt(g.weighted_degree)
        return out

    def __matmul__(self, x):
        return self.apply(x)

    def nullspace_direction(self) -> np.ndarray:
        """Unit vector spanning the kernel on a connected graph."""
        if self.mode == NORMALIZED:
            v = np.sqrt(self.graph.weighted_degree)
        else:
            v = np.ones(self.graph.n)
        return v / np.linalg.norm(v)

    def shift_bound(self) -> float:
        """Gershgorin upper bound on the largest eigenvalue."""
        if self.mode == NORMALIZED:
            return 2.0
        return 2.0 * float(np.max(self.graph.weighted_degree)) if self.graph.n else 0.0


def laplacian(g: Graph, mode: str = UNNORMALIZED) -> LaplacianOperator:
    """Construct the matrix-free Laplacian operator of the chosen mode."""
    return LaplacianOperator(g, mode)


def _start_vector(n: int) -> np.ndarray:
    # fixed integer-hash ramp: deterministic and free of graph symmetries
    idx = np.arange(1, n + 1, dtype=np.uint64)
    z = idx * np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0 ** -53 - 0.5


def fiedler_vector(g: Graph, mode: str = UNNORMALIZED, tol: float = 1e-10,
                   max_iters: int = 500_000) -> np.ndarray:
    """Eigenvector of the Laplacian for the smallest non-zero eigenvalue.

    Runs deflated power iteration on the shifted operator until the
    eigen-residual ||L v - mu v|| drops below tol * ||v||.  The result has
    unit infinity norm and a non-negative entry at node 1.  Deterministic:
    the starting vector is a fixed hash ramp with the nullspace projected
    out.

    Raises
    ------
    Disconnected
        If the graph has more than one component (the target eigenvalue
        would be ambiguous), or fewer than 2 nodes.
    NoConvergence
        If max_iters iterations do not reach the tolerance.
    """
    if g.n < 2:
        raise Disconnected("need at least 2 nodes for a Fiedler vector")
    if not gc.is_connected(g):
        raise Disconnected("graph has more than one connected component")
    op = laplacian(g, mode)
    null = op.nullspace_direction()
    c = op.shift_bound()
    v = _start_vector(g.n)
    v = v - (null @ v) * null
    v = v / np.linalg.norm(v)
    for _ in range(int(max_iters)):
        lv = op.apply(v)
        mu = float(v @ lv)
        if np.linalg.norm(lv - mu * v) <= tol:
            break
        w = c * v - lv
        w = w - (null @ w) * null
        nw = np.linalg.norm(w)
        if nw == 0.0:
            raise NoConvergence("iteration collapsed onto the deflated nullspace")
        v = w / nw
    else:
        raise NoConvergence(f"no eigenpair to tolerance {tol} in {max_iters} iterations")
    v = v / np.max(np.abs(v))
    if v[0] < 0.0:
        v = -v
    return v


def fiedler_value(g: Graph, v, mode: str = UNNORMALIZED) -> float:
    """Rayleigh quotient of v under the chosen Laplacian."""
    op = laplacian(g, mode)
    v = np.asarray(v, dtype=np.float64)
    return float(v @ op.apply(v)) / float(v @ v)


class IndicatorError(NamedTuple):
    l2: float
    linf: float


def indicator_error(x, cluster) -> IndicatorError:
    """Norms of x minus the 0/1 indicator of the cluster."""
    x = np.asarray(x, dtype=np.float64)
    ids = gc.as_node_ids(cluster, x.size)
    ind = np.zeros(x.size)
    ind[ids - 1] = 1.0
    err = x - ind
    return IndicatorError(l2=float(np.linalg.norm(err)),
                          linf=float(np.max(np.abs(err))) if err.size else 0.0)
