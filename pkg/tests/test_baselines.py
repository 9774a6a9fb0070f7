import numpy as np
import pytest

from nlasso import Disconnected, IsolatedNode, NoConvergence, build_graph
from nlasso.baselines import (
    NORMALIZED,
    UNNORMALIZED,
    fiedler_value,
    fiedler_vector,
    indicator_error,
    laplacian,
)
from oracle import random_connected_graph


def dense_laplacian(g, mode):
    """Independent dense construction from the adjacency structure."""
    a = np.zeros((g.n, g.n))
    for (i, j), w in zip(g.edges, g.weights):
        a[i - 1, j - 1] = w
        a[j - 1, i - 1] = w
    deg = a.sum(axis=1)
    lap = np.diag(deg) - a
    if mode == NORMALIZED:
        d = 1.0 / np.sqrt(deg)
        lap = lap * d[:, None] * d[None, :]
    return lap


def path(n, w=1.0):
    return build_graph(n, [(i, i + 1, w) for i in range(1, n)])


def test_apply_two_node():
    op = laplacian(build_graph(2, [(1, 2, 1.0)]))
    assert op.apply([1.0, -1.0]).tolist() == [2.0, -2.0]


def test_constant_in_nullspace(house_graph):
    op = laplacian(house_graph, UNNORMALIZED)
    assert np.max(np.abs(op.apply(np.full(5, 2.2)))) <= 1e-14


def test_operator_matches_dense(rng):
    for mode in (UNNORMALIZED, NORMALIZED):
        for _ in range(5):
            g = random_connected_graph(int(rng.integers(2, 9)), rng)
            dense = dense_laplacian(g, mode)
            op = laplacian(g, mode)
            for _ in range(3):
                x = rng.normal(size=g.n)
                assert np.allclose(op.apply(x), dense @ x, rtol=1e-12, atol=1e-12)


def test_operator_psd(rng):
    for _ in range(10):
        g = random_connected_graph(6, rng)
        op = laplacian(g, UNNORMALIZED)
        x = rng.normal(size=6)
        assert float(x @ op.apply(x)) >= -1e-12


def test_normalized_rejects_isolated_node():
    g = build_graph(3, [(1, 2, 1.0)])
    with pytest.raises(IsolatedNode):
        laplacian(g, NORMALIZED)


def test_bad_mode():
    with pytest.raises(ValueError):
        laplacian(build_graph(2, [(1, 2, 1.0)]), "rw")


@pytest.mark.parametrize("n", [5, 10, 50])
def test_fiedler_path_closed_form(n):
    v = fiedler_vector(path(n), UNNORMALIZED, tol=1e-12)
    mu = fiedler_value(path(n), v, UNNORMALIZED)
    exact = 2.0 - 2.0 * np.cos(np.pi / n)
    assert abs(mu - exact) <= 1e-8 * exact


def test_fiedler_complete_graph():
    g = build_graph(3, [(1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)])
    v = fiedler_vector(g, UNNORMALIZED, tol=1e-10)
    assert fiedler_value(g, v, UNNORMALIZED) == pytest.approx(3.0, abs=1e-8)


def test_fiedler_matches_dense_eigensolver(rng):
    for _ in range(5):
        g = random_connected_graph(int(rng.integers(4, 11)), rng)
        for mode in (UNNORMALIZED, NORMALIZED):
            vals = np.linalg.eigvalsh(dense_laplacian(g, mode))
            target = vals[1]
            if target - vals[0] < 1e-8 or (len(vals) > 2 and vals[2] - target < 1e-6):
                continue  # near-degenerate pair: not a meaningful check
            v = fiedler_vector(g, mode, tol=1e-11)
            mu = fiedler_value(g, v, mode)
            assert mu == pytest.approx(target, rel=1e-7, abs=1e-9)


def test_fiedler_orthogonal_to_nullspace():
    g = path(12)
    for mode in (UNNORMALIZED, NORMALIZED):
        v = fiedler_vector(g, mode, tol=1e-11)
        null = laplacian(g, mode).nullspace_direction()
        assert abs(float(null @ v)) <= 1e-8 * np.linalg.norm(v)


def test_fiedler_normalization_convention():
    v = fiedler_vector(path(9), UNNORMALIZED, tol=1e-10)
    assert np.max(np.abs(v)) == pytest.approx(1.0, abs=1e-14)
    assert v[0] >= 0.0


def test_fiedler_eigen_residual_contract():
    g = path(30)
    tol = 1e-9
    v = fiedler_vector(g, UNNORMALIZED, tol=tol)
    op = laplacian(g, UNNORMALIZED)
    mu = fiedler_value(g, v, UNNORMALIZED)
    resid = np.linalg.norm(op.apply(v) - mu * v)
    assert resid <= tol * np.linalg.norm(v)


def test_fiedler_deterministic():
    a = fiedler_vector(path(20), NORMALIZED, tol=1e-10)
    b = fiedler_vector(path(20), NORMALIZED, tol=1e-10)
    assert a.tobytes() == b.tobytes()


def test_fiedler_rejects_disconnected():
    g = build_graph(4, [(1, 2, 1.0), (3, 4, 1.0)])
    with pytest.raises(Disconnected):
        fiedler_vector(g, UNNORMALIZED)
    with pytest.raises(Disconnected):
        fiedler_vector(build_graph(1, []), UNNORMALIZED)


def test_fiedler_no_convergence():
    with pytest.raises(NoConvergence):
        fiedler_vector(path(40), UNNORMALIZED, tol=1e-14, max_iters=3)


def test_indicator_error_values():
    x = np.zeros(10)
    x[[0, 1, 2, 3]] = 1.0
    assert indicator_error(x, [1, 2, 3, 4]) == (0.0, 0.0)
    err = indicator_error(np.zeros(10), [1, 2, 3, 4])
    assert err.l2 == 2.0
    assert err.linf == 1.0
