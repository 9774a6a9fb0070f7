"""Acceptance suite: one test per release criterion.

Each test prints a single `ACCEPTANCE <n> (<name>): PASS|FAIL` line with
the measured values, then asserts.  Run with `pytest tests/test_acceptance.py
-v -s` to see every line; tolerances and budgets are pinned in the
assertions, not configurable.
"""

import time

import numpy as np
import pytest

from nlasso import (
    NLassoProblem,
    SolverConfig,
    build_graph,
    conjugate_g_feasible,
    duality_gap,
    extract_cluster,
    kkt_residuals,
    run,
)
from nlasso.baselines import (
    NORMALIZED,
    UNNORMALIZED,
    fiedler_value,
    fiedler_vector,
    indicator_error,
)
from nlasso.cli import main
from nlasso.generators import GreyImage, chain_graph, read_pgm, write_pgm
from frozen_oracle import INSTANCES

CHAIN_CLUSTER = [1, 2, 3, 4]


def report(num, name, ok, detail):
    print(f"ACCEPTANCE {num} ({name}): {'PASS' if ok else 'FAIL'} [{detail}]")
    assert ok, f"criterion {num} ({name}): {detail}"


def parse_keyvalues(path):
    values = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        key, _, value = line.partition(" = ")
        values[key] = value
    return values


@pytest.fixture(scope="module")
def chain_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("acc") / "chain"
    assert main(["chain-experiment", "--out", str(out)]) == 0
    return out


@pytest.fixture(scope="module")
def chain_signal():
    g = chain_graph(100, 5.0 / 4.0, [(4, 1.0)])
    p = NLassoProblem(g, [1], 1.0 / 200.0, 2.0 / 10.0)
    return g, run(p, SolverConfig(max_iters=1000)).x


@pytest.fixture(scope="module")
def benchmark_runs():
    """Solve each frozen instance for 1e5 iterations; share across criteria."""
    rows = []
    t0 = time.perf_counter()
    for inst in INSTANCES:
        g = build_graph(inst["n"], inst["edges"])
        p = NLassoProblem(g, [inst["seed"]], inst["alpha"], inst["lam"])
        res = run(p, SolverConfig(max_iters=10 ** 5))
        rows.append((p, res, np.asarray(inst["x_star"])))
    elapsed = time.perf_counter() - t0
    return rows, elapsed


def test_criterion_1_chain_reproduction(tmp_path):
    out = tmp_path / "chain"
    t0 = time.perf_counter()
    code = main(["chain-experiment", "--out", str(out)])
    elapsed = time.perf_counter() - t0
    cluster = [int(v) for v in (out / "cluster.txt").read_text().split()]
    ok = code == 0 and cluster == CHAIN_CLUSTER and elapsed < 1.0
    report(1, "chain reproduction", ok,
           f"cluster={cluster} runtime={elapsed:.2f}s")


def test_criterion_2_chain_certificates(chain_dir):
    values = parse_keyvalues(chain_dir / "certificates.txt")
    injecting = values["holds_injecting"] == "true"
    absorbing = values["holds_absorbing"] == "true"
    reach = values["reach_bound_holds"] == "true"
    ok = injecting and absorbing and reach
    report(2, "boundary certificates", ok,
           f"injecting={injecting} absorbing={absorbing} reach={reach} "
           f"lhs={values['lhs']} rhs_inj={values['rhs_injecting']} "
           f"rhs_abs={values['rhs_absorbing']}")


def test_criterion_3_spectral_comparison(chain_signal):
    g, x = chain_signal
    fiedler = fiedler_vector(g, NORMALIZED, tol=1e-10)
    wins = []
    for lo, hi in ((0, 20), (0, 100)):
        e_tv = indicator_error(x[lo:hi], CHAIN_CLUSTER)
        e_sp = indicator_error(fiedler[lo:hi], CHAIN_CLUSTER)
        wins.append(e_tv.l2 < e_sp.l2)
        wins.append(e_tv.linf < e_sp.linf)
    ok = all(wins)
    report(3, "beats spectral baseline", ok,
           f"strict wins (l2, linf) x (1..20, 1..100) = {wins}")


def test_criterion_4_sbm_recovery(tmp_path):
    t0 = time.perf_counter()
    accuracies = []
    for seed in range(10):
        out = tmp_path / f"sbm{seed}"
        assert main(["sbm-experiment", "--rng-seed", str(seed),
                     "--out", str(out)]) == 0
        values = parse_keyvalues(out / "accuracy.txt")
        accuracies.append(float(values["accuracy"]))
    elapsed = time.perf_counter() - t0
    perfect = sum(a == 1.0 for a in accuracies)
    mean = float(np.mean(accuracies))
    ok = perfect >= 9 and mean >= 0.99 and elapsed < 30.0
    report(4, "block model recovery", ok,
           f"perfect={perfect}/10 mean={mean:.4f} runtime={elapsed:.1f}s")


def test_criterion_5_oracle_equivalence(benchmark_runs):
    rows, elapsed = benchmark_runs
    worst = max(float(np.max(np.abs(res.x - x_star))) for _, res, x_star in rows)
    ok = worst <= 1e-4 and elapsed < 60.0
    report(5, "oracle equivalence", ok,
           f"instances={len(rows)} worst|x-x*|={worst:.2e} runtime={elapsed:.1f}s")


def test_criterion_6_duality_kkt_suite(benchmark_runs):
    rows, _ = benchmark_runs
    worst_gap = worst_demand = worst_jump = 0.0
    capacity_exact = True
    for p, res, _ in rows:
        worst_gap = max(worst_gap, duality_gap(p, res.x, res.y) / p.seeds.size)
        capacity_exact &= conjugate_g_feasible(p, res.y)
        rep = kkt_residuals(p, res.x, res.y, eps_sat=1e-6)
        worst_demand = max(worst_demand, rep.seed_demand_residual,
                           rep.nonseed_demand_residual)
        worst_jump = max(worst_jump, rep.nonsaturated_jump)
    ok = worst_gap <= 1e-3 and capacity_exact and worst_demand <= 1e-3 \
        and worst_jump <= 1e-3
    report(6, "duality and optimality residuals", ok,
           f"gap/|S|={worst_gap:.2e} capacity_exact={capacity_exact} "
           f"demand={worst_demand:.2e} jump={worst_jump:.2e}")


def test_criterion_7_fiedler_correctness():
    details = []
    ok = True
    for n in (5, 10, 50):
        g = build_graph(n, [(i, i + 1, 1.0) for i in range(1, n)])
        v = fiedler_vector(g, UNNORMALIZED, tol=1e-12)
        mu = fiedler_value(g, v, UNNORMALIZED)
        exact = 2.0 - 2.0 * np.cos(np.pi / n)
        rel = abs(mu - exact) / exact
        ok &= rel <= 1e-8
        details.append(f"n={n}:rel={rel:.1e}")
        if n <= 10:
            dense = np.zeros((n, n))
            for (i, j), w in zip(g.edges, g.weights):
                dense[i - 1, j - 1] = -w
                dense[j - 1, i - 1] = -w
            np.fill_diagonal(dense, -dense.sum(axis=1))
            mu_dense = float(np.linalg.eigvalsh(dense)[1])
            ok &= abs(mu - mu_dense) <= 1e-8 * mu_dense
            details.append(f"n={n}:dense={abs(mu - mu_dense):.1e}")
    report(7, "spectral solver correctness", ok, " ".join(details))


def test_criterion_8_segmentation(tmp_path):
    px = np.full((8, 8), 200, dtype=np.uint8)
    px[:, :4] = 40
    image = tmp_path / "tworegion.pgm"
    write_pgm(image, GreyImage(8, 8, px.ravel()))
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("18\n43\n")  # pixels (2,1) and (5,2), inside the left region
    out = tmp_path / "seg"
    code = main(["segment", str(image), "--seeds", str(seeds),
                 "--alpha", "0.005", "--lambda", "0.2", "--iters", "1000",
                 "--out", str(out)])
    mask = read_pgm(out / "mask.pgm").pixels
    expected = np.zeros((8, 8), dtype=np.uint8)
    expected[:, :4] = 255
    ok = code == 0 and np.array_equal(mask, expected)
    report(8, "two-region segmentation", ok,
           f"exit={code} mask_matches_region={np.array_equal(mask, expected)}")


def test_criterion_9_determinism(tmp_path):
    graph = tmp_path / "edges.txt"
    graph.write_text("1 2 1.0\n2 3 0.5\n3 4 2.0\n1 4 1.5\n")
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("2\n")
    px = np.full((6, 6), 90, dtype=np.uint8)
    px[:3] = 30
    image = tmp_path / "img.pgm"
    write_pgm(image, GreyImage(6, 6, px.ravel()))
    pixel_seeds = tmp_path / "pixel_seeds.txt"
    pixel_seeds.write_text("8\n")

    commands = {
        "solve": lambda out, workers: main(
            ["solve", "--graph", str(graph), "--seeds", str(seeds),
             "--alpha", "0.2", "--lambda", "0.1", "--iters", "400",
             "--out", str(out), "--workers", workers]),
        "chain-experiment": lambda out, workers: main(
            ["chain-experiment", "--out", str(out), "--workers", workers]),
        "sbm-experiment": lambda out, workers: main(
            ["sbm-experiment", "--rng-seed", "5", "--out", str(out),
             "--workers", workers]),
        "segment": lambda out, workers: main(
            ["segment", str(image), "--seeds", str(pixel_seeds),
             "--alpha", "0.01", "--lambda", "0.3", "--iters", "300",
             "--out", str(out), "--workers", workers]),
    }
    mismatches = []
    for name, invoke in commands.items():
        out1 = tmp_path / f"{name}-a"
        out2 = tmp_path / f"{name}-b"
        assert invoke(out1, "1") == 0
        assert invoke(out2, "8") == 0
        files1 = sorted(f.name for f in out1.iterdir())
        files2 = sorted(f.name for f in out2.iterdir())
        if files1 != files2:
            mismatches.append(f"{name}: file sets differ")
            continue
        for fname in files1:
            if (out1 / fname).read_bytes() != (out2 / fname).read_bytes():
                mismatches.append(f"{name}/{fname}")
    ok = not mismatches
    report(9, "bytewise determinism", ok,
           f"commands={len(commands)} mismatches={mismatches or 'none'}")
