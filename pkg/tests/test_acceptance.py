"""Acceptance gates for the whole package.

Each test prints one `[acceptance] Cn PASS/FAIL` line with the measured
quantities, then fails if any stated gate is missed. The simulation-based
checks (C4-C6) run at desk scale (p=200, R=100) with a fixed base seed.
"""

import time

import numpy as np
import pytest

from xisis import (
    ConfusionCounts,
    DiscreteJoint,
    ScoreVector,
    SimulationConfig,
    concentration_experiment,
    f_measure,
    point_biserial,
    precision_recall_f,
    run_simulation,
    threshold_select,
    top_d,
    xi_binary_score,
    xi_population_discrete,
    xi_score,
)

BASE_SEED = 0


def _finish(cid: str, detail: str, failures: list[str]) -> None:
    status = "FAIL" if failures else "PASS"
    print(f"[acceptance] {cid} {status}: {detail}")
    if failures:
        pytest.fail(f"{cid}: " + " | ".join(failures))


def test_c1_exact_closed_form_values():
    """xi on strictly monotone tie-free data equals 1 - 3/(n+1) exactly."""
    t0 = time.perf_counter()
    failures = []
    checked = []
    for n in (4, 10, 100, 1000):
        x = np.arange(n, dtype=float)
        expected = 1.0 - 3.0 / (n + 1)
        got_up = xi_score(x, x)
        got_down = xi_score(x, -x)
        checked.append(f"n={n}: {got_up:.6g}")
        if got_up != expected:
            failures.append(f"n={n} increasing: {got_up!r} != {expected!r}")
        if got_down != expected:
            failures.append(f"n={n} decreasing: {got_down!r} != {expected!r}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s >= 1s")
    _finish("C1", f"{'; '.join(checked)} ({elapsed:.2f}s)", failures)


def test_c2_population_vs_monte_carlo():
    """Exact finite-sum coefficient vs sampled estimate at n=20000, within 0.02."""
    t0 = time.perf_counter()
    pa = np.array([0.2, 0.3, 0.5])
    qb = np.array([0.1, 0.4, 0.5])
    flip = 0.3
    fixtures = [
        ("independent", DiscreteJoint([0, 1, 2], [0, 1, 2], np.outer(pa, qb))),
        ("deterministic", DiscreteJoint([0, 1, 2], [0, 1, 2], np.eye(3) / 3.0)),
        ("two_by_two", DiscreteJoint([0, 1], [0, 1], [[0.4, 0.1], [0.1, 0.4]])),
        (
            "asymmetric_3x4",
            DiscreteJoint(
                [0, 1, 2],
                [0, 1, 2, 3],
                [
                    [0.05, 0.10, 0.05, 0.05],
                    [0.10, 0.05, 0.15, 0.05],
                    [0.05, 0.05, 0.10, 0.20],
                ],
            ),
        ),
        (
            "noisy_step",
            DiscreteJoint(
                [0, 1, 2, 3],
                [0, 1],
                np.array(
                    [
                        [1 - flip, flip],
                        [1 - flip, flip],
                        [flip, 1 - flip],
                        [flip, 1 - flip],
                    ]
                )
                / 4.0,
            ),
        ),
    ]
    failures = []
    details = []
    for i, (name, joint) in enumerate(fixtures):
        pop = xi_population_discrete(joint)
        x, y = joint.sample(20000, seed=100 + i)
        mc = xi_score(x, y, tie_seed=200 + i)
        details.append(f"{name}: pop={pop:.4f} mc={mc:.4f}")
        if abs(pop - mc) > 0.02:
            failures.append(f"{name}: |{pop:.4f} - {mc:.4f}| > 0.02")
        if name == "independent" and abs(pop) > 1e-12:
            failures.append(f"independent population value {pop!r} != 0")
        if name == "deterministic" and abs(pop - 1.0) > 1e-12:
            failures.append(f"deterministic population value {pop!r} != 1")
    elapsed = time.perf_counter() - t0
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.2f}s >= 10s")
    _finish("C2", f"{'; '.join(details)} ({elapsed:.2f}s)", failures)


def test_c3_binary_identity():
    """Variance-ratio statistic equals (mean1-mean0)^2 / r_pb^2 within 1e-10."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(BASE_SEED)
    failures = []
    checked = 0
    worst = 0.0
    while checked < 100:
        n = int(rng.integers(4, 120))
        x = rng.normal(size=n)
        y = np.zeros(n)
        y[rng.permutation(n)[: int(rng.integers(1, n))]] = 1.0
        if y.sum() in (0, n):
            continue
        r_pb = point_biserial(x, y)
        if abs(r_pb) < 1e-8:
            continue
        lhs = xi_binary_score(x, y)
        rhs = (x[y == 1].mean() - x[y == 0].mean()) ** 2 / r_pb**2
        err = abs(lhs - rhs) / max(1.0, abs(rhs))
        worst = max(worst, err)
        if err > 1e-10:
            failures.append(f"case {checked}: relative gap {err:.2e} > 1e-10")
        checked += 1
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s >= 1s")
    _finish("C3", f"100 samples, worst gap {worst:.2e} ({elapsed:.2f}s)", failures)


def _proportions(model, methods, seed=BASE_SEED):
    cfg = SimulationConfig(
        model=model, n=400, p=200, replications=100, base_seed=seed, d=66,
        methods=methods,
    )
    t0 = time.perf_counter()
    report = run_simulation(cfg)
    return report.proportions, time.perf_counter() - t0


def test_c4_benchmark_m1():
    """M1 at n=400, p=200, R=100, d=66: xi >= 0.98 each; pearson X3 <= 0.10;
    dcor X3 <= 0.40."""
    props, elapsed = _proportions("M1", ("xi", "pearson", "dcor"))
    failures = []
    for i, v in enumerate(props["xi"]):
        if v < 0.98:
            failures.append(f"xi X{i + 1} proportion {v:.2f} < 0.98")
    if props["pearson"][2] > 0.10:
        failures.append(f"pearson X3 proportion {props['pearson'][2]:.2f} > 0.10")
    if props["dcor"][2] > 0.40:
        failures.append(f"dcor X3 proportion {props['dcor'][2]:.2f} > 0.40")
    detail = (
        f"xi={np.round(props['xi'], 2).tolist()} "
        f"pearson={np.round(props['pearson'], 2).tolist()} "
        f"dcor={np.round(props['dcor'], 2).tolist()} ({elapsed:.0f}s)"
    )
    _finish("C4", detail, failures)


def test_c5_benchmark_m4_binary():
    """M4 (binary response) at n=400, p=200, R=100: xi >= 0.90 each;
    dcor X2 <= 0.30."""
    props, elapsed = _proportions("M4", ("xi", "dcor"))
    failures = []
    for i, v in enumerate(props["xi"]):
        if v < 0.90:
            failures.append(f"xi X{i + 1} proportion {v:.2f} < 0.90")
    if props["dcor"][1] > 0.30:
        failures.append(f"dcor X2 proportion {props['dcor'][1]:.2f} > 0.30")
    detail = (
        f"xi={np.round(props['xi'], 2).tolist()} "
        f"dcor={np.round(props['dcor'], 2).tolist()} ({elapsed:.0f}s)"
    )
    _finish("C5", detail, failures)


def test_c6_benchmark_m3_oscillatory():
    """M3 (oscillatory terms, Cauchy noise) at n=400, p=200, R=100:
    xi >= 0.85 each; pearson <= 0.05 each."""
    props, elapsed = _proportions("M3", ("xi", "pearson"))
    failures = []
    for i, v in enumerate(props["xi"]):
        if v < 0.85:
            failures.append(f"xi X{i + 1} proportion {v:.2f} < 0.85")
    for i, v in enumerate(props["pearson"]):
        if v > 0.05:
            failures.append(f"pearson X{i + 1} proportion {v:.2f} > 0.05")
    detail = (
        f"xi={np.round(props['xi'], 2).tolist()} "
        f"pearson={np.round(props['pearson'], 2).tolist()} ({elapsed:.0f}s)"
    )
    _finish("C6", detail, failures)


def test_c7_concentration_decay():
    """Null design: pr(max_k |score_k| > 0.15) non-increasing over n, and
    at most 0.05 by n=800."""
    t0 = time.perf_counter()
    result = concentration_experiment(
        "M0", n_grid=(100, 200, 400, 800), p=200, replications=200,
        delta=0.15, seed=BASE_SEED,
    )
    elapsed = time.perf_counter() - t0
    freqs = result.frequencies
    failures = []
    for a, b in zip(freqs, freqs[1:]):
        if b > a:
            failures.append(f"tail frequency increased: {a:.3f} -> {b:.3f}")
    if freqs[-1] > 0.05:
        failures.append(f"tail frequency at n=800 is {freqs[-1]:.3f} > 0.05")
    if elapsed >= 120.0:
        failures.append(f"runtime {elapsed:.1f}s >= 120s")
    _finish("C7", f"frequencies={[round(f, 3) for f in freqs]} ({elapsed:.0f}s)", failures)


def test_c8_metric_formulas():
    """Precision/recall/F relations on the published operating points."""
    failures = []
    precision, recall, f = precision_recall_f(ConfusionCounts(tp=19, fp=1, fn=1, tn=13))
    if abs(precision - 0.950) > 1e-12 or abs(recall - 0.950) > 1e-12:
        failures.append(f"counts (19,1,1): precision={precision}, recall={recall}")
    if abs(f - 0.950) > 0.001:
        failures.append(f"F for (0.950, 0.950) is {f:.4f}, expected 0.950")
    f2 = f_measure(0.850, 0.944)
    if abs(f2 - 0.895) > 0.001:
        failures.append(f"F for (0.850, 0.944) is {f2:.4f}, expected ~0.895")
    p3, r3, f3 = precision_recall_f(ConfusionCounts(tp=17, fp=3, fn=1, tn=13))
    if abs(p3 - 0.850) > 1e-12 or abs(r3 - 17 / 18) > 1e-12 or abs(f3 - 0.895) > 0.001:
        failures.append(f"counts (17,3,1): ({p3:.3f}, {r3:.3f}, {f3:.4f})")
    _finish("C8", f"F(0.95,0.95)={f:.4f}, F(0.850,0.944)={f2:.4f}", failures)


def test_c9_property_suites():
    """Randomized invariants, 1000 cases per suite."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(BASE_SEED)
    failures = []

    # monotone invariance of the score under increasing transforms
    bad = 0
    for _ in range(1000):
        n = int(rng.integers(5, 40))
        x = rng.integers(-20, 21, size=n) / 2.0
        y = rng.integers(-20, 21, size=n) / 2.0
        if np.min(y) == np.max(y):
            y[0] += 0.5
        seed = int(rng.integers(0, 2**31))
        base = xi_score(x, y, tie_seed=seed)
        if xi_score(2.0 * x + 3.0, y, tie_seed=seed) != base:
            bad += 1
        elif xi_score(x**3, y, tie_seed=seed) != base:
            bad += 1
        elif xi_score(x, np.exp(y / 4.0), tie_seed=seed) != base:
            bad += 1
    if bad:
        failures.append(f"monotone invariance violated in {bad}/1000 cases")

    # joint permutation of the pairs (x tie-free)
    bad = 0
    for _ in range(1000):
        n = int(rng.integers(3, 40))
        x = rng.permutation(n).astype(float)
        y = rng.integers(-5, 6, size=n).astype(float)
        if np.min(y) == np.max(y):
            y[0] += 1.0
        perm = rng.permutation(n)
        if xi_score(x, y, tie_seed=1) != xi_score(x[perm], y[perm], tie_seed=2):
            bad += 1
    if bad:
        failures.append(f"pair permutation invariance violated in {bad}/1000 cases")

    # selection containment in d and threshold monotonicity in c
    bad = 0
    for _ in range(1000):
        p = int(rng.integers(2, 40))
        sv = ScoreVector(scores=rng.normal(size=p), method="xi")
        d1, d2 = sorted(rng.integers(1, p + 1, size=2))
        if not set(top_d(sv, int(d1)).selected) <= set(top_d(sv, int(d2)).selected):
            bad += 1
        sv_pos = ScoreVector(scores=rng.random(p), method="xi")
        c1, c2 = sorted(rng.random(2) + 1e-9)
        s1 = set(threshold_select(sv_pos, float(c1), 0.25, 100).selected)
        s2 = set(threshold_select(sv_pos, float(c2), 0.25, 100).selected)
        if not s2 <= s1:
            bad += 1
    if bad:
        failures.append(f"selection containment violated in {bad}/1000 cases")

    # seed determinism of the randomized tie-break
    bad = 0
    for _ in range(1000):
        n = int(rng.integers(4, 40))
        x = rng.integers(0, 4, size=n).astype(float)
        y = rng.normal(size=n)
        seed = int(rng.integers(0, 2**31))
        if xi_score(x, y, tie_seed=seed) != xi_score(x, y, tie_seed=seed):
            bad += 1
    if bad:
        failures.append(f"seed determinism violated in {bad}/1000 cases")

    # thread-count determinism of replicated runs
    for sim_seed in (1, 2, 3):
        cfg = SimulationConfig(
            model="M1", n=40, p=8, replications=5, base_seed=sim_seed, d=3,
            methods=("xi",),
        )
        counts = [
            run_simulation(cfg, threads=t).selection_counts["xi"] for t in (1, 2, 4)
        ]
        if not all(np.array_equal(counts[0], c) for c in counts[1:]):
            failures.append(f"thread-count determinism violated at seed {sim_seed}")

    elapsed = time.perf_counter() - t0
    if elapsed >= 30.0:
        failures.append(f"runtime {elapsed:.1f}s >= 30s")
    _finish("C9", f"4x1000 randomized cases plus thread checks ({elapsed:.1f}s)", failures)
