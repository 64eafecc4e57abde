"""Acceptance criteria.  Each test prints one PASS/FAIL line, then asserts.

Tolerances are fixed here and must not be relaxed to make a run pass.
"""

import math
import os
import random
import statistics
import subprocess
import sys
import time
from itertools import combinations

import pytest
from scipy import stats

from motifstream import generate_ba, make_estimator
from motifstream.harness import truth_series
from motifstream.montecarlo import default_fixtures, validate_prob
from motifstream.oracle import (
    ExactOracle, adjacency, compute_mape, count_overlap_pairs, variance_bound_fourest,
    variance_bound_ts4c1,
)
from motifstream.reservoir import Reservoir, joint_inclusion_prob

pytestmark = pytest.mark.slow

Z_UNBIASED = 4.0
TS5C_REL = 0.10
Z_KERNEL = 3.0
KERNEL_RUNS = 10 ** 6
MAPE_REPS, MAPE_TRIALS, MAPE_NEED = 5, 10, 4
CHI_P = 0.01
THROUGHPUT_SOFT, THROUGHPUT_HARD = 1e4, 5e3


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    return emit


def _oracle(edges, five=True):
    o = ExactOracle(track_five=five)
    for u, v in edges:
        o.insert_edge(u, v)
    return o


def _finals(name, memory, edges, seeds, **kw):
    out = []
    for s in seeds:
        est = make_estimator(name, memory, s, **kw)
        for u, v in edges:
            est.process_edge(u, v)
        out.append(est.estimate())
    return out


# 1 -------------------------------------------------------------------------

def test_c1_exactness_regime(report):
    t0 = time.perf_counter()
    edges = generate_ba(500, 5, 1)
    m = len(edges) + 10
    stride = 25
    truth4 = truth_series(edges, 4, stride)
    truth5 = truth_series(edges, 5, stride)
    bad = []
    # tiered estimators get enough room in every tier
    cfgs = [("fourest", m, {}), ("fiveest", m, {}), ("ts4c1", 10 * m, {}), ("ts4c2", 10 * m, {}),
            ("ats4c", m, {}), ("ts5c", 10 * m, {})]
    for name, mem, kw in cfgs:
        est = make_estimator(name, mem, 0, **kw)
        series = est.run(edges, stride=stride)
        truth = truth5 if est.order == 5 else truth4
        if series != [(t, float(k)) for t, k in truth]:
            bad.append(name)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    report(1, ok, f"edges={len(edges)} mismatched={bad or 'none'} seconds={dt:.2f} (limit 10)")
    assert ok


# 2 -------------------------------------------------------------------------

def test_c2_unbiasedness(report):
    t0 = time.perf_counter()
    edges = generate_ba(300, 8, 0)
    o = _oracle(edges)
    seeds = range(2000)
    lines, ok = [], True
    for name, mem, kw in [("fourest", 500, {}), ("ts4c1", 500, {}), ("ts4c2", 500, {}),
                          ("ats4c", 500, {})]:
        f = _finals(name, mem, edges, seeds, **kw)
        se = statistics.stdev(f) / math.sqrt(len(f))
        z = (statistics.fmean(f) - o.cliques4) / se
        ok &= abs(z) <= Z_UNBIASED
        lines.append(f"{name} z={z:+.2f}")
    # five-clique estimators, same graph (hundreds of 5-cliques)
    f = _finals("fiveest", 1000, edges, seeds)
    se = statistics.stdev(f) / math.sqrt(len(f))
    z = (statistics.fmean(f) - o.cliques5) / se
    ok &= abs(z) <= Z_UNBIASED
    lines.append(f"fiveest z={z:+.2f}")
    f = _finals("ts5c", 1000, edges, seeds)
    rel = statistics.fmean(f) / o.cliques5 - 1
    ok &= abs(rel) <= TS5C_REL
    lines.append(f"ts5c rel={rel:+.3f}")
    dt = time.perf_counter() - t0
    ok &= dt < 20 * 60
    report(2, ok, f"c4={o.cliques4} c5={o.cliques5} " + " ".join(lines) + f" seconds={dt:.0f}")
    assert ok


# 3 -------------------------------------------------------------------------

def test_c3_kernel_monte_carlo(report):
    t0 = time.perf_counter()
    reps = [validate_prob(fx, runs=KERNEL_RUNS, seed=100 + i, z_max=Z_KERNEL)
            for i, fx in enumerate(default_fixtures())]
    failed = [f"{r.kernel}/{r.case}" for r in reps if not r.passed]
    worst = max(abs(r.z) for r in reps)
    cases = {(r.kernel, r.case) for r in reps}
    covered = all(("ts4c1", c) in cases for c in range(1, 5)) and all(
        ("ts4c2", c) in cases for c in range(1, 14))
    dt = time.perf_counter() - t0
    ok = not failed and covered and dt < 30 * 60
    report(3, ok, f"fixtures={len(reps)} all_cases={covered} failed={failed or 'none'} "
                  f"max|z|={worst:.2f} seconds={dt:.0f}")
    assert ok


# 4 -------------------------------------------------------------------------

def test_c4_mape_direction(report):
    t0 = time.perf_counter()
    wins = 0
    detail = []
    for rep in range(MAPE_REPS):
        rep_ok = True
        for m in (50, 100):
            edges = generate_ba(2000, m, 7919 * rep + m)
            M = int(0.05 * len(edges))
            truth = [g for _, g in truth_series(edges, 4, 100)]
            mape = {}
            for name in ("fourest", "ts4c1", "ts4c2"):
                vals = []
                for k in range(MAPE_TRIALS):
                    series = make_estimator(name, M, 1000 * rep + k).run(edges, stride=100)
                    vals.append(compute_mape([x for _, x in series], truth))
                mape[name] = statistics.fmean(vals)
            rep_ok &= mape["ts4c1"] < mape["fourest"] and mape["ts4c2"] < mape["fourest"]
            detail.append(f"r{rep}m{m}:" + "/".join(f"{mape[n]:.3f}" for n in ("fourest", "ts4c1", "ts4c2")))
        wins += rep_ok
    dt = time.perf_counter() - t0
    ok = wins >= MAPE_NEED and dt < 30 * 60
    report(4, ok, f"reps_with_tiered_better={wins}/{MAPE_REPS} (need {MAPE_NEED}) "
                  f"mape fourest/ts4c1/ts4c2 {' '.join(detail)} seconds={dt:.0f}")
    assert ok


# 5 -------------------------------------------------------------------------

def test_c5_variance_bounds(report):
    edges = generate_ba(300, 8, 0)
    o = _oracle(edges, five=False)
    a, b = count_overlap_pairs(o.adj)
    t = len(edges)
    seeds = range(1000)
    v1 = statistics.variance(_finals("ts4c1", 500, edges, seeds))
    b1 = variance_bound_ts4c1(o.cliques4, a, b, t, o.triangles, 400, 100)
    v0 = statistics.variance(_finals("fourest", 500, edges, seeds))
    b0 = variance_bound_fourest(o.cliques4, a, b, t, 500)
    ok = v1 <= b1 and v0 <= b0
    report(5, ok, f"ts4c1 var={v1:.4g} bound={b1:.4g}; fourest var={v0:.4g} bound={b0:.4g}")
    assert ok


# 6 -------------------------------------------------------------------------

def test_c6_reservoir_law(report):
    rng = random.Random(0)
    size_ok = True
    for _ in range(200):
        cap = rng.randint(1, 30)
        r = Reservoir(cap)
        for t in range(1, rng.randint(1, 200) + 1):
            r.offer(t, rng)
            size_ok &= len(r) == min(t, cap) and r.seen == t
        if rng.random() < 0.5 and cap > 1:
            r.shrink(cap // 2, rng)
            size_ok &= len(r) == min(r.seen, cap // 2)

    M, T, runs = 20, 100, 20000
    counts = [0] * T
    triples = [(3, 50, 100), (1, 2, 3), (40, 41, 99)]
    joint = {k: [0] * len(triples) for k in (1, 2, 3)}
    for s in range(runs):
        r = Reservoir(M)
        g = random.Random(s)
        for t in range(1, T + 1):
            r.offer(t, g)
        held = set(r.items)
        for x in held:
            counts[x - 1] += 1
        for k in (1, 2, 3):
            for j, tr in enumerate(triples):
                joint[k][j] += all(x in held for x in tr[:k])
    chi = stats.chisquare(counts)
    worst = 0.0
    for k in (1, 2, 3):
        p = joint_inclusion_prob(k, T, M)
        sd = math.sqrt(p * (1 - p) / runs)
        for c in joint[k]:
            worst = max(worst, abs(c / runs - p) / sd)
    ok = size_ok and chi.pvalue >= CHI_P and worst <= 3
    report(6, ok, f"size_invariant={size_ok} chi2_p={chi.pvalue:.3f} joint_max|z|={worst:.2f}")
    assert ok


# 7 -------------------------------------------------------------------------

def _brute(edges, n):
    es = {frozenset(e) for e in edges}
    out = []
    for k in (3, 4, 5):
        out.append(sum(1 for vs in combinations(range(n), k)
                       if all(frozenset(p) in es for p in combinations(vs, 2))))
    return tuple(out)


def test_c7_oracle(report):
    rng = random.Random(7)
    mism = 0
    overlap_ok = True
    for _ in range(200):
        n = rng.randint(4, 14)
        p = rng.uniform(0.2, 0.9)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        rng.shuffle(edges)
        o = _oracle(edges)
        mism += o.counts() != _brute(edges, n)
        try:
            count_overlap_pairs(o.adj)
        except AssertionError:
            overlap_ok = False
    k5 = count_overlap_pairs(adjacency([(i, j) for i in range(5) for j in range(i + 1, 5)]))
    ok = mism == 0 and overlap_ok and k5 == (0, 10)
    report(7, ok, f"brute_force_mismatches={mism}/200 overlap_ok={overlap_ok} K5(a,b)={k5}")
    assert ok


# 8 -------------------------------------------------------------------------

def test_c8_throughput(report):
    edges = generate_ba(10 ** 5, 10, 0)
    est = make_estimator("ts4c1", 10 ** 5, 0)
    t0 = time.perf_counter()
    for u, v in edges:
        est.process_edge(u, v)
    rate = len(edges) / (time.perf_counter() - t0)
    ok = rate >= THROUGHPUT_HARD
    soft = "met" if rate >= THROUGHPUT_SOFT else "missed"
    report(8, ok, f"ts4c1 {rate:,.0f} edges/s on {len(edges)} edges "
                  f"(target {THROUGHPUT_SOFT:.0e} {soft}, floor {THROUGHPUT_HARD:.0e})")
    assert ok


# 9 -------------------------------------------------------------------------

def _cli(args, env):
    return subprocess.run([sys.executable, "-m", "motifstream.cli", *args],
                          capture_output=True, env=env, check=True).stdout


def _tree(d):
    return {p.name: p.read_bytes() for p in sorted(d.iterdir()) if p.is_file()}


def test_c9_cli_determinism(report, tmp_path):
    env = dict(os.environ, MOTIFSTREAM_THREADS="2")
    outs = []
    for name in ("a", "b"):
        d = tmp_path / name
        d.mkdir()
        g = d / "g.txt"
        blob = _cli(["--seed", "5", "generate", "--n", "400", "--m", "6", "-o", str(g)], env)
        blob += _cli(["dedup", str(g), str(d / "g2.txt")], env)
        blob += _cli(["exact", str(g)], env)
        for est in ("fourest", "ts4c1", "ts4c2", "ats4c", "ts5c", "fiveest"):
            blob += _cli(["run", "--input", str(g), "--estimator", est, "--memory", "600",
                          "--trials", "3", "--seed", "9", "--parallel", "--shuffle",
                          "--out-dir", str(d / est)], env)
        blob += _cli(["validate-prob", "--kernel", "fourest", "--m-e", "10", "--runs", "20000",
                      "--times", "t1=1,t2=2,t3=3,t4=4,t5=5,t6=21"], env)
        files = {k: v for k, v in _tree(d).items() if k.endswith(".txt")}
        for sub in sorted(p for p in d.iterdir() if p.is_dir()):
            files.update({f"{sub.name}/{k}": v for k, v in _tree(sub).items()})
        outs.append((blob, files))
    ok = outs[0] == outs[1]
    report(9, ok, f"byte_identical={ok} files_compared={len(outs[0][1])}")
    assert ok
