import statistics

import pytest

from motifstream import generate_ba
from motifstream.estimators import ATS4C, ESTIMATORS, TS4C1, TS4C2, TS5C, make_estimator, split_memory
from motifstream.oracle import ExactOracle

from conftest import complete_graph, planted_clique_graph

FOUR = ["fourest", "ts4c1", "ts4c2", "ats4c"]
FIVE = ["ts5c", "fiveest"]


def run(est, edges, check_every=0):
    for i, (u, v) in enumerate(edges, 1):
        est.process_edge(u, v)
        if check_every and i % check_every == 0:
            est.check_invariants()
    est.check_invariants()
    return est.estimate()


def oracle(edges):
    o = ExactOracle()
    for u, v in edges:
        o.insert_edge(u, v)
    return o


@pytest.mark.parametrize("name", FOUR)
def test_k4_exact(name, k4):
    assert run(make_estimator(name, 10, 1), k4) == 1.0


@pytest.mark.parametrize("name", FIVE)
def test_k5_exact(name, k5):
    assert run(make_estimator(name, 20, 1), k5) == 1.0


@pytest.mark.parametrize("name", FOUR + FIVE)
def test_clique_free_stream_is_zero(name):
    # a long cycle plus chords that close no 4-clique
    edges = [(i, (i + 1) % 300) for i in range(300)] + [(i, i + 2) for i in range(0, 296, 4)]
    assert run(make_estimator(name, 60, 3), edges, 50) == 0.0


@pytest.mark.parametrize("name", FOUR + FIVE)
def test_exact_without_eviction(name):
    edges = generate_ba(120, 5, 4)
    o = oracle(edges)
    want = o.cliques5 if name in FIVE else o.cliques4
    assert run(make_estimator(name, 10 * len(edges), 9), edges) == want


@pytest.mark.parametrize("name", FOUR + FIVE)
def test_same_seed_same_trajectory(name):
    edges = generate_ba(150, 6, 2)
    a = make_estimator(name, 300, 17).run(edges, stride=10)
    b = make_estimator(name, 300, 17).run(edges, stride=10)
    c = make_estimator(name, 300, 18).run(edges, stride=10)
    assert a == b
    assert a != c


@pytest.mark.parametrize("name", FOUR + FIVE)
def test_invariants_under_eviction(name):
    edges = planted_clique_graph(400, 900, 25, 5, 1)
    est = make_estimator(name, 150, 5)
    run(est, edges, check_every=37)
    assert est.estimate() >= 0


def test_split_memory():
    assert split_memory(500, 0.8) == (400, 100)
    assert split_memory(500, 2 / 3) == (333, 167)
    t1 = TS4C1(500, 0)
    t2 = TS4C2(500, 0)
    assert (t1.m_e, t1.m_d) == (400, 100)
    assert (t2.m_e, t2.m_d) == (333, 167)
    with pytest.raises(ValueError):
        split_memory(1, 0.5)


def test_unknown_estimator():
    with pytest.raises(ValueError):
        make_estimator("nope", 10, 0)
    assert set(ESTIMATORS) == set(FOUR + FIVE)


def test_self_loop_rejected():
    for name in FOUR + FIVE:
        with pytest.raises(ValueError):
            make_estimator(name, 10, 0).process_edge(3, 3)


def test_tiered_uses_pre_step_tau():
    # K4 with M_e large: both paths fire once, tau below capacity, estimate 1
    est = TS4C1(100, 0)
    run(est, complete_graph(4))
    assert est.tau == 4 and est.estimate() == 1.0


def test_ats4c_triangle_free_matches_fourest():
    edges = [(i, j) for i in range(30) for j in range(30, 60) if (i + j) % 3 == 0]
    a = make_estimator("ats4c", 40, 7)
    f = make_estimator("fourest", 40, 7)
    ta = a.run(edges, stride=5)
    tf = f.run(edges, stride=5)
    assert ta == tf
    assert a.regime == 1


def test_ats4c_switches_on_sparse_stream():
    edges = planted_clique_graph(3000, 4000, 60, 5, 3)
    est = ATS4C(600, 1)
    run(est, edges, check_every=101)
    assert est.regime == 2
    assert est.switch_time is not None and est.switch_time % 600 == 0
    assert est.m_e + est.m_d <= 600
    assert len(est.regions) >= 2  # memory was moved again after the switch


def test_ats4c_prefix_exact():
    edges = generate_ba(60, 4, 1)
    M = len(edges)
    est = ATS4C(M, 3)
    o = ExactOracle()
    for u, v in edges:
        est.process_edge(u, v)
        o.insert_edge(u, v)
        assert est.estimate() == o.cliques4


def test_ts5c_kernels():
    edges = planted_clique_graph(200, 300, 12, 6, 2)
    a = TS5C(300, 4, kernel="exact")
    b = TS5C(300, 4, kernel="approx")
    run(a, edges)
    run(b, edges)
    assert a.estimate() > 0 and b.estimate() > 0
    assert a.estimate() != b.estimate()
    with pytest.raises(ValueError):
        TS5C(150, 4, kernel="bogus")


def _trial_mean(name, edges, memory, seeds, **kw):
    xs = []
    for s in range(seeds):
        e = make_estimator(name, memory, s, **kw)
        for u, v in edges:
            e.process_edge(u, v)
        xs.append(e.estimate())
    return statistics.fmean(xs), statistics.stdev(xs) / len(xs) ** 0.5


@pytest.mark.parametrize("name", FOUR)
def test_quick_unbiasedness(name):
    edges = planted_clique_graph(300, 500, 20, 5, 11)
    truth = oracle(edges).cliques4
    mean, se = _trial_mean(name, edges, 250, 300)
    assert abs(mean - truth) <= 4 * se + 1e-9


def test_ats4c_unbiased_through_switch_and_merge():
    edges = planted_clique_graph(3000, 4000, 60, 5, 3)
    truth = oracle(edges).cliques4
    mean, se = _trial_mean("ats4c", edges, 600, 400)
    assert abs(mean - truth) <= 4 * se
