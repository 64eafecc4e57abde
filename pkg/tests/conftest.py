import random

import pytest


def planted_clique_graph(n, m_rand, n_cliques, k, seed):
    """Sparse random edges plus ``n_cliques`` planted k-cliques, shuffled."""
    rng = random.Random(seed)
    es = set()
    for _ in range(n_cliques):
        vs = rng.sample(range(n), k)
        for i in range(k):
            for j in range(i + 1, k):
                a, b = vs[i], vs[j]
                es.add((min(a, b), max(a, b)))
    target = len(es) + m_rand
    while len(es) < target:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            es.add((min(a, b), max(a, b)))
    es = sorted(es)
    rng.shuffle(es)
    return es


def complete_graph(k, offset=0):
    return [(offset + i, offset + j) for j in range(k) for i in range(j)]


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k5():
    return complete_graph(5)
