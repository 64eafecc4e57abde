"""Exact incremental clique counts, overlap statistics and error metrics."""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Sequence


class ExactOracle:
    """Exact triangle / 4-clique / 5-clique counts under edge insertions.

    Each new edge (u, v) closes one triangle per common neighbor, one
    4-clique per edge among the common neighbors and one 5-clique per
    triangle among them.
    """

    def __init__(self, track_five: bool = True):
        self.adj: dict[int, set[int]] = {}
        self.track_five = track_five
        self.t = 0
        self.triangles = 0
        self.cliques4 = 0
        self.cliques5 = 0

    def insert_edge(self, u: int, v: int) -> tuple[int, int, int]:
        if u == v:
            raise ValueError(f"self-loop on {u}")
        adj = self.adj
        nu = adj.setdefault(u, set())
        nv = adj.setdefault(v, set())
        if v in nu:
            raise ValueError(f"duplicate edge ({u}, {v})")
        common = nu & nv
        d3 = len(common)
        d4 = d5 = 0
        if d3 > 1:
            for w in common:
                inner = adj[w] & common
                d4 += len(inner)
                if self.track_five and len(inner) > 1:
                    for z in inner:
                        if z > w:
                            d5 += len(adj[z] & inner)
            d4 //= 2
            if self.track_five:
                d5 //= 3
        nu.add(v)
        nv.add(u)
        self.t += 1
        self.triangles += d3
        self.cliques4 += d4
        self.cliques5 += d5
        return d3, d4, d5

    def counts(self) -> tuple[int, int, int]:
        return self.triangles, self.cliques4, self.cliques5


def enumerate_4cliques(adj: dict[int, set[int]], limit: int | None = None) -> list[tuple[int, int, int, int]]:
    """All 4-cliques as sorted vertex tuples.  Raises if more than ``limit``."""
    out = []
    for u in sorted(adj):
        up = [v for v in adj[u] if v > u]
        for v in sorted(up):
            c = sorted(w for w in adj[u] & adj[v] if w > v)
            for i, w in enumerate(c):
                nw = adj[w]
                for x in c[i + 1:]:
                    if x in nw:
                        out.append((u, v, w, x))
                        if limit is not None and len(out) > limit:
                            raise ValueError(f"more than {limit} 4-cliques")
    return out


def _clique_edges(q):
    return [(q[i], q[j]) for i in range(4) for j in range(i + 1, 4)]


def count_overlap_pairs(adj: dict[int, set[int]], limit: int | None = 100_000) -> tuple[int, int]:
    """Return (a, b): unordered 4-clique pairs sharing exactly one edge and
    exactly three edges (a triangle).  Other overlaps cannot occur between
    distinct 4-cliques sharing at least one edge."""
    cliques = enumerate_4cliques(adj, limit)
    by_edge: dict[tuple[int, int], list[int]] = {}
    for idx, q in enumerate(cliques):
        for e in _clique_edges(q):
            by_edge.setdefault(e, []).append(idx)
    a = b = 0
    for e, ids in by_edge.items():
        if len(ids) < 2:
            continue
        for i, j in combinations(ids, 2):
            shared = set(_clique_edges(cliques[i])) & set(_clique_edges(cliques[j]))
            # count each pair once, at its smallest shared edge
            if min(shared) != e:
                continue
            if len(shared) == 1:
                a += 1
            elif len(shared) == 3:
                b += 1
            else:
                raise AssertionError(f"impossible overlap of {len(shared)} edges")
    return a, b


def overlap_pairs_by_counting(adj: dict[int, set[int]], limit: int | None = 100_000) -> tuple[int, int]:
    """Same (a, b) via per-triangle and per-edge membership counts."""
    cliques = enumerate_4cliques(adj, limit)
    per_tri: dict[tuple, int] = {}
    per_edge: dict[tuple, int] = {}
    for q in cliques:
        for tri in combinations(q, 3):
            per_tri[tri] = per_tri.get(tri, 0) + 1
        for e in _clique_edges(q):
            per_edge[e] = per_edge.get(e, 0) + 1
    b = sum(k * (k - 1) // 2 for k in per_tri.values())
    # a pair sharing a triangle shares three edges, each counted once per edge
    a = sum(k * (k - 1) // 2 for k in per_edge.values()) - 3 * b
    return a, b


def adjacency(edges: Iterable[Sequence[int]]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for e in edges:
        u, v = e[0], e[1]
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


# ------------------------------------------------------------ bounds

def _c_factor(m_e: float) -> float:
    if m_e <= 3:
        return math.inf
    return m_e ** 3 / ((m_e - 1) * (m_e - 2) * (m_e - 3))


def variance_bound_ts4c1(c4, a, b, t, tau, M_e, M_D) -> float:
    """Upper bound on Var[kappa] for TS4C1 after t arrivals."""
    c = _c_factor(M_e)
    r = (t - 1) / M_e
    q = tau / M_D
    return (c4 * (c * r ** 4 * q - 1)
            + 2 * a * (c * r - 1)
            + 2 * b * (c * r ** 2 * (0.25 * q + 0.75 * r) - 1))


def variance_bound_fourest(c4, a, b, t, M) -> float:
    """Variance expression for FourEst after t arrivals."""
    r = (t - 1) / M
    return c4 * (r ** 5 - 1) + a * (r - 1) + b * (r ** 3 - 1)


def required_memory_ts4c1(c4, a, b, t, tau, eps, delta) -> float:
    """Memory above which TS4C1 is within relative error eps w.p. 1 - delta.

    The constant c depends on the edge share 4M/5, so it is refreshed once
    from the first estimate (fixed-point iteration starting at c = 1.1).
    """
    if c4 <= 0:
        raise ValueError("c4 must be positive")
    if not (0 < eps and 0 < delta < 1):
        raise ValueError("need eps > 0 and 0 < delta < 1")

    def bound(c):
        s = delta * eps * eps
        m1 = 1.25 * (12 * c * (t - 1) ** 4 * tau / (s * c4)) ** 0.2
        m2 = 15 * c * a * (t - 1) / (s * c4 * c4)
        m3 = 1.25 * (3 * b * c * (t - 1) ** 2 * (4 * tau + 3 * (t - 1)) / (2 * s * c4 * c4)) ** (1 / 3)
        return max(m1, m2, m3)

    m = bound(1.1)
    c = _c_factor(0.8 * m)
    if math.isinf(c):
        return m
    return bound(c)


def compute_mape(estimates: Sequence[float], truths: Sequence[float]) -> float:
    """Mean |est - truth| / truth over steps with a non-zero truth."""
    if len(estimates) != len(truths):
        raise ValueError("series lengths differ")
    tot = 0.0
    n = 0
    for e, g in zip(estimates, truths):
        if g == 0:
            continue
        tot += abs(e - g) / abs(g)
        n += 1
    if n == 0:
        raise ValueError("ground truth is zero at every step")
    return tot / n
