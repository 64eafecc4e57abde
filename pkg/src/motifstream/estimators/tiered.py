"""Two-tier 4-clique estimators: an edge sample plus a triangle sample.

A stored triangle is a tuple ``(a, b, c, ta, tb, tc)`` where ``ta`` is the
arrival index of the edge opposite ``a`` (that is, edge (b, c)).
"""

from __future__ import annotations

from ..clique_prob import _p_ts4c1, _p_ts4c2
from ..reservoir import Reservoir
from .base import EMPTY, CliqueEstimator, EdgeSample, split_memory


class _TriangleTier:
    """Triangle reservoir with a per-vertex index and (optionally) a per-edge one.

    ``at[x][rec] = (w, z, t_wz, t_xw, t_xz)`` for each stored triangle with x.
    ``by_edge[(w, z)][x] = (t_xw, t_xz)`` for the third vertex x.
    """

    def __init__(self, capacity: int, edge_index: bool):
        self.res: Reservoir = Reservoir(capacity)
        self.at: dict[int, dict[tuple, tuple]] = {}
        self.by_edge: dict[tuple[int, int], dict[int, tuple]] | None = {} if edge_index else None

    @property
    def tau(self) -> int:
        return self.res.seen

    def _views(self, rec):
        a, b, c, ta, tb, tc = rec
        # vertex, other1, other2, opposite ts, ts(x, o1), ts(x, o2)
        return ((a, b, c, ta, tc, tb), (b, a, c, tb, tc, ta), (c, a, b, tc, tb, ta))

    def _index(self, rec):
        at = self.at
        for x, w, z, t_wz, t_xw, t_xz in self._views(rec):
            d = at.get(x)
            if d is None:
                at[x] = d = {}
            d[rec] = (w, z, t_wz, t_xw, t_xz)
            if self.by_edge is not None:
                k = (w, z) if w < z else (z, w)
                e = self.by_edge.get(k)
                if e is None:
                    self.by_edge[k] = e = {}
                e[x] = (t_xw, t_xz) if w < z else (t_xz, t_xw)

    def _unindex(self, rec):
        at = self.at
        for x, w, z, _, _, _ in self._views(rec):
            d = at[x]
            del d[rec]
            if not d:
                del at[x]
            if self.by_edge is not None:
                k = (w, z) if w < z else (z, w)
                e = self.by_edge[k]
                del e[x]
                if not e:
                    del self.by_edge[k]

    def offer(self, rec, rng) -> None:
        ins, old = self.res.offer(rec, rng)
        if ins:
            if old is not None:
                self._unindex(old)
            self._index(rec)

    def check(self) -> None:
        ref = _TriangleTier(self.res.capacity, self.by_edge is not None)
        for rec in self.res.items:
            ref._index(rec)
        assert ref.at == self.at, "triangle vertex index out of sync"
        assert ref.by_edge == self.by_edge, "triangle edge index out of sync"
        assert len(self.res.items) <= self.res.capacity


class _Tiered(CliqueEstimator):
    default_alpha = 0.8
    edge_index = False

    def __init__(self, memory: int, seed: int, alpha: float | None = None,
                 m_edges: int | None = None, m_triangles: int | None = None):
        super().__init__(memory, seed)
        if m_edges is None or m_triangles is None:
            m_edges, m_triangles = split_memory(memory, self.default_alpha if alpha is None else alpha)
        elif m_edges + m_triangles != memory:
            raise ValueError("m_edges + m_triangles must equal memory")
        self.m_e = m_edges
        self.m_d = m_triangles
        self.sample = EdgeSample(m_edges)
        self.tri = _TriangleTier(m_triangles, self.edge_index)

    @property
    def tau(self) -> int:
        return self.tri.res.seen

    def _update_triangles(self, u, v, t, nu, nv):
        # nu, nv are the sampled neighborhoods before (u, v) is offered
        if len(nu) > len(nv):
            small, big, su = nv, nu, False
        else:
            small, big, su = nu, nv, True
        rng = self.rng
        offer = self.tri.offer
        for w in small:
            tw = big.get(w)
            if tw is None:
                continue
            t_uw, t_vw = (small[w], tw) if su else (tw, small[w])
            offer((u, v, w, t_vw, t_uw, t), rng)

    def process_edge(self, u: int, v: int) -> float:
        if u == v:
            raise ValueError("self-loop")
        self.t = t = self.t + 1
        adj = self.sample.adj
        nu = adj.get(u, EMPTY)
        nv = adj.get(v, EMPTY)
        self._update_estimate(u, v, t, nu, nv)
        if nu and nv:
            self._update_triangles(u, v, t, nu, nv)
        self.sample.offer(u, v, t, self.rng)
        return self.kappa

    def check_invariants(self) -> None:
        self.sample.check()
        self.tri.check()


class TS4C1(_Tiered):
    """Detects a 4-clique through one stored triangle and two sampled edges.

    Both triangles of the clique that contain an endpoint of the closing edge
    give a path, each weighted 1/2.
    """

    name = "ts4c1"
    default_alpha = 0.8

    def _update_estimate(self, u, v, t, nu, nv):
        at = self.tri.at
        tau = self.tri.res.seen
        m_e, m_d = self.m_e, self.m_d
        acc = 0.0
        for x, ny in ((u, nv), (v, nu)):
            recs = at.get(x)
            if not recs or not ny:
                continue
            for w, z, t1, t4, t2 in recs.values():
                t3 = ny.get(w)
                if t3 is None:
                    continue
                t5 = ny.get(z)
                if t5 is None:
                    continue
                acc += 0.5 / _p_ts4c1(t1, t2, t4, t3, t5, t, m_e, m_d, tau)
        if acc:
            self.kappa += acc


class TS4C2(_Tiered):
    """Detects a 4-clique through two stored triangles sharing an edge."""

    name = "ts4c2"
    default_alpha = 2.0 / 3.0
    edge_index = True

    def _update_estimate(self, u, v, t, nu, nv):
        tri = self.tri
        ru = tri.at.get(u)
        if not ru or v not in tri.at:
            return
        by_edge = tri.by_edge
        tau = tri.res.seen
        m_e, m_d = self.m_e, self.m_d
        acc = 0.0
        for w, z, t1, t4, t2 in ru.values():
            e = by_edge.get((w, z) if w < z else (z, w))
            if e is None:
                continue
            hit = e.get(v)
            if hit is None:
                continue
            t3, t5 = hit  # order does not matter for the kernel
            acc += 1.0 / _p_ts4c2(t1, t2, t4, t3, t5, m_e, m_d, tau)
        if acc:
            self.kappa += acc
