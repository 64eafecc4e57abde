"""TS5C: 5-cliques from an edge sample plus a sample of observed 4-cliques."""

from __future__ import annotations

from ..clique_prob import staged_inclusion
from ..reservoir import Reservoir
from .base import EMPTY, CliqueEstimator, EdgeSample, split_memory

KERNELS = ("exact", "approx")


class TS5C(CliqueEstimator):
    """A stored 4-clique containing one endpoint of the new edge, plus the
    three sampled edges joining the other endpoint to it, closes a 5-clique.

    ``kernel="exact"`` weights detections by the exact joint probability;
    ``kernel="approx"`` uses the product-of-marginals form
    ``min(1, M_C/t_C) * min(1, M_e/t)**3 * min(1, M_e/t*)**5``.
    """

    name = "ts5c"
    order = 5
    default_alpha = 0.8

    def __init__(self, memory: int, seed: int, alpha: float | None = None,
                 m_edges: int | None = None, m_cliques: int | None = None,
                 kernel: str = "exact"):
        super().__init__(memory, seed)
        if kernel not in KERNELS:
            raise ValueError(f"kernel must be one of {KERNELS}")
        if m_edges is None or m_cliques is None:
            m_edges, m_cliques = split_memory(memory, self.default_alpha if alpha is None else alpha)
        elif m_edges + m_cliques != memory:
            raise ValueError("m_edges + m_cliques must equal memory")
        self.kernel = kernel
        self.m_e = m_edges
        self.m_c = m_cliques
        self.sample = EdgeSample(m_edges)
        self.cliques: Reservoir = Reservoir(m_cliques)
        # at[x][rec] = (the other three vertices, time observed)
        self.at: dict[int, dict[tuple, tuple]] = {}

    @property
    def t_c(self) -> int:
        return self.cliques.seen

    def _prob(self, t, t_star, c1, c2, c3):
        t_c = self.cliques.seen
        qc = 1.0 if t_c <= self.m_c else self.m_c / t_c
        m = self.m_e
        if self.kernel == "approx":
            return qc * min(1.0, m / t) ** 3 * min(1.0, m / t_star) ** 5
        k = (c1 < t_star) + (c2 < t_star) + (c3 < t_star)
        return qc * staged_inclusion(5 + k, t_star - 1, m, 3, t - 1, m, k)

    def _index(self, rec):
        at = self.at
        verts = rec[:4]
        for i, x in enumerate(verts):
            d = at.get(x)
            if d is None:
                at[x] = d = {}
            d[rec] = (verts[:i] + verts[i + 1:], rec[4])

    def _unindex(self, rec):
        at = self.at
        for x in rec[:4]:
            d = at[x]
            del d[rec]
            if not d:
                del at[x]

    def process_edge(self, u: int, v: int) -> float:
        if u == v:
            raise ValueError("self-loop")
        self.t = t = self.t + 1
        adj = self.sample.adj
        nu = adj.get(u, EMPTY)
        nv = adj.get(v, EMPTY)
        at = self.at
        acc = 0.0
        for x, ny in ((u, nv), (v, nu)):
            recs = at.get(x)
            if not recs or not ny:
                continue
            for (a, b, c), t_star in recs.values():
                ca = ny.get(a)
                if ca is None:
                    continue
                cb = ny.get(b)
                if cb is None:
                    continue
                cc = ny.get(c)
                if cc is None:
                    continue
                acc += 0.5 / self._prob(t, t_star, ca, cb, cc)
        if acc:
            self.kappa += acc

        if nu and nv:
            small, big = (nu, nv) if len(nu) <= len(nv) else (nv, nu)
            common = [w for w in small if w in big]
            rng = self.rng
            for i, w in enumerate(common):
                nw = adj[w]
                for z in common[i + 1:]:
                    if z in nw:
                        rec = (u, v, w, z, t)
                        ins, old = self.cliques.offer(rec, rng)
                        if ins:
                            if old is not None:
                                self._unindex(old)
                            self._index(rec)
        self.sample.offer(u, v, t, self.rng)
        return self.kappa

    def check_invariants(self) -> None:
        self.sample.check()
        ref: dict = {}
        for rec in self.cliques.items:
            verts = rec[:4]
            for i, x in enumerate(verts):
                ref.setdefault(x, {})[rec] = (verts[:i] + verts[i + 1:], rec[4])
        assert ref == self.at, "4-clique index out of sync"
