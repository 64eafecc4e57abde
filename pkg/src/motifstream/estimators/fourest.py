"""Single-tier estimators: 4-cliques and 5-cliques from an edge sample only."""

from __future__ import annotations

from ..reservoir import inclusion
from .base import EMPTY, CliqueEstimator, EdgeSample


class FourEst(CliqueEstimator):
    """Counts 4-cliques closed by each arrival inside a uniform edge sample."""

    name = "fourest"

    def __init__(self, memory: int, seed: int):
        super().__init__(memory, seed)
        self.sample = EdgeSample(memory)

    def process_edge(self, u: int, v: int) -> float:
        if u == v:
            raise ValueError("self-loop")
        self.t = t = self.t + 1
        adj = self.sample.adj
        nu = adj.get(u, EMPTY)
        nv = adj.get(v, EMPTY)
        if len(nu) > len(nv):
            nu, nv = nv, nu
        common = [w for w in nu if w in nv]
        if len(common) > 1:
            cnt = 0
            for i, w in enumerate(common):
                nw = adj[w]
                for z in common[i + 1:]:
                    if z in nw:
                        cnt += 1
            if cnt:
                self.kappa += cnt / inclusion(5, t - 1, self.memory)
        self.sample.offer(u, v, t, self.rng)
        return self.kappa

    def check_invariants(self) -> None:
        self.sample.check()


class FiveEst(CliqueEstimator):
    """Counts 5-cliques closed by each arrival inside a uniform edge sample."""

    name = "fiveest"
    order = 5

    def __init__(self, memory: int, seed: int):
        super().__init__(memory, seed)
        self.sample = EdgeSample(memory)

    def process_edge(self, u: int, v: int) -> float:
        if u == v:
            raise ValueError("self-loop")
        self.t = t = self.t + 1
        adj = self.sample.adj
        nu = adj.get(u, EMPTY)
        nv = adj.get(v, EMPTY)
        if len(nu) > len(nv):
            nu, nv = nv, nu
        common = [w for w in nu if w in nv]
        if len(common) > 2:
            cnt = 0
            for i, w in enumerate(common):
                nw = adj[w]
                cand = [z for z in common[i + 1:] if z in nw]
                for j, z in enumerate(cand):
                    nz = adj[z]
                    for y in cand[j + 1:]:
                        if y in nz:
                            cnt += 1
            if cnt:
                self.kappa += cnt / inclusion(9, t - 1, self.memory)
        self.sample.offer(u, v, t, self.rng)
        return self.kappa

    def check_invariants(self) -> None:
        self.sample.check()
