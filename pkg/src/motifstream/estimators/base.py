"""Shared pieces: the sampled edge set and the estimator interface."""

from __future__ import annotations

from typing import Callable, Iterable

from ..reservoir import Reservoir
from ..stream import make_rng

EMPTY: dict = {}


class EdgeSample:
    """Reservoir of edges plus an adjacency view of the sampled graph.

    ``adj[x]`` maps each sampled neighbor of x to the arrival index of the
    connecting edge.  Insertion order of the inner dicts is the order edges
    entered the sample, which keeps iteration deterministic.
    """

    __slots__ = ("res", "adj")

    def __init__(self, capacity: int):
        self.res: Reservoir = Reservoir(capacity)
        self.adj: dict[int, dict[int, int]] = {}

    @property
    def capacity(self) -> int:
        return self.res.capacity

    def __len__(self) -> int:
        return len(self.res.items)

    def _add(self, u, v, t):
        adj = self.adj
        nu = adj.get(u)
        if nu is None:
            adj[u] = {v: t}
        else:
            nu[v] = t
        nv = adj.get(v)
        if nv is None:
            adj[v] = {u: t}
        else:
            nv[u] = t

    def _remove(self, u, v):
        adj = self.adj
        nu = adj[u]
        del nu[v]
        if not nu:
            del adj[u]
        nv = adj[v]
        del nv[u]
        if not nv:
            del adj[v]

    def offer(self, u: int, v: int, t: int, rng) -> bool:
        ins, old = self.res.offer((u, v, t), rng)
        if ins:
            if old is not None:
                self._remove(old[0], old[1])
            self._add(u, v, t)
        return ins

    def shrink(self, capacity: int, rng) -> list:
        gone = self.res.shrink(capacity, rng)
        for x, y, _ in gone:
            self._remove(x, y)
        return gone

    def common(self, u: int, v: int) -> list[int]:
        nu = self.adj.get(u)
        nv = self.adj.get(v)
        if not nu or not nv:
            return []
        if len(nu) > len(nv):
            nu, nv = nv, nu
        return [w for w in nu if w in nv]

    def check(self) -> None:
        """Rebuild the adjacency from the reservoir and compare."""
        ref: dict[int, dict[int, int]] = {}
        for u, v, t in self.res.items:
            ref.setdefault(u, {})[v] = t
            ref.setdefault(v, {})[u] = t
        assert ref == self.adj, "edge adjacency out of sync with reservoir"
        assert len(self.res.items) <= self.res.capacity


def split_memory(memory: int, alpha: float) -> tuple[int, int]:
    """Split a budget into (edge slots, second-tier slots), edge share floored."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    m_e = int(alpha * memory + 1e-9)
    m_2 = memory - m_e
    if m_e < 1 or m_2 < 1:
        raise ValueError(f"memory {memory} too small to split with alpha={alpha}")
    return m_e, m_2


class CliqueEstimator:
    """Common driver.  Subclasses implement ``process_edge``.

    Each call handles one arrival in three stages: estimate update, then the
    second-tier update (triangles or 4-cliques), then the edge sample.
    """

    name = "base"
    order = 4

    def __init__(self, memory: int, seed: int):
        if memory < 1:
            raise ValueError("memory must be positive")
        self.memory = memory
        self.seed = seed
        self.rng = make_rng(seed)
        self.t = 0
        self.kappa = 0.0

    def process_edge(self, u: int, v: int) -> float:
        raise NotImplementedError

    def estimate(self) -> float:
        return self.kappa

    def run(self, edges: Iterable, stride: int = 0,
            on_step: Callable[[int, float], None] | None = None) -> list[tuple[int, float]]:
        """Feed ``(u, v, ...)`` records; return ``(t, estimate)`` every ``stride``
        steps and at the final step.  ``on_step`` sees every step."""
        out: list[tuple[int, float]] = []
        proc = self.process_edge
        for e in edges:
            k = proc(e[0], e[1])
            if on_step is not None:
                on_step(self.t, k)
            if stride and self.t % stride == 0:
                out.append((self.t, k))
        if stride and (not out or out[-1][0] != self.t) and self.t:
            out.append((self.t, self.kappa))
        return out

    def check_invariants(self) -> None:
        pass
