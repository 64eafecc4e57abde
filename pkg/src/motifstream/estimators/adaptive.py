"""ATS4C: starts as FourEst and moves memory to a triangle tier when that pays.

Regime 1 samples edges only.  Every M steps it compares the single-tier
detection probability ``min(1, M/t)**5`` with the two-tier one
``min(1, aM/t)**4 * min(1, (1-a)M/tau)**2`` over a grid of edge shares a.
On a switch it stores the triangles present in the current edge sample,
shrinks the edge sample to ``a*M`` and continues with two-triangle detection.

In regime 2 the triangle tier may grow further (every M steps, while it
holds less than M/3 slots).  Growing freezes the active triangle reservoir
into a region and opens a new one.  A frozen region is merged once the
active region's keep rate falls to its own; from then on it is thinned so
its members keep the same marginal rate as new triangles.  Thinning uses an
independent uniform key per member, so inclusion stays a product of known
factors and every detection is weighted by its exact probability given the
path of memory decisions.
"""

from __future__ import annotations

import bisect

from ..clique_prob import staged_inclusion
from ..reservoir import Reservoir, inclusion
from .base import EMPTY, CliqueEstimator, EdgeSample

ALPHA_MIN = 2.0 / 3.0
ALPHA_STEP = 0.01


def alpha_grid(step: float = ALPHA_STEP) -> list[float]:
    out = []
    k = 0
    while True:
        a = ALPHA_MIN + k * step
        if a >= 1.0 - 1e-12:
            return out
        out.append(a)
        k += 1


def best_split(M: int, t: float, tau: float, grid: list[float]) -> tuple[float, float]:
    """Return (alpha*, p_alpha*) maximising the two-tier probability proxy.

    Ties go to the smaller alpha.
    """
    best_a, best_p = grid[0], -1.0
    for a in grid:
        pe = min(1.0, a * M / t) ** 4
        pt = 1.0 if tau <= 0 else min(1.0, (1.0 - a) * M / tau) ** 2
        p = pe * pt
        if p > best_p:
            best_a, best_p = a, p
    return best_a, best_p


class _Region:
    """One triangle reservoir.  Only the newest region accepts triangles."""

    __slots__ = ("rid", "res", "slots", "theta", "frozen", "merged", "queue", "keys")

    def __init__(self, rid: int, capacity: int):
        self.rid = rid
        self.res: Reservoir = Reservoir(capacity)
        self.slots = capacity
        self.theta = 1.0
        self.frozen = False
        self.merged = False
        self.queue: list = []  # (key, rec), largest key last
        self.keys: dict = {}

    def base(self) -> float:
        n = self.res.seen
        return 1.0 if n <= self.res.capacity else self.res.capacity / n

    def marginal(self) -> float:
        return self.base() * self.theta

    def pair(self) -> float:
        return inclusion(2, self.res.seen, self.res.capacity) * self.theta * self.theta


class ATS4C(CliqueEstimator):
    name = "ats4c"

    def __init__(self, memory: int, seed: int, grid_step: float = ALPHA_STEP):
        super().__init__(memory, seed)
        if memory < 6:
            raise ValueError("ATS4C needs memory >= 6")
        self.M = memory
        self.grid = alpha_grid(grid_step)
        self.sample = EdgeSample(memory)
        self.regime = 1
        self.tau_seen = 0
        self.tau_marks: dict[int, int] = {}
        self.m_e = memory
        self.switch_time: int | None = None
        # capacity changes: change j happens between state (n_j, 0) and (n_j, 1)
        self._chg_n: list[int] = []
        self._chg_cap: list[int] = []
        self.regions: list[_Region] = []
        self.active: _Region | None = None
        self.members: dict = {}  # triangle record -> region
        self.at: dict[int, dict] = {}
        self.by_edge: dict[tuple[int, int], dict] = {}

    # ------------------------------------------------------------ helpers

    @property
    def m_d(self) -> int:
        return sum(r.slots for r in self.regions)

    @property
    def tau(self) -> int:
        return self.tau_seen

    def _cap(self, n: int, phase: int) -> int:
        # number of changes applied at state (n, phase)
        i = bisect.bisect_left(self._chg_n, n + phase)
        return self.M if i == 0 else self._chg_cap[i - 1]

    def _shrink_edges(self, new_cap: int, t: int) -> None:
        self.sample.shrink(new_cap, self.rng)
        self._chg_n.append(t - 1)
        self._chg_cap.append(new_cap)
        self.m_e = new_cap

    # records: (a, b, c, ta, tb, tc, n_ev, phase)

    def _index(self, rec):
        a, b, c, ta, tb, tc = rec[:6]
        at, by_edge = self.at, self.by_edge
        for x, w, z in ((a, b, c), (b, a, c), (c, a, b)):
            d = at.get(x)
            if d is None:
                at[x] = d = {}
            d[rec] = (w, z)
            k = (w, z) if w < z else (z, w)
            e = by_edge.get(k)
            if e is None:
                by_edge[k] = e = {}
            e[x] = rec

    def _unindex(self, rec):
        a, b, c = rec[:3]
        at, by_edge = self.at, self.by_edge
        for x, w, z in ((a, b, c), (b, a, c), (c, a, b)):
            d = at[x]
            del d[rec]
            if not d:
                del at[x]
            k = (w, z) if w < z else (z, w)
            e = by_edge[k]
            del e[x]
            if not e:
                del by_edge[k]

    def _offer_triangle(self, rec) -> None:
        reg = self.active
        ins, old = reg.res.offer(rec, self.rng)
        if ins:
            if old is not None:
                del self.members[old]
                self._unindex(old)
            self.members[rec] = reg
            self._index(rec)

    def _edge_event(self, rec):
        n, ph = rec[6], rec[7]
        ev = frozenset(x for x in rec[3:6] if x <= n)
        return n, ph, ev

    def _pair_prob(self, r1, r2) -> float:
        n1, ph1, a1 = self._edge_event(r1)
        n2, ph2, a2 = self._edge_event(r2)
        if (n1, ph1) == (n2, ph2):
            pe = inclusion(len(a1 | a2), n1, self._cap(n1, ph1))
        else:
            if (n2, ph2) < (n1, ph1):
                n1, ph1, a1, n2, ph2, a2 = n2, ph2, a2, n1, ph1, a1
            carried = frozenset(x for x in a2 if x <= n1)
            c1 = self._cap(n1, ph1)
            pe = staged_inclusion(len(a1 | carried), n1, c1, len(a2), n2,
                                  self._cap(n2, ph2), len(carried))
        g1, g2 = self.members[r1], self.members[r2]
        pt = g1.pair() if g1 is g2 else g1.marginal() * g2.marginal()
        return pe * pt

    # ------------------------------------------------------------ memory moves

    def _switch(self, t: int, alpha: float) -> None:
        M = self.M
        m_e = int(alpha * M + 1e-9)
        reg = _Region(0, M - m_e)
        self.regions.append(reg)
        self.active = reg
        # triangles visible in the current sample, in closing-edge order
        adj = self.sample.adj
        n0 = t - 1
        for x, y, ts in sorted(self.sample.res.items, key=lambda e: e[2]):
            nx, ny = adj[x], adj[y]
            if len(nx) > len(ny):
                small, big, sx = ny, nx, False
            else:
                small, big, sx = nx, ny, True
            for w in small:
                tb_ = big.get(w)
                if tb_ is None:
                    continue
                t_xw, t_yw = (small[w], tb_) if sx else (tb_, small[w])
                if t_xw < ts and t_yw < ts:
                    self._offer_triangle((x, y, w, t_yw, t_xw, ts, n0, 0))
        self._shrink_edges(m_e, t)
        self.regime = 2
        self.switch_time = t

    def _update_memory(self, t: int) -> None:
        M = self.M
        if self.m_d >= M / 3.0:
            return
        act = self.active
        if len(act.res) < act.res.capacity:
            return
        i = t // M
        prev = self.tau_marks.get(i - 1, 0)
        pred = 2 * self.tau_marks[i] - prev
        a_star, _ = best_split(M, (i + 1) * M, pred, self.grid)
        new_me = int(a_star * M + 1e-9)
        moved = self.m_e - new_me
        if moved <= 0:
            return
        self._shrink_edges(new_me, t)
        free = 0
        for r in self.regions:
            free += r.slots - len(r.keys if r.merged else r.res.items)
            r.slots = len(r.keys) if r.merged else len(r.res.items)
        act.frozen = True
        reg = _Region(len(self.regions), moved + free)
        self.regions.append(reg)
        self.active = reg

    def _merge_and_thin(self) -> None:
        p_act = self.active.marginal()
        for r in self.regions:
            if not r.frozen:
                continue
            if not r.merged:
                if p_act > r.marginal():
                    continue
                r.merged = True
                rnd = self.rng.random
                pairs = [(rnd(), rec) for rec in r.res.items]
                r.keys = {rec: k for k, rec in pairs}
                pairs.sort(key=lambda kr: kr[0])
                r.queue = pairs
            if r.marginal() > p_act:
                r.theta = p_act / r.base()
                q = r.queue
                while q and q[-1][0] >= r.theta:
                    _, rec = q.pop()
                    del r.keys[rec]
                    del self.members[rec]
                    self._unindex(rec)

    # ------------------------------------------------------------ main step

    def process_edge(self, u: int, v: int) -> float:
        if u == v:
            raise ValueError("self-loop")
        self.t = t = self.t + 1
        M = self.M
        if t % M == 0:
            self.tau_marks[t // M] = self.tau_seen
            if self.regime == 1:
                if self.tau_seen > 0:
                    p_s = min(1.0, M / t) ** 5
                    a_star, p_a = best_split(M, t, self.tau_seen, self.grid)
                    if p_a > p_s:
                        self._switch(t, a_star)
            else:
                self._update_memory(t)

        adj = self.sample.adj
        nu = adj.get(u, EMPTY)
        nv = adj.get(v, EMPTY)
        if self.regime == 1:
            small, big = (nu, nv) if len(nu) <= len(nv) else (nv, nu)
            common = [w for w in small if w in big]
            if common:
                self.tau_seen += len(common)
                cnt = 0
                for i, w in enumerate(common):
                    nw = adj[w]
                    for z in common[i + 1:]:
                        if z in nw:
                            cnt += 1
                if cnt:
                    self.kappa += cnt / inclusion(5, t - 1, M)
        else:
            if len(self.regions) > 1:
                self._merge_and_thin()
            ru = self.at.get(u)
            if ru and v in self.at:
                acc = 0.0
                by_edge = self.by_edge
                for r1, (w, z) in ru.items():
                    e = by_edge.get((w, z) if w < z else (z, w))
                    if e is None:
                        continue
                    r2 = e.get(v)
                    if r2 is None:
                        continue
                    acc += 1.0 / self._pair_prob(r1, r2)
                if acc:
                    self.kappa += acc
            if nu and nv:
                if len(nu) > len(nv):
                    small, big, su = nv, nu, False
                else:
                    small, big, su = nu, nv, True
                for w in small:
                    tw = big.get(w)
                    if tw is None:
                        continue
                    t_uw, t_vw = (small[w], tw) if su else (tw, small[w])
                    self.tau_seen += 1
                    self._offer_triangle((u, v, w, t_vw, t_uw, t, t - 1, 1))
        self.sample.offer(u, v, t, self.rng)
        return self.kappa

    def check_invariants(self) -> None:
        self.sample.check()
        assert len(self.sample) <= self.m_e
        at: dict = {}
        for rec, reg in self.members.items():
            if reg.merged:
                assert rec in reg.keys
            else:
                assert rec in reg.res.items
            a, b, c = rec[:3]
            for x, w, z in ((a, b, c), (b, a, c), (c, a, b)):
                at.setdefault(x, {})[rec] = (w, z)
        assert at == self.at, "triangle index out of sync"
        assert self.m_e + self.m_d <= self.M
