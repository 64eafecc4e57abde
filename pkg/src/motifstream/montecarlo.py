"""Monte-Carlo check of the detection-probability kernels.

The estimators' reservoirs are simulated directly: one uniform draw
``v in [0, t)`` per arrival past capacity, slot ``v`` replaced when
``v < M``.  Only the handful of edges that matter are tracked; all other
arrivals are filler that forms no triangles.  Runs are vectorised with
numpy and processed in chunks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import clique_prob as cp
from .reservoir import Reservoir

KERNELS = ("fourest", "fiveest", "ts4c1", "ts4c2")


@dataclass
class ProbFixture:
    """Arrival indexes of one clique's edges plus memory parameters.

    ``times`` keys: ``t1..t6`` (e_i as in :mod:`clique_prob`) for the
    4-clique kernels, ``t1..t10`` for fiveest (t10 last).  ``tri_pos`` gives
    the offer positions of T1 and T2 among ``tau`` triangle offers.
    """

    kernel: str
    times: dict
    M_e: int
    M_D: int = 1
    tau: int = 1
    tri_pos: tuple = (1, 2)
    case: int | None = None

    def analytic(self) -> float:
        T = self.times
        if self.kernel == "fourest":
            return cp.prob_clique_fourest(T["t6"], self.M_e)
        if self.kernel == "fiveest":
            return cp.prob_clique_fiveest(T["t10"], self.M_e)
        if self.kernel == "ts4c1":
            return cp.prob_clique_ts4c1(T["t1"], T["t2"], T["t4"], T["t3"], T["t5"], T["t6"],
                                        self.M_e, self.M_D, self.tau)
        if self.kernel == "ts4c2":
            return cp.prob_clique_ts4c2(T["t1"], T["t2"], T["t4"], T["t3"], T["t5"],
                                        self.M_e, self.M_D, self.tau)
        raise ValueError(f"unknown kernel {self.kernel!r}")

    def label(self) -> int:
        T = self.times
        if self.kernel == "ts4c1":
            return cp.ts4c1_case(T["t1"], T["t2"], T["t4"], T["t3"], T["t5"], T["t6"], self.M_e)
        if self.kernel == "ts4c2":
            return cp.ts4c2_case(T["t1"], T["t2"], T["t4"], T["t3"], T["t5"], self.M_e)
        return 1


@dataclass
class ValidationReport:
    kernel: str
    case: int
    p_analytic: float
    p_empirical: float
    z: float
    runs: int
    passed: bool
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} kernel={self.kernel} case={self.case} p={self.p_analytic:.6g} "
                f"emp={self.p_empirical:.6g} z={self.z:+.3f} runs={self.runs}")


# ------------------------------------------------------------ simulators

def simulate_reservoir(arrivals, checkpoints, capacity, runs, rng: np.random.Generator,
                       ) -> dict[int, np.ndarray]:
    """Residency of tracked offers in a ``capacity``-slot reservoir.

    ``arrivals`` are the offer indexes (1-based) of the tracked items.
    Returns ``{n: bool array (len(arrivals), runs)}``: which tracked items
    are held right after offer ``n`` for each checkpoint ``n``.
    """
    arrivals = list(arrivals)
    k = len(arrivals)
    slot = np.full((k, runs), -1, dtype=np.int64)
    out: dict[int, np.ndarray] = {}
    pos = {a: i for i, a in enumerate(arrivals)}
    cks = sorted(set(checkpoints))
    last = cks[-1] if cks else 0
    first = min(arrivals) if arrivals else last + 1
    for n in cks:
        if n < first:
            out[n] = np.zeros((k, runs), dtype=bool)
    for t in range(first, last + 1):
        i = pos.get(t)
        if t <= capacity:
            if i is not None:
                slot[i, :] = t - 1
        else:
            v = rng.integers(0, t, size=runs)
            for j in range(k):
                if arrivals[j] < t:
                    s = slot[j]
                    s[s == v] = -1
            if i is not None:
                slot[i] = np.where(v < capacity, v, -1)
        if t in cks:
            out[t] = slot >= 0
    return out


def simulate_reservoir_reference(arrivals, checkpoints, capacity, runs, seed) -> dict[int, np.ndarray]:
    """Same as :func:`simulate_reservoir` but driving the real Reservoir class."""
    arrivals = list(arrivals)
    k = len(arrivals)
    cks = sorted(set(checkpoints))
    out = {n: np.zeros((k, runs), dtype=bool) for n in cks}
    pos = {a: i for i, a in enumerate(arrivals)}
    rng = random.Random(seed)
    for r in range(runs):
        res: Reservoir = Reservoir(capacity)
        for t in range(1, cks[-1] + 1):
            res.offer(pos.get(t, -t), rng)
            if t in out:
                held = set(res.items)
                for j in range(k):
                    out[t][j, r] = j in held
    return out


# ------------------------------------------------------------ detection events

def _edge_ids(kernel):
    if kernel == "fiveest":
        return [f"t{i}" for i in range(1, 11)]
    return [f"t{i}" for i in range(1, 7)]


def _simulate_detection(fx: ProbFixture, runs: int, rng: np.random.Generator) -> np.ndarray:
    T = fx.times
    names = _edge_ids(fx.kernel)
    if fx.kernel in ("fourest", "fiveest"):
        last = names[-1]
        older = names[:-1]
        n = T[last] - 1
        sim = simulate_reservoir([T[x] for x in older], [n], fx.M_e, runs, rng)
        return sim[n].all(axis=0)

    tri1 = ["t1", "t2", "t4"]
    tri2 = ["t1", "t3", "t5"]

    def obs_event(tri):
        close = max(tri, key=lambda x: T[x])
        return T[close] - 1, [x for x in tri if x != close]

    if fx.kernel == "ts4c1":
        n_obs, a1 = obs_event(tri1)
        n_det = T["t6"] - 1
        tracked = a1 + ["t3", "t5"]
        sim = simulate_reservoir([T[x] for x in tracked], [n_obs, n_det], fx.M_e, runs, rng)
        ok = sim[n_obs][:2].all(axis=0) & sim[n_det][2:].all(axis=0)
        tri = simulate_reservoir([fx.tri_pos[0]], [fx.tau], fx.M_D, runs, rng)
        return ok & tri[fx.tau][0]

    if fx.kernel == "ts4c2":
        n1, a1 = obs_event(tri1)
        n2, a2 = obs_event(tri2)
        tracked = sorted(set(a1) | set(a2))
        idx = {x: i for i, x in enumerate(tracked)}
        sim = simulate_reservoir([T[x] for x in tracked], [n1, n2], fx.M_e, runs, rng)
        ok = sim[n1][[idx[x] for x in a1]].all(axis=0) & sim[n2][[idx[x] for x in a2]].all(axis=0)
        tri = simulate_reservoir(list(fx.tri_pos), [fx.tau], fx.M_D, runs, rng)
        return ok & tri[fx.tau].all(axis=0)
    raise ValueError(f"unknown kernel {fx.kernel!r}")


def validate_prob(fx: ProbFixture, runs: int = 1_000_000, seed: int = 0,
                  chunk: int = 250_000, z_max: float = 3.0) -> ValidationReport:
    """Compare the analytic kernel value with the simulated frequency."""
    if runs < 1:
        raise ValueError("runs must be positive")
    p = fx.analytic()
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < runs:
        n = min(chunk, runs - done)
        hits += int(_simulate_detection(fx, n, rng).sum())
        done += n
    emp = hits / runs
    if p >= 1.0:
        z = 0.0 if hits == runs else math.inf
        ok = hits == runs
    elif p <= 0.0:
        z = 0.0 if hits == 0 else math.inf
        ok = hits == 0
    else:
        z = (emp - p) / math.sqrt(p * (1 - p) / runs)
        ok = abs(z) <= z_max
    return ValidationReport(fx.kernel, fx.label(), p, emp, z, runs, ok)


# ------------------------------------------------------------ fixtures

def _search(kernel, case, M_e, M_D, tau, horizon, rng, p_min):
    for _ in range(200_000):
        if kernel == "ts4c1":
            ts = rng.sample(range(1, horizon), 6)
            ts.sort()
            t6 = ts.pop()
            rng.shuffle(ts)
            T = dict(zip(("t1", "t2", "t3", "t4", "t5"), ts), t6=t6)
        else:
            ts = rng.sample(range(1, horizon), 5)
            T = dict(zip(("t1", "t2", "t3", "t4", "t5"), ts))
        fx = ProbFixture(kernel, T, M_e, M_D, tau, tri_pos=(2, tau - 1), case=case)
        if fx.label() == case and fx.analytic() >= p_min:
            return fx
    raise RuntimeError(f"no fixture found for {kernel} case {case}")


def default_fixtures(seed: int = 12345) -> list[ProbFixture]:
    """One fixture per kernel case: 4 for ts4c1, 13 for ts4c2, plus the
    single-tier kernels.  Deterministic for a given seed."""
    rng = random.Random(seed)
    out = []
    M_e, M_D, tau = 10, 6, 9
    for c in cp.TS4C1_CASES:
        horizon = 11 if c == 1 else 28
        out.append(_search("ts4c1", c, M_e, M_D, tau, horizon, rng, 0.01))
    for c in cp.TS4C2_CASES:
        out.append(_search("ts4c2", c, M_e, M_D, tau, 26, rng, 0.01))
    out.append(ProbFixture("fourest", {"t1": 3, "t2": 9, "t3": 12, "t4": 14, "t5": 15, "t6": 18}, 12, case=1))
    out.append(ProbFixture("fiveest", {f"t{i}": 2 * i for i in range(1, 11)}, 15, case=1))
    return out
