"""Repeated-trial experiments with optional exact ground truth.

Output layout under ``out_dir``:

    trial_000.csv    t,estimate[,truth] every ``stride`` steps and at the end
    summary.csv      trial,seed,final_estimate,mape
    aggregate.csv    key,value  (trial mean / variance of the final estimate,
                     mean MAPE, final truth)

Trial i uses seed ``base_seed + i``.  Everything written is a function of the
configuration only; wall-clock timings go to the log.
"""

from __future__ import annotations

import logging
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .estimators import ESTIMATORS, make_estimator
from .oracle import ExactOracle, compute_mape
from .stream import read_stream

log = logging.getLogger("motifstream")

THREADS_ENV = "MOTIFSTREAM_THREADS"


@dataclass
class ExperimentConfig:
    estimator: str
    memory: int
    input: str | None = None
    alpha: float | None = None
    kernel: str | None = None
    trials: int = 1
    base_seed: int = 0
    stride: int = 100
    truth: bool = True
    shuffle: bool = False
    out_dir: str | None = None
    parallel: bool = False

    def validate(self) -> None:
        if self.estimator.lower() not in ESTIMATORS:
            raise ValueError(f"unknown estimator {self.estimator!r}")
        if self.memory < 1:
            raise ValueError("memory must be positive")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.stride < 1:
            raise ValueError("stride must be positive")

    def estimator_kwargs(self) -> dict:
        kw = {}
        if self.alpha is not None:
            kw["alpha"] = self.alpha
        if self.kernel is not None:
            kw["kernel"] = self.kernel
        return kw


@dataclass
class TrialResult:
    trial: int
    seed: int
    series: list
    final_estimate: float
    mape: float | None
    seconds: float = field(default=0.0, compare=False)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    trials: list
    truth: list | None

    @property
    def finals(self) -> list[float]:
        return [r.final_estimate for r in self.trials]

    @property
    def mean_mape(self) -> float | None:
        ms = [r.mape for r in self.trials if r.mape is not None]
        return statistics.fmean(ms) if ms else None


def truth_series(edges, order: int, stride: int) -> list[tuple[int, int]]:
    """Exact clique count (order 4 or 5) at the same steps the trials record."""
    o = ExactOracle(track_five=(order == 5))
    out = []
    t = 0
    for e in edges:
        o.insert_edge(e[0], e[1])
        t += 1
        if t % stride == 0:
            out.append((t, o.cliques5 if order == 5 else o.cliques4))
    if t and (not out or out[-1][0] != t):
        out.append((t, o.cliques5 if order == 5 else o.cliques4))
    return out


def check_simple(edges) -> None:
    seen = set()
    for t, (u, v) in enumerate(edges, 1):
        if u == v:
            raise ValueError(f"edge {t}: self-loop on {u}")
        k = (u, v) if u < v else (v, u)
        if k in seen:
            raise ValueError(f"edge {t}: duplicate pair {k}; run dedup first")
        seen.add(k)


def _run_trial(args) -> TrialResult:
    cfg, edges, i, truth = args
    seed = cfg.base_seed + i
    est = make_estimator(cfg.estimator, cfg.memory, seed, **cfg.estimator_kwargs())
    t0 = time.perf_counter()
    series = est.run(edges, stride=cfg.stride)
    dt = time.perf_counter() - t0
    mape = None
    if truth is not None:
        mape = compute_mape([k for _, k in series], [g for _, g in truth])
    return TrialResult(i, seed, series, est.estimate(), mape, dt)


def worker_count(requested: bool) -> int:
    if not requested:
        return 1
    cap = os.environ.get(THREADS_ENV)
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return n


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_outputs(res: ExperimentResult, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    truth = dict(res.truth) if res.truth is not None else None
    for r in res.trials:
        with open(out / f"trial_{r.trial:03d}.csv", "w", newline="\n") as fh:
            fh.write("t,estimate,truth\n" if truth is not None else "t,estimate\n")
            for t, k in r.series:
                if truth is not None:
                    fh.write(f"{t},{_fmt(k)},{truth[t]}\n")
                else:
                    fh.write(f"{t},{_fmt(k)}\n")
    with open(out / "summary.csv", "w", newline="\n") as fh:
        fh.write("trial,seed,final_estimate,mape\n")
        for r in res.trials:
            fh.write(f"{r.trial},{r.seed},{_fmt(r.final_estimate)},{_fmt(r.mape)}\n")
    finals = res.finals
    agg = [
        ("estimator", res.config.estimator),
        ("memory", res.config.memory),
        ("trials", len(finals)),
        ("mean_final_estimate", statistics.fmean(finals)),
        ("var_final_estimate", statistics.variance(finals) if len(finals) > 1 else 0.0),
        ("mean_mape", res.mean_mape),
        ("final_truth", res.truth[-1][1] if res.truth else None),
    ]
    with open(out / "aggregate.csv", "w", newline="\n") as fh:
        fh.write("key,value\n")
        for k, v in agg:
            fh.write(f"{k},{_fmt(v)}\n")


def run_experiment(cfg: ExperimentConfig, edges=None) -> ExperimentResult:
    """Run ``cfg.trials`` independent trials over one stream.

    ``edges`` (a list of ``(u, v, ...)``) overrides ``cfg.input``.
    """
    cfg.validate()
    if edges is None:
        if cfg.input is None:
            raise ValueError("no input stream given")
        edges = [(e.u, e.v) for e in read_stream(cfg.input, shuffle=cfg.shuffle, seed=cfg.base_seed)]
    else:
        edges = [(e[0], e[1]) for e in edges]
    check_simple(edges)
    order = ESTIMATORS[cfg.estimator.lower()].order
    truth = truth_series(edges, order, cfg.stride) if cfg.truth else None
    jobs = [(cfg, edges, i, truth) for i in range(cfg.trials)]
    n_workers = min(worker_count(cfg.parallel), cfg.trials)
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as ex:
            trials = list(ex.map(_run_trial, jobs))
    else:
        trials = [_run_trial(j) for j in jobs]
    for r in trials:
        n = max(1, len(edges))
        log.info("trial %d seed %d: %.3f us/edge", r.trial, r.seed, 1e6 * r.seconds / n)
    res = ExperimentResult(cfg, trials, truth)
    if cfg.out_dir is not None:
        write_outputs(res, cfg.out_dir)
    return res


def load_config_file(path) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if "=" not in s:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            k, v = s.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def config_fields() -> list[str]:
    return [f.name for f in fields(ExperimentConfig)]


def config_as_dict(cfg: ExperimentConfig) -> dict:
    return asdict(cfg)
