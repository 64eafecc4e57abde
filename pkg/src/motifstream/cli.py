"""Command-line entry point: ``motifstream <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .harness import ExperimentConfig, load_config_file, run_experiment
from .montecarlo import KERNELS, ProbFixture, default_fixtures, validate_prob
from .oracle import ExactOracle, compute_mape, count_overlap_pairs
from .stream import StreamError, dedup_stream, read_stream, write_edges
from .synthgen import generate_ba


class CliError(Exception):
    pass


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=d if suppress else 0, help="base seed (default 0)")
    p.add_argument("--out-dir", default=d, help="directory for output files")
    p.add_argument("--stride", type=int, default=d if suppress else 100,
                   help="record the estimate every K steps (default 100)")
    p.add_argument("--config", default=d, help="key=value file with defaults for these options")
    p.add_argument("-v", "--verbose", action="store_true", default=d if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="motifstream", description="Streaming 4-/5-clique estimation.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        _global_flags(sp, suppress=True)
        return sp

    g = cmd("generate", "write a Barabasi-Albert edge stream")
    g.add_argument("--n", type=int, required=False)
    g.add_argument("--m", type=int, required=False)
    g.add_argument("--output", "-o", help="output file (default: stdout)")

    d = cmd("dedup", "drop repeated unordered pairs")
    d.add_argument("input")
    d.add_argument("output")

    e = cmd("exact", "exact clique counts and overlap statistics")
    e.add_argument("input", nargs="?")
    e.add_argument("--input", dest="input_opt")
    e.add_argument("--no-overlap", action="store_true", help="skip the (a, b) overlap counts")

    r = cmd("run", "run an estimator for several trials")
    r.add_argument("--input")
    r.add_argument("--estimator")
    r.add_argument("--memory", type=int)
    r.add_argument("--alpha", type=float)
    r.add_argument("--kernel", choices=["exact", "approx"])
    r.add_argument("--trials", type=int)
    r.add_argument("--no-truth", action="store_true", help="skip the exact oracle")
    r.add_argument("--shuffle", action="store_true", help="shuffle the stream with --seed")
    r.add_argument("--parallel", action="store_true",
                   help="run trials in worker processes (capped by MOTIFSTREAM_THREADS)")

    m = cmd("mape", "MAPE of estimate vs truth columns in trial CSVs")
    m.add_argument("files", nargs="+")

    v = cmd("validate-prob", "Monte-Carlo check of a detection-probability kernel")
    v.add_argument("--kernel", choices=KERNELS)
    v.add_argument("--times", help="comma list like t1=3,t2=9,...")
    v.add_argument("--m-e", type=int)
    v.add_argument("--m-d", type=int, default=1)
    v.add_argument("--tau", type=int, default=1)
    v.add_argument("--tri-pos", help="offer positions of the two triangles, e.g. 2,8")
    v.add_argument("--runs", type=int, default=1_000_000)
    v.add_argument("--all", action="store_true", help="check every built-in case fixture")
    return p


_INT_KEYS = {"seed", "stride", "n", "m", "memory", "trials", "m_e", "m_d", "tau", "runs"}
_FLOAT_KEYS = {"alpha"}
_BOOL_KEYS = {"no_truth", "shuffle", "parallel", "no_overlap", "all", "verbose"}


def _apply_config(args: argparse.Namespace, parser) -> None:
    if not getattr(args, "config", None):
        return
    try:
        conf = load_config_file(args.config)
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}") from None
    defaults = {a.dest: a.default for a in parser._actions}
    for k, raw in conf.items():
        if k in _INT_KEYS:
            val = int(raw)
        elif k in _FLOAT_KEYS:
            val = float(raw)
        elif k in _BOOL_KEYS:
            val = raw.lower() in ("1", "true", "yes", "on")
        else:
            val = raw
        # explicit command-line values win over the file
        cur = getattr(args, k, None)
        if cur is None or cur is False or cur == defaults.get(k):
            setattr(args, k, val)


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise CliError(f"missing required option --{n.replace('_', '-')}")


def cmd_generate(args) -> int:
    _need(args, "n", "m")
    edges = generate_ba(args.n, args.m, args.seed)
    out = args.output
    if out is None and getattr(args, "out_dir", None):
        out = str(Path(args.out_dir) / f"ba_n{args.n}_m{args.m}_s{args.seed}.txt")
    if out is None:
        write_edges(edges, sys.stdout)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        write_edges(edges, out)
    return 0


def cmd_dedup(args) -> int:
    removed = dedup_stream(args.input, args.output)
    print(f"removed={removed}")
    return 0


def cmd_exact(args) -> int:
    src = args.input_opt or args.input
    if src is None:
        raise CliError("missing input file")
    o = ExactOracle()
    for e in read_stream(src):
        o.insert_edge(e.u, e.v)
    print(f"triangles={o.triangles} cliques4={o.cliques4} cliques5={o.cliques5}")
    if not args.no_overlap:
        a, b = count_overlap_pairs(o.adj)
        print(f"a={a} b={b}")
    return 0


def cmd_run(args) -> int:
    _need(args, "input", "estimator", "memory")
    cfg = ExperimentConfig(
        estimator=args.estimator,
        memory=args.memory,
        input=args.input,
        alpha=args.alpha,
        kernel=args.kernel,
        trials=args.trials or 1,
        base_seed=args.seed,
        stride=args.stride,
        truth=not args.no_truth,
        shuffle=args.shuffle,
        out_dir=getattr(args, "out_dir", None),
        parallel=args.parallel,
    )
    res = run_experiment(cfg)
    for r in res.trials:
        mape = "" if r.mape is None else f" mape={r.mape!r}"
        print(f"trial={r.trial} seed={r.seed} final_estimate={r.final_estimate!r}{mape}")
    if res.mean_mape is not None:
        print(f"mean_mape={res.mean_mape!r}")
    return 0


def _read_csv_cols(path):
    with open(path, encoding="utf-8") as fh:
        head = fh.readline().strip().split(",")
        if "estimate" not in head or "truth" not in head:
            raise CliError(f"{path}: needs estimate and truth columns")
        ie, ig = head.index("estimate"), head.index("truth")
        est, tru = [], []
        for line in fh:
            if not line.strip():
                continue
            row = line.strip().split(",")
            est.append(float(row[ie]))
            tru.append(float(row[ig]))
    return est, tru


def cmd_mape(args) -> int:
    vals = []
    for f in args.files:
        est, tru = _read_csv_cols(f)
        m = compute_mape(est, tru)
        vals.append(m)
        print(f"{f},{m!r}")
    print(f"mean,{sum(vals) / len(vals)!r}")
    return 0


def _parse_times(s: str) -> dict:
    out = {}
    for part in s.split(","):
        if "=" not in part:
            raise CliError(f"bad --times entry {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = int(v)
    return out


def cmd_validate(args) -> int:
    if args.all:
        fixtures = default_fixtures()
    else:
        _need(args, "kernel", "times", "m_e")
        pos = (2, max(2, args.tau - 1))
        if args.tri_pos:
            pos = tuple(int(x) for x in args.tri_pos.split(","))
        fixtures = [ProbFixture(args.kernel, _parse_times(args.times), args.m_e, args.m_d,
                                args.tau, tri_pos=pos)]
    ok = True
    for i, fx in enumerate(fixtures):
        rep = validate_prob(fx, runs=args.runs, seed=args.seed + i)
        print(rep.line())
        ok &= rep.passed
    return 0 if ok else 1


COMMANDS = {
    "generate": cmd_generate,
    "dedup": cmd_dedup,
    "exact": cmd_exact,
    "run": cmd_run,
    "mape": cmd_mape,
    "validate-prob": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        _apply_config(args, parser)
        return COMMANDS[args.command](args)
    except (CliError, StreamError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
