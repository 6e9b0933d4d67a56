"""``nandlab`` command line: eval, report, verify, generate, duel.

Output is one JSON object per line unless ``--table`` is given. A run's
settings can be saved with ``--save-config`` and replayed with ``--config``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields
from typing import Iterator, TextIO

from .complexity import choice_complexity
from .errors import ConsistencyError, NandLabError
from .game import CostModel, Strategy, expected_cost, naive_cost_bound, polylog_factor
from .generators import KINDS, generate
from .resistance import dual_resistance_exact, resistance_exact
from .span import approx_witnesses, build_span
from .tree import NandInstance, evaluate, require_even, winner
from .verify import SUITES, run_sweep

COMMANDS = ("eval", "report", "verify", "generate", "duel")


def _default_seed() -> int:
    raw = os.environ.get("NANDLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"NANDLAB_SEED must be an integer, got {raw!r}")


@dataclass
class RunConfig:
    command: str = "eval"
    instance: str | None = None
    generator: str | None = None
    depth: int | None = None
    d_min: int | None = None
    d_max: int | None = None
    p: float = 0.5
    k: int = 1
    seed: int = 0
    trials: int = 1000
    strategy: str = "select"
    epsilon: float = 1 / 3
    delta: float = 0.0
    exact: bool = False
    max_d: int = 2
    sample: int = 10_000
    tolerance: float = 1e-6
    out: str | None = None
    table: bool = False

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def model(self) -> CostModel:
        return CostModel(epsilon=self.epsilon, delta=self.delta, exact=self.exact)


# -- commands ------------------------------------------------------------------


def cmd_eval(cfg: RunConfig) -> Iterator[dict]:
    x = _instance(cfg)
    yield {"instance": str(x), "value": evaluate(x), "winner": winner(x).value, "N": x.n, "depth": x.depth}


def _check(name: str, ok: bool) -> None:
    if not ok:
        raise ConsistencyError(f"cross-check failed: {name}")


def cmd_report(cfg: RunConfig) -> Iterator[dict]:
    x = _instance(cfg)
    d = require_even(x)
    rep = choice_complexity(x)
    r = resistance_exact(d, x)
    r_dual = dual_resistance_exact(d, x)
    p = build_span(d)
    wit = approx_witnesses(p, x)
    tol = cfg.tolerance

    def near(value: float, exact) -> bool:
        if exact.is_inf:
            return math.isinf(value)
        return abs(value - float(exact)) <= tol * max(1.0, float(exact))

    _check("C_A = R", rep.c_A == r)
    _check("C_B = R'", rep.c_B == r_dual)
    _check("C <= F", rep.c <= rep.f)
    _check("w_+ = R/2", near(wit.w_plus, r / 2 if r.is_finite else r))
    _check("w_- = 2R'", near(wit.w_minus, r_dual * 2))
    _check("value matches witness", math.isfinite(wit.w_plus) == bool(evaluate(x)))
    out = {"instance": str(x), "value": evaluate(x)}
    out.update(rep.to_json())
    out["R"] = r.to_json()
    out["R_dual"] = r_dual.to_json()
    out.update(wit.to_json(p if x.depth <= 4 else None))
    yield out


def cmd_verify(cfg: RunConfig) -> Iterator[dict]:
    summary = run_sweep(cfg.max_d, cfg.sample, cfg.seed, SUITES)
    yield summary


def cmd_generate(cfg: RunConfig) -> Iterator[dict]:
    if cfg.generator is None or cfg.depth is None:
        raise SystemExit("generate needs --generator and --depth")
    x = generate(cfg.generator, cfg.depth, cfg.seed, p=cfg.p, k=cfg.k)
    yield {"generator": cfg.generator, "depth": cfg.depth, "seed": cfg.seed, "instance": str(x)}


def _duel_targets(cfg: RunConfig) -> Iterator[NandInstance]:
    if cfg.instance is not None:
        yield NandInstance.parse(cfg.instance)
        return
    kind = cfg.generator or "all-ones"
    if cfg.d_min is not None or cfg.d_max is not None:
        lo = cfg.d_min if cfg.d_min is not None else 1
        hi = cfg.d_max if cfg.d_max is not None else lo
        for d in range(lo, hi + 1):
            yield generate(kind, 2 * d, cfg.seed, p=cfg.p, k=cfg.k)
        return
    if cfg.depth is None:
        raise SystemExit("duel needs --instance, --depth or --d-min/--d-max")
    yield generate(kind, cfg.depth, cfg.seed, p=cfg.p, k=cfg.k)


def cmd_duel(cfg: RunConfig) -> Iterator[dict]:
    m = cfg.model()
    strat = Strategy(cfg.strategy)
    for x in _duel_targets(cfg):
        d = require_even(x)
        summary = expected_cost(x, strat, m, cfg.trials, cfg.seed)
        record = summary.to_json()
        record["d"] = d
        record["N"] = x.n
        record["polylog_factor"] = polylog_factor(d, strat, m)
        if strat is Strategy.NAIVE and d >= 1:
            record["naive_bound"] = naive_cost_bound(d, m)
        yield record


HANDLERS = {
    "eval": cmd_eval,
    "report": cmd_report,
    "verify": cmd_verify,
    "generate": cmd_generate,
    "duel": cmd_duel,
}


def _instance(cfg: RunConfig) -> NandInstance:
    if cfg.instance is None:
        raise SystemExit(f"{cfg.command} needs --instance DEPTH:BITS")
    return NandInstance.parse(cfg.instance)


# -- argument handling ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nandlab", description="NAND-tree complexity, resistance and game toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $NANDLAB_SEED or 0)")
        p.add_argument("--out", help="append JSON lines to this file instead of stdout")
        p.add_argument("--table", action="store_true", help="human-readable output")
        p.add_argument("--config", help="load settings from a JSON config file")
        p.add_argument("--save-config", help="write the effective settings to this file")

    p = sub.add_parser("eval", help="evaluate an instance")
    p.add_argument("--instance", "-i")
    common(p)

    p = sub.add_parser("report", help="complexity, resistance and witness report")
    p.add_argument("--instance", "-i")
    p.add_argument("--tolerance", type=float)
    common(p)

    p = sub.add_parser("verify", help="exhaustive and sampled identity sweeps")
    p.add_argument("--max-d", type=int)
    p.add_argument("--sample", type=int)
    common(p)

    p = sub.add_parser("generate", help="draw an instance from a family")
    p.add_argument("--generator", "-g", choices=KINDS)
    p.add_argument("--depth", "-d", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    common(p)

    p = sub.add_parser("duel", help="simulate the game and report expected cost")
    p.add_argument("--instance", "-i")
    p.add_argument("--generator", "-g", choices=KINDS)
    p.add_argument("--depth", "-d", type=int)
    p.add_argument("--d-min", type=int)
    p.add_argument("--d-max", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--strategy", choices=[s.value for s in Strategy])
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--exact", action="store_true", default=None)
    common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config:
        with open(args.config) as fh:
            cfg = RunConfig.from_json(json.load(fh))
        cfg.command = args.command
    else:
        cfg = RunConfig(command=args.command, seed=_default_seed())
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None and f.name != "command" and not (f.name == "table" and value is False):
            setattr(cfg, f.name, value)
    return cfg


def _table(record: dict) -> str:
    lines = []
    for key, value in record.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key:>18}  {value}")
    return "\n".join(lines)


def emit(records: Iterator[dict], cfg: RunConfig, stream: TextIO) -> None:
    for rec in records:
        stream.write((_table(rec) + "\n\n") if cfg.table else json.dumps(rec, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    if args.save_config:
        with open(args.save_config, "w") as fh:
            json.dump(cfg.to_json(), fh, indent=2, sort_keys=True)
    try:
        records = list(HANDLERS[cfg.command](cfg))
    except ConsistencyError as exc:
        print(f"nandlab: {exc}", file=sys.stderr)
        return 3
    except (NandLabError, ValueError) as exc:
        print(f"nandlab: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "a") as fh:
            emit(iter(records), cfg, fh)
    else:
        emit(iter(records), cfg, sys.stdout)
    if cfg.command == "verify" and records[0]["failures"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
