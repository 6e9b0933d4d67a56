"""Cost-model simulation of the NAND-tree game against a random player B.

Quantum subroutines are not executed. An estimate of ``C_A`` on an instance
with ``N`` leaves is charged

    c_of_N(N_total) * eps_factor * sqrt(C_A) * N ** (1/4)

query units, where ``eps_factor`` is ``epsilon ** -1.5`` in noisy mode and 1
in exact mode. Hidden constants are 1; every polylog factor is explicit so
that scaling fits can divide it out.

Randomness: trial ``i`` of a run seeded with ``seed`` draws move ``j`` from
``SeedSequence(seed, spawn_key=(i, j))``, so a transcript depends only on
``(seed, trial, instance, strategy, model)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .complexity import node_complexities, player_complexity
from .errors import PreconditionError
from .extrational import ExtRational
from .tree import NandInstance, NodeAddr, Player, require_even


class Strategy(str, enum.Enum):
    SELECT = "select"
    NAIVE = "naive"
    ORACLE = "oracle"
    RANDOM = "random"


def default_c_of_n(n: int) -> float:
    return max(1.0, math.log2(n) ** 2) if n > 1 else 1.0


@dataclass(frozen=True)
class CostModel:
    epsilon: float = 1 / 3
    delta: float = 0.0
    exact: bool = True
    kappa: int = 3
    c_of_N: Callable[[int], float] = field(default=default_c_of_n, compare=False)

    def __post_init__(self) -> None:
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if not 0 <= self.delta < 1:
            raise ValueError("delta must lie in [0, 1)")

    @property
    def eps_factor(self) -> float:
        return 1.0 if self.exact else self.epsilon**-1.5

    @property
    def kappa_prime(self) -> float:
        """Select's cost is at most ``kappa_prime * c * sqrt(w_min) * N**(1/4)``."""
        return self.eps_factor * (1.0 if self.exact else math.sqrt(1 + self.epsilon))

    def amplification_reps(self, d: int) -> int:
        reps = self.kappa * math.ceil(math.log2(max(d, 2)))
        return reps if reps % 2 else reps + 1

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "exact": self.exact,
            "kappa": self.kappa,
        }


@dataclass(frozen=True)
class EstimateOutcome:
    value: float
    time: float
    failed: bool = False


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def _estimate(c_a: ExtRational, n: int, n_total: int, m: CostModel, rng: np.random.Generator) -> EstimateOutcome:
    if c_a.is_inf:
        return EstimateOutcome(math.inf, math.inf)
    true = float(c_a)
    time = m.c_of_N(n_total) * m.eps_factor * math.sqrt(true) * n**0.25
    if m.exact:
        return EstimateOutcome(true, time)
    if m.delta and rng.random() < m.delta:
        # a failed run reports garbage anywhere in (0, 4C]
        return EstimateOutcome(float(4 * true * (1 - rng.random())), time, True)
    value = true * (1 + m.epsilon * (2 * rng.random() - 1))
    return EstimateOutcome(value, time)


def est_model(
    x: NandInstance,
    z: Player,
    m: CostModel,
    rng: np.random.Generator,
    n_total: int | None = None,
) -> EstimateOutcome:
    """Modeled run of the ``C_Z`` estimator; infinite time if ``x`` is not Z-winnable."""
    return _estimate(player_complexity(x, z), x.n, n_total or x.n, m, rng)


def _race(
    c0: ExtRational,
    c1: ExtRational,
    n: int,
    n_total: int,
    m: CostModel,
    rng: np.random.Generator,
) -> tuple[int, float]:
    if c0.is_inf and c1.is_inf:
        raise PreconditionError("select needs at least one winnable instance")
    runs = [_estimate(c0, n, n_total, m, rng), _estimate(c1, n, n_total, m, rng)]
    first = 0 if runs[0].time <= runs[1].time else 1
    other = 1 - first
    scale = m.c_of_N(n_total) * m.eps_factor * n**0.25
    cutoff = scale * math.sqrt(runs[first].value)
    if runs[other].time <= cutoff:
        w0, w1 = runs[0].value, runs[1].value
        return (0 if w0 <= w1 else 1), max(runs[0].time, runs[1].time)
    return first, max(runs[first].time, cutoff)


def select(
    x0: NandInstance,
    x1: NandInstance,
    m: CostModel,
    rng: np.random.Generator,
    n_total: int | None = None,
) -> tuple[int, float]:
    """Race two ``C_A`` estimates; returns ``(bit, elapsed cost)``."""
    if x0.depth != x1.depth:
        raise ValueError("select compares instances of equal depth")
    return _race(
        player_complexity(x0, Player.A),
        player_complexity(x1, Player.A),
        x0.n,
        n_total or x0.n,
        m,
        rng,
    )


# -- game ----------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    node: NodeAddr
    mover: Player
    bit: int
    cost: float


@dataclass(frozen=True)
class GameTranscript:
    moves: tuple[Move, ...]
    outcome: Player
    total_cost: float
    seed: int
    trial: int = 0

    @property
    def leaf(self) -> NodeAddr:
        return self.moves[-1].node + str(self.moves[-1].bit) if self.moves else ""

    def to_json(self) -> dict:
        return {
            "moves": [[mv.node, mv.mover.value, mv.bit, mv.cost] for mv in self.moves],
            "outcome": self.outcome.value,
            "total_cost": self.total_cost,
            "seed": self.seed,
            "trial": self.trial,
        }


class GameContext:
    """Per-instance tables reused across trials: ``C_A`` and value of every node."""

    def __init__(self, x: NandInstance) -> None:
        self.x = x
        self.d = require_even(x)
        self.c_a = node_complexities(x, Player.A)

    def value(self, tau: NodeAddr) -> int:
        return 0 if self.c_a[tau].is_inf else 1

    def leaves_below(self, tau: NodeAddr) -> int:
        return 1 << (self.x.depth - len(tau))


def _naive_eval_cost(height: int, m: CostModel, n_total: int, d: int) -> float:
    return m.c_of_N(n_total) * 2 ** (height / 2) * max(1.0, math.log2(max(d, 1)))


def _a_move(
    ctx: GameContext, tau: NodeAddr, strat: Strategy, m: CostModel, rng: np.random.Generator
) -> tuple[int, float]:
    kids = (tau + "0", tau + "1")
    c0, c1 = ctx.c_a[kids[0]], ctx.c_a[kids[1]]
    n_child = ctx.leaves_below(kids[0])
    n_total = ctx.x.n
    if strat is Strategy.RANDOM:
        return int(rng.integers(2)), 0.0
    if strat is Strategy.ORACLE:
        return (0 if c0 <= c1 else 1), 0.0
    if strat is Strategy.NAIVE:
        height = ctx.x.depth - len(tau) - 1
        cost = 2 * _naive_eval_cost(height, m, n_total, ctx.d)
        seen = [ctx.value(k) for k in kids]
        if not m.exact and m.delta:
            seen = [v ^ int(rng.random() < m.delta) for v in seen]
        if seen[0] == seen[1]:
            return int(rng.integers(2)), cost
        return seen.index(1), cost
    # select with majority vote
    reps = m.amplification_reps(ctx.d)
    if c0.is_inf and c1.is_inf:
        # neither estimate can finish; charge the external cutoff at the
        # largest value a terminating estimate could report
        height = ctx.x.depth - len(tau) - 1
        ceiling = 2 ** (height // 2)
        cutoff = m.c_of_N(n_total) * m.eps_factor * math.sqrt(ceiling) * n_child**0.25
        return int(rng.integers(2)), reps * cutoff
    votes = 0
    total = 0.0
    for _ in range(reps):
        b, cost = _race(c0, c1, n_child, n_total, m, rng)
        votes += b
        total += cost
    return (1 if 2 * votes > reps else 0), total


def play(
    x: NandInstance,
    strat: Strategy | str,
    m: CostModel,
    seed: int,
    trial: int = 0,
    ctx: GameContext | None = None,
) -> GameTranscript:
    """One game from the root; B flips a fair coin at each of its nodes."""
    strat = Strategy(strat)
    if ctx is None or ctx.x is not x:
        ctx = GameContext(x)
    moves = []
    tau = ""
    for j in range(x.depth):
        rng = _rng(seed, trial, j)
        if (x.depth - j) % 2 == 0:
            bit, cost = _a_move(ctx, tau, strat, m, rng)
            moves.append(Move(tau, Player.A, bit, cost))
        else:
            bit = int(rng.integers(2))
            moves.append(Move(tau, Player.B, bit, 0.0))
        tau += str(bit)
    leaf_bit = x.bits[int(tau, 2) if tau else 0]
    total = math.fsum(mv.cost for mv in moves)
    return GameTranscript(tuple(moves), Player.A if leaf_bit else Player.B, total, seed, trial)


@dataclass(frozen=True)
class CostSummary:
    instance: str
    strategy: str
    trials: int
    seed: int
    mean_cost: float
    win_rate: float
    ci95: float
    model: dict
    transcripts: tuple[GameTranscript, ...] = field(default=(), repr=False, compare=False)

    def to_json(self) -> dict:
        out = asdict(self)
        del out["transcripts"]
        return out


def expected_cost(
    x: NandInstance,
    strat: Strategy | str,
    m: CostModel,
    trials: int,
    seed: int,
    keep_transcripts: bool = False,
) -> CostSummary:
    """Monte Carlo mean cost, win rate and normal-approximation 95% half-width."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    strat = Strategy(strat)
    ctx = GameContext(x)
    games = [play(x, strat, m, seed, i, ctx) for i in range(trials)]
    costs = [g.total_cost for g in games]
    mean = math.fsum(costs) / trials
    if trials > 1:
        var = math.fsum((c - mean) ** 2 for c in costs) / (trials - 1)
        ci = 1.96 * math.sqrt(var / trials)
    else:
        ci = 0.0
    wins = sum(g.outcome is Player.A for g in games)
    return CostSummary(
        instance=str(x) if x.n <= 64 else f"{x.depth}:<{x.n} bits>",
        strategy=strat.value,
        trials=trials,
        seed=seed,
        mean_cost=mean,
        win_rate=wins / trials,
        ci95=ci,
        model=m.to_json(),
        transcripts=tuple(games) if keep_transcripts else (),
    )


def naive_cost_bound(d: int, m: CostModel | None = None) -> float:
    """Closed-form naive baseline: sum over A's d decisions of ``2**(d-l) * log2 d``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    log_term = max(1.0, math.log2(d))
    return math.fsum(2 ** (d - ell) * log_term for ell in range(d))


def select_cost_bound(x: NandInstance, m: CostModel) -> float:
    """Analytic ceiling on the mean select-strategy cost of an A-winnable ``x``.

    ``d`` levels, each at most ``reps * kappa' * c * sqrt(3/2 * C_A(x)) * 2**(d/2)``.
    """
    d = require_even(x)
    c_a = float(player_complexity(x, Player.A))
    return d * m.amplification_reps(d) * m.kappa_prime * m.c_of_N(x.n) * math.sqrt(1.5 * c_a) * 2 ** (d / 2)


def polylog_factor(d: int, strat: Strategy | str, m: CostModel) -> float:
    """Explicit polylog multiplier of a strategy's cost at ``N = 4**d`` leaves."""
    strat = Strategy(strat)
    c = m.c_of_N(4**d)
    if strat is Strategy.SELECT:
        return c * m.amplification_reps(d)
    if strat is Strategy.NAIVE:
        return c * max(1.0, math.log2(max(d, 1)))
    return 1.0


def growth_violations(x: NandInstance, transcript: GameTranscript, ctx: GameContext | None = None) -> list[NodeAddr]:
    """A-nodes on the path where ``C_A(chosen child) > 3/2 * C_A(node)``.

    Nodes that are already lost (``C_A`` infinite) are skipped.
    """
    c_a = ctx.c_a if ctx is not None else node_complexities(x, Player.A)
    bad = []
    for mv in transcript.moves:
        if mv.mover is not Player.A:
            continue
        here = c_a[mv.node]
        if here.is_inf:
            continue
        if c_a[mv.node + str(mv.bit)] > here * Fraction(3, 2):
            bad.append(mv.node)
    return bad


def select_guarantee_holds(x0: NandInstance, x1: NandInstance, bit: int) -> bool:
    """Exact check of ``C_A(x^b) <= 2 C_A(x^{1-b})``."""
    chosen = player_complexity((x0, x1)[bit], Player.A)
    other = player_complexity((x1, x0)[bit], Player.A)
    if other.is_inf:
        return True
    return chosen <= other * 2
