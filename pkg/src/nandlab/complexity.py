"""Average choice complexity, node criticality and fault complexity.

Notation: ``C_Z(x)`` is player Z's average choice complexity, ``c(v)`` the
criticality of internal node ``v`` and ``F_Z(x)`` the fault complexity.

The recursive evaluator works on any depth. At a node where Z moves,

    C_Z(v) = c(v) * min_b C_Z(v_b)        (unwinnable children count as INF)

and at an opponent node, which the opponent resolves uniformly at random,

    C_Z(v) = (C_Z(v_0) + C_Z(v_1)) / 2.

At an even-depth root this is ``c(r)/2 * min_b (C_A(x^{b0}) + C_A(x^{b1}))``
and collapses to the product-over-sum form at non-fault roots. Criticality is
2 at faults, 1 when the subtree is not winnable for the node's owner, and
otherwise the ratio of the larger to the mean of the two grandchild-pair sums.

``choice_complexity_bruteforce`` is an independent oracle: it enumerates every
Z-winning strategy and averages criticality products over its paths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import AddressError, SizeError
from .extrational import INF, ONE, ExtRational
from .tree import NandInstance, NodeAddr, Player, evaluate_bits, require_even

MAX_BRUTEFORCE_DEPTH = 4


@dataclass(frozen=True)
class ComplexityReport:
    c_A: ExtRational
    c_B: ExtRational
    c: ExtRational
    f_A: ExtRational
    f_B: ExtRational
    f: ExtRational
    criticality: dict[NodeAddr, Fraction]

    def for_player(self, z: Player) -> ExtRational:
        return self.c_A if z is Player.A else self.c_B

    def to_json(self) -> dict:
        return {
            "C_A": self.c_A.to_json(),
            "C_B": self.c_B.to_json(),
            "C": self.c.to_json(),
            "F_A": self.f_A.to_json(),
            "F_B": self.f_B.to_json(),
            "F": self.f.to_json(),
            "criticality": {tau: str(v) for tau, v in self.criticality.items()},
        }


class _Analysis:
    """Bottom-up pass over every node of one instance.

    Tables are keyed by node address and live only as long as this object.
    """

    def __init__(self, x: NandInstance) -> None:
        self.x = x
        self.value: dict[str, int] = {}
        self.cA: dict[str, ExtRational] = {}
        self.cB: dict[str, ExtRational] = {}
        self.fA: dict[str, ExtRational] = {}
        self.fB: dict[str, ExtRational] = {}
        self.crit: dict[str, Fraction] = {}
        self._fill()

    def _fill(self) -> None:
        x = self.x
        for i, bit in enumerate(x.bits):
            tau = format(i, f"0{x.depth}b") if x.depth else ""
            self.value[tau] = bit
            self.cA[tau] = self.fA[tau] = ONE if bit else INF
            self.cB[tau] = self.fB[tau] = INF if bit else ONE
        for k in range(x.depth - 1, -1, -1):
            height = x.depth - k
            for i in range(1 << k):
                tau = format(i, f"0{k}b") if k else ""
                self._node(tau, height)

    def _node(self, tau: str, height: int) -> None:
        c0, c1 = tau + "0", tau + "1"
        owner = Player.A if height % 2 == 0 else Player.B
        v0, v1 = self.value[c0], self.value[c1]
        self.value[tau] = (v0 | v1) if owner is Player.A else (v0 & v1)
        fault = v0 != v1

        if height == 1:
            crit = Fraction(2) if fault else Fraction(1)
        else:
            table = self.cA if owner is Player.A else self.cB
            winnable = self.value[tau] == (1 if owner is Player.A else 0)
            if not winnable:
                crit = Fraction(1)
            elif fault:
                crit = Fraction(2)
            else:
                s0 = table[c0 + "0"] + table[c0 + "1"]
                s1 = table[c1 + "0"] + table[c1 + "1"]
                crit = (2 * max(s0, s1) / (s0 + s1)).fraction
        self.crit[tau] = crit
        bar = Fraction(2) if fault else Fraction(1)

        for z, ctab, ftab in ((Player.A, self.cA, self.fA), (Player.B, self.cB, self.fB)):
            a, b = ctab[c0], ctab[c1]
            fa, fb = ftab[c0], ftab[c1]
            if owner is z:
                best = min(a, b)
                ctab[tau] = INF if best.is_inf else best * crit
                finite = [f for f in (fa, fb) if f.is_finite]
                ftab[tau] = max(finite) * bar if finite else INF
            else:
                ctab[tau] = INF if a.is_inf or b.is_inf else (a + b) / 2
                ftab[tau] = max(fa, fb)


def choice_complexity(x: NandInstance) -> ComplexityReport:
    """Full complexity report for an even-depth instance."""
    require_even(x)
    an = _Analysis(x)
    c_a, c_b = an.cA[""], an.cB[""]
    f_a, f_b = an.fA[""], an.fB[""]
    return ComplexityReport(
        c_A=c_a,
        c_B=c_b,
        c=min(c_a, c_b),
        f_A=f_a,
        f_B=f_b,
        f=min(f_a, f_b),
        criticality=dict(an.crit),
    )


def player_complexity(x: NandInstance, z: Player) -> ExtRational:
    """``C_Z(x)`` for any depth, odd depths included.

    At an odd-depth root the opponent of A moves first, so ``C_A`` is the
    mean of the children's values.
    """
    an = _Analysis(x)
    return an.cA[""] if z is Player.A else an.cB[""]


def node_complexities(x: NandInstance, z: Player) -> dict[NodeAddr, ExtRational]:
    """``C_Z`` of every subtree of ``x``, keyed by address."""
    an = _Analysis(x)
    return dict(an.cA if z is Player.A else an.cB)


def criticality(x: NandInstance, tau: NodeAddr) -> Fraction:
    if any(ch not in "01" for ch in tau) or len(tau) >= x.depth:
        raise AddressError(f"{tau!r} is not an internal node of a depth-{x.depth} tree")
    return _Analysis(x).crit[tau]


# -- brute force ---------------------------------------------------------------


StrategyTree = dict  # NodeAddr -> chosen bit, over the strategy's reachable Z-nodes


def _block(bits: tuple[int, ...], depth: int, tau: str) -> tuple[int, ...]:
    size = 1 << (depth - len(tau))
    start = int(tau, 2) * size if tau else 0
    return bits[start : start + size]


class _BruteForce:
    """Literal strategy enumeration with criticality from recursive brute force."""

    def __init__(self, x: NandInstance) -> None:
        self.x = x
        self._memo: dict[tuple[str, Player], ExtRational] = {}
        self._crit: dict[str, Fraction] = {}
        self._value: dict[str, int] = {}

    def owner(self, tau: str) -> Player:
        return Player.A if (self.x.depth - len(tau)) % 2 == 0 else Player.B

    def value(self, tau: str) -> int:
        if tau not in self._value:
            self._value[tau] = evaluate_bits(_block(self.x.bits, self.x.depth, tau))
        return self._value[tau]

    def strategies(self, tau: str, z: Player) -> Iterator[StrategyTree]:
        """All Z-strategies (winning or not) of the subtree at ``tau``."""
        if len(tau) == self.x.depth:
            yield {}
            return
        if self.owner(tau) is z:
            for b in "01":
                for sub in self.strategies(tau + b, z):
                    yield {tau: int(b), **sub}
        else:
            left = list(self.strategies(tau + "0", z))
            right = list(self.strategies(tau + "1", z))
            for s0, s1 in itertools.product(left, right):
                yield {**s0, **s1}

    def paths(self, tau: str, strategy: StrategyTree, z: Player):
        """Yield ``(leaf address, opponent moves, Z-nodes on the path)``.

        A path's probability is ``2**-(opponent moves)``.
        """
        if len(tau) == self.x.depth:
            yield tau, 0, ()
            return
        if self.owner(tau) is z:
            for leaf, k, nodes in self.paths(tau + str(strategy[tau]), strategy, z):
                yield leaf, k, (tau,) + nodes
        else:
            for b in "01":
                for leaf, k, nodes in self.paths(tau + b, strategy, z):
                    yield leaf, k + 1, nodes

    def leaf_won(self, leaf: str, z: Player) -> bool:
        bit = self.x.bits[int(leaf, 2) if leaf else 0]
        return bit == (1 if z is Player.A else 0)

    def complexity(self, tau: str, z: Player) -> ExtRational:
        key = (tau, z)
        if key not in self._memo:
            best: ExtRational = INF
            for strat in self.strategies(tau, z):
                paths = list(self.paths(tau, strat, z))
                if not all(self.leaf_won(leaf, z) for leaf, _, _ in paths):
                    continue
                total = Fraction(0)
                for _, k, nodes in paths:
                    prod = Fraction(1, 1 << k)
                    for v in nodes:
                        prod *= self.criticality(v)
                    total += prod
                best = min(best, ExtRational(total))
            self._memo[key] = best
        return self._memo[key]

    def criticality(self, tau: str) -> Fraction:
        if tau in self._crit:
            return self._crit[tau]
        height = self.x.depth - len(tau)
        v0, v1 = self.value(tau + "0"), self.value(tau + "1")
        if height == 1:
            c = Fraction(2) if v0 != v1 else Fraction(1)
        else:
            zp = Player.A if height % 2 == 0 else Player.B
            if self.value(tau) != (1 if zp is Player.A else 0):
                c = Fraction(1)
            elif v0 != v1:
                c = Fraction(2)
            else:
                sums = [
                    self.complexity(tau + b + "0", zp) + self.complexity(tau + b + "1", zp)
                    for b in "01"
                ]
                hi = max(sums).fraction
                avg = (sums[0].fraction + sums[1].fraction) / 2
                c = hi / avg
        self._crit[tau] = c
        return c


def choice_complexity_bruteforce(x: NandInstance, z: Player) -> ExtRational:
    """``C_Z(x)`` by enumerating every Z-winning strategy (depth <= 4)."""
    if x.depth > MAX_BRUTEFORCE_DEPTH:
        raise SizeError(f"brute force is limited to depth {MAX_BRUTEFORCE_DEPTH}")
    return _BruteForce(x).complexity("", z)


def fault_complexity_bruteforce(x: NandInstance, z: Player) -> ExtRational:
    """``F_Z(x)``: max over Z-winning paths of ``2**(faults at Z's nodes)``.

    A Z-winning path ends at a Z-won leaf and never enters a subtree that Z
    cannot win.
    """
    if x.depth > MAX_BRUTEFORCE_DEPTH + 2:
        raise SizeError("path enumeration is limited to depth 6")
    bf = _BruteForce(x)
    target = 1 if z is Player.A else 0
    best: ExtRational = INF
    worst = None

    def walk(tau: str, faults: int) -> None:
        nonlocal worst
        if bf.value(tau) != target:
            return
        if len(tau) == x.depth:
            worst = faults if worst is None else max(worst, faults)
            return
        fault = bf.value(tau + "0") != bf.value(tau + "1")
        add = 1 if fault and bf.owner(tau) is z else 0
        for b in "01":
            walk(tau + b, faults + add)

    walk("", 0)
    if worst is not None:
        best = ExtRational(2**worst)
    return best


def verify_resistance_identity(x: NandInstance) -> bool:
    """Exact check of ``C_A = R(G_d(x))`` and ``C_B = R(G'_d(x))``."""
    from .resistance import dual_resistance_exact, resistance_exact

    d = require_even(x)
    rep = choice_complexity(x)
    return rep.c_A == resistance_exact(d, x) and rep.c_B == dual_resistance_exact(d, x)
