"""Instance families: random leaves, bounded-fault trees and two fixed families."""

from __future__ import annotations

import numpy as np

from .complexity import choice_complexity
from .errors import GenerateError
from .tree import NandInstance

KINDS = ("random-p", "kfault", "all-ones", "planted-path")
MAX_ATTEMPTS = 1000


def random_p(depth: int, p: float, rng: np.random.Generator) -> NandInstance:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return NandInstance(depth, tuple(int(b) for b in rng.random(1 << depth) < p))


def all_ones(depth: int) -> NandInstance:
    return NandInstance(depth, (1,) * (1 << depth))


def planted_path(depth: int) -> NandInstance:
    """Leaf is 1 iff A took branch 0 at every one of its nodes.

    Exactly one st-path survives in the graph, so ``C_A = 2**(depth/2)``.
    """
    bits = []
    for i in range(1 << depth):
        addr = format(i, f"0{depth}b") if depth else ""
        # A moves at even heights, i.e. at addresses whose length has the parity of depth
        bits.append(int(all(addr[j] == "0" for j in range(depth) if (depth - j) % 2 == 0)))
    return NandInstance(depth, tuple(bits))


def _fault_tree(height: int, value: int, budget: int, rng: np.random.Generator) -> list[int]:
    """Leaves of a subtree with the given value and at most ``budget`` faults
    at A's nodes along any A-winning path."""
    if height == 0:
        return [value]
    a_node = height % 2 == 0
    if a_node:
        if value == 0:
            kids = [(0, budget), (0, budget)]
        elif budget > 0 and rng.random() < 0.5:
            win = int(rng.integers(2))
            kids = [(1, budget - 1), (0, budget)] if win == 0 else [(0, budget), (1, budget - 1)]
        else:
            kids = [(1, budget), (1, budget)]
    else:
        if value == 1:
            kids = [(1, budget), (1, budget)]
        else:
            pattern = [(0, 0), (0, 1), (1, 0)][int(rng.integers(3))]
            kids = [(v, budget) for v in pattern]
    out: list[int] = []
    for v, b in kids:
        out.extend(_fault_tree(height - 1, v, b, rng))
    return out


def kfault(depth: int, k: int, rng: np.random.Generator) -> NandInstance:
    """A-winnable instance with ``F(x) <= 2**k``, checked exactly after sampling."""
    if k < 0:
        raise GenerateError("fault budget must be nonnegative")
    if depth % 2:
        raise GenerateError("fault complexity is defined for even depth")
    bound = 1 << k
    for _ in range(MAX_ATTEMPTS):
        x = NandInstance(depth, tuple(_fault_tree(depth, 1, k, rng)))
        if choice_complexity(x).f <= bound:
            return x
    raise GenerateError(f"no instance with F <= {bound} after {MAX_ATTEMPTS} attempts")


def generate(kind: str, depth: int, seed: int, p: float = 0.5, k: int = 1) -> NandInstance:
    rng = np.random.Generator(np.random.Philox(seed))
    if kind == "random-p":
        return random_p(depth, p, rng)
    if kind == "kfault":
        return kfault(depth, k, rng)
    if kind == "all-ones":
        return all_ones(depth)
    if kind == "planted-path":
        return planted_path(depth)
    raise ValueError(f"unknown generator {kind!r}; expected one of {', '.join(KINDS)}")


__all__ = ["KINDS", "all_ones", "generate", "kfault", "planted_path", "random_p"]
