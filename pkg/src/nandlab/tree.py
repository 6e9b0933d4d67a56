"""NAND-tree instances, evaluation and game semantics.

A depth-``l`` instance holds ``2**l`` leaf bits, left to right. Internal
nodes at even height (distance from the leaves) are OR nodes where
player A moves; odd-height nodes are AND nodes where player B moves.

Nodes are addressed by bit strings read root-first: ``""`` is the root and
``tau + "b"`` is child ``b`` of ``tau``. The subtree at ``tau`` owns the
contiguous block of leaves whose index starts with the bits of ``tau``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import AddressError, DepthError, ParseError

NodeAddr = str


class Player(str, enum.Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> Player:
        return Player.B if self is Player.A else Player.A


@dataclass(frozen=True)
class NandInstance:
    depth: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise DepthError(f"depth must be nonnegative, got {self.depth}")
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        if len(bits) != 1 << self.depth:
            raise DepthError(
                f"depth {self.depth} needs {1 << self.depth} bits, got {len(bits)}"
            )
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_bits(cls, bits: Sequence[int] | str) -> NandInstance:
        if isinstance(bits, str):
            bits = [int(c) for c in bits]
        n = len(bits)
        if n == 0 or n & (n - 1):
            raise DepthError(f"number of bits must be a power of two, got {n}")
        return cls(n.bit_length() - 1, tuple(bits))

    @classmethod
    def parse(cls, text: str) -> NandInstance:
        """Parse the ``"depth:bitstring"`` encoding, e.g. ``"2:1100"``."""
        head, sep, body = text.strip().partition(":")
        if not sep or not head.isdigit() or not body or set(body) - {"0", "1"}:
            raise ParseError(f"malformed instance string {text!r}")
        try:
            return cls(int(head), tuple(int(c) for c in body))
        except (DepthError, ValueError) as exc:
            raise ParseError(f"malformed instance string {text!r}: {exc}") from exc

    @property
    def n(self) -> int:
        return len(self.bits)

    def bitstring(self) -> str:
        return "".join(map(str, self.bits))

    def __str__(self) -> str:
        return f"{self.depth}:{self.bitstring()}"


def _check_addr(x: NandInstance, tau: NodeAddr) -> None:
    if any(c not in "01" for c in tau):
        raise AddressError(f"address must be a bit string, got {tau!r}")
    if len(tau) > x.depth:
        raise AddressError(f"address {tau!r} is deeper than the instance ({x.depth})")


def _check_internal(x: NandInstance, tau: NodeAddr) -> None:
    _check_addr(x, tau)
    if len(tau) == x.depth:
        raise AddressError(f"address {tau!r} is a leaf")


def evaluate_bits(bits: Sequence[int]) -> int:
    """Value of the alternating tree over ``bits`` (length a power of two)."""
    level = list(bits)
    height = 0
    while len(level) > 1:
        height += 1
        if height % 2:
            level = [level[i] & level[i + 1] for i in range(0, len(level), 2)]
        else:
            level = [level[i] | level[i + 1] for i in range(0, len(level), 2)]
    return level[0]


def evaluate(x: NandInstance) -> int:
    """Return 1 iff ``x`` is a 1-instance (A-winnable)."""
    return evaluate_bits(x.bits)


def subtree(x: NandInstance, tau: NodeAddr) -> NandInstance:
    _check_addr(x, tau)
    k = len(tau)
    size = 1 << (x.depth - k)
    start = int(tau, 2) * size if tau else 0
    return NandInstance(x.depth - k, x.bits[start : start + size])


def mover(x: NandInstance, tau: NodeAddr) -> Player:
    """Player who moves at the internal node ``tau``."""
    _check_internal(x, tau)
    return Player.A if (x.depth - len(tau)) % 2 == 0 else Player.B


def is_fault(x: NandInstance, tau: NodeAddr) -> bool:
    _check_internal(x, tau)
    return evaluate(subtree(x, tau + "0")) != evaluate(subtree(x, tau + "1"))


def winner(x: NandInstance) -> Player:
    return Player.A if evaluate(x) else Player.B


def internal_nodes(depth: int) -> Iterator[NodeAddr]:
    """All internal node addresses of a depth-``depth`` tree, root first."""
    for k in range(depth):
        for i in range(1 << k):
            yield format(i, f"0{k}b") if k else ""


def all_instances(depth: int) -> Iterator[NandInstance]:
    """Every instance of the given depth, in lexicographic bit order."""
    n = 1 << depth
    for i in range(1 << n):
        yield NandInstance(depth, tuple((i >> (n - 1 - j)) & 1 for j in range(n)))


def require_even(x: NandInstance) -> int:
    """Return ``d = depth / 2`` or raise :class:`DepthError` for odd depth."""
    if x.depth % 2:
        raise DepthError(f"operation needs even depth, got {x.depth}")
    return x.depth // 2
