"""Exact nonnegative rationals extended with an absorbing infinity.

Resistances and choice complexities are either exact rationals or
infinite (disconnected terminals, unwinnable subtrees). ``ExtRational``
wraps :class:`fractions.Fraction` and adds a single ``INF`` value.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "ExtRational"]


class ExtRational:
    """Nonnegative rational or infinity.

    ``+`` and ``*`` are absorbing in ``INF`` (``0 * INF`` is rejected since it
    never arises here), ``min``/``max`` work through ordering and
    ``a | b`` is the parallel combination ``ab / (a + b)`` with
    ``a | INF == a``.
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | Fraction | str | None = 0) -> None:
        if isinstance(value, ExtRational):
            value = value._value
        elif isinstance(value, str):
            value = None if value == "inf" else Fraction(value)
        elif value is not None:
            value = Fraction(value)
            if value < 0:
                raise ValueError(f"ExtRational must be nonnegative, got {value}")
        self._value: Fraction | None = value

    # -- construction / inspection -------------------------------------------

    @classmethod
    def _make(cls, value: Fraction | None) -> ExtRational:
        # trusted internal constructor: skips validation
        obj = object.__new__(cls)
        obj._value = value
        return obj

    @classmethod
    def coerce(cls, other: Number) -> ExtRational:
        if type(other) is ExtRational:
            return other
        if isinstance(other, (int, Rational)):
            return cls(Fraction(other))
        return NotImplemented

    @property
    def is_inf(self) -> bool:
        return self._value is None

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def fraction(self) -> Fraction:
        if self._value is None:
            raise ValueError("infinite value has no Fraction form")
        return self._value

    def __float__(self) -> float:
        return float("inf") if self._value is None else float(self._value)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Number) -> ExtRational:
        other = ExtRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._value is None or other._value is None:
            return INF
        return ExtRational._make(self._value + other._value)

    __radd__ = __add__

    def __mul__(self, other: Number) -> ExtRational:
        other = ExtRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._value is None or other._value is None:
            if self._value == 0 or other._value == 0:
                raise ValueError("0 * inf is undefined")
            return INF
        return ExtRational._make(self._value * other._value)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> ExtRational:
        other = ExtRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._value is None:
            raise ValueError("division by inf is not supported")
        if other._value == 0:
            raise ZeroDivisionError("ExtRational division by zero")
        if self._value is None:
            return INF
        return ExtRational._make(self._value / other._value)

    def __or__(self, other: Number) -> ExtRational:
        """Parallel combination."""
        other = ExtRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._value is None:
            return other
        if other._value is None:
            return self
        total = self._value + other._value
        if total == 0:
            return ExtRational._make(Fraction(0))
        return ExtRational._make(self._value * other._value / total)

    __ror__ = __or__

    # -- ordering ------------------------------------------------------------

    def _cmp(self, other: Number) -> int | None:
        other = ExtRational.coerce(other)
        if other is NotImplemented:
            return None
        a, b = self._value, other._value
        if a is None:
            return 0 if b is None else 1
        if b is None:
            return -1
        return (a > b) - (a < b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, float):
            return float(self) == other
        other = ExtRational.coerce(other)  # type: ignore[arg-type]
        if other is NotImplemented:
            return NotImplemented
        return self._value == other._value

    def __hash__(self) -> int:
        return hash(self._value) if self._value is not None else hash(float("inf"))

    def __lt__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    # -- text ----------------------------------------------------------------

    def to_json(self) -> str:
        """``"p/q"`` for finite values (``"p"`` when integral), ``"inf"`` otherwise."""
        if self._value is None:
            return "inf"
        return str(self._value)

    @classmethod
    def from_json(cls, text: str) -> ExtRational:
        return cls(text)

    def __repr__(self) -> str:
        return f"ExtRational({self.to_json()!r})"

    def __str__(self) -> str:
        return self.to_json()


INF = ExtRational(None)
ONE = ExtRational(1)
