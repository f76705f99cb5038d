"""
Order-preserving unbounded maps on the integers, the standard concrete
pregroup: multiplication is composition, ``f^l(m) = min{n : m <= f(n)}``
and ``f^r(m) = max{n : f(n) <= m}``.

Maps are stored as a finite table on a window ``[lo, hi]`` plus two
quasi-affine tails: right of the window ``f(n) = f(n - P) + S`` and left
of it ``f(n) = f(n + P') - S'``.  Translations (``P = S = 1``), ``2n``
(``P = 1, S = 2``) and ``ceil(n / 2)`` (``P = 2, S = 1``) all fit, and the
family is closed under taking adjoints (periods and shifts swap).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

from .core import LEFT, RIGHT, PregroupError


class IntegerMapError(PregroupError, ValueError):
    pass


@dataclass(frozen=True)
class IntegerMapRep:
    lo: int
    hi: int
    table: Tuple[int, ...]
    pos_tail: Tuple[int, int] = (1, 1)
    neg_tail: Tuple[int, int] = (1, 1)

    def __post_init__(self):
        if len(self.table) != self.hi - self.lo + 1:
            raise IntegerMapError("table length does not match window")
        for period, shift in (self.pos_tail, self.neg_tail):
            if period < 1 or shift < 1:
                raise IntegerMapError(
                    "tail period and shift must be >= 1 (unbounded map)")
            if period > len(self.table):
                raise IntegerMapError("window shorter than tail period")
        self.validate()

    @classmethod
    def tabulate(cls, fn: Callable[[int], int], lo: int, hi: int,
                 pos_tail=(1, 1), neg_tail=None) -> "IntegerMapRep":
        neg_tail = pos_tail if neg_tail is None else neg_tail
        return cls(lo, hi, tuple(int(fn(n)) for n in range(lo, hi + 1)),
                   tuple(pos_tail), tuple(neg_tail))

    @classmethod
    def identity(cls) -> "IntegerMapRep":
        return cls(0, 0, (0,))

    @classmethod
    def translation(cls, c: int) -> "IntegerMapRep":
        return cls(0, 0, (c,))

    def __call__(self, n: int) -> int:
        if n > self.hi:
            period, shift = self.pos_tail
            k = -(-(n - self.hi) // period)
            return self.table[n - k * period - self.lo] + k * shift
        if n < self.lo:
            period, shift = self.neg_tail
            k = -(-(self.lo - n) // period)
            return self.table[n + k * period - self.lo] - k * shift
        return self.table[n - self.lo]

    def validate(self):
        """Order preservation, checked on the window widened by one period each side."""
        a = self.lo - self.neg_tail[0]
        b = self.hi + self.pos_tail[0]
        prev = self(a)
        for n in range(a + 1, b + 1):
            cur = self(n)
            if cur < prev:
                raise IntegerMapError(
                    "map is not order preserving at {} -> {}".format(n - 1, n))
            prev = cur

    def compose(self, other: "IntegerMapRep") -> Callable[[int], int]:
        """Pointwise ``self . other`` (apply ``other`` first)."""
        return lambda n: self(other(n))


def _bracket(f: IntegerMapRep, m: int) -> Tuple[int, int]:
    """Integers ``a < b`` with ``f(a) < m <= f(b)``."""
    a = b = m
    step = 1
    while f(b) < m:
        b += step
        step *= 2
    step = 1
    while f(a) >= m:
        a -= step
        step *= 2
    return a, b


def min_preimage(f: IntegerMapRep, m: int) -> int:
    """``min{n : m <= f(n)}``."""
    a, b = _bracket(f, m)
    while b - a > 1:
        mid = (a + b) // 2
        if f(mid) >= m:
            b = mid
        else:
            a = mid
    return b


def max_preimage(f: IntegerMapRep, m: int) -> int:
    """``max{n : f(n) <= m}``."""
    return min_preimage(f, m + 1) - 1


def integer_map_adjoint(f: IntegerMapRep, direction: str) -> IntegerMapRep:
    if direction == LEFT:
        solve = min_preimage
    elif direction == RIGHT:
        solve = max_preimage
    else:
        raise ValueError("direction must be 'left' or 'right'")
    f.validate()
    p_pos, s_pos = f.pos_tail
    p_neg, s_neg = f.neg_tail
    lo = f(f.lo) - s_neg
    hi = f(f.hi) + s_pos
    g = IntegerMapRep(lo, hi, tuple(solve(f, m) for m in range(lo, hi + 1)),
                      (s_pos, p_pos), (s_neg, p_neg))
    # tails of the adjoint follow from those of f; confirm beyond the window
    for m in range(lo - 2 * s_neg - 2, hi + 2 * s_pos + 3):
        if g(m) != solve(f, m):
            raise IntegerMapError("adjoint tail mismatch at {}".format(m))
    return g


def adjunction_violations(f: IntegerMapRep, g: IntegerMapRep, direction: str,
                          lo: int = -100, hi: int = 100) -> List[tuple]:
    """
    Points in ``[lo, hi]`` where ``g`` fails to be the given adjoint of ``f``.

    Right adjoint: ``f(g(m)) <= m <= g(f(m))``.
    Left adjoint: ``g(f(m)) <= m <= f(g(m))``.
    """
    bad = []
    for m in range(lo, hi + 1):
        if direction == RIGHT:
            ok = f(g(m)) <= m <= g(f(m))
        elif direction == LEFT:
            ok = g(f(m)) <= m <= f(g(m))
        else:
            raise ValueError("direction must be 'left' or 'right'")
        if not ok:
            bad.append((m, f(g(m)), g(f(m))))
    return bad
