"""Cayley gradings on integer lattices.

A grading is a pair ``(Z^n, S)`` where ``S`` is the submonoid generated by a
finite set of nonnegative, nonzero integer vectors. The monoid induces the
partial order ``a <= b  iff  b - a in S`` on grades. Grades are plain tuples of
ints; the monoid operation is written additively throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence, Tuple, Union

Grade = Tuple[int, ...]


class GradingError(ValueError):
    """Raised for arity mismatches and unsupported grading operations."""


class InvalidBoxError(GradingError):
    pass


class OrderError(GradingError):
    """Raised when an operation needs ``a <= b`` and it does not hold."""


class _Extreme:
    """Bottom or top element adjoined to the grading poset."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self) -> str:
        return "BOTTOM" if self.sign < 0 else "TOP"

    def __str__(self) -> str:
        return "-inf" if self.sign < 0 else "+inf"

    def __reduce__(self):
        return ("BOTTOM" if self.sign < 0 else "TOP")


BOTTOM = _Extreme(-1)
TOP = _Extreme(1)

ExtendedGrade = Union[Grade, _Extreme]


def is_extreme(x) -> bool:
    return isinstance(x, _Extreme)


@dataclass(frozen=True)
class CayleyGrading:
    """The grading ``(Z^arity, <generators>)``.

    Parameters
    ----------
    arity : int
        Rank ``n`` of the ambient lattice.
    generators : tuple of Grade
        Monoid generators; each must be componentwise >= 0 and nonzero, so the
        identity is the only invertible element of the generated monoid.
    """

    arity: int
    generators: Tuple[Grade, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise GradingError("arity must be positive")
        gens = tuple(tuple(int(c) for c in g) for g in self.generators)
        if not gens:
            raise GradingError("at least one generator is required")
        for g in gens:
            if len(g) != self.arity:
                raise GradingError(f"generator {g} does not have arity {self.arity}")
            if any(c < 0 for c in g) or not any(g):
                raise GradingError(f"generator {g} must be nonnegative and nonzero")
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))

    @classmethod
    def standard(cls, arity: int = 1) -> "CayleyGrading":
        """``Z^n`` with the unit vectors as generators (the usual n-parameter order)."""
        basis = [tuple(int(i == j) for j in range(arity)) for i in range(arity)]
        return cls(arity, tuple(basis))

    @property
    def is_standard(self) -> bool:
        return self == CayleyGrading.standard(self.arity)

    @property
    def zero(self) -> Grade:
        return (0,) * self.arity

    def check(self, *grades: Sequence[int]) -> None:
        for g in grades:
            if len(g) != self.arity:
                raise GradingError(f"grade {tuple(g)} does not have arity {self.arity}")


def _in_monoid(generators: Tuple[Grade, ...], d: Grade) -> bool:
    if any(c < 0 for c in d):
        return False
    return _member(generators, d)


@lru_cache(maxsize=65536)
def _member(generators: Tuple[Grade, ...], d: Grade) -> bool:
    # Generators are nonnegative and nonzero, so every subtraction strictly
    # shrinks the coordinate sum and the recursion terminates.
    if not any(d):
        return True
    for g in generators:
        rest = tuple(x - y for x, y in zip(d, g))
        if all(c >= 0 for c in rest) and _member(generators, rest):
            return True
    return False


def leq(grading: CayleyGrading, a: Sequence[int], b: Sequence[int]) -> bool:
    """Return True iff ``b - a`` lies in the monoid generated by the grading."""
    grading.check(a, b)
    d = tuple(int(y) - int(x) for x, y in zip(a, b))
    if grading.is_standard:
        return all(c >= 0 for c in d)
    return _in_monoid(grading.generators, d)


def ext_leq(grading: CayleyGrading, a: ExtendedGrade, b: ExtendedGrade) -> bool:
    """Order on grades extended by BOTTOM and TOP."""
    if a is BOTTOM or b is TOP:
        return True
    if a is TOP or b is BOTTOM:
        return False
    return leq(grading, a, b)


def meet(grading: CayleyGrading, a: Sequence[int], b: Sequence[int]) -> Grade:
    """Greatest lower bound of two grades.

    Only standard gradings are supported; there the meet is the componentwise
    minimum. For other monoids a meet need not exist, and the componentwise
    minimum of the ambient lattice is generally not a lower bound.
    """
    grading.check(a, b)
    if not grading.is_standard:
        raise GradingError("meets are only available for standard-basis gradings")
    return tuple(min(int(x), int(y)) for x, y in zip(a, b))


def monoid_closure(grading: CayleyGrading, box: Tuple[Sequence[int], Sequence[int]]) -> list:
    """Elements of the generated monoid lying in ``box = (lower, upper)``.

    Breadth-first closure from the identity under addition of generators,
    pruned once a point leaves the upper bound (generators are nonnegative, so
    nothing re-enters). Returned in lexicographic order.
    """
    lo, hi = (tuple(int(c) for c in x) for x in box)
    grading.check(lo, hi)
    if any(l > h for l, h in zip(lo, hi)):
        raise InvalidBoxError(f"box lower {lo} exceeds upper {hi}")
    seen = {grading.zero}
    queue = deque([grading.zero])
    while queue:
        x = queue.popleft()
        for g in grading.generators:
            y = tuple(s + t for s, t in zip(x, g))
            if y not in seen and all(c <= h for c, h in zip(y, hi)):
                seen.add(y)
                queue.append(y)
    return sorted(x for x in seen if all(l <= c <= h for c, l, h in zip(x, lo, hi)))


def box_grades(lo: Sequence[int], hi: Sequence[int]) -> Iterator[Grade]:
    """All lattice points of a box in lexicographic order."""
    return product(*(range(l, h + 1) for l, h in zip(lo, hi)))


def in_box(a: Sequence[int], lo: Sequence[int], hi: Sequence[int]) -> bool:
    return len(a) == len(lo) and all(l <= c <= h for c, l, h in zip(a, lo, hi))


def shift(a: Iterable[int], x: Iterable[int], sign: int = 1) -> Grade:
    return tuple(int(s) + sign * int(t) for s, t in zip(a, x))
