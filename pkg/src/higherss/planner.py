"""Planning final words for n = 2 from a normal vector.

A final word over two indices has the shape tau j1^inf e j2^k j2^inf e.  Its
normal vector is row j2 of T_tau, and (N, j1) recovers tau by repeatedly
subtracting one row of a unimodular nonnegative matrix from the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .words import (
    EXT,
    EXTEND,
    FIN,
    SAT,
    Word,
    WordError,
    finite,
    require_admissible,
    saturate,
    t_matrix,
)


class PlanError(ValueError):
    pass


class WordShapeError(WordError):
    pass


@dataclass(frozen=True)
class Plan:
    normal: tuple[int, int]
    j1: int
    k: int
    tau: Word
    omega: Word
    cf: Optional[tuple[int, ...]]  # expansion giving tau for k = 0; None when N = (0, 1)
    trace: tuple[int, ...]  # q_1, ..., q_l in the order the rounds ran

    def to_document(self) -> dict:
        return {
            "normal": list(self.normal),
            "j1": self.j1,
            "j2": 3 - self.j1,
            "k": self.k,
            "tau": str(self.tau),
            "omega": str(self.omega),
            "cf": None if self.cf is None else list(self.cf),
            "trace": list(self.trace),
        }


def _split_final(w: Word) -> tuple[Word, int, int, int]:
    """(tau, j1, j2, k) for a word tau j1^inf e j2^k j2^inf e."""
    if w.n != 2:
        raise WordShapeError("normal vectors are defined for n = 2 only")
    require_admissible(w)
    L = w.letters
    i = 0
    while i < len(L) and L[i].kind == FIN:
        i += 1
    tau = Word(L[:i], 2)
    rest = L[i:]
    bad = WordShapeError(f"{w} is not of the form tau j1^inf e j2^k j2^inf e")
    if len(rest) < 4 or rest[0].kind != SAT or rest[1].kind != EXT:
        raise bad
    j1 = rest[0].j
    j2 = 3 - j1
    mid = rest[2:-2]
    if any(x.kind != FIN or x.j != j2 for x in mid):
        raise bad
    if rest[-2] != saturate(j2) or rest[-1].kind != EXT:
        raise bad
    return tau, j1, j2, len(mid)


def normal_vector(w: Word) -> tuple[int, int]:
    """Row j2 of T_w for a final word over two indices."""
    _, _, j2, _ = _split_final(w)
    row = t_matrix(w)[j2 - 1]
    return int(row[0]), int(row[1])


def _complement(N: tuple[int, int], j2: int) -> tuple[int, int]:
    """Smallest nonnegative N' making the matrix with N in row j2 unimodular."""
    x, y = N
    # row j2 = N, other row = (s, t); det = 1 reads y*s - x*t = 1 (j2 = 2) or x*t - y*s = 1 (j2 = 1)
    g, u, v = _ext_gcd(y, x)  # u*y + v*x = 1
    if g != 1:
        raise PlanError(f"{list(N)} is not primitive")
    sign = 1 if j2 == 2 else -1
    s, t = sign * u, -sign * v
    # shift by multiples of N to the smallest nonnegative solution
    if x == 0:
        k = -(t // y) if y else 0
        s, t = s + k * x, t + k * y
        # x = 0 forces y = 1 and s = sign
    elif y == 0:
        k = -(s // x)
        s, t = s + k * x, t + k * y
    else:
        k = max(-(s // x), -(t // y))
        s, t = s + k * x, t + k * y
    if s < 0 or t < 0:
        raise PlanError(f"no nonnegative complement for {list(N)} with j2 = {j2}")
    return s, t


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, u, v = _ext_gcd(b, a % b)
    return g, v, u - (a // b) * v


def _reduce(m: list[list[int]]) -> list[int]:
    """Subtract rows until the identity; returns q_1..q_l (the modified row each round)."""
    trace = []
    while m != [[1, 0], [0, 1]]:
        r1, r2 = m
        if r2[0] >= r1[0] and r2[1] >= r1[1]:
            m = [r1, [r2[0] - r1[0], r2[1] - r1[1]]]
            trace.append(2)
        elif r1[0] >= r2[0] and r1[1] >= r2[1]:
            m = [[r1[0] - r2[0], r1[1] - r2[1]], r2]
            trace.append(1)
        else:
            raise PlanError(f"rows of {m} are incomparable")
    return trace


def _validate(N: Sequence[int], j1: int) -> tuple[tuple[int, int], int]:
    if j1 not in (1, 2):
        raise PlanError("j1 must be 1 or 2")
    if len(N) != 2:
        raise PlanError("N must have two entries")
    N = (int(N[0]), int(N[1]))
    if N[0] < 0 or N[1] < 0:
        raise PlanError(f"{list(N)} has a negative entry")
    if gcd(*N) != 1:
        raise PlanError(f"{list(N)} is not primitive")
    if N == ((1, 0) if j1 == 1 else (0, 1)):
        raise PlanError(f"N = e_{j1} cannot occur together with j1 = {j1}")
    return N, j1


def plan_word(N: Sequence[int], j1: int, k: int = 0) -> Plan:
    """Final word with normal vector N whose first saturated index is j1.

    ``k`` selects N'_k = N'_0 + k N, i.e. k extra copies of j1 before j1^inf.
    """
    N, j1 = _validate(N, j1)
    if k < 0:
        raise PlanError("k must be nonnegative")
    j2 = 3 - j1
    s, t = _complement(N, j2)
    other = [s + k * N[0], t + k * N[1]]
    m = [list(N), other] if j2 == 1 else [other, list(N)]
    trace = _reduce(m)
    tau = Word(tuple(finite(q) for q in reversed(trace)), 2)
    omega = tau + saturate(j1) + EXTEND + saturate(j2) + EXTEND
    cf = None
    if N[0] != 0:
        a, b = continued_fraction(N)
        cf = next(r for r in (a, b) if r is not None and _ends_with(tau_from_cf(r), j2))
    return Plan(N, j1, k, tau, omega, cf, tuple(trace))


def _ends_with(tau: Word, j: int) -> bool:
    return len(tau) == 0 or tau.letters[-1].j == j


def continued_fraction(N: Sequence[int]) -> tuple[tuple[int, ...], Optional[tuple[int, ...]]]:
    """Both expansions of y/x: (one ending in a digit >= 2, one ending in 1).

    For N = (1, 0) the slope is 0 with the single expansion (0,), returned
    as ((0,), None).  N = (1, 1) gives ((1,), (0, 1)).
    """
    x, y = int(N[0]), int(N[1])
    if x <= 0 or y < 0:
        raise PlanError(f"continued fraction needs x > 0 and y >= 0, got {[x, y]}")
    if gcd(x, y) != 1:
        raise PlanError(f"{[x, y]} is not primitive")
    digits = []
    num, den = y, x
    while den:
        digits.append(num // den)
        num, den = den, num % den
    if digits == [0]:
        return (0,), None
    if digits == [1]:
        return (1,), (0, 1)
    # Euclid never ends on a 1 past the first step
    return tuple(digits), tuple(digits[:-1]) + (digits[-1] - 1, 1)


def tau_from_cf(cf: Sequence[int]) -> Word:
    letters = []
    for i, a in enumerate(cf):
        letters.extend([finite(1 if i % 2 == 0 else 2)] * a)
    return Word(tuple(letters), 2)


def fibonacci_check(k: int):
    """T of (12)^k, which should be [[f_{2k-1}, f_{2k}], [f_{2k}, f_{2k+1}]]."""
    if k < 1:
        raise ValueError("k must be at least 1")
    w = Word((finite(1), finite(2)) * k, 2)
    return t_matrix(w)


def fibonacci(m: int) -> int:
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a
