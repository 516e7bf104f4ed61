"""Downsets of Z^n clipped to a finite box, lexicographic downsets and page quads.

Downsets that matter to a chain complex only matter through the generators
they contain, so every downset here is stored extensionally inside a box that
covers the support.  Infinite families (lexicographic downsets, unions and
intersections of their translates) are evaluated exactly from their defining
inequalities before clipping, so nothing is lost by the clip.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from bisect import bisect_left, bisect_right
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .words import Word, require_admissible, word_state

Point = tuple[int, ...]


class BoxError(ValueError):
    pass


class NonStabilizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Box:
    lo: Point
    hi: Point

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or any(a > b for a, b in zip(self.lo, self.hi)):
            raise BoxError(f"invalid box {self.lo}..{self.hi}")

    @classmethod
    def bounding(cls, points: Iterable[Sequence[int]], pad: int = 0) -> "Box":
        pts = [tuple(p) for p in points]
        if not pts:
            raise BoxError("cannot bound an empty point set")
        n = len(pts[0])
        lo = tuple(min(p[i] for p in pts) - pad for i in range(n))
        hi = tuple(max(p[i] for p in pts) + pad for i in range(n))
        return cls(lo, hi)

    @property
    def n(self) -> int:
        return len(self.lo)

    def points(self) -> list[Point]:
        return list(itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))

    def __contains__(self, x) -> bool:
        return all(a <= v <= b for a, v, b in zip(self.lo, x, self.hi))

    def contains_box(self, other: "Box") -> bool:
        return other.lo in self and other.hi in self

    def inflate(self, k: int = 1) -> "Box":
        return Box(tuple(a - k for a in self.lo), tuple(b + k for b in self.hi))


@dataclass(frozen=True)
class Downset:
    box: Box
    members: frozenset[Point]

    def __post_init__(self):
        for x in self.members:
            if x not in self.box:
                raise BoxError(f"member {x} outside box")

    @classmethod
    def _trusted(cls, box: Box, members: frozenset) -> "Downset":
        """Skip the membership audit for sets built from box points."""
        d = object.__new__(cls)
        object.__setattr__(d, "box", box)
        object.__setattr__(d, "members", members)
        return d

    @classmethod
    def from_predicate(cls, box: Box, pred: Callable[[Point], bool]) -> "Downset":
        return cls._trusted(box, frozenset(x for x in box.points() if pred(x)))

    @classmethod
    def empty(cls, box: Box) -> "Downset":
        return cls(box, frozenset())

    @classmethod
    def full(cls, box: Box) -> "Downset":
        return cls(box, frozenset(box.points()))

    @classmethod
    def closure(cls, box: Box, gens: Iterable[Sequence[int]]) -> "Downset":
        """Downward closure of ``gens`` inside the box."""
        gens = [tuple(g) for g in gens]
        return cls.from_predicate(
            box, lambda x: any(all(a <= b for a, b in zip(x, g)) for g in gens)
        )

    def __contains__(self, x) -> bool:
        return tuple(x) in self.members

    def __le__(self, other: "Downset") -> bool:
        self._same_box(other)
        return self.members <= other.members

    def __or__(self, other: "Downset") -> "Downset":
        self._same_box(other)
        return Downset._trusted(self.box, self.members | other.members)

    def __and__(self, other: "Downset") -> "Downset":
        self._same_box(other)
        return Downset._trusted(self.box, self.members & other.members)

    def __len__(self) -> int:
        return len(self.members)

    def _same_box(self, other: "Downset"):
        if self.box != other.box:
            raise BoxError("downsets live in different boxes")

    def is_downward_closed(self) -> bool:
        for x in self.members:
            for i in range(self.box.n):
                y = x[:i] + (x[i] - 1,) + x[i + 1:]
                if y in self.box and y not in self.members:
                    return False
        return True


@dataclass(frozen=True)
class DownsetQuad:
    """(b, p, q, z) with z <= q <= p <= b; indexes the S-term S^{pz}_{bq}."""

    b: Downset
    p: Downset
    q: Downset
    z: Downset

    def __post_init__(self):
        if not (self.z <= self.q <= self.p <= self.b):
            raise ValueError("quad is not ordered z <= q <= p <= b")

    def __iter__(self):
        return iter((self.b, self.p, self.q, self.z))


@dataclass(frozen=True)
class LexRegion:
    """{x : T x <=_sigma target} where only the first ``depth`` slots are finite.

    ``order`` lists coordinates (0-based) in the order the sigma-lex comparison
    reads them.  Slots from ``depth`` on carry +infinity: a tie on the finite
    prefix counts as <= but not as <.
    """

    t: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]
    target: tuple[int, ...]  # in T-coordinates, full length n
    depth: int
    strict: bool

    def key(self, x: Sequence[int]) -> tuple[int, ...]:
        tx = [sum(r[k] * x[k] for k in range(len(x))) for r in self.t]
        return tuple(tx[c] for c in self.order[: self.depth])

    def target_key(self) -> tuple[int, ...]:
        return tuple(self.target[c] for c in self.order[: self.depth])

    def __contains__(self, x) -> bool:
        k, tk = self.key(x), self.target_key()
        return k < tk if self.strict else k <= tk

    def shifted(self, v: Sequence[int]) -> "LexRegion":
        """The translate region + v."""
        tv = [sum(r[k] * v[k] for k in range(len(v))) for r in self.t]
        return LexRegion(
            self.t, self.order, tuple(a + b for a, b in zip(self.target, tv)), self.depth, self.strict
        )

    def clip(self, box: Box) -> Downset:
        return _clip(self, box)

    def _clip(self, box: Box) -> Downset:
        keys, pts = _sorted_keys(self.t, box, self.order[: self.depth])
        tk = self.target_key()
        cut = bisect_left(keys, tk) if self.strict else bisect_right(keys, tk)
        return _prefix_downset(self.t, box, self.order[: self.depth], cut)


@lru_cache(maxsize=1024)
def _sorted_keys(t: tuple, box: Box, cols: tuple) -> tuple[list, list]:
    """Box points sorted by their lex key on the given T-coordinates."""
    pairs = sorted((tuple(tx[c] for c in cols), x) for x, tx in _t_points(t, box))
    return [k for k, _ in pairs], [x for _, x in pairs]


@lru_cache(maxsize=1 << 16)
def _prefix_downset(t: tuple, box: Box, cols: tuple, cut: int) -> Downset:
    return Downset._trusted(box, frozenset(_sorted_keys(t, box, cols)[1][:cut]))


@lru_cache(maxsize=256)
def _t_points(t: tuple, box: Box) -> tuple:
    """Box points paired with their images under T."""
    out = []
    for x in box.points():
        out.append((x, tuple(sum(r[k] * x[k] for k in range(len(x))) for r in t)))
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _clip(region: LexRegion, box: Box) -> Downset:
    return region._clip(box)


def sigma_order(sigma: Sequence[int]) -> tuple[int, ...]:
    """Coordinates in reading order for a permutation given as coordinate -> slot (0-based)."""
    return tuple(sorted(range(len(sigma)), key=lambda i: sigma[i]))


def lex_downset(P: Sequence[int], T, sigma: Sequence[int], box: Box, strict: bool = False) -> Downset:
    """{x : T x <=_sigma T P} (or < when strict), clipped to ``box``.

    ``sigma[i]`` is the (0-based) slot of coordinate i in the comparison.
    """
    t = tuple(tuple(int(v) for v in row) for row in T)
    n = len(t)
    region = LexRegion(t, sigma_order(sigma), (0,) * n, n, strict).shifted(P)
    return region.clip(box)


def comp0(cells: Iterable[Sequence[int]]) -> frozenset[Point]:
    """Connected component of the origin in the unit-distance graph on ``cells``."""
    cells = {tuple(c) for c in cells}
    if not cells:
        return frozenset()
    n = len(next(iter(cells)))
    origin = (0,) * n
    if origin not in cells:
        return frozenset()
    seen = {origin}
    todo = deque([origin])
    while todo:
        x = todo.popleft()
        for i in range(n):
            for s in (-1, 1):
                y = x[:i] + (x[i] + s,) + x[i + 1:]
                if y in cells and y not in seen:
                    seen.add(y)
                    todo.append(y)
    return frozenset(seen)


def is_connected(cells: Iterable[Sequence[int]]) -> bool:
    cells = {tuple(c) for c in cells}
    if not cells:
        return True
    start = next(iter(cells))
    shifted = {tuple(a - b for a, b in zip(c, start)) for c in cells}
    return len(comp0(shifted)) == len(cells)


def page_sigma(w: Word, j: int) -> tuple[int, ...]:
    """Reading order for the quads of (w, j): Y\\{j} ascending, then j, then X ascending.

    Returned as 0-based coordinates.  Any order with j right before the
    saturated block works; this one is fixed so outputs are reproducible.
    """
    st = word_state(w)
    x = sorted(st.x)
    y = sorted(set(range(1, w.n + 1)) - st.x - {j})
    return tuple(c - 1 for c in y + [j] + x)


@dataclass(frozen=True)
class QuadRegions:
    """Unclipped regions of the (w, j) construction at the origin."""

    p: LexRegion
    q: LexRegion
    a: tuple[int, ...]
    delta: tuple[int, ...]
    j: int


def quad_regions(w: Word, j: int) -> QuadRegions:
    require_admissible(w)
    st = word_state(w)
    if j in st.x:
        raise ValueError(f"index {j} is already saturated in {w}")
    if w.last is not None and w.last.kind == "sat":
        raise ValueError(f"{w} ends in a saturated letter; no differential follows")
    order = page_sigma(w, j)
    depth = w.n - len(st.x)
    zero = (0,) * w.n
    p = LexRegion(st.t, order, zero, depth, False)
    q = LexRegion(st.t, order, zero, depth, True)
    return QuadRegions(p, q, st.a[j - 1], st.delta[j - 1], j)


def _neg(v):
    return tuple(-a for a in v)


def representative_quad(w: Word, j: int, P: Sequence[int], box: Box) -> DownsetQuad:
    """Downsets (b, p, q, z) whose S-term realizes S(P; w)."""
    return _representative_quad(w, j, tuple(int(v) for v in P), box)


@lru_cache(maxsize=1 << 14)
def _representative_quad(w: Word, j: int, P: tuple, box: Box) -> DownsetQuad:
    r = quad_regions(w, j)
    if len(P) != w.n or box.n != w.n:
        raise BoxError("dimension mismatch between word, position and box")
    p = r.p.shifted(P)
    q = r.q.shifted(P)
    return DownsetQuad(
        q.shifted(r.a).clip(box), p.clip(box), q.clip(box), p.shifted(_neg(r.a)).clip(box)
    )


def sweep_window(region: LexRegion, j: int, box: Box) -> tuple[int, int]:
    """Shifts s of the j-th T-coordinate target outside which the clip is constant.

    Translating by delta_j only moves the j-th T-coordinate, and T has
    nonnegative entries, so the extreme values sit at the box corners.
    """
    row = region.t[j - 1]
    lo = sum(c * v for c, v in zip(row, box.lo))
    hi = sum(c * v for c, v in zip(row, box.hi))
    tj = region.target[j - 1]
    return lo - tj - 1, hi - tj + 1


def _shift_t(region: LexRegion, j: int, s: int) -> LexRegion:
    target = list(region.target)
    target[j - 1] += s
    return LexRegion(region.t, region.order, tuple(target), region.depth, region.strict)


def sweep(region: LexRegion, j: int, sign: int, box: Box, lo: Optional[int], mode: str) -> Downset:
    """Union ('or') or intersection ('and') of clip(region + i*sign*delta_j).

    i runs over i >= lo, or over all integers when lo is None.
    """
    wlo, whi = sweep_window(region, j, box)
    if sign > 0:
        ilo, ihi = wlo, whi
    else:
        ilo, ihi = -whi, -wlo
    start = ilo if lo is None else lo
    stop = max(start, ihi)
    combine = (lambda x, y: x | y) if mode == "or" else (lambda x, y: x & y)
    acc = _shift_t(region, j, sign * start).clip(box)
    for i in range(start + 1, stop + 1):
        acc = combine(acc, _shift_t(region, j, sign * i).clip(box))
    probes = [stop + 1] + ([start - 1] if lo is None else [])
    for i in probes:
        if combine(acc, _shift_t(region, j, sign * i).clip(box)) != acc:
            raise NonStabilizationError("saturation did not stabilize inside the box")
    return acc


def limit_region(region: LexRegion, j: int, upward: bool) -> LexRegion:
    """Union (upward) or intersection (downward) of region + i*delta_j over all i.

    Only the j-th T-coordinate moves, so in the limit the comparison is
    decided on the slots read before j: ties there count as <= going up and
    fail going down.  Unions over i >= 0 and intersections over i >= 0 of
    the downward translates have the same limits since the family is monotone.
    """
    slot = region.order.index(j - 1)
    if slot >= region.depth:
        raise ValueError(f"coordinate {j} is not among the finite slots")
    return LexRegion(region.t, region.order, region.target, slot, not upward)


def extension_breaks(region: LexRegion, j: int, box: Box) -> list[int]:
    """Shifts i at which clip(region + i*delta_j) gains points; sorted.

    Membership of x is monotone in i and changes only for points tying the
    target on the slots read before j, at i = (T x)_j - target_j (+1 if strict).
    """
    slot = region.order.index(j - 1)
    pre = region.order[:slot]
    out = set()
    for x, tx in _t_points(region.t, box):
        if all(tx[c] == region.target[c] for c in pre):
            out.add(tx[j - 1] - region.target[j - 1] + (1 if region.strict else 0))
    return sorted(out)


@dataclass(frozen=True)
class StepQuads:
    next: DownsetQuad
    saturated: DownsetQuad
    extended: DownsetQuad
    breaks: tuple[int, ...]  # shifts i where p + i*delta changes inside the box


def step_quads(w: Word, j: int, P: Sequence[int], box: Box) -> StepQuads:
    """Quads for S(P; w*j), S(P; w*j^inf) and the extension of S(P; w*j^inf e)."""
    return _step_quads(w, j, tuple(int(v) for v in P), box)


@lru_cache(maxsize=1 << 14)
def _step_quads(w: Word, j: int, P: tuple, box: Box) -> StepQuads:
    r = quad_regions(w, j)
    p = r.p.shifted(P)
    q = r.q.shifted(P)
    a = r.a
    pc, qc = p.clip(box), q.clip(box)
    nxt = DownsetQuad(p.shifted(a).clip(box), pc, qc, q.shifted(_neg(a)).clip(box))
    b_inf = limit_region(q.shifted(a), j, True).clip(box)
    z_inf = limit_region(p.shifted(_neg(a)), j, False).clip(box)
    sat = DownsetQuad(b_inf, pc, qc, z_inf)
    p_top = limit_region(p, j, True).clip(box)
    p_bot = limit_region(p, j, False).clip(box)
    ext = DownsetQuad(b_inf, p_top, p_bot, z_inf)
    return StepQuads(nxt, sat, ext, tuple(extension_breaks(p, j, box)))


def extension_piece(w: Word, j: int, P: Sequence[int], i: int, box: Box) -> Downset:
    """p + i*delta_j for the (w, j) construction at P."""
    r = quad_regions(w, j)
    return r.p.shifted(tuple(P)).shifted(tuple(i * s for s in r.delta)).clip(box)
