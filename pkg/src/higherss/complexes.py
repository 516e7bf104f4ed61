"""Finite multigraded chain complexes over F_p and their canonical filtration.

C is the direct sum of the pieces C_P over positions P in Z^n and d may only
move a generator to positions that are <= its own.  The filtration piece of a
downset p is the span of the generators sitting in p, which is a subcomplex
and makes the filtration distributive.

MFC documents are JSON objects::

    {"n": 2, "characteristic": 2,
     "generators": [{"id": "x", "degree": 1, "position": [1, 0]}, ...],
     "differential": [{"from": "x", "to": "y", "coeff": 1}, ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

import numpy as np

from .downsets import Box, Downset
from .linalg import Subspace, is_prime


class MFCError(ValueError):
    pass


class MFCParseError(MFCError):
    pass


class DifferentialSquareError(MFCError):
    pass


class MonotonicityError(MFCError):
    pass


class CharacteristicError(MFCError):
    pass


class DegreeError(MFCError):
    pass


@dataclass(frozen=True)
class Generator:
    id: str
    position: tuple[int, ...]
    degree: Optional[int] = None


class MultifilteredComplex:
    """A validated complex.  Treat instances as immutable."""

    def __init__(self, n: int, characteristic: int, generators: Sequence[Generator], differential):
        self.n = int(n)
        self.p = int(characteristic)
        self.generators = tuple(generators)
        d = np.asarray(differential, dtype=np.int64).reshape(len(self.generators), len(self.generators))
        self.d = d % self.p
        self.d.setflags(write=False)
        self._cache: dict = {}
        self._validate()

    @property
    def characteristic(self) -> int:
        return self.p

    def _validate(self):
        if self.n < 1:
            raise MFCError("n must be at least 1")
        if not is_prime(self.p):
            raise CharacteristicError(f"characteristic {self.p} is not prime")
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            raise MFCError("generator ids must be unique")
        degs = {g.degree is None for g in self.generators}
        if len(degs) > 1:
            raise DegreeError("either every generator has a degree or none does")
        for g in self.generators:
            if len(g.position) != self.n:
                raise MFCError(f"generator {g.id} has a position of length {len(g.position)}")
        for t, s in zip(*np.nonzero(self.d)):
            gs, gt = self.generators[s], self.generators[t]
            if not all(a <= b for a, b in zip(gt.position, gs.position)):
                raise MonotonicityError(
                    f"d({gs.id}) has a term on {gt.id}: position {list(gt.position)} is not <= {list(gs.position)}"
                )
            if self.graded and gt.degree != gs.degree - 1:
                raise DegreeError(f"d({gs.id}) hits {gt.id} in degree {gt.degree}, expected {gs.degree - 1}")
        if np.any((self.d @ self.d) % self.p):
            raise DifferentialSquareError("d o d != 0")

    @property
    def graded(self) -> bool:
        return bool(self.generators) and self.generators[0].degree is not None

    def __len__(self) -> int:
        return len(self.generators)

    @cached_property
    def degrees(self) -> tuple:
        """Sorted degrees, or (None,) for an ungraded complex."""
        if not self.graded:
            return (None,)
        return tuple(sorted({g.degree for g in self.generators}))

    @cached_property
    def support(self) -> frozenset[tuple[int, ...]]:
        return frozenset(g.position for g in self.generators)

    def support_box(self, extra: Sequence[Sequence[int]] = ()) -> Box:
        """Bounding box of the support (and ``extra`` points) inflated by 1."""
        pts = list(self.support) + [tuple(x) for x in extra]
        if not pts:
            pts = [(0,) * self.n]
        return Box.bounding(pts, pad=1)

    def block(self, degree) -> tuple[int, ...]:
        """Generator indices in the given degree (all of them when ungraded)."""
        key = ("block", degree)
        if key not in self._cache:
            if degree is None:
                self._cache[key] = tuple(range(len(self.generators)))
            else:
                self._cache[key] = tuple(i for i, g in enumerate(self.generators) if g.degree == degree)
        return self._cache[key]

    def lower(self, degree):
        return None if degree is None else degree - 1

    def boundary(self, degree) -> np.ndarray:
        """Matrix of d from the degree block to the degree-1 block."""
        key = ("bd", degree)
        if key not in self._cache:
            src = self.block(degree)
            tgt = self.block(self.lower(degree))
            m = self.d[np.ix_(tgt, src)] if src and tgt else np.zeros((len(tgt), len(src)), np.int64)
            m = np.ascontiguousarray(m)
            m.setflags(write=False)
            self._cache[key] = m
        return self._cache[key]

    def positions_in(self, degree) -> list[tuple[int, ...]]:
        return [self.generators[i].position for i in self.block(degree)]

    def mask(self, downset: Downset, degree) -> int:
        """Bitmask (over block-local indices) of generators of the block lying in ``downset``."""
        if not all(x in downset.box for x in self.support):
            raise MFCError("downset box does not contain the support")
        m = 0
        for k, pos in enumerate(self.positions_in(degree)):
            if pos in downset.members:
                m |= 1 << k
        return m

    def to_document(self) -> dict:
        gens = []
        for g in self.generators:
            e: dict[str, Any] = {"id": g.id, "position": list(g.position)}
            if g.degree is not None:
                e["degree"] = g.degree
            gens.append(e)
        diff = []
        for s in range(len(self.generators)):
            for t in range(len(self.generators)):
                c = int(self.d[t, s])
                if c:
                    diff.append({"from": self.generators[s].id, "to": self.generators[t].id, "coeff": c})
        return {"n": self.n, "characteristic": self.p, "generators": gens, "differential": diff}


def load_mfc(document: Union[Mapping, str]) -> MultifilteredComplex:
    """Validate an MFC document (mapping or JSON text) and build the complex."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MFCParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise MFCParseError("document must be a JSON object")
    try:
        n = document["n"]
        p = document["characteristic"]
        raw_gens = document["generators"]
        raw_diff = document.get("differential", [])
    except KeyError as exc:
        raise MFCParseError(f"missing field {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MFCParseError("n must be a positive integer")
    if not isinstance(p, int) or isinstance(p, bool):
        raise CharacteristicError("characteristic must be an integer")
    if not is_prime(p):
        raise CharacteristicError(f"characteristic {p} is not prime")
    gens = []
    for i, g in enumerate(raw_gens):
        try:
            pos = tuple(int(v) for v in g["position"])
            gid = g["id"]
            deg = g.get("degree")
        except (KeyError, TypeError, ValueError) as exc:
            raise MFCParseError(f"bad generator entry {i}: {exc}") from exc
        if not isinstance(gid, str):
            raise MFCParseError(f"generator {i} id must be a string")
        if deg is not None and (not isinstance(deg, int) or isinstance(deg, bool)):
            raise MFCParseError(f"generator {gid} degree must be an integer")
        if len(pos) != n:
            raise MFCParseError(f"generator {gid} position must have length {n}")
        gens.append(Generator(gid, pos, deg))
    index = {g.id: i for i, g in enumerate(gens)}
    if len(index) != len(gens):
        raise MFCParseError("generator ids must be unique")
    d = np.zeros((len(gens), len(gens)), dtype=np.int64)
    seen = set()
    for e in raw_diff:
        try:
            s, t, c = index[e["from"]], index[e["to"]], int(e["coeff"])
        except KeyError as exc:
            raise MFCParseError(f"differential entry refers to unknown generator or field {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise MFCParseError(f"bad differential entry {e}: {exc}") from exc
        if (s, t) in seen:
            raise MFCParseError(f"duplicate differential entry {e['from']} -> {e['to']}")
        seen.add((s, t))
        if c % p == 0:
            raise MFCParseError(f"coefficient of {e['from']} -> {e['to']} vanishes mod {p}")
        d[t, s] = c % p
    return MultifilteredComplex(n, p, gens, d)


def read_mfc(path: Union[str, Path]) -> MultifilteredComplex:
    return load_mfc(Path(path).read_text(encoding="utf-8"))


def filtration_subspace(c: MultifilteredComplex, d: Downset, degree="all") -> Subspace:
    """Span of the generators whose position lies in ``d``.

    With the default ``degree="all"`` the subspace lives in the whole chain
    space; otherwise in the given degree block.
    """
    if not all(x in d.box for x in c.support):
        raise MFCError("downset box does not contain the support")
    if degree == "all":
        idx = [i for i, g in enumerate(c.generators) if g.position in d.members]
        return Subspace.coordinate(idx, len(c), c.p)
    block = c.block(degree)
    idx = [k for k, i in enumerate(block) if c.generators[i].position in d.members]
    return Subspace.coordinate(idx, len(block), c.p)
