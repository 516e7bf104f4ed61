"""Exact linear algebra over a prime field F_p on dense numpy int64 arrays.

Vectors are rows.  A linear map F^m -> F^k is a (k, m) matrix acting on
column vectors, so the image of a row vector v is ``v @ f.T``.
Subspaces are kept in reduced row echelon form, which makes equality of
subspaces equality of representations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np


class DimensionMismatch(ValueError):
    pass


class IllDefinedMapError(ArithmeticError):
    """A map does not descend to the requested subquotients."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def rref(mat, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form mod p, zero rows dropped, and the pivot columns."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d array")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = a[r:, c].nonzero()[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * pow(piv, -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = col.nonzero()[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def nullspace(mat, p: int, ncols: Optional[int] = None) -> np.ndarray:
    """Rows spanning {x : mat @ x = 0}."""
    m = np.asarray(mat, dtype=np.int64)
    if m.size == 0:
        n = m.shape[1] if m.ndim == 2 else (ncols or 0)
        return np.eye(n, dtype=np.int64)
    r, piv = rref(m, p)
    n = m.shape[1]
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-r[i, f]) % p
    return out


def rank(mat, p: int) -> int:
    m = np.asarray(mat, dtype=np.int64)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    dim_ambient: int
    p: int
    basis: np.ndarray = field(repr=False)
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors, dim_ambient: int, p: int) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, dim_ambient) if dim_ambient else np.zeros((0, 0), np.int64)
        if v.shape[0] == 0 or dim_ambient == 0:
            return cls(dim_ambient, p, np.zeros((0, dim_ambient), np.int64), ())
        r, piv = rref(v, p)
        r.setflags(write=False)
        return cls(dim_ambient, p, r, piv)

    @classmethod
    def zero(cls, dim_ambient: int, p: int) -> "Subspace":
        return cls(dim_ambient, p, np.zeros((0, dim_ambient), np.int64), ())

    @classmethod
    def full(cls, dim_ambient: int, p: int) -> "Subspace":
        return cls(dim_ambient, p, np.eye(dim_ambient, dtype=np.int64), tuple(range(dim_ambient)))

    @classmethod
    def coordinate(cls, indices: Sequence[int], dim_ambient: int, p: int) -> "Subspace":
        idx = sorted(set(int(i) for i in indices))
        b = np.zeros((len(idx), dim_ambient), dtype=np.int64)
        b[np.arange(len(idx)), idx] = 1
        return cls(dim_ambient, p, b, tuple(idx))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _check(self, other: "Subspace"):
        if self.dim_ambient != other.dim_ambient or self.p != other.p:
            raise DimensionMismatch(
                f"ambient F_{self.p}^{self.dim_ambient} vs F_{other.p}^{other.dim_ambient}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.dim_ambient == other.dim_ambient
            and self.p == other.p
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.dim_ambient, self.p, self.pivots, self.basis.tobytes()))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return _sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim == 0:
            return True
        if not set(self.pivots) <= set(other.pivots):
            return False
        return other.contains_rows(self.basis)

    def reduce(self, vectors) -> np.ndarray:
        """Remainders of ``vectors`` after clearing this subspace's pivot columns."""
        v = _as_rows(vectors, self.dim_ambient) % self.p
        if self.dim == 0:
            return v
        coeff = v[:, list(self.pivots)]
        return (v - coeff @ self.basis) % self.p

    def contains_rows(self, vectors) -> bool:
        return not np.any(self.reduce(vectors))

    @cached_property
    def annihilator(self) -> np.ndarray:
        """Rows k with basis @ k = 0, i.e. the equations cutting out this subspace."""
        if self.dim == 0:
            return np.eye(self.dim_ambient, dtype=np.int64)
        return nullspace(self.basis, self.p)


def _as_rows(vectors, width: int) -> np.ndarray:
    v = np.asarray(vectors, dtype=np.int64)
    if v.ndim == 2 and v.shape[1] == width:
        return v
    if width == 0:
        return np.zeros((v.shape[0] if v.ndim == 2 else 0, 0), dtype=np.int64)
    return v.reshape(-1, width)


def span(vectors, dim_ambient: int, p: int) -> Subspace:
    return Subspace.span(vectors, dim_ambient, p)


@lru_cache(maxsize=1 << 15)
def _sum(a: Subspace, b: Subspace) -> Subspace:
    if b.dim == b.dim_ambient or a.contains_rows(b.basis):
        return b if b.dim == b.dim_ambient else a
    if b.contains_rows(a.basis):
        return b
    return Subspace.span(np.vstack([a.basis, b.basis]), a.dim_ambient, a.p)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return _intersect(a, b)


@lru_cache(maxsize=1 << 15)
def _intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.dim_ambient, a.p)
    if b.dim == b.dim_ambient:
        return a
    if a.dim == a.dim_ambient:
        return b
    # x @ a.basis lies in b iff (x @ a.basis) @ ann(b).T == 0
    cons = (b.annihilator @ a.basis.T) % a.p
    x = nullspace(cons, a.p)
    if x.shape[0] == 0:
        return Subspace.zero(a.dim_ambient, a.p)
    return Subspace.span((x @ a.basis) % a.p, a.dim_ambient, a.p)


def image(f, s: Subspace) -> Subspace:
    f = np.asarray(f, dtype=np.int64)
    if f.shape[1] != s.dim_ambient:
        raise DimensionMismatch(f"map has {f.shape[1]} columns, subspace lives in {s.dim_ambient}")
    if s.dim == 0 or f.shape[0] == 0:
        return Subspace.zero(f.shape[0], s.p)
    return Subspace.span((s.basis @ f.T) % s.p, f.shape[0], s.p)


def preimage(f, s: Subspace) -> Subspace:
    """{v : f v in s}."""
    f = np.asarray(f, dtype=np.int64)
    if f.shape[0] != s.dim_ambient:
        raise DimensionMismatch(f"map has {f.shape[0]} rows, subspace lives in {s.dim_ambient}")
    m = f.shape[1]
    if s.dim == s.dim_ambient or f.shape[0] == 0:
        return Subspace.full(m, s.p)
    cons = (s.annihilator @ f) % s.p
    ker = nullspace(cons, s.p, ncols=m)
    return Subspace.span(ker, m, s.p)


def kernel(f, p: int) -> Subspace:
    f = np.asarray(f, dtype=np.int64)
    return Subspace.span(nullspace(f, p, ncols=f.shape[1]), f.shape[1], p)


def solve_rows(basis: np.ndarray, targets: np.ndarray, p: int) -> np.ndarray:
    """X with X @ basis = targets (basis rows independent); raises if no solution."""
    basis = np.asarray(basis, dtype=np.int64)
    targets = _as_rows(targets, basis.shape[1])
    k = basis.shape[0]
    if targets.shape[0] == 0:
        return np.zeros((0, k), dtype=np.int64)
    if k == 0:
        if np.any(targets % p):
            raise IllDefinedMapError("vector not in the span")
        return np.zeros((targets.shape[0], 0), dtype=np.int64)
    aug = np.hstack([basis.T, targets.T])
    r, piv = rref(aug, p)
    if len(piv) != k or piv != tuple(range(k)) or (r.shape[0] > k and np.any(r[k:])):
        raise IllDefinedMapError("vector not in the span")
    return r[:k, k:].T.copy()


@dataclass(frozen=True, eq=False)
class Subquotient:
    numerator: Subspace
    denominator: Subspace

    def __post_init__(self):
        if not self.denominator <= self.numerator:
            raise ValueError("denominator is not contained in the numerator")

    @property
    def dim(self) -> int:
        return self.numerator.dim - self.denominator.dim

    @property
    def p(self) -> int:
        return self.numerator.p

    @property
    def dim_ambient(self) -> int:
        return self.numerator.dim_ambient

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subquotient):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    @cached_property
    def quotient_basis(self) -> np.ndarray:
        """Numerator RREF rows whose pivot is not a denominator pivot."""
        den = set(self.denominator.pivots)
        keep = [i for i, c in enumerate(self.numerator.pivots) if c not in den]
        return self.numerator.basis[keep]

    @cached_property
    def _quotient_pivots(self) -> list[int]:
        den = set(self.denominator.pivots)
        return [c for c in self.numerator.pivots if c not in den]

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates of numerator vectors in the quotient basis (one row per vector)."""
        v = self.denominator.reduce(vectors)
        coords = v[:, self._quotient_pivots]
        rest = (v - coords @ self.quotient_basis) % self.p
        if np.any(rest):
            raise IllDefinedMapError("vector does not lie in the numerator")
        return coords

    def lift(self, coords) -> Subspace:
        """Numerator subspace of the classes with the given coordinate rows (plus the denominator)."""
        c = _as_rows(coords, self.dim)
        vecs = (c @ self.quotient_basis) % self.p if c.shape[0] else np.zeros((0, self.dim_ambient), np.int64)
        return Subspace.span(vecs, self.dim_ambient, self.p) + self.denominator


def quotient_basis(sq: Subquotient) -> np.ndarray:
    return sq.quotient_basis


def induced_map(f, src: Subquotient, dst: Subquotient, lift: Optional[Subspace] = None) -> np.ndarray:
    """Matrix (dst.dim x src.dim) of the map induced by ``f`` in canonical quotient bases.

    With ``lift`` given, ``f`` is only required to be defined on the classes
    through representatives in ``lift`` (which must satisfy lift + den = num).
    """
    f = np.asarray(f, dtype=np.int64)
    p = src.p
    if f.shape != (dst.dim_ambient, src.dim_ambient):
        raise DimensionMismatch(f"map shape {f.shape} vs {(dst.dim_ambient, src.dim_ambient)}")
    q = src.quotient_basis
    den = src.denominator
    if lift is None:
        reps = q
        killed = den
    else:
        if not (lift + den) == src.numerator:
            raise IllDefinedMapError("lift subspace does not cover the numerator")
        both = np.vstack([lift.basis, den.basis])
        if both.shape[0] and q.shape[0]:
            x = _solve_any(both, q, p)
            reps = (x[:, : lift.dim] @ lift.basis) % p
        else:
            reps = q
        killed = intersect(lift, den)
    if killed.dim:
        img = (killed.basis @ f.T) % p
        if not dst.denominator.contains_rows(img):
            raise IllDefinedMapError("map does not send the source denominator into the target denominator")
    if src.dim == 0:
        return np.zeros((dst.dim, 0), dtype=np.int64)
    img = (reps @ f.T) % p
    try:
        coords = dst.coordinates(img)
    except IllDefinedMapError as exc:
        raise IllDefinedMapError("map does not send the source numerator into the target numerator") from exc
    return coords.T.copy()


def _solve_any(rows: np.ndarray, targets: np.ndarray, p: int) -> np.ndarray:
    """Some X with X @ rows = targets, rows possibly dependent."""
    aug = np.hstack([rows.T, targets.T]) % p
    r, piv = rref(aug, p)
    k = rows.shape[0]
    if any(c >= k for c in piv):
        raise IllDefinedMapError("vector not in the span")
    x = np.zeros((targets.shape[0], k), dtype=np.int64)
    for i, c in enumerate(piv):
        x[:, c] = r[i, k:]
    return x


def matrix_rank(m: np.ndarray, p: int) -> int:
    return rank(m, p)


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
