"""Brute-force reference computations used only for cross-checking.

Nothing here touches the subquotient or downset machinery: ranks and kernels
are computed with plain Python lists, and the classical spectral sequence is
the textbook Z^r / B^r construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complexes import Generator, MultifilteredComplex


@dataclass(frozen=True)
class OracleReport:
    check: str
    instance: str
    expected: object
    actual: object
    passed: bool

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.check} [{self.instance}] expected={self.expected} actual={self.actual}"


def _rank(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _kernel(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0} as lists of length ncols."""
    m = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = [0] * ncols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-m[i][f]) % p
        out.append(x)
    return out


def _blocks(c: MultifilteredComplex):
    """(degree, source indices, target indices) for every degree of the complex."""
    gens = c.generators
    if not c.graded:
        idx = list(range(len(gens)))
        return [(None, idx, idx, idx)]
    degs = sorted({g.degree for g in gens})
    out = []
    for k in degs:
        src = [i for i, g in enumerate(gens) if g.degree == k]
        tgt = [i for i, g in enumerate(gens) if g.degree == k - 1]
        up = [i for i, g in enumerate(gens) if g.degree == k + 1]
        out.append((k, src, tgt, up))
    return out


def homology_total(c: MultifilteredComplex) -> dict:
    """dim ker d_k - rank d_{k+1} per degree."""
    d = c.d.tolist()
    p = c.p
    out = {}
    for k, src, tgt, up in _blocks(c):
        rk_out = _rank([[d[t][s] for s in src] for t in tgt], p) if src and tgt else 0
        rk_in = _rank([[d[t][s] for s in up] for t in src], p) if src and up else 0
        out[k] = len(src) - rk_out - rk_in
    return out


def classical_ss(c: MultifilteredComplex, max_r: Optional[int] = None) -> dict:
    """Columns of the classical spectral sequence of a singly filtered complex.

    Returns {"pages": {r: {P: {degree: dim}}}, "infinity": {P: {degree: dim}},
    "stable_from": r} where pages are listed for r = 1..max_r and E^r at
    r >= stable_from equals E^infinity.
    """
    if c.n != 1:
        raise ValueError("classical_ss needs a singly filtered complex")
    gens = c.generators
    d = c.d.tolist()
    p = c.p
    if gens:
        pos = [g.position[0] for g in gens]
        lo, hi = min(pos) - 1, max(pos) + 1
    else:
        lo, hi = 0, 0
    width = hi - lo + 2
    if max_r is None:
        max_r = width + 1

    def in_f(i, level):
        return gens[i].position[0] <= level

    def z(src, tgt, level, r):
        """Basis (in src coords) of {x in F_level : dx in F_{level-r}}; r=None means dx = 0."""
        cols = [i for i in src if in_f(i, level)]
        rows = [t for t in tgt if r is None or not in_f(t, level - r)]
        if not cols:
            return []
        if rows:
            ker = _kernel([[d[t][s] for s in cols] for t in rows], len(cols), p)
        else:
            ker = [[1 if a == b else 0 for b in range(len(cols))] for a in range(len(cols))]
        out = []
        for v in ker:
            full = dict.fromkeys(src, 0)
            for s, val in zip(cols, v):
                full[s] = val
            out.append([full[s] for s in src])
        return out

    def boundary_of(vectors, src, tgt):
        return [[sum(d[t][s] * v[k] for k, s in enumerate(src)) % p for t in tgt] for v in vectors]

    def e_dim(level, r, src, tgt, up):
        if not src:
            return 0
        zr = z(src, tgt, level, r)
        zprev = z(src, tgt, level - 1, r - 1)
        dz = boundary_of(z(up, src, level + r - 1, r - 1), up, src) if up else []
        return _rank(zr, p) - _rank(zprev + dz, p)

    def boundaries_in(src, up, level):
        """Basis of F_level ∩ im(d) in src coords."""
        bnd = [[d[t][s] for t in src] for s in up]
        bnd = [v for v in bnd if any(v)]
        if not bnd:
            return []
        outside = [k for k, s in enumerate(src) if not in_f(s, level)]
        if not outside:
            return bnd
        coeffs = _kernel([[v[k] for v in bnd] for k in outside], len(bnd), p)
        return [
            [sum(cf[i] * bnd[i][k] for i in range(len(bnd))) % p for k in range(len(src))]
            for cf in coeffs
        ]

    def e_inf(level, src, tgt, up):
        if not src:
            return 0
        cyc = z(src, tgt, level, None)
        cyc_prev = z(src, tgt, level - 1, None)
        return _rank(cyc, p) - _rank(cyc_prev + boundaries_in(src, up, level), p)

    blocks = _blocks(c)
    pages = {}
    for r in range(1, max_r + 1):
        pages[r] = {
            P: {k: e_dim(P, r, src, tgt, up) for k, src, tgt, up in blocks}
            for P in range(lo, hi + 1)
        }
    inf = {P: {k: e_inf(P, src, tgt, up) for k, src, tgt, up in blocks} for P in range(lo, hi + 1)}
    stable = max_r
    for r in range(max_r, 0, -1):
        if pages[r] == inf:
            stable = r
        else:
            break
    return {"pages": pages, "infinity": inf, "stable_from": stable, "range": (lo, hi)}


def random_complex(
    seed: int,
    n: int,
    box: tuple[tuple[int, ...], tuple[int, ...]],
    max_per_cell: int,
    prime: int,
    degrees: tuple[int, int] = (0, 3),
    pair_prob: float = 0.6,
) -> MultifilteredComplex:
    """Random multigraded complex with d^2 = 0 by construction.

    Start from a sum of elementary pieces x -> y (y at a position <= x, one
    degree lower) and conjugate by a random unipotent, filtration- and
    degree-preserving change of basis.
    """
    rng = np.random.default_rng(seed)
    lo, hi = box
    cells = list(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))
    gens: list[Generator] = []
    for pos in cells:
        for k in range(degrees[0], degrees[1] + 1):
            for m in range(int(rng.integers(0, max_per_cell + 1))):
                gens.append(Generator(f"g{len(gens)}", tuple(int(v) for v in pos), k))
    N = len(gens)
    d0 = np.zeros((N, N), dtype=np.int64)
    free = set(range(N))
    for s in rng.permutation(N):
        s = int(s)
        if s not in free or rng.random() > pair_prob:
            continue
        gs = gens[s]
        cands = [
            t for t in sorted(free)
            if t != s and gens[t].degree == gs.degree - 1
            and all(a <= b for a, b in zip(gens[t].position, gs.position))
        ]
        if not cands:
            continue
        t = cands[int(rng.integers(0, len(cands)))]
        d0[t, s] = int(rng.integers(1, prime))
        free -= {s, t}
    g = np.eye(N, dtype=np.int64)
    for a in range(N):
        for b in range(N):
            if a != b and gens[a].degree == gens[b].degree and all(
                x <= y for x, y in zip(gens[a].position, gens[b].position)
            ) and (gens[a].position != gens[b].position or a < b):
                if rng.random() < 0.5:
                    g[a, b] = int(rng.integers(0, prime))
    # g is unipotent w.r.t. a total order refining positions, so it is invertible
    ginv = _inverse_mod(g, prime)
    d = (g @ d0 % prime) @ ginv % prime
    return MultifilteredComplex(n, prime, gens, d)


def _inverse_mod(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    a = [[int(v) % p for v in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], p - 2, p)
        a[c] = [(v * inv) % p for v in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return np.array([row[n:] for row in a], dtype=np.int64).reshape(n, n)
