"""E-terms, S-terms and omega-pages of a multifiltered complex.

Every term is realized as a subquotient of a degree block of the chain space:

    E^p_q     = A(p,q) / (d F_p + F_q)
    S^{pz}_bq = (A(p,z) + F_q) / (d A(b,p) + F_q)

with A(p,q) = F_p ∩ d^{-1} F_q.  Ungraded complexes are handled as a single
block on which d is an endomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .complexes import MultifilteredComplex
from .downsets import Box, Downset, DownsetQuad, extension_piece, representative_quad, step_quads
from .words import (
    EXT,
    SAT,
    InadmissibleWordError,
    Word,
    admissibility_violation,
    finite,
    is_final,
    lattice,
    reduce_mod_lattice,
    require_admissible,
    saturate as sat_letter,
    EXTEND,
    word_state,
)


def _upper(degree):
    return None if degree is None else degree + 1


def _bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


class _Calc:
    """Memoized block computations for one complex; a pure cache keyed by generator masks."""

    def __init__(self, c: MultifilteredComplex):
        self.c = c
        self.p = c.p
        self.memo: dict = {}

    def masks(self, d: Downset) -> dict:
        key = ("masks", d.members)
        hit = self.memo.get(key)
        if hit is None:
            degs = set(self.c.degrees)
            if self.c.graded:
                degs = set(range(min(degs) - 2, max(degs) + 3))
            hit = {k: self.c.mask(d, k) for k in degs}
            self.memo[key] = hit
        return hit

    def dim(self, degree) -> int:
        return len(self.c.block(degree))

    def F(self, degree, mask: int) -> la.Subspace:
        key = ("F", degree, mask)
        hit = self.memo.get(key)
        if hit is None:
            hit = la.Subspace.coordinate(_bits(mask), self.dim(degree), self.p)
            self.memo[key] = hit
        return hit

    def A(self, degree, pmask: int, zmask: int) -> la.Subspace:
        """F_p ∩ d^{-1} F_z in the given degree (z taken one degree lower)."""
        key = ("A", degree, pmask, zmask)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        bd = self.c.boundary(degree)
        n_src = bd.shape[1]
        cols = _bits(pmask)
        rows = [r for r in range(bd.shape[0]) if not (zmask >> r) & 1]
        if not cols:
            hit = la.Subspace.zero(n_src, self.p)
        elif not rows:
            hit = self.F(degree, pmask)
        else:
            sub = bd[np.ix_(rows, cols)]
            ker = la.nullspace(sub, self.p, ncols=len(cols))
            full = np.zeros((ker.shape[0], n_src), dtype=np.int64)
            full[:, cols] = ker
            hit = la.Subspace.span(full, n_src, self.p)
        self.memo[key] = hit
        return hit

    def dA(self, degree, bmask_up: int, pmask: int) -> la.Subspace:
        """d A(b, p) taken from degree+1 into ``degree``."""
        key = ("dA", degree, bmask_up, pmask)
        hit = self.memo.get(key)
        if hit is None:
            up = _upper(degree)
            hit = la.image(self.c.boundary(up), self.A(up, bmask_up, pmask))
            self.memo[key] = hit
        return hit

    def s_closed(self, degree, mb: dict, mp: dict, mq: dict, mz: dict) -> la.Subquotient:
        up, lo = _upper(degree), self.c.lower(degree)
        key = ("S", degree, mb[up], mp[up], mp[degree], mq[degree], mz[lo])
        hit = self.memo.get(key)
        if hit is None:
            fq = self.F(degree, mq[degree])
            num = self.A(degree, mp[degree], mz[lo]) + fq
            den = self.dA(degree, mb[up], mp[degree]) + fq
            hit = la.Subquotient(num, den)
            self.memo[key] = hit
        return hit

    def e(self, degree, mp: dict, mq: dict) -> la.Subquotient:
        up, lo = _upper(degree), self.c.lower(degree)
        key = ("E", degree, mp[up], mp[degree], mq[degree], mq[lo])
        hit = self.memo.get(key)
        if hit is None:
            num = self.A(degree, mp[degree], mq[lo])
            den = la.image(self.c.boundary(up), self.F(up, mp[up])) + self.F(degree, mq[degree])
            hit = la.Subquotient(num, den)
            self.memo[key] = hit
        return hit


def _calc(c: MultifilteredComplex) -> _Calc:
    calc = c._cache.get("calc")
    if calc is None:
        calc = _Calc(c)
        c._cache["calc"] = calc
    return calc


@dataclass(frozen=True, eq=False)
class ETerm:
    p: Downset
    q: Downset
    value: dict  # degree -> Subquotient

    @property
    def dims(self) -> dict:
        return {k: v.dim for k, v in self.value.items()}


@dataclass(frozen=True, eq=False)
class STerm:
    quad: DownsetQuad
    value: dict  # degree -> Subquotient

    @property
    def dims(self) -> dict:
        return {k: v.dim for k, v in self.value.items()}


@dataclass(frozen=True, eq=False)
class PageTerm:
    word: Word
    position: tuple[int, ...]  # representative actually used
    position_class: tuple[int, ...]  # HNF-reduced coset representative
    lattice: tuple[tuple[int, ...], ...]
    realization: STerm

    @property
    def dims(self) -> dict:
        return self.realization.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def report(self) -> dict:
        """Page report document (JSON-ready)."""
        return {
            "word": str(self.word),
            "position": list(self.position_class),
            "lattice": [list(r) for r in self.lattice],
            "dims": {_deg_key(k): v for k, v in sorted(self.dims.items(), key=lambda kv: _deg_sort(kv[0]))},
        }


def _deg_key(k) -> str:
    return "ungraded" if k is None else str(k)


def _deg_sort(k):
    return (0, 0) if k is None else (1, k)


def e_term(c: MultifilteredComplex, p: Downset, q: Downset) -> ETerm:
    """E^p_q = H(F_p / F_q), per degree."""
    if not q <= p:
        raise ValueError("e_term needs q <= p")
    calc = _calc(c)
    mp, mq = calc.masks(p), calc.masks(q)
    return ETerm(p, q, {k: calc.e(k, mp, mq) for k in c.degrees})


def s_term(c: MultifilteredComplex, quad: DownsetQuad, algorithm: str = "closed_form") -> STerm:
    """S^{pz}_{bq} per degree, either in closed form or as ker/im of connecting maps."""
    calc = _calc(c)
    m = [calc.masks(d) for d in quad]
    if algorithm == "closed_form":
        return STerm(quad, {k: calc.s_closed(k, *m) for k in c.degrees})
    if algorithm == "via_maps":
        return STerm(quad, {k: _s_via_maps(calc, k, *m) for k in c.degrees})
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _s_via_maps(calc: _Calc, k, mb, mp, mq, mz) -> la.Subquotient:
    c = calc.c
    up, lo = _upper(k), c.lower(k)
    e_pq = calc.e(k, mp, mq)
    e_qz = calc.e(lo, mq, mz)
    e_bp = calc.e(up, mb, mp)
    d_pqz = la.induced_map(c.boundary(k), e_pq, e_qz)
    d_bpq = la.induced_map(c.boundary(up), e_bp, e_pq)
    ker = la.nullspace(d_pqz, c.p, ncols=e_pq.dim)
    num = e_pq.lift(ker)
    den = e_pq.lift(d_bpq.T)
    return la.Subquotient(num, den)


def limit(c: MultifilteredComplex) -> dict:
    """Per-degree dims of the limit term S^{inf,-inf}_{inf,-inf} = H(C)."""
    box = c.support_box()
    full, empty = Downset.full(box), Downset.empty(box)
    return s_term(c, DownsetQuad(full, full, empty, empty)).dims


def _default_box(c: MultifilteredComplex, box: Optional[Box]) -> Box:
    return c.support_box() if box is None else box


def _check_position(w: Word, P) -> tuple[int, ...]:
    P = tuple(int(v) for v in P)
    if len(P) != w.n:
        raise ValueError(f"position {P} has length {len(P)}, expected {w.n}")
    return P


def page_quad(w: Word, P: Sequence[int], box: Box) -> DownsetQuad:
    """A quad (b, p, q, z) representing S(P; w)."""
    require_admissible(w)
    last = w.last
    st = word_state(w)
    if last is not None and last.kind == SAT:
        return step_quads(w.prefix(len(w) - 1), last.j, P, box).saturated
    y = sorted(set(range(1, w.n + 1)) - st.x)
    if not y:
        # final: the last block is j^inf e with j the last unsaturated index
        return step_quads(w.prefix(len(w) - 2), w.letters[-2].j, P, box).extended
    return representative_quad(w, y[0], P, box)


def _page_term(c, w, P, quad) -> PageTerm:
    lat = lattice(w)
    return PageTerm(w, P, reduce_mod_lattice(P, lat), lat, s_term(c, quad))


def page(c: MultifilteredComplex, w: Word, P: Sequence[int], box: Optional[Box] = None) -> PageTerm:
    """S(P; w) realized through the representative downsets of w."""
    if w.n != c.n:
        raise ValueError(f"word has n={w.n}, complex has n={c.n}")
    P = _check_position(w, P)
    box = _default_box(c, box)
    return _page_term(c, w, P, page_quad(w, P, box))


def page_positions(c: MultifilteredComplex, w: Word) -> list[tuple[int, ...]]:
    """One representative per class of Z^n / V_w that meets the support (sorted)."""
    lat = lattice(w)
    reps = {}
    for x in sorted(c.support):
        reps.setdefault(reduce_mod_lattice(x, lat), x)
    return [reps[k] for k in sorted(reps)]


@dataclass(frozen=True, eq=False)
class DifferentialPair:
    """Differentials S(P+a; w) -> S(P; w) -> S(P-a; w) in canonical quotient bases.

    ``incoming[k]`` lands in degree k of the centre, ``outgoing[k]`` leaves it.
    """

    source: PageTerm
    center: PageTerm
    target: PageTerm
    incoming: dict
    outgoing: dict
    direction: tuple[int, ...]

    def homology_dims(self) -> dict:
        p = self.center.realization.value
        out = {}
        for k, sq in p.items():
            r_out = la.rank(self.outgoing[k], sq.p) if self.outgoing[k].size else 0
            r_in = la.rank(self.incoming[k], sq.p) if self.incoming[k].size else 0
            out[k] = sq.dim - r_out - r_in
        return out

    def kernel_subspace(self, degree) -> la.Subspace:
        sq = self.center.realization.value[degree]
        ker = la.nullspace(self.outgoing[degree], sq.p, ncols=sq.dim)
        return sq.lift(ker)

    def image_subspace(self, degree) -> la.Subspace:
        sq = self.center.realization.value[degree]
        return sq.lift(self.incoming[degree].T)


def page_differential(c: MultifilteredComplex, w: Word, P: Sequence[int], j: int, box: Optional[Box] = None) -> DifferentialPair:
    require_admissible(w + finite(j))
    P = _check_position(w, P)
    box = _default_box(c, box)
    calc = _calc(c)
    a = word_state(w).a[j - 1]
    Pin = tuple(x + y for x, y in zip(P, a))
    Pout = tuple(x - y for x, y in zip(P, a))
    quads = [representative_quad(w, j, X, box) for X in (Pin, P, Pout)]
    terms = [_page_term(c, w, X, qd) for X, qd in zip((Pin, P, Pout), quads)]
    incoming, outgoing = {}, {}
    for k in c.degrees:
        up, lo = _upper(k), c.lower(k)
        center = terms[1].realization.value[k]
        # outgoing: degree k of S(P) to degree k-1 of S(P-a)
        mb, mp, mq, mz = (calc.masks(d) for d in quads[1])
        dst = _s_at(c, calc, quads[2], lo)
        outgoing[k] = la.induced_map(c.boundary(k), center, dst, lift=calc.A(k, mp[k], mz[lo]))
        # incoming: degree k+1 of S(P+a) to degree k of S(P)
        sb, sp, sq_, sz = (calc.masks(d) for d in quads[0])
        src = _s_at(c, calc, quads[0], up)
        incoming[k] = la.induced_map(c.boundary(up), src, center, lift=calc.A(up, sp[up], sz[k]))
    return DifferentialPair(terms[0], terms[1], terms[2], incoming, outgoing, a)


def _s_at(c, calc: _Calc, quad: DownsetQuad, degree) -> la.Subquotient:
    return calc.s_closed(degree, *(calc.masks(d) for d in quad))


def saturate(c: MultifilteredComplex, w: Word, P: Sequence[int], j: int, box: Optional[Box] = None) -> PageTerm:
    """S(P; w*j^inf) through the stabilized saturated quad."""
    ws = w + sat_letter(j)
    require_admissible(ws)
    P = _check_position(w, P)
    box = _default_box(c, box)
    return _page_term(c, ws, P, step_quads(w, j, P, box).saturated)


@dataclass(frozen=True)
class ExtensionReport:
    """Z-filtration of S(P; w*j^inf e) and its graded pieces, per degree.

    ``indices`` lists the i where F_i can change (plus the one just below
    the first); F_i is constant between consecutive indices, zero below and
    everything from the last one on.  Graded pieces vanish off ``indices``.
    """

    word: Word
    position: tuple[int, ...]
    j: int
    indices: tuple[int, ...]
    filtration: dict
    graded: dict
    total: dict

    def is_consistent(self) -> bool:
        prev = {k: 0 for k in self.total}
        for i in self.indices:
            for k in self.total:
                if self.filtration[i][k] - prev[k] != self.graded[i][k]:
                    return False
            prev = self.filtration[i]
        return prev == self.total

    def to_document(self) -> dict:
        def dd(x):
            return {_deg_key(k): v for k, v in sorted(x.items(), key=lambda kv: _deg_sort(kv[0]))}

        return {
            "word": str(self.word),
            "position": list(self.position),
            "j": self.j,
            "filtration": [{"i": i, "dims": dd(self.filtration[i])} for i in self.indices],
            "graded": [{"i": i, "dims": dd(self.graded[i])} for i in self.indices],
            "total": dd(self.total),
        }


def extension_filtration(c: MultifilteredComplex, w: Word, P: Sequence[int], j: int, box: Optional[Box] = None) -> ExtensionReport:
    we = w + sat_letter(j) + EXTEND
    require_admissible(we)
    P = _check_position(w, P)
    box = _default_box(c, box)
    sq = step_quads(w, j, P, box)
    ext = sq.extended
    total = s_term(c, ext)
    delta = word_state(w).delta[j - 1]
    indices = (sq.breaks[0] - 1,) + sq.breaks if sq.breaks else ()
    calc = _calc(c)
    ident = {k: np.eye(len(c.block(k)), dtype=np.int64) for k in c.degrees}
    filt, graded = {}, {}
    for i in indices:
        pi = extension_piece(w, j, P, i, box)
        piece = s_term(c, DownsetQuad(ext.b, pi, ext.q, ext.z))
        filt[i] = {k: _image_dim(calc, ident[k], piece.value[k], total.value[k]) for k in c.degrees}
        Pi = tuple(x + i * d for x, d in zip(P, delta))
        graded[i] = saturate(c, w, Pi, j, box).dims
    return ExtensionReport(we, P, j, indices, filt, graded, total.dims)


def _image_dim(calc: _Calc, f, src: la.Subquotient, dst: la.Subquotient) -> int:
    key = ("imdim", src, dst)
    hit = calc.memo.get(key)
    if hit is None:
        m = la.induced_map(f, src, dst)
        hit = la.rank(m, calc.p) if m.size else 0
        calc.memo[key] = hit
    return hit


def inclusion_map(c: MultifilteredComplex, src: STerm, dst: STerm) -> dict:
    """Per-degree matrices of the map induced by inclusion between two S-terms."""
    out = {}
    for k in c.degrees:
        ident = np.eye(len(c.block(k)), dtype=np.int64)
        out[k] = la.induced_map(ident, src.value[k], dst.value[k])
    return out
