"""Verification suites: word lemmas, the page theorem on random complexes,
the classical n = 1 comparison, the two S-term algorithms, the short exact
sequence of inclusions, and the planner round trip.

Every suite returns a list of OracleReport; ``passed`` is exact equality.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Iterable, Optional

import numpy as np

from . import engine as E
from . import linalg as la
from .complexes import MultifilteredComplex
from .downsets import Box, Downset, DownsetQuad, comp0, is_connected, lex_downset, step_quads
from .oracle import OracleReport, classical_ss, homology_total, random_complex
from .planner import continued_fraction, fibonacci, fibonacci_check, normal_vector, plan_word, tau_from_cf
from .words import (
    EXTEND,
    FIN,
    SAT,
    Word,
    admissible_words,
    differential_data,
    finite,
    is_admissible,
    is_final,
    next_letters,
    parse_word,
    pure_words,
    saturate,
    t_matrix,
    u_vec,
    b_region,
)


def _mat(t, x):
    return tuple(int(sum(r[k] * x[k] for k in range(len(x)))) for r in t)


def _report(check, instance, expected, actual):
    return OracleReport(check, instance, expected, actual, expected == actual)


# --- word calculus ---------------------------------------------------------


def word_lemmas(w: Word) -> dict[str, bool]:
    """Path, symmetry, neighbourhood, connectivity and both lex-downset equations for w in [n]^*."""
    n = w.n
    t = t_matrix(w)
    u = tuple(int(v) for v in u_vec(w))
    B = b_region(w)
    TB = {_mat(t, x) for x in B}
    out = {}

    pts = sorted(TB, key=sum)
    path = (
        len(pts) == sum(u) + 1
        and pts[0] == (0,) * n
        and pts[-1] == u
        and all(sum(abs(a - b) for a, b in zip(x, y)) == 1 and all(a <= b for a, b in zip(x, y)) for x, y in zip(pts, pts[1:]))
        and all(0 <= a <= b for x in pts for a, b in zip(x, u))
    )
    out["path"] = path
    out["symmetry"] = {tuple(a - b for a, b in zip(u, x)) for x in TB} == TB

    cols = [_mat(t, tuple(1 if k == i else 0 for k in range(n))) for i in range(n)]
    nb = True
    for x in TB:
        for c in cols:
            lo = tuple(a - b for a, b in zip(x, c))
            hi = tuple(a + b for a, b in zip(x, c))
            if not (lo in TB or all(v <= 0 for v in lo)):
                nb = False
            if not (hi in TB or all(a >= b for a, b in zip(hi, u))):
                nb = False
    out["neighborhood"] = nb
    out["connectivity"] = is_connected(B)

    dd = differential_data(w)
    lex1 = lex2 = True
    for j in range(1, n + 1):
        a = dd.a[j - 1]
        Bj = b_region(w + finite(j))
        box = Box.bounding(list(B) + list(Bj) + [a, tuple(-v for v in a)], pad=1)
        others = [c for c in range(n) if c != j - 1]
        for perm in itertools.permutations(range(n - 1)):
            sigma = [0] * n
            for c, s in zip(others, perm):
                sigma[c] = s
            sigma[j - 1] = n - 1
            inner = lex_downset((0,) * n, t, sigma, box, strict=True).members
            outer_strict = lex_downset(a, t, sigma, box, strict=True).members
            outer = lex_downset(a, t, sigma, box, strict=False).members
            if comp0(outer_strict - inner) != B:
                lex1 = False
            if comp0(outer - inner) != Bj:
                lex2 = False
    out["lex_downset_1"] = lex1
    out["lex_downset_2"] = lex2
    return out


def word_lemma_suite(n: int, max_len: int) -> list[OracleReport]:
    fails = {k: [] for k in ("path", "symmetry", "neighborhood", "connectivity", "lex_downset_1", "lex_downset_2")}
    words = pure_words(n, max_len)
    for w in words:
        for k, ok in word_lemmas(w).items():
            if not ok:
                fails[k].append(str(w) or "ε")
    label = f"[{n}]^<={max_len}, {len(words)} words"
    return [_report(f"word.{k}", label, [], v[:5]) for k, v in fails.items()]


def worked_values_suite() -> list[OracleReport]:
    out = []
    for N, j1, omega, trace in (((3, 5), 1, "12121^e2^e", (2, 1, 2, 1)), ((3, 5), 2, "12112^e1^e", (1, 1, 2, 1))):
        p = plan_word(N, j1)
        out.append(_report("worked.plan_word", f"N={list(N)} j1={j1}", (omega, trace), (str(p.omega), p.trace)))
    for k in range(1, 11):
        exp = [[fibonacci(2 * k - 1), fibonacci(2 * k)], [fibonacci(2 * k), fibonacci(2 * k + 1)]]
        out.append(_report("worked.fibonacci", f"k={k}", exp, fibonacci_check(k).tolist()))
    w = parse_word("123122^e133313^e111^e", 3)
    out.append(_report("worked.final_word_n3", str(w), (True, True), (is_admissible(w), is_final(w))))
    return out


def planner_suite(limit: int = 20) -> list[OracleReport]:
    rt_fail, cf_fail, count = [], [], 0
    for x in range(limit + 1):
        for y in range(limit + 1):
            if gcd(x, y) != 1:
                continue
            for j1 in (1, 2):
                if (x, y) == ((1, 0) if j1 == 1 else (0, 1)):
                    continue
                count += 1
                p = plan_word((x, y), j1)
                if normal_vector(p.omega) != (x, y):
                    rt_fail.append((x, y, j1))
                if x != 0:
                    reps = [r for r in continued_fraction((x, y)) if r is not None]
                    taus = [tau_from_cf(r) for r in reps]
                    if p.tau not in taus or tau_from_cf(p.cf) != p.tau:
                        cf_fail.append((x, y, j1))
    label = f"primitive N in [0,{limit}]^2, {count} queries"
    return [
        _report("planner.round_trip", label, [], rt_fail[:5]),
        _report("planner.cf_agreement", label, [], cf_fail[:5]),
    ]


# --- the page theorem ------------------------------------------------------


def _principal(P, box: Box) -> tuple[Downset, Downset]:
    p = Downset.from_predicate(box, lambda x: all(a <= b for a, b in zip(x, P)))
    q = Downset.from_predicate(box, lambda x: all(a <= b for a, b in zip(x, P)) and tuple(x) != tuple(P))
    return p, q


def _le(a: dict, b: dict) -> bool:
    return all(a[k] <= b[k] for k in a)


def theorem_checks(c: MultifilteredComplex, max_len: int = 4, k_max: int = 8) -> dict[str, list]:
    """Failures per part of the page theorem over all admissible words of length <= max_len."""
    box = c.support_box()
    H = homology_total(c)
    fails = {k: [] for k in ("a", "b", "c", "d", "e")}
    counts = dict.fromkeys(fails, 0)

    for P in sorted(box.points()):
        counts["a"] += 1
        S = E.page(c, Word.empty(c.n), P, box)
        p, q = _principal(P, box)
        Et = E.e_term(c, p, q)
        for k in c.degrees:
            m = la.induced_map(np.eye(len(c.block(k)), dtype=np.int64), Et.value[k], S.realization.value[k])
            ok = m.shape[0] == m.shape[1] and (m.size == 0 or la.rank(m, c.p) == m.shape[0])
            if not ok:
                fails["a"].append((P, k))

    for w in admissible_words(c.n, max_len):
        positions = E.page_positions(c, w)
        if is_final(w):
            for P in positions:
                counts["b"] += 1
                if E.page(c, w, P, box).dims != H:
                    fails["b"].append((str(w), P))
            continue
        if w.last is not None and w.last.kind == SAT:
            continue
        for L in next_letters(w):
            if L.kind == FIN:
                nw = w + L
                for P in positions:
                    counts["c"] += 1
                    dp = E.page_differential(c, w, P, L.j, box)
                    nq = step_quads(w, L.j, P, box).next
                    nxt = E.s_term(c, nq)
                    if dp.homology_dims() != E.page(c, nw, P, box).dims or dp.homology_dims() != nxt.dims:
                        fails["c"].append((str(w), L.j, P, "dims"))
                        continue
                    for k in c.degrees:
                        comp = (dp.outgoing[k] @ dp.incoming[k]) % c.p if dp.incoming[k].size and dp.outgoing[k].size else None
                        if comp is not None and np.any(comp):
                            fails["c"].append((str(w), L.j, P, "dd", k))
                        if dp.kernel_subspace(k) != nxt.value[k].numerator:
                            fails["c"].append((str(w), L.j, P, "kernel", k))
                        if dp.image_subspace(k) != nxt.value[k].denominator:
                            fails["c"].append((str(w), L.j, P, "image", k))
            elif L.kind == SAT:
                ws = w + L
                for P in positions:
                    counts["d"] += 1
                    sat = E.saturate(c, w, P, L.j, box).dims
                    finite_dims = [E.page(c, w + Word((finite(L.j),) * k, c.n), P, box).dims for k in range(k_max + 1)]
                    if not all(_le(sat, f) for f in finite_dims) or finite_dims[-1] != sat or finite_dims[-2] != sat:
                        fails["d"].append((str(ws), P))
                    if E.page(c, ws, P, box).dims != sat:
                        fails["d"].append((str(ws), P, "page"))
                    we = ws + EXTEND
                    if not is_admissible(we):
                        continue
                    counts["e"] += 1
                    rep = E.extension_filtration(c, w, P, L.j, box)
                    graded_sum = {k: sum(g[k] for g in rep.graded.values()) for k in c.degrees}
                    if not rep.is_consistent() or graded_sum != rep.total or rep.total != E.page(c, we, P, box).dims:
                        fails["e"].append((str(we), P))
    return {"fails": fails, "counts": counts}


def theorem_suite(c: MultifilteredComplex, label: str, max_len: int = 4) -> list[OracleReport]:
    res = theorem_checks(c, max_len)
    return [
        OracleReport(f"theorem.{k}", f"{label} ({res['counts'][k]} checks)", [], v[:3], not v)
        for k, v in res["fails"].items()
    ]


def classical_suite(c: MultifilteredComplex, label: str) -> list[OracleReport]:
    """Pages 1^{r-1}, 1^{r-1}1^inf and 1^{r-1}1^inf e against the textbook construction."""
    cl = classical_ss(c)
    lo, hi = cl["range"]
    H = homology_total(c)
    fails = []
    for r in range(1, cl["stable_from"] + 2):
        w = Word((finite(1),) * (r - 1), 1)
        ws = w + saturate(1)
        for P in range(lo, hi + 1):
            if E.page(c, w, (P,)).dims != cl["pages"][r][P]:
                fails.append((str(w), P))
            if E.page(c, ws, (P,)).dims != cl["infinity"][P]:
                fails.append((str(ws), P))
        if E.page(c, ws + EXTEND, (0,)).dims != H:
            fails.append((str(ws + EXTEND), 0))
    if E.limit(c) != H:
        fails.append(("limit",))
    return [OracleReport("classical", f"{label} (r<={cl['stable_from'] + 1})", [], fails[:3], not fails)]


# --- random quads ----------------------------------------------------------


def random_downset(rng: np.random.Generator, box: Box, density: float = 0.3) -> Downset:
    pts = [x for x in box.points() if rng.random() < density]
    return Downset.closure(box, pts)


def random_chain(rng: np.random.Generator, box: Box, length: int) -> list[Downset]:
    """An increasing chain d_1 <= ... <= d_length of random downsets."""
    acc = random_downset(rng, box, 0.15)
    out = [acc]
    for _ in range(length - 1):
        acc = acc | random_downset(rng, box, 0.15)
        out.append(acc)
    return out


def dual_algorithm_suite(c: MultifilteredComplex, rng: np.random.Generator, count: int, label: str) -> list[OracleReport]:
    box = c.support_box()
    fails = []
    for t in range(count):
        z, q, p, b = random_chain(rng, box, 4)
        quad = DownsetQuad(b, p, q, z)
        s1 = E.s_term(c, quad, "closed_form")
        s2 = E.s_term(c, quad, "via_maps")
        if any(s1.value[k] != s2.value[k] for k in c.degrees):
            fails.append(t)
    return [OracleReport("dual_sterm", f"{label} ({count} quads)", [], fails[:3], not fails)]


def ses_suite(c: MultifilteredComplex, rng: np.random.Generator, count: int, label: str) -> list[OracleReport]:
    """0 -> S^{p2 z}_{b p1} -> S^{p3 z}_{b p1} -> S^{p3 z}_{b p2} -> 0 via inclusions."""
    box = c.support_box()
    fails = []
    for t in range(count):
        z, p1, p2, p3, b = random_chain(rng, box, 5)
        left = E.s_term(c, DownsetQuad(b, p2, p1, z))
        mid = E.s_term(c, DownsetQuad(b, p3, p1, z))
        right = E.s_term(c, DownsetQuad(b, p3, p2, z))
        f = E.inclusion_map(c, left, mid)
        g = E.inclusion_map(c, mid, right)
        for k in c.degrees:
            dl, dm, dr = left.value[k].dim, mid.value[k].dim, right.value[k].dim
            rf = la.rank(f[k], c.p) if f[k].size else 0
            rg = la.rank(g[k], c.p) if g[k].size else 0
            gf = (g[k] @ f[k]) % c.p if f[k].size and g[k].size else np.zeros((0, 0))
            if dm != dl + dr or rf != dl or rg != dr or np.any(gf):
                fails.append((t, k))
    return [OracleReport("ses", f"{label} ({count} chains)", [], fails[:3], not fails)]


# --- driver ----------------------------------------------------------------


def deterministic_suites() -> list[OracleReport]:
    return word_lemma_suite(2, 7) + word_lemma_suite(3, 5) + worked_values_suite() + planner_suite(20)


def random_suites(seed: int, trials: int, prime: Optional[int] = None) -> list[OracleReport]:
    out = []
    for t in range(trials):
        s = seed + t
        p = prime if prime is not None else (2, 5)[t % 2]
        c2 = random_complex(s, 2, ((0, 0), (3, 3)), 2, p)
        label = f"seed={s} p={p} n=2"
        out += theorem_suite(c2, label)
        rng = np.random.default_rng(s)
        out += dual_algorithm_suite(c2, rng, 5, label)
        out += ses_suite(c2, rng, 2, label)
        c1 = random_complex(s, 1, ((0,), (5,)), 2, p)
        out += classical_suite(c1, f"seed={s} p={p} n=1")
    return out


def run(seed: int = 0, trials: int = 1, prime: Optional[int] = None) -> list[OracleReport]:
    return deterministic_suites() + random_suites(seed, trials, prime)
