import itertools

import pytest
from hypothesis import given, settings, strategies as st

from higherss.downsets import (
    Box,
    BoxError,
    Downset,
    comp0,
    extension_breaks,
    lex_downset,
    limit_region,
    quad_regions,
    representative_quad,
    step_quads,
    sweep,
)
from higherss.words import Word, admissible_words, finite, is_final, next_letters, parse_word, SAT


def below(box, bound):
    return Downset.from_predicate(box, lambda x: x[0] <= bound)


def test_lex_n1():
    box = Box((-3,), (3,))
    assert lex_downset((0,), [[1]], (0,), box) == below(box, 0)


def test_lex_n2_and_strict():
    box = Box((-2, -2), (2, 2))
    d = lex_downset((0, 0), [[1, 0], [0, 1]], (0, 1), box)
    expect = {x for x in box.points() if x[0] < 0 or (x[0] == 0 and x[1] <= 0)}
    assert d.members == expect
    s = lex_downset((0, 0), [[1, 0], [0, 1]], (0, 1), box, strict=True)
    assert s.members == expect - {(0, 0)}


def test_comp0():
    assert comp0([(0,)]) == {(0,)}
    assert comp0([(0, 0), (1, 0), (3, 0)]) == {(0, 0), (1, 0)}
    assert comp0([]) == frozenset()


def test_downset_closure_checked():
    box = Box((0, 0), (2, 2))
    assert not Downset(box, frozenset({(1, 1)})).is_downward_closed()
    with pytest.raises(BoxError):
        Downset(box, frozenset({(3, 0)}))
    assert Downset.closure(box, [(1, 1)]).members == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_bad_box():
    with pytest.raises(BoxError):
        Box((1,), (0,))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_classical_quad(r):
    box = Box((-8,), (8,))
    w = Word((finite(1),) * (r - 1), 1)
    b, p, q, z = representative_quad(w, 1, (0,), box)
    assert p == below(box, 0) and q == below(box, -1)
    assert b == below(box, r - 1) and z == below(box, -r)
    nxt = step_quads(w, 1, (0,), box).next
    assert nxt.b == below(box, r) and nxt.z == below(box, -r - 1)


@pytest.mark.parametrize("j", [1, 2])
def test_first_page_quad(j):
    box = Box((-2, -2), (2, 2))
    _, p, q, _ = representative_quad(Word.empty(2), j, (0, 0), box)
    assert p.members - q.members == {(0, 0)} and q <= p


def test_extended_containment():
    box = Box((-3, -3), (3, 3))
    for w in admissible_words(2, 3):
        if is_final(w) or (w.last is not None and w.last.kind == SAT):
            continue
        for L in next_letters(w):
            if L.kind != SAT:
                continue
            ext = step_quads(w, L.j, (0, 0), box).extended
            _, p, _, _ = representative_quad(w, L.j, (0, 0), box)
            assert ext.q <= p <= ext.p


def test_zero_differential_stabilizes():
    box = Box((-1, -1), (2, 2))
    s = step_quads(parse_word("1", 2), 2, (0, 0), box)
    assert s.saturated.z <= s.saturated.p <= s.saturated.b


@given(
    st.sampled_from([w for w in admissible_words(2, 3) if not is_final(w) and not (w.last and w.last.kind == SAT)]),
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    st.sampled_from([1, 2]),
)
@settings(max_examples=150, deadline=None)
def test_translation_equivariance(w, P, j):
    if j not in [L.j for L in next_letters(w)]:
        return
    big = Box((-12, -12), (12, 12))
    inner = Box((-5, -5), (5, 5))
    base = representative_quad(w, j, (0, 0), big)
    moved = representative_quad(w, j, P, big)
    for d0, d1 in zip(base, moved):
        shifted = {tuple(a + b for a, b in zip(x, P)) for x in d0.members}
        assert {x for x in shifted if x in inner} == {x for x in d1.members if x in inner}


def _sat_candidates():
    out = []
    for w in admissible_words(2, 3) + admissible_words(3, 2):
        if is_final(w) or (w.last is not None and w.last.kind == SAT):
            continue
        out += [(w, L.j) for L in next_letters(w) if L.kind == SAT]
    return out


@pytest.mark.parametrize("w,j", _sat_candidates(), ids=str)
def test_limit_matches_sweep(w, j):
    # closed-form limits against an explicit union / intersection of translates
    n = w.n
    box = Box((-2,) * n, (3,) * n)
    r = quad_regions(w, j)
    p = r.p.shifted((1,) * n)
    for up in (True, False):
        closed = limit_region(p, j, up).clip(box)
        brute = sweep(p, j, 1, box, None, "or" if up else "and")
        assert closed == brute
    brk = extension_breaks(p, j, box)
    for lo, hi in zip(brk, brk[1:]):
        assert p.shifted(tuple(lo * d for d in r.delta)).clip(box) == p.shifted(tuple((hi - 1) * d for d in r.delta)).clip(box)
