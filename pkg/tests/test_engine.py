import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from higherss import engine as E
from higherss.complexes import MultifilteredComplex
from higherss.downsets import Box, Downset, DownsetQuad
from higherss.oracle import homology_total, random_complex
from higherss.verify import random_chain
from higherss.words import Word, WordError, parse_word

from conftest import zero_complex


def test_e_term_zero_differential():
    c = zero_complex(2, [((0, 0), 0), ((1, 0), 0), ((1, 1), 1)])
    box = c.support_box()
    p = Downset.closure(box, [(1, 0)])
    q = Downset.closure(box, [(0, 0)])
    assert E.e_term(c, p, q).dims == {0: 1, 1: 0}
    assert E.e_term(c, p, p).dims == {0: 0, 1: 0}


def test_e_term_two_generators(two_gen):
    box = two_gen.support_box()
    assert E.e_term(two_gen, Downset.full(box), Downset.empty(box)).dims == {0: 0, 1: 0}


def test_e_term_needs_order(two_gen):
    box = two_gen.support_box()
    with pytest.raises(ValueError):
        E.e_term(two_gen, Downset.empty(box), Downset.full(box))


def test_s_term_special_quads(square):
    box = square.support_box()
    full, empty = Downset.full(box), Downset.empty(box)
    assert E.s_term(square, DownsetQuad(full, full, empty, empty)).dims == homology_total(square)
    rng = np.random.default_rng(0)
    for _ in range(10):
        q, p = random_chain(rng, box, 2)
        s = E.s_term(square, DownsetQuad(p, p, q, q))
        e = E.e_term(square, p, q)
        assert all(s.value[k] == e.value[k] for k in square.degrees)


def test_s_term_zero_differential():
    c = zero_complex(2, [((0, 0), 0), ((1, 0), 0), ((2, 1), 1)])
    box = c.support_box()
    rng = np.random.default_rng(1)
    for _ in range(10):
        z, q, p, b = random_chain(rng, box, 4)
        assert E.s_term(c, DownsetQuad(b, p, q, z)).dims == E.e_term(c, p, q).dims


def test_unknown_algorithm(two_gen):
    box = two_gen.support_box()
    full = Downset.full(box)
    with pytest.raises(ValueError):
        E.s_term(two_gen, DownsetQuad(full, full, full, full), "magic")


def _local(c, P):
    idx = [i for i, g in enumerate(c.generators) if g.position == tuple(P)]
    return MultifilteredComplex(c.n, c.p, [c.generators[i] for i in idx], c.d[np.ix_(idx, idx)])


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_first_page_is_local(seed):
    c = random_complex(seed, 2, ((0, 0), (2, 2)), 2, 3)
    for P in c.support:
        local = homology_total(_local(c, P))
        dims = E.page(c, Word.empty(2), P).dims
        assert all(dims[k] == local.get(k, 0) for k in dims)


def test_final_page_is_homology(square):
    H = homology_total(square)
    for text in ("121^e2^e", "2^e1^e", "12121^e2^e"):
        w = parse_word(text, 2)
        for P in E.page_positions(square, w):
            assert E.page(square, w, P).dims == H


def test_limit_values(two_gen):
    assert E.limit(two_gen) == {0: 0, 1: 0}
    c = zero_complex(1, [((0,), 0), ((2,), 0), ((2,), 1)])
    assert sum(E.limit(c).values()) == 3


def test_two_generator_differential(two_gen):
    dp = E.page_differential(two_gen, Word.empty(2), (0, 0), 1)
    m = dp.incoming[0]
    assert m.shape == (1, 1) and m[0, 0] % 2 == 1
    assert dp.homology_dims() == {0: 0, 1: 0}


def test_zero_differential_maps():
    c = zero_complex(2, [((0, 0), 0), ((1, 0), 1), ((0, 1), 1)])
    for P in [(0, 0), (1, 0)]:
        dp = E.page_differential(c, Word.empty(2), P, 1)
        assert all(not m.any() for m in dp.incoming.values())
        assert all(not m.any() for m in dp.outgoing.values())


def test_saturate_two_generators(two_gen):
    assert E.saturate(two_gen, Word.empty(2), (0, 0), 1).dims[0] == 0


def test_saturate_zero_differential():
    c = zero_complex(2, [((0, 0), 0), ((1, 0), 0), ((0, 1), 1)])
    for P in [(0, 0), (1, 0), (0, 1)]:
        assert E.saturate(c, Word.empty(2), P, 1).dims == E.page(c, Word.empty(2), P).dims


def test_saturate_stabilizes(square):
    w = Word.empty(2)
    sat = E.saturate(square, w, (1, 1), 2).dims
    for k in (6, 7, 8):
        assert E.page(square, parse_word("2" * k, 2), (1, 1)).dims == sat


def test_extension_single_generator():
    c = zero_complex(2, [((1, 2), 0)])
    rep = E.extension_filtration(c, Word.empty(2), (1, 2), 1)
    nonzero = [g for g in rep.graded.values() if any(g.values())]
    assert nonzero == [{0: 1}]
    assert rep.is_consistent() and rep.total == {0: 1}


def test_extension_totals(square):
    rep = E.extension_filtration(square, parse_word("1^e", 2), (0, 0), 2)
    assert rep.is_consistent()
    assert rep.total == homology_total(square)


def test_inadmissible_page(square):
    with pytest.raises(WordError):
        E.page(square, parse_word("1e", 2), (0, 0))


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_limit_is_homology(seed):
    c = random_complex(seed, 2, ((0, 0), (2, 2)), 1, 5)
    assert E.limit(c) == homology_total(c)
