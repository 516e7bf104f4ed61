import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from higherss.words import (
    EXT,
    FIN,
    SAT,
    InadmissibleWordError,
    Word,
    WordError,
    admissibility_violation,
    admissible_words,
    b_region,
    differential_data,
    finite,
    is_admissible,
    is_final,
    lattice,
    normalize,
    parse_word,
    pure_words,
    require_admissible,
    saturate,
    saturated_sets,
    t_matrix,
    u_vec,
)


def test_parse_simple():
    w = parse_word("12", 2)
    assert [(l.kind, l.j) for l in w] == [(FIN, 1), (FIN, 2)]


def test_parse_final():
    w = parse_word("12121^e2^e", 2)
    kinds = [(l.kind, l.j) for l in w]
    assert kinds[:5] == [(FIN, 1), (FIN, 2), (FIN, 1), (FIN, 2), (SAT, 1)]
    assert kinds[5][0] == EXT and kinds[6] == (SAT, 2) and kinds[7][0] == EXT
    assert str(w) == "12121^e2^e"


def test_parse_empty():
    assert len(parse_word("", 2)) == 0


@pytest.mark.parametrize("text", ["3", "1x", "^e", "0"])
def test_parse_rejects(text):
    with pytest.raises(WordError):
        parse_word(text, 2)


@pytest.mark.parametrize(
    "text,n,ok",
    [("123122^e133313^e111^e", 3, True), ("1e", 2, False), ("1^e1", 2, False), ("12", 2, True)],
)
def test_admissible(text, n, ok):
    assert is_admissible(parse_word(text, n)) is ok


def test_condition_numbers():
    assert admissibility_violation(parse_word("1e", 2))[0] == 3
    assert admissibility_violation(parse_word("1^e1", 2))[0] == 1
    with pytest.raises(InadmissibleWordError, match="condition 3"):
        require_admissible(parse_word("1e", 2))


@pytest.mark.parametrize(
    "text,n,final",
    [("121^e2^e", 2, True), ("1^e", 2, False), ("123122^e133313^e111^e", 3, True)],
)
def test_final(text, n, final):
    assert is_final(parse_word(text, n)) is final


@pytest.mark.parametrize(
    "text,X,Y",
    [("", set(), {1, 2}), ("1^e", {1}, {2}), ("121^e2^e", {1, 2}, set())],
)
def test_saturated_sets(text, X, Y):
    x, y = saturated_sets(parse_word(text, 2))
    assert set(x) == X and set(y) == Y


def test_differential_data_base():
    d = differential_data(Word.empty(2))
    assert [tuple(v) for v in d.a] == [(1, 0), (0, 1)]
    assert [tuple(v) for v in d.delta] == [(1, 0), (0, 1)]


def test_differential_data_12():
    d = differential_data(parse_word("12", 2))
    assert [tuple(v) for v in d.a] == [(2, 0), (-1, 2)]
    assert [tuple(v) for v in d.delta] == [(2, -1), (-1, 1)]


@pytest.mark.parametrize("r", [1, 2, 3, 6])
def test_differential_data_n1(r):
    d = differential_data(Word((finite(1),) * (r - 1), 1))
    assert tuple(d.a[0]) == (r,) and tuple(d.delta[0]) == (1,)


def test_delta_cross_check():
    # delta^i = 1 - sum_{k != i} a^k for pure words
    for w in pure_words(2, 5) + pure_words(3, 3):
        d = differential_data(w)
        n = w.n
        for i in range(n):
            s = [1] * n
            for k in range(n):
                if k != i:
                    s = [a - b for a, b in zip(s, d.a[k])]
            assert tuple(s) == tuple(d.delta[i]), str(w)


def test_b_region_values():
    assert b_region(Word.empty(2)) == {(0, 0)}
    assert b_region(parse_word("1", 2)) == {(0, 0), (1, 0)}
    assert b_region(parse_word("12", 2)) == {(0, 0), (1, 0), (-1, 1), (0, 1)}


def test_t_matrix_values():
    assert np.array_equal(t_matrix(Word.empty(2)), np.eye(2, dtype=int))
    assert t_matrix(parse_word("12", 2)).tolist() == [[1, 1], [1, 2]]
    assert t_matrix(parse_word("1212", 2)).tolist() == [[2, 3], [3, 5]]


def test_u_values():
    assert tuple(u_vec(Word.empty(2))) == (0, 0)
    assert tuple(u_vec(parse_word("1", 2))) == (1, 0)
    assert tuple(u_vec(parse_word("12", 2))) == (1, 2)


def test_lattice_values():
    assert lattice(parse_word("12", 2)) == ()
    assert [tuple(v) for v in lattice(parse_word("1^e", 2))] == [(1, 0)]
    for text, n in (("121^e2^e", 2), ("123122^e133313^e111^e", 3)):
        L = np.array(lattice(parse_word(text, n)))
        assert L.shape == (n, n) and abs(round(np.linalg.det(L))) == 1


@pytest.mark.parametrize("text,out", [("111^e", "1^e"), ("12", "12"), ("1^e222^e", "1^e2^e")])
def test_normalize(text, out):
    assert str(normalize(parse_word(text, 2))) == out


def test_enumeration_counts():
    assert len(pure_words(2, 7)) == 255
    assert all(is_admissible(w) for w in admissible_words(2, 4))


words2 = st.lists(st.sampled_from(["1", "2", "1^", "2^", "e"]), max_size=7).map("".join)


@given(words2)
@settings(max_examples=300, deadline=None)
def test_normalize_idempotent(text):
    try:
        w = parse_word(text, 2)
    except WordError:
        return
    if not is_admissible(w):
        return
    once = normalize(w)
    assert normalize(once) == once
    assert is_admissible(once)


@given(st.lists(st.sampled_from([1, 2, 3]), max_size=6))
@settings(max_examples=200, deadline=None)
def test_t_unimodular(letters):
    w = Word(tuple(finite(j) for j in letters), 3)
    t = t_matrix(w)
    assert round(np.linalg.det(t.astype(float))) == 1
    # T inverts the delta column matrix
    D = np.array([list(v) for v in differential_data(w).delta]).T
    assert (t @ D).tolist() == np.eye(3, dtype=int).tolist()


@given(words2)
@settings(max_examples=200, deadline=None)
def test_parse_round_trip(text):
    try:
        w = parse_word(text, 2)
    except WordError:
        return
    assert parse_word(str(w), 2) == w
