import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from higherss.complexes import (
    CharacteristicError,
    DifferentialSquareError,
    MFCParseError,
    MonotonicityError,
    filtration_subspace,
    load_mfc,
)
from higherss.downsets import Box, Downset
from higherss.oracle import random_complex
from higherss.verify import random_downset


def doc(gens, diff, p=2, n=2):
    return {"n": n, "characteristic": p, "generators": gens, "differential": diff}


def test_empty_complex():
    c = load_mfc(doc([], []))
    assert len(c) == 0


def test_two_generators_valid():
    c = load_mfc(doc([{"id": "x", "degree": 1, "position": [1, 0]}, {"id": "y", "degree": 0, "position": [0, 0]}],
                     [{"from": "x", "to": "y", "coeff": 1}]))
    assert c.degrees == (0, 1)


def test_monotonicity_violation():
    with pytest.raises(MonotonicityError):
        load_mfc(doc([{"id": "x", "position": [0, 0]}, {"id": "y", "position": [1, 0]}],
                     [{"from": "x", "to": "y", "coeff": 1}]))


def test_square_violation():
    gens = [{"id": "a", "position": [0, 0]}, {"id": "b", "position": [0, 0]}]
    with pytest.raises(DifferentialSquareError):
        load_mfc(doc(gens, [{"from": "a", "to": "b", "coeff": 1}, {"from": "b", "to": "a", "coeff": 1}]))


def test_bad_characteristic_and_json():
    with pytest.raises(CharacteristicError):
        load_mfc(doc([], [], p=4))
    with pytest.raises(MFCParseError):
        load_mfc("{not json")
    with pytest.raises(MFCParseError):
        load_mfc(doc([{"id": "x", "position": [0]}], []))


def test_filtration_extremes(square):
    box = square.support_box()
    assert filtration_subspace(square, Downset.empty(box)).dim == 0
    assert filtration_subspace(square, Downset.full(box)).dim == len(square)


def test_round_trip(square):
    again = load_mfc(json.dumps(square.to_document()))
    assert again.to_document() == square.to_document()


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]), st.integers(1, 2))
@settings(max_examples=40, deadline=None)
def test_random_complex_valid(seed, p, n):
    c = random_complex(seed, n, ((0,) * n, (2,) * n), 2, p)
    again = load_mfc(c.to_document())
    assert np.array_equal(again.d, c.d)
    assert not np.any(c.d @ c.d % p)


def test_random_complex_deterministic():
    a = random_complex(11, 2, ((0, 0), (3, 3)), 2, 5)
    b = random_complex(11, 2, ((0, 0), (3, 3)), 2, 5)
    assert a.to_document() == b.to_document()
    assert len(random_complex(3, 2, ((0, 0), (3, 3)), 0, 2)) == 0


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_distributivity(seed):
    c = random_complex(seed, 2, ((0, 0), (3, 3)), 2, 3)
    box = c.support_box()
    rng = np.random.default_rng(seed)
    a, b = random_downset(rng, box), random_downset(rng, box)
    Fa, Fb = filtration_subspace(c, a), filtration_subspace(c, b)
    assert filtration_subspace(c, a & b) == Fa & Fb
    assert filtration_subspace(c, a | b) == Fa + Fb
