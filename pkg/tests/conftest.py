import json
from pathlib import Path

import pytest

from higherss.complexes import Generator, MultifilteredComplex, load_mfc

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def two_gen():
    return load_mfc((SAMPLES / "two_generators.json").read_text())


@pytest.fixture
def square():
    return load_mfc((SAMPLES / "square.json").read_text())


def zero_complex(n, gens, p=2):
    """Complex with d = 0; gens are (position, degree) pairs."""
    g = [Generator(f"g{i}", tuple(pos), deg) for i, (pos, deg) in enumerate(gens)]
    return MultifilteredComplex(n, p, g, [[0] * len(g) for _ in g])
