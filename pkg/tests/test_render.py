import pytest

from higherss.render import RenderError, ascii_b, svg_b
from higherss.words import parse_word


def test_ascii_empty_word():
    pic = ascii_b(parse_word("", 2))
    assert pic.count("@") == 1 and pic.count("#") == 0


def test_ascii_one():
    pic = ascii_b(parse_word("1", 2))
    assert pic.count("@") == 1 and pic.count("#") == 1
    assert "1" in pic and "2" in pic


def test_svg_shapes():
    s = svg_b(parse_word("12", 2))
    assert s.startswith("<svg") and s.count("<rect") == 1 + 4
    s3 = svg_b(parse_word("123", 3))
    assert "x3=0" in s3


def test_render_errors():
    with pytest.raises(RenderError):
        ascii_b(parse_word("1", 3))
    with pytest.raises(RenderError):
        svg_b(parse_word("1", 1))


def test_deterministic():
    w = parse_word("121^e", 2)
    assert svg_b(w) == svg_b(w) and ascii_b(w) == ascii_b(w)
