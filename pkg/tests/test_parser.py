from fractions import Fraction

import pytest

from quasidyn.errors import DomainError, LatinViolation
from quasidyn.parser import (
    format_square_text,
    parse_bases,
    parse_components,
    parse_digits,
    parse_int_list,
    parse_rational,
    parse_square_text,
    read_square,
    write_square,
)
from quasidyn.quasigroup import build_idempotent_quasigroup, build_translation_quasigroup


def test_parse_square_text_skips_comments_and_blank_lines():
    text = "# order 3\n\n0 2 1\n2 1 0\n  # note\n1 0 2\n"
    square = parse_square_text(text)
    assert square == build_translation_quasigroup(3).square


def test_format_square_text_reads_back():
    square = build_translation_quasigroup(11).square
    text = format_square_text(square)
    assert text.splitlines()[0].split() == [str(v) for v in square.table[0]]
    assert parse_square_text(text) == square


def test_parse_square_text_errors():
    with pytest.raises(LatinViolation) as exc:
        parse_square_text("0 1\n1 0 1\n")
    assert (exc.value.axis, exc.value.index) == ("row", 1)
    with pytest.raises(LatinViolation) as exc:
        parse_square_text("0 1 2\n1 2 0\n1 0 2\n")
    assert (exc.value.axis, exc.value.index) == ("column", 0)
    with pytest.raises(DomainError):
        parse_square_text("0 x\n1 0\n")
    with pytest.raises(DomainError):
        parse_square_text("# nothing\n")


def test_read_square(square_file):
    path = square_file([[0, 1], [1, 0]])
    assert read_square(path).table == ((0, 1), (1, 0))
    with pytest.raises(DomainError):
        read_square(path + ".missing")


def test_write_square_reads_back(tmp_path):
    square = build_idempotent_quasigroup(4).square
    path = str(tmp_path / "q4.txt")
    write_square(path, square)
    assert read_square(path) == square
    with pytest.raises(DomainError):
        write_square(str(tmp_path / "missing" / "q4.txt"), square)


def test_parse_digits():
    assert parse_digits("012") == (0, 1, 2)
    assert parse_digits(" 0,11,3 ") == (0, 11, 3)
    for bad in ["", "0a1", "1,,2"]:
        with pytest.raises(DomainError):
            parse_digits(bad)


def test_parse_rational():
    assert parse_rational("1/3") == Fraction(1, 3)
    assert parse_rational(" 2 / 4 ") == Fraction(1, 2)
    for bad in ["1/0", "0.5", "-1/3", "1"]:
        with pytest.raises(DomainError):
            parse_rational(bad)


def test_parse_int_list():
    assert parse_int_list("3,5") == [3, 5]
    assert parse_int_list(" 3 , 4 ,5") == [3, 4, 5]
    with pytest.raises(DomainError):
        parse_int_list("3;5")


def test_parse_components():
    assert parse_components('["012", [4, 0]]', 2) == [(0, 1, 2), (4, 0)]
    assert parse_components("[1, \"2\"]", 2) == [(1,), (2,)]
    with pytest.raises(DomainError):
        parse_components('["0"]', 2)
    with pytest.raises(DomainError):
        parse_components("not json", 1)
    with pytest.raises(DomainError):
        parse_components("[[]]", 1)


def test_parse_bases():
    assert parse_bases('[{"1": "12"}, {"0": [2]}]', 2) == [{1: (1, 2)}, {0: (2,)}]
    assert parse_bases("[{}, {}]", 2) == [{}, {}]
    with pytest.raises(DomainError):
        parse_bases('[{"a": "1"}, {}]', 2)
    with pytest.raises(DomainError):
        parse_bases('["1", {}]', 2)
    with pytest.raises(DomainError):
        parse_bases("[{}]", 2)
