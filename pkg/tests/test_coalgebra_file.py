from fractions import Fraction
from importlib import resources

import pytest

from ncpoisson.coalgebra_file import ParseError, parse_file, parse_text
from ncpoisson.cyclic_coalgebra import dualize, kxy_coalgebra, validate

F = Fraction


def fixture_path(name: str):
    return resources.files("ncpoisson") / "fixtures" / name


def test_bundled_fixtures_match_library_constructors():
    for variant in ("omega", "omegatilde"):
        loaded = parse_file(fixture_path(f"kxy-{variant}.txt"))
        lib = kxy_coalgebra(variant)
        got = loaded.coalgebra
        assert [g.name for g in got.basis] == [g.name for g in lib.basis]
        assert got.coproduct == lib.coproduct
        assert got.pairing == lib.pairing
        assert got.cyclic_degree == lib.cyclic_degree
        assert loaded.cobar_names == {"a": "x", "b": "y", "s": "t"}


def test_broken_fixture_fails_validation():
    loaded = parse_file(fixture_path("kxy-broken-coassoc.txt"))
    rep = validate(loaded.coalgebra)
    assert not rep.required_passed
    assert not rep.check("coassociativity").passed


def test_torus_fixture_dualizes_to_omega():
    loaded = parse_file(fixture_path("torus-cohomology.txt"))
    assert loaded.kind == "algebra"
    dual = dualize(loaded.algebra)
    assert dual.cyclic_degree == -2
    assert validate(dual).required_passed


def test_pairing_symmetric_completion():
    text = """
kind coalgebra
name two-odd
cyclic_degree -2

[basis]
a 1 1
b 1 1

[pairing]
a b 1
"""
    c = parse_text(text).coalgebra
    assert c.pair(0, 1) == 1
    assert c.pair(1, 0) == -1  # completed with the graded sign


def test_pairing_contradiction_is_located():
    text = """
kind coalgebra
cyclic_degree -2

[basis]
a 1 1
b 1 1

[pairing]
a b 1
b a 1
"""
    with pytest.raises(ParseError) as err:
        parse_text(text)
    assert "graded symmetry" in str(err.value)
    assert err.value.line == 11


def test_rational_literals():
    text = """
kind coalgebra
cyclic_degree -2

[basis]
a 1 1
b 1 1

[pairing]
a b 3/7
"""
    c = parse_text(text).coalgebra
    assert c.pair(0, 1) == F(3, 7)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_text("kind coalgebra\ncyclic_degree -2\n\n[basis]\na one 1\n")
    assert err.value.line == 5
    with pytest.raises(ParseError) as err:
        parse_text("kind algebra\ncyclic_degree 2\n\n[basis]\na 1 1\n")
    assert "unit" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse_text("kind coalgebra\ncyclic_degree -2\n\n[coproduct]\nz z z 1\n")
    assert "unknown basis element" in str(err.value)


def test_empty_basis_is_vacuously_valid():
    c = parse_text("kind coalgebra\ncyclic_degree -2\n\n[basis]\n").coalgebra
    assert validate(c).required_passed
