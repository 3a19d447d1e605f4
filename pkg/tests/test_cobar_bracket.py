from fractions import Fraction

import pytest

from ncpoisson.cobar_bracket import (
    DoubleElement,
    axiom_suite,
    check_d_compat,
    check_double_jacobi,
    check_outer_derivation,
    check_skew,
    cobar,
    double_bracket,
    format_double,
    induced_bracket,
    kxy_cobar,
)
from ncpoisson.cyclic_coalgebra import CyclicCoalgebra, InvalidCoalgebra
from ncpoisson.graded_core import Generator

F = Fraction


def test_cobar_kxy_generators_and_differential():
    alg = kxy_cobar("omega")
    assert [g.name for g in alg.generators] == ["x", "y", "t"]
    assert [g.degree for g in alg.generators] == [0, 0, 1]
    assert [g.weight for g in alg.generators] == [1, 1, 2]
    dt = alg.apply_differential(alg.gen("t"))
    assert dt == alg.element({alg.word("x", "y"): 1, alg.word("y", "x"): -1})
    assert alg.bracket_degree == 0
    assert kxy_cobar("omegatilde").bracket_degree == -1


def test_cobar_zero_structure_gives_zero_differential():
    c = CyclicCoalgebra([Generator("a", 1, 1), Generator("b", 1, 1)], {}, {}, {}, -2)
    alg = cobar(c)
    for name in ("a", "b"):
        assert alg.apply_differential(alg.gen(name)).is_zero()


def test_cobar_differential_preserves_weight():
    for variant in ("omega", "omegatilde"):
        alg = kxy_cobar(variant)
        for i, g in enumerate(alg.generators):
            dg = alg.diff_of_generator(i)
            for w in dg.terms:
                assert alg.word_weight(w) == g.weight
                assert alg.word_degree(w) == g.degree - 1


def test_cobar_rejects_invalid_coalgebra():
    bad = CyclicCoalgebra(
        [Generator("a", 1, 1), Generator("b", 1, 1)],
        {},
        {},
        {(0, 1): F(1), (1, 0): F(1)},  # breaks graded symmetry
        -2,
    )
    with pytest.raises(InvalidCoalgebra):
        cobar(bad)


def test_double_bracket_single_letters():
    alg = kxy_cobar("omega")
    x, y = alg.word("x"), alg.word("y")
    assert double_bracket(alg, x, y) == DoubleElement(alg, {((), ()): 1})
    assert double_bracket(alg, x, x).is_zero()


def test_double_bracket_xx_yy_four_terms():
    alg = kxy_cobar("omega")
    xx, yy = alg.word("x", "x"), alg.word("y", "y")
    got = double_bracket(alg, xx, yy)
    x, y = alg.word("x"), alg.word("y")
    xy, yx = alg.word("x", "y"), alg.word("y", "x")
    expected = DoubleElement(alg, {(x, y): 1, (yx, ()): 1, ((), xy): 1, (y, x): 1})
    assert got == expected


def test_double_bracket_degree_and_weight_additivity():
    for variant, pairing_weight in (("omega", 2), ("omegatilde", 3)):
        alg = kxy_cobar(variant)
        words = alg.words_up_to_weight(4)
        for u in words:
            for v in words:
                bb = double_bracket(alg, u, v)
                for (p, q) in bb.terms:
                    assert (
                        alg.word_degree(p) + alg.word_degree(q)
                        == alg.word_degree(u) + alg.word_degree(v) + alg.bracket_degree
                    )
                    assert (
                        alg.word_weight(p) + alg.word_weight(q)
                        == alg.word_weight(u) + alg.word_weight(v) - pairing_weight
                    )


def test_double_bracket_bilinear():
    alg = kxy_cobar("omega")
    x, y = alg.gen("x"), alg.gen("y")
    e = x.scale(2) + y.scale(-3)
    lhs = double_bracket(alg, e, y)
    rhs = double_bracket(alg, x, y).scale(2) - double_bracket(alg, y, y).scale(3)
    assert lhs == rhs


def test_outer_derivation_unit_second_slot():
    alg = kxy_cobar("omega")
    out = check_outer_derivation(alg, alg.word("x"), alg.word("y"), ())
    assert out.passed


def test_outer_derivation_examples():
    alg = kxy_cobar("omega")
    assert check_outer_derivation(alg, alg.word("x"), alg.word("y"), alg.word("y")).passed
    assert check_outer_derivation(alg, alg.word("t"), alg.word("x"), alg.word("y")).passed


def test_skew_examples():
    alg = kxy_cobar("omega")
    assert check_skew(alg, alg.word("x"), alg.word("x")).passed
    assert check_skew(alg, alg.word("x"), alg.word("y")).passed
    alg2 = kxy_cobar("omegatilde")
    assert check_skew(alg2, alg2.word("t"), alg2.word("t")).passed
    # the mixed-degree pair that pins the operation-transport sign
    assert check_skew(alg2, alg2.word("x"), alg2.word("t", "t")).passed


def test_double_jacobi_examples():
    alg = kxy_cobar("omega")
    assert check_double_jacobi(alg, alg.word("x"), alg.word("x"), alg.word("x")).passed
    assert check_double_jacobi(alg, alg.word("x"), alg.word("y"), alg.word("t")).passed
    assert check_double_jacobi(alg, alg.word("x", "x"), alg.word("y", "y"), alg.word("t")).passed


def test_d_compat_examples():
    alg = kxy_cobar("omega")
    out = check_d_compat(alg, alg.word("x"), alg.word("y"))
    assert out.natural_passed and out.merged_passed and out.strict_passed
    # the coproduct term of dt: merged tier cancels exactly, strict does not
    out = check_d_compat(alg, alg.word("t"), alg.word("x"))
    assert out.natural_passed and out.merged_passed
    assert not out.strict_passed
    alg2 = kxy_cobar("omegatilde")
    out = check_d_compat(alg2, alg2.word("t"), alg2.word("t"))
    assert out.natural_passed and out.merged_passed
    assert not out.strict_passed


def test_induced_bracket_values():
    alg = kxy_cobar("omega")
    assert induced_bracket(alg, alg.word("x"), alg.word("y")) == alg.one()
    assert induced_bracket(alg, alg.word("x"), alg.word("x")).is_zero()
    got = induced_bracket(alg, alg.word("x", "x"), alg.word("y", "y"))
    assert got == alg.element({alg.word("x", "y"): 2, alg.word("y", "x"): 2})


def test_axiom_suite_small_weight_both_variants():
    for variant in ("omega", "omegatilde"):
        rep = axiom_suite(kxy_cobar(variant), 4, 3)
        assert rep.required_passed, rep.format_text()
        assert rep.family("skew-symmetry").checked > 100
        assert rep.family("double-jacobi").checked > 0


def test_axiom_suite_strict_tier_reports_cyclicity_gap():
    rep = axiom_suite(kxy_cobar("omega"), 4, 3)
    assert not rep.family("d-compat-strict").passed
    assert rep.family("d-compat-natural").passed


def test_double_element_operations():
    alg = kxy_cobar("omega")
    x, y = alg.word("x"), alg.word("y")
    d = DoubleElement(alg, {(x, y): 2})
    assert d.flip() == DoubleElement(alg, {(y, x): 2})
    assert d.merge() == alg.element({alg.word("x", "y"): 2})
    assert d.left_mult(alg.gen("y")) == DoubleElement(alg, {(alg.word("y", "x"), y): 2})
    assert d.right_mult(alg.gen("x")) == DoubleElement(alg, {(x, alg.word("y", "x")): 2})
    t = alg.word("t")
    odd = DoubleElement(alg, {(t, t): 1})
    assert odd.flip() == DoubleElement(alg, {(t, t): -1})


def test_format_double_deterministic():
    alg = kxy_cobar("omega")
    d = double_bracket(alg, alg.word("x", "x"), alg.word("y", "y"))
    assert format_double(d) == "1(x)x*y + x(x)y + y(x)x + y*x(x)1"
