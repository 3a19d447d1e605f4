import random
from fractions import Fraction

import pytest

from ncpoisson.graded_core import (
    CommAlgebra,
    CommElement,
    CommGenerator,
    Element,
    FreeDGAlgebra,
    Generator,
    InfiniteSlice,
    MixedAlgebras,
    check_d_squared,
    comm_multiply,
    koszul_sign,
    multiply,
)

F = Fraction


def kxy_resolution():
    """k<x,y,t>, |x|=|y|=0, |t|=1, wt x=y=1, wt t=2, dt = xy - yx."""
    gens = [Generator("x", 0, 1), Generator("y", 0, 1), Generator("t", 1, 2)]
    alg = FreeDGAlgebra.build(gens, {"t": {(0, 1): 1, (1, 0): -1}})
    return alg


def test_koszul_sign_basics():
    assert koszul_sign([0], [0]) == 1
    assert koszul_sign([1], [1]) == -1
    assert koszul_sign([1, 1], [1]) == 1


def test_koszul_sign_symmetry():
    rng = random.Random(7)
    for _ in range(50):
        a = [rng.randrange(-2, 3) for _ in range(rng.randrange(4))]
        b = [rng.randrange(-2, 3) for _ in range(rng.randrange(4))]
        expect = -1 if (sum(a) % 2 and sum(b) % 2) else 1
        assert koszul_sign(a, b) * koszul_sign(b, a) == 1
        assert koszul_sign(a, b) == expect


def test_multiply_unit_and_concatenation():
    alg = kxy_resolution()
    x, y = alg.gen("x"), alg.gen("y")
    assert multiply(alg.one(), x) == x
    assert multiply(x, y) == alg.element({alg.word("x", "y"): 1})
    assert multiply(x + y, x) == alg.element({alg.word("x", "x"): 1, alg.word("y", "x"): 1})


def test_multiply_associative_random():
    alg = kxy_resolution()
    rng = random.Random(11)
    words = alg.words_up_to_weight(3)
    for _ in range(25):
        a, b, c = (
            alg.element({rng.choice(words): rng.randrange(-3, 4) or 1, rng.choice(words): rng.randrange(-3, 4) or 1})
            for _ in range(3)
        )
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_multiply_rejects_mixed_algebras():
    a1 = kxy_resolution()
    a2 = kxy_resolution()
    with pytest.raises(MixedAlgebras):
        multiply(a1.gen("x"), a2.gen("y"))


def test_differential_on_t():
    alg = kxy_resolution()
    dt = alg.apply_differential(alg.gen("t"))
    assert dt == alg.element({alg.word("x", "y"): 1, alg.word("y", "x"): -1})


def test_differential_unit_closed():
    alg = kxy_resolution()
    assert alg.apply_differential(alg.one()).is_zero()


def test_differential_leibniz_xt():
    alg = kxy_resolution()
    xt = alg.element({alg.word("x", "t"): 1})
    dxt = alg.apply_differential(xt)
    # |x| = 0 so d(xt) = x (xy - yx)
    assert dxt == alg.element({alg.word("x", "x", "y"): 1, alg.word("x", "y", "x"): -1})


def test_differential_leibniz_random():
    alg = kxy_resolution()
    rng = random.Random(3)
    words = alg.words_up_to_weight(3)
    for _ in range(30):
        u = alg.element({rng.choice(words): rng.randrange(1, 4)})
        v = alg.element({rng.choice(words): rng.randrange(1, 4)})
        uw = next(iter(u.terms))
        sign = -1 if alg.word_degree(uw) % 2 else 1
        lhs = alg.apply_differential(multiply(u, v))
        rhs = multiply(alg.apply_differential(u), v) + multiply(u, alg.apply_differential(v)).scale(sign)
        assert lhs == rhs


def test_differential_degree_weight_homogeneous():
    alg = kxy_resolution()
    for w in alg.words_up_to_weight(4):
        e = alg.element({w: 1})
        de = alg.apply_differential(e)
        for dw in de.terms:
            assert alg.word_degree(dw) == alg.word_degree(w) - 1
            assert alg.word_weight(dw) == alg.word_weight(w)


def test_check_d_squared_passes_for_resolution():
    assert check_d_squared(kxy_resolution()).passed


def test_check_d_squared_weight_failure():
    gens = [Generator("x", 0, 1), Generator("y", 0, 1), Generator("t", 1, 2)]
    alg = FreeDGAlgebra.build(gens, {"t": {(0,): 1}}, check=False)
    report = check_d_squared(alg)
    assert not report.passed
    assert any("weight" in f for f in report.failures)


def test_check_d_squared_square_failure():
    # dt = t*x has degree 0 = |t| - 1 and weight 3: give t weight 3 so the
    # weight matches, then d(d(t)) = (dt)x = txx != 0
    gens = [Generator("x", 0, 1), Generator("t", 1, 3)]
    alg = FreeDGAlgebra.build(gens, {"t": {(1, 0): 1}}, check=False)
    report = check_d_squared(alg)
    assert not report.passed
    assert any("nonzero" in f for f in report.failures)


def test_check_d_squared_zero_differential():
    gens = [Generator("a", 1, 1), Generator("b", 2, 1)]
    assert check_d_squared(FreeDGAlgebra.build(gens, {})).passed


def test_slice_basis_examples():
    alg = kxy_resolution()
    wds = alg.slice_basis(0, 2)
    assert wds == [alg.word("x", "x"), alg.word("x", "y"), alg.word("y", "x"), alg.word("y", "y")]
    assert alg.slice_basis(1, 2) == [alg.word("t")]
    assert alg.slice_basis(5, 2) == []


def test_slice_basis_infinite_guard():
    alg = FreeDGAlgebra.build([Generator("z", 0, 0)], {}, check=False)
    with pytest.raises(InfiniteSlice):
        alg.slice_basis(0, 1)


def comm_universe():
    return CommAlgebra(
        [
            CommGenerator("u", 0, 1),
            CommGenerator("v", 2, 1),
            CommGenerator("th", 1, 1),
            CommGenerator("et", 1, 1),
        ]
    )


def test_comm_odd_square_is_zero():
    ca = comm_universe()
    th = CommElement(ca, {(2,): 1})
    assert comm_multiply(th, th).is_zero()


def test_comm_even_commute_odd_anticommute():
    ca = comm_universe()
    u = CommElement(ca, {(0,): 1})
    v = CommElement(ca, {(1,): 1})
    th = CommElement(ca, {(2,): 1})
    et = CommElement(ca, {(3,): 1})
    assert comm_multiply(u, v) == comm_multiply(v, u)
    assert comm_multiply(th, et) == comm_multiply(et, th).scale(-1)


def test_comm_canonicalization_idempotent():
    ca = comm_universe()
    e = CommElement(ca, {(3, 2, 0): 5, (0, 1): -2})
    again = CommElement(ca, e.terms)
    assert again == e
    # (3,2): one transposition of odd generators
    assert e.terms[(0, 2, 3)] == -5


def test_comm_slice_monomials():
    ca = comm_universe()
    # degree 0 weight 2: u^2 only
    assert ca.slice_monomials(0, 2) == [(0, 0)]
    # degree 1 weight 2: u*th, u*et
    assert ca.slice_monomials(1, 2) == [(0, 2), (0, 3)]
    # degree 2 weight 2: u*v and th*et
    assert ca.slice_monomials(2, 2) == [(0, 1), (2, 3)]


def test_element_splits_into_homogeneous_parts():
    alg = kxy_resolution()
    e = alg.element({alg.word("x"): 1, alg.word("t"): 2, alg.word("x", "y"): -1})
    parts = e.split_homogeneous()
    assert set(parts) == {(0, 1), (1, 2), (0, 2)}
    total = alg.zero()
    for part in parts.values():
        deg = part.homogeneous_degree()
        wt = part.homogeneous_weight()
        assert deg is not None and wt is not None
        total = total + part
    assert total == e


def test_words_up_to_weight_counts():
    alg = kxy_resolution()
    # weights (1,1,2): counts per weight satisfy c(w) = 2c(w-1) + c(w-2)
    counts = {}
    for w in alg.words_up_to_weight(6):
        counts[alg.word_weight(w)] = counts.get(alg.word_weight(w), 0) + 1
    assert [counts[i] for i in range(7)] == [1, 2, 5, 12, 29, 70, 169]
