"""Acceptance suite: one test per criterion, exact arithmetic throughout.

Every assertion is exact equality over the rationals; there are no numeric
tolerances anywhere.  Each test prints one pass/fail line (visible with
pytest -s) and fails loudly otherwise.  Run with:

    pytest tests/test_acceptance.py -v -s
"""

import itertools
from fractions import Fraction

import pytest

from ncpoisson import exactla
from ncpoisson.cobar_bracket import axiom_suite, kxy_cobar
from ncpoisson.cyclic_coalgebra import kxy_coalgebra
from ncpoisson.cyclic_homology import compare_with_cobar
from ncpoisson.graded_core import CommElement
from ncpoisson.natural_quotient import (
    NaturalElement,
    classes_agree,
    format_natural,
    homology_bracket,
    natural_bracket,
    natural_differential,
    natural_slice_basis,
    natural_slice_homology,
    one_form_cycle,
    power_word_class,
)
from ncpoisson.rep_poisson import (
    RepBracket,
    check_rep_poisson_axioms,
    check_trace_poisson,
    rep_algebra,
    rep_homology_slice,
    trace,
    universal_rep,
)

F = Fraction


def conclude(name: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {name}: {'pass' if ok else 'FAIL'}"
    if detail and not ok:
        line += f" ({detail})"
    print(line)
    assert ok, detail


@pytest.fixture(scope="module")
def omega():
    return kxy_cobar("omega")


@pytest.fixture(scope="module")
def omegatilde():
    return kxy_cobar("omegatilde")


def natural_words(alg, max_each):
    seen, out = set(), []
    for w in alg.words_up_to_weight(max_each):
        if not w:
            continue
        nf = alg.rotation_normal_form(w)
        if nf is None or nf[0] in seen:
            continue
        seen.add(nf[0])
        out.append(nf[0])
    out.sort(key=lambda w: (len(w), w))
    return out


def test_criterion_01_double_poisson_axioms(omega, omegatilde):
    """Double bracket axiom families, exhaustively: pairs to total weight 6,
    triples to total weight 5, both pairings."""
    ok = True
    details = []
    for alg in (omega, omegatilde):
        report = axiom_suite(alg, 6, 5)
        if not report.required_passed:
            ok = False
            details.append(report.format_text())
        # the exhaustive counts must actually cover the stated ranges
        assert report.family("skew-symmetry").checked == 1622
        assert report.family("double-jacobi").checked == 362
    conclude("criterion-01 (double bracket axiom suite, weight 6/5)", ok, "; ".join(details))


def test_criterion_02_quotient_lie_axioms(omega, omegatilde):
    """Graded antisymmetry, Jacobi and the d-derivation property of the
    bracket on the reduced quotient, all triples of slice-basis classes up
    to total weight 5."""
    ok = True
    detail = ""
    for alg in (omega, omegatilde):
        n = alg.bracket_degree
        words = natural_words(alg, 4)
        classes = [NaturalElement(alg, {w: 1}, True) for w in words]
        degrees = {id(c): alg.word_degree(w) for c, w in zip(classes, words)}
        weights = {id(c): alg.word_weight(w) for c, w in zip(classes, words)}

        def wt(c):
            return weights[id(c)]

        for a, b in itertools.product(classes, classes):
            if wt(a) + wt(b) > 5:
                continue
            da, db = degrees[id(a)], degrees[id(b)]
            sign = -1 if ((da + n) * (db + n)) % 2 else 1
            if not (natural_bracket(alg, a, b) + natural_bracket(alg, b, a).scale(sign)).is_zero():
                ok, detail = False, f"antisymmetry at ({format_natural(a)}, {format_natural(b)})"
            dsign = -1 if (da + n) % 2 else 1
            lhs = natural_differential(alg, natural_bracket(alg, a, b))
            rhs = natural_bracket(alg, natural_differential(alg, a), b) + natural_bracket(
                alg, a, natural_differential(alg, b)
            ).scale(dsign)
            if not (lhs - rhs).is_zero():
                ok, detail = False, f"d-derivation at ({format_natural(a)}, {format_natural(b)})"
        for a, b, c in itertools.product(classes, classes, classes):
            if wt(a) + wt(b) + wt(c) > 5:
                continue
            da, db = degrees[id(a)], degrees[id(b)]
            sign = -1 if ((da + n) * (db + n)) % 2 else 1
            lhs = natural_bracket(alg, a, natural_bracket(alg, b, c))
            rhs = natural_bracket(alg, natural_bracket(alg, a, b), c) + natural_bracket(
                alg, b, natural_bracket(alg, a, c)
            ).scale(sign)
            if not (lhs - rhs).is_zero():
                ok, detail = False, f"jacobi at ({format_natural(a)}, {format_natural(b)}, {format_natural(c)})"
    conclude("criterion-02 (quotient Lie axioms, total weight 5)", ok, detail)


def test_criterion_03_bracket_formulas(omega):
    """The closed-form quotient bracket of powers against one-t words, all
    1 <= p, q <= 4 with one global sign, and the homology identity
    {x^p, class(y^q dx)} = p q class(x^{p-1} y^{q-1} dx) for p, q <= 3."""
    alg = omega
    ix, iy, it = alg.index["x"], alg.index["y"], alg.index["t"]
    ok = True
    detail = ""
    for p in range(1, 5):
        for q in range(1, 5):
            lhs = natural_bracket(
                alg,
                NaturalElement(alg, {(ix,) * p: 1}),
                NaturalElement(alg, {(iy,) * (q - 1) + (it,): 1}),
            )
            expected_terms = {}
            for i in range(1, q):
                w = (ix,) * (p - 1) + (iy,) * (q - 1 - i) + (it,) + (iy,) * (i - 1)
                expected_terms[w] = expected_terms.get(w, 0) + p
            rhs = NaturalElement(alg, expected_terms)  # global sign +1
            if lhs != rhs:
                ok, detail = False, f"power formula at p={p} q={q}"
    for p in range(1, 4):
        for q in range(1, 4):
            got = homology_bracket(alg, power_word_class(alg, p, 0), one_form_cycle(alg, 0, q, "x"))
            want = one_form_cycle(alg, p - 1, q - 1, "x").scale(p * q)
            if not classes_agree(alg, got, want):
                ok, detail = False, f"one-form identity at p={p} q={q}"
    conclude("criterion-03 (closed-form brackets, p,q <= 4 and <= 3)", ok, detail)


def _poisson_oracle(f: dict[tuple[int, int], Fraction], g: dict[tuple[int, int], Fraction]):
    """Independent symplectic bracket df/dx dg/dy - df/dy dg/dx on
    dictionary polynomials in two commuting variables."""
    out: dict[tuple[int, int], Fraction] = {}

    def add(key, val):
        if val:
            out[key] = out.get(key, F(0)) + val
            if not out[key]:
                del out[key]

    for (a, b), cf in f.items():
        for (c, d), cg in g.items():
            if a > 0 and d > 0:
                add((a + c - 1, b + d - 1), F(a * d) * cf * cg)
            if b > 0 and c > 0:
                add((a + c - 1, b + d - 1), -F(b * c) * cf * cg)
    return out


def test_criterion_04_degree_zero_symplectic(omega):
    """The homology bracket on degree-zero classes agrees with the usual
    symplectic bracket of polynomials, on the full monomial basis of weight
    slices up to 5."""
    alg = omega
    ok = True
    detail = ""
    monomials = [(i, j) for total in range(1, 6) for i in range(total + 1) for j in [total - i]]
    for (i, j), (k, l) in itertools.product(monomials, monomials):
        got = homology_bracket(alg, power_word_class(alg, i, j), power_word_class(alg, k, l))
        oracle = _poisson_oracle({(i, j): F(1)}, {(k, l): F(1)})
        want = NaturalElement(alg, {}, True)
        for (a, b), c in oracle.items():
            want = want + power_word_class(alg, a, b).scale(c)
        if not classes_agree(alg, got, want):
            ok, detail = False, f"mismatch at x^{i}y^{j}, x^{k}y^{l}"
    conclude("criterion-04 (degree-0 symplectic bracket, weights <= 5)", ok, detail)


def test_criterion_05_degree_one_vanishing(omega):
    """The homology bracket of two degree-1 classes vanishes identically
    (slice bases up to weight 6): every bracket value is a cycle and its
    class reduces to zero modulo boundaries."""
    alg = omega
    ok = True
    detail = ""
    reps_per_weight = {w: natural_slice_homology(alg, 1, w, True)[1] for w in range(1, 7)}
    # the bracket drops the pairing weight 2, so targets live at w1 + w2 - 2;
    # boundary spaces of those degree-2 slices are built once per weight
    boundary: dict[int, tuple[list, exactla.Subspace, dict]] = {}
    for w in range(2, 11):
        mid = natural_slice_basis(alg, 2, w, True)
        above = natural_slice_basis(alg, 3, w, True)
        index = {word: i for i, word in enumerate(mid)}
        cols = []
        for word in above:
            img = natural_differential(alg, NaturalElement(alg, {word: 1}, True))
            cols.append({index[iw]: c for iw, c in img.terms.items()})
        boundary[w] = (mid, exactla.Subspace(len(mid), cols), index)
    pairs = 0
    for w1, reps1 in reps_per_weight.items():
        for w2, reps2 in reps_per_weight.items():
            for a in reps1:
                for b in reps2:
                    pairs += 1
                    out = natural_bracket(alg, a, b)
                    if out.is_zero():
                        continue
                    if not natural_differential(alg, out).is_zero():
                        ok, detail = False, f"bracket not closed at weights ({w1},{w2})"
                        continue
                    mid, space, index = boundary[w1 + w2 - 2]
                    vec = {index[word]: c for word, c in out.terms.items()}
                    if space.reduce(vec):
                        ok, detail = False, f"nonzero class at weights ({w1},{w2})"
    assert pairs == 225  # sum over weights of dim H_1 = 0+1+2+3+4+5 squared
    conclude("criterion-05 (degree-1 x degree-1 vanishing, weight <= 6)", ok, detail)


def test_criterion_06_reduced_cyclic_dimension_table(omega):
    """Slice dimensions of the reduced quotient homology against the
    independent de Rham counts: w+1, w-1, 0, 0 for weights 1..6."""
    alg = omega
    ok = True
    detail = ""
    for w in range(1, 7):
        got = [natural_slice_homology(alg, d, w, True)[0] for d in range(4)]
        want = [w + 1, w - 1, 0, 0]
        if got != want:
            ok, detail = False, f"weight {w}: got {got}, expected {want}"
    conclude("criterion-06 (homology dimension table, weights 1..6)", ok, detail)


def test_criterion_07_necklace_cyclic_isomorphism():
    """The norm map is an isomorphism of complexes between the necklace
    complex and the cyclic complex on every slice up to weight 6, for both
    pairing variants, with matching homology dimensions."""
    ok = True
    detail = ""
    for variant in ("omega", "omegatilde"):
        c = kxy_coalgebra(variant)
        report = compare_with_cobar(c, 6)
        if not report.passed:
            ok, detail = False, report.format_text()
    conclude("criterion-07 (necklace/cyclic chain isomorphism, weight <= 6)", ok, detail)


def test_criterion_08_trace_poisson_and_entry_axioms(omega, omegatilde):
    """Trace compatibility for every pair of necklace basis words of weight
    at most 4, dimensions 1..3, both variants; plus 200 seeded sample
    triples of the entry-bracket axiom checks per dimension."""
    ok = True
    detail = ""
    for alg in (omega, omegatilde):
        words = natural_words(alg, 4)
        assert len(words) == 22
        for d in (1, 2, 3):
            ra = rep_algebra(alg, d)
            bracket = RepBracket(ra)
            for u in words:
                for v in words:
                    out = check_trace_poisson(ra, u, v, bracket=bracket)
                    if not out.passed:
                        ok = False
                        detail = f"trace mismatch d={d} at ({alg.format_word(u)}, {alg.format_word(v)})"
            report = check_rep_poisson_axioms(ra, samples=200, seed=2026)
            if not report.passed:
                ok, detail = False, report.format_text()
            assert report.checked["jacobi"] == 200
    conclude("criterion-08 (trace compatibility d <= 3, weight <= 4; 200 axiom samples)", ok, detail)


def test_criterion_09_entry_bracket_structure(omega):
    """Kronecker-delta structure of the generator bracket for d in {1,2,3}
    and the dimension identity for traces."""
    alg = omega
    ok = True
    detail = ""
    for d in (1, 2, 3):
        ra = rep_algebra(alg, d)
        br = RepBracket(ra)
        for i, j, u, v in itertools.product(range(1, d + 1), repeat=4):
            xij = CommElement(ra.comm, {(ra.entry_index(0, i, j),): 1})
            yuv = CommElement(ra.comm, {(ra.entry_index(1, u, v),): 1})
            expected = ra.one() if (i == v and u == j) else ra.zero()
            if br(xij, yuv) != expected:
                ok, detail = False, f"delta pattern fails at d={d} ({i}{j},{u}{v})"
        tx, ty = trace(ra, alg.gen("x")), trace(ra, alg.gen("y"))
        lhs = br(tx, ty)
        from ncpoisson.cobar_bracket import induced_bracket

        rhs = trace(ra, induced_bracket(alg, alg.word("x"), alg.word("y")))
        if lhs != CommElement(ra.comm, {(): d}) or lhs != rhs:
            ok, detail = False, f"trace bracket is not the dimension at d={d}"
    conclude("criterion-09 (entry bracket delta structure, d <= 3)", ok, detail)


def test_criterion_10_representation_homology_degree_zero(omega):
    """Commuting-variety slice: at d = 2 the degree-0 weight-2 slice has
    dimension 33 (36 monomials minus the rank-3 span of commutator
    entries), and all commutator entries are boundaries."""
    alg = omega
    ra = rep_algebra(alg, 2)
    dim, _ = rep_homology_slice(ra, 0, 2)
    ok = dim == 33
    detail = f"dim {dim}"
    comm = alg.multiply(alg.gen("x"), alg.gen("y")) - alg.multiply(alg.gen("y"), alg.gen("x"))
    mat = universal_rep(ra, comm)
    # oracle: the span of the four commutator entries has rank 3 inside the
    # 36-dimensional monomial slice (the trace entry combination vanishes)
    monos = ra.comm.slice_monomials(0, 2)
    index = {m: i for i, m in enumerate(monos)}
    assert len(monos) == 36
    cols = []
    for i in range(2):
        for j in range(2):
            entry = mat.entries[i][j]
            cols.append({index[m]: c for m, c in entry.terms.items()})
    rank = exactla.Subspace(36, cols).dim
    if rank != 3:
        ok, detail = False, f"commutator span rank {rank}"
    for i in range(2):
        for j in range(2):
            tij = CommElement(ra.comm, {(ra.entry_index(2, i + 1, j + 1),): 1})
            if ra.differential(tij) != mat.entries[i][j]:
                ok, detail = False, f"entry ({i+1},{j+1}) is not a boundary"
    conclude("criterion-10 (degree-0 representation homology, d=2 weight 2)", ok, detail)


def test_criterion_11_mutation_sensitivity(omega):
    """Each bundled sign mutation trips at least one named check."""
    ok = True
    detail = ""
    report = axiom_suite(omega, 4, 4, mutation="flip-second-cut")
    if report.family("double-jacobi").passed:
        ok, detail = False, "flip-second-cut left double Jacobi green"
    report2 = axiom_suite(kxy_cobar("omegatilde"), 4, 3, mutation="drop-suspension-sign")
    if report2.required_passed:
        ok, detail = False, "drop-suspension-sign left the suite green"
    ra = rep_algebra(omega, 2)
    out = check_trace_poisson(
        ra, omega.word("x"), omega.word("y"), bracket=RepBracket(ra, mutation="scramble-deltas")
    )
    if out.passed:
        ok, detail = False, "scramble-deltas left trace compatibility green"
    comparison = compare_with_cobar(kxy_coalgebra("omega"), 5, mutation="plain-rotation")
    if comparison.passed:
        ok, detail = False, "plain-rotation left the chain comparison green"
    conclude("criterion-11 (mutation sensitivity)", ok, detail)
