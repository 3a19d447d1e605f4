"""Cobar construction of a cyclic coalgebra and its double bracket.

The cobar construction is the free DG algebra on the coalgebra shifted down
by one, with differential

    d(su) = -s(du) - sum (-1)^{|u'|} (su')(su'')        (reduced coproduct)

extended as a graded Leibniz derivation.  The double bracket pairs one
letter of each argument and splices the remainders:

    {{v, w}} = sum_{i,j} sign * p(v_i, w_j) *
               (w_1..w_{j-1} v_{i+1}..v_p) (x) (v_1..v_{i-1} w_{j+1}..w_m)

THE sign convention, frozen here once and validated by the axiom suite: the
sign of the (i,j) term is the Koszul sign (in shifted letter degrees) of the
permutation that moves v_i and w_j to the front, in this order, followed by
the output letters in output order, times the Koszul cost of carrying the
degree-N bracket operation itself past the surviving letters of the first
argument, (-1)^{N (|v| - |v_i|)}; the pairing of shifted letters is
p(su, sv) = (-1)^{|u|+1} <u, v>.  Every other sign in this module (skew
flip, Jacobi permutations, derivation rules) is generated by the same
Koszul rule from the degrees of the actual factors involved.

The differential-compatibility check is tiered, mirroring the two-tier
cyclicity of the coalgebra validator.  The *natural* tier states that d is
a derivation of the induced bracket mu({{-,-}}) after projection to the
cyclic-word quotient; that is the identity the induced Lie structures
consume, and it is exactly what weak cyclicity guarantees.  The *merged*
tier asks the same before quotienting (in the algebra itself), the
*strict* tier before applying mu (in the tensor square); each holds under
progressively stronger cyclicity of the pairing.  The suite gates on the
natural tier and reports the other two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .cyclic_coalgebra import (
    CyclicCoalgebra,
    InvalidCoalgebra,
    bracket_degree,
    insertion_coefficients,
    suspended_pairing,
    validate,
)
from .graded_core import (
    Element,
    FreeDGAlgebra,
    Generator,
    Word,
    koszul_permutation_sign,
)

#: mutation hooks for the sign-sensitivity tests; see tests/test_mutations.py
BRACKET_MUTATIONS = ("flip-second-cut", "drop-suspension-sign")


class CobarAlgebra(FreeDGAlgebra):
    """Free DG algebra on the shifted coalgebra, one generator per basis
    element (same index order), carrying its source and bracket degree."""

    def __init__(self, source: CyclicCoalgebra, names: Mapping[str, str] | None = None):
        report = validate(source)
        if not report.required_passed:
            raise InvalidCoalgebra(f"coalgebra fails required checks:\n{report.format_text()}")
        names = dict(names or {})
        gens = [
            Generator(names.get(g.name, g.name), g.degree - 1, g.weight)
            for g in source.basis
        ]
        super().__init__(gens, None, check=False)
        self.source = source
        self.bracket_degree = bracket_degree(source)
        for i in range(source.dim):
            terms: dict[Word, Fraction] = {}
            for j, c in source.diff_of(i).items():
                terms[(j,)] = terms.get((j,), Fraction(0)) - c
            for a, b, k in insertion_coefficients(source, i):
                terms[(a, b)] = terms.get((a, b), Fraction(0)) + k
            if terms:
                self._diff[i] = Element(self, terms)
        report2 = self.check_differential()
        if not report2.passed:
            raise InvalidCoalgebra(f"cobar differential broken: {report2.failures[0]}")


def cobar(c: CyclicCoalgebra, names: Mapping[str, str] | None = None) -> CobarAlgebra:
    return CobarAlgebra(c, names)


KXY_NAMES = {"a": "x", "b": "y", "s": "t"}


def kxy_cobar(variant: str = "omega") -> CobarAlgebra:
    from .cyclic_coalgebra import kxy_coalgebra

    return cobar(kxy_coalgebra(variant), KXY_NAMES)


# ---------------------------------------------------------------------------
# Double elements
# ---------------------------------------------------------------------------


class DoubleElement:
    """Sparse rational combination of ordered pairs of words (the tensor
    square of the algebra)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: CobarAlgebra, terms: Mapping[tuple[Word, Word], Fraction | int] | None = None):
        self.alg = alg
        self.terms: dict[tuple[Word, Word], Fraction] = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                self.terms[(tuple(key[0]), tuple(key[1]))] = c

    def is_zero(self) -> bool:
        return not self.terms

    def add_term(self, left: Word, right: Word, c: Fraction) -> None:
        key = (left, right)
        s = self.terms.get(key, Fraction(0)) + c
        if s == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def __add__(self, other: "DoubleElement") -> "DoubleElement":
        out = DoubleElement(self.alg, self.terms)
        for key, c in other.terms.items():
            out.add_term(key[0], key[1], c)
        return out

    def __sub__(self, other: "DoubleElement") -> "DoubleElement":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "DoubleElement":
        c = Fraction(c)
        if c == 0:
            return DoubleElement(self.alg)
        return DoubleElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DoubleElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def flip(self) -> "DoubleElement":
        """(P (x) Q) -> (-1)^{|P||Q|} Q (x) P."""
        out = DoubleElement(self.alg)
        for (p, q), c in self.terms.items():
            sign = -1 if (self.alg.word_degree(p) % 2 and self.alg.word_degree(q) % 2) else 1
            out.add_term(q, p, sign * c)
        return out

    def left_mult(self, e: Element) -> "DoubleElement":
        """Outer action on the first factor: v.(P (x) Q) = vP (x) Q."""
        out = DoubleElement(self.alg)
        for w, cw in e.terms.items():
            for (p, q), c in self.terms.items():
                out.add_term(w + p, q, cw * c)
        return out

    def right_mult(self, e: Element) -> "DoubleElement":
        """Outer action on the second factor: (P (x) Q).w = P (x) Qw."""
        out = DoubleElement(self.alg)
        for w, cw in e.terms.items():
            for (p, q), c in self.terms.items():
                out.add_term(p, q + w, c * cw)
        return out

    def merge(self) -> Element:
        """Multiplication applied to both factors: sum P.Q."""
        out: dict[Word, Fraction] = {}
        for (p, q), c in self.terms.items():
            w = p + q
            s = out.get(w, Fraction(0)) + c
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return Element(self.alg, out)

    def apply_differential(self) -> "DoubleElement":
        """d(P (x) Q) = dP (x) Q + (-1)^{|P|} P (x) dQ."""
        alg = self.alg
        out = DoubleElement(alg)
        for (p, q), c in self.terms.items():
            dp = alg.apply_differential(Element(alg, {p: 1}))
            for w, cw in dp.terms.items():
                out.add_term(w, q, c * cw)
            sign = -1 if alg.word_degree(p) % 2 else 1
            dq = alg.apply_differential(Element(alg, {q: 1}))
            for w, cw in dq.terms.items():
                out.add_term(p, w, sign * c * cw)
        return out

    def sorted_terms(self) -> list[tuple[tuple[Word, Word], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][1]), t[0]))

    def __repr__(self) -> str:
        return f"DoubleElement({format_double(self)})"


def format_double(d: DoubleElement) -> str:
    if d.is_zero():
        return "0"
    alg = d.alg
    bits = []
    for (p, q), c in d.sorted_terms():
        body = f"{alg.format_word(p)}(x){alg.format_word(q)}"
        if c == 1:
            bits.append(body)
        elif c == -1:
            bits.append(f"-{body}")
        else:
            bits.append(f"{c}*{body}")
    text = bits[0]
    for term in bits[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text


# ---------------------------------------------------------------------------
# The double bracket
# ---------------------------------------------------------------------------


def _word_bracket(alg: CobarAlgebra, v: Word, w: Word, mutation: str | None) -> DoubleElement:
    src = alg.source
    out = DoubleElement(alg)
    p, m = len(v), len(w)
    degrees = [alg.letter_degree(i) for i in v] + [alg.letter_degree(j) for j in w]
    n = alg.bracket_degree
    deg_v = sum(degrees[:p])
    for i in range(p):
        for j in range(m):
            val = suspended_pairing(src, v[i], w[j])
            if mutation == "drop-suspension-sign":
                raw = src.pair(v[i], w[j])
                val = raw  # forgets the suspension sign entirely
            if not val:
                continue
            # target order: v_i, w_j, w_prefix, v_suffix, v_prefix, w_suffix
            perm = (
                [i, p + j]
                + list(range(p, p + j))
                + list(range(i + 1, p))
                + list(range(0, i))
                + list(range(p + j + 1, p + m))
            )
            sign = koszul_permutation_sign(degrees, perm)
            if n % 2 and (deg_v - degrees[i]) % 2:
                sign = -sign
            if mutation == "flip-second-cut" and j > 0:
                sign = -sign
            left = w[:j] + v[i + 1 :]
            right = v[:i] + w[j + 1 :]
            out.add_term(left, right, sign * val)
    return out


def double_bracket(alg: CobarAlgebra, v: Element | Word, w: Element | Word, mutation: str | None = None) -> DoubleElement:
    """Bilinear extension of the word bracket; see the module docstring for
    the frozen sign convention."""
    ev = v if isinstance(v, Element) else Element(alg, {tuple(v): 1})
    ew = w if isinstance(w, Element) else Element(alg, {tuple(w): 1})
    out = DoubleElement(alg)
    for wv, cv in ev.terms.items():
        for ww, cw in ew.terms.items():
            term = _word_bracket(alg, wv, ww, mutation)
            if not term.is_zero():
                out = out + term.scale(cv * cw)
    return out


def induced_bracket(alg: CobarAlgebra, v: Element | Word, w: Element | Word, mutation: str | None = None) -> Element:
    """Multiplication composed with the double bracket."""
    return double_bracket(alg, v, w, mutation).merge()


# ---------------------------------------------------------------------------
# Axiom checks
# ---------------------------------------------------------------------------


@dataclass
class CheckOutcome:
    name: str
    inputs: tuple
    passed: bool
    residual: str = ""


def _as_word_element(alg: CobarAlgebra, w: Element | Word) -> tuple[Element, int]:
    if isinstance(w, Element):
        deg = w.homogeneous_degree()
        if deg is None:
            raise ValueError("axiom checks need homogeneous inputs")
        return w, deg
    return Element(alg, {tuple(w): 1}), alg.word_degree(tuple(w))


def check_outer_derivation(
    alg: CobarAlgebra, u: Element | Word, v: Element | Word, w: Element | Word, mutation: str | None = None
) -> CheckOutcome:
    """{{u, v.w}} = {{u,v}}.w + (-1)^{(|u|+N)|v|} v.{{u,w}}."""
    eu, du = _as_word_element(alg, u)
    ev, dv = _as_word_element(alg, v)
    ew, _ = _as_word_element(alg, w)
    n = alg.bracket_degree
    lhs = double_bracket(alg, eu, alg.multiply(ev, ew), mutation)
    sign = -1 if ((du + n) * dv) % 2 else 1
    rhs = double_bracket(alg, eu, ev, mutation).right_mult(ew) + double_bracket(alg, eu, ew, mutation).left_mult(ev).scale(sign)
    diff = lhs - rhs
    return CheckOutcome("outer-derivation", (u, v, w), diff.is_zero(), format_double(diff))


def check_skew(alg: CobarAlgebra, u: Element | Word, v: Element | Word, mutation: str | None = None) -> CheckOutcome:
    """{{u,v}} = -(-1)^{(|u|+N)(|v|+N)} {{v,u}} flipped."""
    eu, du = _as_word_element(alg, u)
    ev, dv = _as_word_element(alg, v)
    n = alg.bracket_degree
    sign = -1 if ((du + n) * (dv + n)) % 2 else 1
    diff = double_bracket(alg, eu, ev, mutation) + double_bracket(alg, ev, eu, mutation).flip().scale(sign)
    return CheckOutcome("skew-symmetry", (u, v), diff.is_zero(), format_double(diff))


TripleTerms = dict[tuple[Word, Word, Word], Fraction]


def _triple_add(acc: TripleTerms, key: tuple[Word, Word, Word], c: Fraction) -> None:
    s = acc.get(key, Fraction(0)) + c
    if s == 0:
        acc.pop(key, None)
    else:
        acc[key] = s


def _left_extension(alg: CobarAlgebra, u: Element, d: DoubleElement, mutation: str | None) -> TripleTerms:
    """{{u, P (x) Q}}_L = {{u, P}} (x) Q."""
    acc: TripleTerms = {}
    for (pw, qw), c in d.terms.items():
        inner = double_bracket(alg, u, Element(alg, {pw: 1}), mutation)
        for (x, y), c2 in inner.terms.items():
            _triple_add(acc, (x, y, qw), c * c2)
    return acc


def _cycle_triple(alg: CobarAlgebra, terms: TripleTerms, direction: int) -> TripleTerms:
    """Cyclic permutation of the three tensor factors with Koszul signs.

    direction +1 sends P1 (x) P2 (x) P3 to P3 (x) P1 (x) P2; -1 sends it to
    P2 (x) P3 (x) P1.
    """
    out: TripleTerms = {}
    for (p1, p2, p3), c in terms.items():
        d1, d2, d3 = (alg.word_degree(p) for p in (p1, p2, p3))
        if direction == 1:
            sign = -1 if (d3 % 2 and (d1 + d2) % 2) else 1
            _triple_add(out, (p3, p1, p2), sign * c)
        else:
            sign = -1 if (d1 % 2 and (d2 + d3) % 2) else 1
            _triple_add(out, (p2, p3, p1), sign * c)
    return out


def check_double_jacobi(
    alg: CobarAlgebra, u: Element | Word, v: Element | Word, w: Element | Word, mutation: str | None = None
) -> CheckOutcome:
    """Three-term cyclic sum of left-extended brackets vanishes."""
    eu, du = _as_word_element(alg, u)
    ev, dv = _as_word_element(alg, v)
    ew, dw = _as_word_element(alg, w)
    n = alg.bracket_degree
    total: TripleTerms = {}
    for key, c in _left_extension(alg, eu, double_bracket(alg, ev, ew, mutation), mutation).items():
        _triple_add(total, key, c)
    s2 = -1 if ((du + n) * (dv + dw)) % 2 else 1
    t2 = _cycle_triple(alg, _left_extension(alg, ev, double_bracket(alg, ew, eu, mutation), mutation), 1)
    for key, c in t2.items():
        _triple_add(total, key, s2 * c)
    s3 = -1 if ((dw + n) * (du + dv)) % 2 else 1
    t3 = _cycle_triple(alg, _left_extension(alg, ew, double_bracket(alg, eu, ev, mutation), mutation), -1)
    for key, c in t3.items():
        _triple_add(total, key, s3 * c)
    residual = "0" if not total else str(sorted((tuple(map(alg.format_word, k)), str(c)) for k, c in total.items()))
    return CheckOutcome("double-jacobi", (u, v, w), not total, residual)


def project_cyclic(e: Element) -> dict[Word, Fraction]:
    """Image of an element in the cyclic-word quotient (span of commutators
    divided out), as canonical-rotation classes."""
    out: dict[Word, Fraction] = {}
    for w, c in e.terms.items():
        nf = e.alg.rotation_normal_form(w)
        if nf is None:
            continue
        canon, sign = nf
        s = out.get(canon, Fraction(0)) + sign * c
        if s == 0:
            out.pop(canon, None)
        else:
            out[canon] = s
    return out


@dataclass
class DCompatOutcome:
    inputs: tuple
    natural_passed: bool
    merged_passed: bool
    strict_passed: bool
    natural_residual: str = ""
    merged_residual: str = ""
    strict_residual: str = ""

    @property
    def passed(self) -> bool:
        return self.natural_passed


def check_d_compat(alg: CobarAlgebra, u: Element | Word, v: Element | Word, mutation: str | None = None) -> DCompatOutcome:
    """d as a derivation of the bracket, at all three tiers.

    Natural (required): d mu{{u,v}} = mu{{du,v}} + (-1)^{|u|+N} mu{{u,dv}}
    in the cyclic-word quotient.  Merged (info): same identity in the
    algebra itself.  Strict (info): same identity in the tensor square.
    """
    eu, du = _as_word_element(alg, u)
    ev, _ = _as_word_element(alg, v)
    n = alg.bracket_degree
    sign = -1 if (du + n) % 2 else 1
    bb = double_bracket(alg, eu, ev, mutation)
    strict = (
        bb.apply_differential()
        - double_bracket(alg, alg.apply_differential(eu), ev, mutation)
        - double_bracket(alg, eu, alg.apply_differential(ev), mutation).scale(sign)
    )
    merged = (
        alg.apply_differential(bb.merge())
        - induced_bracket(alg, alg.apply_differential(eu), ev, mutation)
        - induced_bracket(alg, eu, alg.apply_differential(ev), mutation).scale(sign)
    )
    natural = project_cyclic(merged)
    natural_residual = "0" if not natural else ", ".join(
        f"{c}*[{alg.format_word(w)}]" for w, c in sorted(natural.items())
    )
    return DCompatOutcome(
        (u, v),
        not natural,
        merged.is_zero(),
        strict.is_zero(),
        natural_residual,
        alg.format_element(merged),
        format_double(strict),
    )


# ---------------------------------------------------------------------------
# The axiom suite
# ---------------------------------------------------------------------------


@dataclass
class AxiomFamily:
    name: str
    required: bool
    checked: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, passed: bool, describe: str) -> None:
        self.checked += 1
        if not passed:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(describe)

    @property
    def passed(self) -> bool:
        return self.failed == 0


@dataclass
class AxiomReport:
    algebra: str
    max_weight: int
    triple_max_weight: int
    families: list[AxiomFamily] = field(default_factory=list)

    @property
    def required_passed(self) -> bool:
        return all(f.passed for f in self.families if f.required)

    def family(self, name: str) -> AxiomFamily:
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(name)

    def format_text(self) -> str:
        lines = [
            f"axiom suite for {self.algebra}: pair weight <= {self.max_weight}, "
            f"triple weight <= {self.triple_max_weight}"
        ]
        for f in self.families:
            status = "pass" if f.passed else "FAIL"
            tag = "required" if f.required else "info"
            lines.append(f"  [{status}] ({tag}) {f.name}: {f.checked - f.failed}/{f.checked}")
            for msg in f.failures:
                lines.append(f"      witness: {msg}")
        lines.append(f"  required families: {'pass' if self.required_passed else 'FAIL'}")
        return "\n".join(lines)


def axiom_suite(
    alg: CobarAlgebra,
    max_weight: int,
    triple_max_weight: int | None = None,
    mutation: str | None = None,
) -> AxiomReport:
    """Exhaustive run of all four axiom families over basis words.

    Pairs (skew, d-compatibility) range over words of total weight at most
    max_weight; triples (outer derivation, double Jacobi) over total weight
    at most triple_max_weight (defaults to max_weight - 1).
    """
    if triple_max_weight is None:
        triple_max_weight = max(max_weight - 1, 0)
    words = [w for w in alg.words_up_to_weight(max_weight)]
    by_weight: dict[int, list[Word]] = {}
    for w in words:
        by_weight.setdefault(alg.word_weight(w), []).append(w)

    skew = AxiomFamily("skew-symmetry", True)
    dnatural = AxiomFamily("d-compat-natural", True)
    dmerged = AxiomFamily("d-compat-merged", False)
    dstrict = AxiomFamily("d-compat-strict", False)
    outer = AxiomFamily("outer-derivation", True)
    jacobi = AxiomFamily("double-jacobi", True)

    def describe(ws: Iterable[Word]) -> str:
        return "(" + ", ".join(alg.format_word(w) for w in ws) + ")"

    for wu in words:
        for wv in words:
            if alg.word_weight(wu) + alg.word_weight(wv) > max_weight:
                continue
            out = check_skew(alg, wu, wv, mutation)
            skew.record(out.passed, describe((wu, wv)) + " residual " + out.residual)
            dc = check_d_compat(alg, wu, wv, mutation)
            dnatural.record(dc.natural_passed, describe((wu, wv)) + " residual " + dc.natural_residual)
            dmerged.record(dc.merged_passed, describe((wu, wv)) + " residual " + dc.merged_residual)
            dstrict.record(dc.strict_passed, describe((wu, wv)) + " residual " + dc.strict_residual)

    nonempty = [w for w in words if w]
    for wu in nonempty:
        for wv in nonempty:
            for ww in nonempty:
                if alg.word_weight(wu) + alg.word_weight(wv) + alg.word_weight(ww) > triple_max_weight:
                    continue
                out = check_outer_derivation(alg, wu, wv, ww, mutation)
                outer.record(out.passed, describe((wu, wv, ww)) + " residual " + out.residual)
                out = check_double_jacobi(alg, wu, wv, ww, mutation)
                jacobi.record(out.passed, describe((wu, wv, ww)) + " residual " + out.residual)

    name = getattr(alg.source, "name", "coalgebra")
    report = AxiomReport(name, max_weight, triple_max_weight)
    report.families = [outer, skew, jacobi, dnatural, dmerged, dstrict]
    return report
