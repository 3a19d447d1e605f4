"""Commutator quotients, cyclic words and the induced Lie bracket.

The commutator quotient of a free algebra has the signed necklaces (cyclic
words) as a basis: each word is rewritten to its lexicographically least
rotation, picking up the Koszul sign of the rotation, and words that are
minus themselves under some rotation die.  The reduced quotient
additionally kills the unit, i.e. constants.

The induced bracket (multiplication composed with the double bracket)
descends to this quotient and the differential acts on it; homology of a
(degree, weight) slice and the bracket it carries are computed through the
exact linear algebra engine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from . import exactla
from .cobar_bracket import CobarAlgebra, induced_bracket
from .graded_core import EMPTY_WORD, Element, FreeDGAlgebra, Word


class NotACycle(Exception):
    """Input to a homology-level operation is not closed."""


class NaturalElement:
    """Element of the commutator quotient in cyclic-word normal form.

    reduced=True means the class lives in the quotient that also kills the
    unit (so constants are dropped).
    """

    __slots__ = ("alg", "reduced", "terms")

    def __init__(
        self,
        alg: FreeDGAlgebra,
        terms: Mapping[Word, Fraction | int] | None = None,
        reduced: bool = False,
    ):
        self.alg = alg
        self.reduced = reduced
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            nf = alg.rotation_normal_form(tuple(w))
            if nf is None:
                continue
            canon, sign = nf
            if reduced and canon == EMPTY_WORD:
                continue
            s = self.terms.get(canon, Fraction(0)) + sign * c
            if s == 0:
                self.terms.pop(canon, None)
            else:
                self.terms[canon] = s

    def is_zero(self) -> bool:
        return not self.terms

    def lift(self) -> Element:
        """Canonical lift: each necklace read as the word of its normal form."""
        return Element(self.alg, self.terms)

    def _check(self, other: "NaturalElement") -> None:
        if self.alg is not other.alg or self.reduced != other.reduced:
            raise ValueError("incompatible natural elements")

    def __add__(self, other: "NaturalElement") -> "NaturalElement":
        self._check(other)
        out = NaturalElement(self.alg, None, self.reduced)
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            s = out.terms.get(w, Fraction(0)) + c
            if s == 0:
                out.terms.pop(w, None)
            else:
                out.terms[w] = s
        return out

    def __sub__(self, other: "NaturalElement") -> "NaturalElement":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "NaturalElement":
        c = Fraction(c)
        out = NaturalElement(self.alg, None, self.reduced)
        if c != 0:
            out.terms = {w: c * v for w, v in self.terms.items()}
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NaturalElement):
            return NotImplemented
        return self.alg is other.alg and self.reduced == other.reduced and self.terms == other.terms

    def __hash__(self):
        return hash((self.reduced, frozenset(self.terms.items())))

    def homogeneous_bidegree(self) -> tuple[int, int] | None:
        keys = {(self.alg.word_degree(w), self.alg.word_weight(w)) for w in self.terms}
        return keys.pop() if len(keys) == 1 else None

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __repr__(self) -> str:
        return f"NaturalElement({format_natural(self)})"


def format_natural(ne: NaturalElement) -> str:
    if ne.is_zero():
        return "0"
    bits = []
    for w, c in ne.sorted_terms():
        body = f"[{ne.alg.format_word(w)}]"
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


def project_natural(alg: FreeDGAlgebra, e: Element, reduced: bool = False) -> NaturalElement:
    """Class of an element in the (possibly reduced) commutator quotient."""
    return NaturalElement(alg, e.terms, reduced)


def natural_differential(alg: FreeDGAlgebra, ne: NaturalElement) -> NaturalElement:
    """Differential descended to the quotient: differentiate a lift and
    re-project (independent of the lift)."""
    return project_natural(alg, alg.apply_differential(ne.lift()), ne.reduced)


def natural_bracket(alg: CobarAlgebra, a: NaturalElement, b: NaturalElement, mutation: str | None = None) -> NaturalElement:
    """Induced Lie bracket on the quotient: lift, bracket, re-project."""
    out = induced_bracket(alg, a.lift(), b.lift(), mutation)
    return project_natural(alg, out, a.reduced or b.reduced)


# ---------------------------------------------------------------------------
# Slice homology of the quotient complex
# ---------------------------------------------------------------------------


def natural_slice_basis(alg: FreeDGAlgebra, degree: int, weight: int, reduced: bool = False) -> list[Word]:
    """Deterministic necklace basis of the (degree, weight) slice."""
    seen: set[Word] = set()
    out: list[Word] = []
    for w in alg.slice_basis(degree, weight):
        nf = alg.rotation_normal_form(w)
        if nf is None:
            continue
        canon, _ = nf
        if reduced and canon == EMPTY_WORD:
            continue
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    out.sort(key=lambda w: (len(w), w))
    return out


def _slice_matrix(
    alg: FreeDGAlgebra, source: list[Word], target: list[Word], reduced: bool
) -> exactla.RatMatrix:
    """Matrix of the descended differential between necklace slice bases."""
    index = {w: i for i, w in enumerate(target)}
    entries: dict[tuple[int, int], Fraction] = {}
    for j, w in enumerate(source):
        img = natural_differential(alg, NaturalElement(alg, {w: 1}, reduced))
        for iw, c in img.terms.items():
            entries[(index[iw], j)] = c
    return exactla.RatMatrix(len(target), len(source), entries)


def natural_slice_homology(
    alg: FreeDGAlgebra, degree: int, weight: int, reduced: bool = False
) -> tuple[int, list[NaturalElement]]:
    """Homology of the quotient complex in one (degree, weight) slice."""
    mid = natural_slice_basis(alg, degree, weight, reduced)
    above = natural_slice_basis(alg, degree + 1, weight, reduced)
    below = natural_slice_basis(alg, degree - 1, weight, reduced)
    d_in = _slice_matrix(alg, above, mid, reduced)
    d_out = _slice_matrix(alg, mid, below, reduced)
    dim, reps = exactla.homology_slice(d_in, d_out)
    out = []
    for vec in reps:
        ne = NaturalElement(alg, None, reduced)
        ne.terms = {mid[i]: c for i, c in vec.items()}
        out.append(ne)
    return dim, out


def reduce_mod_boundaries(alg: FreeDGAlgebra, ne: NaturalElement) -> NaturalElement:
    """Canonical representative of a class modulo boundaries in its slice.

    The zero output characterizes classes that are boundaries; inputs must
    be (degree, weight)-homogeneous.
    """
    if ne.is_zero():
        return ne
    key = ne.homogeneous_bidegree()
    if key is None:
        raise ValueError("reduce_mod_boundaries needs a homogeneous element")
    degree, weight = key
    mid = natural_slice_basis(alg, degree, weight, ne.reduced)
    above = natural_slice_basis(alg, degree + 1, weight, ne.reduced)
    d_in = _slice_matrix(alg, above, mid, ne.reduced)
    boundaries = exactla.image(d_in)
    index = {w: i for i, w in enumerate(mid)}
    vec = {index[w]: c for w, c in ne.terms.items()}
    red = boundaries.reduce(vec)
    out = NaturalElement(alg, None, ne.reduced)
    out.terms = {mid[i]: c for i, c in red.items()}
    return out


def homology_bracket(
    alg: CobarAlgebra, a: NaturalElement, b: NaturalElement, mutation: str | None = None
) -> NaturalElement:
    """Bracket of homology classes, returned as the canonical reduced
    representative; raises NotACycle on non-closed input."""
    for ne in (a, b):
        if not natural_differential(alg, ne).is_zero():
            raise NotACycle(f"{format_natural(ne)} is not closed")
    out = natural_bracket(alg, a, b, mutation)
    if out.is_zero():
        return out
    return reduce_mod_boundaries(alg, out)


def classes_agree(alg: CobarAlgebra, a: NaturalElement, b: NaturalElement) -> bool:
    """Whether two homogeneous elements represent the same homology class."""
    diff = a - b
    if diff.is_zero():
        return True
    return reduce_mod_boundaries(alg, diff).is_zero()


# ---------------------------------------------------------------------------
# The polynomial-ring identification of degree-1 classes with one-forms
# ---------------------------------------------------------------------------


def one_form_cycle(alg: CobarAlgebra, a: int, b: int, dvar: str, reduced: bool = True) -> NaturalElement:
    """Degree-1 cycle corresponding to the monomial one-form x^a y^b d(dvar).

    Pinned by the certified instance: y^q dx corresponds to the class of
    q y^{q-1} t.  The general recipe distributes the t-letter through the
    differentiated variable's positions:

        x^a y^b dx  ->  sum_{i=1..b} [x^a y^{b-i} t y^{i-1}]
        x^a y^b dy  ->  - sum_{j=1..a} [x^{a-j} t x^{j-1} y^b]

    Exact one-forms map to boundaries, so the recipe kills d(anything);
    instances beyond the certified ones are exercised by tests but should
    be treated as experimental.
    """
    ix, iy, it = alg.index["x"], alg.index["y"], alg.index["t"]
    terms: dict[Word, Fraction] = {}
    if dvar == "x":
        for i in range(1, b + 1):
            w = (ix,) * a + (iy,) * (b - i) + (it,) + (iy,) * (i - 1)
            terms[w] = terms.get(w, Fraction(0)) + 1
    elif dvar == "y":
        for j in range(1, a + 1):
            w = (ix,) * (a - j) + (it,) + (ix,) * (j - 1) + (iy,) * b
            terms[w] = terms.get(w, Fraction(0)) - 1
    else:
        raise ValueError("dvar must be 'x' or 'y'")
    return NaturalElement(alg, terms, reduced)


def power_word_class(alg: CobarAlgebra, i: int, j: int, reduced: bool = True) -> NaturalElement:
    """Class of the monomial word x^i y^j in the quotient."""
    ix, iy = alg.index["x"], alg.index["y"]
    return NaturalElement(alg, {(ix,) * i + (iy,) * j: 1}, reduced)


def one_form_coordinates(alg: CobarAlgebra, ne: NaturalElement) -> list[tuple[int, int, Fraction]] | None:
    """Express a degree-1 class in the one-form basis x^a y^{w-1-a} dx.

    Returns [(a, b, coefficient)] with b = w-1-a, or None when the input is
    not a homogeneous degree-1 cycle class of positive weight."""
    if ne.is_zero():
        return []
    key = ne.homogeneous_bidegree()
    if key is None or key[0] != 1:
        return None
    weight = key[1]
    mid = natural_slice_basis(alg, 1, weight, ne.reduced)
    index = {w: i for i, w in enumerate(mid)}
    forms = [(a, weight - 1 - a) for a in range(0, weight - 1)]
    columns = []
    for a, b in forms:
        cyc = reduce_mod_boundaries(alg, one_form_cycle(alg, a, b, "x", ne.reduced))
        columns.append({index[w]: c for w, c in cyc.terms.items()})
    target = reduce_mod_boundaries(alg, ne)
    columns.append({index[w]: -c for w, c in target.terms.items()})
    m = exactla.RatMatrix.from_columns(len(mid), columns)
    for vec in exactla.kernel(m).basis:
        last = vec.get(len(forms), Fraction(0))
        if last:
            scale = Fraction(1) / last
            return [
                (forms[i][0], forms[i][1], vec.get(i, Fraction(0)) * scale)
                for i in range(len(forms))
                if vec.get(i, Fraction(0))
            ]
    return None


def format_one_form(coords: list[tuple[int, int, Fraction]]) -> str:
    if not coords:
        return "0"
    bits = []
    for a, b, c in coords:
        body = "*".join(
            ["x" if a == 1 else f"x^{a}"] * (a > 0) + ["y" if b == 1 else f"y^{b}"] * (b > 0) + ["dx"]
        )
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
