"""Graded generators, noncommutative words and free DG algebras.

Everything is bigraded: a homological degree (the differential has degree -1)
and a nonnegative weight preserved by all structure maps.  The weight grading
is what keeps every (degree, weight) slice finite-dimensional, so it is
mandatory on all generators.

Words are stored as tuples of generator indices; elements as sparse maps
word -> Fraction with deterministic iteration for printable output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

Word = tuple[int, ...]
EMPTY_WORD: Word = ()


class MixedAlgebras(Exception):
    """Operands belong to different algebras."""


class InfiniteSlice(Exception):
    """A (degree, weight) slice cannot be bounded by the weight grading."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    weight: int

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError(f"generator {self.name} has negative weight")


def koszul_sign(moved: Sequence[int], past: Sequence[int]) -> int:
    """Sign acquired by moving the block `moved` past the block `past`.

    Equals (-1)**(sum over pairs of degree products), i.e. the Koszul rule
    applied pairwise.
    """
    return -1 if (sum(moved) % 2) and (sum(past) % 2) else 1


def koszul_permutation_sign(degrees: Sequence[int], permutation: Sequence[int]) -> int:
    """Koszul sign of reordering graded symbols.

    `permutation[k]` is the source position of the symbol landing at target
    position k.  Each inverted pair of odd-degree symbols contributes -1.
    """
    sign = 1
    for a, b in itertools.combinations(range(len(permutation)), 2):
        if permutation[a] > permutation[b]:
            if degrees[permutation[a]] % 2 and degrees[permutation[b]] % 2:
                sign = -sign
    return sign


class Element:
    """Sparse rational combination of words over a fixed algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "FreeDGAlgebra", terms: Mapping[Word, Fraction | int] | None = None):
        self.alg = alg
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                self.terms[tuple(w)] = c

    def copy(self) -> "Element":
        return Element(self.alg, self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Element") -> None:
        if self.alg is not other.alg:
            raise MixedAlgebras("elements over different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Fraction(0)) + c
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return Element(self.alg, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.alg, {w: -c for w, c in self.terms.items()})

    def scale(self, c: Fraction | int) -> "Element":
        c = Fraction(c)
        if c == 0:
            return Element(self.alg)
        return Element(self.alg, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def split_homogeneous(self) -> dict[tuple[int, int], "Element"]:
        """Split into (degree, weight)-homogeneous parts."""
        parts: dict[tuple[int, int], dict[Word, Fraction]] = {}
        for w, c in self.terms.items():
            key = (self.alg.word_degree(w), self.alg.word_weight(w))
            parts.setdefault(key, {})[w] = c
        return {k: Element(self.alg, v) for k, v in parts.items()}

    def homogeneous_degree(self) -> int | None:
        degs = {self.alg.word_degree(w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_weight(self) -> int | None:
        wts = {self.alg.word_weight(w) for w in self.terms}
        return wts.pop() if len(wts) == 1 else None

    def __repr__(self) -> str:
        return f"Element({self.alg.format_element(self)})"


class FreeDGAlgebra:
    """Free associative algebra on graded generators with a square-zero
    degree -1 differential given on generators.

    diff_rules maps generator name -> Element; missing names mean zero.
    Construction validates degree/weight homogeneity of every rule and
    d(d(g)) = 0 unless check=False (used by tests that need broken input).
    """

    def __init__(
        self,
        generators: Sequence[Generator],
        diff_rules: Mapping[str, "Element"] | None = None,
        check: bool = True,
    ):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.generators = list(generators)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self._diff: dict[int, Element] = {}
        for name, elt in (diff_rules or {}).items():
            if name not in self.index:
                raise ValueError(f"differential rule for unknown generator {name}")
            if elt.alg is not None and elt.alg is not self:
                # rules are usually built through alg.element after construction;
                # allow terms given as raw dicts bound later
                pass
            self._diff[self.index[name]] = elt
        if check:
            report = self.check_differential()
            if not report.passed:
                raise ValueError(f"invalid differential: {report.failures[0]}")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def build(
        cls,
        generators: Sequence[Generator],
        diff_words: Mapping[str, Mapping[Word, Fraction | int]] | None = None,
        check: bool = True,
    ) -> "FreeDGAlgebra":
        """Build with differential rules given as raw word->coefficient maps."""
        alg = cls(generators, None, check=False)
        for name, terms in (diff_words or {}).items():
            alg._diff[alg.index[name]] = Element(alg, terms)
        if check:
            report = alg.check_differential()
            if not report.passed:
                raise ValueError(f"invalid differential: {report.failures[0]}")
        return alg

    def element(self, terms: Mapping[Word, Fraction | int]) -> Element:
        return Element(self, terms)

    def zero(self) -> Element:
        return Element(self)

    def one(self) -> Element:
        return Element(self, {EMPTY_WORD: 1})

    def gen(self, name: str) -> Element:
        return Element(self, {(self.index[name],): 1})

    def word(self, *names: str) -> Word:
        return tuple(self.index[n] for n in names)

    # -- gradings -------------------------------------------------------------

    def letter_degree(self, i: int) -> int:
        return self.generators[i].degree

    def word_degree(self, w: Word) -> int:
        return sum(self.generators[i].degree for i in w)

    def word_weight(self, w: Word) -> int:
        return sum(self.generators[i].weight for i in w)

    def letter_degrees(self, w: Word) -> list[int]:
        return [self.generators[i].degree for i in w]

    # -- operations -------------------------------------------------------------

    def multiply(self, a: Element, b: Element) -> Element:
        if a.alg is not self or b.alg is not self:
            raise MixedAlgebras("multiply called with foreign elements")
        out: dict[Word, Fraction] = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                w = wa + wb
                s = out.get(w, Fraction(0)) + ca * cb
                if s == 0:
                    out.pop(w, None)
                else:
                    out[w] = s
        return Element(self, out)

    def diff_of_generator(self, i: int) -> Element:
        return self._diff.get(i, Element(self))

    def apply_differential(self, e: Element) -> Element:
        """Degree -1 derivation extending the generator rules.

        d(uv) = (du)v + (-1)^{|u|} u (dv); implemented letterwise with the
        sign of the prefix degree.
        """
        out = Element(self)
        for w, c in e.terms.items():
            prefix_deg = 0
            for pos, letter in enumerate(w):
                dgen = self._diff.get(letter)
                if dgen and dgen.terms:
                    sign = -1 if prefix_deg % 2 else 1
                    for dw, dc in dgen.terms.items():
                        nw = w[:pos] + dw + w[pos + 1 :]
                        coeff = c * dc * sign
                        s = out.terms.get(nw, Fraction(0)) + coeff
                        if s == 0:
                            out.terms.pop(nw, None)
                        else:
                            out.terms[nw] = s
                prefix_deg += self.generators[letter].degree
        return out

    def check_differential(self) -> "DifferentialReport":
        """Check degree -1, weight preservation and d*d = 0 on generators."""
        failures = []
        for i, g in enumerate(self.generators):
            dg = self._diff.get(i)
            if dg is None or dg.is_zero():
                continue
            for w in dg.terms:
                if self.word_degree(w) != g.degree - 1:
                    failures.append(f"d({g.name}) term of degree {self.word_degree(w)}, expected {g.degree - 1}")
                if self.word_weight(w) != g.weight:
                    failures.append(f"d({g.name}) term of weight {self.word_weight(w)}, expected {g.weight}")
            dd = self.apply_differential(dg)
            if not dd.is_zero():
                failures.append(f"d(d({g.name})) nonzero: {self.format_element(dd)}")
        return DifferentialReport(failures)

    def slice_basis(self, degree: int, weight: int) -> list[Word]:
        """All words of the given degree and weight, ordered (length, lex).

        Requires all generator weights >= 1 so the slice is finite.
        """
        if weight < 0:
            return []
        if any(g.weight < 1 for g in self.generators):
            raise InfiniteSlice("a weight-0 generator makes degree slices infinite")
        found: list[Word] = []

        def extend(prefix: list[int], deg: int, wt: int) -> None:
            if wt == weight and deg == degree:
                found.append(tuple(prefix))
            if wt >= weight:
                return
            for i, g in enumerate(self.generators):
                if wt + g.weight <= weight:
                    prefix.append(i)
                    extend(prefix, deg + g.degree, wt + g.weight)
                    prefix.pop()

        extend([], 0, 0)
        found.sort(key=lambda w: (len(w), w))
        return found

    def rotation_normal_form(self, w: Word) -> tuple[Word, int] | None:
        """Canonical representative of a word as a cyclic word.

        Rotating the first k letters past the rest costs the Koszul sign of
        the two blocks.  The representative is the lexicographically least
        rotation; when two rotations produce the same least word with
        opposite signs the cyclic class is zero and None is returned.
        """
        if not w:
            return w, 1
        k = len(w)
        degs = [self.generators[i].degree for i in w]
        best: Word | None = None
        best_sign = 1
        zero = False
        prefix_deg = 0
        total_deg = sum(degs)
        for r in range(k):
            rotated = w[r:] + w[:r]
            sign = -1 if (prefix_deg % 2 and (total_deg - prefix_deg) % 2) else 1
            if best is None or rotated < best:
                best, best_sign, zero = rotated, sign, False
            elif rotated == best and sign != best_sign:
                zero = True
            prefix_deg += degs[r]
        if zero:
            return None
        assert best is not None
        return best, best_sign

    def words_up_to_weight(self, max_weight: int) -> list[Word]:
        """All words of weight <= max_weight (including the empty word)."""
        if any(g.weight < 1 for g in self.generators):
            raise InfiniteSlice("a weight-0 generator makes weight slices infinite")
        out: list[Word] = []

        def extend(prefix: list[int], wt: int) -> None:
            out.append(tuple(prefix))
            for i, g in enumerate(self.generators):
                if wt + g.weight <= max_weight:
                    prefix.append(i)
                    extend(prefix, wt + g.weight)
                    prefix.pop()

        extend([], 0)
        out.sort(key=lambda w: (len(w), w))
        return out

    # -- formatting -------------------------------------------------------------

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for letter, group in itertools.groupby(w):
            k = len(list(group))
            name = self.generators[letter].name
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)

    def format_element(self, e: Element) -> str:
        if e.is_zero():
            return "0"
        bits = []
        for w, c in e.sorted_terms():
            word_str = self.format_word(w)
            if c == 1 and w:
                term = word_str
            elif c == -1 and w:
                term = f"-{word_str}"
            elif not w:
                term = str(c)
            else:
                term = f"{c}*{word_str}"
            bits.append(term)
        text = bits[0]
        for term in bits[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text


@dataclass
class DifferentialReport:
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def multiply(a: Element, b: Element) -> Element:
    return a.alg.multiply(a, b)


def apply_differential(alg: FreeDGAlgebra, e: Element) -> Element:
    return alg.apply_differential(e)


def check_d_squared(alg: FreeDGAlgebra) -> DifferentialReport:
    return alg.check_differential()


def slice_basis(alg: FreeDGAlgebra, degree: int, weight: int) -> list[Word]:
    return alg.slice_basis(degree, weight)


# ---------------------------------------------------------------------------
# Graded-commutative polynomial algebras (carriers of representation algebras)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommGenerator:
    name: str
    degree: int
    weight: int


Monomial = tuple[int, ...]  # sorted generator indices, odd indices distinct


class CommAlgebra:
    """Free graded-commutative algebra on CommGenerators.

    Monomials are kept in canonical form: generator indices sorted
    ascending, with the Koszul sign of the sorting permutation absorbed in
    the coefficient; a repeated odd generator kills the monomial.
    """

    def __init__(self, generators: Sequence[CommGenerator]):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate commutative generator names")
        self.generators = list(generators)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self._odd = [g.degree % 2 == 1 for g in self.generators]

    def normalize(self, letters: Sequence[int]) -> tuple[Monomial, int]:
        """Sort letters, returning (canonical monomial, Koszul sign); sign 0
        when an odd generator repeats."""
        odd = self._odd
        if not any(odd[i] for i in letters):
            return tuple(sorted(letters)), 1
        letters = list(letters)
        sign = 1
        # insertion sort, counting transpositions of odd pairs
        for i in range(1, len(letters)):
            j = i
            while j > 0 and letters[j - 1] > letters[j]:
                if odd[letters[j - 1]] and odd[letters[j]]:
                    sign = -sign
                letters[j - 1], letters[j] = letters[j], letters[j - 1]
                j -= 1
        for a, b in zip(letters, letters[1:]):
            if a == b and odd[a]:
                return tuple(letters), 0
        return tuple(letters), sign

    def monomial_degree(self, m: Monomial) -> int:
        return sum(self.generators[i].degree for i in m)

    def monomial_weight(self, m: Monomial) -> int:
        return sum(self.generators[i].weight for i in m)

    def format_monomial(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        for letter, group in itertools.groupby(m):
            k = len(list(group))
            name = self.generators[letter].name
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)

    def slice_monomials(self, degree: int, weight: int) -> list[Monomial]:
        """Canonical monomials of the given degree and weight."""
        if any(g.weight < 1 for g in self.generators):
            raise InfiniteSlice("a weight-0 commutative generator makes slices infinite")
        found: list[Monomial] = []
        n = len(self.generators)

        def extend(start: int, current: list[int], deg: int, wt: int) -> None:
            if wt == weight and deg == degree:
                found.append(tuple(current))
            if wt >= weight:
                return
            for i in range(start, n):
                g = self.generators[i]
                if current and current[-1] == i and g.degree % 2:
                    continue
                if wt + g.weight <= weight:
                    current.append(i)
                    extend(i, current, deg + g.degree, wt + g.weight)
                    current.pop()

        extend(0, [], 0, 0)
        found.sort(key=lambda m: (len(m), m))
        return found


class CommElement:
    """Sparse rational combination of canonical commutative monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: CommAlgebra, terms: Mapping[Monomial, Fraction | int] | None = None):
        self.alg = alg
        self.terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            mono, sign = alg.normalize(m)
            if sign == 0:
                continue
            c = Fraction(c) * sign
            if c == 0:
                continue
            s = self.terms.get(mono, Fraction(0)) + c
            if s == 0:
                self.terms.pop(mono, None)
            else:
                self.terms[mono] = s

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "CommElement") -> None:
        if self.alg is not other.alg:
            raise MixedAlgebras("commutative elements over different algebras")

    def __add__(self, other: "CommElement") -> "CommElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        res = CommElement(self.alg)
        res.terms = out
        return res

    def __sub__(self, other: "CommElement") -> "CommElement":
        return self + (-other)

    def __neg__(self) -> "CommElement":
        res = CommElement(self.alg)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def scale(self, c: Fraction | int) -> "CommElement":
        c = Fraction(c)
        res = CommElement(self.alg)
        if c != 0:
            res.terms = {m: c * v for m, v in self.terms.items()}
        return res

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def homogeneous_degree(self) -> int | None:
        degs = {self.alg.monomial_degree(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __repr__(self) -> str:
        return f"CommElement({format_comm_element(self)})"


def comm_multiply(a: CommElement, b: CommElement) -> CommElement:
    """Graded-commutative product with canonical renormalization."""
    a._check(b)
    out = CommElement(a.alg)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            mono, sign = a.alg.normalize(list(ma) + list(mb))
            if sign == 0:
                continue
            c = ca * cb * sign
            s = out.terms.get(mono, Fraction(0)) + c
            if s == 0:
                out.terms.pop(mono, None)
            else:
                out.terms[mono] = s
    return out


def format_comm_element(e: CommElement) -> str:
    if e.is_zero():
        return "0"
    bits = []
    for m, c in e.sorted_terms():
        mono = e.alg.format_monomial(m)
        if not m:
            bits.append(str(c))
        elif c == 1:
            bits.append(mono)
        elif c == -1:
            bits.append(f"-{mono}")
        else:
            bits.append(f"{c}*{mono}")
    text = bits[0]
    for term in bits[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text
