"""Cyclic and Hochschild complexes of a coalgebra, and the comparison with
the cobar quotient.

Tensor powers of the coalgebra are graded by shifted total degree (the
degree of the corresponding cobar word), so all slices line up with the
cobar picture.  The operators are generated mechanically by the same Koszul
conventions as the cobar differential:

    T  = rotation of the first letter to the end, shifted Koszul sign
         (reduces to the simplicial (-1)^{n-1} for ungraded letters);
    N  = 1 + T + ... + T^{n-1};
    b' = coproduct insertion at every letter, with the shifted prefix sign
         (reduces to the simplicial (-1)^{i-1}) - the coproduct part of the
         cobar differential;
    b  = b' + wrap, where wrap inserts the coproduct at the first letter
         and carries the new first letter past everything to the end.

The insertion runs over every letter, including the last: dualizing the
face maps of the algebra-side complex produces one insertion per letter,
and the validated identity set

    b'b' = 0,  bb = 0,  (1-T) b = b' (1-T),  b N = N b'

holds for this convention and fails if the last insertion is dropped.
When the coalgebra carries a nonzero differential, its letterwise
insertion (the internal part of the cobar differential) is added to both
column differentials.

The cyclic complex of a slice is ker(1 - T) with the restricted column
differential; the cobar quotient's necklace complex is coker(1 - T) with
the full cobar differential, and the norm N descends to an isomorphism of
complexes between the two, certified slice by slice by compare_with_cobar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exactla
from .cobar_bracket import CobarAlgebra, cobar
from .cyclic_coalgebra import CyclicCoalgebra, insertion_coefficients
from .graded_core import Word
from .natural_quotient import NaturalElement, natural_differential, natural_slice_basis, natural_slice_homology

Tensor = tuple[int, ...]


class NotAComplexSlice(Exception):
    """A slice differential fails to close or to square to zero."""


class TensorSlice:
    """Basis of homogeneous n-fold tensors of fixed shifted degree and weight."""

    def __init__(self, c: CyclicCoalgebra, n: int, degree: int, weight: int):
        self.c = c
        self.n = n
        self.degree = degree
        self.weight = weight
        self.basis: list[Tensor] = []
        if n >= 1:
            self._enumerate((), 0, 0)
        self.basis.sort()
        self.index = {t: i for i, t in enumerate(self.basis)}

    def _enumerate(self, prefix: Tensor, deg: int, wt: int) -> None:
        if len(prefix) == self.n:
            if deg == self.degree and wt == self.weight:
                self.basis.append(prefix)
            return
        remaining = self.n - len(prefix)
        for i, g in enumerate(self.c.basis):
            nwt = wt + g.weight
            if nwt + (remaining - 1) > self.weight:
                continue
            self._enumerate(prefix + (i,), deg + g.degree - 1, nwt)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def format_tensor(self, t: Tensor) -> str:
        return "(" + ",".join(self.c.basis[i].name for i in t) + ")"


def _shifted(c: CyclicCoalgebra, i: int) -> int:
    return c.degree(i) - 1


def rotate_tensor(c: CyclicCoalgebra, t: Tensor) -> tuple[Tensor, int]:
    """First letter to the end, with the shifted Koszul sign."""
    if len(t) <= 1:
        return t, 1
    head = _shifted(c, t[0])
    rest = sum(_shifted(c, i) for i in t[1:])
    sign = -1 if (head % 2 and rest % 2) else 1
    return t[1:] + (t[0],), sign


def bprime_terms(c: CyclicCoalgebra, t: Tensor) -> list[tuple[Tensor, Fraction]]:
    """Coproduct insertion at every letter, shifted prefix signs."""
    out = []
    acc = 0
    for pos in range(len(t)):
        psign = -1 if acc % 2 else 1
        for a, b, k in insertion_coefficients(c, t[pos]):
            out.append((t[:pos] + (a, b) + t[pos + 1 :], Fraction(psign * k)))
        acc += _shifted(c, t[pos])
    return out


def wrap_terms(c: CyclicCoalgebra, t: Tensor) -> list[tuple[Tensor, Fraction]]:
    """Coproduct at the first letter, new first letter carried to the end."""
    out = []
    if not t:
        return out
    tail = sum(_shifted(c, i) for i in t[1:])
    for a, b, k in insertion_coefficients(c, t[0]):
        moved = _shifted(c, a)
        past = _shifted(c, b) + tail
        sign = -1 if (moved % 2 and past % 2) else 1
        out.append(((b,) + t[1:] + (a,), Fraction(sign * k)))
    return out


def b_terms(c: CyclicCoalgebra, t: Tensor) -> list[tuple[Tensor, Fraction]]:
    return bprime_terms(c, t) + wrap_terms(c, t)


def internal_terms(c: CyclicCoalgebra, t: Tensor) -> list[tuple[Tensor, Fraction]]:
    """Letterwise coalgebra differential, matching the cobar convention
    d(su) = -s(du)."""
    out = []
    acc = 0
    for pos in range(len(t)):
        psign = -1 if acc % 2 else 1
        for j, coeff in c.diff_of(t[pos]).items():
            out.append((t[:pos] + (j,) + t[pos + 1 :], Fraction(-psign * coeff)))
        acc += _shifted(c, t[pos])
    return out


def _matrix_from_terms(source: TensorSlice, target: TensorSlice, term_fn) -> exactla.RatMatrix:
    entries: dict[tuple[int, int], Fraction] = {}
    for j, t in enumerate(source.basis):
        for nt, coeff in term_fn(source.c, t):
            i = target.index.get(nt)
            if i is None:
                raise ValueError(f"term {nt} escapes the target slice")
            s = entries.get((i, j), Fraction(0)) + coeff
            if s == 0:
                entries.pop((i, j), None)
            else:
                entries[(i, j)] = s
    return exactla.RatMatrix(target.dim, source.dim, entries)


def _ident(n: int) -> exactla.RatMatrix:
    return exactla.RatMatrix(n, n, {(i, i): Fraction(1) for i in range(n)})


def _mat_add(a: exactla.RatMatrix, b: exactla.RatMatrix) -> exactla.RatMatrix:
    entries = dict(a.entries)
    for k, v in b.entries.items():
        s = entries.get(k, Fraction(0)) + v
        if s == 0:
            entries.pop(k, None)
        else:
            entries[k] = s
    return exactla.RatMatrix(a.rows, a.cols, entries)


def _mat_scale(a: exactla.RatMatrix, c: int) -> exactla.RatMatrix:
    return exactla.RatMatrix(a.rows, a.cols, {k: c * v for k, v in a.entries.items()})


def op_T(s: TensorSlice, mutation: str | None = None) -> exactla.RatMatrix:
    entries = {}
    for j, t in enumerate(s.basis):
        nt, sign = rotate_tensor(s.c, t)
        if mutation == "plain-rotation":
            sign = 1
        entries[(s.index[nt], j)] = Fraction(sign)
    return exactla.RatMatrix(s.dim, s.dim, entries)


def op_N(s: TensorSlice, mutation: str | None = None) -> exactla.RatMatrix:
    t_mat = op_T(s, mutation)
    power = _ident(s.dim)
    total = _ident(s.dim)
    for _ in range(s.n - 1):
        power = t_mat.compose(power)
        total = _mat_add(total, power)
    return total


def op_one_minus_T(s: TensorSlice, mutation: str | None = None) -> exactla.RatMatrix:
    return _mat_add(_ident(s.dim), _mat_scale(op_T(s, mutation), -1))


def op_b_prime(s: TensorSlice) -> tuple[exactla.RatMatrix, TensorSlice]:
    target = TensorSlice(s.c, s.n + 1, s.degree - 1, s.weight)
    return _matrix_from_terms(s, target, bprime_terms), target


def op_b(s: TensorSlice) -> tuple[exactla.RatMatrix, TensorSlice]:
    target = TensorSlice(s.c, s.n + 1, s.degree - 1, s.weight)
    return _matrix_from_terms(s, target, b_terms), target


def op_internal(s: TensorSlice) -> tuple[exactla.RatMatrix, TensorSlice]:
    target = TensorSlice(s.c, s.n, s.degree - 1, s.weight)
    return _matrix_from_terms(s, target, internal_terms), target


# ---------------------------------------------------------------------------
# Assembled slice complexes
# ---------------------------------------------------------------------------


def _degree_bounds(c: CyclicCoalgebra, weight: int) -> range:
    if weight <= 0 or c.dim == 0:
        return range(0)
    per_weight = [(_shifted(c, i), c.weight(i)) for i in range(c.dim)]
    lo = min(weight * d // wt - 1 for d, wt in per_weight)
    hi = max((weight * d + wt - 1) // wt + 1 for d, wt in per_weight)
    return range(lo, hi + 2)


class CyclicSliceComplex:
    """ker(1 - T) of one weight with the restricted column differential,
    spaces indexed by shifted degree.

    Basis vectors are pairs (tensor length, sparse tensor combination); the
    kernel subspaces per (length, degree) are kept for coordinate lookups.
    """

    def __init__(self, c: CyclicCoalgebra, weight: int, mutation: str | None = None):
        self.c = c
        self.weight = weight
        self.mutation = mutation
        self.spaces: dict[int, list[tuple[int, dict[Tensor, Fraction]]]] = {}
        self._kernels: dict[tuple[int, int], exactla.Subspace] = {}
        self._positions: dict[tuple[int, int], list[int]] = {}
        for degree in _degree_bounds(c, weight):
            vectors: list[tuple[int, dict[Tensor, Fraction]]] = []
            for n in range(1, weight + 1):
                s = TensorSlice(c, n, degree, weight)
                if not s.dim:
                    continue
                ker = exactla.kernel(op_one_minus_T(s, mutation))
                if ker.dim:
                    self._kernels[(n, degree)] = ker
                    self._positions[(n, degree)] = list(
                        range(len(vectors), len(vectors) + ker.dim)
                    )
                    for vec in ker.basis:
                        vectors.append((n, {s.basis[i]: coeff for i, coeff in vec.items()}))
            if vectors:
                self.spaces[degree] = vectors

    def dim(self, degree: int) -> int:
        return len(self.spaces.get(degree, []))

    def _column_image(self, n: int, vec: dict[Tensor, Fraction]) -> dict[tuple[int, Tensor], Fraction]:
        out: dict[tuple[int, Tensor], Fraction] = {}
        for t, coeff in vec.items():
            for nt, c2 in b_terms(self.c, t):
                key = (n + 1, nt)
                s = out.get(key, Fraction(0)) + coeff * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
            for nt, c2 in internal_terms(self.c, t):
                key = (n, nt)
                s = out.get(key, Fraction(0)) + coeff * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    def coordinates(self, degree: int, image: dict[tuple[int, Tensor], Fraction]) -> dict[int, Fraction]:
        """Coordinates of a tensor combination in the kernel basis of the
        given degree; raises NotAComplexSlice if it lies outside ker(1-T)."""
        out: dict[int, Fraction] = {}
        by_n: dict[int, dict[Tensor, Fraction]] = {}
        for (n, t), coeff in image.items():
            by_n.setdefault(n, {})[t] = coeff
        for n, tvec in by_n.items():
            s = TensorSlice(self.c, n, degree, self.weight)
            ker = self._kernels.get((n, degree))
            coords = None
            if ker is not None:
                coords = ker.coordinates({s.index[t]: c for t, c in tvec.items()})
            if coords is None:
                raise NotAComplexSlice(
                    f"vector leaves ker(1-T) at weight {self.weight}, degree {degree}"
                )
            for local_i, coeff in enumerate(coords):
                if coeff:
                    out[self._positions[(n, degree)][local_i]] = coeff
        return out

    def differential_matrix(self, degree: int) -> exactla.RatMatrix:
        source = self.spaces.get(degree, [])
        target = self.spaces.get(degree - 1, [])
        entries: dict[tuple[int, int], Fraction] = {}
        for j, (n, vec) in enumerate(source):
            img = self._column_image(n, vec)
            for i, coeff in self.coordinates(degree - 1, img).items():
                entries[(i, j)] = coeff
        return exactla.RatMatrix(len(target), len(source), entries)

    def homology_dim(self, degree: int) -> int:
        d_in = self.differential_matrix(degree + 1)
        d_out = self.differential_matrix(degree)
        dim, _ = exactla.homology_slice(d_in, d_out)
        return dim


def cyclic_complex(c: CyclicCoalgebra, max_weight: int, mutation: str | None = None) -> dict[int, CyclicSliceComplex]:
    """Cyclic complexes of all weights up to the bound; construction
    verifies that the differential preserves ker(1 - T) and squares to
    zero on every slice."""
    out = {}
    for w in range(1, max_weight + 1):
        cx = CyclicSliceComplex(c, w, mutation)
        for d in sorted(cx.spaces):
            m1 = cx.differential_matrix(d)
            m2 = cx.differential_matrix(d - 1)
            if not m2.compose(m1).is_zero():
                raise NotAComplexSlice(f"b^2 != 0 at weight {w}, degree {d}")
        out[w] = cx
    return out


# ---------------------------------------------------------------------------
# Comparison with the cobar quotient
# ---------------------------------------------------------------------------


@dataclass
class SliceComparison:
    weight: int
    degree: int
    necklace_dim: int
    cyclic_dim: int
    iso: bool
    chain_map: bool
    homology_necklace: int
    homology_cyclic: int

    @property
    def passed(self) -> bool:
        return (
            self.necklace_dim == self.cyclic_dim
            and self.iso
            and self.chain_map
            and self.homology_necklace == self.homology_cyclic
        )


@dataclass
class ComparisonReport:
    coalgebra: str
    max_weight: int
    rows: list[SliceComparison] = field(default_factory=list)
    failure: str = ""

    @property
    def passed(self) -> bool:
        return not self.failure and all(r.passed for r in self.rows)

    def format_text(self) -> str:
        lines = [f"necklace/cyclic comparison for {self.coalgebra}, weight <= {self.max_weight}"]
        lines.append("  weight degree dim(neck) dim(cc) iso chain H(neck) H(cc)")
        for r in self.rows:
            lines.append(
                f"  {r.weight:6d} {r.degree:6d} {r.necklace_dim:9d} {r.cyclic_dim:7d} "
                f"{'yes' if r.iso else 'NO ':3s} {'yes' if r.chain_map else 'NO ':5s} "
                f"{r.homology_necklace:7d} {r.homology_cyclic:5d}"
            )
        if self.failure:
            lines.append(f"  construction failure: {self.failure}")
        lines.append(f"  overall: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _norm_matrix(cx: CyclicSliceComplex, necklaces: list[Word], degree: int) -> exactla.RatMatrix | None:
    """Matrix of the norm map from necklace classes into the kernel basis;
    None when some image fails to land in ker(1 - T)."""
    cols: list[dict[int, Fraction]] = []
    for word in necklaces:
        tens = tuple(word)
        n = len(tens)
        s = TensorSlice(cx.c, n, degree, cx.weight)
        img_vec = op_N(s, cx.mutation).apply({s.index[tens]: Fraction(1)})
        image = {(n, s.basis[i]): coeff for i, coeff in img_vec.items()}
        try:
            cols.append(cx.coordinates(degree, image))
        except NotAComplexSlice:
            return None
    return exactla.RatMatrix.from_columns(cx.dim(degree), cols)


def compare_with_cobar(
    c: CyclicCoalgebra, max_weight: int, alg: CobarAlgebra | None = None, mutation: str | None = None
) -> ComparisonReport:
    """Certify slice by slice that the norm map is an isomorphism of
    complexes from the necklace complex onto the cyclic complex and that
    homology dimensions agree."""
    if alg is None:
        alg = cobar(c)
    report = ComparisonReport(c.name, max_weight)
    try:
        complexes = cyclic_complex(c, max_weight, mutation)
    except NotAComplexSlice as exc:
        report.failure = str(exc)
        return report
    for w in range(1, max_weight + 1):
        cx = complexes[w]
        degrees = sorted(set(cx.spaces) | {d for d in _degree_bounds(c, w) if natural_slice_basis(alg, d, w)})
        for d in degrees:
            necklaces = natural_slice_basis(alg, d, w)
            below = natural_slice_basis(alg, d - 1, w)
            norm = _norm_matrix(cx, necklaces, d)
            norm_below = _norm_matrix(cx, below, d - 1)
            if norm is None or norm_below is None:
                report.rows.append(SliceComparison(w, d, len(necklaces), cx.dim(d), False, False, -1, -1))
                continue
            iso = len(necklaces) == cx.dim(d) and exactla.rank(norm) == cx.dim(d)
            below_index = {word: i for i, word in enumerate(below)}
            entries: dict[tuple[int, int], Fraction] = {}
            for j, word in enumerate(necklaces):
                img = natural_differential(alg, NaturalElement(alg, {word: 1}))
                for iw, coeff in img.terms.items():
                    entries[(below_index[iw], j)] = coeff
            d_neck = exactla.RatMatrix(len(below), len(necklaces), entries)
            d_cyc = cx.differential_matrix(d)
            chain_ok = _mat_add(norm_below.compose(d_neck), _mat_scale(d_cyc.compose(norm), -1)).is_zero()
            h_neck, _ = natural_slice_homology(alg, d, w, reduced=False)
            h_cyc = cx.homology_dim(d)
            report.rows.append(
                SliceComparison(w, d, len(necklaces), cx.dim(d), iso, chain_ok, h_neck, h_cyc)
            )
    return report


def hochschild_slice_homology(c: CyclicCoalgebra, degree: int, weight: int) -> int:
    """Homology of the full b-column (Hochschild complex) in one slice."""

    def column_basis(d: int) -> list[tuple[int, Tensor]]:
        out = []
        for n in range(1, weight + 1):
            s = TensorSlice(c, n, d, weight)
            out.extend((n, t) for t in s.basis)
        return out

    def column_matrix(d: int) -> exactla.RatMatrix:
        src = column_basis(d)
        tgt = column_basis(d - 1)
        tgt_index = {key: i for i, key in enumerate(tgt)}
        entries: dict[tuple[int, int], Fraction] = {}
        for j, (n, t) in enumerate(src):
            for nt, coeff in b_terms(c, t):
                i = tgt_index.get((n + 1, nt))
                if i is not None:
                    s = entries.get((i, j), Fraction(0)) + coeff
                    entries[(i, j)] = s
            for nt, coeff in internal_terms(c, t):
                i = tgt_index.get((n, nt))
                if i is not None:
                    s = entries.get((i, j), Fraction(0)) + coeff
                    entries[(i, j)] = s
        entries = {k: v for k, v in entries.items() if v != 0}
        return exactla.RatMatrix(len(tgt), len(src), entries)

    dim, _ = exactla.homology_slice(column_matrix(degree + 1), column_matrix(degree))
    return dim
