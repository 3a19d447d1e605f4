"""Exact sparse linear algebra over the rationals.

Kernels, images, quotient bases and homology of matrix slices, all with
fractions.Fraction entries.  This is the engine behind every homology
computation in the package; no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class NotASubspace(Exception):
    """A claimed subspace vector does not lie in the ambient space."""


class NotAComplex(Exception):
    """Composition of two consecutive differentials is nonzero."""


Vector = dict[int, Fraction]


def _clean(entries: Mapping[int, Fraction]) -> Vector:
    return {i: Fraction(v) for i, v in entries.items() if v != 0}


class RatMatrix:
    """Sparse rational matrix with explicit shape.

    Entries are stored in a dict keyed by (row, col); zeros are never stored.
    """

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], Fraction | int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols} matrix")
            v = Fraction(v)
            if v != 0:
                self.entries[(r, c)] = v

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Vector]) -> "RatMatrix":
        cols = list(columns)
        m = cls(rows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v != 0:
                    m.entries[(i, j)] = Fraction(v)
        return m

    def column(self, j: int) -> Vector:
        return {r: v for (r, c), v in self.entries.items() if c == j}

    def apply(self, vec: Mapping[int, Fraction]) -> Vector:
        """Matrix-vector product, vec indexed by column."""
        out: Vector = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x:
                out[r] = out.get(r, Fraction(0)) + v * x
        return _clean(out)

    def compose(self, other: "RatMatrix") -> "RatMatrix":
        """self @ other (apply other first)."""
        if other.rows != self.cols:
            raise ValueError("shape mismatch in composition")
        result = RatMatrix(self.rows, other.cols)
        by_col: dict[int, Vector] = {}
        for (r, c), v in other.entries.items():
            by_col.setdefault(c, {})[r] = v
        for c, col in by_col.items():
            img = self.apply(col)
            for r, v in img.items():
                result.entries[(r, c)] = v
        return result

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _row_reduce(rows: list[Vector]) -> list[Vector]:
    """Reduced echelon form of a list of sparse row vectors.

    Pivot selection among candidate rows prefers the entry with the smallest
    numerator magnitude (then smallest denominator) to limit coefficient
    growth.  Output rows are pivot-normalized to 1, fully reduced, sorted by
    pivot position.
    """
    work = [dict(r) for r in rows if r]
    echelon: list[Vector] = []
    while work:
        # pick the row whose leading column is smallest; break ties by size
        def lead(r: Vector) -> int:
            return min(r)

        col = min(lead(r) for r in work)
        candidates = [r for r in work if lead(r) == col]
        candidates.sort(key=lambda r: (abs(r[col].numerator), r[col].denominator))
        pivot_row = candidates[0]
        work.remove(pivot_row)
        inv = Fraction(1) / pivot_row[col]
        pivot_row = {c: v * inv for c, v in pivot_row.items()}
        echelon.append(pivot_row)
        next_work = []
        for r in work:
            coeff = r.get(col)
            if coeff:
                r = {c: v for c, v in r.items()}
                for c, v in pivot_row.items():
                    nv = r.get(c, Fraction(0)) - coeff * v
                    if nv == 0:
                        r.pop(c, None)
                    else:
                        r[c] = nv
            if r:
                next_work.append(r)
        work = next_work
    # back-substitute to reach fully reduced form
    echelon.sort(key=lambda r: min(r))
    for i in range(len(echelon) - 1, -1, -1):
        piv = min(echelon[i])
        for j in range(i):
            coeff = echelon[j].get(piv)
            if coeff:
                row = echelon[j]
                for c, v in echelon[i].items():
                    nv = row.get(c, Fraction(0)) - coeff * v
                    if nv == 0:
                        row.pop(c, None)
                    else:
                        row[c] = nv
    return echelon


class Subspace:
    """Subspace of Q^n presented by a reduced-echelon basis of sparse vectors."""

    def __init__(self, ambient_dim: int, vectors: Iterable[Vector] = ()):
        self.ambient_dim = ambient_dim
        cleaned = []
        for v in vectors:
            v = _clean(v)
            if any(not (0 <= i < ambient_dim) for i in v):
                raise ValueError("vector index outside ambient dimension")
            if v:
                cleaned.append(v)
        self.basis: list[Vector] = _row_reduce(cleaned)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Mapping[int, Fraction]) -> Vector:
        """Remainder of vec after elimination against the basis."""
        v = _clean(vec)
        for b in self.basis:
            piv = min(b)
            coeff = v.get(piv)
            if coeff:
                for c, bv in b.items():
                    nv = v.get(c, Fraction(0)) - coeff * bv
                    if nv == 0:
                        v.pop(c, None)
                    else:
                        v[c] = nv
        return v

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: Mapping[int, Fraction]) -> list[Fraction] | None:
        """Coefficients of vec in the echelon basis, or None if outside."""
        v = _clean(vec)
        coords = []
        for b in self.basis:
            piv = min(b)
            coeff = v.get(piv, Fraction(0))
            coords.append(coeff)
            if coeff:
                for c, bv in b.items():
                    nv = v.get(c, Fraction(0)) - coeff * bv
                    if nv == 0:
                        v.pop(c, None)
                    else:
                        v[c] = nv
        if v:
            return None
        return coords

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def kernel(m: RatMatrix) -> Subspace:
    """Null space {v : m v = 0} as a Subspace of Q^cols."""
    rows: dict[int, Vector] = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
    echelon = _row_reduce(list(rows.values()))
    pivots = [min(r) for r in echelon]
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        vec: Vector = {f: Fraction(1)}
        for row, piv in zip(echelon, pivots):
            coeff = row.get(f)
            if coeff:
                vec[piv] = -coeff
        basis.append(vec)
    return Subspace(m.cols, basis)


def image(m: RatMatrix) -> Subspace:
    """Column span of m as a Subspace of Q^rows."""
    cols: dict[int, Vector] = {}
    for (r, c), v in m.entries.items():
        cols.setdefault(c, {})[r] = v
    return Subspace(m.rows, list(cols.values()))


def quotient_basis(sub: Subspace, total: Subspace) -> list[Vector]:
    """Representatives of a basis of total/sub.

    Representatives are the pivot-completion vectors: total's echelon basis
    vectors that remain independent after adjoining sub, taken in order.
    """
    if sub.ambient_dim != total.ambient_dim:
        raise NotASubspace("ambient dimensions differ")
    for v in sub.basis:
        if not total.contains(v):
            raise NotASubspace(f"subspace vector {v} not inside the larger space")
    span = Subspace(sub.ambient_dim, sub.basis)
    reps = []
    for v in total.basis:
        if not span.contains(v):
            reps.append(dict(v))
            span = Subspace(span.ambient_dim, span.basis + [v])
    return reps


def rank(m: RatMatrix) -> int:
    return image(m).dim


def homology_slice(d_in: RatMatrix, d_out: RatMatrix) -> tuple[int, list[Vector]]:
    """ker(d_out)/im(d_in): dimension plus chosen representative vectors.

    d_in : C_{k+1} -> C_k and d_out : C_k -> C_{k-1}; requires d_out d_in = 0.
    """
    if d_in.rows != d_out.cols:
        raise ValueError("middle dimensions disagree")
    if not d_out.compose(d_in).is_zero():
        raise NotAComplex("d_out after d_in is nonzero")
    cycles = kernel(d_out)
    boundaries = image(d_in)
    reps = quotient_basis(boundaries, cycles)
    return len(reps), reps
