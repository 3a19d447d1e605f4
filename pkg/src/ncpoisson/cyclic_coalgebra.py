"""Finite-dimensional cyclic DG coalgebras and their validation.

A cyclic coalgebra here is a non-counital coaugmentation coideal: finite
graded basis, reduced coassociative coproduct, degree -1 coderivation
squaring to zero, and a graded-symmetric pairing homogeneous of degree n
(the cyclic degree): <u,v> can be nonzero only when |u| + |v| + n = 0.

Cyclicity of the pairing is checked at two tiers.  Both tiers are stated in
the frozen sign convention of the suspension: writing p(u,v) for the pairing
of shifted generators and k(u', u'') for the coefficients of the coproduct
part of the cobar differential, the differential of the induced bracket is
compatible with the bracket exactly when, for all basis u, v, the four-term
sum

    sum_{u} k(u',u'') [ p(u',v) * s1 * u''  +  p(u'',v) * s2 * u' ]
  + eps * sum_{v} k(v',v'') [ p(u,v') * v''  +  p(u,v'') * s3 * v' ]  =  0

vanishes in C (signs s1, s2, s3, eps below).  The *weak* tier requires this
four-term sum to vanish; the *strict* tier requires the two positional
halves (the terms landing in each tensor factor of the double bracket) to
vanish separately.  The weak tier is what downstream constructions need;
strict is reported for information.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactla import RatMatrix, kernel
from .graded_core import Generator

Pairing = dict[tuple[int, int], Fraction]
Coproduct = dict[int, list[tuple[int, int, Fraction]]]
Differential = dict[int, dict[int, Fraction]]


class InvalidCoalgebra(Exception):
    """Input fails the required validation checks."""


class DegenerateForm(Exception):
    """Pairing matrix is singular; dual transport undefined."""


class CyclicCoalgebra:
    def __init__(
        self,
        basis: Sequence[Generator],
        coproduct: Mapping[int, Sequence[tuple[int, int, Fraction | int]]],
        differential: Mapping[int, Mapping[int, Fraction | int]],
        pairing: Mapping[tuple[int, int], Fraction | int],
        cyclic_degree: int,
        name: str = "coalgebra",
    ):
        self.basis = list(basis)
        self.index = {g.name: i for i, g in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ValueError("duplicate basis names")
        self.coproduct: Coproduct = {}
        for i, terms in coproduct.items():
            cleaned = [(a, b, Fraction(c)) for a, b, c in terms if Fraction(c) != 0]
            if cleaned:
                self.coproduct[i] = cleaned
        self.differential: Differential = {}
        for i, row in differential.items():
            cleaned_row = {j: Fraction(c) for j, c in row.items() if Fraction(c) != 0}
            if cleaned_row:
                self.differential[i] = cleaned_row
        self.pairing: Pairing = {k: Fraction(v) for k, v in pairing.items() if Fraction(v) != 0}
        self.cyclic_degree = cyclic_degree
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.basis[i].degree

    def weight(self, i: int) -> int:
        return self.basis[i].weight

    def pair(self, i: int, j: int) -> Fraction:
        return self.pairing.get((i, j), Fraction(0))

    def coproduct_of(self, i: int) -> list[tuple[int, int, Fraction]]:
        return self.coproduct.get(i, [])

    def diff_of(self, i: int) -> dict[int, Fraction]:
        return self.differential.get(i, {})

    def pairing_weight(self) -> int | None:
        wts = {self.weight(i) + self.weight(j) for (i, j) in self.pairing}
        if not wts:
            return None
        return wts.pop() if len(wts) == 1 else -1

    def __repr__(self) -> str:
        return f"CyclicCoalgebra({self.name}, dim {self.dim}, cyclic degree {self.cyclic_degree})"


# ---------------------------------------------------------------------------
# Frozen sign convention shared with the cobar double bracket
# ---------------------------------------------------------------------------


def suspended_pairing(c: CyclicCoalgebra, i: int, j: int) -> Fraction:
    """Pairing of shifted generators: p(su, sv) = (-1)^{|u|+1} <u, v>.

    The global factor (-1) is chosen so that the induced bracket on the
    polynomial example reproduces the classical symplectic bracket with
    coefficient +1; flipping it rescales the bracket by -1 everywhere and
    breaks no axiom.
    """
    v = c.pair(i, j)
    if not v:
        return Fraction(0)
    return v if (c.degree(i) + 1) % 2 == 0 else -v


def insertion_coefficients(c: CyclicCoalgebra, i: int) -> list[tuple[int, int, Fraction]]:
    """Coefficients k(u', u'') of the two-letter words in the cobar
    differential of the shifted generator su: k = -(-1)^{|u'|} * (coproduct
    coefficient)."""
    out = []
    for a, b, coeff in c.coproduct_of(i):
        k = -coeff if c.degree(a) % 2 == 0 else coeff
        if k:
            out.append((a, b, k))
    return out


def bracket_degree(c: CyclicCoalgebra) -> int:
    """Degree of the induced double bracket: cyclic degree + 2."""
    return c.cyclic_degree + 2


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def step3_families(c: CyclicCoalgebra, u: int, v: int) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """The two positional halves of the Step-3 cancellation for basis (u, v).

    Family A collects the coproduct survivors landing in the first tensor
    factor of the double bracket's differential defect, family B those in
    the second.  Weak cyclicity means A + B = 0; strict means A = B = 0.
    """
    n = c.cyclic_degree
    fam_a: dict[int, Fraction] = {}
    fam_b: dict[int, Fraction] = {}

    def add(fam: dict[int, Fraction], idx: int, val: Fraction) -> None:
        if not val:
            return
        s = fam.get(idx, Fraction(0)) + val
        if s == 0:
            fam.pop(idx, None)
        else:
            fam[idx] = s

    du, dv = c.degree(u), c.degree(v)
    big_n = n + 2
    eps = _sgn(du + n + 1)
    for u1, u2, k in insertion_coefficients(c, u):
        # the degree-N bracket operation is carried past the surviving
        # first-argument letter, matching the frozen word-bracket convention
        s1 = _sgn((c.degree(u2) - 1) * (dv - 1)) * _sgn(big_n * (c.degree(u2) - 1))
        add(fam_a, u2, k * suspended_pairing(c, u1, v) * s1)
        s2 = _sgn((c.degree(u1) - 1) * ((c.degree(u2) - 1) + (dv - 1))) * _sgn(big_n * (c.degree(u1) - 1))
        add(fam_b, u1, k * suspended_pairing(c, u2, v) * s2)
    for v1, v2, k in insertion_coefficients(c, v):
        add(fam_b, v2, eps * k * suspended_pairing(c, u, v1))
        s3 = _sgn((c.degree(v1) - 1) * (c.degree(v2) - 1))
        add(fam_a, v1, eps * k * suspended_pairing(c, u, v2) * s3)
    return fam_a, fam_b


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    required: bool
    detail: str = ""


@dataclass
class ValidationReport:
    target: str
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, required: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, required, detail))

    @property
    def required_passed(self) -> bool:
        return all(ch.passed for ch in self.checks if ch.required)

    def check(self, name: str) -> CheckResult:
        for ch in self.checks:
            if ch.name == name:
                return ch
        raise KeyError(name)

    def format_text(self) -> str:
        lines = [f"validation of {self.target}"]
        for ch in self.checks:
            status = "pass" if ch.passed else "FAIL"
            tag = "required" if ch.required else "info"
            line = f"  [{status}] ({tag}) {ch.name}"
            if ch.detail and not ch.passed:
                line += f": {ch.detail}"
            lines.append(line)
        lines.append(f"  required checks: {'pass' if self.required_passed else 'FAIL'}")
        return "\n".join(lines)


def validate(c: CyclicCoalgebra) -> ValidationReport:
    """Run every structural invariant plus the two cyclicity tiers."""
    rep = ValidationReport(c.name)
    dim = c.dim

    # index sanity
    ok, detail = True, ""
    for i, terms in c.coproduct.items():
        for a, b, _ in terms:
            if not (0 <= a < dim and 0 <= b < dim):
                ok, detail = False, f"coproduct of {c.basis[i].name} leaves the basis"
    rep.add("table-indices", ok, True, detail)

    # coassociativity: (Delta x id) Delta = (id x Delta) Delta on every basis element
    ok, detail = True, ""
    for i in range(dim):
        triple: dict[tuple[int, int, int], Fraction] = {}
        for a, b, cab in c.coproduct_of(i):
            for a1, a2, k in c.coproduct_of(a):
                key = (a1, a2, b)
                triple[key] = triple.get(key, Fraction(0)) + cab * k
            for b1, b2, k in c.coproduct_of(b):
                key = (a, b1, b2)
                triple[key] = triple.get(key, Fraction(0)) - cab * k
        if any(v != 0 for v in triple.values()):
            ok, detail = False, f"coassociativity fails on {c.basis[i].name}"
            break
    rep.add("coassociativity", ok, True, detail)

    # coproduct degree 0 and weight preserving
    ok, detail = True, ""
    for i, terms in c.coproduct.items():
        for a, b, _ in terms:
            if c.degree(a) + c.degree(b) != c.degree(i):
                ok, detail = False, f"coproduct of {c.basis[i].name} not degree homogeneous"
            if c.weight(a) + c.weight(b) != c.weight(i):
                ok, detail = False, f"coproduct of {c.basis[i].name} not weight homogeneous"
    rep.add("coproduct-homogeneous", ok, True, detail)

    # differential: degree -1, weight preserving, squares to zero
    ok, detail = True, ""
    for i, row in c.differential.items():
        for j in row:
            if c.degree(j) != c.degree(i) - 1:
                ok, detail = False, f"d({c.basis[i].name}) has a term of wrong degree"
            if c.weight(j) != c.weight(i):
                ok, detail = False, f"d({c.basis[i].name}) has a term of wrong weight"
    rep.add("differential-homogeneous", ok, True, detail)

    ok, detail = True, ""
    for i in range(dim):
        acc: dict[int, Fraction] = {}
        for j, cij in c.diff_of(i).items():
            for l, cjl in c.diff_of(j).items():
                acc[l] = acc.get(l, Fraction(0)) + cij * cjl
        if any(v != 0 for v in acc.values()):
            ok, detail = False, f"d squared nonzero on {c.basis[i].name}"
            break
    rep.add("differential-squares-to-zero", ok, True, detail)

    # coderivation: Delta d = (d x id + id x d) Delta, Koszul sign on the
    # second slot
    ok, detail = True, ""
    for i in range(dim):
        lhs: dict[tuple[int, int], Fraction] = {}
        for j, cij in c.diff_of(i).items():
            for a, b, k in c.coproduct_of(j):
                lhs[(a, b)] = lhs.get((a, b), Fraction(0)) + cij * k
        for a, b, k in c.coproduct_of(i):
            for a2, caa in c.diff_of(a).items():
                lhs[(a2, b)] = lhs.get((a2, b), Fraction(0)) - k * caa
            sign = _sgn(c.degree(a))
            for b2, cbb in c.diff_of(b).items():
                lhs[(a, b2)] = lhs.get((a, b2), Fraction(0)) - sign * k * cbb
        if any(v != 0 for v in lhs.values()):
            ok, detail = False, f"coderivation identity fails on {c.basis[i].name}"
            break
    rep.add("coderivation", ok, True, detail)

    # pairing: degree homogeneity, weight homogeneity, graded symmetry
    ok, detail = True, ""
    for (i, j) in c.pairing:
        if c.degree(i) + c.degree(j) + c.cyclic_degree != 0:
            ok, detail = False, f"<{c.basis[i].name},{c.basis[j].name}> violates degree homogeneity"
    rep.add("pairing-degree", ok, True, detail)

    ok = c.pairing_weight() != -1
    rep.add("pairing-weight", ok, True, "" if ok else "pairing entries of mixed weight")

    ok, detail = True, ""
    for (i, j), v in c.pairing.items():
        expect = v * _sgn(c.degree(i) * c.degree(j))
        if c.pair(j, i) != expect:
            ok, detail = False, f"<{c.basis[j].name},{c.basis[i].name}> breaks graded symmetry"
            break
    rep.add("pairing-graded-symmetric", ok, True, detail)

    # pairing versus differential (scalar part of the Step-3 cancellation):
    # <du, v> + (-1)^{|u|+n} <u, dv> = 0
    ok, detail = True, ""
    for u in range(dim):
        for v in range(dim):
            total = Fraction(0)
            for w, cw in c.diff_of(u).items():
                total += cw * c.pair(w, v)
            s = _sgn(c.degree(u) + c.cyclic_degree)
            for w, cw in c.diff_of(v).items():
                total += s * cw * c.pair(u, w)
            if total != 0:
                ok, detail = False, f"pairing-differential compatibility fails at ({c.basis[u].name},{c.basis[v].name})"
                break
        if not ok:
            break
    rep.add("pairing-differential", ok, True, detail)

    # cyclicity, weak tier (required) and strict tier (informational)
    weak_ok, weak_detail = True, ""
    strict_ok, strict_detail = True, ""
    for u in range(dim):
        for v in range(dim):
            fam_a, fam_b = step3_families(c, u, v)
            total: dict[int, Fraction] = dict(fam_a)
            for idx, val in fam_b.items():
                s = total.get(idx, Fraction(0)) + val
                if s == 0:
                    total.pop(idx, None)
                else:
                    total[idx] = s
            if total and weak_ok:
                weak_ok = False
                weak_detail = f"four-term cancellation fails at ({c.basis[u].name},{c.basis[v].name})"
            if (fam_a or fam_b) and strict_ok:
                strict_ok = False
                strict_detail = f"positional halves nonzero at ({c.basis[u].name},{c.basis[v].name})"
    rep.add("cyclicity-weak", weak_ok, True, weak_detail)
    rep.add("cyclicity-strict", strict_ok, False, strict_detail)
    return rep


# ---------------------------------------------------------------------------
# Cyclic algebras and dualization
# ---------------------------------------------------------------------------


class CyclicAlgebra:
    """Finite-dimensional unital graded algebra with an invariant pairing.

    The unit must be a basis element.  A differential, if present, is taken
    in cochain convention (degree +1) so that its transpose on the dual
    coalgebra has homological degree -1.
    """

    def __init__(
        self,
        basis: Sequence[Generator],
        unit: str,
        products: Mapping[tuple[int, int], Mapping[int, Fraction | int]],
        pairing: Mapping[tuple[int, int], Fraction | int],
        cyclic_degree: int,
        differential: Mapping[int, Mapping[int, Fraction | int]] | None = None,
        name: str = "algebra",
    ):
        self.basis = list(basis)
        self.index = {g.name: i for i, g in enumerate(self.basis)}
        if unit not in self.index:
            raise ValueError("unit must be a basis element")
        self.unit = self.index[unit]
        self.products: dict[tuple[int, int], dict[int, Fraction]] = {}
        for key, row in products.items():
            cleaned = {k: Fraction(v) for k, v in row.items() if Fraction(v) != 0}
            if cleaned:
                self.products[key] = cleaned
        self.pairing: Pairing = {k: Fraction(v) for k, v in pairing.items() if Fraction(v) != 0}
        self.cyclic_degree = cyclic_degree
        self.differential: Differential = {}
        for i, row in (differential or {}).items():
            cleaned_row = {j: Fraction(v) for j, v in row.items() if Fraction(v) != 0}
            if cleaned_row:
                self.differential[i] = cleaned_row
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.basis[i].degree

    def product(self, i: int, j: int) -> dict[int, Fraction]:
        if i == self.unit:
            return {j: Fraction(1)}
        if j == self.unit:
            return {i: Fraction(1)}
        return self.products.get((i, j), {})

    def pair(self, i: int, j: int) -> Fraction:
        return self.pairing.get((i, j), Fraction(0))


def validate_algebra(a: CyclicAlgebra) -> ValidationReport:
    """Associativity, unit laws, pairing symmetry and the cyclic identity
    <u, v w> = (-1)^{|w|(|u|+|v|)} <w u, v>."""
    rep = ValidationReport(a.name)
    dim = a.dim

    ok, detail = True, ""
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs: dict[int, Fraction] = {}
                for m, c1 in a.product(i, j).items():
                    for l, c2 in a.product(m, k).items():
                        lhs[l] = lhs.get(l, Fraction(0)) + c1 * c2
                for m, c1 in a.product(j, k).items():
                    for l, c2 in a.product(i, m).items():
                        lhs[l] = lhs.get(l, Fraction(0)) - c1 * c2
                if any(v != 0 for v in lhs.values()):
                    ok = False
                    detail = f"associativity fails at ({a.basis[i].name},{a.basis[j].name},{a.basis[k].name})"
    rep.add("associativity", ok, True, detail)

    ok, detail = True, ""
    for i in range(dim):
        for j in range(dim):
            if a.degree(i) + a.degree(j) != a.cyclic_degree and a.pair(i, j) != 0:
                ok, detail = False, "pairing degree inhomogeneous"
    rep.add("pairing-degree", ok, True, detail)

    ok, detail = True, ""
    for (i, j), v in a.pairing.items():
        if a.pair(j, i) != v * _sgn(a.degree(i) * a.degree(j)):
            ok, detail = False, "pairing not graded symmetric"
    rep.add("pairing-graded-symmetric", ok, True, detail)

    ok, detail = True, ""
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = Fraction(0)
                for m, c in a.product(j, k).items():
                    lhs += c * a.pair(i, m)
                rhs = Fraction(0)
                for m, c in a.product(k, i).items():
                    rhs += c * a.pair(m, j)
                sign = _sgn(a.degree(k) * (a.degree(i) + a.degree(j)))
                if lhs != sign * rhs:
                    ok = False
                    detail = f"cyclic pairing identity fails at ({a.basis[i].name},{a.basis[j].name},{a.basis[k].name})"
    rep.add("pairing-cyclic", ok, True, detail)
    return rep


def dualize(a: CyclicAlgebra) -> CyclicCoalgebra:
    """Dual cyclic coalgebra on the augmentation coideal.

    Coproduct is the transpose of multiplication restricted to non-unit
    directions, the differential is the (signed) transpose of a's
    differential, and the pairing is transported through the isomorphism
    x -> <x, -> , which requires the full pairing matrix to be invertible.
    The output has cyclic degree -(input cyclic degree) and must pass the
    required validation checks.
    """
    report = validate_algebra(a)
    if not report.required_passed:
        raise InvalidCoalgebra(f"input algebra fails validation: {report.format_text()}")
    dim = a.dim
    gram = RatMatrix(dim, dim, {(i, j): a.pair(i, j) for i in range(dim) for j in range(dim) if a.pair(i, j)})
    if kernel(gram).dim != 0:
        raise DegenerateForm("pairing matrix is singular")

    # invert the Gram matrix column by column
    inv_cols: list[dict[int, Fraction]] = []
    for j in range(dim):
        col = _solve(gram, {j: Fraction(1)})
        inv_cols.append(col)

    keep = [i for i in range(dim) if i != a.unit]
    pos = {old: new for new, old in enumerate(keep)}
    basis = [a.basis[i] for i in keep]

    coproduct: dict[int, list[tuple[int, int, Fraction]]] = {}
    for (i, j), row in a.products.items():
        if i == a.unit or j == a.unit:
            continue
        for k, coeff in row.items():
            if k == a.unit:
                continue
            coproduct.setdefault(pos[k], []).append((pos[i], pos[j], coeff))

    differential: dict[int, dict[int, Fraction]] = {}
    for i, row in a.differential.items():
        for k, coeff in row.items():
            if i == a.unit or k == a.unit:
                continue
            sign = _sgn(a.degree(k) + 1)
            differential.setdefault(pos[k], {})[pos[i]] = sign * coeff

    # transported pairing: <f_k, f_l> = (G^{-1})_{lk}, restricted to the coideal
    pairing: Pairing = {}
    for k in keep:
        for l in keep:
            v = inv_cols[k].get(l, Fraction(0))  # (G^{-1})_{lk}
            if v:
                pairing[(pos[k], pos[l])] = v

    out = CyclicCoalgebra(
        basis,
        coproduct,
        differential,
        pairing,
        -a.cyclic_degree,
        name=f"dual({a.name})",
    )
    out_report = validate(out)
    if not out_report.required_passed:
        raise InvalidCoalgebra(f"dualized coalgebra fails validation:\n{out_report.format_text()}")
    return out


def _solve(m: RatMatrix, rhs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Solve m x = rhs for square invertible m (dense elimination)."""
    n = m.rows
    a = [[m.entries.get((i, j), Fraction(0)) for j in range(n)] + [rhs.get(i, Fraction(0))] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return {i: a[i][n] for i in range(n) if a[i][n] != 0}


def dual_multiplication(c: CyclicCoalgebra) -> dict[tuple[int, int], dict[int, Fraction]]:
    """Transpose of the reduced coproduct: the multiplication table of the
    dual (non-unital) algebra.  Used to test that dualization is involutive
    on structure tables."""
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for k, terms in c.coproduct.items():
        for i, j, coeff in terms:
            table.setdefault((i, j), {})[k] = table.get((i, j), {}).get(k, Fraction(0)) + coeff
    return {key: {k: v for k, v in row.items() if v != 0} for key, row in table.items() if any(row.values())}


# ---------------------------------------------------------------------------
# Bundled examples
# ---------------------------------------------------------------------------


def kxy_coalgebra(variant: str = "omega") -> CyclicCoalgebra:
    """Three-dimensional coalgebra whose cobar construction resolves the
    polynomial ring in two variables.

    Basis a, b (degree 1), s (degree 2) with the only reduced coproduct
    Delta s = a (x) b - b (x) a and zero differential.  Variant "omega"
    carries the degree -2 pairing <a,b> = 1; variant "omegatilde" the degree
    -3 pairing <a,s> = <b,s> = 1.
    """
    basis = [Generator("a", 1, 1), Generator("b", 1, 1), Generator("s", 2, 2)]
    coproduct = {2: [(0, 1, Fraction(1)), (1, 0, Fraction(-1))]}
    if variant == "omega":
        pairing = {(0, 1): Fraction(1), (1, 0): Fraction(-1)}
        cyclic_degree = -2
    elif variant == "omegatilde":
        pairing = {
            (0, 2): Fraction(1),
            (2, 0): Fraction(1),
            (1, 2): Fraction(1),
            (2, 1): Fraction(1),
        }
        cyclic_degree = -3
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return CyclicCoalgebra(basis, coproduct, {}, pairing, cyclic_degree, name=f"kxy-{variant}")


def torus_cohomology_algebra() -> CyclicAlgebra:
    """Cohomology of the 2-torus as a 2-cyclic algebra: exterior algebra on
    two degree-1 classes with the integration pairing."""
    basis = [
        Generator("one", 0, 0),
        Generator("al", 1, 1),
        Generator("be", 1, 1),
        Generator("si", 2, 2),
    ]
    products = {
        (1, 2): {3: Fraction(1)},
        (2, 1): {3: Fraction(-1)},
        (1, 1): {},
        (2, 2): {},
        (1, 3): {},
        (3, 1): {},
        (2, 3): {},
        (3, 2): {},
        (3, 3): {},
    }
    pairing = {
        (0, 3): Fraction(1),
        (3, 0): Fraction(1),
        (1, 2): Fraction(1),
        (2, 1): Fraction(-1),
    }
    return CyclicAlgebra(basis, "one", products, pairing, 2, name="torus-cohomology")
