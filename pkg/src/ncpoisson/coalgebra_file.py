"""Sectioned text format for cyclic coalgebras and cyclic algebras.

A file is a sequence of header lines followed by bracketed sections:

    kind coalgebra            # or: algebra
    name kxy-omega
    cyclic_degree -2
    unit one                  # algebras only

    [basis]
    a 1 1                     # name degree weight

    [coproduct]               # coalgebras: element left right coefficient
    s a b 1
    s b a -1

    [product]                 # algebras: left right result coefficient
    al be si 1

    [differential]
    # element target coefficient

    [pairing]
    a b 1

    [cobar_names]             # optional: coalgebra element -> generator name
    a x

Coefficients are exact rationals written as p or p/q.  '#' starts a
comment.  A pairing entry whose graded-symmetric partner is omitted is
completed automatically; contradictory partners are a parse error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .cyclic_coalgebra import CyclicAlgebra, CyclicCoalgebra
from .graded_core import Generator


class ParseError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class LoadedFile:
    kind: str
    name: str
    coalgebra: CyclicCoalgebra | None = None
    algebra: CyclicAlgebra | None = None
    cobar_names: dict[str, str] = field(default_factory=dict)


def _rational(tok: str, line: int) -> Fraction:
    try:
        if "/" in tok:
            num, den = tok.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(tok))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {tok!r}: {exc}", line) from None


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def parse_text(text: str, name: str = "<input>") -> LoadedFile:
    kind = ""
    header: dict[str, str] = {}
    sections: dict[str, list[tuple[int, list[str]]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, [])
            continue
        toks = line.split()
        if current is None:
            if len(toks) != 2:
                raise ParseError(f"header line needs 'key value', got {raw.strip()!r}", lineno)
            header[toks[0]] = toks[1]
        else:
            sections[current].append((lineno, toks))

    kind = header.get("kind", "")
    if kind not in ("coalgebra", "algebra"):
        raise ParseError(f"kind must be 'coalgebra' or 'algebra', got {kind!r}", 1)
    display_name = header.get("name", name)
    if "cyclic_degree" not in header:
        raise ParseError("missing cyclic_degree header", 1)
    try:
        cyclic_degree = int(header["cyclic_degree"])
    except ValueError:
        raise ParseError(f"bad cyclic_degree {header['cyclic_degree']!r}", 1) from None

    basis: list[Generator] = []
    index: dict[str, int] = {}
    for lineno, toks in sections.get("basis", []):
        if len(toks) != 3:
            raise ParseError("basis line needs 'name degree weight'", lineno)
        nm, deg, wt = toks
        try:
            g = Generator(nm, int(deg), int(wt))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if nm in index:
            raise ParseError(f"duplicate basis name {nm!r}", lineno)
        index[nm] = len(basis)
        basis.append(g)

    def lookup(nm: str, lineno: int) -> int:
        if nm not in index:
            raise ParseError(f"unknown basis element {nm!r}", lineno)
        return index[nm]

    differential: dict[int, dict[int, Fraction]] = {}
    for lineno, toks in sections.get("differential", []):
        if len(toks) != 3:
            raise ParseError("differential line needs 'element target coefficient'", lineno)
        src, tgt, coeff = lookup(toks[0], lineno), lookup(toks[1], lineno), _rational(toks[2], lineno)
        differential.setdefault(src, {})
        if tgt in differential[src]:
            raise ParseError(f"duplicate differential entry for {toks[0]} -> {toks[1]}", lineno)
        differential[src][tgt] = coeff

    pairing: dict[tuple[int, int], Fraction] = {}
    pairing_lines: dict[tuple[int, int], int] = {}
    for lineno, toks in sections.get("pairing", []):
        if len(toks) != 3:
            raise ParseError("pairing line needs 'left right value'", lineno)
        i, j, v = lookup(toks[0], lineno), lookup(toks[1], lineno), _rational(toks[2], lineno)
        if (i, j) in pairing and pairing[(i, j)] != v:
            raise ParseError(f"conflicting pairing entries for ({toks[0]},{toks[1]})", lineno)
        pairing[(i, j)] = v
        pairing_lines[(i, j)] = lineno
    # graded-symmetric completion
    for (i, j), v in list(pairing.items()):
        partner = v * _sgn(basis[i].degree * basis[j].degree)
        if (j, i) in pairing:
            if pairing[(j, i)] != partner:
                raise ParseError(
                    f"pairing entry ({basis[j].name},{basis[i].name}) contradicts graded symmetry",
                    pairing_lines[(j, i)],
                )
        else:
            pairing[(j, i)] = partner

    cobar_names: dict[str, str] = {}
    for lineno, toks in sections.get("cobar_names", []):
        if len(toks) != 2:
            raise ParseError("cobar_names line needs 'element name'", lineno)
        lookup(toks[0], lineno)
        cobar_names[toks[0]] = toks[1]

    loaded = LoadedFile(kind, display_name, cobar_names=cobar_names)

    if kind == "coalgebra":
        if "product" in sections:
            raise ParseError("coalgebra file cannot carry a [product] section", sections["product"][0][0])
        coproduct: dict[int, list[tuple[int, int, Fraction]]] = {}
        for lineno, toks in sections.get("coproduct", []):
            if len(toks) != 4:
                raise ParseError("coproduct line needs 'element left right coefficient'", lineno)
            e = lookup(toks[0], lineno)
            a = lookup(toks[1], lineno)
            b = lookup(toks[2], lineno)
            coproduct.setdefault(e, []).append((a, b, _rational(toks[3], lineno)))
        loaded.coalgebra = CyclicCoalgebra(basis, coproduct, differential, pairing, cyclic_degree, display_name)
    else:
        if "coproduct" in sections:
            raise ParseError("algebra file cannot carry a [coproduct] section", sections["coproduct"][0][0])
        if "unit" not in header:
            raise ParseError("algebra file needs a 'unit' header", 1)
        unit = header["unit"]
        if unit not in index:
            raise ParseError(f"unit {unit!r} is not a basis element", 1)
        products: dict[tuple[int, int], dict[int, Fraction]] = {}
        for lineno, toks in sections.get("product", []):
            if len(toks) != 4:
                raise ParseError("product line needs 'left right result coefficient'", lineno)
            i = lookup(toks[0], lineno)
            j = lookup(toks[1], lineno)
            k = lookup(toks[2], lineno)
            products.setdefault((i, j), {})
            products[(i, j)][k] = products[(i, j)].get(k, Fraction(0)) + _rational(toks[3], lineno)
        loaded.algebra = CyclicAlgebra(
            basis, unit, products, pairing, cyclic_degree, differential, display_name
        )
    return loaded


def parse_file(path: str | Path) -> LoadedFile:
    path = Path(path)
    return parse_text(path.read_text(encoding="utf-8"), name=path.stem)
