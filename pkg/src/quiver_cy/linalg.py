"""Exact linear algebra over the rationals.

Vectors are sparse ``dict[int, Fraction]`` keyed by coordinate index.  The
heavy lifting (reduced row echelon form) is delegated to sympy's
``DomainMatrix`` over ``QQ``; everything entering or leaving this module is a
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = dict  # dict[int, Fraction]


def _to_qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _domain_matrix(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> DomainMatrix:
    data = {}
    for i, row in enumerate(rows):
        r = {j: _to_qq(v) for j, v in row.items() if v}
        if r:
            data[i] = r
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _rows_of(dm: DomainMatrix) -> list[dict[int, Fraction]]:
    sdm = dm.rep.to_sdm() if hasattr(dm.rep, "to_sdm") else dm.rep
    out = [dict() for _ in range(dm.shape[0])]
    for i, row in sdm.items():
        out[i] = {j: _to_fraction(v) for j, v in row.items() if v}
    return out


def rref(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> tuple[list[dict[int, Fraction]], tuple[int, ...]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    if ncols == 0 or not any(any(v for v in r.values()) for r in rows):
        return [], ()
    reduced, pivots = _domain_matrix(rows, ncols).rref()
    out = _rows_of(reduced)
    return [r for r in out if r][: len(pivots)], tuple(pivots)


def rank(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Basis of ``{x : M x = 0}`` where ``M`` has the given rows."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for row, p in zip(reduced, pivots):
            c = row.get(free)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def solve(rows: Sequence[Mapping[int, Fraction]], ncols: int, rhs: Sequence[Fraction]):
    """One solution ``x`` of ``M x = rhs`` (free variables set to zero), or ``None``."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = Fraction(b)
        aug.append(r)
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x: dict[int, Fraction] = {}
    for row, p in zip(reduced, pivots):
        b = row.get(ncols)
        if b:
            x[p] = b
    return x


def express(vectors: Sequence[Mapping[int, Fraction]], target: Mapping[int, Fraction]):
    """Coefficients ``c`` with ``sum c[k] * vectors[k] == target``, or ``None``."""
    coords = sorted({j for v in vectors for j in v} | set(target))
    if not coords:
        return {}
    index = {j: i for i, j in enumerate(coords)}
    rows = [dict() for _ in coords]
    for k, v in enumerate(vectors):
        for j, c in v.items():
            if c:
                rows[index[j]][k] = Fraction(c)
    rhs = [Fraction(target.get(j, 0)) for j in coords]
    return solve(rows, len(vectors), rhs)


def inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Inverse of a square dense matrix, ``None`` when singular."""
    n = len(matrix)
    if n == 0:
        return []
    rows = []
    for i, r in enumerate(matrix):
        row = {j: Fraction(v) for j, v in enumerate(r) if v}
        row[n + i] = Fraction(1)
        rows.append(row)
    reduced, pivots = rref(rows, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)):
        return None
    return [[row.get(n + j, Fraction(0)) for j in range(n)] for row in reduced[:n]]


class Subspace:
    """A subspace of a coordinate space with a canonical normal form map."""

    def __init__(self, vectors: Iterable[Mapping[int, Fraction]], ncols: int):
        self.ncols = ncols
        self.rows, self.pivots = rref(list(vectors), ncols)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Normal form of ``v`` modulo the subspace (pivot coordinates cleared)."""
        out = {j: Fraction(c) for j, c in v.items() if c}
        for row, p in zip(self.rows, self.pivots):
            c = out.get(p)
            if c:
                for j, a in row.items():
                    val = out.get(j, 0) - c * a
                    if val:
                        out[j] = val
                    else:
                        out.pop(j, None)
        return out

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)
