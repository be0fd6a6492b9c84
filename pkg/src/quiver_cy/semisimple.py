"""Semisimple base algebras: finite products of matrix algebras over Q.

An element of ``SemisimpleAlgebra([n_1, ..., n_r])`` is a sparse vector over
the elementary-matrix basis ``E^b_{ij}`` (block ``b``, row ``i``, column
``j``).  Bimodules are explicit: a basis together with left and right action
tables for every basis element of the algebra.

The Casimir element of a trace is ``sigma = sum_p e_p (x) f_p`` where ``f_p``
is the dual basis of ``e_p`` for ``(a, b) -> tr(ab)``.  It is symmetric and
central, and ``m -> sigma' m sigma''`` identifies the coinvariants ``U_l``
with the invariants ``U^l`` of any bimodule ``U``; ``dagger`` inverts it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import InvalidTrace, NotCentral

Vec = dict  # dict[int, Fraction]


def _add_into(acc: dict, vec: dict, scale=1) -> None:
    for k, v in vec.items():
        val = acc.get(k, 0) + scale * v
        if val:
            acc[k] = val
        else:
            acc.pop(k, None)


def _scaled(vec: dict, scale) -> dict:
    return {k: scale * v for k, v in vec.items() if scale * v}


@dataclass(frozen=True)
class SemisimpleAlgebra:
    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValueError("need at least one block, all of size >= 1")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def product_of_fields(cls, n: int) -> "SemisimpleAlgebra":
        return cls((1,) * n)

    @property
    def basis(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((b, i, j) for b, n in enumerate(self.blocks) for i in range(n) for j in range(n))

    @property
    def dim(self) -> int:
        return sum(n * n for n in self.blocks)

    def index(self, b: int, i: int, j: int) -> int:
        return self._index[(b, i, j)]

    @property
    def _index(self):
        return {lab: k for k, lab in enumerate(self.basis)}

    def element(self, entries: dict) -> Vec:
        """Build an element from ``{(block, i, j): coeff}``."""
        idx = self._index
        return {idx[k]: Fraction(v) for k, v in entries.items() if v}

    def one(self) -> Vec:
        return self.element({(b, i, i): 1 for b, n in enumerate(self.blocks) for i in range(n)})

    def mul_basis(self, p: int, q: int) -> int | None:
        b1, i, j = self.basis[p]
        b2, k, m = self.basis[q]
        if b1 != b2 or j != k:
            return None
        return self._index[(b1, i, m)]

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: dict = {}
        for p, a in x.items():
            for q, b in y.items():
                r = self.mul_basis(p, q)
                if r is not None:
                    _add_into(out, {r: a * b})
        return out


@dataclass(frozen=True)
class Trace:
    """``tr(a) = sum_b weights[b] * trace(a_b)``."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    def __call__(self, l: SemisimpleAlgebra, x: Vec) -> Fraction:
        total = Fraction(0)
        for p, c in x.items():
            b, i, j = l.basis[p]
            if i == j:
                total += self.weights[b] * c
        return total


@dataclass(frozen=True)
class CasimirElement:
    terms: tuple  # tuple of (Vec, Vec)

    def tensor(self) -> dict:
        out: dict = {}
        for e, f in self.terms:
            for p, a in e.items():
                for q, b in f.items():
                    _add_into(out, {(p, q): a * b})
        return out


def casimir(l: SemisimpleAlgebra, tr: Trace) -> CasimirElement:
    """Casimir element of ``tr`` from the dual basis of the trace form."""
    if len(tr.weights) != len(l.blocks):
        raise InvalidTrace("one weight per block required")
    if any(w == 0 for w in tr.weights):
        raise InvalidTrace("trace weights must be nonzero")
    n = l.dim
    gram = [[tr(l, l.mul({p: Fraction(1)}, {q: Fraction(1)})) for q in range(n)] for p in range(n)]
    inv = linalg.inverse(gram)
    if inv is None:  # pragma: no cover - excluded by nonzero weights
        raise InvalidTrace("degenerate trace form")
    terms = []
    for q in range(n):
        f = {r: inv[r][q] for r in range(n) if inv[r][q]}
        terms.append(({q: Fraction(1)}, f))
    return CasimirElement(tuple(terms))


@dataclass
class CasimirReport:
    symmetric: bool
    central: bool
    symmetric_witness: tuple | None = None
    central_witness: int | None = None


def check_casimir(sigma: CasimirElement, l: SemisimpleAlgebra) -> CasimirReport:
    t = sigma.tensor()
    symmetric_witness = None
    for (p, q), c in sorted(t.items()):
        if t.get((q, p), 0) != c:
            symmetric_witness = (p, q)
            break
    central_witness = None
    for a in range(l.dim):
        left: dict = {}
        right: dict = {}
        for e, f in sigma.terms:
            ae = l.mul({a: Fraction(1)}, e)
            fa = l.mul(f, {a: Fraction(1)})
            for p, x in ae.items():
                for q, y in f.items():
                    _add_into(left, {(p, q): x * y})
            for p, x in e.items():
                for q, y in fa.items():
                    _add_into(right, {(p, q): x * y})
        if left != right:
            central_witness = a
            break
    return CasimirReport(symmetric_witness is None, central_witness is None, symmetric_witness, central_witness)


@dataclass
class Bimodule:
    """Finite-dimensional ``l``-bimodule given by action tables.

    ``left[p][k]`` is the image of basis vector ``k`` under left multiplication
    by the ``p``-th basis element of ``l``; ``right`` likewise.
    """

    algebra: SemisimpleAlgebra
    dim: int
    left: list = field(repr=False)
    right: list = field(repr=False)
    labels: list | None = None

    def act_left(self, x: Vec, m: Vec) -> Vec:
        out: dict = {}
        for p, a in x.items():
            for k, c in m.items():
                _add_into(out, self.left[p][k], a * c)
        return out

    def act_right(self, m: Vec, x: Vec) -> Vec:
        out: dict = {}
        for p, a in x.items():
            for k, c in m.items():
                _add_into(out, self.right[p][k], a * c)
        return out

    def is_central(self, u: Vec) -> int | None:
        """``None`` when ``u`` commutes with ``l``; otherwise a witness basis index."""
        for p in range(self.algebra.dim):
            e = {p: Fraction(1)}
            if self.act_left(e, u) != self.act_right(u, e):
                return p
        return None

    def commutator_subspace(self) -> linalg.Subspace:
        vecs = []
        for p in range(self.algebra.dim):
            e = {p: Fraction(1)}
            for k in range(self.dim):
                b = {k: Fraction(1)}
                v = dict(self.act_left(e, b))
                _add_into(v, self.act_right(b, e), -1)
                if v:
                    vecs.append(v)
        return linalg.Subspace(vecs, self.dim)

    def same_class(self, m1: Vec, m2: Vec) -> bool:
        diff = dict(m1)
        _add_into(diff, m2, -1)
        return self.commutator_subspace().contains(diff)

    # constructors

    @classmethod
    def regular(cls, l: SemisimpleAlgebra) -> "Bimodule":
        left, right = [], []
        for p in range(l.dim):
            lrow, rrow = [], []
            for k in range(l.dim):
                r = l.mul_basis(p, k)
                lrow.append({} if r is None else {r: Fraction(1)})
                r = l.mul_basis(k, p)
                rrow.append({} if r is None else {r: Fraction(1)})
            left.append(lrow)
            right.append(rrow)
        return cls(l, l.dim, left, right, list(l.basis))

    @classmethod
    def simple(cls, l: SemisimpleAlgebra, a: int, b: int) -> "Bimodule":
        """``n_a x n_b`` matrices with ``l`` acting through blocks ``a`` and ``b``."""
        na, nb = l.blocks[a], l.blocks[b]
        labels = [(i, j) for i in range(na) for j in range(nb)]
        idx = {lab: k for k, lab in enumerate(labels)}
        left, right = [], []
        for (blk, i, j) in l.basis:
            lrow, rrow = [], []
            for (r, c) in labels:
                lrow.append({idx[(i, c)]: Fraction(1)} if blk == a and j == r else {})
                rrow.append({idx[(r, j)]: Fraction(1)} if blk == b and c == i else {})
            left.append(lrow)
            right.append(rrow)
        return cls(l, len(labels), left, right, labels)

    @classmethod
    def from_paths(cls, l: SemisimpleAlgebra, ends: Sequence[tuple[int, int]], labels=None) -> "Bimodule":
        """Span of paths with given ``(source, target)`` vertices over ``k^n``."""
        if l.blocks != (1,) * len(l.blocks):
            raise ValueError("path bimodules need a product of copies of the field")
        left = [[{k: Fraction(1)} if s == p else {} for k, (s, _) in enumerate(ends)] for p in range(l.dim)]
        right = [[{k: Fraction(1)} if t == p else {} for k, (_, t) in enumerate(ends)] for p in range(l.dim)]
        return cls(l, len(ends), left, right, list(labels) if labels is not None else None)

    def direct_sum(self, other: "Bimodule") -> "Bimodule":
        n = self.dim

        def shift(v):
            return {k + n: c for k, c in v.items()}

        left = [self.left[p] + [shift(v) for v in other.left[p]] for p in range(self.algebra.dim)]
        right = [self.right[p] + [shift(v) for v in other.right[p]] for p in range(self.algebra.dim)]
        return Bimodule(self.algebra, n + other.dim, left, right)

    def rebased(self, change: Sequence[Sequence[Fraction]]) -> "Bimodule":
        """Same bimodule in the basis whose ``k``-th vector is column ``k`` of ``change``."""
        inv = linalg.inverse(change)
        if inv is None:
            raise ValueError("change of basis must be invertible")
        n = self.dim
        cols = [{r: Fraction(change[r][k]) for r in range(n) if change[r][k]} for k in range(n)]

        def to_new(v):
            return {i: s for i in range(n) if (s := sum(inv[i][r] * c for r, c in v.items()))}

        def conj(table):
            out = []
            for p in range(self.algebra.dim):
                row = []
                for k in range(n):
                    img: dict = {}
                    for r, c in cols[k].items():
                        _add_into(img, table[p][r], c)
                    row.append(to_new(img))
                out.append(row)
            return out

        return Bimodule(self.algebra, n, conj(self.left), conj(self.right))


def random_bimodule(l: SemisimpleAlgebra, max_dim: int, rng: random.Random) -> Bimodule:
    """Random direct sum of simple bimodules in a random basis."""
    pieces = [(a, b) for a in range(len(l.blocks)) for b in range(len(l.blocks))]
    module = None
    for _ in range(rng.randint(1, 4)):
        a, b = rng.choice(pieces)
        size = l.blocks[a] * l.blocks[b]
        if module is not None and module.dim + size > max_dim:
            continue
        piece = Bimodule.simple(l, a, b)
        module = piece if module is None else module.direct_sum(piece)
    if module is None:
        a = min(range(len(l.blocks)), key=lambda i: l.blocks[i])
        module = Bimodule.simple(l, a, a)
    n = module.dim
    while True:
        change = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if linalg.inverse(change) is not None:
            return module.rebased(change)


def central_lift(m: Vec, sigma: CasimirElement, module: Bimodule) -> Vec:
    """``sigma' m sigma''``; always lies in the invariants ``U^l``."""
    out: dict = {}
    for e, f in sigma.terms:
        _add_into(out, module.act_right(module.act_left(e, m), f))
    return out


def dagger(u: Vec, sigma: CasimirElement, module: Bimodule) -> Vec:
    """Canonical representative of the class in ``U_l`` lifting to ``u``."""
    witness = module.is_central(u)
    if witness is not None:
        raise NotCentral(f"element does not commute with basis element {witness}")
    n = module.dim
    columns = [central_lift({k: Fraction(1)}, sigma, module) for k in range(n)]
    rows = [dict() for _ in range(n)]
    for k, col in enumerate(columns):
        for r, c in col.items():
            rows[r][k] = c
    x = linalg.solve(rows, n, [u.get(r, Fraction(0)) for r in range(n)])
    assert x is not None, "central_lift must be onto the invariants for a valid Casimir element"
    return module.commutator_subspace().reduce(x)
