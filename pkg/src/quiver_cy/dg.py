"""Differentials and morphisms of truncated tensor dg algebras.

A differential is given on generators and extended by the graded Leibniz
rule ``d(x_1...x_n) = sum (-1)^{|x_1...x_{i-1}|} x_1...d(x_i)...x_n``.
Because ``d`` can lengthen words, results are reported together with an
*effective cap*: the largest word length through which they are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import NotConnective, SpaceMismatch
from .series import DEFAULT_CAP, GeneratorSpace, NcSeries, Word, _add, filtered_intersection


@dataclass
class DgAlgebra:
    space: GeneratorSpace
    differential: dict = field(default_factory=dict)  # generator name -> NcSeries
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        for name, value in self.differential.items():
            g = self.space.generator(name)
            if value.space != self.space:
                raise SpaceMismatch(f"d({name}) lives in another space")
            for w in value.terms:
                if self.space.degree(w) != g.degree + 1:
                    raise ValueError(f"d({name}) must have degree {g.degree + 1}")
                if self.space.source(w) != self.space.vertex_index(g.source) or self.space.target(
                    w
                ) != self.space.vertex_index(g.target):
                    raise ValueError(f"d({name}) does not match the endpoints of {name}")

    def d_gen(self, name: str) -> NcSeries:
        value = self.differential.get(name)
        return NcSeries.zero(self.space, self.cap) if value is None else value

    @property
    def growth(self) -> int:
        """Largest increase in word length caused by applying ``d`` to one letter."""
        return max((v.max_length() - 1 for v in self.differential.values() if v.terms), default=0)

    @property
    def effective_cap(self) -> int:
        return self.cap - max(0, self.growth)

    def d(self, x: NcSeries) -> NcSeries:
        return extend_leibniz(self, x).series

    def d_word(self, w: Word, cap: int | None = None) -> dict:
        """``d`` of a single word as a term dictionary (no truncation unless ``cap`` is given)."""
        sp = self.space
        out: dict = {}
        if w[0] < 0:
            return out
        images = [self._image(i) for i in w]
        prefix_deg = 0
        for pos, i in enumerate(w):
            sign = -1 if prefix_deg % 2 else 1
            for m, c in images[pos].items():
                if m[0] < 0:
                    new = w[:pos] + w[pos + 1 :] or m
                else:
                    new = w[:pos] + m + w[pos + 1 :]
                if cap is None or sp.length(new) <= cap:
                    _add(out, new, sign * c)
            prefix_deg += sp._deg[i]
        return out

    def _image(self, i: int) -> dict:
        value = self.differential.get(self.space.generators[i].name)
        return {} if value is None else value.terms


@dataclass
class LeibnizResult:
    series: NcSeries
    effective_cap: int


def extend_leibniz(A: DgAlgebra, x: NcSeries) -> LeibnizResult:
    if x.space != A.space:
        raise SpaceMismatch("series is not in the algebra's space")
    cap = min(x.cap, A.cap)
    acc: dict = {}
    for w, c in x.terms.items():
        for m, v in A.d_word(w, cap).items():
            _add(acc, m, c * v)
    return LeibnizResult(NcSeries(A.space, acc, cap), cap - max(0, A.growth))


@dataclass
class Report:
    """Per-generator residuals; empty residuals mean the check passed."""

    residuals: dict
    effective_cap: int
    checked: int

    @property
    def ok(self) -> bool:
        return not self.residuals


def check_d_squared(A: DgAlgebra) -> Report:
    residuals = {}
    for g in A.space.generators:
        once = A.d_gen(g.name)
        twice = extend_leibniz(A, once).series
        if twice.terms:
            residuals[g.name] = twice
    return Report(residuals, A.effective_cap, len(A.space.generators))


@dataclass
class DgMorphism:
    """Algebra map on generators; ``vertex_map`` sends source vertices to target vertices."""

    source: DgAlgebra
    target: DgAlgebra
    action: dict  # source generator name -> NcSeries in target space
    vertex_map: dict | None = None

    def __post_init__(self):
        if self.vertex_map is None:
            self.vertex_map = {v: v for v in self.source.space.vertices}
        tsp = self.target.space
        for name, value in self.action.items():
            g = self.source.space.generator(name)
            if value.space != tsp:
                raise SpaceMismatch(f"image of {name} lives in another space")
            for w in value.terms:
                if tsp.degree(w) != g.degree:
                    raise ValueError(f"image of {name} must have degree {g.degree}")

    def image_gen(self, name: str) -> NcSeries:
        value = self.action.get(name)
        return NcSeries.zero(self.target.space, self.target.cap) if value is None else value

    def apply(self, x: NcSeries) -> NcSeries:
        if x.space != self.source.space:
            raise SpaceMismatch("series is not in the source space")
        tsp = self.target.space
        cap = min(x.cap, self.target.cap)
        out = NcSeries.zero(tsp, cap)
        for w, c in x.terms.items():
            if w[0] < 0:
                vertex = self.vertex_map[x.space.vertices[-1 - w[0]]]
                out = out + NcSeries.idem(tsp, vertex, c, cap)
                continue
            prod = self.image_gen(x.space.generators[w[0]].name).with_cap(cap)
            for i in w[1:]:
                prod = prod * self.image_gen(x.space.generators[i].name)
                if not prod.terms:
                    break
            out = out + prod.scale(c)
        return out


def check_chain_map(f: DgMorphism) -> Report:
    residuals = {}
    for g in f.source.space.generators:
        lhs = f.apply(f.source.d_gen(g.name))
        rhs = f.target.d(f.image_gen(g.name))
        r = lhs - rhs
        if r.terms:
            residuals[g.name] = r
    cap = min(f.source.effective_cap, f.target.effective_cap)
    return Report(residuals, cap, len(f.source.space.generators))


def identity_morphism(A: DgAlgebra) -> DgMorphism:
    return DgMorphism(A, A, {g.name: NcSeries.gen(A.space, g.name, cap=A.cap) for g in A.space.generators})


@dataclass
class H0Result:
    dimension: int
    basis: list
    relations: list


def h0_truncated(A: DgAlgebra, length: int) -> H0Result:
    """Dimension of degree-0 words of length ``<= length`` modulo boundaries landing there.

    Boundaries are images of degree ``-1`` words of length ``<= length``; only
    the part of their span supported on short words counts.
    """
    sp = A.space
    if any(g.degree > 0 for g in sp.generators):
        raise NotConnective("h0_truncated needs all generators in non-positive degrees")
    short = sp.words_upto(length, degree=0)
    # prefer long, late words as pivots so the surviving basis is made of short words
    short_order = sorted(short, key=sp.sort_key, reverse=True)
    sources = sp.words_upto(length, degree=-1)
    images = [A.d_word(w) for w in sources]
    relations = [NcSeries(sp, v, length) for v in images if v]
    sub = filtered_intersection(images, short_order)
    pivots = set(sub.pivots)
    basis = sorted((w for i, w in enumerate(short_order) if i not in pivots), key=sp.sort_key)
    return H0Result(len(short) - sub.dim, basis, relations)


def quotient_by_relations(space: GeneratorSpace, relations, length: int, degree: int = 0) -> H0Result:
    """Same truncation as ``h0_truncated`` for an ideal given by relations.

    A relation ``r`` stands in for ``d`` of a degree ``-1`` letter, so products
    ``u r v`` are formed for ``len(u) + len(v) + 1 <= length``.
    """
    from .series import ideal_span

    short = space.words_upto(length, degree=degree)
    short_order = sorted(short, key=space.sort_key, reverse=True)
    big = max((r.max_length() for r in relations), default=0) + length
    rels = [r.with_cap(big) for r in relations]
    images = [v for _, v in ideal_span(rels, big, source_bound=length)]
    sub = filtered_intersection(images, short_order)
    pivots = set(sub.pivots)
    basis = sorted((w for i, w in enumerate(short_order) if i not in pivots), key=space.sort_key)
    return H0Result(len(short) - sub.dim, basis, list(relations))
