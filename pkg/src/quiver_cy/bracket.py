"""Pairings and the double / single necklace brackets they induce.

A pairing ``eta = sum c_uv u (x) v`` of degree ``n`` gives a bracket of
degree ``k = -n``.  With ``C`` the coefficient matrix of ``eta`` and
``lam = C^{-1}``, generators bracket as

    {{x, y}} = lam(x, y) e_{t(x)} (x) e_{s(x)}

and this is extended as a double derivation in the second slot and through
graded anti-symmetry in the first.  The single bracket is the product of the
two tensor factors.  Generators outside the pairing's space bracket to zero.
With ``eta = sum [a, a*]`` and ``W`` a potential, ``{W, a*} = -d_a W``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .errors import DegeneratePairing, DegreeWindow
from .series import (
    GeneratorSpace,
    Generator,
    Necklace,
    NcSeries,
    Word,
    _add,
    trace_project,
)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass
class PairingReport:
    antisymmetric: bool
    nondegenerate: bool
    witness: object = None

    @property
    def ok(self) -> bool:
        return self.antisymmetric and self.nondegenerate


@dataclass
class Pairing:
    space: GeneratorSpace
    degree: int
    coeffs: dict = field(default_factory=dict)  # (name_u, name_v) -> Fraction
    _inverse: dict | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        clean = {}
        for (u, v), c in self.coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            gu, gv = self.space.generator(u), self.space.generator(v)
            if gu.target != gv.source or gv.target != gu.source:
                raise ValueError(f"pair ({u}, {v}) has mismatched endpoints")
            if gu.degree + gv.degree != self.degree:
                raise ValueError(f"pair ({u}, {v}) is not of degree {self.degree}")
            clean[(u, v)] = c
        self.coeffs = clean

    @property
    def bracket_degree(self) -> int:
        return -self.degree

    def c(self, u: str, v: str) -> Fraction:
        return self.coeffs.get((u, v), Fraction(0))

    def inverse(self) -> dict:
        """``lam(x, y)`` for generator names, keyed by pairs with nonzero entries."""
        if self._inverse is None:
            names = self.space.names
            n = len(names)
            mat = [[self.c(u, v) for v in names] for u in names]
            inv = linalg.inverse(mat)
            if inv is None:
                raise DegeneratePairing("pairing matrix is singular")
            self._inverse = {(names[i], names[j]): inv[i][j] for i in range(n) for j in range(n) if inv[i][j]}
        return self._inverse

    def multiplied(self, space: GeneratorSpace | None = None, cap: int = 8) -> NcSeries:
        """``mu(eta) = sum c_uv u v`` in ``space`` (defaults to the pairing's own)."""
        sp = self.space if space is None else space
        terms = {(sp.index(u), sp.index(v)): c for (u, v), c in self.coeffs.items()}
        return NcSeries(sp, terms, cap)

    def as_tensor(self) -> dict:
        return dict(self.coeffs)


def check_pairing(eta: Pairing) -> PairingReport:
    sp = eta.space
    for (u, v), c in sorted(eta.coeffs.items()):
        du, dv = sp.generator(u).degree, sp.generator(v).degree
        if eta.c(v, u) != -_sign(du * dv) * c:
            return PairingReport(False, _nondegenerate(eta), (u, v))
    return PairingReport(True, _nondegenerate(eta))


def _nondegenerate(eta: Pairing) -> bool:
    sp = eta.space
    by_degree: dict = {}
    for g in sp.generators:
        by_degree.setdefault(g.degree, []).append(g.name)
    for deg, names in by_degree.items():
        partners = by_degree.get(eta.degree - deg, [])
        if len(partners) != len(names):
            return False
        mat = [[eta.c(u, v) for v in partners] for u in names]
        if linalg.rank([{j: x for j, x in enumerate(r) if x} for r in mat], len(partners)) != len(names):
            return False
    return True


def eta_B_from_F(F: GeneratorSpace, d: int) -> tuple[GeneratorSpace, Pairing]:
    """Extend ``F`` by dual generators ``y*`` (reversed, degree ``3 - d - |y|``) with the standard pairing."""
    bad = [g.name for g in F.generators if g.degree > 0 or 2 * g.degree < 3 - d]
    if bad:
        raise DegreeWindow(f"generators {bad} violate the window for d={d}")
    duals = [Generator(g.name + "*", g.target, g.source, 3 - d - g.degree) for g in F.generators]
    space = F.extended(duals)
    coeffs = {}
    for g, h in zip(F.generators, duals):
        coeffs[(g.name, h.name)] = Fraction(_sign((d - 3) * g.degree))
        coeffs[(h.name, g.name)] = Fraction(-_sign(g.degree * g.degree))
    return space, Pairing(space, 3 - d, coeffs)


class _Bracketer:
    """Word-level bracket computations in an ambient space for one pairing."""

    def __init__(self, space: GeneratorSpace, eta: Pairing):
        self.sp = space
        self.k = eta.bracket_degree
        lam = eta.inverse()
        self.lam: dict = {}
        for (x, y), c in lam.items():
            if x in space and y in space:
                self.lam[(space.index(x), space.index(y))] = c
        self.partners: dict = {}
        for (x, y), c in self.lam.items():
            self.partners.setdefault(x, []).append((y, c))

    def word_gen(self, U: Word, v: int) -> list:
        """``{{U, v}}`` for a word ``U`` and a generator ``v`` as ``(left, right, coeff)``."""
        sp, k = self.sp, self.k
        if U[0] < 0:
            return []
        out = []
        du = sp.degree(U)
        dv = sp._deg[v]
        sv, tv = sp._src[v], sp._tgt[v]
        pref = 0
        for i, u in enumerate(U):
            lam = self.lam.get((v, u))
            if lam:
                before, after = U[:i], U[i + 1 :]
                d_after = sp.degree(after) if after else 0
                e = (du + k) * (dv + k) + (dv + k) * pref + pref * d_after
                left = after if after else (-1 - sv,)
                right = before if before else (-1 - tv,)
                out.append((left, right, -_sign(e) * lam))
            pref += sp._deg[u]
        return out

    def word_word(self, U: Word, W: Word) -> list:
        """``{{U, W}}`` as a list of ``(left, right, coeff)``."""
        sp, k = self.sp, self.k
        if U[0] < 0 or W[0] < 0:
            return []
        out = []
        du = sp.degree(U)
        pref = 0
        for j, w in enumerate(W):
            pieces = self.word_gen(U, w)
            if pieces:
                sign = _sign((du + k) * pref)
                before, after = W[:j], W[j + 1 :]
                for left, right, c in pieces:
                    lw = sp.concat(before, left) if before else left
                    rw = sp.concat(right, after) if after else right
                    if lw is None or rw is None:
                        continue
                    out.append((lw, rw, sign * c))
            pref += sp._deg[w]
        return out


@dataclass
class DoubleTensor:
    """Element of ``A (x) A`` as ``{(left word, right word): coeff}``."""

    space: GeneratorSpace
    terms: dict

    def multiply(self, cap: int) -> NcSeries:
        acc: dict = {}
        for (l, r), c in self.terms.items():
            w = self.space.concat(l, r)
            if w is not None:
                _add(acc, w, c)
        return NcSeries(self.space, acc, cap)

    def __bool__(self):
        return bool(self.terms)


def _terms_of(x):
    return x.terms.items()


def double_bracket(a, b, eta: Pairing) -> DoubleTensor:
    """``{{a, b}}`` for series (or necklace representatives) in a common ambient space."""
    br = _Bracketer(a.space, eta)
    acc: dict = {}
    for U, x in _terms_of(a):
        for W, y in _terms_of(b):
            for l, r, c in br.word_word(U, W):
                _add(acc, (l, r), x * y * c)
    return DoubleTensor(a.space, acc)


def single_bracket(w, v: NcSeries, eta: Pairing) -> NcSeries:
    """``{w, v}``: multiplication image of the double bracket."""
    if w.space != v.space:
        from .errors import SpaceMismatch

        raise SpaceMismatch("bracket arguments live in different spaces")
    br = _Bracketer(v.space, eta)
    sp = v.space
    cap = v.cap
    acc: dict = {}
    for U, x in _terms_of(w):
        for W, y in _terms_of(v):
            for l, r, c in br.word_word(U, W):
                m = sp.concat(l, r)
                if m is not None and sp.length(m) <= cap:
                    _add(acc, m, x * y * c)
    return NcSeries(sp, acc, cap)


def necklace_bracket(w1, w2, eta: Pairing) -> Necklace:
    """``{w1, w2}`` on necklaces, computed on a representative of ``w2``."""
    rep = w2.representative() if isinstance(w2, Necklace) else w2
    return trace_project(single_bracket(w1, rep, eta))


def shifted_degree(x, eta: Pairing) -> int | None:
    deg = x.degree()
    return None if deg is None else deg + eta.bracket_degree


def left_loday_check(w1, w2, v: NcSeries, eta: Pairing) -> NcSeries:
    """Residual of the left Loday identity; zero when the bracket behaves."""
    zero = NcSeries.zero(v.space, v.cap)
    if not w1 or not w2:
        return zero
    out = zero
    for x in (w1.components() if w1 else {}).values():
        for y in w2.components().values():
            sx, sy = shifted_degree(x, eta), shifted_degree(y, eta)
            first = single_bracket(x, single_bracket(y, v, eta), eta)
            second = single_bracket(y, single_bracket(x, v, eta), eta)
            third = single_bracket(necklace_bracket(x, y, eta), v, eta)
            out = out + first - second.scale(_sign(sx * sy)) - third
    return out
