"""Truncated elements of graded tensor algebras over ``k^n`` and their necklaces.

A word is a tuple of generator indices.  The empty word at vertex ``v`` (the
idempotent ``e_v``) is encoded as ``(-1 - v,)`` and has length 0.  Every
series carries a ``cap``: terms longer than the cap are dropped, so all
results are exact modulo words of length ``> cap``.

The rotation sign follows the Koszul rule: moving a block ``u`` past a block
``v`` costs ``(-1)^{|u||v|}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import SpaceMismatch

DEFAULT_CAP = 8

Word = tuple


def format_scalar(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_scalar(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


@dataclass(frozen=True)
class Generator:
    name: str
    source: object
    target: object
    degree: int = 0


@dataclass(frozen=True)
class GeneratorSpace:
    """Vertices plus homogeneous generators ``e_source V e_target``."""

    vertices: tuple
    generators: tuple[Generator, ...] = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "generators", tuple(self.generators))
        vindex = {v: i for i, v in enumerate(self.vertices)}
        if len(vindex) != len(self.vertices):
            raise ValueError("duplicate vertex")
        index = {}
        for i, g in enumerate(self.generators):
            if g.name in index:
                raise ValueError(f"duplicate generator {g.name!r}")
            if g.source not in vindex or g.target not in vindex:
                raise ValueError(f"generator {g.name!r} has an endpoint outside the vertex set")
            index[g.name] = i
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_deg", tuple(g.degree for g in self.generators))
        object.__setattr__(self, "_src", tuple(vindex[g.source] for g in self.generators))
        object.__setattr__(self, "_tgt", tuple(vindex[g.target] for g in self.generators))

    @classmethod
    def from_quiver(cls, quiver) -> "GeneratorSpace":
        return cls(quiver.vertices, tuple(Generator(a.name, a.source, a.target, a.degree) for a in quiver.arrows))

    def __hash__(self):
        return hash((self.vertices, self.generators))

    # lookups

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SpaceMismatch(f"unknown generator {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def generator(self, name: str) -> Generator:
        return self.generators[self.index(name)]

    def vertex_index(self, v) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise SpaceMismatch(f"unknown vertex {v!r}") from None

    def idempotent(self, v) -> Word:
        return (-1 - self.vertex_index(v),)

    # word helpers

    @staticmethod
    def is_idempotent(w: Word) -> bool:
        return w[0] < 0

    def length(self, w: Word) -> int:
        return 0 if w[0] < 0 else len(w)

    def degree(self, w: Word) -> int:
        if w[0] < 0:
            return 0
        deg = self._deg
        return sum(deg[i] for i in w)

    def source(self, w: Word) -> int:
        return -1 - w[0] if w[0] < 0 else self._src[w[0]]

    def target(self, w: Word) -> int:
        return -1 - w[0] if w[0] < 0 else self._tgt[w[-1]]

    def is_cyclic(self, w: Word) -> bool:
        return self.source(w) == self.target(w)

    def concat(self, u: Word, v: Word) -> Word | None:
        if self.target(u) != self.source(v):
            return None
        if u[0] < 0:
            return v
        if v[0] < 0:
            return u
        return u + v

    def word(self, names: Sequence[str]) -> Word:
        w = tuple(self.index(n) for n in names)
        if not w:
            raise ValueError("use idempotent() for empty words")
        for a, b in zip(w, w[1:]):
            if self._tgt[a] != self._src[b]:
                raise ValueError(f"word {list(names)} is not composable")
        return w

    def letters(self, w: Word) -> tuple[str, ...]:
        if w[0] < 0:
            return ()
        return tuple(self.generators[i].name for i in w)

    def render_word(self, w: Word) -> str:
        if w[0] < 0:
            return f"e{self.vertices[-1 - w[0]]}"
        return " ".join(self.generators[i].name for i in w)

    @staticmethod
    def sort_key(w: Word):
        return (0, (-1 - w[0],)) if w[0] < 0 else (len(w), w)

    def words(self, length: int) -> tuple[Word, ...]:
        """All composable words of the given length in canonical order."""
        key = ("words", length)
        if key not in self._cache:
            if length == 0:
                out = tuple((-1 - v,) for v in range(len(self.vertices)))
            else:
                out_from = {}
                for i, s in enumerate(self._src):
                    out_from.setdefault(s, []).append(i)
                layer = [(i,) for i in range(len(self.generators))]
                for _ in range(length - 1):
                    layer = [w + (j,) for w in layer for j in out_from.get(self._tgt[w[-1]], ())]
                out = tuple(sorted(layer))
            self._cache[key] = out
        return self._cache[key]

    def words_upto(self, length: int, degree: int | None = None, cyclic: bool = False) -> list[Word]:
        out = []
        for n in range(length + 1):
            for w in self.words(n):
                if degree is not None and self.degree(w) != degree:
                    continue
                if cyclic and not self.is_cyclic(w):
                    continue
                out.append(w)
        return out

    # derived spaces

    def restrict(self, names: Iterable[str], vertices: Iterable | None = None) -> "GeneratorSpace":
        keep = set(names)
        verts = self.vertices if vertices is None else tuple(vertices)
        return GeneratorSpace(verts, tuple(g for g in self.generators if g.name in keep))

    def extended(self, generators: Iterable[Generator], vertices: Iterable = ()) -> "GeneratorSpace":
        verts = self.vertices + tuple(v for v in vertices if v not in self._vindex)
        return GeneratorSpace(verts, self.generators + tuple(generators))

    def check_window(self, lo: int | None, hi: int | None) -> list[str]:
        """Names of generators whose degree lies outside ``[lo, hi]``."""
        return [
            g.name
            for g in self.generators
            if (lo is not None and g.degree < lo) or (hi is not None and g.degree > hi)
        ]


def _add(acc: dict, key, value) -> None:
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def rotation_sign(space: GeneratorSpace, w: Word, k: int) -> int:
    """Sign turning ``w`` into ``w[k:] + w[:k]``."""
    a = space.degree(w[:k]) if k else 0
    b = space.degree(w[k:]) if k < len(w) else 0
    return -1 if (a * b) % 2 else 1


def canonical_rotation(space: GeneratorSpace, w: Word) -> tuple[Word, int]:
    """Least rotation of a cyclic word and the sign reaching it; sign 0 if the class vanishes."""
    best, best_sign = w, 1
    for k in range(1, len(w)):
        r = w[k:] + w[:k]
        if r < best:
            best, best_sign = r, rotation_sign(space, w, k)
    # a rotation fixing the word with sign -1 kills the class
    for k in range(1, len(best)):
        if best[k:] + best[:k] == best and rotation_sign(space, best, k) == -1:
            return best, 0
    return best, best_sign


class NcSeries:
    """Finite sum of composable words with rational coefficients, truncated at ``cap``."""

    __slots__ = ("space", "cap", "terms")

    def __init__(self, space: GeneratorSpace, terms: Mapping | Iterable = (), cap: int = DEFAULT_CAP):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        self.space = space
        self.cap = cap
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            if space.length(w) > cap:
                continue
            _add(acc, w, Fraction(c))
        self.terms = acc

    # constructors

    @classmethod
    def zero(cls, space, cap=DEFAULT_CAP):
        return cls(space, {}, cap)

    @classmethod
    def gen(cls, space, name, coeff=1, cap=DEFAULT_CAP):
        return cls(space, {(space.index(name),): coeff}, cap)

    @classmethod
    def path(cls, space, names: Sequence[str], coeff=1, cap=DEFAULT_CAP):
        return cls(space, {space.word(names): coeff}, cap)

    @classmethod
    def idem(cls, space, vertex, coeff=1, cap=DEFAULT_CAP):
        return cls(space, {space.idempotent(vertex): coeff}, cap)

    @classmethod
    def unit(cls, space, cap=DEFAULT_CAP):
        return cls(space, {(-1 - i,): 1 for i in range(len(space.vertices))}, cap)

    # arithmetic

    def _check(self, other: "NcSeries") -> None:
        if not isinstance(other, NcSeries) or other.space != self.space:
            raise SpaceMismatch("series live in different spaces")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add(acc, w, c)
        return NcSeries(self.space, acc, min(self.cap, other.cap))

    def __neg__(self):
        return NcSeries(self.space, {w: -c for w, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NcSeries":
        c = Fraction(c)
        return NcSeries(self.space, {w: c * v for w, v in self.terms.items()}, self.cap)

    def __mul__(self, other):
        if not isinstance(other, NcSeries):
            return self.scale(other)
        self._check(other)
        cap = min(self.cap, other.cap)
        sp = self.space
        acc: dict = {}
        for u, a in self.terms.items():
            lu = sp.length(u)
            for v, b in other.terms.items():
                if lu + sp.length(v) > cap:
                    continue
                w = sp.concat(u, v)
                if w is not None:
                    _add(acc, w, a * b)
        return NcSeries(sp, acc, cap)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        return isinstance(other, NcSeries) and other.space == self.space and other.terms == self.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"NcSeries({self.render()})"

    # queries

    def with_cap(self, cap: int) -> "NcSeries":
        return NcSeries(self.space, self.terms, cap)

    def max_length(self) -> int:
        return max((self.space.length(w) for w in self.terms), default=0)

    def min_length(self) -> int:
        return min((self.space.length(w) for w in self.terms), default=0)

    def components(self) -> dict[int, "NcSeries"]:
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(self.space.degree(w), {})[w] = c
        return {k: NcSeries(self.space, v, self.cap) for k, v in out.items()}

    def degree(self) -> int | None:
        degs = {self.space.degree(w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def filter(self, keep) -> "NcSeries":
        return NcSeries(self.space, {w: c for w, c in self.terms.items() if keep(w)}, self.cap)

    def without(self, names: Iterable[str]) -> "NcSeries":
        """Image under the map sending the named generators to zero."""
        drop = {self.space.index(n) for n in names if n in self.space}
        return self.filter(lambda w: w[0] < 0 or not drop.intersection(w))

    def transport(self, space: GeneratorSpace, cap: int | None = None) -> "NcSeries":
        """Same element read in another space, matching generators by name and vertices by label."""
        return NcSeries(space, _transport_terms(self.space, space, self.terms), self.cap if cap is None else cap)

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: self.space.sort_key(t[0]))

    def render(self) -> str:
        return render_terms(self.space, self.sorted_terms())


def _transport_terms(src: GeneratorSpace, dst: GeneratorSpace, terms: Mapping) -> dict:
    gen_map = {}
    out = {}
    for w, c in terms.items():
        if w[0] < 0:
            nw = dst.idempotent(src.vertices[-1 - w[0]])
        else:
            letters = []
            for i in w:
                if i not in gen_map:
                    g = src.generators[i]
                    j = dst.index(g.name)
                    h = dst.generators[j]
                    if (h.source, h.target, h.degree) != (g.source, g.target, g.degree):
                        raise SpaceMismatch(f"generator {g.name!r} differs between spaces")
                    gen_map[i] = j
                letters.append(gen_map[i])
            nw = tuple(letters)
        out[nw] = c
    return out


def render_terms(space: GeneratorSpace, items) -> str:
    parts = []
    for w, c in items:
        body = f"{format_scalar(abs(c))}·{space.render_word(w)}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


class Necklace:
    """Element of ``Tr(A) = A/[A,A]`` stored on canonical rotations."""

    __slots__ = ("space", "cap", "terms")

    def __init__(self, space: GeneratorSpace, terms: Mapping | Iterable = (), cap: int = DEFAULT_CAP):
        self.space = space
        self.cap = cap
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            if w[0] < 0 or len(w) > cap or not space.is_cyclic(w):
                continue
            cw, sign = canonical_rotation(space, w)
            if sign:
                _add(acc, cw, sign * Fraction(c))
        self.terms = acc

    @classmethod
    def cycle(cls, space, names: Sequence[str], coeff=1, cap=DEFAULT_CAP):
        return cls(space, {space.word(names): coeff}, cap)

    def _check(self, other):
        if not isinstance(other, Necklace) or other.space != self.space:
            raise SpaceMismatch("necklaces live in different spaces")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add(acc, w, c)
        return Necklace(self.space, acc, min(self.cap, other.cap))

    def __neg__(self):
        return Necklace(self.space, {w: -c for w, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return Necklace(self.space, {w: c * v for w, v in self.terms.items()}, self.cap)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        return isinstance(other, Necklace) and other.space == self.space and other.terms == self.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Necklace({self.render()})"

    def degree(self) -> int | None:
        degs = {self.space.degree(w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def components(self) -> dict[int, "Necklace"]:
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(self.space.degree(w), {})[w] = c
        return {k: Necklace(self.space, v, self.cap) for k, v in out.items()}

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def representative(self) -> NcSeries:
        return NcSeries(self.space, self.terms, self.cap)

    def filter(self, keep) -> "Necklace":
        return Necklace(self.space, {w: c for w, c in self.terms.items() if keep(w)}, self.cap)

    def without(self, names: Iterable[str]) -> "Necklace":
        drop = {self.space.index(n) for n in names if n in self.space}
        return self.filter(lambda w: not drop.intersection(w))

    def transport(self, space: GeneratorSpace, cap: int | None = None) -> "Necklace":
        return Necklace(space, _transport_terms(self.space, space, self.terms), self.cap if cap is None else cap)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.space.sort_key(t[0]))

    def render(self) -> str:
        return render_terms(self.space, self.sorted_terms())


def trace_project(x: NcSeries) -> Necklace:
    return Necklace(x.space, x.terms, x.cap)


def sym(w: Necklace) -> NcSeries:
    """Sum of all rotations of each necklace word with Koszul signs."""
    sp = w.space
    acc: dict = {}
    for word, c in w.terms.items():
        for k in range(len(word)):
            _add(acc, word[k:] + word[:k], rotation_sign(sp, word, k) * c)
    return NcSeries(sp, acc, w.cap)


def graded_commutator(a: NcSeries, b: NcSeries) -> NcSeries:
    a._check(b)
    sp = a.space
    cap = min(a.cap, b.cap)
    acc: dict = {}
    for u, x in a.terms.items():
        du, lu = sp.degree(u), sp.length(u)
        for v, y in b.terms.items():
            if lu + sp.length(v) > cap:
                continue
            sign = -1 if (du * sp.degree(v)) % 2 else 1
            uv = sp.concat(u, v)
            if uv is not None:
                _add(acc, uv, x * y)
            vu = sp.concat(v, u)
            if vu is not None:
                _add(acc, vu, -sign * x * y)
    return NcSeries(sp, acc, cap)


# membership


@dataclass
class Membership:
    member: bool
    witness: object = None


def _commutator_witness(sp: GeneratorSpace, x: NcSeries):
    """Write the commutator part of ``x`` as explicit commutators.

    Returns ``(terms, residue)`` with ``x = sum c [u, v] + residue`` where the
    residue is supported on canonical necklace words and idempotents.
    """
    terms = []
    residue: dict = {}
    for w, c in x.sorted_terms():
        if w[0] < 0:
            _add(residue, w, c)
            continue
        s, t = sp.source(w), sp.target(w)
        if s != t:
            terms.append((c, (-1 - s,), w))
            continue
        cw, sign = canonical_rotation(sp, w)
        if sign == 0:
            # the word equals minus one of its rotations: w = [u, v] / 2
            k = next(k for k in range(1, len(w)) if w[k:] + w[:k] == w and rotation_sign(sp, w, k) == -1)
            terms.append((c / 2, w[:k], w[k:]))
            continue
        if cw == w:
            _add(residue, w, c)
            continue
        k = next(k for k in range(1, len(w)) if w[k:] + w[:k] == cw and rotation_sign(sp, w, k) == sign)
        terms.append((c, w[:k], w[k:]))
        _add(residue, cw, sign * c)
    return terms, residue


def expand_commutators(space: GeneratorSpace, terms, cap=DEFAULT_CAP) -> NcSeries:
    """Evaluate ``sum c [u, v]`` for a witness list."""
    out = NcSeries.zero(space, cap)
    for c, u, v in terms:
        out = out + graded_commutator(NcSeries(space, {u: c}, cap), NcSeries(space, {v: 1}, cap))
    return out


def in_commutators(x: NcSeries) -> Membership:
    """Is ``x`` in ``[A, A]``?  The witness is a list ``(c, u, v)`` with ``x = sum c [u, v]``."""
    terms, residue = _commutator_witness(x.space, x)
    return Membership(not residue, terms if not residue else residue)


def in_unital_commutators(x: NcSeries) -> Membership:
    """Is ``x`` in ``l + [A, A]``?  The witness is ``(l-part, commutator terms)``."""
    terms, residue = _commutator_witness(x.space, x)
    idem = {w: c for w, c in residue.items() if w[0] < 0}
    rest = {w: c for w, c in residue.items() if w[0] >= 0}
    return Membership(not rest, (idem, terms) if not rest else rest)


def in_l_commutators(x: NcSeries) -> Membership:
    """Is ``x`` in ``[l, A]``?  Only non-cyclic words survive there."""
    sp = x.space
    bad = {w: c for w, c in x.terms.items() if sp.is_cyclic(w)}
    if bad:
        return Membership(False, bad)
    return Membership(True, [(c, (-1 - sp.source(w),), w) for w, c in x.sorted_terms()])


def ideal_span(relations: Sequence[NcSeries], length: int, source_bound: int | None = None) -> list[tuple[tuple, dict]]:
    """Products ``u r v`` of relations with words, truncated at ``length``.

    By default a product is kept when some term survives the truncation.  With
    ``source_bound`` set, only products with ``len(u) + len(v) + 1 <= source_bound``
    are formed (mirroring a differential applied to words of bounded length).
    """
    out = []
    if not relations:
        return out
    sp = relations[0].space
    for ri, r in enumerate(relations):
        if not r.terms:
            continue
        rmin = r.min_length()
        for lu in range(length + 1):
            for lv in range(length + 1 - lu):
                if source_bound is not None:
                    if lu + lv + 1 > source_bound:
                        continue
                elif lu + lv + rmin > length:
                    continue
                for u in sp.words(lu):
                    for v in sp.words(lv):
                        vec: dict = {}
                        for w, c in r.terms.items():
                            if lu + lv + sp.length(w) > length:
                                continue
                            uw = sp.concat(u, w)
                            if uw is None:
                                continue
                            uwv = sp.concat(uw, v)
                            if uwv is not None:
                                _add(vec, uwv, c)
                        if vec:
                            out.append(((u, ri, v), vec))
    return out


def in_ideal(x: NcSeries, relations: Sequence[NcSeries]) -> Membership:
    """Is ``x`` in the two-sided ideal generated by ``relations`` modulo length ``> cap``?

    The witness maps ``(u, relation index, v)`` to the coefficient of ``u r v``.
    """
    for r in relations:
        x._check(r)
    span = ideal_span(relations, x.cap)
    keys = [k for k, _ in span]
    coeffs = linalg.express([v for _, v in span], x.terms)
    if coeffs is None:
        return Membership(False, None)
    return Membership(True, {keys[i]: c for i, c in coeffs.items()})


def coinvariants_basis(space: GeneratorSpace, degree: int, length: int) -> list[Word]:
    """Basis of ``(A/[l,A])`` in one (degree, length) component: the cyclic words."""
    return [w for w in space.words(length) if space.degree(w) == degree and space.is_cyclic(w)]


def necklace_basis(space: GeneratorSpace, degree: int, length: int) -> list[Word]:
    """Canonical necklace words of a (degree, length) component that do not vanish."""
    out = []
    for w in coinvariants_basis(space, degree, length):
        if length == 0:
            continue
        cw, sign = canonical_rotation(space, w)
        if cw == w and sign:
            out.append(w)
    return out


def filtered_intersection(images: Sequence[Mapping], short: Sequence, key=None) -> linalg.Subspace:
    """``span(images)`` intersected with the span of the ``short`` coordinates.

    Coordinates not in ``short`` are eliminated first, so every reduced row whose
    pivot is a short coordinate is free of the others.  The result is a subspace
    of the coordinate space indexed by ``short`` (in the given order).
    """
    short_index = {w: i for i, w in enumerate(short)}
    longs = sorted({w for v in images for w in v if w not in short_index}, key=key or GeneratorSpace.sort_key)
    long_index = {w: i for i, w in enumerate(longs)}
    n_long = len(longs)
    rows = []
    for v in images:
        row = {}
        for w, c in v.items():
            row[long_index[w] if w in long_index else n_long + short_index[w]] = c
        if row:
            rows.append(row)
    reduced, pivots = linalg.rref(rows, n_long + len(short))
    kept = [{j - n_long: c for j, c in row.items()} for row, p in zip(reduced, pivots) if p >= n_long]
    return linalg.Subspace(kept, len(short))
