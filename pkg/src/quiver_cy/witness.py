"""Hochschild and cyclic homology of truncated tensor dg algebras, and Calabi–Yau witnesses.

For ``A = T_l V`` over ``l = k^n``:

* ``(Omega^1_l A)_nat`` has basis ``a·Dg`` with ``g`` a generator and ``a g`` a cycle;
* ``partial0`` sends a word ``u_1...u_n`` to ``sum ± (u_{>i} u_{<i})·Du_i``;
* ``partial1`` sends ``a·Db`` to ``ab - (-1)^{|a||b|} ba``.

Reduced Hochschild homology is the homology of the cone of ``partial1`` into
``(A/l)_l``; reduced cyclic homology is the homology of the necklace complex
``A/(l + [A,A])``.  Both are computed per degree on words of length
``<= cap``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .bracket import Pairing
from .constructions import GLResult
from .dg import DgAlgebra, DgMorphism
from .errors import CapInsufficient, NotClosed, NotNormalForm
from .semisimple import Bimodule, SemisimpleAlgebra, Trace, casimir, central_lift, dagger
from .series import (
    GeneratorSpace,
    Necklace,
    NcSeries,
    _add,
    filtered_intersection,
    in_unital_commutators,
    necklace_basis,
    trace_project,
)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


class OmegaNat:
    """Element of ``(Omega^1_l A)_nat`` as ``{(a, g): coeff}``; ``a`` may be an idempotent."""

    __slots__ = ("space", "cap", "terms")

    def __init__(self, space: GeneratorSpace, terms: Mapping = (), cap: int = 8):
        self.space = space
        self.cap = cap
        acc: dict = {}
        for key, c in dict(terms).items():
            _add(acc, key, Fraction(c))
        self.terms = acc

    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add(acc, k, c)
        return OmegaNat(self.space, acc, min(self.cap, other.cap))

    def __neg__(self):
        return OmegaNat(self.space, {k: -c for k, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return OmegaNat(self.space, {k: c * v for k, v in self.terms.items()}, self.cap)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, OmegaNat) and other.space == self.space and other.terms == self.terms

    __hash__ = None

    def render(self) -> str:
        sp = self.space
        items = sorted(self.terms.items(), key=lambda t: (sp.sort_key(t[0][0]), t[0][1]))
        parts = []
        for (a, g), c in items:
            body = f"{abs(c)}·{sp.render_word(a)}·D{sp.generators[g].name}"
            parts.append(("-" if c < 0 else "") + body if not parts else ("- " if c < 0 else "+ ") + body)
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"OmegaNat({self.render()})"


def _natural(sp: GeneratorSpace, prefix, g: int, suffix):
    """``prefix·Dg·suffix`` in the ``nat`` quotient: ``(suffix prefix)·Dg`` with its sign."""
    dp = sp.degree(prefix) if prefix else 0
    ds = sp.degree(suffix) if suffix else 0
    if suffix and prefix:
        a = sp.concat(suffix, prefix)
    else:
        a = suffix or prefix or (-1 - sp._tgt[g],)
    if a is None or sp.target(a) != sp._src[g] or sp.source(a) != sp._tgt[g]:
        return None
    return a, _sign(ds * (dp + sp._deg[g]))


def _omega_of_word(sp: GeneratorSpace, w, coeff, acc: dict, left=(), right=()) -> None:
    """Add ``left·D(w)·right`` (Leibniz over ``w``) to ``acc``."""
    if w[0] < 0:
        return
    for i, g in enumerate(w):
        prefix = left + w[:i]
        suffix = w[i + 1 :] + right
        res = _natural(sp, prefix, g, suffix)
        if res is not None:
            a, s = res
            _add(acc, (a, g), s * coeff)


def partial0(x) -> OmegaNat:
    """``Da`` for a necklace or series ``x``."""
    acc: dict = {}
    for w, c in x.terms.items():
        _omega_of_word(x.space, w, c, acc)
    return OmegaNat(x.space, acc, x.cap)


def partial1(omega: OmegaNat) -> NcSeries:
    """``a·Db -> [a, b]`` as a series of cyclic words (idempotent parts dropped)."""
    sp = omega.space
    acc: dict = {}
    for (a, g), c in omega.terms.items():
        gw = (g,)
        ag = sp.concat(a, gw)
        ga = sp.concat(gw, a)
        if ag is not None:
            _add(acc, ag, c)
        if ga is not None:
            _add(acc, ga, -_sign(sp.degree(a) * sp._deg[g]) * c)
    return NcSeries(sp, {w: c for w, c in acc.items() if w[0] >= 0}, omega.cap + 1)


def d_omega(A: DgAlgebra, omega: OmegaNat) -> OmegaNat:
    """Differential of ``(Omega^1 A)_nat`` induced by ``d``: ``d(a·Dg) = d(a)·Dg + (-1)^{|a|} a·D(dg)``."""
    sp = A.space
    acc: dict = {}
    for (a, g), c in omega.terms.items():
        for m, v in A.d_word(a).items():
            _add(acc, (m, g), c * v)
        sa = _sign(sp.degree(a))
        dg = A._image(g)
        left = () if a[0] < 0 else a
        for m, v in dg.items():
            _omega_of_word(sp, m, sa * c * v, acc, left=left)
    return OmegaNat(sp, acc, omega.cap)


# truncated homology


@dataclass
class Homology:
    dimension: int
    basis: list
    effective_cap: int


def _check_cap(A: DgAlgebra, cap: int) -> None:
    need = A.growth + 1
    if cap < need:
        raise CapInsufficient(f"cap {cap} is below the longest differential ({need})", required=need)


def _homology(basis_here, basis_below, delta, key) -> tuple[int, list]:
    """Truncated homology at one spot: cycles among ``basis_here`` modulo short boundaries."""
    cols = [delta(b) for b in basis_here]
    coords = sorted({k for col in cols for k in col}, key=key)
    cindex = {k: i for i, k in enumerate(coords)}
    rows = [dict() for _ in coords]
    for j, col in enumerate(cols):
        for k, c in col.items():
            rows[cindex[k]][j] = c
    cycles = linalg.nullspace(rows, len(basis_here))
    images = [delta(b) for b in basis_below]
    bound = filtered_intersection(images, basis_here, key=key)
    classes = []
    span = linalg.Subspace(list(bound.rows), len(basis_here))
    for z in cycles:
        r = span.reduce(z)
        if r:
            classes.append({basis_here[i]: c for i, c in sorted(z.items())})
            span = linalg.Subspace(list(span.rows) + [r], len(basis_here))
    return len(cycles) - bound.dim, classes


def _necklace_words(sp: GeneratorSpace, degree: int, cap: int) -> list:
    return [w for n in range(1, cap + 1) for w in necklace_basis(sp, degree, n)]


def hc_red(A: DgAlgebra, n: int, cap: int) -> Homology:
    """Reduced cyclic homology in homological degree ``n`` (internal degree ``-n``)."""
    _check_cap(A, cap)
    sp = A.space

    def delta(w):
        return trace_project(NcSeries(sp, A.d_word(w), cap=10**9)).terms

    here = _necklace_words(sp, -n, cap)
    below = _necklace_words(sp, -n - 1, cap)
    dim, classes = _homology(here, below, delta, sp.sort_key)
    return Homology(dim, classes, cap - A.growth)


def omega_basis(sp: GeneratorSpace, degree: int, cap: int) -> list:
    """Basis ``(a, g)`` of the ``nat`` module with ``|a| + |g| = degree`` and ``len(a) + 1 <= cap``."""
    out = []
    for n in range(cap):
        for a in sp.words(n):
            for g in range(len(sp.generators)):
                if sp.target(a) == sp._src[g] and sp.source(a) == sp._tgt[g] and sp.degree(a) + sp._deg[g] == degree:
                    out.append((a, g))
    return out


def _cone_key(sp):
    def key(k):
        if k[0] == "a":
            return (1, sp.sort_key(k[1]))
        return (0, sp.sort_key(k[1]), k[2])

    return key


def _cone_delta(A: DgAlgebra):
    sp = A.space

    def delta(b):
        out: dict = {}
        if b[0] == "o":
            om = OmegaNat(sp, {(b[1], b[2]): 1}, 10**9)
            for (a, g), c in d_omega(A, om).terms.items():
                _add(out, ("o", a, g), -c)
            for w, c in partial1(om).terms.items():
                if sp.is_cyclic(w):
                    _add(out, ("a", w), c)
        else:
            for w, c in A.d_word(b[1]).items():
                if w[0] >= 0 and sp.is_cyclic(w):
                    _add(out, ("a", w), c)
        return out

    return delta


def cone_basis(sp: GeneratorSpace, degree: int, cap: int) -> list:
    omegas = [("o", a, g) for a, g in omega_basis(sp, degree + 1, cap)]
    words = [("a", w) for w in sp.words_upto(cap, degree=degree, cyclic=True) if w[0] >= 0]
    return omegas + words


def hh_red(A: DgAlgebra, n: int, cap: int) -> Homology:
    """Reduced Hochschild homology in homological degree ``n`` via ``cone(partial1)``."""
    _check_cap(A, cap)
    sp = A.space
    delta = _cone_delta(A)
    here = cone_basis(sp, -n, cap)
    below = cone_basis(sp, -n - 1, cap)
    dim, classes = _homology(here, below, delta, _cone_key(sp))
    return Homology(dim, classes, cap - A.growth)


@dataclass
class ConeElement:
    omega: OmegaNat
    a: NcSeries

    def __bool__(self):
        return bool(self.omega) or bool(self.a)


def connes_B(c: Necklace, A: DgAlgebra) -> ConeElement:
    """The pair ``(-partial0(c), 0)`` for a closed necklace ``c``."""
    if c.space != A.space:
        raise NotClosed("necklace is not over the algebra's space")
    acc: dict = {}
    for w, v in c.terms.items():
        for m, x in A.d_word(w).items():
            _add(acc, m, v * x)
    boundary = trace_project(NcSeries(A.space, acc, 10**9))
    if boundary:
        raise NotClosed(f"d(c) = {boundary.render()} is not zero in the necklace complex")
    return ConeElement(-partial0(c), NcSeries.zero(A.space, c.cap))


# witness class


@dataclass
class WitnessClass:
    z_A_dag: Necklace
    z_B_dag: Necklace


@dataclass
class WitnessReport:
    witness: WitnessClass
    closed_B: bool
    closed_A: bool
    antisymmetric_B: bool
    antisymmetric_A: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.closed_B and self.closed_A and self.antisymmetric_B and self.antisymmetric_A


def _dagger_series(space: GeneratorSpace, u: NcSeries, weights: Mapping) -> NcSeries:
    """Apply ``dagger`` for ``sigma = sum (1/w_v) e_v (x) e_v`` to ``u`` inside the span of its words."""
    words = sorted(u.terms, key=space.sort_key)
    if not words:
        return NcSeries.zero(space, u.cap)
    l = SemisimpleAlgebra.product_of_fields(len(space.vertices))
    tr = Trace(tuple(Fraction(weights.get(v, 1)) for v in space.vertices))
    sigma = casimir(l, tr)
    module = Bimodule.from_paths(l, [(space.source(w), space.target(w)) for w in words], words)
    vec = {i: u.terms[w] for i, w in enumerate(words)}
    cls = dagger(vec, sigma, module)
    assert central_lift(cls, sigma, module) == vec
    return NcSeries(space, {words[i]: c for i, c in cls.items()}, u.cap)


def _loops_sum(space: GeneratorSpace, vertices) -> NcSeries:
    from .quiver import loop_name

    out = NcSeries.zero(space, 8)
    for v in vertices:
        out = out + NcSeries.gen(space, loop_name(v), cap=8)
    return out


def _antisymmetric_quadratic(space: GeneratorSpace, x: NcSeries) -> bool:
    for w, c in x.terms.items():
        if space.length(w) != 2:
            return False
        u, v = w
        sign = _sign(space._deg[u] * space._deg[v])
        if x.terms.get((v, u), 0) != -sign * c:
            return False
    return True


def witness_class(out: GLResult) -> WitnessReport:
    q = out.quintuple
    A, B, f = out.A, out.B, out.gamma
    wB = {v: Fraction(w) for v, w in q.trace_frozen.items()}
    wA = {v: Fraction(w) for v, w in q.trace_free.items()}
    all_weights = {**wA, **wB}
    zB = _loops_sum(B.space, q.frozen_vertices)
    zA = _loops_sum(A.space, q.free_vertices)
    z_B_dag = trace_project(_dagger_series(B.space, zB, wB))
    z_A_dag = trace_project(_dagger_series(A.space, zA, wA))
    dzB = _dagger_series(B.space, B.d(zB), wB)
    rel = _dagger_series(A.space, A.d(zA) + f.apply(zB), all_weights)
    closed_B = in_unital_commutators(dzB)
    closed_A = in_unital_commutators(rel)
    details = {}
    if not closed_B.member:
        details["closed_B"] = closed_B.witness
    if not closed_A.member:
        details["closed_A"] = closed_A.witness
    return WitnessReport(
        WitnessClass(z_A_dag, z_B_dag),
        closed_B.member,
        closed_A.member,
        _antisymmetric_quadratic(B.space, dzB),
        _antisymmetric_quadratic(A.space, rel),
        details,
    )


# generator-level criterion


@dataclass
class CYReport:
    kernel_dim: int
    total_dim: int
    kernel_degrees: list
    half_dimensional: bool
    degree_window: bool
    isotropic: bool
    kernel_basis: list

    @property
    def ok(self) -> bool:
        return self.half_dimensional and self.degree_window and self.isotropic


def _linear_part(x: NcSeries) -> dict:
    return {w[0]: c for w, c in x.terms.items() if w[0] >= 0 and len(w) == 1}


def cy_generator_check(f: DgMorphism, d: int, eta_B: Pairing, coupling: Mapping | None = None) -> CYReport:
    """Kernel of the linear part of ``f`` on ``s^{-1} l_B + V_B`` and its Lagrangian properties.

    The form is ``eta_B`` on generators plus ``coupling[v]`` between ``s^{-1} e_v``
    and the loop of degree ``2 - d`` at ``v`` (default 1).
    """
    for alg in (f.source, f.target):
        for name, value in alg.differential.items():
            if _linear_part(value):
                raise NotNormalForm(f"d({name}) has a linear part")
    src, tgt = f.source.space, f.target.space
    domain = [("s", v, 1) for v in src.vertices] + [("g", g.name, g.degree) for g in src.generators]
    col = {key[:2]: i for i, key in enumerate(domain)}
    images = []
    for kind, name, _ in domain:
        if kind == "s":
            images.append({("s", f.vertex_map[name]): Fraction(1)})
        else:
            lin = _linear_part(f.image_gen(name))
            images.append({("g", tgt.generators[i].name): c for i, c in lin.items()})
    kernel = []
    degrees = sorted({deg for _, _, deg in domain})
    for deg in degrees:
        cols = [i for i, key in enumerate(domain) if key[2] == deg]
        coords = sorted({k for i in cols for k in images[i]})
        cindex = {k: r for r, k in enumerate(coords)}
        rows = [dict() for _ in coords]
        for j, i in enumerate(cols):
            for k, c in images[i].items():
                rows[cindex[k]][j] = c
        for vec in linalg.nullspace(rows, len(cols)):
            kernel.append((deg, {cols[j]: c for j, c in vec.items()}))
    form: dict = {}
    for (u, v), c in eta_B.coeffs.items():
        if ("g", u) in col and ("g", v) in col:
            form[(col[("g", u)], col[("g", v)])] = c
    from .quiver import loop_name

    for v in src.vertices:
        name = loop_name(v)
        if name in src and name not in eta_B.space and src.generator(name).degree == 2 - d:
            c = Fraction((coupling or {}).get(v, 1))
            s_i, z_i = col[("s", v)], col[("g", name)]
            form[(s_i, z_i)] = c
            form[(z_i, s_i)] = -_sign(2 - d) * c
    isotropic = all(
        sum(a * form.get((i, j), 0) * b for i, a in k1.items() for j, b in k2.items()) == 0
        for _, k1 in kernel
        for _, k2 in kernel
    )
    kdeg = sorted({deg for deg, _ in kernel})
    basis = [{domain[i][1] if domain[i][0] == "g" else f"s^-1 e{domain[i][1]}": c for i, c in vec.items()} for _, vec in kernel]
    return CYReport(
        len(kernel),
        len(domain),
        kdeg,
        2 * len(kernel) == len(domain),
        all(2 * deg <= 3 - d for deg in kdeg),
        isotropic,
        basis,
    )
