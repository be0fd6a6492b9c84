"""Quivers with potential, Ginzburg dg algebras and Ginzburg–Lazaroiu morphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .bracket import Pairing, check_pairing, eta_B_from_F, necklace_bracket, single_bracket
from .dg import DgAlgebra, DgMorphism, H0Result, quotient_by_relations
from .errors import NameClash, QuintupleInvalid, UnknownArrow, UnsupportedDimension
from .quiver import (
    GradedQuiver,
    IceQuiver,
    double,
    ginzburg_quiver,
    loop_name,
    relative_double,
    relative_ginzburg_quiver,
    star_name,
)
from .series import DEFAULT_CAP, Generator, GeneratorSpace, Necklace, NcSeries, _add, rotation_sign


@dataclass
class Potential:
    necklace: Necklace

    @classmethod
    def from_cycles(cls, space: GeneratorSpace, cycles: Sequence[tuple], cap: int = DEFAULT_CAP) -> "Potential":
        """``cycles`` is a list of ``(coeff, [arrow names])``."""
        terms: dict = {}
        for coeff, names in cycles:
            w = space.word(names)
            if not space.is_cyclic(w):
                raise ValueError(f"{list(names)} is not a cycle")
            _add(terms, w, Fraction(coeff))
        return cls(Necklace(space, terms, cap))

    def require_classical(self) -> None:
        sp = self.necklace.space
        for w in self.necklace.terms:
            if len(w) < 3:
                raise ValueError("potential terms must have length at least 3")
            if sp.degree(w) != 0:
                raise ValueError("potential must have degree 0")

    def on(self, space: GeneratorSpace) -> "Potential":
        return Potential(self.necklace.transport(space))


def cyclic_derivative(W: Potential, arrow: str) -> NcSeries:
    neck = W.necklace
    sp = neck.space
    if arrow not in sp:
        raise UnknownArrow(arrow)
    a = sp.index(arrow)
    acc: dict = {}
    for w, c in neck.terms.items():
        for i, x in enumerate(w):
            if x != a:
                continue
            # rotate a to the front, then drop it
            rot = w[i:] + w[:i]
            rest = rot[1:]
            coeff = rotation_sign(sp, w, i) * c
            _add(acc, rest if rest else (-1 - sp._src[a],), coeff)
    return NcSeries(sp, acc, neck.cap)


# algebras given by relations


@dataclass
class AlgebraData:
    quiver: GradedQuiver
    space: GeneratorSpace
    relations: list

    def dimension(self, length: int) -> H0Result:
        return quotient_by_relations(self.space, self.relations, length)


def _vertex_relation(space, arrows, vertex, cap):
    """``sum_a e_v (a a* - a* a) e_v`` over the given arrows."""
    acc: dict = {}
    v = space.vertex_index(vertex)
    for a in arrows:
        i, j = space.index(a.name), space.index(star_name(a.name))
        if space._src[i] == v:
            _add(acc, (i, j), 1)
        if space._tgt[i] == v:
            _add(acc, (j, i), -1)
    return NcSeries(space, acc, cap)


def preprojective(q: GradedQuiver, cap: int = DEFAULT_CAP) -> AlgebraData:
    return relative_preprojective(IceQuiver(q), cap)


def relative_preprojective(qf: IceQuiver, cap: int = DEFAULT_CAP) -> AlgebraData:
    dq = relative_double(qf)
    sp = GeneratorSpace.from_quiver(dq)
    rels = [_vertex_relation(sp, qf.free_arrows, v, cap) for v in qf.free_vertices]
    return AlgebraData(dq, sp, rels)


def jacobian(q: GradedQuiver, W: Potential, cap: int = DEFAULT_CAP) -> AlgebraData:
    return relative_jacobian(IceQuiver(q), W, cap)


def relative_jacobian(qf: IceQuiver, W: Potential, cap: int = DEFAULT_CAP) -> AlgebraData:
    sp = GeneratorSpace.from_quiver(qf.quiver)
    Wq = W.on(sp)
    rels = [cyclic_derivative(Wq, a.name).with_cap(cap) for a in qf.free_arrows]
    return AlgebraData(qf.quiver, sp, rels)


# Ginzburg dg algebras


def ginzburg_dg(q: GradedQuiver, W: Potential | None, d: int, cap: int = DEFAULT_CAP) -> DgAlgebra:
    return relative_ginzburg_dg(IceQuiver(q), W, d, cap)


def relative_ginzburg_dg(qf: IceQuiver, W: Potential | None, d: int, cap: int = DEFAULT_CAP) -> DgAlgebra:
    frozen_all = not qf.free_vertices and not qf.free_arrows
    if frozen_all and d in (1, 2, 3):
        gq = qf.quiver
    elif not qf.frozen_vertices and d == 1:
        gq = ginzburg_quiver(qf.quiver, d)
    else:
        gq = relative_ginzburg_quiver(qf, d)
    sp = GeneratorSpace.from_quiver(gq)
    differential = {}
    Wg = None
    if W is not None and W.necklace:
        W.require_classical()
        Wg = W.on(sp)
        if d != 3:
            raise UnsupportedDimension("a nonzero potential needs d = 3")
    for a in qf.free_arrows:
        name = star_name(a.name)
        if Wg is not None:
            differential[name] = -cyclic_derivative(Wg, a.name).with_cap(cap)
    for v in qf.free_vertices:
        differential[loop_name(v)] = _vertex_relation(sp, qf.free_arrows, v, cap)
    return DgAlgebra(sp, {k: v for k, v in differential.items() if v}, cap)


def ginzburg_morphism(qf: IceQuiver, W: Potential | None, d: int, cap: int = DEFAULT_CAP) -> DgMorphism:
    """Map from the ``(d-1)``-dimensional Ginzburg algebra of ``(F, 0)`` to the relative one of ``(Q, F, W)``."""
    if d not in (2, 3):
        raise UnsupportedDimension(f"d={d} is not supported")
    fq = qf.frozen_subquiver()
    source = ginzburg_dg(fq, None, d - 1, cap)
    target = relative_ginzburg_dg(qf, W, d, cap)
    tsp = target.space
    Wt = W.on(tsp) if W is not None and W.necklace else None
    action = {}
    for a in fq.arrows:
        action[a.name] = NcSeries.gen(tsp, a.name, cap=cap)
        image = cyclic_derivative(Wt, a.name).with_cap(cap) if Wt is not None else NcSeries.zero(tsp, cap)
        action[star_name(a.name)] = image
    for v in fq.vertices:
        action[loop_name(v)] = _vertex_relation(tsp, qf.free_arrows, v, cap)
    return DgMorphism(source, target, action)


# quintuples


@dataclass
class Quintuple:
    """Data ``(N, F, eta, w_A, w_B)`` over ``l_A = k^{free} x k^{frozen}``.

    ``N`` lives on all vertices, ``F`` on the frozen ones.  ``w_A`` is a necklace
    on ``F + N`` and ``w_B`` a necklace on ``F + R`` where ``R`` holds the duals
    ``y*`` of ``F``.  Traces are weights per vertex.
    """

    free_vertices: tuple
    frozen_vertices: tuple
    N: GeneratorSpace
    F: GeneratorSpace
    eta: Pairing
    w_A: Necklace
    w_B: Necklace
    d: int
    trace_free: dict = field(default_factory=dict)
    trace_frozen: dict = field(default_factory=dict)
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        self.free_vertices = tuple(self.free_vertices)
        self.frozen_vertices = tuple(self.frozen_vertices)
        verts = self.free_vertices + self.frozen_vertices
        for v in self.free_vertices:
            self.trace_free.setdefault(v, Fraction(1))
        for v in self.frozen_vertices:
            self.trace_frozen.setdefault(v, Fraction(1))
        if any(Fraction(w) == 0 for w in list(self.trace_free.values()) + list(self.trace_frozen.values())):
            raise QuintupleInvalid("trace", "trace weights must be nonzero")
        d = self.d
        if d < 2:
            raise QuintupleInvalid("dimension", "d must be at least 2")
        if set(self.N.vertices) != set(verts) or set(self.F.vertices) != set(self.frozen_vertices):
            raise QuintupleInvalid("vertices", "N must live on all vertices and F on the frozen ones")
        if self.F.check_window(None, 0) or any(2 * g.degree < 3 - d for g in self.F.generators):
            raise QuintupleInvalid("degree_window", "F degrees outside the allowed window")
        if self.N.check_window(2 - d, 0):
            raise QuintupleInvalid("degree_window", "N degrees outside [2-d, 0]")
        if self.eta.space != self.N or self.eta.degree != 2 - d or not check_pairing(self.eta).ok:
            raise QuintupleInvalid("pairing", "eta must be a nondegenerate anti-symmetric pairing on N of degree 2-d")
        self.FR, self.eta_B = eta_B_from_F(self.F, d)
        names = list(self.FR.names) + list(self.N.names)
        loops = [loop_name(v) for v in verts]
        if len(set(names + loops)) != len(names) + len(loops):
            raise NameClash("generator names of F, R, N and the loops must be distinct")
        # ambient F + R + N over all vertices, used for every bracket
        self.ambient = GeneratorSpace(verts, self.FR.generators + self.N.generators)
        self.R_names = tuple(n for n in self.FR.names if n not in self.F)
        self.w_A_amb = self.w_A.transport(self.ambient, self.cap) if self.w_A else Necklace(self.ambient, {}, self.cap)
        self.w_B_amb = self.w_B.transport(self.ambient, self.cap) if self.w_B else Necklace(self.ambient, {}, self.cap)
        for w, deg in ((self.w_A, 3 - d), (self.w_B, 4 - d)):
            if w and w.degree() != deg:
                raise QuintupleInvalid("potential_degree", f"expected degree {deg}")

    @property
    def vertices(self) -> tuple:
        return self.free_vertices + self.frozen_vertices

    def space_B(self) -> GeneratorSpace:
        loops = [Generator(loop_name(v), v, v, 2 - self.d) for v in self.frozen_vertices]
        return GeneratorSpace(self.frozen_vertices, self.FR.generators + tuple(loops))

    def space_A(self) -> GeneratorSpace:
        loops = [Generator(loop_name(v), v, v, 1 - self.d) for v in self.free_vertices]
        return GeneratorSpace(self.vertices, self.F.generators + self.N.generators + tuple(loops))


@dataclass
class QuintupleReport:
    wB_square: bool
    N_closure: bool
    R_chain: bool
    kernel: bool
    witnesses: dict = field(default_factory=dict)
    cap_warning: bool = False

    @property
    def ok(self) -> bool:
        return self.wB_square and self.N_closure and self.R_chain and self.kernel

    def first_failure(self) -> str | None:
        for label in ("wB_square", "N_closure", "R_chain", "kernel"):
            if not getattr(self, label):
                return label
        return None


def obstruction(q: Quintuple) -> Necklace:
    """``{w_B, w_A}_{eta_B} + 1/2 {w_A, w_A}_eta`` in the ambient necklace space."""
    x = necklace_bracket(q.w_B_amb, q.w_A_amb, q.eta_B)
    y = necklace_bracket(q.w_A_amb, q.w_A_amb, q.eta)
    return x + y.scale(Fraction(1, 2))


def check_quintuple(q: Quintuple) -> QuintupleReport:
    sp = q.ambient
    F = {sp.index(n) for n in q.F.names}
    N = {sp.index(n) for n in q.N.names}
    R = {sp.index(n) for n in q.R_names}
    witnesses = {}
    sq = necklace_bracket(q.w_B_amb, q.w_B_amb, q.eta_B)
    if sq:
        witnesses["wB_square"] = sq
    X = obstruction(q)
    bad_F = X.filter(lambda w: not set(w) <= F)
    if bad_F:
        witnesses["N_closure"] = bad_F
    total = (q.w_B_amb + X).filter(lambda w: not R.intersection(w))
    bad_N = total.filter(lambda w: not set(w) <= N)
    if bad_N:
        witnesses["R_chain"] = bad_N
    if total:
        witnesses["kernel"] = total
    longest = max(q.w_A_amb.max_length(), q.w_B_amb.max_length())
    return QuintupleReport(
        not sq,
        not bad_F,
        not bad_N,
        not total,
        witnesses,
        cap_warning=2 * longest - 2 > q.cap,
    )


@dataclass
class GLResult:
    B: DgAlgebra
    A: DgAlgebra
    gamma: DgMorphism
    quintuple: Quintuple


def _central_eta(q: Quintuple, eta: Pairing, space: GeneratorSpace, weights: Mapping, cap: int) -> dict:
    """``sigma' eta sigma''`` split per vertex: ``(1/w_v) e_v mu(eta) e_v``."""
    mu = eta.multiplied(q.ambient, cap)
    out = {}
    for v, wt in weights.items():
        vi = q.ambient.vertex_index(v)
        part = mu.filter(lambda w: q.ambient.source(w) == vi)
        out[v] = part.transport(space, cap).scale(1 / Fraction(wt))
    return out


def ginzburg_lazaroiu(q: Quintuple, cap: int | None = None) -> GLResult:
    report = check_quintuple(q)
    if not report.ok:
        raise QuintupleInvalid(report.first_failure(), "quintuple fails the compatibility conditions")
    return lazaroiu_parts(q, cap)


def lazaroiu_parts(q: Quintuple, cap: int | None = None) -> GLResult:
    """The two algebras and the morphism, built without checking the compatibility conditions."""
    cap = q.cap if cap is None else cap
    amb = q.ambient
    spB, spA = q.space_B(), q.space_A()

    def gen(name):
        return NcSeries.gen(amb, name, cap=cap)

    dB = {}
    for name in q.FR.names:
        dB[name] = single_bracket(q.w_B_amb, gen(name), q.eta_B).transport(spB, cap)
    for v, value in _central_eta(q, q.eta_B, spB, q.trace_frozen, cap).items():
        dB[loop_name(v)] = value
    dA = {}
    for name in q.F.names:
        dA[name] = single_bracket(q.w_B_amb, gen(name), q.eta_B).transport(spA, cap)
    for name in q.N.names:
        dA[name] = single_bracket(q.w_A_amb, gen(name), q.eta).transport(spA, cap)
    for v, value in _central_eta(q, q.eta, spA, q.trace_free, cap).items():
        dA[loop_name(v)] = value
    B = DgAlgebra(spB, {k: v for k, v in dB.items() if v}, cap)
    A = DgAlgebra(spA, {k: v for k, v in dA.items() if v}, cap)
    action = {}
    for name in q.F.names:
        action[name] = NcSeries.gen(spA, name, cap=cap)
    for name in q.R_names:
        action[name] = -single_bracket(q.w_A_amb, gen(name), q.eta_B).transport(spA, cap)
    for v, value in _central_eta(q, q.eta, spA, q.trace_frozen, cap).items():
        action[loop_name(v)] = value
    return GLResult(B, A, DgMorphism(B, A, action), q)


def eta_identity_residual(out: GLResult) -> NcSeries:
    """``d(mu(eta)) - gamma(mu(eta_B))`` in the target algebra."""
    q = out.quintuple
    cap = out.A.cap
    mu = q.eta.multiplied(out.A.space, cap)
    mu_B = q.eta_B.multiplied(out.B.space, cap)
    return out.A.d(mu) - out.gamma.apply(mu_B)


def quintuple_from_ice(qf: IceQuiver, W: Potential | None, d: int = 3, cap: int = DEFAULT_CAP) -> Quintuple:
    """Quintuple of an ice quiver with potential; every trace weight is 1."""
    frozen = tuple(v for v in qf.quiver.vertices if v in qf.frozen_vertices)
    free = qf.free_vertices
    verts = free + frozen
    F = GeneratorSpace(frozen, tuple(Generator(a.name, a.source, a.target, 0) for a in qf.quiver.arrows if a.name in qf.frozen_arrows))
    n_gens = []
    coeffs = {}
    for a in qf.free_arrows:
        s = star_name(a.name)
        n_gens.append(Generator(a.name, a.source, a.target, 0))
        n_gens.append(Generator(s, a.target, a.source, 2 - d))
        coeffs[(a.name, s)] = 1
        coeffs[(s, a.name)] = -1
    N = GeneratorSpace(verts, tuple(n_gens))
    eta = Pairing(N, 2 - d, coeffs)
    FN = GeneratorSpace(verts, F.generators + N.generators)
    w_A = W.necklace.transport(FN, cap) if W is not None and W.necklace else Necklace(FN, {}, cap)
    FR, _ = eta_B_from_F(F, d)
    w_B = Necklace(FR, {}, cap)
    return Quintuple(free, frozen, N, F, eta, w_A, w_B, d, cap=cap)
