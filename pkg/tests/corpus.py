"""Seeded random instances shared by the property and acceptance tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from quiver_cy import Arrow, GeneratorSpace, GradedQuiver, IceQuiver, Necklace, Pairing, Potential
from quiver_cy.constructions import Quintuple
from quiver_cy.series import Generator, canonical_rotation

COEFFS = (Fraction(-2), Fraction(-1), Fraction(1), Fraction(2), Fraction(1, 2))
TRACES = (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 3))


def cycle3() -> GradedQuiver:
    return GradedQuiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1")))


def linear(n: int) -> GradedQuiver:
    verts = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n))
    return GradedQuiver(verts, arrows)


def abc(cap: int = 8) -> Potential:
    return Potential.from_cycles(GeneratorSpace.from_quiver(cycle3()), [(1, ["a", "b", "c"])], cap)


def necklace_words(space: GeneratorSpace, lengths, degree, keep=lambda w: True) -> list:
    """Canonical, non-vanishing cyclic words of the given lengths and degree."""
    out = []
    for n in lengths:
        for w in space.words(n):
            if not space.is_cyclic(w) or space.degree(w) != degree or not keep(w):
                continue
            cw, sign = canonical_rotation(space, w)
            if cw == w and sign:
                out.append(w)
    return out


def random_combination(rng: random.Random, space: GeneratorSpace, words, cap: int, most: int = 3) -> Necklace:
    chosen = rng.sample(words, min(len(words), rng.randint(1, most))) if words else []
    return Necklace(space, {w: rng.choice(COEFFS) for w in chosen}, cap)


def random_ice(rng: random.Random, max_vertices: int = 4, max_arrows: int = 5):
    """Random ice quiver with a random cubic potential (coefficients in -2..2)."""
    n = rng.randint(1, max_vertices)
    verts = [str(i) for i in range(1, n + 1)]
    ends = []
    if n >= 3 and rng.random() < 0.6:
        ends = [("1", "2"), ("2", "3"), ("3", "1")]
    while len(ends) < rng.randint(max(1, len(ends)), max_arrows):
        ends.append((rng.choice(verts), rng.choice(verts)))
    arrows = tuple(Arrow(f"x{i}", s, t) for i, (s, t) in enumerate(ends))
    q = GradedQuiver(tuple(verts), arrows)
    frozen_v = frozenset(v for v in verts if rng.random() < 0.4)
    frozen_a = frozenset(a.name for a in arrows if a.source in frozen_v and a.target in frozen_v and rng.random() < 0.6)
    sp = GeneratorSpace.from_quiver(q)
    cubic = necklace_words(sp, (3,), 0)
    chosen = rng.sample(cubic, min(len(cubic), rng.randint(0, 3)))
    cycles = [(rng.randint(-2, 2), sp.letters(w)) for w in chosen]
    return IceQuiver(q, frozen_v, frozen_a), Potential.from_cycles(sp, cycles)


def _ends(rng, verts):
    s = rng.choice(verts)
    return (s, s) if rng.random() < 0.7 else (s, rng.choice(verts))


def _arrow_pool(rng, verts, count, degrees, prefix):
    return [Generator(f"{prefix}{i}", *_ends(rng, verts), rng.choice(degrees)) for i in range(count)]


def random_quintuple(rng: random.Random, d: int, cap: int = 8) -> Quintuple:
    """A quintuple satisfying the compatibility conditions by construction.

    ``w_A`` only uses letters from an isotropic half of ``N`` and the frozen
    arrows ``F1``.  ``w_B`` has exactly one letter dual to ``F2``, whose
    arrows appear nowhere, so every bracket between the potentials vanishes.
    A cubic term is planted in each potential when the degrees allow it.
    """
    free = tuple(str(i) for i in range(1, rng.randint(1, 2) + 1))
    frozen = tuple(f"f{i}" for i in range(1, rng.choice((0, 1, 1, 2)) + 1))
    verts = free + frozen
    lo = math.ceil((3 - d) / 2)
    f_degrees = list(range(lo, 1))
    F1, F2, planted_B = [], [], []
    if frozen and f_degrees:
        F1 = _arrow_pool(rng, frozen, rng.randint(1, 3), f_degrees, "p")
        neg = [x for x in f_degrees if x <= -1]
        if neg:
            F2 = _arrow_pool(rng, frozen, rng.randint(0, 2), neg, "y")
            if rng.random() < 0.7:
                v = rng.choice(frozen)
                F1.append(Generator("q", v, v, 0))
                F2.append(Generator("z", v, v, -1))
                planted_B = [("q", "q", "z*")]
    F = GeneratorSpace(frozen, tuple(F1 + F2))
    n_gens, coeffs, half = [], {}, []

    def pair(name, s, t, delta):
        x = Generator(name, s, t, delta)
        xs = Generator(name + "*", t, s, 2 - d - delta)
        n_gens.extend((x, xs))
        coeffs[(x.name, xs.name)] = Fraction(1)
        coeffs[(xs.name, x.name)] = Fraction(-1 if (delta * xs.degree) % 2 == 0 else 1)
        half.append(xs if d == 3 and xs.degree == 0 else x)
        return half[-1]

    for i in range(rng.randint(1, 3)):
        pair(f"n{i}", *_ends(rng, verts), rng.randint(2 - d, 0))
    planted_A = []
    if d >= 3 and rng.random() < 0.8:
        v = rng.choice(verts)
        loops = [g for g in F1 if g.source == v == g.target]
        if loops and rng.random() < 0.5:
            first = rng.choice(loops)
        else:
            first = pair("u", v, v, rng.randint(lo, 0))
        second = pair("w", v, v, 3 - d - 2 * first.degree)
        planted_A = [(first.name, first.name, second.name)]
    N = GeneratorSpace(verts, tuple(n_gens))
    eta = Pairing(N, 2 - d, coeffs)
    FN = GeneratorSpace(verts, F.generators + N.generators)
    allowed_A = GeneratorSpace(verts, tuple(F1) + tuple(half))
    w_A = random_combination(rng, allowed_A, necklace_words(allowed_A, (3, 4), 3 - d), cap)
    w_A = (w_A + _planted(rng, allowed_A, planted_A, cap)).transport(FN, cap)
    duals = [Generator(g.name + "*", g.target, g.source, 3 - d - g.degree) for g in F2]
    allowed_B = GeneratorSpace(frozen, tuple(F1) + tuple(duals))
    r_idx = {allowed_B.index(g.name) for g in duals}
    words_B = necklace_words(allowed_B, (3, 4), 4 - d, lambda w: sum(x in r_idx for x in w) == 1)
    FR = GeneratorSpace(frozen, F.generators + tuple(Generator(g.name + "*", g.target, g.source, 3 - d - g.degree) for g in F.generators))
    w_B = random_combination(rng, allowed_B, words_B, cap) + _planted(rng, allowed_B, planted_B, cap)
    w_B = w_B.transport(FR, cap)
    tf = {v: rng.choice(TRACES) for v in free}
    tz = {v: rng.choice(TRACES) for v in frozen}
    return Quintuple(free, frozen, N, F, eta, w_A, w_B, d, tf, tz, cap=cap)


def _planted(rng, space, words, cap) -> Necklace:
    return Necklace(space, {space.word(w): rng.choice(COEFFS) for w in words}, cap)


def quintuple_corpus(seed: int = 2024, per_dim: int = 7, dims=(2, 3, 4, 5, 6)) -> list:
    rng = random.Random(seed)
    return [random_quintuple(rng, d) for d in dims for _ in range(per_dim)]


def random_wB_instance(rng: random.Random, d: int = 5, cap: int = 8) -> Quintuple:
    """``(F, R, w_B)`` with no free part; ``w_B`` is any degree ``4-d`` combination."""
    frozen = tuple(f"f{i}" for i in range(1, rng.randint(1, 2) + 1))
    lo = math.ceil((3 - d) / 2)
    gens = _arrow_pool(rng, frozen, rng.randint(0, 2), list(range(lo, 1)), "y")
    if rng.random() < 0.8:
        gens += [Generator("p", "f1", "f1", 0), Generator("z", "f1", "f1", -1)]
    F = GeneratorSpace(frozen, tuple(gens))
    FR = GeneratorSpace(frozen, F.generators + tuple(Generator(g.name + "*", g.target, g.source, 3 - d - g.degree) for g in F.generators))
    w_B = random_combination(rng, FR, necklace_words(FR, (3,), 4 - d), cap, most=4)
    N = GeneratorSpace(frozen, ())
    return Quintuple((), frozen, N, F, Pairing(N, 2 - d, {}), Necklace(GeneratorSpace(frozen, F.generators), {}, cap), w_B, d, cap=cap)


def violating_wB(d: int = 5, cap: int = 8) -> Quintuple:
    """One vertex, loops ``y`` (degree 0) and ``z`` (degree -1), ``w_B = y y z + y y z*``."""
    F = GeneratorSpace(("f",), (Generator("y", "f", "f", 0), Generator("z", "f", "f", -1)))
    FR = GeneratorSpace(("f",), F.generators + (Generator("y*", "f", "f", 3 - d), Generator("z*", "f", "f", 4 - d)))
    w_B = Necklace(FR, {FR.word(["y", "y", "z"]): 1, FR.word(["y", "y", "z*"]): 1}, cap)
    N = GeneratorSpace(("f",), ())
    return Quintuple((), ("f",), N, F, Pairing(N, 2 - d, {}), Necklace(F, {}, cap), w_B, d, cap=cap)


def by_letters(x) -> dict:
    """Series as ``{letter names: coeff}``, independent of generator order."""
    return {x.space.letters(w) if w[0] >= 0 else x.space.render_word(w): c for w, c in x.terms.items()}


def differential_table(A) -> dict:
    return {name: by_letters(A.d_gen(name)) for name in A.space.names}


def morphism_table(f) -> dict:
    return {name: by_letters(f.image_gen(name)) for name in f.source.space.names}


def generator_table(space) -> set:
    return {(g.name, g.source, g.target, g.degree) for g in space.generators}
