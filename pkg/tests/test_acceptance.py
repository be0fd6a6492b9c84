"""Acceptance criteria 1 to 10, each as one ``test_criterion_NN_*`` test.

A summary line per criterion is printed at the end of the run (see conftest).
"""

import random
from fractions import Fraction

from corpus import (
    abc,
    by_letters,
    cycle3,
    differential_table,
    generator_table,
    linear,
    morphism_table,
    necklace_words,
    quintuple_corpus,
    random_combination,
    random_ice,
    random_wB_instance,
    violating_wB,
)
from oracles import graded_quotient_dim, necklace_count
from quiver_cy import (
    DgAlgebra,
    Generator,
    GeneratorSpace,
    IceQuiver,
    Necklace,
    NcSeries,
    SemisimpleAlgebra,
    Trace,
    casimir,
    central_lift,
    check_casimir,
    check_chain_map,
    check_d_squared,
    cy_generator_check,
    cyclic_derivative,
    dagger,
    ginzburg_dg,
    ginzburg_lazaroiu,
    ginzburg_morphism,
    graded_commutator,
    h0_truncated,
    hc_red,
    left_loday_check,
    necklace_bracket,
    partial0,
    partial1,
    quintuple_from_ice,
    relative_ginzburg_dg,
    single_bracket,
    witness_class,
)
from quiver_cy.constructions import eta_identity_residual, lazaroiu_parts
from quiver_cy.semisimple import random_bimodule
from quiver_cy.witness import OmegaNat, omega_basis

CORPUS = quintuple_corpus()


def _oracle_dim(quiver, relations, length):
    arrows = {a.name: (a.source, a.target) for a in quiver.arrows}
    rels = [{x.space.letters(w): c for w, c in x.terms.items()} for x in relations]
    return graded_quotient_dim(quiver.vertices, arrows, rels, length)


def _loop_relation(q, v):
    """``sum e_v (a a* - a* a) e_v`` as letter tuples."""
    rel = {}
    for a in q.arrows:
        if a.source == v:
            rel[(a.name, a.name + "*")] = rel.get((a.name, a.name + "*"), 0) + 1
        if a.target == v:
            rel[(a.name + "*", a.name)] = rel.get((a.name + "*", a.name), 0) - 1
    return {k: c for k, c in rel.items() if c}


def _loop_sum(space, vertices):
    return sum((NcSeries.gen(space, f"t{v}", cap=8) for v in vertices), NcSeries.zero(space, 8))


def test_criterion_01_three_cycle_ginzburg():
    A = ginzburg_dg(cycle3(), abc(10), 3, 10)
    report = check_d_squared(A)
    assert report.ok and report.residuals == {}
    assert A.d_gen("a*") == NcSeries.path(A.space, ["b", "c"], -1)
    assert A.d_gen("t1") == NcSeries.path(A.space, ["a", "a*"]) - NcSeries.path(A.space, ["c*", "c"])


def test_criterion_02_degree_zero_homology():
    jac = h0_truncated(ginzburg_dg(cycle3(), abc(), 3, 8), 8).dimension
    rels = [cyclic_derivative(abc(), a) for a in "abc"]
    assert jac == _oracle_dim(cycle3(), rels, 8) == 6
    for n, expected in ((2, 4), (3, 10)):
        q = linear(n)
        arrows = {}
        for a in q.arrows:
            arrows[a.name] = (a.source, a.target)
            arrows[a.name + "*"] = (a.target, a.source)
        oracle = graded_quotient_dim(q.vertices, arrows, [_loop_relation(q, v) for v in q.vertices], 8)
        assert h0_truncated(ginzburg_dg(q, None, 2, 8), 8).dimension == oracle == expected


def test_criterion_03_ginzburg_morphism_is_a_chain_map():
    rng = random.Random(11)
    for i in range(25):
        ice, W = random_ice(rng)
        sp = W.necklace.space
        total = NcSeries.zero(sp)
        for a in ice.quiver.arrows:
            total = total + graded_commutator(NcSeries.gen(sp, a.name), cyclic_derivative(W, a.name))
        assert total == 0
        if i % 2:
            f = ginzburg_morphism(ice, W, 3, 8)
        else:
            f = ginzburg_morphism(IceQuiver(ice.quiver, ice.frozen_vertices), None, 2, 8)
        report = check_chain_map(f)
        assert report.ok and report.residuals == {}


def test_criterion_04_square_zero_iff_bracket_vanishes():
    rng = random.Random(5)
    instances = [violating_wB()] + [random_wB_instance(rng) for _ in range(19)]
    outcomes = set()
    for q in instances:
        B = lazaroiu_parts(q).B
        residuals = check_d_squared(B).residuals
        squares_to_zero = not any(name in residuals for name in q.FR.names)
        bracket_zero = not necklace_bracket(q.w_B_amb, q.w_B_amb, q.eta_B)
        assert squares_to_zero == bracket_zero
        outcomes.add(bracket_zero)
    assert outcomes == {True, False}


def test_criterion_05_lazaroiu_identities_on_the_corpus():
    assert len(CORPUS) >= 30 and {q.d for q in CORPUS} == {2, 3, 4, 5, 6}
    for q in CORPUS:
        out = ginzburg_lazaroiu(q, 8)
        zA = _loop_sum(out.A.space, q.free_vertices)
        zB = _loop_sum(out.B.space, q.frozen_vertices)
        assert out.A.d(out.A.d(zA)) == 0
        assert out.B.d(out.B.d(zB)) == 0
        assert eta_identity_residual(out) == 0


def test_criterion_06_quintuple_of_an_ice_quiver_matches_relative_ginzburg():
    rng = random.Random(23)
    cases = [(IceQuiver(cycle3(), frozenset({"1", "2"}), frozenset({"a"})), abc())]
    cases += [random_ice(rng) for _ in range(25)]
    for ice, W in cases:
        out = ginzburg_lazaroiu(quintuple_from_ice(ice, W, 3))
        A = relative_ginzburg_dg(ice, W, 3, 8)
        f = ginzburg_morphism(ice, W, 3, 8)
        assert generator_table(out.A.space) == generator_table(A.space)
        assert differential_table(out.A) == differential_table(A)
        assert generator_table(out.B.space) == generator_table(f.source.space)
        assert differential_table(out.B) == differential_table(f.source)
        assert morphism_table(out.gamma) == morphism_table(f)


def test_criterion_07_casimir_suite():
    rng = random.Random(7)
    weights = (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 3), Fraction(5, 2))
    for _ in range(20):
        l = SemisimpleAlgebra(tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3))))
        sigma = casimir(l, Trace(tuple(rng.choice(weights) for _ in l.blocks)))
        report = check_casimir(sigma, l)
        assert report.symmetric and report.central
        U = random_bimodule(l, 12, rng)
        m = {k: Fraction(rng.randint(-3, 3)) for k in range(U.dim)}
        assert U.same_class(dagger(central_lift(m, sigma, U), sigma, U), m)


MIX = GeneratorSpace(
    ("1", "2"),
    (
        Generator("x", "1", "1", 0),
        Generator("y", "1", "1", -1),
        Generator("a", "1", "2", 0),
        Generator("b", "2", "1", -1),
        Generator("z", "2", "2", -2),
    ),
)


def test_criterion_08_homology_plumbing():
    rng = random.Random(8)
    cyclic = [w for n in (1, 2, 3, 4) for w in MIX.words(n) if MIX.is_cyclic(w)]
    forms = [b for deg in range(-4, 1) for b in omega_basis(MIX, deg, 4)]
    for _ in range(50):
        c = Necklace(MIX, {w: Fraction(rng.randint(-3, 3)) for w in rng.sample(cyclic, 3)}, 10)
        omega = OmegaNat(MIX, {b: Fraction(rng.randint(-3, 3)) for b in rng.sample(forms, 3)}, 10)
        assert not partial1(partial0(c))
        assert not partial0(partial1(omega))
    for letters, caps in ((1, range(4, 9)), (2, range(4, 9)), (3, range(4, 8))):
        sp = GeneratorSpace(("1",), tuple(Generator(f"x{i}", "1", "1", 0) for i in range(letters)))
        for cap in caps:
            expected = sum(necklace_count(n, letters) for n in range(1, cap + 1))
            assert hc_red(DgAlgebra(sp, {}, cap), 0, cap).dimension == expected


def test_criterion_09_generator_level_calabi_yau_checks():
    for q in CORPUS:
        out = ginzburg_lazaroiu(q)
        assert witness_class(out).ok
        report = cy_generator_check(out.gamma, q.d, q.eta_B)
        assert report.half_dimensional and report.degree_window and report.isotropic
        assert report.kernel_dim == len(q.R_names) + len(q.frozen_vertices)


def _calibration_cases():
    rng = random.Random(13)
    cases = [(cycle3(), abc(), 3), (linear(2), None, 2), (linear(3), None, 2), (cycle3(), None, 2)]
    for _ in range(10):
        ice, W = random_ice(rng)
        cases.append((ice.quiver, W, 3))
        cases.append((ice.quiver, None, 2))
    return cases


def test_criterion_10_bracket_calibration_and_loday():
    for quiver, W, d in _calibration_cases():
        q = quintuple_from_ice(IceQuiver(quiver), W, d)
        out = ginzburg_lazaroiu(q)
        for a in quiver.arrows:
            star = NcSeries.gen(q.ambient, a.name + "*", cap=q.cap)
            got = single_bracket(q.w_A_amb, star, q.eta)
            expected = -cyclic_derivative(W, a.name) if W is not None else NcSeries.zero(q.ambient)
            assert by_letters(got) == by_letters(expected)
            assert not single_bracket(q.w_A_amb, NcSeries.gen(q.ambient, a.name, cap=q.cap), q.eta)
        for v in quiver.vertices:
            assert by_letters(out.A.d_gen(f"t{v}")) == _loop_relation(quiver, v)
        if W is not None:
            assert differential_table(out.A) == differential_table(ginzburg_dg(quiver, W, d, 8))

    q = quintuple_from_ice(IceQuiver(cycle3()), abc(10), 3, 10)
    sp = q.ambient
    words = [w for deg in (-2, -1, 0) for w in necklace_words(sp, (2, 3), deg)]
    rng = random.Random(10)
    for _ in range(20):
        w1 = random_combination(rng, sp, words, 10)
        w2 = random_combination(rng, sp, words, 10)
        v = NcSeries.gen(sp, rng.choice(sp.names), cap=10)
        assert left_loday_check(w1, w2, v, q.eta) == 0
