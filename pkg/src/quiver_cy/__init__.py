"""Exact computations with quivers with potential, Ginzburg dg algebras and Calabi–Yau witnesses."""

from .bracket import Pairing, check_pairing, double_bracket, eta_B_from_F, left_loday_check, necklace_bracket, single_bracket
from .constructions import (
    Potential,
    Quintuple,
    check_quintuple,
    cyclic_derivative,
    ginzburg_dg,
    ginzburg_lazaroiu,
    ginzburg_morphism,
    jacobian,
    preprojective,
    quintuple_from_ice,
    relative_ginzburg_dg,
    relative_jacobian,
    relative_preprojective,
)
from .dg import DgAlgebra, DgMorphism, check_chain_map, check_d_squared, extend_leibniz, h0_truncated
from .quiver import Arrow, GradedQuiver, IceQuiver, double, ginzburg_quiver, relative_double, relative_ginzburg_quiver
from .semisimple import Bimodule, SemisimpleAlgebra, Trace, casimir, central_lift, check_casimir, dagger
from .series import Generator, GeneratorSpace, Necklace, NcSeries, graded_commutator, sym, trace_project
from .witness import connes_B, cy_generator_check, hc_red, hh_red, partial0, partial1, witness_class

__version__ = "0.1.0"
