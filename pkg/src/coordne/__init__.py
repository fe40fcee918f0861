"""Pure Nash equilibria of coordination games on directed graphs.

Existential and universal queries, exact arithmetic throughout, with
specialised solvers for tractable graph classes and an exhaustive oracle.
"""

from .colour_complete import (
    ane_colour_complete,
    ene_colour_complete,
    extend_to_total_order,
    induced_order,
    is_acyclic,
    is_colour_complete,
    sp_profile,
)
from .cycle import CycleLayout, ane_cycle_unweighted, ane_cycle_weighted, compute_abc, ene_cycle
from .dag_out1 import ane_dag_out1, ene_dag_out1, feasible_colours, topo_order
from .dispatch import Mode, dispatch
from .errors import (
    CapExceeded,
    ColourCapExceeded,
    CoordNEError,
    EmptyQuery,
    FormulaError,
    InternalSoundness,
    Intractable,
    InvalidGame,
    InvalidQuery,
    InvalidStrategy,
    MoreThanTwoColours,
    NonIntegerWeight,
    NonMonochromaticQuery,
    NotADAG,
    NotASimpleCycle,
    NotUnweighted,
    OutDegreeExceeded,
    PreconditionViolated,
)
from .game import (
    Answer,
    Game,
    Verdict,
    is_best_response,
    is_consistent,
    is_nash,
    payoff,
    validate,
    z_set,
)
from .instances import ClassProfile, GenSpec, classify, example_clique, gen_fixture, gen_random
from .matching import BipartiteInstance, max_bipartite_matching
from .oracle import EnumerationCap, enumerate_ne, oracle_exists, oracle_forall
from .two_colour import ane_two_colour_mono, ane_two_colour_poly, closure_F, ene_two_colour_mono

gen_example_clique = example_clique

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "BipartiteInstance",
    "CapExceeded",
    "ClassProfile",
    "ColourCapExceeded",
    "CoordNEError",
    "CycleLayout",
    "EmptyQuery",
    "EnumerationCap",
    "FormulaError",
    "Game",
    "GenSpec",
    "InternalSoundness",
    "Intractable",
    "InvalidGame",
    "InvalidQuery",
    "InvalidStrategy",
    "Mode",
    "MoreThanTwoColours",
    "NonIntegerWeight",
    "NonMonochromaticQuery",
    "NotADAG",
    "NotASimpleCycle",
    "NotUnweighted",
    "OutDegreeExceeded",
    "PreconditionViolated",
    "Verdict",
    "ane_colour_complete",
    "ane_cycle_unweighted",
    "ane_cycle_weighted",
    "ane_dag_out1",
    "ane_two_colour_mono",
    "ane_two_colour_poly",
    "classify",
    "closure_F",
    "compute_abc",
    "dispatch",
    "ene_colour_complete",
    "ene_cycle",
    "ene_dag_out1",
    "ene_two_colour_mono",
    "enumerate_ne",
    "example_clique",
    "extend_to_total_order",
    "feasible_colours",
    "gen_example_clique",
    "gen_fixture",
    "gen_random",
    "induced_order",
    "is_acyclic",
    "is_best_response",
    "is_colour_complete",
    "is_consistent",
    "is_nash",
    "max_bipartite_matching",
    "oracle_exists",
    "oracle_forall",
    "payoff",
    "sp_profile",
    "topo_order",
    "validate",
    "z_set",
]
