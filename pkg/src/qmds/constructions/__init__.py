from qmds.constructions.base_builder import BaseBuilder, Construction, WitnessVectors
from qmds.constructions.builders import T4Builder, T5Builder, T6Builder, build_t4, build_t5, build_t6
from qmds.constructions.cosets import (
    ConstructionError,
    CosetSets,
    choose_lambda,
    coset_sets,
    count_coset_collisions,
)
from qmds.constructions.lemmas import LemmaSolveError, lemma6_solve, lemma9_solve, lemma12_solve
from qmds.constructions.params import (
    THEOREMS,
    ConstructionParams,
    ParameterError,
    check_hypotheses,
    d_max,
    make_params,
    params_from_dict,
    theorem_d_max,
    theorem_length,
)
from qmds.constructions.router import ConstructionRouter, construct

__all__ = [
    "THEOREMS",
    "BaseBuilder",
    "Construction",
    "ConstructionError",
    "ConstructionParams",
    "ConstructionRouter",
    "CosetSets",
    "LemmaSolveError",
    "ParameterError",
    "T4Builder",
    "T5Builder",
    "T6Builder",
    "WitnessVectors",
    "build_t4",
    "build_t5",
    "build_t6",
    "check_hypotheses",
    "choose_lambda",
    "construct",
    "coset_sets",
    "count_coset_collisions",
    "d_max",
    "lemma6_solve",
    "lemma9_solve",
    "lemma12_solve",
    "make_params",
    "params_from_dict",
    "theorem_d_max",
    "theorem_length",
]
