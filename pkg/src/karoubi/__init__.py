"""Idempotent completions, extension categories and their equivalences, computed exactly."""

from ._kernels import BACKEND
from .category import (
    AdditiveCategory,
    Biproduct,
    Category,
    FunctorValue,
    LawReport,
    NatTransValue,
    SplitWitness,
    check_additive_laws,
    is_idempotent,
    verify_split_witness,
)
from .completion import (
    UNKNOWN,
    CompletedMorphism,
    CompletedObject,
    IdempotentCompletion,
    WeakIdempotentCompletion,
    WicObject,
    complete_functor,
    complete_nattrans,
    split_conflation_membership,
    wic_membership,
)
from .equivalence import ExtPair, WicPair, mem, shin, tsadi, wic_restrictions
from .errors import KaroubiError, PreconditionError
from .exfunctors import ExFunctor, ExNatTrans, SquareReport, davidsstar, davidsstar_2
from .extensions import (
    ExtCategory,
    ExtensionObject,
    ExtMorphism,
    HomBifunctor,
    TildeBifunctor,
    TildeExtension,
    conflation_in_XE,
    split_ext_idempotent,
)
from .linalg import nullspace, rank, rank_factorize_idempotent, rref, solve, solve_hom_system
from .matrix import MatCategory, Matrix
from .rect import RectCategory, RectMorphism, RectObject
from .rings import Rationals, PrimeField, fp, q
from .suites import SuiteConfig, SuiteReport, gen_instances, run_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AdditiveCategory",
    "BACKEND",
    "Biproduct",
    "Category",
    "CompletedMorphism",
    "CompletedObject",
    "ExFunctor",
    "ExNatTrans",
    "ExtCategory",
    "ExtMorphism",
    "ExtPair",
    "ExtensionObject",
    "FunctorValue",
    "HomBifunctor",
    "IdempotentCompletion",
    "KaroubiError",
    "LawReport",
    "MatCategory",
    "Matrix",
    "NatTransValue",
    "PreconditionError",
    "PrimeField",
    "Rationals",
    "RectCategory",
    "RectMorphism",
    "RectObject",
    "SplitWitness",
    "SquareReport",
    "SuiteConfig",
    "SuiteReport",
    "TildeBifunctor",
    "TildeExtension",
    "UNKNOWN",
    "WeakIdempotentCompletion",
    "WicObject",
    "WicPair",
    "check_additive_laws",
    "complete_functor",
    "complete_nattrans",
    "conflation_in_XE",
    "davidsstar",
    "davidsstar_2",
    "fp",
    "is_idempotent",
    "mem",
    "nullspace",
    "q",
    "rank",
    "rank_factorize_idempotent",
    "rref",
    "gen_instances",
    "run_suite",
    "shin",
    "solve",
    "solve_hom_system",
    "split_conflation_membership",
    "split_ext_idempotent",
    "tsadi",
    "verify_split_witness",
    "wic_membership",
    "wic_restrictions",
]
