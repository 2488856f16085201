"""Legendrian front invariants over Z/2: rulings, splashed DGAs, augmentations, Morse movies."""

from __future__ import annotations

from .augment import (
    Augmentation,
    augmentation_to_ruling,
    enumerate_augmentations,
    linearize,
    linearized_homology,
    verify_augmentation,
)
from .front import (
    FrontDiagram,
    FrontEvent,
    MaslovPotential,
    classical_invariants,
    components,
    maslov_potential,
    parse_front,
    rotation_number,
    thurston_bennequin,
)
from .movie import (
    MorseMovie,
    MorseSlice,
    MovieEvent,
    duality_check,
    gf_homology,
    movie_to_augmentation,
    movie_to_front,
    ruling_to_movie,
    theorem53_check,
    validate_movie,
)
from .ruling import (
    Ruling,
    RulingPolynomial,
    enumerate_rulings,
    is_graded,
    is_normal,
    ruling_polynomial,
    sweep_involutions,
)
from .splash import SplashedDGA, degree_table, splash_dga
from .z2 import (
    DGA,
    BarannikovPairing,
    GradedComplex,
    Z2Matrix,
    Z2Poly,
    barannikov_pairing,
    dga_check,
    homology_dims,
)

__version__ = "0.1.0"

__all__ = [
    "Augmentation",
    "augmentation_to_ruling",
    "barannikov_pairing",
    "BarannikovPairing",
    "classical_invariants",
    "components",
    "degree_table",
    "DGA",
    "dga_check",
    "duality_check",
    "enumerate_augmentations",
    "enumerate_rulings",
    "FrontDiagram",
    "FrontEvent",
    "gf_homology",
    "GradedComplex",
    "homology_dims",
    "is_graded",
    "is_normal",
    "linearize",
    "linearized_homology",
    "maslov_potential",
    "MaslovPotential",
    "MorseMovie",
    "MorseSlice",
    "movie_to_augmentation",
    "movie_to_front",
    "MovieEvent",
    "parse_front",
    "rotation_number",
    "Ruling",
    "ruling_polynomial",
    "ruling_to_movie",
    "RulingPolynomial",
    "splash_dga",
    "SplashedDGA",
    "sweep_involutions",
    "theorem53_check",
    "thurston_bennequin",
    "validate_movie",
    "verify_augmentation",
    "Z2Matrix",
    "Z2Poly",
]
