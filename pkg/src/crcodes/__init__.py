"""Completely regular codes in distance-regular graphs: spectra, Q-polynomial and Leonard tests."""

from .codes import Code, CodeSpectrum, DistancePartition, QuotientMatrix, Witness, code_spectrum
from .codes import distance_partition, is_completely_regular, minimum_distance, outer_distribution_matrix, strength
from .config import DEFAULT_TOL, Tolerances
from .cosets import AdditiveCode, coset_graph, coset_partition, quotient_relation_check, rifa_zinoviev
from .graphs import Graph, antipodal_map, generate, is_distance_regular
from .leonard import (ClassificationReport, EigenExpansion, classify, eigen_expansion, expand_in_eigenbasis,
                      harmonic_test, leonard_test, qpoly_test, reconstruct_from_qpoly_data, reconstruct_parameters)
from .spectral import IntersectionArray, eigenvalues, krein_parameters, qpoly_orderings, spectrum

__version__ = "0.1.0"

__all__ = [
    "AdditiveCode",
    "ClassificationReport",
    "Code",
    "CodeSpectrum",
    "DEFAULT_TOL",
    "DistancePartition",
    "EigenExpansion",
    "Graph",
    "IntersectionArray",
    "QuotientMatrix",
    "Tolerances",
    "Witness",
    "antipodal_map",
    "classify",
    "code_spectrum",
    "coset_graph",
    "coset_partition",
    "distance_partition",
    "eigen_expansion",
    "eigenvalues",
    "expand_in_eigenbasis",
    "generate",
    "harmonic_test",
    "is_completely_regular",
    "is_distance_regular",
    "krein_parameters",
    "leonard_test",
    "minimum_distance",
    "outer_distribution_matrix",
    "qpoly_orderings",
    "qpoly_test",
    "quotient_relation_check",
    "reconstruct_from_qpoly_data",
    "reconstruct_parameters",
    "rifa_zinoviev",
    "spectrum",
    "strength",
]

