"""Axiom and identity verification suites."""
from .axioms import CATALOGUE, AxiomChecker, AxiomReport, UnknownAxiom, locality_order, verify_all, verify_axiom
from .braided import (BraidedAlgebra, BraidedChecks, SuperAlgebra, TwistedLattice, braided_algebra_check,
                      higher_braiding_reports)
from .perm import PermBraiding, cyclic_symmetry, permutation_symmetry, sample_permutations, word_independence
from .properties import PROPERTIES, PropertyChecker, verify_property

__all__ = ["CATALOGUE", "AxiomChecker", "AxiomReport", "UnknownAxiom", "locality_order", "verify_all",
           "verify_axiom", "BraidedAlgebra", "BraidedChecks", "SuperAlgebra", "TwistedLattice",
           "braided_algebra_check", "higher_braiding_reports", "PermBraiding", "cyclic_symmetry",
           "permutation_symmetry", "sample_permutations", "word_independence", "PROPERTIES", "PropertyChecker",
           "verify_property"]
