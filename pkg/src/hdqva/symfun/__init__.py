"""Symmetric functions over Q(t), Hall-Littlewood bases and the deformed boson Fock space."""
from .fock import (CONVENTIONS, FockState, JingReport, fock_from_velem, gamma_minus_coeff, gamma_plus_coeff,
                   gamma_pm_apply, heisenberg_action, heisenberg_commutator, jing_constant_term, jing_operator,
                   jing_vs_oracle, mtilde_cases, truncate, vertex_coeff, vertex_heisenberg_defect)
from .hall import HLBasis, duality_defects, hl_basis, hl_H, hl_Q
from .partitions import InvalidShape, Partition, parse_partition, partitions, partitions_upto
from .ring import K, SymFun, at_t, character, coef, deformed_inner, m_basis, p_to_m, schur, series, t

__all__ = ["CONVENTIONS", "FockState", "JingReport", "fock_from_velem", "gamma_minus_coeff", "gamma_plus_coeff",
           "gamma_pm_apply", "heisenberg_action", "heisenberg_commutator", "jing_constant_term", "jing_operator",
           "jing_vs_oracle", "mtilde_cases", "truncate", "vertex_coeff", "vertex_heisenberg_defect", "HLBasis",
           "duality_defects", "hl_basis", "hl_H", "hl_Q", "InvalidShape", "Partition", "parse_partition",
           "partitions", "partitions_upto", "K", "SymFun", "at_t", "character", "coef", "deformed_inner",
           "m_basis", "p_to_m", "schur", "series", "t"]
