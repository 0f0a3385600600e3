"""Discrete Morse theory on digraphs."""
from .complex import (HypothesisReport, MorseComplexRep, check_hypotheses, crit_cap_omega,
                      morse_complex, morse_homology, phi_fixed_cap_omega, reduced_boundary_by_solve)
from .flow import (DiscreteGradient, VectorField, discrete_gradient, flow_stabilize, gradient_field,
                   gradient_flow, phi_fixed_space, phi_invariant_basis)
from .function import (CriticalSet, FlatWittenReport, MorseFunction, ValidationReport, Violation,
                       check_flat_witten_morse, critical_paths, equal_weight_cofaces, equal_weight_faces,
                       extend_to_closure, is_critical, parse_morse_function, path_weight, require_morse,
                       serialize_morse_function, validate_morse, zero_point_set)
from .inequalities import InequalityReport, morse_inequalities

__all__ = [
    "CriticalSet", "DiscreteGradient", "FlatWittenReport", "HypothesisReport", "InequalityReport",
    "MorseComplexRep", "MorseFunction", "ValidationReport", "VectorField", "Violation",
    "check_flat_witten_morse", "check_hypotheses", "crit_cap_omega", "critical_paths",
    "discrete_gradient", "equal_weight_cofaces", "equal_weight_faces", "extend_to_closure",
    "flow_stabilize", "gradient_field", "gradient_flow", "is_critical", "morse_complex",
    "morse_homology", "morse_inequalities", "parse_morse_function", "path_weight",
    "phi_fixed_cap_omega", "phi_fixed_space", "phi_invariant_basis", "reduced_boundary_by_solve",
    "require_morse", "serialize_morse_function", "validate_morse", "zero_point_set",
]
