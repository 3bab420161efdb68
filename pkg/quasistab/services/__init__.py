"""
Toolkit Services
Dual graph combinatorics, balance, morphisms, criteria, oracle and documents.
"""

from quasistab.services.dualgraph import (
    validate,
    total_genus,
    subcurve_invariants,
    classify,
    stability_status,
    connected_core_subcurves,
    connected_subcurves,
    blow_up_edges,
    is_relabeling,
)
from quasistab.services.balance import (
    degree_bounds,
    forced_tail_bridge_degrees,
    is_balanced,
    enumerate_balanced,
    is_gieseker_balanced,
    twist_by_omega,
    omega_pullback_degrees,
    bridge_assignments,
    bridge_assignment_of,
    dm_condition,
    stack_dimension,
)
from quasistab.services.morphisms import (
    contract_last_marking,
    forget_last_point,
    forget_all_markings,
    stabilize,
    marking_section,
    stable_model,
    strip_to_unpointed,
    lift_multidegree,
    strip_multidegree,
    forgetful_fiber,
)
from quasistab.services.cohomology import (
    omega_twist_multidegree,
    h1_vanishing,
    base_point_free_criterion,
    h0_if_criterion,
    normal_generation_hypothesis,
    dualizing_power_report,
    balanced_large_d_report,
    positivity_report,
    section_rank,
    large_degree_threshold,
)
from quasistab.services.document import (
    parse_document,
    serialize_document,
    dumps_document,
    load_document,
    save_document,
)

__all__ = [
    'validate',
    'total_genus',
    'subcurve_invariants',
    'classify',
    'stability_status',
    'connected_core_subcurves',
    'connected_subcurves',
    'blow_up_edges',
    'is_relabeling',
    'degree_bounds',
    'forced_tail_bridge_degrees',
    'is_balanced',
    'enumerate_balanced',
    'is_gieseker_balanced',
    'twist_by_omega',
    'omega_pullback_degrees',
    'bridge_assignments',
    'bridge_assignment_of',
    'dm_condition',
    'stack_dimension',
    'contract_last_marking',
    'forget_last_point',
    'forget_all_markings',
    'stabilize',
    'marking_section',
    'stable_model',
    'strip_to_unpointed',
    'lift_multidegree',
    'strip_multidegree',
    'forgetful_fiber',
    'omega_twist_multidegree',
    'h1_vanishing',
    'base_point_free_criterion',
    'h0_if_criterion',
    'normal_generation_hypothesis',
    'dualizing_power_report',
    'balanced_large_d_report',
    'positivity_report',
    'section_rank',
    'large_degree_threshold',
    'parse_document',
    'serialize_document',
    'dumps_document',
    'load_document',
    'save_document',
]
