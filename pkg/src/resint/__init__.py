"""Exact toolkit for integrability of three-dimensional polynomial systems
whose linear part is diag(1, z, z^2) with z a primitive cube root of unity:
obstruction quantities, truncated distinguished normal forms, and
reversibility / component condition checks, all in exact arithmetic."""

from .cyclotomic import CycQ, KAPPA, ONE, Rational, ZERO, ZETA, ZETA2, eval_divisor, rat
from .polyring import ParamPoly, PhasePoly, apply_vector_field
from .sysspec import (
    SpecError,
    STriple,
    SystemSpec,
    bench_families,
    concrete_field,
    l_map,
    load_spec,
    parse_spec,
    quadratic_family,
    symbolic_field,
)
from .quantities import (
    GList,
    REFERENCE_TERM_COUNTS,
    ResidualReport,
    VCache,
    VTable,
    brute_force_check,
    diagonal_coefficient,
    enumerate_diagonal_support,
    quantities_coefficientwise,
    quantities_direct,
    quantities_direct_values,
    reachable_indices,
    universal_coefficient,
)
from .normalform import (
    NormalizingMap,
    ResonantSeries,
    compute_normal_form,
    integrability_residual,
    is_resonant,
    normal_form_report,
    resonance_divisor,
    verify_conjugacy,
)
from .conditions import (
    COMPONENT_GENERATORS,
    CONJECTURE_COMPONENTS,
    IZETA_GENERATORS,
    LINEARIZABLE_COMPONENTS,
    QuadPoint,
    RevMatrix,
    check_equivariance,
    check_necessary_conditions,
    components_containing,
    eval_component,
    eval_izeta,
    sample_component,
    sample_reversible,
    system22_point,
)

__version__ = "0.1.0"
