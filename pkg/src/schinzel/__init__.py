"""Exact-arithmetic toolkit for lattice geometry, heights and certified
bounds on subvarieties of powers of the multiplicative group.

Subpackage map: exactnum (rationals, certified intervals, transcendental
enclosures), numberfield (residue arithmetic modulo a minimal polynomial),
lattice (orthogonal lattices, LLL, minima, filtrations), laurent (sparse
Laurent polynomials and subgroup vanishing), heights (height machinery and
bound evaluators), verifier (end-to-end instance checking), inequalities
(the numerical inequality suite), cli (command-line interface).
"""

from .exactnum import (
    DEFAULT_BITS,
    CertifiedInterval,
    PrecisionError,
    Rational,
    ball_volume_pi_form,
    decimal_str,
    interval_e,
    interval_log,
    interval_pi,
    interval_pi_power,
    interval_sqrt,
)
from .heights import (
    BoundInputs,
    ProjectivePoint,
    bezout_bounds,
    complement_bound,
    component_bounds,
    dobrowolski_lower,
    double_harmonic,
    gcd_complexity_estimate,
    harmonic,
    htilde,
    hypersurface_height_upper,
    main_bound,
    normalized_vs_projective_slack,
    solve_log_inequality,
    transfer_bounds,
    weil_height_algebraic,
    weil_height_rational_point,
    zhang_interval,
)
from .inequalities import (
    ALL_IDS,
    InequalityCheck,
    ball_volume_interval,
    check_constant_chain,
    check_harmonic_bound,
    check_inequality,
)
from .lattice import (
    EnumerationCapError,
    Filtration,
    Lattice,
    VolumeProfile,
    build_filtration,
    enumerate_short_vectors,
    lll_reduce,
    orthogonal_lattice,
    saturate,
    successive_minima,
    torus_degree_interval,
    volume_profile,
)
from .laurent import (
    D_of,
    LaurentPolynomial,
    SupportSet,
    difference_set,
    evaluate_at_power_point,
    h1_of,
    maximal_vanishing_subgroups,
    vanishes_on_subgroup,
)
from .numberfield import NFElement, nf_is_zero, nf_mul, nf_pow
from .verifier import (
    Instance,
    VerificationReport,
    Witness,
    bivariate_coprime,
    filtration_report,
    find_orthogonal_witness,
    is_root_of_unity,
    point_on_variety,
    torsion_coset_witness,
    verify_instance,
)

__version__ = "0.1.0"
