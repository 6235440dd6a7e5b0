"""
Exact tilt-stability and central-charge computations on numerical
intersection rings of smooth projective threefolds.
"""

from .ring import (
    CurveClass,
    DivisorClass,
    IntersectionRing,
    RingMorphism,
    as_rational,
    blowup_of,
    div_mul,
    make_blowup_ring,
    make_contraction_ring,
    make_rank_one_ring,
    make_weierstrass_ring,
    pair,
    triple,
    validate,
)
from .chern import (
    ChernCharacter,
    ch_algebra_B,
    ch_exceptional_twist,
    ch_ideal_point,
    ch_line_bundle,
    ch_skyscraper,
    ch_structure_sheaf,
    ch_structure_sheaf_divisor,
    exp_divisor,
    twist,
)
from .tilt import (
    EVERY_ALPHA,
    INF,
    Caps,
    LambdaVector,
    Region,
    StabilityParams,
    Wall,
    discriminant,
    discriminant_lambda,
    enumerate_candidate_walls,
    lattice_steps,
    nu_zero_alpha_sq,
    radius_bound_higher_rank,
    slope_mu,
    slope_nu,
    slope_nu_lambda,
    to_lambda,
    vertical_wall,
    wall,
    wall_meets_region,
    in_heart_along,
)
from .blowup import (
    BlowupGeometry,
    ComplexRational,
    bridgeland_slope,
    central_charge,
    grr_pushforward,
    make_blowup_geometry,
    pushforward,
    transport_ch,
    transport_ch_via_grr,
    verify_factor_three,
)
from .bmt import (
    ChargeRegion,
    CounterexampleReport,
    bmt_defect,
    check_divisor_counterexample,
    contraction_margin,
    contraction_scenario,
    minimal_m,
    positivity_check,
    weierstrass_margin,
    weierstrass_scenario,
    weierstrass_threshold_ok,
)

__version__ = "0.1.0"
