"""Stopping sets of codes built from elliptic curves over small finite
fields: exact classification, counting, and matrix-level verification."""

from .agcode import (
    CodeMatrix,
    Distribution,
    EllipticCodeSpec,
    dual_rows,
    generator_matrix,
    hstar_rows,
    hstar_support_masks,
    is_stopping_set_oracle,
    mds_distribution,
    min_distance_bruteforce,
    null_space,
    residue_min_distance,
    rr_basis,
    rs_code,
    scale_columns,
    spec_all_points,
)
from .curve import (
    INFINITY,
    EllipticCurve,
    GroupStructure,
    Point,
    add,
    curve,
    group_structure,
    neg,
    point_order,
    rational_points,
    scalar_mul,
    sum_points,
)
from .decoder import ErasureInstance, make_instance, peel, residual_is_stopping
from .errors import FieldMismatchError, IntegrityError, SizeLimitError
from .ffield import FieldElement, FieldSpec, enumerate_field, parse_field, sqrt
from .groupcount import (
    AbelianGroup,
    GroupElement,
    closed_form_p_power,
    closed_form_two_power_terms,
    closed_form_two_primes,
    count_S_m,
    count_formula,
    dp_count,
    e_of_b,
    moebius,
    torsion_count,
)
from .stoptheory import (
    StoppingReport,
    StoppingStatus,
    Verdict,
    build_report,
    build_S_m_plus,
    classify,
    distribution,
    enumerate_S_m,
    enumerate_S_m1,
    is_subgroup_minus_O,
    oracle_agreement_check,
    recover_S_m,
    stopping_distance,
)

__version__ = "1.0.0"
