"""sheafcalc: exact invariants of codimension-one distributions and rank-2
reflexive sheaves on smooth projective threefolds with Picard rank one.

Everything is computed in exact integer/rational arithmetic; every value is
immutable and every operation is a pure function.
"""

from .chow import (
    P3,
    PRESETS,
    QUADRIC,
    QUINTIC,
    ChernData,
    ChowClass,
    ThreefoldData,
    ch_to_chern,
    chern_to_ch,
    chi_at_twist,
    dual_chern,
    hrr_chi,
    line_chern,
    load_threefold,
    reflexive_dual_rank2,
    ses_third,
    sum_chern,
    threefold_from_dict,
    threefold_to_dict,
    todd_class,
    twist_chern,
)
from .cohomology import (
    CohomTable,
    DimEntry,
    bott_h,
    generic_dist_cohom,
    les_chase,
    line_h,
    omega_chern,
    serre_tangent_h,
)
from .dist import (
    ConnReport,
    DistributionProfile,
    StabilityVerdict,
    SubfoliationReport,
    conn_components,
    dist_chern,
    singular_length,
    stability_classify,
    subfoliation_analyze,
)
from .errors import EngineError
from .modulispec import (
    CurveFamilyReport,
    ModuliReport,
    ResolutionReport,
    SpectrumPoint,
    curve_family,
    ext2_dim,
    global_gen_resolution,
    moduli_report,
    normalize,
    normalize_chern,
    pic_act,
    spectrum_point,
)
from .sheafdsl import NamedDecl, SheafExpr, chern_of, cohom_of, parse, pretty

__version__ = "0.1.0"
