"""Exact systoles of principal congruence surfaces and the bounds around them."""

__version__ = "0.1.0"

from .bounds import (
    BoundsConfig,
    BoundsReport,
    PackingPlan,
    arithmetic_asymptote,
    bounds_report,
    buser_sarnak_bounds,
    main_theorem_lower,
    packing_disk_lower,
    packing_radius,
    prop_log_lower,
    remark_lower,
    schmutz_upper,
    verify_sandwich,
)
from .congruence_signature import (
    Signature,
    asymptotic_ratio,
    group_order_oracle,
    signature_general,
    signature_prime,
)
from .errors import ToolkitError
from .hyp_trig import (
    collar_lower_bound,
    horoball_area,
    length_to_trace_bound,
    loop_to_horoball_distance,
    trace_to_length,
)
from .systole_search import (
    SystoleResult,
    TraceWitness,
    bfs_oracle,
    min_trace_exact,
    systole_of_level,
    witness_verify,
)
