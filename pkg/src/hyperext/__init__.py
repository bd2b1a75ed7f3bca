"""Graded homological algebra over polynomial rings and hypersurface quotients."""

__version__ = "0.1.0"

from .errors import (
    AlgebraError,
    DegreeCapExceeded,
    EngineBug,
    HomogeneityError,
    HypothesisViolation,
    InvalidComplexError,
    ParseError,
    RingMismatchError,
    ShapingError,
)
from .invariants import (
    chi,
    depth,
    e_module,
    ext,
    grade,
    module_summary,
    pdim,
    theta,
    tor,
    xi_bar,
)
from .modules import (
    INFINITE,
    PresentedModule,
    cyclic_module,
    free_module,
    k_module,
    present_module,
    restrict_to_ambient,
    ring_as_module,
    tensor_modules,
    zero_module,
)
from .resolution import FreeResolution, minimal_resolution
from .rigidity import (
    CheckVerdict,
    RandomModuleSpec,
    check_ext_rigidity,
    check_grade_drop,
    check_jothilingam,
    check_lemma_ext_tor,
    check_self_ext_nonvanishing,
    check_tor_rigidity_theta,
    check_xi_chi_bridge,
    generate_module,
    random_hypersurface,
    run_campaign,
    syzygy_module,
)
from .ring import RingContext, make_quotient, make_ring

__all__ = [
    "AlgebraError",
    "CheckVerdict",
    "DegreeCapExceeded",
    "EngineBug",
    "FreeResolution",
    "HomogeneityError",
    "HypothesisViolation",
    "INFINITE",
    "InvalidComplexError",
    "ParseError",
    "PresentedModule",
    "RandomModuleSpec",
    "RingContext",
    "RingMismatchError",
    "ShapingError",
    "check_ext_rigidity",
    "check_grade_drop",
    "check_jothilingam",
    "check_lemma_ext_tor",
    "check_self_ext_nonvanishing",
    "check_tor_rigidity_theta",
    "check_xi_chi_bridge",
    "chi",
    "cyclic_module",
    "depth",
    "e_module",
    "ext",
    "free_module",
    "generate_module",
    "grade",
    "k_module",
    "make_quotient",
    "make_ring",
    "minimal_resolution",
    "module_summary",
    "pdim",
    "present_module",
    "random_hypersurface",
    "restrict_to_ambient",
    "ring_as_module",
    "run_campaign",
    "syzygy_module",
    "tensor_modules",
    "theta",
    "tor",
    "xi_bar",
    "zero_module",
]
