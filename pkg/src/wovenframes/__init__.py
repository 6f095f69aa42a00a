"""Finite frames, their duals and woven pairs."""

from .certificates import CERTIFICATES, CertificateResult
from .duality import (
    DualFamily,
    PerturbationSequence,
    canonical_dual,
    canonical_parseval,
    make_dual,
    perturbation_space,
    random_dual,
)
from .errors import FrameError, InputError, NumericalError
from .frame import (
    Frame,
    excess,
    frame_bounds,
    frame_operator,
    is_frame,
    is_riesz_basis,
    riesz_bounds,
    verify_duality,
)
from .weaving import (
    PartitionAssignment,
    WeavingVerdict,
    counterexample_search,
    exhaustive_multi,
    exhaustive_pair,
    riesz_woven,
    weave,
    weave_multi,
)

__version__ = "0.1.0"
