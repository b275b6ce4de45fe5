"""Classical invariants of knots on pages of contact open books."""
from .page_model import (
    ALPHA,
    BETA,
    HIGH,
    LOW,
    CurveWord,
    DehnTwist,
    HomologyClassVector,
    KnotOnPage,
    Letter,
    OpenBookSpec,
    PageSignature,
    homology_class,
    validate_word,
)
from .rotation_count import planar_rotation, rotation_number, rotation_word_count
from .surgery_invariants import (
    InvariantReport,
    Verdict,
    build_presentation,
    expand_multiplicities,
    full_report,
)

__version__ = "0.1.0"
