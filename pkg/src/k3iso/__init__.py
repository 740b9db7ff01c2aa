"""Decision engine for moduli-space self-duality of lattice-polarized K3 data.

Given rank/degree data (r, s, d) and an ambient even lattice of signature
(1, 1) described by (n_half, gamma, delta, mu), the package decides whether
the standard two-series criterion produces an isomorphism, and when it does,
emits a replayable chain certificate.  Supporting machinery: exact binary
quadratic form solving, a four-dimensional hyperbolic model for independent
cross-checks, a JSON wire format, a grid scanner, an HTTP service, and a CLI.
"""

from .arith import GammaSplit, MukaiInvariants, gamma_split, invariants, n_of_v
from .decide import (
    Certificate,
    DecisionInput,
    SEARCH_ORDER,
    SERIES_A,
    SERIES_B,
    Verdict,
    certificate,
    check_series,
    decide,
    find_witness,
    series_spec,
)
from .errors import (
    HypothesisViolated,
    IncompatibleConstraints,
    InvalidLattice,
    K3IsoError,
    LatticeMismatch,
    NotDivisible,
    NotEven,
    NotHyperbolic,
    NotInLattice,
    NotIsotropic,
    NotPositive,
    NotPrimitive,
    NotPrimitivePolarization,
    PreconditionViolated,
    SplitFailure,
    SynthesisFailure,
    ZeroTarget,
)
from .lattice import BasisMap, LatticeVector, PolarizedLattice, from_gram
from .moduli import (
    Chain,
    ChainReport,
    ChainStep,
    MukaiVector,
    Nu,
    NuInverse,
    Reflection,
    TERMINAL,
    Twist,
    TwistReport,
    Tyurin,
    apply,
    build_chain,
    twist_preserves,
    validate_chain,
)
from .mukai_model import (
    ModelVector,
    NuReport,
    QuotientReport,
    build_v,
    model_report,
    perp_quotient,
    t_vector,
    verify_nu,
)
from .qsolve import (
    ConstraintSet,
    RepResult,
    enumerate_bounded,
    pell_fundamental,
    represent,
    represent_detail,
)

__version__ = "0.1.0"

__all__ = [
    "BasisMap",
    "Certificate",
    "Chain",
    "ChainReport",
    "ChainStep",
    "ConstraintSet",
    "DecisionInput",
    "GammaSplit",
    "HypothesisViolated",
    "IncompatibleConstraints",
    "InvalidLattice",
    "K3IsoError",
    "LatticeMismatch",
    "LatticeVector",
    "ModelVector",
    "MukaiInvariants",
    "MukaiVector",
    "NotDivisible",
    "NotEven",
    "NotHyperbolic",
    "NotInLattice",
    "NotIsotropic",
    "NotPositive",
    "NotPrimitive",
    "NotPrimitivePolarization",
    "Nu",
    "NuInverse",
    "NuReport",
    "PolarizedLattice",
    "PreconditionViolated",
    "QuotientReport",
    "Reflection",
    "RepResult",
    "SEARCH_ORDER",
    "SERIES_A",
    "SERIES_B",
    "SplitFailure",
    "SynthesisFailure",
    "TERMINAL",
    "Twist",
    "TwistReport",
    "Tyurin",
    "Verdict",
    "ZeroTarget",
    "apply",
    "build_chain",
    "build_v",
    "certificate",
    "check_series",
    "decide",
    "enumerate_bounded",
    "find_witness",
    "from_gram",
    "gamma_split",
    "invariants",
    "model_report",
    "n_of_v",
    "pell_fundamental",
    "perp_quotient",
    "represent",
    "represent_detail",
    "series_spec",
    "t_vector",
    "twist_preserves",
    "validate_chain",
    "verify_nu",
]
