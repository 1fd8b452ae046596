"""Construct, classify and verify single-qubit private quantum channels."""
__version__ = "0.1.0"

from ._errors import (
    BadDistribution,
    BlochOutOfBall,
    DegenerateSpan,
    DegenerateSpanWarning,
    DimensionMismatch,
    NotCP,
    NotUnital,
    PQCError,
    PreconditionFailed,
    UnachievableTarget,
)
from .bloch import (
    AffineSpan,
    CanonicalFrame,
    QubitState,
    affine_span,
    canonical_frame,
    most_mixed_on_line,
    plane_distance,
    state_from_bloch,
    state_from_matrix,
    trace_distance,
)
from .channel import (
    AffineChannel,
    ChoiMatrix,
    DiagonalForm,
    PqcClassification,
    apply,
    choi,
    classify_pqc,
    convex_combine,
    diagonalize,
    dual_decryption,
    ensemble_to_affine,
    is_cp,
    pauli_channel,
    pauli_lambdas,
    pauli_probabilities,
    tetrahedron_cp,
)
from .ensemble import EnsembleND, UnitaryEnsemble
from .entropy import pauli_key_entropy, shannon_entropy, von_neumann_entropy
from .estimator import PrivateChannelEncryptor
from .synth import (
    EntropyExchange,
    PqcReport,
    achievable_ball,
    entropy_curve,
    entropy_exchange,
    entropy_lower_bound,
    min_key_entropy,
    synth_full_ball,
    synth_single_state,
    synth_three_state,
    synth_two_state_interior,
    synth_two_state_surface,
    synthesize,
    tensor_pqc,
)
from .verify import (
    Verdict,
    sample_states_in_span,
    universal_not_witness,
    verify_constancy,
    verify_dual_constancy,
    verify_parallel_transport,
    verify_report,
)
