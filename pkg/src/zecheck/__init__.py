"""Numerical certification suite for the flagged-phase qudit channel family.

The toolkit builds the channel from an enumerated exact unitary
2-design, checks the closed-form overlap operator and its consequences
for zero-error transmission, runs the perfect-privacy protocol, replays
the PPT twirl certificate, and analyzes the channel's non-commutative
graph, all at desk scale (d in {2, 3}, up to two uses).
"""

from .channel import (
    BlockStateVector,
    CQState,
    FlaggedPhaseChannel,
    apply_complementary_n,
    apply_n,
    build_channel,
    cq_overlap,
    load_block_state,
    random_block_state,
    save_block_state,
)
from .designs import (
    DesignCacheError,
    UnitaryFamily,
    canonical_phase,
    clifford_generators,
    clock,
    conjugate_twirl,
    enumerate_clifford,
    find_minimal_subdesign,
    fourier,
    frame_potential,
    load_design_cache,
    save_design_cache,
    shift,
    verify_two_design,
)
from .linalg import (
    Subspace,
    max_entangled,
    max_entangled_projector,
    partial_trace,
    partial_transpose,
    support_null,
    tensor,
    trace_distance,
    trace_inner,
)
from .ncgraph import OperatorSpan, condition_checks, contains, graph_span, operator_span
from .ppt import (
    IsotropicDecomposition,
    PPTSearchResult,
    PPTWitness,
    build_ppt_witness,
    constraint_score,
    counterexample_search,
    is_ppt,
    isotropic_twirl_n,
    ppt_search,
    project_to_ppt,
    recursion_certificate,
)
from .privacy import ProtocolTranscript, run_protocol, transpose_trick_residual, verify_secrecy
from .report import ClaimResult, RunConfig, VerificationReport, emit_report
from .report import TOOLKIT_VERSION as __version__
from .suites import case_rng, execute
from .zero_error import (
    CodePairCheck,
    OrthogonalityReport,
    averaged_output_overlap,
    code_pair_conditions,
    design_average_overlap_operator,
    disjoint_support,
    orthogonality_report,
    overlap_operator,
    overlap_support_projector,
    pairing_vector,
)
