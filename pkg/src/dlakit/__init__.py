"""Dynamical Lie algebras of quantum generator sets: closure, [g,g], center and direct powers."""
from .closure import (
    ClosureReport,
    LieBasis,
    all_pairs_closure_oracle,
    analyze,
    center,
    commutator_subalgebra,
    lie_closure,
)
from .constructions import (
    CyclicityReport,
    GeneratorSpec,
    complete_graph,
    cycle_graph,
    detect_cyclic,
    extend_naive,
    extend_subset,
    pauli_spec,
    qaoa_generators,
    tensor_q,
    verify_4lambda_identity,
)
from .dense import build_hermitian_with_spectrum, sign_unambiguous, square_scalar_check
from .errors import (
    CappedClosureError,
    DependentGeneratorsError,
    DLAError,
    InvalidGeneratorError,
    SignAmbiguousError,
    SpecFormatError,
)
from .numeric import (
    DEFAULT_POLICY,
    TolerancePolicy,
    commutator,
    hermitian_eig,
    hs_inner,
    hs_norm,
    orthonormal_extend,
    power_span_check,
    proportional,
    rank,
)
from .pauli import PauliCombination, PauliTerm, anticommutation_graph, pauli_commutator, pauli_decompose
from .rewrite import expand_over_pair, right_nested_rewrite
from .verify import (
    DirectPowerEvidence,
    TheoremVerdict,
    projector_containment_check,
    verify_direct_power,
    verify_theorem,
)

__version__ = "0.1.0"
