__version__ = "1.0.1"

from weak_reality.base.base_channel import BaseChannel
from weak_reality.channels import (
    IdentityChannel,
    SystemDephasingChannel,
    SystemDepolarizingChannel,
    SystemKrausChannel,
    build_channel,
)
from weak_reality.configuration import (
    Command,
    GridSpec,
    NoiseKind,
    NoiseScaling,
    NoiseSpec,
    ReconstructionMethod,
    RunConfig,
)
from weak_reality.errors import (
    DimensionError,
    DimensionMismatch,
    DimensionTooLarge,
    IncompleteData,
    InvalidDimension,
    InvalidOperatorError,
    InvalidOutcome,
    NonConvergence,
    NotHermitian,
    NotNormalized,
    NotPositive,
    NotUnitary,
    OutOfRange,
    WeakRealityError,
)
from weak_reality.events.violation_event import PropertyViolationEvent
from weak_reality.executors.default import DefaultExecutor
from weak_reality.interfaces.executor import GridExecutor
from weak_reality.measures.entropy import (
    Units,
    shannon_binary_entropy,
    to_units,
    von_neumann_entropy,
)
from weak_reality.measures.ledger import (
    InformationChange,
    InformationLedger,
    delta_information,
    information_ledger,
)
from weak_reality.measures.maps import dephasing_map, monitoring_map, weak_collapse
from weak_reality.measures.reality import (
    RealityReport,
    delta_reality,
    irreality,
    reality_report,
)
from weak_reality.qcore.linalg import (
    eig_hermitian,
    fidelity,
    tensor,
    trace_distance,
)
from weak_reality.qcore.states import (
    BELL_PHI_PLUS,
    KET_0,
    KET_1,
    KET_MINUS,
    KET_PLUS,
    PAULI_Z_OBSERVABLE,
    DensityMatrix,
    Observable,
    PauliBasis,
    PureState,
    Subsystem,
    apply_unitary,
    partial_trace,
    product_state,
)
from weak_reality.tomography.counts import (
    ALL_SETTINGS,
    CountTable,
    MeasurementSetting,
    expected_counts,
    simulate_counts,
)
from weak_reality.tomography.estimates import (
    QuantityEstimate,
    ResampledEstimate,
    estimate_quantities,
    estimate_with_resampling,
)
from weak_reality.tomography.reconstruction import (
    ReconstructionResult,
    linear_inversion,
    log_likelihood,
    mle_reconstruct,
    project_to_physical,
    reconstruct,
)
from weak_reality.weakmeas.experiment import (
    ExperimentResult,
    closed_form_delta_reality,
    run_experiment,
    sweep_meter_mixing,
    sweep_strength,
)
from weak_reality.weakmeas.meter import (
    MeterSpec,
    ReadoutOutcome,
    cphase_unitary,
    meter_state,
    readout_ancilla,
    strength_from_theta,
    theta_from_strength,
)
