import math

# Hermiticity, trace and unitarity checks on operators.
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
UNITARY_TOL = 1e-12

# Eigenvalues in [PSD_FLOOR, 0) are rounding noise from the Jacobi
# sweeps and get clamped to zero; anything below is a real violation.
PSD_FLOOR = -1e-10

# Irreality and reality changes in [-NEGATIVE_ZERO_TOL, 0) are reported as 0.
NEGATIVE_ZERO_TOL = 1e-10

MAX_DIM = 8
JACOBI_OFFDIAG_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

LN2 = math.log(2.0)

# Meter angle used for the mixed-meter scenario, in degrees.
DEFAULT_THETA_DEG = 16.0

# Loss strength used when a noisy channel is selected without explicit kappa0.
DEFAULT_KAPPA0 = 0.1

DEFAULT_MLE_MAX_ITER = 2000
DEFAULT_MLE_TOL = 1e-10
DEFAULT_RESAMPLE_REPEATS = 5

# Shots per setting for a single tomography run when none are given.
DEFAULT_TOMO_SHOTS = 100_000
