"""Affinity-based geometric discord, OU dephasing and correlation speed limits."""
from .channels import KrausChannel, OuParams, apply, evolve_bell_diagonal, ou_f, ou_kraus, ou_trajectory
from .correlations import (
    BlochMeasurement,
    CorrelationReport,
    affinity,
    affinity_discord,
    affinity_discord_closed,
    affinity_discord_oracle,
    affinity_discord_pure,
    concurrence,
    correlation_report,
    hs_discord,
    measure_a,
)
from .qsl import QslMode, QslProfile, delta_q, lambda_averages, sqrt_rate, tau_qsl
from .states import (
    BellDiagonalParams,
    DensityMatrix,
    SchmidtDecomposition,
    bell_diagonal,
    classical_quantum,
    pure_state,
    random_mixed,
    random_pure,
    random_unitary,
    schmidt,
)

__version__ = "0.1.0"
