"""Statevector OTOC dynamics of periodic transverse-field and ANNNI Ising chains."""

from .correlators import (
    AveragingMode,
    CorrelatorPair,
    OperatorSpec,
    ancilla_real_part,
    autocorrelation,
    long_time_average,
    otoc_general,
    otoc_quench,
)
from .errors import CapacityError, DomainError, OutputError
from .evolution import Direction, EvolutionMethod, evolve, exact_evolve, heisenberg_state, trotter_evolve
from .experiments import (
    FullyPolarized,
    GroundStateOf,
    QuenchSpec,
    ScanCurve,
    SizeSweepResult,
    TimeSeries,
    estimate_critical_point,
    mean_abs_deviation,
    run_equilibrium,
    run_quench,
    scan_field,
    size_sweep,
)
from .hamiltonian import (
    EigenSystem,
    HamiltonianTerms,
    IsingModel,
    IsingParams,
    build_terms,
    eigendecompose,
    ground_state,
    total_hamiltonian,
)
from .statevector import (
    PauliAxis,
    StateVector,
    apply_dense,
    apply_site_pauli,
    basis_state,
    expect_site_pauli,
    inner,
)

__version__ = "0.1.0"
