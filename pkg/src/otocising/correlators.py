"""Out-of-time-ordered and two-point correlators of local Pauli operators.

All routines take a model context (:class:`~otocising.hamiltonian.IsingModel`)
and an :class:`~otocising.evolution.EvolutionMethod`; they never build the
Heisenberg operator as a matrix, only states.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .evolution import EXACT, Direction, EvolutionMethod, evolve
from .hamiltonian import IsingModel
from .statevector import (
    PauliAxis,
    StateVector,
    apply_site_pauli,
    expect_site_pauli,
    inner,
)

__all__ = [
    "AveragingMode",
    "CorrelatorPair",
    "CorrelatorSample",
    "OperatorSpec",
    "ancilla_real_part",
    "autocorrelation",
    "long_time_average",
    "otoc_general",
    "otoc_quench",
    "sigma_z_eigenvalue",
]

_EIGEN_TOL = 1e-10
_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class OperatorSpec:
    site: int = 1
    axis: PauliAxis = PauliAxis.Z

    def __post_init__(self):
        object.__setattr__(self, "axis", PauliAxis.parse(self.axis))
        if self.site < 1:
            raise DomainError(f"site must be >= 1, got {self.site}")

    def apply(self, state: StateVector) -> StateVector:
        return apply_site_pauli(state, self.site, self.axis)


SIGMA_Z1 = OperatorSpec(1, PauliAxis.Z)


@dataclass(frozen=True)
class CorrelatorSample:
    t: float
    f_value: complex
    chi_value: complex


class AveragingMode(enum.Enum):
    TRAPEZOID = "trapezoid"
    POINT_MEAN = "pointmean"

    @classmethod
    def parse(cls, value: AveragingMode | str) -> AveragingMode:
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("_", "").replace("-", "")
        for mode in cls:
            if mode.value == key:
                return mode
        raise DomainError(f"unknown averaging mode {value!r}; expected trapezoid or pointmean")


class CorrelatorPair(enum.Enum):
    OTOC = "otoc"
    AUTOCORRELATION = "autocorrelation"


def sigma_z_eigenvalue(state: StateVector, site: int = 1) -> int | None:
    """+1 or -1 if ``state`` is an eigenstate of sigma^z on ``site``, else None."""
    flipped = apply_site_pauli(state, site, PauliAxis.Z).amplitudes
    amps = state.amplitudes
    if np.max(np.abs(flipped - amps)) <= _EIGEN_TOL:
        return 1
    if np.max(np.abs(flipped + amps)) <= _EIGEN_TOL:
        return -1
    return None


def _heisenberg_apply(
    op: OperatorSpec, state: StateVector, model: IsingModel, t: float, method: EvolutionMethod
) -> StateVector:
    # W(t)|state> = exp(iHt) W exp(-iHt) |state>
    forward = evolve(model, state, t, method, Direction.FORWARD)
    return evolve(model, op.apply(forward), t, method, Direction.BACKWARD)


def otoc_quench(
    psi0: StateVector, model: IsingModel, t: float, method: EvolutionMethod = EXACT
) -> complex:
    """F(t) for a +1 eigenstate of sigma^z_1, as ``<psi(t)|sigma^z_1|psi(t)>``.

    Here ``|psi(t)> = exp(iHt) sigma^z_1 exp(-iHt) |psi0>``, which is the
    same four-point function as :func:`otoc_general` with W = V = sigma^z_1
    but needs only one Heisenberg round trip.
    """
    if sigma_z_eigenvalue(psi0, 1) != 1:
        raise DomainError(
            "otoc_quench needs a +1 eigenstate of sigma^z on site 1; use otoc_general instead"
        )
    psi_t = _heisenberg_apply(SIGMA_Z1, psi0, model, t, method)
    value = inner(psi_t, SIGMA_Z1.apply(psi_t))
    if abs(value.imag) > _IMAG_TOL:
        raise AssertionError(f"quench OTOC has imaginary part {value.imag:.3e}")
    return value


def otoc_general(
    psi0: StateVector,
    w: OperatorSpec,
    v: OperatorSpec,
    model: IsingModel,
    t: float,
    method: EvolutionMethod = EXACT,
) -> complex:
    """``<psi0| W(t) V W(t) V |psi0>`` for Pauli operators W and V.

    Evaluated as the overlap ``<psi1|psi2>`` with ``psi2 = W(t) V psi0`` and
    ``psi1 = V W(t) psi0``.
    """
    psi2 = _heisenberg_apply(w, v.apply(psi0), model, t, method)
    psi1 = v.apply(_heisenberg_apply(w, psi0, model, t, method))
    return inner(psi1, psi2)


def autocorrelation(
    psi0: StateVector,
    model: IsingModel,
    t: float,
    method: EvolutionMethod = EXACT,
    site: int = 1,
) -> complex:
    """chi(t) = ``<psi0| sigma^z(t) sigma^z |psi0>`` on ``site``.

    For a sigma^z eigenstate this reduces to the magnetization of the
    forward-evolved state; otherwise it is computed as an overlap.
    """
    op = OperatorSpec(site, PauliAxis.Z)
    forward = evolve(model, psi0, t, method, Direction.FORWARD)
    eigenvalue = sigma_z_eigenvalue(psi0, site)
    if eigenvalue is not None:
        return complex(eigenvalue * expect_site_pauli(forward, site, PauliAxis.Z))
    kicked = evolve(model, op.apply(psi0), t, method, Direction.FORWARD)
    return inner(forward, op.apply(kicked))


def long_time_average(times, values, mode: AveragingMode | str = AveragingMode.TRAPEZOID) -> float:
    """Time average of the real part of a sampled correlator.

    ``trapezoid`` integrates over ``[times[0], times[-1]]`` and divides by the
    span; ``pointmean`` is the plain mean of the samples.
    """
    mode = AveragingMode.parse(mode)
    t = np.asarray(times, dtype=float)
    y = np.real(np.asarray(values))
    if t.shape != y.shape or t.ndim != 1:
        raise DomainError(f"times and values must be matching 1-d arrays, got {t.shape} and {y.shape}")
    if t.size < 2:
        raise DomainError(f"long-time average needs at least 2 samples, got {t.size}")
    if np.any(np.diff(t) <= 0):
        raise DomainError("sample times must be strictly increasing")
    if mode is AveragingMode.POINT_MEAN:
        return float(np.mean(y))
    return float(np.trapezoid(y, t) / (t[-1] - t[0]))


def _hadamard_on_ancilla(full: np.ndarray) -> None:
    half = full.size // 2
    a, b = full[:half].copy(), full[half:].copy()
    full[:half] = (a + b) / np.sqrt(2)
    full[half:] = (a - b) / np.sqrt(2)


def ancilla_real_part(
    psi_init: StateVector,
    pair: CorrelatorPair | str,
    model: IsingModel,
    t: float,
    method: EvolutionMethod = EXACT,
) -> float:
    """Read out Re F(t) or Re chi(t) with a control qubit in the X basis.

    The register is ``|0>_anc (x) psi_init`` with the ancilla as site 1 of an
    (N+1)-site state. After a Hadamard on the ancilla, U1 acts when the ancilla
    is 1 and U2 when it is 0:

    * OTOC: U1 = sigma^z sigma^z(t), U2 = sigma^z(t) sigma^z
    * autocorrelation: U1 = sigma^z(t), U2 = sigma^z

    The result is ``<sigma^x>`` of the ancilla.
    """
    pair = CorrelatorPair(pair) if not isinstance(pair, CorrelatorPair) else pair
    n = psi_init.n_sites
    if model.n_sites != n:
        raise DomainError(f"dimension mismatch: model has {model.n_sites} sites, state {n}")

    def sz_t(state: StateVector) -> StateVector:
        return _heisenberg_apply(SIGMA_Z1, state, model, t, method)

    if pair is CorrelatorPair.OTOC:
        def u1(s):
            return SIGMA_Z1.apply(sz_t(s))

        def u2(s):
            return sz_t(SIGMA_Z1.apply(s))
    else:
        u1, u2 = sz_t, SIGMA_Z1.apply

    dim = psi_init.dim
    full = np.zeros(2 * dim, dtype=np.complex128)
    full[:dim] = psi_init.amplitudes
    _hadamard_on_ancilla(full)
    for control, payload in ((1, u1), (0, u2)):
        block = slice(control * dim, (control + 1) * dim)
        full[block] = payload(StateVector(n, full[block])).amplitudes
    register = StateVector(n + 1, full)
    return expect_site_pauli(register, 1, PauliAxis.X)
