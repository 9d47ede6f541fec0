"""Forward and backward time evolution, exact or by symmetric Trotter splitting.

The Trotter path never builds a matrix. One segment of length ``dt`` is

    exp(-i H_x dt/2) exp(-i H_zz dt) exp(-i H_x dt/2)

where the field half-steps are N independent single-site x rotations and the
coupling step is a diagonal phase. Backward evolution applies the inverses of
the same factors in reverse order, so a forward/backward round trip is the
identity to rounding error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError
from .hamiltonian import EigenSystem, HamiltonianTerms, IsingModel
from .statevector import PauliAxis, StateVector, _pauli_inplace

__all__ = [
    "DEFAULT_MAX_DT",
    "Direction",
    "EvolutionMethod",
    "evolve",
    "exact_evolve",
    "heisenberg_state",
    "trotter_evolve",
]

#: Largest Trotter segment used when ``trotter_m`` is left unset.
DEFAULT_MAX_DT = 0.05

_GRID_TOL = 1e-9


class Direction(enum.Enum):
    FORWARD = -1  # exp(-iHt)
    BACKWARD = 1  # exp(+iHt)


@dataclass(frozen=True)
class EvolutionMethod:
    """How to realize ``exp(-iHt)``.

    ``trotter_m`` is the number of segments per Trotter step. A step spans
    ``step`` time units when given; otherwise the whole interval ``t`` is a
    single step. With ``trotter_m=None`` the count is chosen so that each
    segment is at most :data:`DEFAULT_MAX_DT` long.
    """

    kind: Literal["exact", "trotter"] = "exact"
    trotter_m: int | None = None
    step: float | None = None

    def __post_init__(self):
        if self.kind not in ("exact", "trotter"):
            raise DomainError(f"unknown evolution method {self.kind!r}")
        if self.trotter_m is not None and self.trotter_m < 1:
            raise DomainError(f"trotter_m must be >= 1, got {self.trotter_m}")
        if self.step is not None and not self.step > 0:
            raise DomainError(f"Trotter step must be positive, got {self.step}")

    @classmethod
    def exact(cls) -> EvolutionMethod:
        return cls("exact")

    @classmethod
    def trotter(cls, m: int | None = None, step: float | None = None) -> EvolutionMethod:
        return cls("trotter", m, step)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def segments_for(self, tau: float) -> int:
        if self.trotter_m is not None:
            return self.trotter_m
        return max(1, math.ceil(abs(tau) / DEFAULT_MAX_DT - 1e-12))

    def with_step(self, step: float) -> EvolutionMethod:
        if self.is_exact or self.step is not None:
            return self
        return EvolutionMethod(self.kind, self.trotter_m, step)


EXACT = EvolutionMethod.exact()


def _direction(direction: Direction | str) -> Direction:
    if isinstance(direction, Direction):
        return direction
    try:
        return Direction[str(direction).upper()]
    except KeyError:
        raise DomainError(f"unknown direction {direction!r}") from None


def exact_evolve(
    eig: EigenSystem,
    state: StateVector,
    t: float,
    direction: Direction | str = Direction.FORWARD,
) -> StateVector:
    """``exp(-iHt)|state>`` (forward) or ``exp(+iHt)|state>`` (backward) via the spectrum."""
    if eig.dim != state.dim:
        raise DomainError(f"dimension mismatch: spectrum {eig.dim} vs state {state.dim}")
    sign = _direction(direction).value
    if t == 0:
        return state.copy()
    vecs = eig.eigenvectors
    coeffs = vecs.conj().T @ state.amplitudes
    coeffs *= np.exp(sign * 1j * eig.eigenvalues * t)
    return StateVector(state.n_sites, vecs @ coeffs)


def _rotate_all_sites(amps: np.ndarray, n_sites: int, c: float, s: complex) -> None:
    # in place: every site gets [[c, s], [s, c]] with s = +-i sin(theta)
    for site in range(1, n_sites + 1):
        view = amps.reshape(1 << (site - 1), 2, 1 << (n_sites - site))
        up = view[:, 0, :].copy()
        down = view[:, 1, :]
        view[:, 0, :] = c * up + s * down
        view[:, 1, :] = s * up + c * down


def _trotter_segments(
    amps: np.ndarray, terms: HamiltonianTerms, dt: float, count: int, direction: Direction
) -> None:
    n = terms.n_sites
    sign = direction.value
    # exp(-i H_x dt/2) with H_x = -g sum sigma^x is prod_n exp(+i g dt/2 sigma^x_n)
    theta = terms.field_layer.strength * dt / 2
    c = math.cos(theta)
    s = -sign * 1j * math.sin(theta)
    phases = np.exp(sign * 1j * terms.zz_diagonal * dt)
    has_field = theta != 0.0
    for _ in range(count):
        if has_field:
            _rotate_all_sites(amps, n, c, s)
        amps *= phases
        if has_field:
            _rotate_all_sites(amps, n, c, s)


def trotter_evolve(
    terms: HamiltonianTerms,
    state: StateVector,
    tau: float,
    m: int,
    direction: Direction | str = Direction.FORWARD,
) -> StateVector:
    """Approximate ``exp(-/+ iH tau)|state>`` with ``m`` symmetric Trotter segments."""
    if m < 1:
        raise DomainError(f"Trotter segment count m must be >= 1, got {m}")
    if not math.isfinite(tau):
        raise DomainError(f"evolution time must be finite, got {tau}")
    if terms.n_sites != state.n_sites:
        raise DomainError(f"dimension mismatch: {terms.n_sites} vs {state.n_sites} sites")
    amps = state.amplitudes.copy()
    _trotter_segments(amps, terms, tau / m, m, _direction(direction))
    return StateVector(state.n_sites, amps)


def evolve(
    model: IsingModel,
    state: StateVector,
    t: float,
    method: EvolutionMethod = EXACT,
    direction: Direction | str = Direction.FORWARD,
) -> StateVector:
    """Evolve ``state`` for time ``t`` with whichever backend ``method`` names.

    A Trotter method with a fixed ``step`` requires ``t`` to be a whole number
    of steps and evolves ``t/step`` consecutive steps of ``trotter_m``
    segments each.
    """
    if method.is_exact:
        return exact_evolve(model.eig, state, t, direction)
    if method.step is None:
        return trotter_evolve(model.terms, state, t, method.segments_for(t), direction)
    k = round(t / method.step)
    if abs(k * method.step - t) > _GRID_TOL * max(1.0, abs(t)):
        raise DomainError(f"t={t} is not a whole number of Trotter steps of length {method.step}")
    if k == 0:
        return state.copy()
    m = method.segments_for(method.step)
    if model.n_sites != state.n_sites:
        raise DomainError(f"dimension mismatch: {model.n_sites} vs {state.n_sites} sites")
    amps = state.amplitudes.copy()
    _trotter_segments(amps, model.terms, method.step / m, abs(k) * m,
                      _direction(direction) if k > 0 else _flip(_direction(direction)))
    return StateVector(state.n_sites, amps)


def _flip(direction: Direction) -> Direction:
    return Direction.BACKWARD if direction is Direction.FORWARD else Direction.FORWARD


def heisenberg_state(
    psi0: StateVector,
    model: IsingModel,
    t: float,
    method: EvolutionMethod = EXACT,
    site: int = 1,
    axis: PauliAxis | str = PauliAxis.Z,
) -> StateVector:
    """``exp(iHt) sigma^axis_site exp(-iHt) |psi0>``, i.e. the Heisenberg operator applied to psi0."""
    axis = PauliAxis.parse(axis)
    if not 1 <= site <= psi0.n_sites:
        raise DomainError(f"site must lie in 1..{psi0.n_sites}, got {site}")
    forward = evolve(model, psi0, t, method, Direction.FORWARD)
    amps = forward.amplitudes  # freshly allocated by evolve
    _pauli_inplace(amps, psi0.n_sites, site, axis)
    return evolve(model, forward, t, method, Direction.BACKWARD)
