"""Dense statevectors for chains of spin-1/2 sites.

Site 1 is the most significant bit of the amplitude index and bit value 0
is spin up (sigma^z = +1), so ``|up up ... up>`` lives at index 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "PauliAxis",
    "StateVector",
    "apply_dense",
    "apply_site_pauli",
    "basis_state",
    "expect_site_pauli",
    "inner",
]

_IMAG_TOL = 1e-10


class PauliAxis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"

    @classmethod
    def parse(cls, value: PauliAxis | str) -> PauliAxis:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown Pauli axis {value!r}; expected x, y or z") from None


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of ``n_sites`` spins stored as ``2**n_sites`` complex amplitudes."""

    n_sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_sites < 1:
            raise DomainError(f"n_sites must be >= 1, got {self.n_sites}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n_sites,):
            raise DomainError(
                f"expected {1 << self.n_sites} amplitudes for {self.n_sites} sites, "
                f"got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> StateVector:
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        size = amps.size
        if size < 2 or size & (size - 1):
            raise DomainError(f"amplitude count must be a power of two >= 2, got {size}")
        return cls(size.bit_length() - 1, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> StateVector:
        return StateVector(self.n_sites, self.amplitudes.copy())

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def __repr__(self) -> str:
        return f"StateVector(n_sites={self.n_sites}, amplitudes={self.amplitudes!r})"


def basis_state(n_sites: int, bit_pattern: int = 0) -> StateVector:
    """Computational basis state with amplitude 1 at ``bit_pattern``.

    >>> basis_state(2, 3).amplitudes.real
    array([0., 0., 0., 1.])
    """
    if n_sites < 1:
        raise DomainError(f"n_sites must be >= 1, got {n_sites}")
    dim = 1 << n_sites
    if not 0 <= bit_pattern < dim:
        raise DomainError(f"bit_pattern must satisfy 0 <= bit_pattern < 2**{n_sites} = {dim}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[bit_pattern] = 1.0
    return StateVector(n_sites, amps)


def _check_site(n_sites: int, site: int) -> None:
    if not 1 <= site <= n_sites:
        raise DomainError(f"site must lie in 1..{n_sites}, got {site}")


def _site_view(amps: np.ndarray, n_sites: int, site: int) -> np.ndarray:
    # axis 1 of the view is the local spin of `site`
    return amps.reshape(1 << (site - 1), 2, 1 << (n_sites - site))


def _pauli_inplace(amps: np.ndarray, n_sites: int, site: int, axis: PauliAxis) -> None:
    view = _site_view(amps, n_sites, site)
    if axis is PauliAxis.Z:
        view[:, 1, :] *= -1
    elif axis is PauliAxis.X:
        view[:] = view[:, ::-1, :].copy()
    else:
        up = view[:, 0, :].copy()
        view[:, 0, :] = -1j * view[:, 1, :]
        view[:, 1, :] = 1j * up


def apply_site_pauli(state: StateVector, site: int, axis: PauliAxis | str) -> StateVector:
    """Return ``sigma^axis_site |state>``."""
    axis = PauliAxis.parse(axis)
    _check_site(state.n_sites, site)
    amps = state.amplitudes.copy()
    _pauli_inplace(amps, state.n_sites, site, axis)
    return StateVector(state.n_sites, amps)


def inner(a: StateVector, b: StateVector) -> complex:
    """Overlap ``<a|b>`` (conjugate-linear in the first argument)."""
    if a.n_sites != b.n_sites:
        raise DomainError(f"dimension mismatch: {a.n_sites} vs {b.n_sites} sites")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def expect_site_pauli(state: StateVector, site: int, axis: PauliAxis | str) -> float:
    """Real expectation value ``<state|sigma^axis_site|state>``."""
    value = inner(state, apply_site_pauli(state, site, axis))
    if abs(value.imag) > _IMAG_TOL:
        raise AssertionError(f"Pauli expectation has imaginary part {value.imag:.3e}")
    return value.real


def apply_dense(op: np.ndarray, state: StateVector) -> StateVector:
    """Matrix-vector product of an explicit ``2**N x 2**N`` operator with a state."""
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise DomainError(f"operator must be square, got shape {op.shape}")
    if op.shape[0] != state.dim:
        raise DomainError(f"dimension mismatch: operator {op.shape[0]} vs state {state.dim}")
    return StateVector(state.n_sites, op @ state.amplitudes)
