"""Periodic transverse-field Ising chains with optional next-nearest-neighbour coupling.

    H = -sum_{n=1}^{N} [ J z_n z_{n+1} + delta z_n z_{n+2} + g x_n ]

with indices taken modulo N. The sums are taken literally, so short chains
count wrap-around bonds more than once (N=2 doubles the NN bond, N=4 doubles
every NNN bond).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CapacityError, DomainError
from .statevector import StateVector

__all__ = [
    "DENSE_LIMIT",
    "EigenSystem",
    "FieldLayer",
    "HamiltonianTerms",
    "IsingModel",
    "IsingParams",
    "build_terms",
    "eigendecompose",
    "ground_state",
    "site_spins",
    "total_hamiltonian",
]

#: Largest chain handled with explicit 2**N x 2**N matrices.
DENSE_LIMIT = 12

_HERMITIAN_TOL = 1e-12
_DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class IsingParams:
    n_sites: int
    field: float
    delta: float = 0.0
    j_coupling: float = 1.0

    def __post_init__(self):
        n, j, d = self.n_sites, self.j_coupling, self.delta
        if not all(np.isfinite([j, d, self.field])):
            raise DomainError("couplings and field must be finite")
        if j < 0:
            raise DomainError(f"j_coupling must be ferromagnetic (>= 0), got {j}")
        if n < 1:
            raise DomainError(f"n_sites must be >= 1, got {n}")
        if d != 0 and n < 4:
            raise DomainError(f"a next-nearest-neighbour coupling needs n_sites >= 4, got {n}")
        if j != 0 and n < 2:
            raise DomainError(f"a nearest-neighbour coupling needs n_sites >= 2, got {n}")

    @property
    def is_annni(self) -> bool:
        return self.delta != 0


@dataclass(frozen=True)
class FieldLayer:
    """The uniform transverse-field term ``-strength * sum_n sigma^x_n``."""

    n_sites: int
    strength: float


@dataclass(frozen=True, eq=False)
class HamiltonianTerms:
    """``H = H_x + H_zz`` with ``H_zz`` stored as its diagonal."""

    params: IsingParams
    zz_diagonal: np.ndarray
    field_layer: FieldLayer

    @property
    def n_sites(self) -> int:
        return self.params.n_sites


@dataclass(frozen=True, eq=False)
class EigenSystem:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def site_spins(n_sites: int) -> np.ndarray:
    """``(n_sites, 2**n_sites)`` array of sigma^z eigenvalues, row ``n-1`` for site ``n``."""
    idx = np.arange(1 << n_sites)
    shifts = np.arange(n_sites - 1, -1, -1)[:, None]
    return 1 - 2 * ((idx[None, :] >> shifts) & 1)


def build_terms(params: IsingParams) -> HamiltonianTerms:
    n = params.n_sites
    z = site_spins(n)
    nn = np.roll(z, -1, axis=0)
    nnn = np.roll(z, -2, axis=0)
    diag = -(params.j_coupling * (z * nn).sum(axis=0) + params.delta * (z * nnn).sum(axis=0))
    diag = diag.astype(np.float64)
    diag.setflags(write=False)
    return HamiltonianTerms(params, diag, FieldLayer(n, params.field))


def total_hamiltonian(terms: HamiltonianTerms, dense_limit: int = DENSE_LIMIT) -> np.ndarray:
    """Explicit Hermitian matrix of ``H_zz + H_x``."""
    n = terms.n_sites
    if n > dense_limit:
        raise CapacityError(
            f"dense Hamiltonian for {n} sites exceeds the limit of {dense_limit}; "
            "use Trotter evolution for larger chains"
        )
    dim = 1 << n
    h = np.diag(terms.zz_diagonal.astype(np.complex128))
    idx = np.arange(dim)
    g = terms.field_layer.strength
    for site in range(1, n + 1):
        h[idx, idx ^ (1 << (n - site))] -= g
    return h


def eigendecompose(h: np.ndarray) -> EigenSystem:
    """Ascending spectrum and orthonormal eigenvectors of a Hermitian matrix."""
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError(f"matrix must be square, got shape {h.shape}")
    skew = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if skew > _HERMITIAN_TOL:
        raise DomainError(f"matrix is not Hermitian (max |H - H^dag| = {skew:.3e})")
    vals, vecs = np.linalg.eigh(h)
    return EigenSystem(vals, vecs)


def ground_state(eig: EigenSystem) -> StateVector:
    """Lowest eigenvector, tie-broken toward maximal total magnetization.

    Within a degenerate ground manifold the returned vector maximizes
    ``<sum_n sigma^z_n>``. The global phase makes the largest amplitude real
    and positive.
    """
    vals = eig.eigenvalues
    n = eig.dim.bit_length() - 1
    manifold = eig.eigenvectors[:, vals <= vals[0] + _DEGENERACY_TOL]
    if manifold.shape[1] == 1:
        vec = manifold[:, 0]
    else:
        mz = site_spins(n).sum(axis=0)
        projected = manifold.conj().T @ (mz[:, None] * manifold)
        _, coeffs = np.linalg.eigh(projected)
        vec = manifold @ coeffs[:, -1]
    vec = vec / np.linalg.norm(vec)
    peak = vec[np.argmax(np.abs(vec))]
    vec = vec * (abs(peak) / peak)
    return StateVector(n, vec)


class IsingModel:
    """A chain Hamiltonian with lazily built dense and spectral forms.

    This is the "model context" handed to the evolution and correlator
    routines: Trotter evolution only touches :attr:`terms`, exact evolution
    uses :attr:`eig`.
    """

    def __init__(self, params: IsingParams, dense_limit: int = DENSE_LIMIT):
        self.params = params
        self.dense_limit = dense_limit
        self.terms = build_terms(params)

    @classmethod
    def create(cls, n_sites: int, field: float, delta: float = 0.0, j_coupling: float = 1.0) -> IsingModel:
        return cls(IsingParams(n_sites, field, delta, j_coupling))

    @property
    def n_sites(self) -> int:
        return self.params.n_sites

    @cached_property
    def hamiltonian(self) -> np.ndarray:
        return total_hamiltonian(self.terms, self.dense_limit)

    @cached_property
    def eig(self) -> EigenSystem:
        return eigendecompose(self.hamiltonian)

    def ground_state(self) -> StateVector:
        return ground_state(self.eig)

    def __repr__(self) -> str:
        p = self.params
        return f"IsingModel(n_sites={p.n_sites}, field={p.field}, delta={p.delta}, j_coupling={p.j_coupling})"
