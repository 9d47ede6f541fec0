"""Quench, field-scan, finite-size and equilibrium protocols.

A protocol is described by a :class:`QuenchSpec`: the post-quench
Hamiltonian, an ``M``-point time grid ``t = k*tau`` (``k = 0..M-1``), an
evolution method and the initial state. Independent grid points (fields,
chain lengths) can be farmed out to a thread pool; results are always
assembled in parameter order, so ``workers`` never changes the output.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Callable, Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, TypeVar

import numpy as np

from .correlators import (
    SIGMA_Z1,
    AveragingMode,
    CorrelatorPair,
    CorrelatorSample,
    ancilla_real_part,
    autocorrelation,
    long_time_average,
    otoc_general,
    otoc_quench,
    sigma_z_eigenvalue,
)
from .errors import DomainError
from .evolution import EXACT, EvolutionMethod
from .hamiltonian import IsingModel, IsingParams
from .statevector import StateVector, basis_state

__all__ = [
    "CriticalPoint",
    "FullyPolarized",
    "GroundStateOf",
    "QuenchSpec",
    "ScanCurve",
    "SizeSweepResult",
    "TimeSeries",
    "estimate_critical_point",
    "mean_abs_deviation",
    "run_equilibrium",
    "run_quench",
    "scan_field",
    "size_sweep",
]

T = TypeVar("T")
R = TypeVar("R")

_WINDOW_TOL = 1e-9


@dataclass(frozen=True)
class FullyPolarized:
    """All spins up, ``|up up ... up>``."""


@dataclass(frozen=True)
class GroundStateOf:
    """Ground state of the same chain at transverse field ``field``."""

    field: float


@dataclass(frozen=True)
class QuenchSpec:
    params: IsingParams
    steps: int
    tau: float
    method: EvolutionMethod = EXACT
    initial: FullyPolarized | GroundStateOf = FullyPolarized()

    def __post_init__(self):
        if self.steps < 1:
            raise DomainError(f"steps must be >= 1, got {self.steps}")
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")

    @classmethod
    def tfic(cls, n_sites: int, field: float, steps: int = 12, tau: float = 0.5, **kw) -> QuenchSpec:
        return cls(IsingParams(n_sites, field), steps, tau, **kw)

    @classmethod
    def annni(
        cls, n_sites: int, field: float, delta: float = 0.5, steps: int = 15, tau: float = 0.2, **kw
    ) -> QuenchSpec:
        return cls(IsingParams(n_sites, field, delta), steps, tau, **kw)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps) * self.tau

    @property
    def t_max(self) -> float:
        return (self.steps - 1) * self.tau

    def replace(self, **changes) -> QuenchSpec:
        return dataclasses.replace(self, **changes)

    def with_field(self, field: float) -> QuenchSpec:
        return self.replace(params=dataclasses.replace(self.params, field=field))

    def with_sites(self, n_sites: int) -> QuenchSpec:
        return self.replace(params=dataclasses.replace(self.params, n_sites=n_sites))

    def to_dict(self) -> dict:
        p = self.params
        initial = "polarized" if isinstance(self.initial, FullyPolarized) else {"ground_state_of": self.initial.field}
        return {
            "n_sites": p.n_sites,
            "j_coupling": p.j_coupling,
            "delta": p.delta,
            "field": p.field,
            "steps": self.steps,
            "tau": self.tau,
            "method": self.method.kind,
            "trotter_m": self.method.segments_for(self.tau) if not self.method.is_exact else None,
            "initial": initial,
        }


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled F(t) and chi(t) on the grid of ``spec``."""

    spec: QuenchSpec
    t: np.ndarray
    f: np.ndarray
    chi: np.ndarray
    ancilla_discrepancy: float | None = None

    def __post_init__(self):
        if not (self.t.shape == self.f.shape == self.chi.shape):
            raise DomainError("time, F and chi arrays must have equal length")
        if np.any(np.diff(self.t) <= 0):
            raise DomainError("sample times must be strictly increasing")

    def __len__(self) -> int:
        return self.t.size

    @property
    def f_real(self) -> np.ndarray:
        return self.f.real

    @property
    def chi_real(self) -> np.ndarray:
        return self.chi.real

    @property
    def samples(self) -> list[CorrelatorSample]:
        return [CorrelatorSample(float(t), complex(f), complex(c)) for t, f, c in zip(self.t, self.f, self.chi)]

    def window_mask(self, window: tuple[float | None, float | None] | None) -> np.ndarray:
        if window is None:
            return np.ones(self.t.size, dtype=bool)
        lo, hi = window
        lo = -np.inf if lo is None else lo - _WINDOW_TOL
        hi = np.inf if hi is None else hi + _WINDOW_TOL
        return (self.t >= lo) & (self.t <= hi)

    def average(
        self,
        channel: str = "f",
        mode: AveragingMode | str = AveragingMode.POINT_MEAN,
        window: tuple[float | None, float | None] | None = None,
    ) -> float:
        values = {"f": self.f, "chi": self.chi}[channel]
        mask = self.window_mask(window)
        return long_time_average(self.t[mask], values[mask], mode)


@dataclass(frozen=True, eq=False)
class ScanCurve:
    g_values: np.ndarray
    f_bar_values: np.ndarray
    base: QuenchSpec
    mode: AveragingMode = AveragingMode.POINT_MEAN
    window: tuple[float | None, float | None] | None = None

    def __post_init__(self):
        if self.g_values.shape != self.f_bar_values.shape:
            raise DomainError("g and F_bar arrays must have equal length")
        if np.any(np.diff(self.g_values) <= 0):
            raise DomainError("g values must be strictly ascending")

    def __len__(self) -> int:
        return self.g_values.size


@dataclass(frozen=True, eq=False)
class SizeSweepResult:
    n_values: list[int]
    series: list[TimeSeries]
    fluctuation: np.ndarray
    window: tuple[float | None, float | None]


class CriticalPoint(NamedTuple):
    g: float
    crossed: bool


def _parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int) -> list[R]:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def initial_state(spec: QuenchSpec) -> StateVector:
    n = spec.params.n_sites
    if isinstance(spec.initial, FullyPolarized):
        return basis_state(n, 0)
    pre = IsingModel(dataclasses.replace(spec.params, field=spec.initial.field))
    return pre.ground_state()


def _sample(spec: QuenchSpec, psi0: StateVector, model: IsingModel) -> tuple[np.ndarray, np.ndarray]:
    method = spec.method.with_step(spec.tau)
    eigen = sigma_z_eigenvalue(psi0, 1) == 1
    f = np.empty(spec.steps, dtype=np.complex128)
    chi = np.empty(spec.steps, dtype=np.complex128)
    for k, t in enumerate(spec.times):
        if eigen:
            f[k] = otoc_quench(psi0, model, t, method)
        else:
            f[k] = otoc_general(psi0, SIGMA_Z1, SIGMA_Z1, model, t, method)
        chi[k] = autocorrelation(psi0, model, t, method)
    return f, chi


def run_quench(spec: QuenchSpec) -> TimeSeries:
    """Sample F(t) and chi(t) after a sudden quench into ``spec.params``."""
    model = IsingModel(spec.params)
    psi0 = initial_state(spec)
    f, chi = _sample(spec, psi0, model)
    return TimeSeries(spec, spec.times, f, chi)


def scan_field(
    base: QuenchSpec,
    g_grid: Sequence[float],
    mode: AveragingMode | str = AveragingMode.POINT_MEAN,
    window: tuple[float | None, float | None] | None = None,
    workers: int = 0,
) -> ScanCurve:
    """Long-time averaged Re F as a function of the post-quench field."""
    mode = AveragingMode.parse(mode)
    grid = np.sort(np.asarray(g_grid, dtype=float))
    if grid.size == 0:
        raise DomainError("field grid is empty")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("field grid contains duplicate values")

    def point(g: float) -> float:
        series = run_quench(base.with_field(float(g)))
        if series.t.size == 1:
            return float(series.f_real[0])
        return series.average("f", mode, window)

    f_bar = np.array(_parallel_map(point, grid, workers))
    return ScanCurve(grid, f_bar, base, mode, window)


def size_sweep(
    base: QuenchSpec,
    n_values: Sequence[int],
    window: tuple[float | None, float | None] = (2.0, None),
    methods: Mapping[int, EvolutionMethod] | None = None,
    workers: int = 0,
) -> SizeSweepResult:
    """Run the same quench for several chain lengths and measure late-time fluctuation.

    The fluctuation is the population standard deviation of Re F over the
    samples inside ``window``. ``methods`` overrides the evolution method for
    particular chain lengths (e.g. Trotter for the largest one).
    """
    methods = dict(methods or {})
    ns = sorted(set(int(n) for n in n_values))
    if not ns:
        raise DomainError("no chain lengths given")

    def one(n: int) -> TimeSeries:
        spec = base.with_sites(n)
        if n in methods:
            spec = spec.replace(method=methods[n])
        return run_quench(spec)

    series = _parallel_map(one, ns, workers)
    fluctuation = []
    for s in series:
        mask = s.window_mask(window)
        if not mask.any():
            raise DomainError(f"window {window} contains no samples of the grid")
        fluctuation.append(float(np.std(s.f_real[mask])))
    return SizeSweepResult(ns, series, np.array(fluctuation), window)


def estimate_critical_point(curve: ScanCurve, threshold: float = 0.05) -> CriticalPoint:
    """First field at which F_bar drops to ``threshold``, linearly interpolated.

    ``crossed`` is False when no bracketing pair exists: the first grid point
    is returned if the curve starts at or below the threshold, the last one if
    it never gets there.
    """
    if not 0 < threshold < 1:
        raise DomainError(f"threshold must lie in (0, 1), got {threshold}")
    g, y = curve.g_values, curve.f_bar_values
    if g.size == 0:
        raise DomainError("scan curve is empty")
    if y[0] <= threshold:
        return CriticalPoint(float(g[0]), False)
    below = np.nonzero(y <= threshold)[0]
    if below.size == 0:
        return CriticalPoint(float(g[-1]), False)
    i = below[0]
    g0, g1, y0, y1 = g[i - 1], g[i], y[i - 1], y[i]
    return CriticalPoint(float(g0 + (y0 - threshold) / (y0 - y1) * (g1 - g0)), True)


def run_equilibrium(spec: QuenchSpec, use_ancilla: bool = False) -> TimeSeries:
    """F(t) and chi(t) starting from a ground state rather than a polarized state.

    With ``use_ancilla`` the real parts are also read out through the
    control-qubit interferometer and the largest deviation from the direct
    overlaps is stored on the result.
    """
    if not isinstance(spec.initial, GroundStateOf):
        raise DomainError("equilibrium runs start from a ground state; set initial=GroundStateOf(g)")
    model = IsingModel(spec.params)
    psi0 = initial_state(spec)
    method = spec.method.with_step(spec.tau)
    f = np.empty(spec.steps, dtype=np.complex128)
    chi = np.empty(spec.steps, dtype=np.complex128)
    worst = 0.0
    for k, t in enumerate(spec.times):
        f[k] = otoc_general(psi0, SIGMA_Z1, SIGMA_Z1, model, t, method)
        chi[k] = autocorrelation(psi0, model, t, method)
        if use_ancilla:
            fa = ancilla_real_part(psi0, CorrelatorPair.OTOC, model, t, method)
            ca = ancilla_real_part(psi0, CorrelatorPair.AUTOCORRELATION, model, t, method)
            worst = max(worst, abs(fa - f[k].real), abs(ca - chi[k].real))
    return TimeSeries(spec, spec.times, f, chi, worst if use_ancilla else None)


def mean_abs_deviation(a, b) -> float:
    """Mean of ``|a_i - b_i|``, the error measure used between measured and simulated curves."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DomainError(f"series must be 1-d with equal length, got {a.shape} and {b.shape}")
    if a.size == 0:
        raise DomainError("series are empty")
    return float(np.mean(np.abs(a - b)))
