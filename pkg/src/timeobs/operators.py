"""Dense operators in the energy eigenbasis.

Builds the Hermitian time-operator candidate with entries i*hbar/(E_j - E_k),
the diagonal Hamiltonian, exact and weak commutators, and the scans that probe
whether the operator's statistics track elapsed time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, MembershipError, ZeroProjectionError
from .spectral import (
    MEMBERSHIP_TOL,
    EnergySpectrum,
    QuantumState,
    coefficient_sum,
)

HERMITICITY_TOL = 1e-13
POWER_ITERATION_TOL = 1e-10
POWER_ITERATION_CAP = 10_000

_PROJECTION_FLOOR = 1e-12


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense N x N complex matrix in the energy eigenbasis."""

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionError("operator entries must form a square matrix")
        if entries.shape[0] < 1:
            raise DimensionError("operator must be at least 1 x 1")
        if self.hermitian and hermiticity_defect(entries) > HERMITICITY_TOL:
            raise DimensionError(
                f"matrix tagged hermitian has defect above {HERMITICITY_TOL}"
            )
        frozen = np.array(entries, dtype=complex)
        frozen.setflags(write=False)
        object.__setattr__(self, "entries", frozen)

    @property
    def basis_size(self) -> int:
        return int(self.entries.shape[0])


def hermiticity_defect(entries: np.ndarray) -> float:
    """Largest entrywise deviation |A - A^dagger|."""
    a = np.asarray(entries)
    return float(np.max(np.abs(a - a.conj().T)))


@dataclass(frozen=True)
class DeviationSeries:
    """Real-valued scan over a strictly increasing time grid."""

    taus: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        taus = np.asarray(self.taus, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if taus.ndim != 1 or taus.size == 0:
            raise DimensionError("time grid must be a nonempty vector")
        if values.shape != taus.shape:
            raise DimensionError("values and taus must have equal length")
        if taus.size > 1 and not np.all(np.diff(taus) > 0.0):
            raise DimensionError("time grid must be strictly increasing")
        for name, arr in (("taus", taus), ("values", values)):
            arr = np.array(arr)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def build_time_operator(spectrum: EnergySpectrum) -> OperatorMatrix:
    """Hermitian matrix with entries i*hbar/(E_j - E_k) off the diagonal, 0 on it.

    Nondegeneracy of the spectrum (a type invariant) keeps every gap nonzero.
    """
    e = spectrum.levels
    gaps = e[:, None] - e[None, :]
    np.fill_diagonal(gaps, 1.0)  # placeholder; diagonal zeroed below
    entries = (1j * spectrum.hbar) / gaps
    np.fill_diagonal(entries, 0.0)
    return OperatorMatrix(entries, hermitian=True)


def build_hamiltonian(spectrum: EnergySpectrum) -> OperatorMatrix:
    """Diagonal matrix of the energy levels."""
    return OperatorMatrix(np.diag(spectrum.levels).astype(complex), hermitian=True)


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """[A, B] = AB - BA."""
    if a.basis_size != b.basis_size:
        raise DimensionError(
            f"commutator needs equal sizes, got {a.basis_size} and {b.basis_size}"
        )
    return OperatorMatrix(a.entries @ b.entries - b.entries @ a.entries)


def weak_commutator(spectrum: EnergySpectrum) -> OperatorMatrix:
    """The sesquilinear form i*hbar*(I - J), J the all-ones matrix.

    At finite truncation this equals the exact commutator of the time operator
    with the Hamiltonian entrywise; its diagonal vanishes on every eigenstate.
    """
    n = spectrum.size
    entries = 1j * spectrum.hbar * (np.eye(n) - np.ones((n, n)))
    return OperatorMatrix(entries)


def expectation(op: OperatorMatrix, state: QuantumState) -> complex:
    """Quadratic form <psi|A|psi>; real up to roundoff for Hermitian A."""
    if op.basis_size != state.size:
        raise DimensionError(
            f"operator size {op.basis_size} does not match state length {state.size}"
        )
    c = state.coeffs
    return complex(c.conj() @ op.entries @ c)


def spectral_norm(
    op: OperatorMatrix,
    tol: float = POWER_ITERATION_TOL,
    max_iter: int = POWER_ITERATION_CAP,
) -> float:
    """Largest singular value via power iteration on A^dagger A.

    Uses a fixed chirped start vector so results are deterministic; stops when
    successive Rayleigh quotients agree to tol or the iteration cap is hit.
    """
    a = op.entries
    n = op.basis_size
    gram = a.conj().T @ a
    k = np.arange(n, dtype=float)
    v = np.exp(1j * (0.9 * k + 0.4 * k * k / max(n - 1, 1))) + 0.25
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = gram @ v
        new_lam = float(np.real(np.vdot(v, w)))
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(new_lam - lam) <= tol * max(1.0, abs(new_lam)):
            lam = new_lam
            break
        lam = new_lam
    return math.sqrt(max(lam, 0.0))


def covariance_deviation(
    spectrum: EnergySpectrum, state: QuantumState, taus
) -> DeviationSeries:
    """Re<T>_tau - Re<T>_0 - tau over the grid.

    The expectation is bounded by the spectral norm of the operator while tau
    is unbounded, so the deviation grows without bound: the statistics cannot
    track elapsed time.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise DimensionError("time grid must be a nonempty vector")
    if state.size != spectrum.size:
        raise DimensionError("state length does not match spectrum length")
    t_op = build_time_operator(spectrum)
    phases = np.exp(-1j * np.outer(taus, spectrum.frequencies()))
    states = phases * state.coeffs[None, :]
    expect = np.einsum("kj,jl,kl->k", states.conj(), t_op.entries, states).real
    base = float(np.real(state.coeffs.conj() @ t_op.entries @ state.coeffs))
    return DeviationSeries(taus, expect - base - taus)


def membership_decay(
    spectrum: EnergySpectrum,
    state: QuantumState,
    taus,
    tol: float = MEMBERSHIP_TOL,
) -> DeviationSeries:
    """|sum_j c_j e^{-i E_j tau / hbar}| over the grid, for a zero-sum state.

    Values above ~10x the membership tolerance show the subspace is not
    invariant under evolution: membership at tau=0 is lost at later times.
    """
    s0 = abs(coefficient_sum(state))
    if s0 > tol:
        raise MembershipError(
            f"initial state has |coefficient sum| {s0:.3e} above tolerance {tol}"
        )
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise DimensionError("time grid must be a nonempty vector")
    if state.size != spectrum.size:
        raise DimensionError("state length does not match spectrum length")
    phases = np.exp(-1j * np.outer(taus, spectrum.frequencies()))
    sums = phases @ state.coeffs
    return DeviationSeries(taus, np.abs(sums))


def project_to_zero_sum(state: QuantumState) -> QuantumState:
    """Subtract the coefficient mean and renormalize.

    The uniform vector is the orthogonal complement of the zero-sum subspace,
    so inputs proportional to it leave nothing to return.
    """
    c = state.coeffs
    centered = c - c.mean()
    nrm = float(np.linalg.norm(centered))
    if nrm <= _PROJECTION_FLOOR:
        raise ZeroProjectionError(
            "state is proportional to the uniform vector; its zero-sum projection vanishes"
        )
    return QuantumState(centered / nrm)
