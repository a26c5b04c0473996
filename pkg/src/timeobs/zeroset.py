"""Almost-periodic signals built from state coefficients.

f(t) = sum_j c_j e^{-i omega_j t} vanishes exactly at the times when the
evolved state re-enters the zero-sum subspace.  This module evaluates f,
estimates the Lebesgue measure of sublevel sets {t : |f(t)| < eps} over a
window, computes mean |log|f|| integrals (finite for any nontrivial signal,
which is what forces the zero set to have measure zero), and constructs
commensurate (periodic) approximants with a guaranteed sup-norm bound.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ApproximationError,
    DimensionError,
    PhysicsError,
    ZeroSignalError,
)
from .spectral import EnergySpectrum, QuantumState

BISECTION_TOL = 1e-12
PANEL_TOL = 1e-9
NYQUIST_PER_PERIOD = 20
DENOMINATOR_CAP = 10**9

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_LOG_FLOOR = 1e-300  # keeps log finite if a sample lands exactly on a zero


@dataclass(frozen=True)
class TrigSignal:
    """Finite trigonometric sum: strictly increasing frequencies, complex amplitudes."""

    freqs: np.ndarray
    amps: np.ndarray

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=float)
        amps = np.asarray(self.amps, dtype=complex)
        if freqs.ndim != 1 or freqs.size == 0:
            raise DimensionError("signal needs at least one frequency")
        if amps.shape != freqs.shape:
            raise DimensionError("freqs and amps must have equal length")
        if freqs.size > 1 and not np.all(np.diff(freqs) > 0.0):
            raise DimensionError("frequencies must be strictly increasing")
        for name, arr in (("freqs", freqs), ("amps", amps)):
            arr = np.array(arr)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_state(cls, spectrum: EnergySpectrum, state: QuantumState) -> "TrigSignal":
        if state.size != spectrum.size:
            raise DimensionError("state length does not match spectrum length")
        return cls(spectrum.frequencies(), state.coeffs)

    @property
    def count(self) -> int:
        return int(self.freqs.size)

    def weight(self) -> float:
        """sum |c_j|, a tight upper bound for max |f|."""
        return float(np.sum(np.abs(self.amps)))

    def lipschitz(self) -> float:
        """sum |c_j omega_j|, a bound for |d|f|/dt|."""
        return float(np.sum(np.abs(self.amps) * np.abs(self.freqs)))


def eval_f(sig: TrigSignal, t):
    """Evaluate the sum at a scalar or array of times."""
    t_arr = np.asarray(t, dtype=float)
    phases = np.exp(-1j * np.outer(t_arr.ravel(), sig.freqs))
    vals = phases @ sig.amps
    if t_arr.ndim == 0:
        return complex(vals[0])
    return vals.reshape(t_arr.shape)


@dataclass(frozen=True)
class MeasureReport:
    """Sublevel-measure estimate lambda{t in [0, window] : |f(t)| < epsilon}."""

    epsilon: float
    window: float
    measure: float
    refinement_depth: int
    error_bound: float

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise PhysicsError("epsilon must be positive")
        if not self.window > 0.0:
            raise PhysicsError("window must be positive")
        if not 0.0 <= self.measure <= self.window * (1.0 + 1e-12):
            raise PhysicsError("measure must lie in [0, window]")
        if self.error_bound < 0.0:
            raise PhysicsError("error bound must be nonnegative")
        object.__setattr__(self, "measure", min(float(self.measure), float(self.window)))


def _cell_count(sig: TrigSignal, window: float, base_grid: int) -> int:
    """Grid cells satisfying the sampling floor of 20 points per shortest period."""
    om = float(np.max(np.abs(sig.freqs)))
    nyquist = 0
    if om > 0.0:
        nyquist = int(math.ceil(NYQUIST_PER_PERIOD * window * om / (2.0 * math.pi)))
    return max(int(base_grid), nyquist, 8)


def _refine_crossing(g, lo: float, hi: float, g_lo: float) -> tuple[float, int]:
    """Bisect a bracketed sign change of g to BISECTION_TOL in t."""
    inside_lo = g_lo < 0.0
    iters = 0
    while hi - lo > BISECTION_TOL and iters < 80:
        mid = 0.5 * (lo + hi)
        if (g(mid) < 0.0) == inside_lo:
            lo = mid
        else:
            hi = mid
        iters += 1
    return 0.5 * (lo + hi), iters


def _golden_min(fun, a: float, b: float, tol: float = BISECTION_TOL) -> tuple[float, float]:
    """Golden-section minimum of a scalar function on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    iters = 0
    while (b - a) > tol and iters < 200:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
        iters += 1
    return (c, fc) if fc <= fd else (d, fd)


def sublevel_measure(
    sig: TrigSignal, epsilon: float, window: float, base_grid: int = 4096
) -> MeasureReport:
    """Measure of {t in [0, window] : |f(t)| < epsilon}.

    Uniform sampling detects sign changes of |f| - epsilon, each refined by
    bisection to 1e-12 in t; grid-scale local extrema that could hide a dip
    (or rise) are promoted to golden-section refinement first.  The error
    bound is the cell width times the count of cells that passed the
    Lipschitz screen but produced no refined feature.
    """
    if not epsilon > 0.0:
        raise PhysicsError("epsilon must be positive")
    if not window > 0.0:
        raise PhysicsError("window must be positive")
    if int(base_grid) < 1000:
        raise DimensionError("base_grid must be at least 1000")
    w = sig.weight()
    if epsilon >= w:
        warnings.warn(
            "threshold at or above max|f|; the whole window qualifies", stacklevel=2
        )
        return MeasureReport(epsilon, window, window, 0, 0.0)

    n = _cell_count(sig, window, int(base_grid))
    ts = np.linspace(0.0, float(window), n + 1)
    gvals = np.abs(eval_f(sig, ts)) - epsilon

    def g(t: float) -> float:
        return abs(eval_f(sig, t)) - epsilon

    h = float(window) / n
    margin = sig.lipschitz() * h
    below = gvals < 0.0
    refined = np.zeros(n, dtype=bool)
    crossings: list[float] = []
    depth = 0

    for i in np.nonzero(below[:-1] != below[1:])[0]:
        t_cross, iters = _refine_crossing(g, float(ts[i]), float(ts[i + 1]), float(gvals[i]))
        crossings.append(t_cross)
        refined[i] = True
        depth = max(depth, iters)

    mid = gvals[1:-1]
    minima = np.nonzero(
        (mid <= gvals[:-2]) & (mid <= gvals[2:]) & (mid > 0.0) & (mid < margin)
    )[0] + 1
    maxima = np.nonzero(
        (mid >= gvals[:-2]) & (mid >= gvals[2:]) & (mid < 0.0) & (-mid < margin)
    )[0] + 1
    for i in minima:
        t_ext, g_ext = _golden_min(g, float(ts[i - 1]), float(ts[i + 1]))
        if g_ext < 0.0:
            t_left, it_l = _refine_crossing(g, float(ts[i - 1]), t_ext, float(gvals[i - 1]))
            t_right, it_r = _refine_crossing(g, t_ext, float(ts[i + 1]), g_ext)
            crossings.extend((t_left, t_right))
            refined[i - 1] = refined[i] = True
            depth = max(depth, it_l, it_r)
    for i in maxima:
        t_ext, neg_ext = _golden_min(lambda t: -g(t), float(ts[i - 1]), float(ts[i + 1]))
        if -neg_ext > 0.0:
            t_left, it_l = _refine_crossing(g, float(ts[i - 1]), t_ext, float(gvals[i - 1]))
            t_right, it_r = _refine_crossing(g, t_ext, float(ts[i + 1]), -neg_ext)
            crossings.extend((t_left, t_right))
            refined[i - 1] = refined[i] = True
            depth = max(depth, it_l, it_r)

    points = [0.0]
    for p in sorted(crossings):
        if p - points[-1] > BISECTION_TOL and p < window:
            points.append(p)
    points.append(float(window))
    measure = 0.0
    for a, b in zip(points[:-1], points[1:]):
        if b > a and g(0.5 * (a + b)) < 0.0:
            measure += b - a
    measure = min(measure, float(window))

    same_sign = below[:-1] == below[1:]
    small = (np.abs(gvals[:-1]) + np.abs(gvals[1:])) < margin
    suspicious = int(np.sum(same_sign & small & ~refined))
    error_bound = h * suspicious + BISECTION_TOL * len(crossings)
    return MeasureReport(epsilon, float(window), measure, depth, error_bound)


def find_zeros(
    sig: TrigSignal,
    window: float,
    base_grid: int = 4096,
    zero_tol: float | None = None,
) -> list[float]:
    """Times in [0, window] where |f| vanishes, by refining grid-scale minima."""
    if not window > 0.0:
        raise PhysicsError("window must be positive")
    w = sig.weight()
    if w == 0.0:
        raise ZeroSignalError("signal is identically zero")
    if zero_tol is None:
        zero_tol = 1e-10 * w

    n = _cell_count(sig, window, int(base_grid))
    ts = np.linspace(0.0, float(window), n + 1)
    absf = np.abs(eval_f(sig, ts))
    h = float(window) / n
    margin = sig.lipschitz() * h

    def fun(t: float) -> float:
        return abs(eval_f(sig, t))

    candidates: list[tuple[float, float]] = []
    mid = absf[1:-1]
    idx = np.nonzero((mid <= absf[:-2]) & (mid <= absf[2:]) & (mid < margin))[0] + 1
    for i in idx:
        candidates.append((float(ts[i - 1]), float(ts[i + 1])))
    if absf[0] < margin and absf[0] <= absf[1]:
        candidates.append((float(ts[0]), float(ts[1])))
    if absf[n] < margin and absf[n] <= absf[n - 1]:
        candidates.append((float(ts[n - 1]), float(ts[n])))

    zeros: list[float] = []
    for a, b in candidates:
        t_min, f_min = _golden_min(fun, a, b)
        if f_min <= zero_tol:
            zeros.append(min(max(t_min, 0.0), float(window)))
    zeros.sort()
    merge_tol = max(10.0 * BISECTION_TOL, 1e-12 * float(window))
    merged: list[float] = []
    for z in zeros:
        if not merged or z - merged[-1] > merge_tol:
            merged.append(z)
    return merged


def _adaptive_midpoint(phi, a: float, b: float, tol: float) -> float:
    """Composite midpoint with doubling until successive estimates agree to tol."""
    width = b - a
    if width <= 0.0:
        return 0.0
    m = 1
    prev = math.inf
    val = 0.0
    while m <= 2**14:
        pts = a + (np.arange(m) + 0.5) * (width / m)
        val = float(np.sum(phi(pts))) * (width / m)
        if abs(val - prev) <= tol:
            return val
        prev = val
        m *= 2
    return val


def _dyadic_ladder(phi, start: float, center: float, tol: float) -> float:
    """Integrate phi from start toward the singular point at center.

    Halves the remaining gap each step; for an integrable log singularity the
    piece contributions decay geometrically, and the ladder stops once a piece
    falls below tol (the neglected remainder is of the same order).
    """
    total = 0.0
    outer = start
    while True:
        gap = abs(center - outer)
        if gap <= 1e-13:
            break
        inner = outer + 0.5 * (center - outer)
        piece = _adaptive_midpoint(phi, min(outer, inner), max(outer, inner), 0.25 * tol)
        total += piece
        if abs(piece) < tol:
            break
        outer = inner
    return total


def paley_wiener_integral(
    sig: TrigSignal, window: float, panels: int = 256, absolute: bool = True
) -> float:
    """Window-averaged integral of |log|f|| (log|f| when absolute=False).

    Zeros of f are isolated first; each is wrapped in a pocket integrated by
    shrinking dyadic subintervals, while zero-free stretches use per-panel
    adaptive midpoint quadrature.  Finiteness of the absolute version is the
    numerical signature that membership times form a measure-zero set.
    """
    if not window > 0.0:
        raise PhysicsError("window must be positive")
    if int(panels) < 100:
        raise DimensionError("panels must be at least 100")
    if sig.weight() == 0.0:
        raise ZeroSignalError("signal is identically zero")

    if absolute:
        def phi(pts):
            av = np.maximum(np.abs(eval_f(sig, pts)), _LOG_FLOOR)
            return np.abs(np.log(av))
    else:
        def phi(pts):
            av = np.maximum(np.abs(eval_f(sig, pts)), _LOG_FLOOR)
            return np.log(av)

    zeros = find_zeros(sig, window, base_grid=max(1000, 4 * int(panels)))
    h = float(window) / int(panels)

    pockets: list[tuple[float, float, float]] = []
    for k, z in enumerate(zeros):
        r = h / 2.0
        if k > 0:
            r = min(r, 0.5 * (z - zeros[k - 1]))
        if k + 1 < len(zeros):
            r = min(r, 0.5 * (zeros[k + 1] - z))
        pockets.append((max(0.0, z - r), min(float(window), z + r), z))

    total = 0.0
    cursor = 0.0
    for a, b, z in pockets:
        if a > cursor:
            total += _integrate_smooth(phi, cursor, a, h)
        total += _dyadic_ladder(phi, a, z, PANEL_TOL)
        total += _dyadic_ladder(phi, b, z, PANEL_TOL)
        cursor = b
    if cursor < window:
        total += _integrate_smooth(phi, cursor, float(window), h)
    return total / float(window)


def _integrate_smooth(phi, a: float, b: float, max_width: float) -> float:
    if b - a <= 0.0:
        return 0.0
    k = max(1, int(math.ceil((b - a) / max_width)))
    edges = np.linspace(a, b, k + 1)
    return sum(
        _adaptive_midpoint(phi, float(lo), float(hi), PANEL_TOL)
        for lo, hi in zip(edges[:-1], edges[1:])
    )


def bohr_mean(g, window: float, tol: float = 1e-10, start: int = 1024, cap: int = 2**21) -> float:
    """Window average of a vectorized function g over [0, window].

    Midpoint sampling with doubling until stable; exact (up to quadrature
    tolerance) over whole periods of commensurate frequencies.
    """
    if not window > 0.0:
        raise PhysicsError("window must be positive")
    n = int(start)
    prev = None
    while True:
        ts = (np.arange(n) + 0.5) * (float(window) / n)
        val = float(np.mean(np.asarray(g(ts), dtype=float)))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        if n >= cap:
            return val
        prev = val
        n *= 2


def _convergent_within(x: float, tol_abs: float, max_den: int) -> tuple[int, int, float]:
    """First continued-fraction convergent of x with |x - p/q| <= tol_abs.

    Stops early at the denominator cap, returning the best convergent found.
    """
    a0 = math.floor(x)
    p_prev, q_prev = 1, 0
    p, q = int(a0), 1
    frac = x - a0
    best = (p, q, abs(x - p))
    for _ in range(64):
        err = abs(x - p / q)
        if err < best[2]:
            best = (p, q, err)
        if err <= tol_abs or frac == 0.0:
            return p, q, err
        recip = 1.0 / frac
        a = math.floor(recip)
        frac = recip - a
        p, p_prev = int(a) * p + p_prev, p
        q, q_prev = int(a) * q + q_prev, q
        if q > max_den:
            return best
    return best


@dataclass(frozen=True)
class PeriodicApproximant:
    """Commensurate signal 2*pi*k_j/base_period with the original amplitudes."""

    signal: TrigSignal
    base_period: float
    multipliers: tuple[int, ...]
    drift_bound: float


def periodic_approximation(
    sig: TrigSignal,
    tol: float,
    horizon: float,
    *,
    margin: float = 0.1,
    max_denominator: int = DENOMINATOR_CAP,
) -> PeriodicApproximant:
    """Periodic (commensurate) approximant with sup|f - f~| <= tol on [0, horizon].

    Anchors the first nonzero frequency and approximates every frequency ratio
    by continued-fraction convergents until the guaranteed phase-drift bound
    sum_j |c_j| |omega_j - omega~_j| * horizon falls below margin*tol; the
    common denominator of the ratios fixes the base period.  margin keeps an
    order of headroom between the guaranteed bound and the requested tol.
    One-sided amplitude support is untouched, so the approximant stays causal.
    """
    if not tol > 0.0:
        raise PhysicsError("tol must be positive")
    if not horizon > 0.0:
        raise PhysicsError("horizon must be positive")
    if not 0.0 < margin <= 1.0:
        raise ValueError("margin must lie in (0, 1]")

    freqs = sig.freqs
    amps = sig.amps
    weight = sig.weight()
    max_abs = float(np.max(np.abs(freqs)))
    if max_abs == 0.0:
        return PeriodicApproximant(sig, 2.0 * math.pi, (0,) * sig.count, 0.0)

    anchor_idx = int(np.argmax(np.abs(freqs) > 1e-12 * max_abs))
    wa = float(freqs[anchor_idx])
    budget = math.inf if weight == 0.0 else tol * margin / (horizon * weight)
    ratio_tol = budget / abs(wa)

    nums: list[int] = []
    dens: list[int] = []
    errs: list[float] = []
    for w in freqs:
        p, q, err = _convergent_within(float(w) / wa, ratio_tol, max_denominator)
        nums.append(p)
        dens.append(q)
        errs.append(err)

    approx_freqs = np.array([(wa * p) / q for p, q in zip(nums, dens)])
    drift = float(horizon) * float(np.sum(np.abs(amps) * np.abs(freqs - approx_freqs)))
    if any(err > ratio_tol for err in errs):
        raise ApproximationError(
            f"tolerance {tol} unreachable within denominator cap {max_denominator}",
            achieved_bound=drift,
        )
    big_q = math.lcm(*dens)
    if big_q > max_denominator:
        raise ApproximationError(
            f"common denominator {big_q} exceeds cap {max_denominator}",
            achieved_bound=drift,
        )
    sign = 1 if wa > 0 else -1
    multipliers = tuple(sign * p * (big_q // q) for p, q in zip(nums, dens))
    base_period = 2.0 * math.pi * big_q / abs(wa)
    return PeriodicApproximant(TrigSignal(approx_freqs, amps), base_period, multipliers, drift)
