"""Weighted Lebesgue, Sobolev, and mixed space-time norms on lattice fields.

All spatial integrals use the lattice measure h^n; weights |x|^{-gamma} are
cell-averaged near the origin (see grid.radial_power_values) so that norms
converge at the quadrature's bulk order instead of being polluted by the
singular cell.

A weighted integral whose continuum counterpart diverges (r * gamma >= n
with mass near the origin) is reported as a first-class `Divergent` value
carrying the finite lattice sum that the current resolution happens to
produce -- that number grows without bound under refinement and must not
be mistaken for a norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .grid import Field, forward, inverse, radial_power_values

_trapz = getattr(np, "trapezoid", None) or np.trapz

#: relative floor below which the field counts as vanishing near the origin
ORIGIN_TOL = 1e-12


@dataclass(frozen=True)
class Divergent:
    """Sentinel for a lattice sum with no continuum limit.

    lattice_value is the finite number the current grid produced; reason
    names the failed convergence condition.
    """

    lattice_value: float
    reason: str

    def __str__(self):
        return "DIVERGENT"

    def to_json(self):
        return {
            "divergent": True,
            "lattice_value": self.lattice_value,
            "reason": self.reason,
        }


def is_divergent(value) -> bool:
    return isinstance(value, Divergent)


def _as_float(value) -> float:
    if isinstance(value, Fraction):
        return float(value)
    return float(value)


def _physical(field: Field) -> Field:
    return inverse(field) if field.space == "frequency" else field


def _origin_active(field: Field) -> bool:
    """True when the field carries mass on the 2^dim cells nearest the origin."""
    g = field.grid
    vals = np.abs(field.values)
    peak = float(vals.max())
    if peak == 0.0:
        return False
    mid = g.n_points // 2
    sl = tuple(slice(mid - 1, mid + 1) for _ in range(g.dim))
    return float(vals[sl].max()) > ORIGIN_TOL * peak


def weighted_Lr(field: Field, r, gamma, corrected_rings: int = 1):
    """|| |x|^{-gamma} u ||_{L^r} on the lattice; r = inf takes the sup.

    Returns Divergent when the continuum integral cannot exist:
    r * gamma >= dim (any gamma > 0 for r = inf) while the field is
    nonvanishing near the origin.
    """
    field = _physical(field)
    g = field.grid
    r = _as_float(r) if r != math.inf else math.inf
    gamma = _as_float(gamma)  # gamma < 0 means a growing weight |x|^{|gamma|}: fine on a box
    if r != math.inf and r <= 0:
        raise ValueError(f"r must be positive (or inf), got {r}")

    if r == math.inf:
        weights = radial_power_values(g, -gamma, space="physical", corrected_rings=corrected_rings)
        value = _kernels.weighted_abs_max(field.values.ravel(), weights.ravel())
        if gamma > 0 and _origin_active(field):
            return Divergent(lattice_value=value, reason="sup of |x|^{-gamma}|u| near origin")
        return value

    # |x|^{-r gamma} cell-averaged, times |u|^r, times cell volume; a power
    # at or past -dim has no finite cell average (that IS the divergence),
    # so the raw midpoint values are used and the sentinel wraps the result
    rings = corrected_rings if r * gamma < g.dim else 0
    weights = radial_power_values(g, -r * gamma, space="physical", corrected_rings=rings)
    total = _kernels.weighted_abs_pow_sum(field.values.ravel(), weights.ravel(), r)
    value = float((total * g.cell_volume) ** (1.0 / r))
    if r * gamma >= g.dim and _origin_active(field):
        return Divergent(lattice_value=value, reason=f"r*gamma = {r * gamma:g} >= dim = {g.dim}")
    return value


def weighted_ball_mass(field: Field, r, gamma, radius: float, corrected_rings: int = 1) -> float:
    """int_{|x| <= radius} |x|^{-r gamma} |u|^r dx on the lattice.

    Always returns the finite lattice number (no Divergent wrapping): this
    is the quantity whose growth under refinement exhibits divergence.
    """
    field = _physical(field)
    g = field.grid
    r = _as_float(r)
    gamma = _as_float(gamma)
    rings = corrected_rings if r * gamma < g.dim else 0
    weights = radial_power_values(g, -r * gamma, space="physical", corrected_rings=rings)
    mask = (g.radius() <= float(radius)).astype(np.float64)
    total = _kernels.weighted_abs_pow_sum(field.values.ravel(), (weights * mask).ravel(), r)
    return float(total * g.cell_volume)


def sobolev_Hs(field: Field, s, homogeneous: bool = False, corrected_rings: int = 0) -> float:
    """H^s norm via the Fourier side: ||(1+|xi|^2)^{s/2} u_hat||_{L^2}.

    With homogeneous=True uses |xi|^s; the zero mode keeps its natural
    weight (1 for s = 0, 0 for s > 0) and is dropped for s < 0 unless
    corrected_rings > 0 replaces the near-origin cells of |xi|^{2s} by
    exact cell averages (quadrature-accurate for -dim < 2s < 0).
    """
    s = _as_float(s)
    hat = forward(field) if field.space == "physical" else field
    g = field.grid
    ksq = g.freq_radius() ** 2
    if homogeneous:
        if corrected_rings > 0:
            mult_sq = radial_power_values(g, 2.0 * s, space="frequency", corrected_rings=corrected_rings)
        elif s == 0:
            mult_sq = np.ones(g.shape)
        else:
            with np.errstate(divide="ignore"):
                mult_sq = np.where(ksq > 0, ksq**s, 0.0)
    else:
        mult_sq = (1.0 + ksq) ** s
    total = _kernels.weighted_abs_pow_sum(hat.values.ravel(), mult_sq.ravel(), 2.0)
    return float(np.sqrt(total * g.freq_cell_volume))


def mixed_LqLr(snapshots, times, q, r, gamma, corrected_rings: int = 1):
    """|| || |x|^{-gamma} u(t) ||_{L^r_x} ||_{L^q_t} over the sampled times.

    Trapezoid in t for finite q (times strictly increasing, >= 2 of them);
    q = inf takes the max over snapshots.  Divergent spatial norms
    propagate: the result wraps the same trapezoid/max applied to the
    finite lattice values.
    """
    times = np.asarray([float(t) for t in times], dtype=np.float64)
    if times.size != len(snapshots):
        raise ValueError("snapshots and times must have equal length")
    if times.size < 2:
        raise ValueError("need at least 2 time samples")
    if not np.all(np.diff(times) > 0):
        raise ValueError("times must be strictly increasing")
    q = _as_float(q) if q != math.inf else math.inf

    spatial = [weighted_Lr(snap, r, gamma, corrected_rings=corrected_rings) for snap in snapshots]
    diverged = [v for v in spatial if is_divergent(v)]
    lattice_vals = np.asarray([v.lattice_value if is_divergent(v) else v for v in spatial])
    if q == math.inf:
        value = float(lattice_vals.max())
    else:
        if q <= 0:
            raise ValueError(f"q must be positive (or inf), got {q}")
        value = float(_trapz(lattice_vals**q, times) ** (1.0 / q))
    if diverged:
        return Divergent(lattice_value=value, reason=diverged[0].reason)
    return value


def strichartz_ratio(initial: Field, pair, slab, corrected_rings: int = 1):
    """Weighted Strichartz quotient for the free flow started at `initial`.

    ratio = || |x|^{-gamma} e^{it Laplacian} u0 ||_{L^q_t L^r_x([0,T])}
            / ||u0||_{Hdot^s},
    with (q, r, gamma, s) taken from the admissible pair.  Divergent
    numerators propagate.
    """
    from .propagator import free_snapshots

    q = math.inf if pair.inv_q == 0 else 1 / Fraction(pair.inv_q)
    if pair.inv_r == 0:
        raise ValueError("r = inf is outside the admissible range")
    r = 1 / Fraction(pair.inv_r)
    denom = sobolev_Hs(initial, pair.s, homogeneous=True)
    if denom == 0.0:
        raise ValueError("initial field has zero Hdot^s norm")
    times = slab.times
    snaps = free_snapshots(initial, times)
    numer = mixed_LqLr(snaps, times, q, r, pair.gamma, corrected_rings=corrected_rings)
    if is_divergent(numer):
        return Divergent(lattice_value=numer.lattice_value / denom, reason=numer.reason)
    return numer / denom
