"""Counterexample scans probing the boundary of the admissible region.

Two mechanisms make the weighted estimate fail, and each gets a scan:

* weight branch (gamma/n >= 1/r): the spatial integral of
  |x|^{-r gamma} |u|^r already diverges at the origin for data that does
  not vanish there.  `weight_divergence_scan` truncates the integral to a
  small ball and watches it grow without bound as the lattice is refined.

* slope branch (2/q > n(1/2 - 1/r) + 2 gamma): a frequency-carrier-K wave
  packet travels at group velocity 2K e_1.  On the moving box
  |x_1 - 2Kt| <= 1/(4n), |x_k| <= 1/(4n) the smoothed amplitude
  ||grad|^{-s} e^{it Laplacian} f_K| sits at height ~ K^{-s} while the
  weight along the orbit decays like (2Kt)^{-gamma}, so the weighted mixed
  norm grows like K^{-(s+gamma)} -- unbounded when s + gamma < 0, which is
  exactly what a uniform estimate would forbid.  `carrier_growth_scan`
  measures that exponent by a log-log fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Field, Grid, fractional_laplacian_pow, inverse
from .norms import weighted_ball_mass
from .propagator import TimeSlab, evolve_free

_trapz = getattr(np, "trapezoid", None) or np.trapz


def smooth_bump(t: np.ndarray) -> np.ndarray:
    """C^infinity bump exp(-1/(1-t^2)) on |t| < 1, zero outside."""
    t = np.asarray(t, dtype=np.float64)
    inside = np.abs(t) < 1.0
    out = np.zeros_like(t)
    core = 1.0 - t[inside] ** 2
    out[inside] = np.exp(-1.0 / core)
    return out


def build_annulus_packet(grid: Grid) -> Field:
    """Field whose Fourier transform is a radial bump on 1 < |xi| < 2.

    The profile smooth_bump(2|xi| - 3) vanishes to all orders at both edges
    of the annulus, so the packet is smooth with unit-scale oscillation --
    in particular it is nonzero at the origin in physical space.
    """
    if grid.max_resolved_freq() < 2.0:
        raise ValueError("grid does not resolve |xi| = 2; increase N or shrink L")
    rho = grid.freq_radius()
    hat = smooth_bump(2.0 * rho - 3.0).astype(np.complex128)
    return inverse(Field(grid=grid, values=hat, space="frequency"))


def build_modulated_packet(grid: Grid, K: float) -> Field:
    """Unit-L^2 wave packet with Fourier support in a unit box around K e_1.

    f_hat(xi) = bump(xi_1 - K) * prod_{k >= 2} bump(xi_k), normalized so
    ||f||_{L^2} = 1 for every carrier.  Under the free flow its modulus
    rides the moving frame x - 2 K t e_1 exactly (Galilean covariance).
    """
    K = float(K)
    if K <= 1.0:
        raise ValueError(f"carrier K must exceed 1, got {K}")
    if grid.max_resolved_freq() < K + 1.0:
        raise ValueError(f"grid does not resolve frequencies up to K+1 = {K + 1.0}")
    freqs = grid.freq_arrays()
    hat = smooth_bump(freqs[0] - K).astype(np.complex128)
    for axis in range(1, grid.dim):
        hat = hat * smooth_bump(freqs[axis])
    packet = inverse(Field(grid=grid, values=hat, space="frequency"))
    return packet.with_values(packet.values / packet.l2_norm())


@dataclass(frozen=True)
class WeightScan:
    """(N, truncated weighted mass) per refinement, plus doubling ratios."""

    r: float
    gamma: float
    ball_radius: float
    entries: tuple  # ((N, value), ...)

    @property
    def growth_factors(self) -> tuple:
        vals = [v for _, v in self.entries]
        return tuple(vals[i + 1] / vals[i] for i in range(len(vals) - 1))

    def to_json(self):
        return {
            "r": self.r,
            "gamma": self.gamma,
            "ball_radius": self.ball_radius,
            "entries": [[n, v] for n, v in self.entries],
            "growth_factors": list(self.growth_factors),
        }


def weight_divergence_scan(
    dim: int,
    r: float,
    gamma: float,
    refinements,
    half_width: float = 8.0,
    ball_radius: float = 0.125,
) -> WeightScan:
    """Refinement study of int_{|x|<R} |x|^{-r gamma} |f|^r for the annulus packet.

    The packet is rebuilt on each grid (the same band-limited profile, so
    its values near the origin converge); when r*gamma >= dim the recorded
    ball mass keeps climbing with N instead of settling -- the lattice
    signature of the divergent continuum integral.  When r*gamma < dim the
    same numbers go Cauchy, which is the control arm.
    """
    refinements = [int(N) for N in refinements]
    if len(refinements) < 2 or any(b <= a for a, b in zip(refinements, refinements[1:])):
        raise ValueError("refinements must be an increasing list of at least two sizes")
    entries = []
    for N in refinements:
        g = Grid(dim=dim, n_points=N, half_width=half_width)
        packet = build_annulus_packet(g)
        val = weighted_ball_mass(packet, r, gamma, ball_radius)
        if val == 0.0:
            raise ValueError(
                f"no cell centers inside |x| < {ball_radius:g} at N = {N}; "
                "start the refinement list at a finer grid"
            )
        entries.append((N, val))
    return WeightScan(r=float(r), gamma=float(gamma), ball_radius=float(ball_radius), entries=tuple(entries))


@dataclass(frozen=True)
class CarrierScan:
    """Moving-box mixed norms per carrier K, with the fitted log-log slope.

    entries[i] = (K, || |x|^{-gamma} |grad|^{-s} e^{it Lap} f_K ||_{L^q L^r(B)});
    lower_bound_constants[i] = min over the box and slab of
    ||grad|^{-s} e^{it Lap} f_K| * K^s, the measured constant of the
    pointwise height bound (stable in K when the packet is coherent).
    """

    s: float
    gamma: float
    q: float
    r: float
    entries: tuple
    lower_bound_constants: tuple
    packet_masses: tuple

    @property
    def fitted_slope(self) -> float:
        ks = np.log([k for k, _ in self.entries])
        vals = np.log([v for _, v in self.entries])
        return float(np.polyfit(ks, vals, 1)[0])

    @property
    def predicted_slope(self) -> float:
        return -(self.s + self.gamma)

    @property
    def fit_residual(self) -> float:
        ks = np.log([k for k, _ in self.entries])
        vals = np.log([v for _, v in self.entries])
        coef = np.polyfit(ks, vals, 1)
        return float(np.max(np.abs(np.polyval(coef, ks) - vals)))

    def to_json(self):
        return {
            "s": self.s,
            "gamma": self.gamma,
            "q": self.q,
            "r": self.r,
            "entries": [[k, v] for k, v in self.entries],
            "lower_bound_constants": list(self.lower_bound_constants),
            "packet_masses": list(self.packet_masses),
            "fitted_slope": self.fitted_slope,
            "predicted_slope": self.predicted_slope,
            "fit_residual": self.fit_residual,
        }


def _axis_window(grid: Grid, center: float, n_cells: int) -> slice:
    """Index window of exactly n_cells cells nearest `center` on one axis."""
    # axis_coords[i] = -L + (i + 1/2) h  =>  i = (center + L)/h - 1/2
    i_center = int(round((center + grid.half_width) / grid.spacing - 0.5))
    lo = i_center - (n_cells - 1) // 2
    lo = max(0, min(lo, grid.n_points - n_cells))
    return slice(lo, lo + n_cells)


def carrier_growth_scan(
    grid: Grid,
    K_list,
    s: float,
    gamma: float,
    q: float,
    r: float,
    slab: TimeSlab,
) -> CarrierScan:
    """Weighted mixed norm of |grad|^{-s} e^{it Laplacian} f_K on the moving box.

    For each carrier K the box |x_1 - 2Kt| <= 1/(4n), |x_k| <= 1/(4n)
    tracks the packet: the same number of lattice cells is sampled at
    every (K, t) (the window translates by whole cells), so the data is a
    clean power law in K.  The slab must start at t0 > 0, and the box must
    stay inside the domain: 2 K_max T + 2 <= half_width.
    """
    s, gamma, r = float(s), float(gamma), float(r)
    q = math.inf if q == math.inf else float(q)
    K_list = [float(K) for K in K_list]
    if len(K_list) < 2 or any(b <= a for a, b in zip(K_list, K_list[1:])):
        raise ValueError("K_list must be an increasing list of at least two carriers")
    if slab.t0 <= 0.0:
        raise ValueError("slab must start at t0 > 0 for a clean power-law window")
    worst = 2.0 * K_list[-1] * slab.T + 2.0
    if worst > grid.half_width:
        raise ValueError(
            f"moving frame exits the box: 2*K*T + 2 = {worst:g} > half_width = {grid.half_width:g}"
        )
    n = grid.dim
    box_halfwidth = 1.0 / (4.0 * n)
    n_cells = max(2, int(round(2.0 * box_halfwidth / grid.spacing)))
    times = slab.times

    entries = []
    lower_consts = []
    masses = []
    for K in K_list:
        packet = build_modulated_packet(grid, K)
        masses.append(float(packet.l2_norm() ** 2))
        smoothed = fractional_laplacian_pow(packet, -s)
        spatial_vals = np.empty(len(times))
        min_height = math.inf
        for it, t in enumerate(times):
            v = evolve_free(smoothed, float(t)).values
            windows = [_axis_window(grid, 2.0 * K * float(t), n_cells)]
            windows += [_axis_window(grid, 0.0, n_cells) for _ in range(1, n)]
            amp = np.abs(v[tuple(windows)])
            # |x|^{-gamma} at the windowed cell centers; the box never nears the origin
            rad2 = np.zeros(amp.shape)
            for axis in range(n):
                c = grid.axis_coords[windows[axis]]
                shape = [1] * n
                shape[axis] = c.size
                rad2 = rad2 + c.reshape(shape) ** 2
            weight = rad2 ** (-gamma / 2.0)
            spatial_vals[it] = (np.sum(weight**r * amp**r) * grid.cell_volume) ** (1.0 / r)
            min_height = min(min_height, float(amp.min()))
        if q == math.inf:
            norm_val = float(spatial_vals.max())
        else:
            norm_val = float(_trapz(spatial_vals**q, times) ** (1.0 / q))
        entries.append((K, norm_val))
        lower_consts.append(min_height * K**s)
    return CarrierScan(
        s=s,
        gamma=gamma,
        q=(math.inf if q == math.inf else q),
        r=r,
        entries=tuple(entries),
        lower_bound_constants=tuple(lower_consts),
        packet_masses=tuple(masses),
    )
