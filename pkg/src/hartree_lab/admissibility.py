"""Exact rational arithmetic for admissible exponents and theorem windows.

Everything in this module is computed with `fractions.Fraction` -- no floats.
It owns:

* the (gamma, s)-Schrodinger admissibility test (four conditions, reported
  per violated tag),
* critical indices: s_c, the mass-critical p_* and energy-critical p^*,
  and the scaling exponent kappa of u_delta(x,t) = delta^kappa u(delta x,
  delta^2 t),
* the gamma-window checkers for the critical-H^s and below-L^2
  well-posedness regimes, with each violated assumption named,
* lattice sampling of the admissible region and the sharpness-region
  classifier (weight branch / slope branch),
* exact preconditions for the inequality lab (HLS and weighted-Sobolev
  exponent relations).

Exponents q, r enter as their reciprocals so the q = infinity endpoint is
the first-class value 1/q = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]

Q_RANGE = "Q_RANGE"
R_RANGE = "R_RANGE"
STRICT_SLOPE = "STRICT_SLOPE"
SCALING = "SCALING"

ALPHA_RANGE = "ALPHA_RANGE"
B_RANGE = "B_RANGE"
WINDOW_EMPTY = "WINDOW_EMPTY"


def parse_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "num/den" string to an exact Fraction.

    Floats are rejected: exponent arithmetic must stay exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational (int, Fraction, 'num/den'), got {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize as "num/den" (or "num" for integers)."""
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class AdmissiblePair:
    """Candidate (1/q, 1/r, gamma, s) in dimension n."""

    inv_q: Fraction
    inv_r: Fraction
    gamma: Fraction
    s: Fraction
    dim: int

    def __post_init__(self):
        for name in ("inv_q", "inv_r", "gamma", "s"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim}")

    def to_json(self):
        return {
            "inv_q": format_rational(self.inv_q),
            "inv_r": format_rational(self.inv_r),
            "gamma": format_rational(self.gamma),
            "s": format_rational(self.s),
            "dim": self.dim,
        }


@dataclass(frozen=True)
class Verdict:
    admissible: bool
    violated: tuple

    def to_json(self):
        return {"admissible": self.admissible, "violated": list(self.violated)}


def is_admissible(pair: AdmissiblePair) -> Verdict:
    """Check the four admissibility conditions, tagging each violation.

    admissible iff 0 <= 1/q <= 1/2, gamma/n < 1/r <= 1/2,
    2/q < n(1/2 - 1/r) + 2*gamma (strict), and
    s = n(1/2 - 1/r) - 2/q + gamma.
    """
    n = pair.dim
    half = Fraction(1, 2)
    violated = []
    if not (0 <= pair.inv_q <= half):
        violated.append(Q_RANGE)
    if not (pair.gamma / n < pair.inv_r <= half):
        violated.append(R_RANGE)
    if not (2 * pair.inv_q < n * (half - pair.inv_r) + 2 * pair.gamma):
        violated.append(STRICT_SLOPE)
    if pair.s != n * (half - pair.inv_r) - 2 * pair.inv_q + pair.gamma:
        violated.append(SCALING)
    return Verdict(admissible=not violated, violated=tuple(violated))


def scaling_s(inv_q, inv_r, gamma, n) -> Fraction:
    """The s forced by the scaling condition for given (1/q, 1/r, gamma)."""
    return n * (Fraction(1, 2) - parse_rational(inv_r)) - 2 * parse_rational(inv_q) + parse_rational(gamma)


@dataclass(frozen=True)
class EquationParams:
    """Parameters (n, alpha, b, p, lambda) of the nonlinear equation.

    lam = 0 is admitted as a linear-diagnostic mode (the nonlinearity is
    switched off); physical runs use lam = +1 (defocusing) or -1 (focusing).
    dim = 1 is admitted for desk-scale oracle tests even though the
    well-posedness theorems require n >= 2.
    """

    dim: int
    alpha: Fraction
    b: Fraction
    p: Fraction
    lam: int = 1

    def __post_init__(self):
        for name in ("alpha", "b", "p"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim}")
        if not (0 < self.alpha < self.dim):
            raise ValueError(f"alpha must lie in (0, {self.dim}), got {self.alpha}")
        if not self.b > 0:
            raise ValueError(f"b must be positive, got {self.b}")
        if not self.p >= 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if self.lam not in (-1, 0, 1):
            raise ValueError(f"lambda must be -1, 0 or +1, got {self.lam}")

    def critical_sobolev_index(self) -> Fraction:
        return critical_sobolev_index(self.dim, self.alpha, self.b, self.p)

    def scaling_exponent(self) -> Fraction:
        return scaling_exponent(self.alpha, self.b, self.p)

    def to_json(self):
        return {
            "dim": self.dim,
            "alpha": format_rational(self.alpha),
            "b": format_rational(self.b),
            "p": format_rational(self.p),
            "lambda": self.lam,
        }


def critical_sobolev_index(n, alpha, b, p) -> Fraction:
    """s_c = n/2 - (2 - 2b + alpha)/(2(p-1)); data norm H^{s_c} is scale-invariant."""
    alpha, b, p = map(parse_rational, (alpha, b, p))
    if p == 1:
        raise ZeroDivisionError("critical index undefined at p = 1")
    return Fraction(n, 2) - (2 - 2 * b + alpha) / (2 * (p - 1))


def scaling_exponent(alpha, b, p) -> Fraction:
    """kappa in u_delta(x, t) = delta^kappa u(delta x, delta^2 t)."""
    alpha, b, p = map(parse_rational, (alpha, b, p))
    return (2 - 2 * b + alpha) / (2 * (p - 1))


def mass_critical_p(n, alpha, b) -> Fraction:
    """p_* = 1 + (alpha + 2 - 2b)/n; values below 2 are outside the equation's range."""
    alpha, b = parse_rational(alpha), parse_rational(b)
    return 1 + (alpha + 2 - 2 * b) / n


def energy_critical_p(n, alpha, b) -> Fraction:
    """p^* = 1 + (2 - 2b + alpha)/(n - 2); undefined at n = 2."""
    alpha, b = parse_rational(alpha), parse_rational(b)
    if n <= 2:
        raise ZeroDivisionError("energy-critical exponent undefined for n <= 2")
    return 1 + (2 - 2 * b + alpha) / (n - 2)


@dataclass(frozen=True)
class GammaWindow:
    """Open interval (lower, upper) of admissible gamma; both ends exclusive."""

    lower: Fraction
    upper: Fraction

    @property
    def nonempty(self) -> bool:
        return self.lower < self.upper

    def contains(self, gamma) -> bool:
        g = parse_rational(gamma)
        return self.lower < g < self.upper

    def to_json(self):
        return {
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "nonempty": self.nonempty,
        }

    def __str__(self):
        return f"({format_rational(self.lower)}, {format_rational(self.upper)})"


@dataclass(frozen=True)
class TheoremReport:
    ok: bool
    p: Fraction
    window: GammaWindow
    failures: tuple

    def to_json(self):
        return {
            "ok": self.ok,
            "p": format_rational(self.p),
            "window": self.window.to_json(),
            "failures": list(self.failures),
        }


def _window_upper_core(n, s, p) -> Fraction:
    # ((p-1)s + 1)/p - (p-2)(2p-1)n/(4p^2), shared by both regimes
    return ((p - 1) * s + 1) / p - (p - 2) * (2 * p - 1) * n / (4 * p * p)


def check_theorem_critical_Hs(n, s, alpha, b) -> TheoremReport:
    """Assumption checks and gamma window for the critical-H^s regime.

    Requires n >= 2 and 0 <= s < 1/2 exactly.  Verifies
    n - 2 < alpha < n and max{0, (alpha-n)/2 + (n+2)s/n} < b <= (alpha-n)/2 + s + 1,
    sets p = 1 + (2 - 2b + alpha)/(n - 2s), and returns the window
    (s, min{1 - s, ((p-1)s+1)/p - (p-2)(2p-1)n/(4p^2), n/p}).
    ok iff every assumption holds and the window is nonempty.
    """
    s, alpha, b = map(parse_rational, (s, alpha, b))
    if not (isinstance(n, int) and n >= 2):
        raise ValueError(f"n must be an integer >= 2, got {n}")
    if not (0 <= s < Fraction(1, 2)):
        raise ValueError(f"s must satisfy 0 <= s < 1/2, got {s}")
    failures = []
    if not (n - 2 < alpha < n):
        failures.append(ALPHA_RANGE)
    b_low = max(Fraction(0), Fraction(alpha - n, 2) + Fraction((n + 2), n) * s)
    b_high = Fraction(alpha - n, 2) + s + 1
    if not (b_low < b <= b_high):
        failures.append(B_RANGE)
    p = 1 + (2 - 2 * b + alpha) / (n - 2 * s)
    window = GammaWindow(lower=s, upper=min(1 - s, _window_upper_core(n, s, p), Fraction(n) / p))
    if not window.nonempty:
        failures.append(WINDOW_EMPTY)
    return TheoremReport(ok=not failures, p=p, window=window, failures=tuple(failures))


def check_theorem_below_L2(n, s, alpha, b) -> TheoremReport:
    """Assumption checks and gamma window for the below-L^2 regime.

    Requires n >= 2 and -1/2 < s < 0 exactly.  Verifies
    n - 2 - 2s < alpha < n and 0 < b <= (alpha-n)/2 + s + 1, sets
    p = 1 + (2 - 2b + alpha)/(n - 2s), and returns the window
    (-s, min{((p-1)s+1)/p - (p-2)(2p-1)n/(4p^2), s - n/2 + n/p + 2/(2p-1), n/2}).
    """
    s, alpha, b = map(parse_rational, (s, alpha, b))
    if not (isinstance(n, int) and n >= 2):
        raise ValueError(f"n must be an integer >= 2, got {n}")
    if not (Fraction(-1, 2) < s < 0):
        raise ValueError(f"s must satisfy -1/2 < s < 0, got {s}")
    failures = []
    if not (n - 2 - 2 * s < alpha < n):
        failures.append(ALPHA_RANGE)
    b_high = Fraction(alpha - n, 2) + s + 1
    if not (0 < b <= b_high):
        failures.append(B_RANGE)
    p = 1 + (2 - 2 * b + alpha) / (n - 2 * s)
    upper = min(
        _window_upper_core(n, s, p),
        s - Fraction(n, 2) + Fraction(n) / p + Fraction(2) / (2 * p - 1),
        Fraction(n, 2),
    )
    window = GammaWindow(lower=-s, upper=upper)
    if not window.nonempty:
        failures.append(WINDOW_EMPTY)
    return TheoremReport(ok=not failures, p=p, window=window, failures=tuple(failures))


def gamma_window(n, s, alpha, b) -> TheoremReport:
    """Dispatch to the critical-H^s (s >= 0) or below-L^2 (s < 0) checker."""
    s = parse_rational(s)
    if s >= 0:
        return check_theorem_critical_Hs(n, s, alpha, b)
    return check_theorem_below_L2(n, s, alpha, b)


def sample_admissible_pairs(gamma, s, n, count, max_denominator: int = 24):
    """Rational lattice points (1/q, 1/r) admissible for the given (gamma, s).

    Enumerates 1/r over denominators up to max_denominator; the scaling
    condition then forces 1/q exactly.  Every returned pair passes
    is_admissible.  Empty when the section of the region at (gamma, s) is
    empty -- in particular outside -1/2 < s < n/2.
    """
    gamma, s = parse_rational(gamma), parse_rational(s)
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if not (Fraction(-1, 2) < s < Fraction(n, 2)):
        return []
    half = Fraction(1, 2)
    seen = set()
    out = []
    for den in range(1, max_denominator + 1):
        for num in range(0, den // 2 + 1):
            inv_r = Fraction(num, den)
            if inv_r in seen:
                continue
            seen.add(inv_r)
            # scaling condition: s = n(1/2 - 1/r) - 2/q + gamma
            inv_q = (n * (half - inv_r) + gamma - s) / 2
            pair = AdmissiblePair(inv_q=inv_q, inv_r=inv_r, gamma=gamma, s=s, dim=n)
            if is_admissible(pair).admissible:
                out.append(pair)
    # largest 1/r first: the r = 2 end of the region is the canonical one
    out.sort(key=lambda pr: (-pr.inv_r, pr.inv_q))
    return out[:count]


INSIDE = "inside"
VIOLATES_WEIGHT = "violates_weight"
VIOLATES_SLOPE = "violates_slope"


def sharpness_region_classify(inv_q, inv_r, gamma, n) -> str:
    """Classify a triple against the two falsifying branches.

    violates_weight if gamma/n >= 1/r; else violates_slope if
    2/q > n(1/2 - 1/r) + 2*gamma; else inside.
    """
    inv_q, inv_r, gamma = map(parse_rational, (inv_q, inv_r, gamma))
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if Fraction(gamma, 1) / n >= inv_r:
        return VIOLATES_WEIGHT
    if 2 * inv_q > n * (Fraction(1, 2) - inv_r) + 2 * gamma:
        return VIOLATES_SLOPE
    return INSIDE


def verify_hls_exponents(inv_q, inv_r, inv_s, alpha, n) -> bool:
    """Exact check of 1/q + 1/r + 1/s = 1 + alpha/n."""
    inv_q, inv_r, inv_s, alpha = map(parse_rational, (inv_q, inv_r, inv_s, alpha))
    return inv_q + inv_r + inv_s == 1 + Fraction(alpha, 1) / n


def verify_weighted_sobolev_exponents(a, b_pow, inv_r1p, inv_r2p, s, n):
    """Exact preconditions of the weighted Sobolev embedding.

    Returns a list of violated condition names (empty = all hold):
    1 < r1' <= r2' < infinity; -n/r2' < b_pow <= a < n/r1 with r1 the
    conjugate of r1'; and a - b_pow - s = n/r2' - n/r1' exactly.
    """
    a, b_pow, inv_r1p, inv_r2p, s = map(parse_rational, (a, b_pow, inv_r1p, inv_r2p, s))
    failures = []
    if not (0 < inv_r1p < 1 and 0 < inv_r2p < 1 and inv_r2p <= inv_r1p):
        failures.append("R_ORDER")  # 1 < r1' <= r2' < inf, via reciprocals
    inv_r1 = 1 - inv_r1p  # conjugate exponent
    if not (-n * inv_r2p < b_pow <= a < n * inv_r1):
        failures.append("WEIGHT_RANGE")
    if a - b_pow - s != n * inv_r2p - n * inv_r1p:
        failures.append("SCALING_RELATION")
    return failures
