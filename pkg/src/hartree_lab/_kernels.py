"""Hot pointwise kernels with a numba fast path and a pure-numpy fallback.

The FFTs that dominate asymptotic cost stay in numpy; what lives here are the
per-node loops that run once or more per time step (weighted norm reductions,
nonlinear phase kicks, Hartree density assembly).  Every kernel has two
implementations with identical signatures:

* ``*_numba`` -- ``@njit`` compiled, loop-fused, single pass over the array;
* ``*_numpy`` -- vectorised numpy, used when numba is unavailable or when the
  environment variable ``HARTREE_LAB_NUMBA`` is set to ``0``.

``USING_NUMBA`` records which path was selected at import time.  Both paths
are deterministic (fixed reduction order for a fixed backend); swapping the
backend may move results by an ulp or two, so determinism guarantees are per
backend.  ``benchmarks/kernel_bench.py`` times one against the other.
"""

import os

import numpy as np

_env = os.environ.get("HARTREE_LAB_NUMBA", "").strip()
_want_numba = _env not in ("0", "false", "no", "off")

try:  # pragma: no cover - exercised implicitly by the import
    if not _want_numba:
        raise ImportError("numba disabled via HARTREE_LAB_NUMBA=0")
    from numba import njit

    USING_NUMBA = True
except ImportError:
    USING_NUMBA = False

    def njit(*args, **kwargs):
        """Decorator stub so the numba definitions below stay importable."""

        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# numba implementations (flat 1-D views; callers ravel)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _weighted_abs_pow_sum_numba(values, weights, r):
    total = 0.0
    for i in range(values.size):
        v = values[i]
        m2 = v.real * v.real + v.imag * v.imag
        if r == 2.0:
            total += weights[i] * m2
        else:
            total += weights[i] * m2 ** (0.5 * r)
    return total


@njit(cache=True)
def _weighted_abs_max_numba(values, weights):
    best = 0.0
    for i in range(values.size):
        v = values[i]
        m = np.sqrt(v.real * v.real + v.imag * v.imag) * weights[i]
        if m > best:
            best = m
    return best


@njit(cache=True)
def _phase_kick_numba(values, potential, coef):
    out = np.empty_like(values)
    for i in range(values.size):
        theta = coef * potential[i]
        c = np.cos(theta)
        s = np.sin(theta)
        v = values[i]
        out[i] = complex(v.real * c - v.imag * s, v.real * s + v.imag * c)
    return out


@njit(cache=True)
def _weighted_abs_pow_numba(values, weights, p):
    out = np.empty(values.size, dtype=np.float64)
    for i in range(values.size):
        v = values[i]
        m2 = v.real * v.real + v.imag * v.imag
        if p == 2.0:
            out[i] = weights[i] * m2
        else:
            out[i] = weights[i] * m2 ** (0.5 * p)
    return out


@njit(cache=True)
def _hartree_assemble_numba(values, potential, weights, pm2):
    out = np.empty_like(values)
    for i in range(values.size):
        v = values[i]
        m2 = v.real * v.real + v.imag * v.imag
        if pm2 == 0.0:
            amp = weights[i] * potential[i]
        else:
            amp = weights[i] * potential[i] * m2 ** (0.5 * pm2)
        out[i] = v * amp
    return out


# ---------------------------------------------------------------------------
# numpy fallbacks
# ---------------------------------------------------------------------------


def _weighted_abs_pow_sum_numpy(values, weights, r):
    m2 = values.real**2 + values.imag**2
    if r == 2.0:
        return float(np.sum(weights * m2))
    return float(np.sum(weights * m2 ** (0.5 * r)))


def _weighted_abs_max_numpy(values, weights):
    return float(np.max(np.abs(values) * weights))


def _phase_kick_numpy(values, potential, coef):
    return values * np.exp(1j * coef * potential)


def _weighted_abs_pow_numpy(values, weights, p):
    m2 = values.real**2 + values.imag**2
    if p == 2.0:
        return weights * m2
    return weights * m2 ** (0.5 * p)


def _hartree_assemble_numpy(values, potential, weights, pm2):
    m2 = values.real**2 + values.imag**2
    if pm2 == 0.0:
        return values * (weights * potential)
    return values * (weights * potential * m2 ** (0.5 * pm2))


if USING_NUMBA:
    weighted_abs_pow_sum = _weighted_abs_pow_sum_numba
    weighted_abs_max = _weighted_abs_max_numba
    phase_kick = _phase_kick_numba
    weighted_abs_pow = _weighted_abs_pow_numba
    hartree_assemble = _hartree_assemble_numba
else:
    weighted_abs_pow_sum = _weighted_abs_pow_sum_numpy
    weighted_abs_max = _weighted_abs_max_numpy
    phase_kick = _phase_kick_numpy
    weighted_abs_pow = _weighted_abs_pow_numpy
    hartree_assemble = _hartree_assemble_numpy


def backend_name():
    return "numba" if USING_NUMBA else "numpy"
