"""Hot numeric kernels: numba-jitted versions with pure-numpy fallbacks.

Two kernels are heavily exercised by the estimators and certification loops:

* :func:`count_causal_members` -- count how many points of a sample pool lie
  in the causal past/future of a query point of the extremal (BTZ-type)
  tube, using the closed-form causal relation;
* :func:`min_delta_scan` -- minimum of the spacelike slack ``delta`` and of
  ``r^2 delta`` over a sampled surface-jet grid.

Backend selection: the numba versions are used when numba imports cleanly
and the environment variable ``BTZGEO_DISABLE_NUMBA`` is unset (or "0");
setting it to any other value forces the pure-numpy path.  Both paths return
identical results (integer counts, exact same float reductions up to
reduction order; the counts used in estimators are exactly equal), which is
asserted by the test suite and measured by ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import math
import os

import numpy as np

_TWO_PI = 2.0 * math.pi


# =========================================================================
# Pure numpy implementations
# =========================================================================


def _wrap_pi(x):
    """Reduce angles to the half-open interval [-pi, pi)."""
    return np.mod(x + math.pi, _TWO_PI) - math.pi


def _causal_mask_np(tau_a, r_a, th_a, tau_b, r_b, th_b):
    """Vectorized closed-form relation: point a precedes point b (a <= b)."""
    dt = tau_b - tau_a
    line_a = r_a == 0.0
    line_b = r_b == 0.0
    phi = _wrap_pi(th_b - th_a)
    dr = r_b - r_a
    reg = (
        ~line_a
        & ~line_b
        & (dt > 0.0)
        & (dr >= 0.0)
        & (r_a * r_b * phi**2 <= dr * (2.0 * dt - dr))
    )
    exit_ = line_a & ~line_b & (dt >= 0.5 * r_b)
    along = line_a & line_b & (dt >= 0.0)
    return reg | exit_ | along


def _count_members_np(pool_tau, pool_r, pool_th, q_tau, q_r, q_th, future):
    if future:
        mask = _causal_mask_np(q_tau, q_r, q_th, pool_tau, pool_r, pool_th)
    else:
        mask = _causal_mask_np(pool_tau, pool_r, pool_th, q_tau, q_r, q_th)
    return int(np.count_nonzero(mask))


def _min_delta_np(r, f_r, f_th):
    """Min of delta and r^2*delta over a (n_r, n_th) jet grid; r shaped (n_r,)."""
    rc = r[:, None]
    r2delta = rc**2 * (1.0 - 2.0 * f_r) - f_th**2
    delta = r2delta / rc**2
    return float(delta.min()), float(r2delta.min())


# =========================================================================
# Numba implementations
# =========================================================================

_env = os.environ.get("BTZGEO_DISABLE_NUMBA", "")
_want_numba = _env in ("", "0")

if _want_numba:
    try:
        from numba import njit

        @njit(cache=True)
        def _count_members_nb(pool_tau, pool_r, pool_th, q_tau, q_r, q_th, future):
            n = 0
            for i in range(pool_tau.shape[0]):
                if future:
                    ta, ra, ha = q_tau, q_r, q_th
                    tb, rb, hb = pool_tau[i], pool_r[i], pool_th[i]
                else:
                    ta, ra, ha = pool_tau[i], pool_r[i], pool_th[i]
                    tb, rb, hb = q_tau, q_r, q_th
                dt = tb - ta
                if ra == 0.0:
                    if rb == 0.0:
                        ok = dt >= 0.0
                    else:
                        ok = dt >= 0.5 * rb
                elif rb == 0.0:
                    ok = False
                else:
                    dr = rb - ra
                    if dt > 0.0 and dr >= 0.0:
                        # float % has divisor sign, same as np.mod: [0, 2pi)
                        phi = (hb - ha + math.pi) % _TWO_PI - math.pi
                        ok = ra * rb * phi * phi <= dr * (2.0 * dt - dr)
                    else:
                        ok = False
                if ok:
                    n += 1
            return n

        @njit(cache=True)
        def _min_delta_nb(r, f_r, f_th):
            best_delta = np.inf
            best_r2 = np.inf
            for i in range(r.shape[0]):
                r2 = r[i] * r[i]
                for j in range(f_r.shape[1]):
                    v = r2 * (1.0 - 2.0 * f_r[i, j]) - f_th[i, j] * f_th[i, j]
                    if v < best_r2:
                        best_r2 = v
                    d = v / r2
                    if d < best_delta:
                        best_delta = d
            return best_delta, best_r2

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - exercised via env flag tests
        BACKEND = "numpy"
else:
    BACKEND = "numpy"


# =========================================================================
# Public entry points
# =========================================================================


def count_causal_members(pool_tau, pool_r, pool_th, q_tau, q_r, q_th, future):
    """Number of pool points causally after (future=True) or before the query.

    The pool arrays must be 1d float64 of equal length; the query is a single
    point (tau, r, theta) of the extremal tube.  The relation used is the
    closed-form one: see ``causal.btz_causal_future`` for its derivation and
    the tests for the cross-checks against explicit curves and the grid
    oracle.
    """
    pool_tau = np.ascontiguousarray(pool_tau, dtype=np.float64)
    pool_r = np.ascontiguousarray(pool_r, dtype=np.float64)
    pool_th = np.ascontiguousarray(pool_th, dtype=np.float64)
    if BACKEND == "numba":
        return int(
            _count_members_nb(
                pool_tau, pool_r, pool_th,
                float(q_tau), float(q_r), float(q_th), bool(future),
            )
        )
    return _count_members_np(
        pool_tau, pool_r, pool_th, float(q_tau), float(q_r), float(q_th), bool(future)
    )


def min_delta_scan(r, f_r, f_th):
    """(min delta, min r^2*delta) over a jet grid.

    ``r`` has shape (n_r,) with strictly positive entries; ``f_r`` and
    ``f_th`` hold the height-field partials on the (n_r, n_th) grid.
    """
    r = np.ascontiguousarray(r, dtype=np.float64)
    f_r = np.ascontiguousarray(f_r, dtype=np.float64)
    f_th = np.ascontiguousarray(f_th, dtype=np.float64)
    if np.any(r <= 0.0):
        raise ValueError("grid radii must be strictly positive")
    if BACKEND == "numba":
        d, r2 = _min_delta_nb(r, f_r, f_th)
        return float(d), float(r2)
    return _min_delta_np(r, f_r, f_th)
