"""Vectorised adaptive Gauss-Kronrod (10, 21) quadrature.

All panels of a refinement level are evaluated in one call of the integrand,
which keeps the (expensive) phase-function evaluations batched.  The
integrand may return a stack of components, shape ``(..., n_nodes)``; every
component shares the same mesh, so sums of separately integrated terms are
consistent to rounding.
"""
from __future__ import annotations

import numpy as np

from .errors import NumericalError

__all__ = ["gk21", "integrate", "panels_for_phase"]

# QUADPACK qk21 abscissae/weights on [-1, 1] (positive half, descending)
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208977258580,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS = np.zeros(21)
GAUSS[1:10:2] = _WG
GAUSS[11:20:2] = _WG[::-1]


# relative size of |K - G| that bisection can no longer reduce
_ROUNDOFF = 50 * np.finfo(float).eps


def gk21(f, a, b):
    """Kronrod estimate and ``|K - G|`` on each panel ``[a_i, b_i]``."""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
    y = np.asarray(f(x))
    y = y.reshape(y.shape[:-1] + (a.size, 21))
    k = (y @ KRONROD) * half
    g = (y @ GAUSS) * half
    return k, np.abs(k - g)


def integrate(f, points, atol=1e-12, rtol=1e-12, max_panels=200000, initial=None):
    """Integrate ``f`` over ``[points[0], points[-1]]`` splitting at every point.

    Parameters
    ----------
    f : callable
        Vectorised integrand; ``f(x)`` returns shape ``(..., len(x))``.
    points : sequence of float
        Sorted break points; the integrand may be non-smooth across them.
    initial : sequence of int, optional
        Number of equal panels to start with between consecutive points.

    Returns
    -------
    value, error : ndarray
        Integral and error estimate (per component).
    """
    pts = np.asarray(points, dtype=float)
    if pts.size < 2:
        raise ValueError("need at least two points")
    if np.any(np.diff(pts) < 0):
        raise ValueError("points must be sorted")
    pts = pts[np.concatenate([[True], np.diff(pts) > 0])]
    if pts.size < 2:
        return np.asarray(0.0), np.asarray(0.0)
    if initial is None:
        lo, hi = pts[:-1], pts[1:]
    else:
        counts = np.broadcast_to(np.asarray(initial, dtype=int), (pts.size - 1,))
        los, his = [], []
        for a, b, n in zip(pts[:-1], pts[1:], counts):
            e = np.linspace(a, b, max(int(n), 1) + 1)
            los.append(e[:-1])
            his.append(e[1:])
        lo, hi = np.concatenate(los), np.concatenate(his)

    done_val = 0.0
    done_err = 0.0
    while True:
        val, err = gk21(f, lo, hi)
        comp_err = err.reshape(-1, lo.size) if err.ndim > 1 else err[None, :]
        # worst component drives refinement
        panel_err = comp_err.max(axis=0)
        total = done_val + val.sum(axis=-1)
        tot_err = done_err + err.sum(axis=-1)
        scale = np.max(np.abs(np.atleast_1d(total)))
        tol = max(atol, rtol * scale)
        if np.max(np.atleast_1d(tot_err)) <= tol:
            return total, tot_err
        # panels at or below their share of the budget are frozen, and so are
        # panels whose estimate is already at the rounding level
        share = tol * (hi - lo) / (pts[-1] - pts[0])
        comp_val = np.abs(val).reshape(-1, lo.size) if val.ndim > 1 else np.abs(val)[None, :]
        floor = _ROUNDOFF * comp_val.max(axis=0)
        keep = (panel_err <= 0.5 * share) | (panel_err <= floor)
        done_val = done_val + val[..., keep].sum(axis=-1)
        done_err = done_err + err[..., keep].sum(axis=-1)
        lo, hi = lo[~keep], hi[~keep]
        if lo.size == 0:
            return total, tot_err
        if 2 * lo.size > max_panels or np.min(hi - lo) < 1e-14 * max(1.0, abs(pts[-1])):
            worst = int(np.argmax(panel_err[~keep]))
            raise NumericalError(
                f"quadrature did not converge: error {float(np.max(tot_err)):.3g} > tol {tol:.3g}",
                segment=(float(lo[worst]), float(hi[worst])),
            )
        mid = 0.5 * (lo + hi)
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])


def panels_for_phase(points, rate, rad_per_panel=6.0):
    """Initial panel counts so that no panel spans more than ``rad_per_panel`` of phase.

    ``rate(a, b)`` returns an upper estimate of the phase rate on ``[a, b]``.
    """
    pts = np.asarray(points, dtype=float)
    return [
        max(1, int(np.ceil(rate(a, b) * (b - a) / rad_per_panel)))
        for a, b in zip(pts[:-1], pts[1:])
    ]
