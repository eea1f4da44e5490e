"""Vacuum energy density, total energy and the T-substitution cross-check.

The energy density splits into left and right movers,
``<T00>(x, t) = rho(t + x) + rho(t - x)``, with the profile

    rho(tau) = -(omega^2 / 48 pi) R'(tau)^2 - S[R](tau) / (24 pi)

where ``S`` is the Schwarzian derivative.  At kinks of ``R`` (images of the
instants where the wall starts or stops) the profile is integrated piecewise.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, MonotonicityError, NumericalError, PreconditionError
from .phase import PhaseFunction, ResonantAnsatz, invert_phase
from .quadrature import integrate
from .trajectory import TrajectoryKind, WallTrajectory

__all__ = [
    "schwarzian",
    "profile",
    "EnergyProfile",
    "EnergyReport",
    "energy_profile",
    "total_energy",
    "subcasimir_bound_check",
    "energy_via_T",
    "t_constraint",
    "resonant_energy",
    "resonant_profile",
    "casimir_energy",
    "resonance_energy_law",
    "lawwu_energy_law",
]

log = logging.getLogger(__name__)


def casimir_energy(L: float) -> float:
    """Static Casimir energy ``-pi / (24 L)``."""
    return -np.pi / (24 * L)


def resonance_energy_law(traj: WallTrajectory, t_elapsed=None) -> float:
    """Late-time energy of a resonantly driven wall.

    ``E = -k^2 w / 24 + (k^2 - 1) (w / 24) cosh(w_k t delta_L / L)`` with
    ``t`` the driving time (default ``T_motion``).
    """
    if traj.kind is not TrajectoryKind.SINUSOIDAL:
        raise PreconditionError("resonance energy law applies to sinusoidal driving")
    t = traj.T_motion if t_elapsed is None else t_elapsed
    k, w = traj.k_drive, traj.omega
    x = traj.omega_drive * t * traj.delta_L / traj.L
    return -k * k * w / 24 + (k * k - 1) * w / 24 * math.cosh(x)


def lawwu_energy_law(traj: WallTrajectory, t_elapsed=None) -> float:
    """Post-motion Law/Wu energy ``-w/24 + (k^2 - 1)(w/24) p^2 / 2``.

    ``p = (t/L - 1) tan(w_k delta_L / 2)``; ``t`` defaults to
    ``T_motion + L``, the exact value when ``T_motion`` is a multiple of ``2L``.
    """
    if traj.kind is not TrajectoryKind.LAWWU:
        raise PreconditionError("Law/Wu energy law needs a LawWu trajectory")
    t = traj.T_motion + traj.L if t_elapsed is None else t_elapsed
    k, w = traj.k_drive, traj.omega
    p = (t / traj.L - 1) * math.tan(traj.omega_drive * traj.delta_L / 2)
    return -w / 24 + (k * k - 1) * w / 24 * p * p / 2


def _schwarzian_from_jet(r1, r2, r3):
    if np.any(~(r1 > 0)):
        raise MonotonicityError("phase function is not strictly increasing (R' <= 0)")
    q = r2 / r1
    return r3 / r1 - 1.5 * q * q


def schwarzian(R: PhaseFunction, tau):
    """``S[R] = R'''/R' - 3/2 (R''/R')^2``."""
    _, r1, r2, r3 = R.jet(tau)
    s = _schwarzian_from_jet(r1, r2, r3)
    return float(s) if np.ndim(tau) == 0 else s


def _profile_terms(R: PhaseFunction, tau):
    _, r1, r2, r3 = R.jet(tau)
    w2 = R.omega**2
    first = -(w2 / (48 * np.pi)) * r1 * r1
    second = -_schwarzian_from_jet(r1, r2, r3) / (24 * np.pi)
    return first, second


def profile(R: PhaseFunction, tau):
    """Profile function ``rho(tau)`` of left/right movers."""
    a, b = _profile_terms(R, tau)
    out = a + b
    return float(out) if np.ndim(tau) == 0 else out


@dataclass
class EnergyProfile:
    """Sampled profile ``rho(tau)``; ``density`` gives ``<T00>(x, t)``."""

    tau: np.ndarray
    rho: np.ndarray
    period_start: float
    L: float
    phase: PhaseFunction = field(repr=False, compare=False, default=None)

    def density(self, x, t):
        """``rho(t + x) + rho(t - x)`` evaluated from the underlying phase function."""
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        return profile(self.phase, t + x) + profile(self.phase, t - x)

    def __len__(self):
        return self.tau.size


def energy_profile(R: PhaseFunction, tau_range, n_samples: int) -> EnergyProfile:
    a, b = map(float, tau_range)
    if not b > a or n_samples < 1:
        raise PreconditionError("energy profile needs a non-empty range and at least one sample")
    lo, hi = R.domain
    if a < lo or b > hi:
        raise DomainError(f"profile range [{a}, {b}] is outside the phase domain {R.domain}")
    tau = np.linspace(a, b, n_samples)
    return EnergyProfile(tau, profile(R, tau), R.periodic_from, R.L, R)


@dataclass(frozen=True)
class EnergyReport:
    """Total energy at ``t_eval`` and its two parts.

    ``E_subcasimir`` integrates the ``R'^2`` term and ``E_schwarzian`` the
    Schwarzian term over the same mesh.
    """

    E_total: float
    E_subcasimir: float
    E_schwarzian: float
    t_eval: float
    error: float = 0.0


def _window(R, traj, t):
    Lt = float(traj.derivatives(np.array([t]))[0][0])
    a, b = t - Lt, t + Lt
    lo, hi = R.domain
    if a < lo - 1e-12 * R.L or b > hi + 1e-12 * R.L:
        raise DomainError(f"energy window [{a:.6g}, {b:.6g}] is outside the phase domain {R.domain}")
    return a, b, Lt


def _mesh(R, a, b, per_half_period=8):
    pts = np.concatenate([[a], R.breakpoints_in(a, b), [b]])
    k = getattr(R, "k", 1)
    initial = [max(1, int(math.ceil(per_half_period * k * (hi - lo) / R.L))) for lo, hi in zip(pts[:-1], pts[1:])]
    return pts, initial


def total_energy(R: PhaseFunction, traj: WallTrajectory, t: float, atol=None, rtol=1e-13) -> EnergyReport:
    """``E(t)``: integral of ``rho`` over ``[t - L(t), t + L(t)]``."""
    a, b, _ = _window(R, traj, t)
    atol = 1e-10 * R.omega if atol is None else atol
    pts, initial = _mesh(R, a, b)

    def f(x):
        return np.stack(_profile_terms(R, x))

    val, err = integrate(f, pts, atol=0.5 * atol, rtol=rtol, initial=initial)
    e1, e2 = float(val[0]), float(val[1])
    report = EnergyReport(e1 + e2, e1, e2, float(t), float(np.sum(err)))
    if t > traj.T_motion and report.E_total < -R.omega / 24 - 1e-8 * R.omega:
        log.warning("energy %.12g below the static Casimir value at t=%g", report.E_total, t)
    return report


def subcasimir_bound_check(R: PhaseFunction, traj: WallTrajectory, t: float, tol=1e-12):
    """``(lhs, rhs, holds)`` for ``-(pi/48L^2) int R'^2 <= -pi / (24 L(t))``."""
    a, b, Lt = _window(R, traj, t)
    pts, initial = _mesh(R, a, b)
    w2 = R.omega**2

    def f(x):
        return -(w2 / (48 * np.pi)) * R.jet(x)[1] ** 2

    lhs = float(integrate(f, pts, atol=1e-13 * R.omega, rtol=1e-14, initial=initial)[0])
    rhs = -np.pi / (24 * Lt)
    return lhs, rhs, bool(lhs <= rhs + tol * max(1.0, abs(rhs)))


def _s_window(R, traj, t):
    a, b, _ = _window(R, traj, t)
    sa, sb = R(np.array([a, b]))
    return a, b, float(sa), float(sb)


def t_constraint(R: PhaseFunction, traj: WallTrajectory, t: float) -> float:
    """``(1/2L) int ds / T(s)^2`` over ``[t' - L, t' + L]`` (equals ``L(t)/L``)."""
    a, b, sa, sb = _s_window(R, traj, t)
    Q = invert_phase(R)
    pts = np.concatenate([[sa], Q.breakpoints_in(sa, sb), [sb]])

    def f(s):
        return Q.jet(s)[1]

    val = integrate(f, pts, atol=1e-12 * R.L, rtol=1e-12, initial=[16] * (pts.size - 1))[0]
    return float(val) / (2 * R.L)


def energy_via_T(R: PhaseFunction, traj: WallTrajectory, t: float, atol=None) -> float:
    """Total energy from ``T(s) = (d R^-1 / ds)^(-1/2)``.

    Integrates ``(T'^2 - omega^2 T^2 / 4) / (12 pi)`` over
    ``s in [t' - L, t' + L]`` with ``t' = R(t - L(t)) + L`` and subtracts the
    boundary term ``[T T'] / (12 pi)`` of every smooth piece.  The boundary
    terms cancel once the wall has stopped.
    """
    a, b, sa, sb = _s_window(R, traj, t)
    atol = 1e-11 * R.omega if atol is None else atol
    Q = invert_phase(R)
    inner = Q.breakpoints_in(sa, sb)
    pts = np.concatenate([[sa], inner, [sb]])
    w2 = R.omega**2
    k = getattr(R, "k", 1)

    def f(s):
        _, q1, q2, _ = Q.jet(s)
        T2 = 1.0 / q1
        # T = q1^(-1/2), T' = -q2 q1^(-3/2) / 2
        dT2 = 0.25 * q2 * q2 / q1**3
        return (dT2 - 0.25 * w2 * T2) / (12 * np.pi)

    initial = [max(1, int(math.ceil(8 * k * (hi - lo) / R.L))) for lo, hi in zip(pts[:-1], pts[1:])]
    bulk = float(integrate(f, pts, atol=atol, rtol=1e-13, initial=initial)[0])

    def tt_prime(s):
        _, q1, q2, _ = Q.jet(s)
        return -0.5 * q2 / q1**2

    eps = 1e-6 * (sb - sa)

    def one_sided(p, side):
        # linear extrapolation from two interior points, O(eps^2)
        v = tt_prime(np.array([p + side * eps, p + 2 * side * eps]))
        return 2 * v[0] - v[1]

    ends = [one_sided(sb, -1) - one_sided(sa, +1)]
    for p in inner:
        ends.append(one_sided(p, -1) - one_sided(p, +1))
    boundary = float(np.sum(ends))
    return bulk - boundary / (12 * np.pi)


def resonant_profile(ansatz: ResonantAnsatz, tau):
    """``rho(tau)`` from the inner functions, with ``u = tan(w_k tau / 2)``.

        rho = -(k^2 w^2 / 48 pi) (1 + (1+u^2)^2 S[sigma_j](u) / 2)
              + ((k^2 - 1) w^2 / 48 pi) (1+u^2)^2 sigma_j'(u)^2 / (1 + sigma_j(u)^2)^2

    ``j`` is the piece of the period that contains ``tau``.
    """
    k, L, w = ansatz.k, ansatz.L, ansatz.omega
    tau = np.asarray(tau, dtype=float)
    flat = tau.reshape(-1)
    origin = -L / k
    s = np.mod(flat - origin, 2 * L)
    j = np.clip(np.floor(s * k / (2 * L)).astype(int), 0, k - 1)
    u = np.tan(0.5 * k * w * flat)
    out = np.empty_like(flat)
    for jj in np.unique(j):
        sel = j == jj
        sig = ansatz.sigmas[jj]
        s0, s1, _, _ = sig.jet(u[sel])
        sec2 = 1 + u[sel] ** 2
        sch = 0.0 if getattr(sig, "is_moebius", False) else sig.schwarzian(u[sel])
        out[sel] = (-(k * k * w * w) / (48 * np.pi) * (1 + 0.5 * sec2**2 * sch)
                    + (k * k - 1) * w * w / (48 * np.pi) * (sec2 * s1 / (1 + s0 * s0)) ** 2)
    out = out.reshape(tau.shape)
    return float(out) if out.ndim == 0 else out


def resonant_energy(ansatz: ResonantAnsatz, atol=1e-13) -> float:
    """Total energy of a resonant ansatz from its inner functions alone.

    The integrals over ``u`` in ``(-inf, inf)`` are taken over
    ``theta = arctan(u)`` in ``(-pi/2, pi/2)``.  The Schwarzian of a Moebius
    inner function vanishes identically and is not evaluated.
    """
    k = ansatz.k
    w = ansatz.omega
    sch_total = 0.0
    kin_total = 0.0
    for sig in ansatz.sigmas:
        cuts = np.arctan(np.asarray(getattr(sig, "breakpoints", ()), dtype=float))
        pts = np.concatenate([[-np.pi / 2], np.sort(cuts), [np.pi / 2]])

        def kin(theta, sig=sig):
            u = np.tan(theta)
            s0, s1, _, _ = sig.jet(u)
            sec2 = 1 + u * u
            return (sec2 * s1 / (1 + s0 * s0)) ** 2

        val = integrate(kin, pts, atol=atol, rtol=1e-14, initial=[32] * (pts.size - 1))[0]
        kin_total += float(val)
        if not getattr(sig, "is_moebius", False):
            def sch(theta, sig=sig):
                u = np.tan(theta)
                sec2 = 1 + u * u
                return sec2 * sec2 * sig.schwarzian(u)

            val, _ = integrate(sch, pts, atol=atol, rtol=1e-14, initial=[32] * (pts.size - 1))
            sch_total += float(val)
    return (-k * k * (w / 24) * (1 + sch_total / (2 * k * np.pi))
            + (k * k - 1) * w / (24 * k * np.pi) * kin_total)
