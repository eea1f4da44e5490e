"""Wall trajectories L(t) for a one-dimensional cavity with one moving mirror.

The left mirror sits at ``x = 0``; the right mirror follows ``L(t)``.  Outside
the motion window ``0 < t < T_motion`` the cavity is static with length ``L``.
Natural units (c = hbar = 1) throughout.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ParameterError

__all__ = [
    "TrajectoryKind",
    "WallTrajectory",
    "Violation",
    "eval_trajectory",
    "validate_trajectory",
    "static",
    "sinusoidal",
    "lawwu",
    "custom",
]


class TrajectoryKind(str, enum.Enum):
    STATIC = "Static"
    SINUSOIDAL = "Sinusoidal"
    LAWWU = "LawWu"
    CUSTOM = "Custom"


@dataclass(frozen=True)
class Violation:
    """A single failed trajectory invariant."""

    t: float
    bound: str
    value: float

    def __str__(self):
        return f"{self.bound} at t={self.t:.6g} (value {self.value:.6g})"


@dataclass(frozen=True)
class WallTrajectory:
    """Immutable description of the moving-wall motion.

    Parameters
    ----------
    kind : TrajectoryKind
    L : float
        Static cavity length.
    T_motion : float
        Duration of the wall motion.  For the periodic drives this must be an
        integer multiple of the drive period ``2 pi / omega_k``.
    delta_L : float
        Amplitude of the motion (0 for a static cavity).
    k_drive : int
        Resonance index; the drive frequency is ``k_drive * pi / L``.
    func : callable, optional
        Only for ``Custom``: ``func(t) -> (L, L', L'', L''')`` on ``0 < t < T_motion``,
        vectorised over ``t``.
    """

    kind: TrajectoryKind
    L: float
    T_motion: float = 0.0
    delta_L: float = 0.0
    k_drive: int = 1
    func: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", TrajectoryKind(self.kind))
        if not self.L > 0:
            raise ParameterError(f"cavity length must be positive, got L={self.L}")
        if self.T_motion < 0:
            raise ParameterError("T_motion must be non-negative")
        if not 0 <= self.delta_L < self.L:
            raise ParameterError(f"need 0 <= delta_L < L, got delta_L={self.delta_L}")
        if int(self.k_drive) != self.k_drive or self.k_drive < 1:
            raise ParameterError("k_drive must be a positive integer")
        object.__setattr__(self, "k_drive", int(self.k_drive))
        if self.kind is TrajectoryKind.CUSTOM and self.func is None:
            raise ParameterError("Custom trajectory needs func(t) -> (L, L', L'', L''')")
        if self.kind in (TrajectoryKind.SINUSOIDAL, TrajectoryKind.LAWWU):
            periods = self.T_motion / self.drive_period
            if abs(periods - round(periods)) > 1e-9 * max(1.0, periods):
                raise ParameterError(
                    "T_motion must be an integer multiple of the drive period "
                    f"{self.drive_period:.6g} (got {periods:.6g} periods)"
                )
        if self.kind is TrajectoryKind.STATIC:
            object.__setattr__(self, "T_motion", 0.0)

    @property
    def omega(self) -> float:
        """Fundamental cavity frequency ``pi / L``."""
        return np.pi / self.L

    @property
    def omega_drive(self) -> float:
        return self.k_drive * np.pi / self.L

    @property
    def drive_period(self) -> float:
        return 2 * np.pi / self.omega_drive

    @property
    def breakpoints(self) -> tuple:
        """Times where the motion switches on/off (derivatives may jump there)."""
        if self.kind is TrajectoryKind.STATIC or self.T_motion == 0:
            return ()
        return (0.0, float(self.T_motion))

    def length_bounds(self) -> tuple:
        """Conservative ``(min, max)`` of ``L(t)`` over all times."""
        if self.kind is TrajectoryKind.STATIC:
            return self.L, self.L
        if self.kind is TrajectoryKind.SINUSOIDAL:
            return self.L - self.delta_L, self.L + self.delta_L
        if self.kind is TrajectoryKind.LAWWU:
            return self.L - self.delta_L, self.L
        ts = np.linspace(0.0, self.T_motion, 4097)
        vals = np.asarray(self.func(ts)[0], dtype=float)
        slack = 1e-6 * self.L
        return min(self.L, vals.min()) - slack, max(self.L, vals.max()) + slack

    def derivatives(self, t):
        """Return ``(L, L', L'', L''')`` at ``t`` (array-friendly)."""
        t = np.asarray(t, dtype=float)
        out = [np.full(t.shape, float(self.L)), np.zeros(t.shape), np.zeros(t.shape), np.zeros(t.shape)]
        if self.kind is TrajectoryKind.STATIC or self.T_motion == 0:
            return tuple(out)
        inside = (t > 0) & (t < self.T_motion)
        if not inside.any():
            return tuple(out)
        ti = t[inside]
        for arr, val in zip(out, self._moving(ti)):
            arr[inside] = val
        return tuple(out)

    def value_slope(self, t):
        """``(L, L')`` only; cheaper than :meth:`derivatives` inside root finding."""
        t = np.asarray(t, dtype=float)
        Lv, L1 = np.full(t.shape, float(self.L)), np.zeros(t.shape)
        if self.kind is TrajectoryKind.STATIC or self.T_motion == 0:
            return Lv, L1
        inside = (t > 0) & (t < self.T_motion)
        if inside.any():
            ti = t[inside]
            om = self.omega_drive
            if self.kind is TrajectoryKind.SINUSOIDAL:
                Lv[inside] = self.L + self.delta_L * np.sin(om * ti)
                L1[inside] = self.delta_L * om * np.cos(om * ti)
            else:
                v = self._moving(ti)
                Lv[inside], L1[inside] = v[0], v[1]
        return Lv, L1

    def _moving(self, t):
        om = self.omega_drive
        if self.kind is TrajectoryKind.SINUSOIDAL:
            a = self.delta_L
            s, c = np.sin(om * t), np.cos(om * t)
            return (self.L + a * s, a * om * c, -a * om**2 * s, -a * om**3 * c)
        if self.kind is TrajectoryKind.LAWWU:
            eps = om * self.delta_L / 2
            s0 = np.sin(eps)
            y = s0 * np.cos(om * t)
            y1 = -s0 * om * np.sin(om * t)
            y2 = -(om**2) * y
            y3 = -(om**2) * y1
            w = 1.0 - y * y
            # w = 0 only for superluminal parameters, which validation rejects
            with np.errstate(divide="ignore", invalid="ignore"):
                a1 = w**-0.5
                a2 = y * w**-1.5
                a3 = (1 + 2 * y * y) * w**-2.5
                return (
                    self.L + (np.arcsin(y) - eps) / om,
                    a1 * y1 / om,
                    (a2 * y1**2 + a1 * y2) / om,
                    (a3 * y1**3 + 3 * a2 * y1 * y2 + a1 * y3) / om,
                )
        vals = self.func(t)
        return tuple(np.broadcast_to(np.asarray(v, dtype=float), t.shape) for v in vals)


def eval_trajectory(traj: WallTrajectory, t, order: int = 0):
    """``d^order L / dt^order`` at ``t``; static values outside the motion window."""
    if order not in (0, 1, 2, 3):
        raise ParameterError(f"derivative order must be 0..3, got {order!r}")
    val = traj.derivatives(t)[order]
    return float(val) if np.ndim(val) == 0 else val


def validate_trajectory(traj: WallTrajectory, n_scan: int = 20001) -> list:
    """Scan ``[0, T_motion]`` and report every violated invariant.

    Returns an empty list when the wall stays subluminal and the cavity length
    stays positive.  Violations are reported, never raised.
    """
    violations = []
    if traj.kind is TrajectoryKind.STATIC or traj.T_motion == 0:
        return violations
    if traj.kind is TrajectoryKind.SINUSOIDAL and traj.omega_drive * traj.delta_L >= 1:
        # peak speed is reached at t = 0
        violations.append(Violation(0.0, "superluminal", traj.omega_drive * traj.delta_L))
    ts = np.linspace(0.0, traj.T_motion, n_scan)[1:-1]
    Lv, L1, _, _ = traj.derivatives(ts)
    bad = np.abs(L1) >= 1
    if bad.any() and not violations:
        i = int(np.argmax(np.abs(L1)))
        violations.append(Violation(float(ts[i]), "superluminal", float(abs(L1[i]))))
    nonpos = Lv <= 0
    if nonpos.any():
        i = int(np.argmin(Lv))
        violations.append(Violation(float(ts[i]), "non-positive length", float(Lv[i])))
    return violations


def static(L: float) -> WallTrajectory:
    return WallTrajectory(TrajectoryKind.STATIC, L)


def sinusoidal(L: float, delta_L: float, k_drive: int, periods: int) -> WallTrajectory:
    """``L(t) = L + delta_L sin(omega_k t)`` for ``periods`` drive periods."""
    T = periods * 2 * L / k_drive
    return WallTrajectory(TrajectoryKind.SINUSOIDAL, L, T, delta_L, k_drive)


def lawwu(L: float, delta_L: float, k_drive: int, periods: int) -> WallTrajectory:
    """Law/Wu wall motion, whose phase function is known in closed form."""
    T = periods * 2 * L / k_drive
    return WallTrajectory(TrajectoryKind.LAWWU, L, T, delta_L, k_drive)


def custom(L: float, T_motion: float, func: Callable, delta_L: float = 0.0) -> WallTrajectory:
    return WallTrajectory(TrajectoryKind.CUSTOM, L, T_motion, delta_L, 1, func)
