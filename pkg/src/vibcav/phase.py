"""Moore phase functions R(tau) and their constructions.

Every backend exposes the same surface: ``R(tau)``, ``R.jet(tau)`` returning
``(R, R', R'', R''')``, ``R.domain``, ``R.breakpoints_in(a, b)`` and the
post-motion periodicity start ``R.periodic_from`` (for ``tau`` beyond it,
``R(tau + 2L) = R(tau) + 2L``).

Backends
--------
Identity
    ``R(tau) = tau``, the static standing-wave basis.
Grid
    Numerical solution for an arbitrary wall trajectory, obtained by walking
    the null characteristics back into the static seed interval ``[-L, L]``.
    Derivatives are carried along the walk with the chain rule.
SinusoidalAsymptotic, MoebiusMinimal, Resonant
    ``(2/omega_k) arctan(sigma_j(tan(omega_k tau / 2)))`` on increasing
    branches (:class:`ResonantPhase`).
LawWuExact
    Closed-form solution for the Law/Wu trajectory (:class:`LawWuExactPhase`).
Composed, Inverse
    ``outer(inner(tau))`` and the functional inverse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, MonotonicityError, PreconditionError, SolverError
from .moebius import MoebiusElement, compose_jets
from .trajectory import TrajectoryKind, WallTrajectory, static, validate_trajectory

__all__ = [
    "PhaseFunction",
    "IdentityPhase",
    "GridPhase",
    "ResonantPhase",
    "LawWuExactPhase",
    "ComposedPhase",
    "InversePhase",
    "ResonantAnsatz",
    "solve_phase",
    "build_sinusoidal_asymptotic",
    "build_lawwu",
    "lawwu_exact",
    "assemble_resonant",
    "invert_phase",
    "eval_mode",
    "moore_residual",
    "max_moore_residual",
]


def _scalar_or_array(x, like):
    return float(x) if np.ndim(like) == 0 else x


class PhaseFunction:
    """Common interface of all phase-function backends."""

    backend = "abstract"

    def __init__(self, L, domain=(-np.inf, np.inf), periodic_from=-np.inf,
                 pre_breaks=(), ref_breaks=(), ref_origin=None, trajectory=None):
        self.L = float(L)
        self.domain = (float(domain[0]), float(domain[1]))
        self.periodic_from = float(periodic_from)
        self._pre_breaks = np.sort(np.asarray(pre_breaks, dtype=float))
        self._ref_breaks = np.sort(np.asarray(ref_breaks, dtype=float))
        if ref_origin is None:
            ref_origin = self.periodic_from
        self._ref_origin = float(ref_origin)
        self.trajectory = trajectory if trajectory is not None else static(self.L)

    @property
    def omega(self) -> float:
        return np.pi / self.L

    def __call__(self, tau):
        return _scalar_or_array(self.jet(tau)[0], tau)

    def derivative(self, tau, n: int = 1):
        if n not in (0, 1, 2, 3):
            raise ValueError("derivative order must be 0..3")
        return _scalar_or_array(self.jet(tau)[n], tau)

    def jet(self, tau):
        """``(R, R', R'', R''')`` at ``tau``."""
        tau = np.asarray(tau, dtype=float)
        self.check_domain(tau)
        flat = tau.reshape(-1)
        out = self._jet(flat)
        return tuple(np.asarray(o, dtype=float).reshape(tau.shape) for o in out)

    def _jet(self, tau):
        raise NotImplementedError

    def check_domain(self, tau):
        lo, hi = self.domain
        if tau.size == 0:
            return
        slack = 1e-11 * max(1.0, self.L, np.nanmax(np.abs(tau)))
        if np.any(tau < lo - slack) or np.any(tau > hi + slack) or np.any(np.isnan(tau)):
            raise DomainError(
                f"{self.backend} phase function queried outside its domain "
                f"[{lo:.6g}, {hi:.6g}]: [{np.nanmin(tau):.6g}, {np.nanmax(tau):.6g}]"
            )

    def breakpoints_in(self, a: float, b: float) -> np.ndarray:
        """Sorted points in the open interval ``(a, b)`` where derivatives may jump."""
        out = [self._pre_breaks[(self._pre_breaks > a) & (self._pre_breaks < b)]]
        if self._ref_breaks.size:
            P = 2 * self.L
            n_hi = math.floor((b - self._ref_origin) / P) + 1
            if np.isfinite(self.periodic_from):
                n_lo = 0
            else:
                n_lo = math.floor((a - self._ref_origin) / P) - 1
            if n_hi >= n_lo:
                shifts = P * np.arange(n_lo, n_hi + 1)
                imgs = (self._ref_breaks[None, :] + shifts[:, None]).ravel()
                out.append(imgs[(imgs > a) & (imgs < b)])
        pts = np.unique(np.concatenate(out))
        return pts

    def sample(self, tau):
        """Rows ``(tau, R, R', R'', R''')`` for table output."""
        tau = np.asarray(tau, dtype=float)
        return np.column_stack([tau, *self.jet(tau)])

    def __repr__(self):
        return f"<{type(self).__name__} backend={self.backend} L={self.L:g} domain={self.domain}>"


class IdentityPhase(PhaseFunction):
    backend = "Identity"

    def __init__(self, L):
        super().__init__(L)

    def _jet(self, tau):
        z = np.zeros_like(tau)
        return tau.copy(), np.ones_like(tau), z, z.copy()


class ResonantPhase(PhaseFunction):
    """``R(tau) = (2/omega_k) [arctan(sigma_j(tan(omega_k tau/2))) + branch]``.

    The period ``2L`` is cut into ``k`` pieces between consecutive poles of
    ``tan(omega_k tau / 2)``; piece ``j`` (``j = 0..k-1``) covers
    ``tau in [(-1 + 2j) L/k, (1 + 2j) L/k)`` and uses ``sigma_j``.  Branch
    constants are fixed so that ``R`` is continuous and increasing.
    """

    def __init__(self, L, k, sigmas, backend="Resonant", winding=0, params=None):
        if len(sigmas) != k:
            raise PreconditionError(f"need k={k} inner functions, got {len(sigmas)}")
        self.k = int(k)
        self.sigmas = tuple(sigmas)
        self.backend = backend
        self.winding = int(winding)
        self.params = dict(params or {})
        first = self.sigmas[0]
        self.uniform = isinstance(first, MoebiusElement) and all(s == first for s in self.sigmas)
        self.omega_k = self.k * np.pi / L
        origin = -L / self.k
        if self.uniform:
            self._const = np.zeros(self.k)
            super().__init__(L, ref_origin=origin)
            return
        half = np.pi / 2
        const = [0.0]
        for j in range(1, self.k):
            right = float(self.sigmas[j - 1].angle_jet(np.array([half]))[0][0])
            left = float(self.sigmas[j].angle_jet(np.array([-half]))[0][0])
            const.append(const[-1] + right - left - np.pi)
        self._const = np.asarray(const)
        end = float(self.sigmas[-1].angle_jet(np.array([half]))[0][0]) + np.pi * (self.k - 1) + const[-1]
        start = float(self.sigmas[0].angle_jet(np.array([-half]))[0][0])
        if abs(end - (start + self.k * np.pi)) > 1e-9:
            raise PreconditionError(
                "inner functions do not close over one period: the assembled R "
                f"advances by {(end - start) * 2 / self.omega_k:.12g} instead of 2L"
            )
        breaks = [origin + 2 * L * j / self.k for j in range(self.k)]
        for j, s in enumerate(self.sigmas):
            for ub in getattr(s, "breakpoints", ()):
                breaks.append((2 / self.omega_k) * (math.atan(ub) + np.pi * j))
        super().__init__(L, ref_breaks=breaks, ref_origin=origin)

    @property
    def element(self) -> MoebiusElement:
        if not self.uniform:
            raise AttributeError("non-uniform resonant phase has no single element")
        return self.sigmas[0]

    def _jet(self, tau):
        wk = self.omega_k
        if self.uniform:
            psi, p1, p2, p3 = self.sigmas[0].angle_jet(0.5 * wk * tau)
            return (
                (2 / wk) * (psi + np.pi * self.winding),
                p1,
                0.5 * wk * p2,
                0.25 * wk * wk * p3,
            )
        L, k = self.L, self.k
        origin = -L / k
        n = np.floor((tau - origin) / (2 * L))
        s = tau - 2 * L * n
        j = np.clip(np.floor((s - origin) * k / (2 * L)).astype(int), 0, k - 1)
        theta = 0.5 * wk * s - np.pi * j
        out = [np.empty_like(tau) for _ in range(4)]
        for jj in np.unique(j):
            sel = j == jj
            phi = self.sigmas[jj].angle_jet(theta[sel])
            out[0][sel] = (2 / wk) * (phi[0] + np.pi * jj + self._const[jj] + np.pi * self.winding)
            out[1][sel] = phi[1]
            out[2][sel] = 0.5 * wk * phi[2]
            out[3][sel] = 0.25 * wk * wk * phi[3]
        out[0] += 2 * L * n
        return tuple(out)


class GridPhase(PhaseFunction):
    """Numerical Moore solution for an arbitrary subluminal trajectory.

    ``R(tau)`` for ``tau > L`` is found by solving ``t + L(t) = tau`` and
    stepping to ``u = t - L(t)`` with ``R(tau) = R(u) + 2L`` until ``u``
    lands in the seed interval where ``R`` is the identity.  Each step is the
    map ``g(tau) = u``; the accumulated map ``g^n`` carries a third-order jet,
    so ``R'``, ``R''`` and ``R'''`` are exact up to rounding.
    """

    backend = "Grid"
    _max_newton = 200

    def __init__(self, traj: WallTrajectory, t_final: float):
        self.traj = traj
        L = traj.L
        self._Lmin, self._Lmax = traj.length_bounds()
        T = traj.T_motion
        L_end = float(traj.derivatives(np.array([t_final]))[0][0])
        self.t_final = float(t_final)
        pre, ref = self._characteristic_breaks(traj, T)
        super().__init__(
            L,
            domain=(-L, t_final + L_end),
            periodic_from=T - L,
            pre_breaks=pre,
            ref_breaks=ref,
            trajectory=traj,
        )

    def _newton(self, target, sign):
        """Solve ``t + sign * L(t) = target`` (monotone because |L'| < 1)."""
        traj = self.traj
        target = np.asarray(target, dtype=float)
        if sign > 0:
            lo, hi = target - self._Lmax, target - self._Lmin
        else:
            lo, hi = target + self._Lmin, target + self._Lmax
        lo = lo - 1e-12 * traj.L
        hi = hi + 1e-12 * traj.L
        # one fixed-point step gives a start within O(|L'| dL) of the root
        t = target - sign * traj.value_slope(target - sign * traj.L)[0]
        t = np.clip(t, lo, hi)
        scale = np.maximum(traj.L, np.abs(target))
        idx = np.arange(target.size)
        f = np.zeros_like(t)
        for _ in range(self._max_newton):
            ti = t[idx]
            Lv, L1 = traj.value_slope(ti)
            fi = ti + sign * Lv - target[idx]
            f[idx] = fi
            lo[idx] = np.where(fi < 0, ti, lo[idx])
            hi[idx] = np.where(fi > 0, ti, hi[idx])
            tn = ti - fi / (1 + sign * L1)
            bad = ~((tn > lo[idx]) & (tn < hi[idx]))
            tn = np.where(bad, 0.5 * (lo[idx] + hi[idx]), tn)
            sc = scale[idx]
            done = (np.abs(tn - ti) <= 2e-16 * sc) | (fi == 0) | (hi[idx] - lo[idx] <= 4e-16 * sc)
            t[idx] = np.where(fi == 0, ti, tn)
            idx = idx[~done]
            if idx.size == 0:
                return t
        worst = int(idx[np.argmax(np.abs(f[idx]))])
        raise SolverError(
            f"root find for t from tau = t {'+' if sign > 0 else '-'} L(t) did not converge",
            tau=float(target[worst]),
        )

    def _characteristic_breaks(self, traj, T):
        """Kinks of R: forward characteristic images of the switch-on/off events."""
        if traj.kind is TrajectoryKind.STATIC or T == 0:
            return (), ()
        L = traj.L
        chain = [L]
        while chain[-1] <= T - L:
            t = float(self._newton(np.array([chain[-1]]), -1)[0])
            chain.append(t + float(traj.derivatives(np.array([t]))[0][0]))
        chain = np.asarray(chain)
        pre = chain[chain <= T - L]
        ref = np.unique(np.concatenate([chain[chain > T - L], [T + L]]))
        return pre, ref

    def _jet(self, tau):
        L = self.L
        T = self.traj.T_motion
        x = tau.copy()
        shift = np.zeros_like(tau)
        top = T + L
        beyond = x > top
        if beyond.any():
            p = np.ceil((x[beyond] - top) / (2 * L))
            x[beyond] -= 2 * L * p
            shift[beyond] += 2 * L * p
        G1 = np.ones_like(tau)
        G2 = np.zeros_like(tau)
        G3 = np.zeros_like(tau)
        active = np.nonzero(x > L)[0]
        while active.size:
            xa = x[active]
            t = self._newton(xa, +1)
            Lv, L1, L2, L3 = self.traj.derivatives(t)
            den = 1 + L1
            g1 = (1 - L1) / den
            g2 = -2 * L2 / den**3
            g3 = -2 * L3 / den**4 + 6 * L2**2 / den**5
            a1, a2, a3 = G1[active], G2[active], G3[active]
            G1[active], G2[active], G3[active] = compose_jets((None, g1, g2, g3), (None, a1, a2, a3))[1:]
            x[active] = t - Lv
            shift[active] += 2 * L
            active = active[x[active] > L]
        return x + shift, G1, G2, G3


class LawWuExactPhase(PhaseFunction):
    """Closed-form phase function of the Law/Wu wall motion.

    One reflection off the Law/Wu wall acts on ``u = tan(omega_k tau / 2)``
    as a fixed Moebius map (a translation for odd ``k``, a translation of
    ``1/u`` for even ``k``), so ``n`` reflections compose to
    ``sigma_n(u) = u / (1 - 2 n tan(eps) u)`` (even) or ``u + 2 n tan(eps)``
    (odd), with ``eps = omega_k delta_L / 2``.  The reflection count is
    constant on ``(L + 2L(n-1), L + 2Ln]``.
    """

    backend = "LawWuExact"

    def __init__(self, traj: WallTrajectory):
        if traj.kind is not TrajectoryKind.LAWWU:
            raise PreconditionError("LawWuExactPhase needs a LawWu trajectory")
        self.traj = traj
        L, T = traj.L, traj.T_motion
        self.omega_k = traj.omega_drive
        self.step = 2 * math.tan(self.omega_k * traj.delta_L / 2)
        self.n_max = int(round(T / (2 * L) + 0.5)) if T > 0 else 0
        breaks = L + 2 * L * np.arange(0, max(self.n_max, 0) + 1)
        breaks = np.unique(np.concatenate([breaks[breaks <= T + L], [T + L]])) if T > 0 else np.array([])
        super().__init__(
            L,
            domain=(-L, np.inf),
            periodic_from=T - L,
            pre_breaks=breaks[breaks <= T - L],
            ref_breaks=breaks[breaks > T - L],
            trajectory=traj,
        )

    def element(self, n: int) -> MoebiusElement:
        if self.traj.k_drive % 2 == 0:
            return MoebiusElement(1.0, 0.0, -n * self.step, 1.0)
        return MoebiusElement(1.0, n * self.step, 0.0, 1.0)

    def _jet(self, tau):
        L, T = self.L, self.traj.T_motion
        x = tau.copy()
        shift = np.zeros_like(tau)
        top = T + L
        beyond = x > top
        if beyond.any():
            p = np.ceil((x[beyond] - top) / (2 * L))
            x[beyond] -= 2 * L * p
            shift[beyond] += 2 * L * p
        n = np.maximum(np.ceil((x - L) / (2 * L)), 0).astype(int)
        out = [np.empty_like(tau) for _ in range(4)]
        wk = self.omega_k
        for nn in np.unique(n):
            sel = n == nn
            psi = self.element(int(nn)).angle_jet(0.5 * wk * x[sel])
            out[0][sel] = (2 / wk) * psi[0]
            out[1][sel] = psi[1]
            out[2][sel] = 0.5 * wk * psi[2]
            out[3][sel] = 0.25 * wk * wk * psi[3]
        out[0] += shift
        return tuple(out)


class ComposedPhase(PhaseFunction):
    """``tau -> outer(inner(tau))`` with chain-rule derivatives."""

    backend = "Composed"

    def __init__(self, outer: PhaseFunction, inner: PhaseFunction):
        if abs(outer.L - inner.L) > 1e-12 * inner.L:
            raise DomainError("composed phase functions must share the cavity length")
        if np.isfinite(outer.domain[0]) or np.isfinite(outer.domain[1]):
            lo, hi = inner(np.array(inner.domain))
            if lo < outer.domain[0] or hi > outer.domain[1]:
                raise DomainError("range of the inner phase function exceeds the outer domain")
        self.outer, self.inner = outer, inner
        super().__init__(
            inner.L,
            domain=inner.domain,
            periodic_from=max(inner.periodic_from, outer.periodic_from),
            trajectory=inner.trajectory,
        )

    def _jet(self, tau):
        ij = self.inner._jet(tau)
        oj = self.outer._jet(ij[0])
        return compose_jets(oj, ij)

    def breakpoints_in(self, a, b):
        pts = [self.inner.breakpoints_in(a, b)]
        ra, rb = self.inner(np.array([a, b]))
        ob = self.outer.breakpoints_in(ra, rb)
        if ob.size:
            pts.append(invert_phase(self.inner)(ob))
        return np.unique(np.concatenate(pts))


class InversePhase(PhaseFunction):
    """Numerical inverse by bracketed Newton iteration on a monotone table."""

    backend = "Inverse"

    def __init__(self, base: PhaseFunction, table_density: int = 512):
        self.base = base
        L = base.L
        lo, hi = base.domain
        self._periodic = not np.isfinite(base.periodic_from)
        if self._periodic:
            a = -L
            b = L
        else:
            a = lo
            b = hi if np.isfinite(hi) else base.periodic_from + 2 * L
            b = max(b, a + 2 * L) if not np.isfinite(hi) else b
        n = max(2049, int(table_density * (b - a) / (2 * L)) + 1)
        self._tau = np.linspace(a, b, n)
        self._R = base(self._tau)
        if np.any(np.diff(self._R) <= 0):
            raise MonotonicityError("cannot invert a phase function that is not strictly increasing")
        if self._periodic:
            dom = (-np.inf, np.inf)
        else:
            dom = (float(base(lo)), float(base(hi)) if np.isfinite(hi) else np.inf)
        super().__init__(L, domain=dom, periodic_from=-np.inf if self._periodic else dom[0] - 1.0,
                         trajectory=base.trajectory)
        if not self._periodic:
            self.periodic_from = float(base(base.periodic_from)) if base.periodic_from > lo else dom[0]

    def _solve(self, s):
        P = 2 * self.L
        Rt, Tt = self._R, self._tau
        shift = np.zeros_like(s)
        if self._periodic or not np.isfinite(self.base.domain[1]):
            top = Rt[-1]
            if self._periodic:
                p = np.floor((s - Rt[0]) / P)
            else:
                p = np.where(s > top, np.ceil((s - top) / P), 0.0)
            s = s - P * p
            shift = P * p
        i = np.clip(np.searchsorted(Rt, s) - 1, 0, Rt.size - 2)
        lo, hi = Tt[i], Tt[i + 1]
        flo, fhi = Rt[i], Rt[i + 1]
        t = lo + (s - flo) * (hi - lo) / (fhi - flo)
        scale = np.maximum(self.L, np.abs(s))
        idx = np.arange(t.size)
        for _ in range(60):
            r, r1 = self.base._jet(t[idx])[:2]
            f = r - s[idx]
            lo[idx] = np.where(f < 0, t[idx], lo[idx])
            hi[idx] = np.where(f > 0, t[idx], hi[idx])
            tn = t[idx] - f / r1
            bad = ~((tn >= lo[idx]) & (tn <= hi[idx]))
            tn = np.where(bad, 0.5 * (lo[idx] + hi[idx]), tn)
            tol = 2e-15 * np.maximum(self.L, np.abs(tn))
            done = ((np.abs(tn - t[idx]) <= tol) | (np.abs(f) <= 1e-15 * scale[idx])
                    | (hi[idx] - lo[idx] <= tol))
            t[idx] = np.where(f == 0, t[idx], tn)
            idx = idx[~done]
            if idx.size == 0:
                break
        return t + shift

    def _jet(self, s):
        tau = self._solve(s)
        _, r1, r2, r3 = self.base._jet(tau)
        return tau, 1 / r1, -r2 / r1**3, -r3 / r1**4 + 3 * r2**2 / r1**5

    def breakpoints_in(self, a, b):
        ta, tb = self(np.array([a, b]))
        bp = self.base.breakpoints_in(ta, tb)
        return np.unique(self.base(bp)) if bp.size else bp


# ----------------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------------

@dataclass
class ResonantAnsatz:
    """Inner functions ``sigma_j`` on the ``k`` pieces of one period ``2L``."""

    k: int
    sigmas: Sequence
    L: float
    label: str = "Resonant"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.sigmas) != self.k:
            raise PreconditionError(f"need k={self.k} inner functions, got {len(self.sigmas)}")

    @property
    def omega(self) -> float:
        return np.pi / self.L


def solve_phase(traj: WallTrajectory, t_final: float, tol: Optional[float] = None,
                n_probes: int = 256) -> GridPhase:
    """Grid-backed Moore solution on ``[-L, t_final + L(t_final)]``.

    The construction is exact up to the root-finding tolerance; the Moore
    residual is probed at ``n_probes`` points and must stay below ``tol``
    (default ``1e-10 L``).
    """
    bad = validate_trajectory(traj)
    if bad:
        raise PreconditionError("invalid trajectory: " + "; ".join(map(str, bad)))
    if not t_final > 0:
        raise PreconditionError("t_final must be positive")
    tol = 1e-10 * traj.L if tol is None else tol
    if traj.kind is TrajectoryKind.STATIC:
        R = GridPhase(traj, t_final)
        return R
    R = GridPhase(traj, t_final)
    if n_probes:
        res = max_moore_residual(R, traj, n_probes=n_probes, rng=np.random.default_rng(0))
        if res > tol:
            raise SolverError(f"Moore residual {res:.3g} exceeds tolerance {tol:.3g}")
    return R


def zeta_factor(traj: WallTrajectory, t_elapsed: float, sign: Optional[int] = None) -> float:
    """Squeeze factor ``exp(s omega_k t delta_L / L)`` of the asymptotic sinusoidal solution."""
    s = (-1) ** (traj.k_drive + 1) if sign is None else sign
    return math.exp(s * traj.omega_drive * t_elapsed * traj.delta_L / traj.L)


def build_sinusoidal_asymptotic(traj: WallTrajectory, t_elapsed: float,
                                sign: Optional[int] = None) -> ResonantPhase:
    """Late-time sinusoidal phase function ``(2/omega_k) arctan(zeta tan(omega_k tau/2))``.

    ``zeta`` is frozen at ``t_elapsed``.  ``sign`` overrides the default
    exponent sign ``(-1)**(k+1)``.
    """
    if traj.kind is not TrajectoryKind.SINUSOIDAL:
        raise PreconditionError("build_sinusoidal_asymptotic needs a Sinusoidal trajectory")
    zeta = zeta_factor(traj, t_elapsed, sign)
    m = MoebiusElement.diagonal(zeta)
    return ResonantPhase(traj.L, traj.k_drive, [m] * traj.k_drive,
                         backend="SinusoidalAsymptotic",
                         params={"zeta": zeta, "k": traj.k_drive, "t_elapsed": t_elapsed})


def build_lawwu(traj: WallTrajectory, t_elapsed: float, time_reading: str = "elapsed") -> ResonantAnsatz:
    """Resonant ansatz of the Law/Wu motion with the time parameter ``t``.

    ``sigma(u) = u / (1 - (t/L - 1) u tan(omega_k delta_L / 2))`` for even
    ``k`` and ``u + (t/L - 1) tan(omega_k delta_L / 2)`` for odd ``k``.

    ``time_reading`` selects what ``t`` means: ``"elapsed"`` uses
    ``t_elapsed``; ``"duration"`` uses the motion duration ``traj.T_motion``.
    For ``T_motion`` a multiple of ``2L`` the ansatz with
    ``t_elapsed = T_motion + L`` is the exact post-motion solution.
    """
    if traj.kind is not TrajectoryKind.LAWWU:
        raise PreconditionError("build_lawwu needs a LawWu trajectory")
    if time_reading == "elapsed":
        t = t_elapsed
    elif time_reading == "duration":
        t = traj.T_motion
    else:
        raise ValueError(f"unknown time_reading {time_reading!r}")
    p = (t / traj.L - 1) * math.tan(traj.omega_drive * traj.delta_L / 2)
    if traj.k_drive % 2 == 0:
        m = MoebiusElement(1.0, 0.0, -p, 1.0)
    else:
        m = MoebiusElement(1.0, p, 0.0, 1.0)
    return ResonantAnsatz(traj.k_drive, [m] * traj.k_drive, traj.L, label="LawWuExact",
                          params={"p": p, "t": t})


def lawwu_exact(traj: WallTrajectory) -> LawWuExactPhase:
    return LawWuExactPhase(traj)


def assemble_resonant(ansatz: ResonantAnsatz, n_check: int = 257) -> ResonantPhase:
    """Continuous increasing phase function from a resonant ansatz."""
    theta = np.linspace(-np.pi / 2, np.pi / 2, n_check)[1:-1]
    u = np.tan(theta)
    for j, s in enumerate(ansatz.sigmas):
        d1 = np.asarray(s.jet(u)[1])
        if np.any(~(d1 > 0)):
            raise PreconditionError(f"inner function sigma_{j} is not increasing")
    return ResonantPhase(ansatz.L, ansatz.k, list(ansatz.sigmas), backend=ansatz.label,
                         params=dict(ansatz.params))


def invert_phase(R: PhaseFunction) -> PhaseFunction:
    """Functional inverse; closed form for identity and uniform Moebius phases."""
    if isinstance(R, IdentityPhase):
        return R
    if isinstance(R, InversePhase):
        return R.base
    if isinstance(R, ResonantPhase) and R.uniform:
        m = R.element
        minv = m.inverse()
        probe = ResonantPhase(R.L, R.k, [minv] * R.k)
        # align the branch so that R^-1(R(0)) = 0
        x0 = 0.5 * R.omega_k * float(R(0.0))
        back = float(minv.angle(x0))
        w = -int(round(back / np.pi))
        return ResonantPhase(R.L, R.k, [minv] * R.k, backend=R.backend, winding=w,
                             params={**R.params, "inverse_of": R.backend})
    return InversePhase(R)


def eval_mode(R: PhaseFunction, k: int, x, t):
    """Mode function ``(4 pi k)^(-1/2) [exp(-i w_k R(t+x)) - exp(-i w_k R(t-x))]``."""
    if k < 1:
        raise ValueError("mode index must be >= 1")
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    Lt = R.trajectory.derivatives(t)[0]
    if np.any(x < 0) or np.any(x > Lt * (1 + 1e-12)):
        raise DomainError("mode evaluated outside the cavity 0 <= x <= L(t)")
    wk = k * R.omega
    val = (np.exp(-1j * wk * R.jet(t + x)[0]) - np.exp(-1j * wk * R.jet(t - x)[0])) / math.sqrt(4 * np.pi * k)
    return complex(val) if val.ndim == 0 else val


def moore_residual(R: PhaseFunction, traj: WallTrajectory, t):
    """``R(t + L(t)) - R(t - L(t)) - 2L``."""
    t = np.asarray(t, dtype=float)
    Lt = traj.derivatives(t)[0]
    res = R.jet(t + Lt)[0] - R.jet(t - Lt)[0] - 2 * traj.L
    return float(res) if res.ndim == 0 else res


def max_moore_residual(R: PhaseFunction, traj: Optional[WallTrajectory] = None, n_probes: int = 1000,
                       rng=None, t_range=None) -> float:
    """Largest ``|Moore residual|`` over random probe times inside the domain."""
    traj = traj if traj is not None else R.trajectory
    rng = np.random.default_rng(rng)
    if t_range is None:
        lo, hi = R.domain
        Lmin, Lmax = traj.length_bounds()
        a = lo + Lmax if np.isfinite(lo) else -4 * traj.L
        b = hi - Lmax if np.isfinite(hi) else max(a, traj.T_motion) + 8 * traj.L
        t_range = (a, b)
    t = rng.uniform(t_range[0], t_range[1], size=n_probes)
    return float(np.max(np.abs(moore_residual(R, traj, t))))
