"""Bogolubov coefficients, photon spectra and the energy sum rule.

Once the wall is at rest the out-modes are the static standing waves and the
coefficients

    beta_kl  = -(1/2L) sqrt(l/k) int_{t-L}^{t+L} exp(-i w_k R(tau) - i w_l tau) dtau
    alpha_kl =  (1/2L) sqrt(l/k) int_{t-L}^{t+L} exp(-i w_k R(tau) + i w_l tau) dtau

no longer depend on ``t``.  ``beta`` is stored as ``beta[k-1, l-1]`` with
``k`` the index attached to ``R``; the photon number of mode ``k`` is the
column sum ``n_k = sum_l |beta[l, k]|^2``.

Because the integrand is ``2L``-periodic past the motion, the whole matrix
follows from one FFT per row of uniform samples on the window.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import PreconditionError
from .observables import EnergyReport
from .phase import PhaseFunction, ResonantAnsatz, ResonantPhase, assemble_resonant, invert_phase
from .quadrature import integrate

__all__ = [
    "SpectrumResult",
    "bogolubov_direct",
    "alpha_direct",
    "bogolubov_resonant",
    "spectrum",
    "photon_numbers",
    "sum_rule_check",
    "N_FLOOR",
]

log = logging.getLogger(__name__)

N_FLOOR = 1e-12
# largest Fourier amplitude tolerated in the upper half band before doubling the samples
ALIAS_TOL = 1e-12
# rows between exact exponentials in the phase-factor recurrence
RESEED = 32


@dataclass
class SpectrumResult:
    """Truncated Bogolubov matrices and photon numbers.

    Attributes
    ----------
    beta, alpha : ndarray, shape (l_max, l_max)
        ``beta[k-1, l-1] = beta_kl``.
    n_k : ndarray, shape (l_max,)
        Photons in out-mode ``k``.
    N_total : float
        ``sum(n_k)``.
    tail_estimate : float
        Contribution of the last octave ``l_max/2 < max(k, l) <= l_max``.
    unitarity : ndarray
        ``sum_l |alpha_kl|^2 - |beta_kl|^2`` per row, summed over every
        frequency the sampling resolves (should be 1).
    """

    beta: np.ndarray
    alpha: np.ndarray
    n_k: np.ndarray
    N_total: float
    l_max: int
    tail_estimate: float
    t_eval: float
    omega: float
    n_samples: int
    unitarity: np.ndarray = field(repr=False, default=None)
    warning: Optional[str] = None

    @property
    def modes(self) -> np.ndarray:
        return np.arange(1, self.l_max + 1)

    def energy_above_casimir(self) -> float:
        """``sum_k n_k w_k``."""
        return float(np.sum(self.n_k * self.modes) * self.omega)


# ----------------------------------------------------------------------------
# direct quadrature
# ----------------------------------------------------------------------------

def _check_window(R: PhaseFunction, t: float):
    T = R.trajectory.T_motion
    if not t > T:
        raise PreconditionError(f"Bogolubov coefficients need t > T_motion = {T:g} (got t = {t:g})")
    a, b = t - R.L, t + R.L
    slack = 1e-12 * max(R.L, abs(t))
    if a < R.periodic_from - slack:
        raise PreconditionError(f"window start {a:g} precedes the periodic regime at {R.periodic_from:g}")
    lo, hi = R.domain
    if a < lo - slack or b > hi + slack:
        raise PreconditionError(f"window [{a:g}, {b:g}] is outside the phase domain {R.domain}")
    return a, b


def _overlap(R, t, k, l, sign, atol, rtol):
    if k < 1 or l < 1:
        raise PreconditionError("mode indices must be >= 1")
    a, b = _check_window(R, t)
    L, w = R.L, R.omega
    pts = np.concatenate([[a], R.breakpoints_in(a, b), [b]])
    ref = float(R(a))

    # phase measured from the window start keeps the arguments small
    def f(x):
        ph = -w * (k * (R.jet(x)[0] - ref) + sign * l * (x - a))
        return np.stack([np.cos(ph), np.sin(ph)])

    probe = np.linspace(a, b, 257)
    rmax = float(np.max(R.jet(probe)[1]))
    initial = [max(1, int(math.ceil((k * rmax + l) * w * (hi - lo) / 3.0))) for lo, hi in zip(pts[:-1], pts[1:])]
    val, _ = integrate(f, pts, atol=atol * 2 * L, rtol=rtol, initial=initial)
    # restore the dropped phase factors exactly (mod 2 pi)
    shift = np.exp(-1j * np.pi * math.fmod(k * math.fmod(ref / L, 2.0) + sign * l * math.fmod(a / L, 2.0), 2.0))
    return complex(val[0], val[1]) * shift * math.sqrt(l / k) / (2 * L)


def bogolubov_direct(R: PhaseFunction, t: float, k: int, l: int, atol=1e-13, rtol=1e-12) -> complex:
    """``beta_kl`` by adaptive quadrature over ``[t - L, t + L]``.

    Panels are split at the kinks of ``R`` and sized so that none spans more
    than a few radians of the local phase ``k w R' + l w``.
    """
    return -_overlap(R, t, k, l, +1, atol, rtol)


def alpha_direct(R: PhaseFunction, t: float, k: int, l: int, atol=1e-13, rtol=1e-12) -> complex:
    """Partner coefficient ``alpha_kl`` (``+ i w_l tau`` in the exponent)."""
    return _overlap(R, t, k, l, -1, atol, rtol)


# ----------------------------------------------------------------------------
# resonant form
# ----------------------------------------------------------------------------

def bogolubov_resonant(ansatz: ResonantAnsatz, k: int, l: int, form: str = "theta",
                       atol=1e-14, rtol=1e-12) -> complex:
    """``beta_kl`` of a resonant ansatz from its inner functions.

    With ``K`` pieces and ``u = tan(theta)`` on each piece,

        beta_kl = -(1 / K pi) sqrt(l/k) sum_j int_{-pi/2}^{pi/2} dtheta
                  exp(-(2i/K) [l (theta + pi j) + k (phi_j(theta) + pi j + c_j)])

    where ``phi_j = arctan(sigma_j(tan theta))`` and ``c_j`` are the
    continuity constants of the assembled phase function.

    ``form="ratio"`` evaluates the equivalent rational integrand
    ``((u+i)/(u-i))^l' ((sigma_j+i)/(sigma_j-i))^k' / (1+u^2)`` over ``u``;
    it needs ``K`` to divide both ``k`` and ``l``.
    """
    if k < 1 or l < 1:
        raise PreconditionError("mode indices must be >= 1")
    R = assemble_resonant(ansatz)
    K = ansatz.k
    consts = R._const + np.pi * R.winding
    if form == "theta":
        total = 0j
        for j, sig in enumerate(ansatz.sigmas):
            cuts = np.arctan(np.asarray(getattr(sig, "breakpoints", ()), dtype=float))
            pts = np.concatenate([[-np.pi / 2], np.sort(cuts), [np.pi / 2]])
            probe = np.linspace(-np.pi / 2, np.pi / 2, 257)
            rate = (2.0 / K) * (l + k * float(np.max(sig.angle_jet(probe)[1])))
            cj = consts[j]

            def f(theta, sig=sig, cj=cj, j=j):
                phi = sig.angle_jet(theta)[0]
                ph = -(2.0 / K) * (l * (theta + np.pi * j) + k * (phi + np.pi * j + cj))
                return np.stack([np.cos(ph), np.sin(ph)])

            initial = [max(1, int(math.ceil(rate * (b - a) / 3.0))) for a, b in zip(pts[:-1], pts[1:])]
            val, _ = integrate(f, pts, atol=atol, rtol=rtol, initial=initial)
            total += complex(val[0], val[1])
        return -total * math.sqrt(l / k) / (K * np.pi)
    if form == "ratio":
        if k % K or l % K:
            raise PreconditionError("ratio form needs the drive index to divide k and l")
        kp, lp = k // K, l // K
        total = 0j
        for j, sig in enumerate(ansatz.sigmas):
            cuts = np.asarray(getattr(sig, "breakpoints", ()), dtype=float)
            # integrate over u on the compactified variable to keep the range finite
            pts = np.concatenate([[-np.pi / 2], np.sort(np.arctan(cuts)), [np.pi / 2]])
            phase_c = np.exp(-2j * kp * consts[j])

            def f(theta, sig=sig):
                u = np.tan(theta)
                s = np.asarray(sig.jet(u)[0])
                with np.errstate(divide="ignore", invalid="ignore"):
                    zs = np.where(np.isfinite(s), (s + 1j) / (s - 1j), 1.0)
                    zu = np.where(np.isfinite(u), (u + 1j) / (u - 1j), 1.0)
                # du / (1 + u^2) = dtheta
                v = zu**lp * zs**kp
                return np.stack([v.real, v.imag])

            n0 = max(1, int(math.ceil(2 * (lp + kp * 8))))
            val, _ = integrate(f, pts, atol=atol, rtol=rtol, initial=[n0] * (pts.size - 1))
            total += complex(val[0], val[1]) * phase_c
        return (-1) ** (kp + lp + 1) * total * math.sqrt(lp / kp) / (K * np.pi)
    raise ValueError(f"unknown form {form!r}")


# ----------------------------------------------------------------------------
# FFT spectrum
# ----------------------------------------------------------------------------

def _unit_phase(m, x_over_L):
    """``exp(-i pi m x/L)`` with the argument reduced mod 2 before scaling."""
    return np.exp(-1j * np.pi * np.fmod(m * math.fmod(x_over_L, 2.0), 2.0))


class _Samples:
    """``R`` on nested uniform grids over the window ``[a, a + 2L)``.

    Doubling the grid only evaluates the new midpoints; coarser grids are
    strided views of the finest one.
    """

    def __init__(self, R, a):
        self.R, self.a = R, a
        self.N = 0
        self.v = None

    def _grid(self, idx, N):
        return self.a + 2 * self.R.L * idx / N

    def __call__(self, N):
        if self.v is None:
            self.v = self.R(self._grid(np.arange(N), N))
            self.N = N
        while self.N < N:
            n2 = 2 * self.N
            v = np.empty(n2)
            v[::2] = self.v
            v[1::2] = self.R(self._grid(np.arange(1, n2, 2), n2))
            self.v, self.N = v, n2
        return self.v[:: self.N // N]


class _RowSpectra:
    """Fourier coefficients of ``exp(-i w_r R)`` on the window, one row per ``r``.

    Each row is sampled on its own grid: it starts at ``4 r (max R' + 1)``
    points and doubles until its upper half band is below ``ALIAS_TOL``.
    Rows are cached, so raising ``l_max`` only computes the new rows.
    Coefficients above a row's Nyquist index are negligible by the same test
    and are taken as zero.
    """

    def __init__(self, R, a, rmax, n_cap, n_unit, chunk_bytes=1 << 26):
        self.R, self.a, self.rmax, self.n_cap, self.chunk_bytes = R, a, rmax, n_cap, chunk_bytes
        self.n_unit = n_unit
        self.samples = _Samples(R, a)
        self.pos, self.neg, self.unit, self.n_used = {}, {}, {}, {}
        self.warning = None

    def _start(self, r):
        return 1 << int(math.ceil(math.log2(max(256, 4 * r * (self.rmax + 1)))))

    def _phases(self, rows, dR):
        """``exp(-i w r dR)`` per row; runs of consecutive ``r`` use a product recurrence."""
        w = self.R.omega
        E = np.empty((rows.size, dR.size), dtype=complex)
        z = None
        for i, r in enumerate(rows):
            # exact exp at the start of a run and every RESEED rows, to bound rounding growth
            if i % RESEED == 0 or rows[i - 1] != r - 1:
                E[i] = np.exp(-1j * w * r * dR)
            else:
                if z is None:
                    z = np.exp(-1j * w * dR)
                np.multiply(E[i - 1], z, out=E[i])
        return E

    def _compute(self, rows, N, keep):
        L = self.R.L
        Rv = self.samples(N)
        ref = float(Rv[0])
        dR = Rv - ref
        F = np.fft.fft(self._phases(rows, dR), axis=1) / N
        F *= _unit_phase(rows, ref / L)[:, None]
        hi = np.max(np.abs(F[:, N // 4:3 * N // 4]), axis=1)
        unit = np.full(rows.size, np.nan)
        sel = rows <= self.n_unit
        if sel.any():
            c = np.arange(1, N // 2)
            P = np.abs(F[sel]) ** 2
            unit[sel] = np.sum((c[None, :] / rows[sel][:, None]) * (P[:, N - c] - P[:, c]), axis=1)
        C = min(keep, N // 2 - 1)
        # copies, so the cache does not pin the whole block
        return F[:, 1:C + 1].copy(), F[:, N - 1:N - C - 1:-1].copy(), unit, hi

    def ensure(self, l_max, keep):
        todo = [r for r in range(1, l_max + 1) if r not in self.pos]
        while todo:
            N = self._start(todo[0])
            if N > self.n_cap:
                N = self.n_cap
            # consecutive rows that start on the same grid, limited by memory
            step = max(1, self.chunk_bytes // (16 * N))
            block = [r for r in todo if min(self._start(r), self.n_cap) == N][:step]
            rows = np.asarray(block)
            while True:
                pos, neg, unit, hi = self._compute(rows, N, keep)
                ok = hi <= ALIAS_TOL
                if N >= self.n_cap:
                    if not ok.all():
                        self.warning = "sample count cap reached"
                    ok[:] = True
                for i in np.flatnonzero(ok):
                    r = int(rows[i])
                    self.pos[r], self.neg[r], self.unit[r], self.n_used[r] = pos[i], neg[i], unit[i], N
                rows = rows[~ok]
                if rows.size == 0:
                    break
                N *= 2
            todo = [r for r in todo if r not in self.pos]

    def matrices(self, l_max):
        L = self.R.L
        cols = np.arange(1, l_max + 1)
        col_shift = _unit_phase(cols, self.a / L)
        beta = np.zeros((l_max, l_max), dtype=complex)
        alpha = np.zeros((l_max, l_max), dtype=complex)
        for r in range(1, l_max + 1):
            C = min(l_max, self.pos[r].size)
            wt = np.sqrt(cols[:C] / r)
            beta[r - 1, :C] = -wt * col_shift[:C] * self.pos[r][:C]
            alpha[r - 1, :C] = wt * np.conj(col_shift[:C]) * self.neg[r][:C]
        return beta, alpha


def spectrum(R: PhaseFunction, t: float, l_max: int = 32, rel_tol: float = 1e-6,
             l_max_cap: int = 2048, n_samples_cap: int = 1 << 21, n_unitarity: int = 16) -> SpectrumResult:
    """Photon spectrum ``n_k`` with automatic truncation.

    ``l_max`` doubles until the last octave contributes less than
    ``rel_tol * max(N_total, N_FLOOR)``.  If ``l_max_cap`` is reached the
    result carries a truncation warning instead of raising.
    """
    a, _ = _check_window(R, t)
    if l_max < 2:
        raise PreconditionError("l_max must be at least 2")
    probe = np.linspace(a, a + 2 * R.L, 4097)
    rmax = float(np.max(R.jet(probe)[1]))
    rows = _RowSpectra(R, a, rmax, n_samples_cap, n_unitarity)
    warning = None
    while True:
        rows.ensure(l_max, l_max_cap)
        beta, alpha = rows.matrices(l_max)
        b2 = np.abs(beta) ** 2
        n_k = b2.sum(axis=0)
        N_total = float(n_k.sum())
        h = l_max // 2
        tail = float(b2[h:, :].sum() + b2[:h, h:].sum())
        if tail < rel_tol * max(N_total, N_FLOOR):
            break
        if 2 * l_max > l_max_cap:
            warning = f"truncation not converged at l_max={l_max}: tail {tail:.3g}"
            log.warning(warning)
            break
        l_max *= 2
    warning = warning or rows.warning
    if np.any(n_k < -1e-15):
        raise AssertionError("negative photon number")
    n_unit = min(n_unitarity, l_max)
    unit = np.array([rows.unit[r] for r in range(1, n_unit + 1)])
    n_used = max(rows.n_used[r] for r in range(1, l_max + 1))
    return SpectrumResult(beta, alpha, n_k, N_total, l_max, tail, float(t), R.omega, n_used,
                          unitarity=unit, warning=warning)


def photon_numbers(R: PhaseFunction, t: float, k_max: int = 16, rel_tol: float = 1e-10,
                   n_samples_cap: int = 1 << 22):
    """Photon numbers ``n_1 .. n_kmax`` summed over every ``R`` index at once.

    In the variable ``s = R(tau)`` the coefficients read
    ``|beta_lk|^2 = (l/k) |G_k[l]|^2`` with ``G_k`` the Fourier coefficients of
    ``exp(-i w_k R^-1(s))`` over one period.  One FFT per ``k`` then gives the
    whole column, so no truncation in ``l`` is needed.  The sample count
    doubles until the upper half band holds less than ``rel_tol`` of ``n_k``.

    Returns
    -------
    n_k : ndarray, shape (k_max,)
    unitarity : ndarray, shape (k_max,)
        ``sum_l |alpha_lk|^2 - |beta_lk|^2``, equal to one.
    n_samples : int
        Largest sample count used.
    """
    a, _ = _check_window(R, t)
    if k_max < 1:
        raise PreconditionError("k_max must be at least 1")
    L = R.L
    s0 = float(R(a))
    Q = _Samples(invert_phase(R), s0)
    probe = Q.R.jet(s0 + 2 * L * np.arange(4096) / 4096)[1]
    qmax = float(np.max(probe))
    n_k = np.empty(k_max)
    unit = np.empty(k_max)
    n_used = 0
    for k in range(1, k_max + 1):
        N = 1 << int(math.ceil(math.log2(max(256, 8 * k * (qmax + 1)))))
        while True:
            G = np.abs(np.fft.fft(np.exp(-1j * np.pi * np.fmod(k * (Q(N) - a) / L, 2.0))) / N) ** 2
            l = np.arange(1, N // 2)
            wb, wa = l * G[1:N // 2] / k, l * G[N - 1:N // 2:-1] / k
            nk = float(wb.sum())
            band = float(wb[N // 4:].sum() + wa[N // 4:].sum())
            if band <= rel_tol * max(nk, N_FLOOR):
                break
            if 2 * N > n_samples_cap:
                log.warning("photon_numbers: sample cap reached for k=%d (band %.3g)", k, band)
                break
            N *= 2
        n_k[k - 1], unit[k - 1] = nk, float(wa.sum() - nk)
        n_used = max(n_used, N)
    return n_k, unit, n_used


def sum_rule_check(spec: SpectrumResult, report: EnergyReport):
    """``(lhs, rhs, rel_err)`` for ``E = -w/24 + sum_k n_k w_k``."""
    w = spec.omega
    lhs = float(report.E_total)
    rhs = -w / 24 + spec.energy_above_casimir()
    rel = abs(lhs - rhs) / max(abs(lhs), w / 24)
    return lhs, rhs, rel
