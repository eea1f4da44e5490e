"""SL(2,R) toolkit: Moebius elements, inner functions sigma, minimal solutions.

A Moebius element ``(A, B, C, D)`` with ``AD - BC = 1`` acts on the real line as
``sigma(u) = (A u + B) / (C u + D)``.  Conjugated by ``u = tan(omega tau / 2)``
it becomes a phase function of the static cavity (a "minimal" solution), and
these phase functions compose exactly like the matrices do.

Every inner function below exposes two jets:

``jet(u)``
    ``(sigma, sigma', sigma'', sigma''')`` in the tangent variable ``u``.
``angle_jet(theta)``
    the continuous lift ``psi`` of ``arctan(sigma(tan(theta)))`` together with
    its first three derivatives in ``theta``.  Phase functions are assembled
    from this lift, so it must be continuous and increasing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ParameterError

__all__ = [
    "MoebiusElement",
    "PiecewiseMoebius",
    "CallableSigma",
    "compose",
    "inverse",
    "random_element",
    "compose_jets",
    "minimal_phase",
    "minimal_T_squared",
    "conformal_compose",
    "infinitesimal_flow",
    "exact_flow",
]


def compose_jets(outer, inner):
    """Third-order jet of ``f(g(x))`` from the jet of ``f`` at ``g(x)`` and of ``g`` at ``x``."""
    f0, f1, f2, f3 = outer
    g0, g1, g2, g3 = inner
    return (
        f0,
        f1 * g1,
        f2 * g1**2 + f1 * g2,
        f3 * g1**3 + 3 * f2 * g1 * g2 + f1 * g3,
    )


def _wrap(a):
    return (a + np.pi) % (2 * np.pi) - np.pi


@dataclass(frozen=True)
class MoebiusElement:
    """An element of SL(2,R), normalised to unit determinant on construction."""

    A: float
    B: float
    C: float
    D: float

    def __post_init__(self):
        det = self.A * self.D - self.B * self.C
        if not det > 0:
            raise ParameterError(
                f"Moebius element needs AD - BC > 0 (orientation preserving), got {det}"
            )
        if det != 1.0:
            s = math.sqrt(det)
            for name in "ABCD":
                object.__setattr__(self, name, float(getattr(self, name)) / s)
        for name in "ABCD":
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def identity(cls) -> "MoebiusElement":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diagonal(cls, zeta: float) -> "MoebiusElement":
        """``sigma(u) = zeta * u``."""
        r = math.sqrt(zeta)
        return cls(r, 0.0, 0.0, 1.0 / r)

    @classmethod
    def from_matrix(cls, mat) -> "MoebiusElement":
        (a, b), (c, d) = np.asarray(mat, dtype=float)
        return cls(a, b, c, d)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.C, self.D]])

    @property
    def det(self) -> float:
        return self.A * self.D - self.B * self.C

    is_moebius = True
    breakpoints = ()

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        return (self.A * u + self.B) / (self.C * u + self.D)

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        return compose(self, other)

    def inverse(self) -> "MoebiusElement":
        return inverse(self)

    def allclose(self, other: "MoebiusElement", atol: float = 1e-12) -> bool:
        """Equality in PSL(2,R): ``m`` and ``-m`` act identically."""
        a, b = self.matrix, other.matrix
        return bool(np.allclose(a, b, atol=atol) or np.allclose(a, -b, atol=atol))

    def jet(self, u):
        u = np.asarray(u, dtype=float)
        den = self.C * u + self.D
        return (
            (self.A * u + self.B) / den,
            1.0 / den**2,
            -2 * self.C / den**3,
            6 * self.C**2 / den**4,
        )

    def schwarzian(self, u):
        return np.zeros_like(np.asarray(u, dtype=float))

    # coefficients of Q(x) = alpha + beta cos 2x + gamma sin 2x, psi'(x) = 1/Q(x)
    def _q_coeffs(self):
        A, B, C, D = self.A, self.B, self.C, self.D
        return (
            0.5 * (A * A + B * B + C * C + D * D),
            0.5 * (B * B + D * D - A * A - C * C),
            A * B + C * D,
        )

    def angle(self, x):
        """Continuous increasing lift of ``arctan(sigma(tan x))`` with ``psi(x + pi) = psi(x) + pi``."""
        x = np.asarray(x, dtype=float)
        c, s = np.cos(x), np.sin(x)
        v1 = self.D * c + self.C * s
        v2 = self.A * s + self.B * c
        raw = np.arctan2(-v1 * s + v2 * c, v1 * c + v2 * s)
        d0 = math.atan2(self.B, self.D)
        return x + d0 + _wrap(raw - d0)

    def angle_jet(self, x):
        x = np.asarray(x, dtype=float)
        al, be, ga = self._q_coeffs()
        c2, s2 = np.cos(2 * x), np.sin(2 * x)
        q = al + be * c2 + ga * s2
        q1 = 2 * (ga * c2 - be * s2)
        q2 = -4 * (be * c2 + ga * s2)
        return (
            self.angle(x),
            1.0 / q,
            -q1 / q**2,
            -q2 / q**2 + 2 * q1**2 / q**3,
        )


def compose(m1: MoebiusElement, m2: MoebiusElement) -> MoebiusElement:
    """``m1 o m2`` as a matrix product (``m2`` acts first)."""
    return MoebiusElement.from_matrix(m1.matrix @ m2.matrix)


def inverse(m: MoebiusElement) -> MoebiusElement:
    return MoebiusElement(m.D, -m.B, -m.C, m.A)


def _rotation(phi):
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def random_element(rng: np.random.Generator, max_squeeze: float = 1.0) -> MoebiusElement:
    """Random SL(2,R) element ``K(a) diag(e^s, e^-s) K(b)`` with ``|s| <= max_squeeze``."""
    s = rng.uniform(-max_squeeze, max_squeeze)
    a, b = rng.uniform(-np.pi, np.pi, size=2)
    mat = _rotation(a) @ np.diag([math.exp(s), math.exp(-s)]) @ _rotation(b)
    return MoebiusElement.from_matrix(mat)


class PiecewiseMoebius:
    """Inner function equal to different Moebius elements on consecutive u-ranges.

    ``switches`` are the u-values where the active element changes; the
    elements must agree there in value and slope for the assembled phase
    function to stay continuous and increasing.
    """

    is_moebius = True

    def __init__(self, switches: Sequence[float], elements: Sequence[MoebiusElement]):
        if len(elements) != len(switches) + 1:
            raise ParameterError("need exactly one more element than switch points")
        self.switches = np.asarray(sorted(switches), dtype=float)
        self.elements = tuple(elements)
        self.breakpoints = tuple(self.switches)
        thetas = np.arctan(self.switches)
        offs = [0.0]
        for i, th in enumerate(thetas):
            left = float(self.elements[i].angle(th)) + offs[-1]
            offs.append(left - float(self.elements[i + 1].angle(th)))
        self._offsets = np.asarray(offs)

    def _piece(self, u):
        return np.searchsorted(self.switches, u, side="right")

    def _dispatch(self, x, idx, fn, n_out=4):
        out = [np.empty(np.shape(x)) for _ in range(n_out)]
        for i, el in enumerate(self.elements):
            sel = idx == i
            if sel.any():
                vals = fn(el, x[sel])
                for o, v in zip(out, vals):
                    o[sel] = v
        return out

    def __call__(self, u):
        return self.jet(u)[0]

    def jet(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        return tuple(self._dispatch(u, self._piece(u), lambda el, v: el.jet(v)))

    def schwarzian(self, u):
        return np.zeros_like(np.asarray(u, dtype=float))

    def angle_jet(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        # x lies in (-pi/2, pi/2) for the resonant assembly; tan is monotone there
        idx = np.searchsorted(np.arctan(self.switches), x, side="right")
        out = self._dispatch(x, idx, lambda el, v: el.angle_jet(v))
        out[0] = out[0] + self._offsets[idx]
        return tuple(out)


class CallableSigma:
    """Increasing inner function given by user callables for its derivatives.

    The function must map the real line onto itself (``sigma(+-inf) = +-inf``)
    so that ``arctan(sigma(tan x))`` spans exactly one branch.
    """

    is_moebius = False
    breakpoints = ()

    def __init__(self, f: Callable, d1: Callable, d2: Callable, d3: Callable):
        self.f, self.d1, self.d2, self.d3 = f, d1, d2, d3

    def __call__(self, u):
        return self.f(np.asarray(u, dtype=float))

    def jet(self, u):
        u = np.asarray(u, dtype=float)
        return self.f(u), self.d1(u), self.d2(u), self.d3(u)

    def schwarzian(self, u):
        _, s1, s2, s3 = self.jet(u)
        return s3 / s1 - 1.5 * (s2 / s1) ** 2

    def angle_jet(self, x):
        x = np.asarray(x, dtype=float)
        u = np.tan(x)
        sec2 = 1 + u * u
        tan_jet = (u, sec2, 2 * u * sec2, sec2 * (2 + 6 * u * u))
        s = compose_jets(self.jet(u), tan_jet)
        w = 1 + s[0] ** 2
        atan_jet = (np.arctan(s[0]), 1 / w, -2 * s[0] / w**2, (6 * s[0] ** 2 - 2) / w**3)
        return compose_jets(atan_jet, s)


def minimal_T_squared(m: MoebiusElement, omega: float, tau):
    """Closed-form ``T_min(tau)^2`` of a minimal-energy solution."""
    A, B, C, D = m.A, m.B, m.C, m.D
    tau = np.asarray(tau, dtype=float)
    return (
        0.5 * (A * A + B * B + C * C + D * D)
        + 0.5 * (A * A + B * B - C * C - D * D) * np.cos(omega * tau)
        - (A * C + B * D) * np.sin(omega * tau)
    )


def minimal_phase(m: MoebiusElement, omega: float):
    """Phase function ``(2/omega) arctan(sigma(tan(omega tau / 2)))`` on increasing branches."""
    from .phase import ResonantPhase

    return ResonantPhase(np.pi / omega, 1, [m], backend="MoebiusMinimal")


def conformal_compose(R, m: MoebiusElement):
    """Apply the SL(2,R) symmetry generated by ``m`` to the phase function ``R``.

    The result is ``tau -> R_min(R(tau))`` with ``R_min = minimal_phase(m)``:
    the minimal solution acts on the values of ``R``.  This is the ordering
    that leaves the energy profile (and every photon number) unchanged.
    """
    from .phase import ComposedPhase

    return ComposedPhase(minimal_phase(m, R.omega), R)


def infinitesimal_flow(a: float, b: float, c: float, t, x, omega: float):
    """First-order coordinate change generated by ``(1 + a, b; c, 1 - a)``."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    wt, wx = omega * t, omega * x
    dwt = (b - c) + (b + c) * np.cos(wt) * np.cos(wx) + 2 * a * np.sin(wt) * np.cos(wx)
    dwx = -(b + c) * np.sin(wt) * np.sin(wx) + 2 * a * np.cos(wt) * np.sin(wx)
    return t + dwt / omega, x + dwx / omega


def exact_flow(m: MoebiusElement, t, x, omega: float):
    """Finite transformation ``t +- x -> R_min(t +- x)`` in ``(t, x)`` form."""
    R = minimal_phase(m, omega)
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    up, dn = R(t + x), R(t - x)
    return 0.5 * (up + dn), 0.5 * (up - dn)
