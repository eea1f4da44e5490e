import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vibcav.errors import ParameterError
from vibcav.moebius import (
    MoebiusElement,
    compose,
    conformal_compose,
    exact_flow,
    infinitesimal_flow,
    inverse,
    minimal_phase,
    minimal_T_squared,
    random_element,
)
from vibcav.observables import t_constraint, total_energy
from vibcav.phase import IdentityPhase
from vibcav.trajectory import static

PI = np.pi
I = MoebiusElement.identity()


@st.composite
def elements(draw):
    s = draw(st.floats(-1.5, 1.5))
    a = draw(st.floats(-PI, PI))
    b = draw(st.floats(-PI, PI))
    ca, sa, cb, sb = math.cos(a), math.sin(a), math.cos(b), math.sin(b)
    mat = np.array([[ca, -sa], [sa, ca]]) @ np.diag([math.exp(s), math.exp(-s)]) @ np.array([[cb, -sb], [sb, cb]])
    return MoebiusElement.from_matrix(mat)


def test_normalisation_and_rejection():
    m = MoebiusElement(2.0, 0.0, 0.0, 2.0)
    assert m.det == pytest.approx(1.0)
    assert m.A == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        MoebiusElement(0.0, 1.0, 1.0, 0.0)


def test_small_group_examples():
    m = MoebiusElement(1.3, 0.2, -0.4, 0.7)
    assert compose(I, m).allclose(m)
    assert compose(m, inverse(m)).allclose(I)
    z, x = 2.5, 0.3
    d = compose(MoebiusElement.diagonal(z), MoebiusElement.diagonal(x))
    assert d.allclose(MoebiusElement.diagonal(z * x))
    assert inverse(I).allclose(I)
    assert inverse(MoebiusElement(1.0, 0.7, 0.0, 1.0)).allclose(MoebiusElement(1.0, -0.7, 0.0, 1.0))


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), elements())
def test_group_axioms(a, b, c):
    assert compose(compose(a, b), c).allclose(compose(a, compose(b, c)), atol=1e-13)
    assert compose(a, I).allclose(a, atol=1e-14)
    assert compose(a, inverse(a)).allclose(I, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(elements(), elements())
def test_action_is_a_homomorphism(a, b):
    u = np.linspace(-3, 3, 13)
    lhs = compose(a, b)(u)
    rhs = a(b(u))
    ok = np.isfinite(lhs) & np.isfinite(rhs) & (np.abs(rhs) < 1e6)
    assert np.allclose(lhs[ok], rhs[ok], rtol=1e-9, atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(elements(), elements())
def test_minimal_phase_representation(a, b):
    tau = np.linspace(-2.9, 2.9, 41)
    lhs = minimal_phase(compose(a, b), 1.0)(tau)
    rhs = minimal_phase(a, 1.0)(minimal_phase(b, 1.0)(tau))
    # equal up to a shift by a whole period 2L
    d = (lhs - rhs) / (2 * PI)
    assert np.allclose(d, np.round(d[0]), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(elements())
def test_minimal_phase_increasing_and_quasi_periodic(m):
    R = minimal_phase(m, 1.0)
    tau = np.linspace(-10, 10, 2001)
    r, r1, _, _ = R.jet(tau)
    assert np.all(r1 > 0)
    assert np.all(np.diff(r) > 0)
    assert np.allclose(R(tau + 2 * PI), r + 2 * PI, atol=1e-10)


def test_minimal_phase_identity_and_slope():
    R = minimal_phase(I, 1.0)
    tau = np.linspace(-7, 7, 51)
    assert np.allclose(R(tau), tau, atol=1e-14)
    zeta = math.exp(-PI)
    Rz = minimal_phase(MoebiusElement.diagonal(zeta), 1.0)
    assert Rz.derivative(0.0) == pytest.approx(zeta, rel=1e-14)


def test_minimal_T_squared_examples():
    tau = np.linspace(-5, 5, 17)
    assert np.allclose(minimal_T_squared(I, 1.0, tau), 1.0)
    m = MoebiusElement(math.sqrt(2), 0.0, 0.0, 1 / math.sqrt(2))
    assert np.allclose(minimal_T_squared(m, 1.0, tau), 1.25 + 0.75 * np.cos(tau), atol=1e-14)


@settings(max_examples=15, deadline=None)
@given(elements())
def test_minimal_T_squared_is_inverse_slope(m):
    # T^2 = 1 / (d R^-1 / ds), i.e. T_min^2(R(tau)) = R'(tau)
    R = minimal_phase(m, 1.0)
    tau = np.linspace(-3, 3, 25)
    assert np.allclose(minimal_T_squared(m, 1.0, R(tau)), R.derivative(tau), rtol=1e-10)
    assert np.all(minimal_T_squared(m, 1.0, np.linspace(-4, 4, 101)) > 0)


def test_minimal_constraint_and_energy():
    rng = np.random.default_rng(11)
    tr = static(PI)
    for _ in range(5):
        R = minimal_phase(random_element(rng, 1.5), 1.0)
        assert t_constraint(R, tr, 0.7) == pytest.approx(1.0, abs=1e-10)
        assert total_energy(R, tr, 0.7).E_total == pytest.approx(-1 / 24, abs=1e-10)


def test_conformal_compose_trivial_cases():
    R = IdentityPhase(PI)
    m = MoebiusElement(1.1, 0.4, -0.2, 0.9)
    tau = np.linspace(-4, 4, 33)
    assert np.allclose(conformal_compose(R, I)(tau), tau, atol=1e-13)
    assert np.allclose(conformal_compose(R, m)(tau), minimal_phase(m, 1.0)(tau), atol=1e-13)


def test_infinitesimal_flow_boundaries():
    t = np.linspace(-2, 2, 9)
    tt, xx = infinitesimal_flow(0.0, 0.0, 0.0, t, 0.3, 1.0)
    assert np.allclose(tt, t) and np.allclose(xx, 0.3)
    _, x0 = infinitesimal_flow(0.1, 0.2, -0.05, t, 0.0, 1.0)
    assert np.allclose(x0, 0.0)
    _, xL = infinitesimal_flow(0.0, 0.2, 0.2, t, PI, 1.0)
    assert np.allclose(xL, PI, atol=1e-14)


def test_exact_flow_preserves_walls():
    m = MoebiusElement(1.2, 0.3, -0.5, 0.7)
    t = np.linspace(-3, 3, 11)
    _, x0 = exact_flow(m, t, 0.0, 1.0)
    _, xL = exact_flow(m, t, PI, 1.0)
    assert np.allclose(x0, 0.0, atol=1e-13)
    assert np.allclose(xL, PI, atol=1e-12)


def test_flow_first_order():
    a, b, c = 0.3, -0.2, 0.5
    t = np.array([0.3, 1.1, -0.7])
    x = np.array([0.4, 2.0, 1.3])
    errs = []
    for eps in (1e-2, 5e-3):
        m = MoebiusElement(1 + eps * a, eps * b, eps * c, 1 - eps * a)
        te, xe = exact_flow(m, t, x, 1.0)
        ti, xi = infinitesimal_flow(eps * a, eps * b, eps * c, t, x, 1.0)
        errs.append(max(np.max(np.abs(te - ti)), np.max(np.abs(xe - xi))))
    # error shrinks quadratically
    assert errs[1] < 0.3 * errs[0]
    assert errs[0] < 1e-3
