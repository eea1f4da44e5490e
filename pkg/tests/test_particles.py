import numpy as np
import pytest

from vibcav.errors import PreconditionError
from vibcav.moebius import MoebiusElement, minimal_phase, random_element
from vibcav.observables import lawwu_energy_law, total_energy
from vibcav.particles import (
    alpha_direct,
    bogolubov_direct,
    bogolubov_resonant,
    photon_numbers,
    spectrum,
    sum_rule_check,
)
from vibcav.phase import ResonantAnsatz, lawwu_exact, solve_phase
from vibcav.trajectory import static

PI = np.pi


@pytest.fixture(scope="module")
def lw2_exact(lawwu2):
    tr = lawwu2[0]
    return tr, lawwu_exact(tr)


@pytest.fixture(scope="module")
def lw2_spec(lw2_exact):
    tr, R = lw2_exact
    return spectrum(R, tr.T_motion + 1.0)


def test_static_spectrum():
    R = solve_phase(static(PI), 10.0)
    sp = spectrum(R, 2.0, l_max=16)
    assert np.max(np.abs(sp.beta)) <= 1e-14
    assert np.allclose(sp.alpha, np.eye(16), atol=1e-14)
    assert sp.N_total <= 1e-12


def test_minimal_spectrum_is_empty():
    rng = np.random.default_rng(4)
    for _ in range(3):
        R = minimal_phase(random_element(rng, 1.0), 1.0)
        sp = spectrum(R, 0.5)
        assert np.max(np.abs(sp.beta)) <= 1e-10
        assert np.allclose(sp.unitarity, 1.0, atol=1e-10)
        # alpha of a minimal phase is unitary (low rows are converged in l)
        wide = spectrum(R, 0.5, l_max=256)
        gram = wide.alpha[:4] @ wide.alpha[:4].conj().T
        assert np.max(np.abs(gram - np.eye(4))) <= 1e-8


def test_unitarity_and_positivity(lw2_spec):
    assert np.allclose(lw2_spec.unitarity, 1.0, atol=1e-12)
    assert np.all(lw2_spec.n_k >= 0)
    assert lw2_spec.warning is None


def test_time_independence(lw2_exact, lw2_spec):
    tr, R = lw2_exact
    other = spectrum(R, tr.T_motion + 2.3, l_max=lw2_spec.l_max)
    assert np.max(np.abs(other.beta - lw2_spec.beta)) <= 1e-9


def test_direct_matches_fft(lw2_exact, lw2_spec):
    tr, R = lw2_exact
    t = tr.T_motion + 1.0
    for k, l in [(1, 1), (2, 4), (3, 1), (5, 3)]:
        assert abs(bogolubov_direct(R, t, k, l) - lw2_spec.beta[k - 1, l - 1]) <= 1e-10
        assert abs(alpha_direct(R, t, k, l) - lw2_spec.alpha[k - 1, l - 1]) <= 1e-10


def test_resonant_forms_agree(lawwu2, lw2_spec):
    _, _, ans = lawwu2
    for k, l in [(2, 2), (2, 4), (4, 6)]:
        th = bogolubov_resonant(ans, k, l)
        ra = bogolubov_resonant(ans, k, l, form="ratio")
        assert abs(th - ra) <= 1e-12
    for k, l in [(1, 1), (1, 3), (3, 5), (2, 2)]:
        assert abs(bogolubov_resonant(ans, k, l) - lw2_spec.beta[k - 1, l - 1]) <= 1e-10
    with pytest.raises(PreconditionError):
        bogolubov_resonant(ans, 1, 2, form="ratio")


def test_resonant_trivial_inner_functions():
    ident = ResonantAnsatz(2, [MoebiusElement.identity()] * 2, PI)
    m = MoebiusElement(1.3, 0.4, -0.2, 0.8)
    single = ResonantAnsatz(1, [m], PI)
    for k in range(1, 5):
        for l in range(1, 5):
            assert abs(bogolubov_resonant(ident, k, l)) <= 1e-13
            assert abs(bogolubov_resonant(single, k, l)) <= 1e-12


def test_sum_rule(lawwu2, lw2_exact, lw2_spec):
    tr, R = lw2_exact
    rep = total_energy(R, tr, tr.T_motion + 1.0)
    lhs, rhs, rel = sum_rule_check(lw2_spec, rep)
    assert rel <= 1e-9
    assert lhs == pytest.approx(lawwu_energy_law(tr), rel=1e-10)


def test_preconditions(lw2_exact):
    tr, R = lw2_exact
    with pytest.raises(PreconditionError):
        spectrum(R, tr.T_motion - 1.0)
    with pytest.raises(PreconditionError):
        spectrum(R, tr.T_motion + 1.0, l_max=1)
    with pytest.raises(PreconditionError):
        bogolubov_direct(R, tr.T_motion + 1.0, 0, 1)
    grid = solve_phase(tr, tr.T_motion + PI)
    with pytest.raises(PreconditionError):
        # window runs past the end of the grid
        spectrum(grid, tr.T_motion + 1.5 * PI)


def test_photon_numbers_match_spectrum(lw2_exact, lw2_spec):
    tr, R = lw2_exact
    n, unit, _ = photon_numbers(R, tr.T_motion + 1.0, 8)
    assert np.allclose(n, lw2_spec.n_k[:8], rtol=1e-8, atol=1e-14)
    assert np.allclose(unit, 1.0, atol=1e-12)


def test_photon_numbers_invariant_under_composition(sin2):
    from vibcav.moebius import conformal_compose
    tr, R = sin2
    t = tr.T_motion + 1.0
    n0 = photon_numbers(R, t, 6)[0]
    n1 = photon_numbers(conformal_compose(R, MoebiusElement(1.3, 0.4, -0.2, 0.8)), t, 6)[0]
    assert np.allclose(n1, n0, rtol=1e-7, atol=1e-12)
