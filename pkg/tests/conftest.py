import numpy as np
import pytest

from vibcav.phase import build_lawwu, build_sinusoidal_asymptotic, solve_phase
from vibcav.trajectory import lawwu, sinusoidal

PI = np.pi


@pytest.fixture(scope="session")
def sin2():
    """Sinusoidal k=2 drive, L=pi, dL=0.01 pi, 50 drive periods (T = 50 pi)."""
    traj = sinusoidal(PI, 0.01 * PI, 2, 50)
    R = solve_phase(traj, traj.T_motion + 4 * PI)
    return traj, R


@pytest.fixture(scope="session")
def sin2_asym(sin2):
    traj, _ = sin2
    return build_sinusoidal_asymptotic(traj, traj.T_motion)


@pytest.fixture(scope="session")
def lawwu2():
    traj = lawwu(PI, 0.01 * PI, 2, 20)
    R = solve_phase(traj, traj.T_motion + 4 * PI)
    return traj, R, build_lawwu(traj, traj.T_motion + PI)


@pytest.fixture(scope="session")
def lawwu3():
    traj = lawwu(PI, 0.01 * PI, 3, 30)
    R = solve_phase(traj, traj.T_motion + 4 * PI)
    return traj, R, build_lawwu(traj, traj.T_motion + PI)
