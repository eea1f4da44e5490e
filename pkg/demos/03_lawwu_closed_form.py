"""
Law/Wu motion: an exactly solvable trajectory
=============================================

For this trajectory every wall reflection acts on u = tan(w_k tau / 2) by a
Moebius map, so the phase function is known in closed form.  The energy
grows quadratically with the duration of the motion.
"""

import numpy as np

from vibcav import (
    build_lawwu,
    lawwu,
    lawwu_energy_law,
    lawwu_exact,
    resonant_energy,
    solve_phase,
    total_energy,
)

L, dL = np.pi, 0.01 * np.pi
traj = lawwu(L, dL, 2, 20)

# three representations of the same phase function
R_grid = solve_phase(traj, traj.T_motion + 2 * L)
R_exact = lawwu_exact(traj)
ansatz = build_lawwu(traj, traj.T_motion + L)

tau = np.linspace(-L, traj.T_motion + 3 * L, 2001)
print("max |grid - exact| =", np.max(np.abs(R_grid(tau) - R_exact(tau))))

t = traj.T_motion + 1.0
print("E grid      :", total_energy(R_grid, traj, t).E_total)
print("E resonant  :", resonant_energy(ansatz))
print("E law       :", lawwu_energy_law(traj))

# quadratic growth of the excess over the Casimir value
durations, excess = [], []
for periods in (10, 20, 40, 80):
    tr = lawwu(L, dL, 2, periods)
    R = lawwu_exact(tr)
    durations.append(tr.T_motion)
    excess.append(total_energy(R, tr, tr.T_motion + 1.0).E_total + tr.omega / 24)
slope = np.polyfit(np.log(durations), np.log(excess), 1)[0]
print("log-log slope of E + w/24 against T_motion:", slope)
