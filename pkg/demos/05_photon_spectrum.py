"""
Photon spectrum and the energy sum rule
=======================================

Once the wall is at rest the Bogolubov matrix follows from one FFT per out
mode.  The energy above the Casimir value equals sum_k n_k w_k.
"""

import numpy as np

from vibcav import sinusoidal, solve_phase, spectrum, sum_rule_check, total_energy

traj = sinusoidal(np.pi, 0.01 * np.pi, 2, 50)
R = solve_phase(traj, traj.T_motion + 2 * np.pi)
t = traj.T_motion + 1.0

sp = spectrum(R, t)
print(f"l_max = {sp.l_max}, samples = {sp.n_samples}, N = {sp.N_total:.6f}")
print("unitarity - 1:", np.max(np.abs(sp.unitarity - 1)))

# the k = 2 drive creates photons in pairs with w_k + w_l = 2 w, i.e. odd modes
for k in range(1, 9):
    print(f"  n_{k} = {sp.n_k[k - 1]:.3e}")

lhs, rhs, rel = sum_rule_check(sp, total_energy(R, traj, t))
print(f"E = {lhs:.10f},  -w/24 + sum n_k w_k = {rhs:.10f},  rel err {rel:.1e}")
