"""
Static cavity and the Casimir energy
====================================

A cavity of fixed length L.  The phase function is the identity and the
energy is the Casimir value -pi/(24 L).
"""

import numpy as np

from vibcav import static, solve_phase, total_energy, spectrum, profile

L = np.pi
traj = static(L)

# The grid solver reduces to R(tau) = tau when the wall never moves
R = solve_phase(traj, 4 * L)
tau = np.linspace(-L, 3 * L, 5)
print("R(tau) - tau:", R(tau) - tau)

# Flat profile -pi/(48 L^2), integrated over the window [t - L, t + L]
print("profile:", profile(R, tau))
rep = total_energy(R, traj, 1.0)
print(f"E = {rep.E_total:.15f}   (-pi/24L = {-np.pi / (24 * L):.15f})")

# No photons: beta vanishes and alpha is the identity
sp = spectrum(R, 1.0, l_max=8)
print("N =", sp.N_total)
print("max |alpha - 1| =", np.max(np.abs(sp.alpha - np.eye(8))))
