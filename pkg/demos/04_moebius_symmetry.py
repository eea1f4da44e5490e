"""
SL(2,R) symmetry of the energy and photon numbers
=================================================

Minimal solutions come from Moebius maps of the identity; they carry the
Casimir energy and no photons.  Composing any phase function with one of
them leaves the energy and every photon number unchanged.
"""

import numpy as np

from vibcav import (
    conformal_compose,
    lawwu,
    lawwu_exact,
    minimal_phase,
    random_element,
    spectrum,
    static,
    total_energy,
)

rng = np.random.default_rng(1)

# a few minimal solutions in a static cavity of length pi (omega = 1)
for _ in range(3):
    m = random_element(rng, 1.5)
    R = minimal_phase(m, 1.0)
    E = total_energy(R, static(np.pi), 0.5).E_total
    N = spectrum(R, 0.5).N_total
    print(f"A={m.A:+.3f} B={m.B:+.3f} C={m.C:+.3f} D={m.D:+.3f}  E + 1/24 = {E + 1 / 24:+.1e}  N = {N:.1e}")

# the same photon spectrum before and after composition
traj = lawwu(np.pi, 0.01 * np.pi, 2, 20)
R = lawwu_exact(traj)
t = traj.T_motion + 1.0
Rc = conformal_compose(R, random_element(rng, 1.0))
print("E  :", total_energy(R, traj, t).E_total, total_energy(Rc, traj, t).E_total)
print("n_k:", spectrum(R, t).n_k[:4])
print("n_k:", spectrum(Rc, t).n_k[:4])
