# # The dissociating electronic state
#
# At large R the ungerade state is an antisymmetric combination of two
# hydrogen 1s orbitals, one on each proton. Its density has a node at the
# midpoint and two peaks that follow the nuclei.

import numpy as np

from fanoprobe import Parity, electronic_density_profile, plane_wave_validity
from fanoprobe.core import WavePacketParams
from fanoprobe.units import FS_AU
from _plot import figure, save

z = np.linspace(-15, 15, 3001) + 1e-3  # offset keeps the grid off the nuclei
plt = figure()
if plt:
    fig, ax = plt.subplots(figsize=(6, 3.5))

for r in (4.0, 12.0, 20.0):
    density, potential = electronic_density_profile(z, r, Parity.UNGERADE)
    print(f"R = {r:4.1f}  density at midpoint {density[np.argmin(np.abs(z))]:.2e}  "
          f"peak {density.max():.3f}")
    if plt:
        ax.plot(z, density, label=f"R = {r:g}")

# Plane-wave final states for the protons need the kinetic energy to dwarf
# the Coulomb repulsion. The ratio grows linearly with delay.

wp = WavePacketParams(p0=14.8, delta_r=3.0, r0=12.0, e_pump=np.array([0.0, 0, 1]))
for t_fs in (0, 20, 80):
    print(f"t_c = {t_fs:2d} fs  E_kin / V_coul = {plane_wave_validity(wp, t_fs * FS_AU):.2f}")

if plt:
    ax.set_xlabel("z (bohr)")
    ax.set_ylabel("density on axis")
    ax.legend()
    save(plt, fig, "electron_density.png")
