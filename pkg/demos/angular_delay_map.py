# # Angle-resolved ionization versus pump-probe delay
#
# A dissociating H2+ wave packet (p_N = 14.8 a.u., launched at R0 = 12 bohr)
# is ionized by a 60 nm, 2.4 fs probe. The electron leaves from both protons,
# and the two paths interfere. As the protons separate, the fringes in the
# delay direction sweep through the angular distribution.

import numpy as np

from fanoprobe.scan import preset_spec, run_scan
from fanoprobe.units import FS_AU
from _plot import figure, save

# ## Run the fig3 preset
# 181 emission angles by 641 delays, all in atomic units on output.

result = run_scan(preset_spec("fig3"))
theta = np.unique(result.column("theta_e"))
t_c = np.unique(result.column("t_c"))
grid = result.column("total").reshape(len(theta), len(t_c))
print(f"{grid.size} points in {result.metadata['timing']['seconds']:.2f} s")

# Along the polarization axis (theta_e = 0) the ungerade state gives
# 1 - cos(p_e R_N): minima where p_e R_N is a multiple of 2 pi.

row = grid[0]
mins = t_c[1:-1][(row[1:-1] < row[:-2]) & (row[1:-1] <= row[2:])]
print("minima near t_c (fs):", np.round(mins / FS_AU, 2))

# Emission perpendicular to the probe polarization is forbidden.

print("theta_e = 90 deg peak:", grid[90].max())

plt = figure()
if plt:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.pcolormesh(t_c / FS_AU, np.degrees(theta), grid, shading="auto")
    ax.set_xlabel("delay t_c (fs)")
    ax.set_ylabel("emission angle (deg)")
    save(plt, fig, "angular_delay_map.png")
