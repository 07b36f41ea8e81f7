# # Reading the nuclear trajectory from interference minima
#
# Each minimum of the delay trace marks p_e R_N = 2 n pi. With the fringe order
# known, the separation at that delay follows directly, and the recovered
# points should lie on the classical line R0 + p_N t_c / mu.

import math

import numpy as np

from fanoprobe import PulseParams, WavePacketParams, make_constants, probability_expanded, vec
from fanoprobe.approx import find_minima, infer_trajectory
from fanoprobe.units import FS_AU
from _plot import figure, save

k = make_constants()
p_e, p_n, r0 = 0.72, 14.8, 12.0

t = np.linspace(0, 80 * FS_AU, 2001)
pulse = PulseParams.from_lab(60.0, 2.4, t_c=t)
wp = WavePacketParams(p0=p_n, delta_r=3.0, r0=r0, e_pump=vec(0, 0, 1))
prob = probability_expanded(vec(0, 0, p_e), vec(0, 0, p_n), pulse, wp)

# The fringe order of the first minimum is the accumulated phase over 2 pi.

mins = find_minima(np.column_stack([t, prob.total]))
first = round(np.interp(mins[0][0], t, prob.phase) / (2 * math.pi))
points = infer_trajectory([(m, first + i) for i, (m, _) in enumerate(mins)], p_e, 0.0)

for pt in points:
    classical = r0 + p_n * pt.t_c / k.mu
    print(f"t_c = {pt.t_c / FS_AU:6.2f} fs   R_N = {pt.r_n:7.3f}   classical {classical:7.3f}")

plt = figure()
if plt:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(t / FS_AU, r0 + p_n * t / k.mu, label="R0 + p_N t / mu")
    ax.plot([p.t_c / FS_AU for p in points], [p.r_n for p in points], "o", label="from minima")
    ax.set_xlabel("delay (fs)")
    ax.set_ylabel("R_N (bohr)")
    ax.legend()
    save(plt, fig, "trajectory_imaging.png")
