# # Anisotropy parameters of the interference term
#
# The angular factor cos^2 t [1 - cos(x cos t)], x = p_e R_N, expanded in
# Legendre polynomials. beta0 and beta2 settle to 1/3 and 2/3 at large x;
# beta4 keeps oscillating with amplitude about 9/x, so the delay dependence
# survives longest in the highest coefficient.

import numpy as np

from fanoprobe.approx import angular_distribution, beta_coefficients, legendre_projection
from _plot import figure, save

x = np.linspace(0.5, 120, 1200)
exact = beta_coefficients(x, 1.0)
asym = beta_coefficients(x, 1.0, "asymptotic")

# Closed forms against direct quadrature at a few points.

for xi in (1.0, 20.0, 100.0):
    proj = legendre_projection(lambda u: angular_distribution(u, xi), n_nodes=300)
    closed = np.array(beta_coefficients(xi, 1.0))
    print(f"x = {xi:5.1f}  betas {np.round(closed, 5)}  max diff {np.abs(proj - closed).max():.1e}")

# The leading-order beta4 misses a cos(x)/x^2 term, so it converges slowly.

for xi in (50.0, 100.0, 200.0, 400.0):
    e = beta_coefficients(xi, 1.0).beta4
    a = beta_coefficients(xi, 1.0, "asymptotic").beta4
    print(f"x = {xi:5.0f}  beta4 exact {e:+.5f}  leading order {a:+.5f}")

plt = figure()
if plt:
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, e, a in zip(("beta0", "beta2", "beta4"), exact, asym):
        line, = ax.plot(x, e, label=name)
        ax.plot(x, a, ":", color=line.get_color())
    ax.set_xlabel("x = p_e R_N")
    ax.legend()
    save(plt, fig, "anisotropy_betas.png")
