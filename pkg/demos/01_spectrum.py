"""Spin-split Landau levels as the Rashba coupling is switched on.

Run with ``python demos/01_spectrum.py``.
"""

import numpy as np

from rashba_landau import NaturalParams, PhysicalConfig, derive_natural
from rashba_landau.spectrum import Branch, energy, kappa, levels

# %% Natural units: energies in hbar omega. xi = 1/2 - g_tilde is the
# lowest-level energy; a_tilde measures the Rashba strength.
p = NaturalParams.from_xi(0.4, 0.3)
for s, branch, e in levels(3, p):
    print(f"s={s}  {branch.value:5s}  E = {e:.6f}")

# %% Without Rashba coupling the branches are the bare Zeeman-split levels
# s -/+ xi. The splitting grows like sqrt(xi^2 + 2 s a^2) once it is on.
for a in np.linspace(0.0, 1.0, 5):
    q = NaturalParams.from_xi(0.4, a)
    split = energy(2, Branch.PLUS, q) - energy(2, Branch.MINUS, q)
    print(f"a_tilde={a:.2f}  s=2 splitting {split:.6f}")

# %% kappa is the up/down amplitude ratio of the plus branch. It is purely
# imaginary, and small couplings leave the plus state mostly spin down.
for s in (1, 2, 5):
    print(f"s={s}  kappa = {kappa(s, p):.7f}")

# %% The same table from laboratory inputs: InGaAs-like mass, g-factor and
# Rashba strength at 2 T. Energies convert to meV.
# PhysicalConfig itself takes alpha in J m; from_mapping accepts eV nm.
cfg = PhysicalConfig.from_mapping({"b_z_tesla": 2.0, "mass_ratio": 0.05, "g_factor": -4.0,
                                   "alpha_ev_nm": 0.02})
q = derive_natural(cfg)
print(f"r = {q.r * 1e9:.3f} nm, a_tilde = {q.a_tilde:.4f}, g_tilde = {q.g_tilde:.4f}")
for s, branch, e in levels(2, q):
    print(f"s={s}  {branch.value:5s}  {q.energy_to_mev(e):8.4f} meV")
