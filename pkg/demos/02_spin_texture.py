"""The local spin texture of the (s=1, m=1, +) state and its relatives.

Writes ``texture_s1m1.csv`` to the current directory; plot the x, y, sx, sy
columns with any tool to see the in-plane pattern.
"""

from pathlib import Path

import numpy as np

from rashba_landau import NaturalParams
from rashba_landau.grid import GridSpec
from rashba_landau.spectrum import LevelKey, eigenspinor
from rashba_landau.texture import radial_profile, ring_values, spin_density, superpose, to_csv

p = NaturalParams.from_xi(0.4, 0.3)
grid = GridSpec(6.0, 256)

# %% Density and spin density of one eigenstate.
state = eigenspinor(LevelKey(1, "plus", 1), p)
t = spin_density(state, grid)
print("total probability", t.total("rho"))
print("sz on a ring of radius 1.5: spread", np.std(ring_values(state, 1.5, 64, "sz")))

# %% Where does the in-plane spin point? Project it on the radius and on the
# tangent. For a single (s, m) state the tangential part vanishes.
print("max |radial|     ", np.abs(t.radial_projection()).max())
print("max |tangential| ", np.abs(t.tangential_projection()).max())

# %% The minus branch carries the opposite in-plane spin.
minus = spin_density(eigenspinor(LevelKey(1, "minus", 1), p), grid)
print("sx(+) + sx(-) max", np.abs(t.sx + minus.sx).max())

# %% Rings: the radial profile of rho has s + 1 maxima for (s, m = s, +),
# and the rings move outward as m grows.
for s in (1, 2, 3):
    prof = radial_profile(spin_density(eigenspinor(LevelKey(s, "plus", s), p), grid))
    print(f"s={s}: maxima at r = {np.round(prof.local_maxima(), 3)}")
for m in range(1, 5):
    prof = radial_profile(spin_density(eigenspinor(LevelKey(1, "plus", m), p), grid))
    print(f"m={m}: rho peaks at r = {prof.radius_of_max:.3f}")

# %% Mixing two m values breaks the rotational symmetry.
mix = superpose([(0, 1.0), (1, 1.0)], 1, "plus", p)
vals = ring_values(mix, 1.0, 64)
print("m=0+1 mixture, relative angular variation at r=1:", np.ptp(vals) / vals.mean())

out = Path("texture_s1m1.csv")
out.write_text(to_csv(spin_density(state, GridSpec(6.0, 121))))
print("wrote", out)
