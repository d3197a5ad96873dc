"""Independent checks: finite differences, Laguerre states and gauge invariance."""

from rashba_landau import NaturalParams, oracle
from rashba_landau.gauge import gauge_check
from rashba_landau.grid import GridSpec
from rashba_landau.spectrum import LevelKey, eigenspinor

p = NaturalParams.from_xi(0.4, 0.3)

# %% Apply H by finite differences and compare with E psi. A wrong energy
# shows up immediately.
state = eigenspinor(LevelKey(2, "minus", 1), p)
grid = GridSpec.from_spacing(5.0, 0.02)
good, shifted = oracle.residuals(state, p, grid, [state.energy, state.energy + 0.1])
print(f"residual at E       {good.max_residual:.2e}")
print(f"residual at E + 0.1 {shifted.max_residual:.2e}")

# %% Halving the spacing should cut the 4th-order residual by about 16.
fine = oracle.residual(state, p, GridSpec.from_spacing(5.0, 0.01))
print(f"convergence ratio {good.max_residual / fine.max_residual:.1f}")

# %% Landau states from the ladder agree with the Laguerre closed form.
print("ladder vs Laguerre, n=5 m=3:", oracle.laguerre_crosscheck(5, 3))

# %% The Landau-gauge state times exp(-i x y / 2) is the symmetric-gauge
# state. With too few series terms the check fails, as it should.
for terms in (40, 2):
    print(gauge_check("plus", p, GridSpec(4.0, 128), terms).summary())
