"""Landau levels of a 2D electron gas with Rashba and Zeeman coupling, in the symmetric gauge.

Lengths are in units of the magnetic length and energies in units of the
cyclotron energy throughout; ``params`` converts from SI.
"""

__version__ = "0.1.0"

from .grid import GridSpec
from .params import NaturalParams, PhysicalConfig, derive_natural
from .polybasis import PolyGauss, eigenfunction, evaluate, inner_product, lll_state, lower, raise_
from .spectrum import (Branch, EigenState, LevelKey, Spinor, block_matrix, eigenspinor, energy,
                       kappa, lll_energy)
from .texture import SpinTexture, radial_profile, spin_density, superpose

__all__ = [
    "GridSpec", "NaturalParams", "PhysicalConfig", "derive_natural",
    "PolyGauss", "eigenfunction", "evaluate", "inner_product", "lll_state", "lower", "raise_",
    "Branch", "EigenState", "LevelKey", "Spinor", "block_matrix", "eigenspinor", "energy",
    "kappa", "lll_energy",
    "SpinTexture", "radial_profile", "spin_density", "superpose",
]
