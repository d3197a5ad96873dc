"""Physical inputs and the dimensionless parameter set.

Every other module works in natural units: lengths in the magnetic length
``r = sqrt(hbar / (e B))`` and energies in the cyclotron energy ``hbar*omega``.
In these units a Rashba + Zeeman problem is fully described by two numbers,
``xi_tilde`` (the lowest-level energy) and ``a_tilde`` (the Rashba strength).
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

# CODATA 2018 (exact where the SI defines them)
CONSTANTS = {
    "hbar": 1.054571817e-34,  # J s
    "e": 1.602176634e-19,  # C
    "m0": 9.1093837015e-31,  # kg
}
HBAR = CONSTANTS["hbar"]
E_CHARGE = CONSTANTS["e"]
M_ELECTRON = CONSTANTS["m0"]
MU_BOHR = E_CHARGE * HBAR / (2 * M_ELECTRON)

EV_NM = E_CHARGE * 1e-9  # 1 eV nm in J m
MEV = E_CHARGE * 1e-3


class InvalidConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PhysicalConfig:
    """SI description of the electron gas.

    ``alpha`` is in J m. A negative Rashba coefficient is unitarily equivalent
    to the positive one (conjugation by sigma_z flips both in-plane spin
    components), so it is stored as ``|alpha|``.
    """

    B_z: float
    mass_ratio: float
    g_factor: float
    alpha: float = 0.0

    def __post_init__(self):
        if not (self.B_z > 0):
            raise InvalidConfigError(f"B_z must be positive, got {self.B_z}")
        if not (self.mass_ratio > 0):
            raise InvalidConfigError(f"mass_ratio must be positive, got {self.mass_ratio}")
        if self.alpha < 0:
            log.warning("negative alpha %g stored as |alpha|; in-plane spin signs flip", self.alpha)
            object.__setattr__(self, "alpha", -self.alpha)

    @classmethod
    def from_mapping(cls, values: dict) -> PhysicalConfig:
        """Build from the flat keys b_z_tesla, mass_ratio, g_factor, alpha_ev_nm."""
        known = {"b_z_tesla", "mass_ratio", "g_factor", "alpha_ev_nm"}
        unknown = set(values) - known
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"b_z_tesla", "mass_ratio", "g_factor"} - set(values)
        if missing:
            raise InvalidConfigError(f"missing config keys: {sorted(missing)}")
        return cls(
            B_z=float(values["b_z_tesla"]),
            mass_ratio=float(values["mass_ratio"]),
            g_factor=float(values["g_factor"]),
            alpha=float(values.get("alpha_ev_nm", 0.0)) * EV_NM,
        )


def load_config(path) -> PhysicalConfig:
    """Read a JSON object with the flat keys accepted by ``from_mapping``."""
    with open(Path(path)) as fh:
        values = json.load(fh)
    if not isinstance(values, dict):
        raise InvalidConfigError("config file must hold a single JSON object")
    return PhysicalConfig.from_mapping(values)


@dataclass(frozen=True)
class NaturalParams:
    a_tilde: float
    g_tilde: float
    # SI scales, used only to convert results for reporting
    r: float = field(default=float("nan"))
    hbar_omega: float = field(default=float("nan"))

    def __post_init__(self):
        if self.a_tilde < 0:
            object.__setattr__(self, "a_tilde", -self.a_tilde)

    @property
    def xi_tilde(self) -> float:
        return 0.5 - self.g_tilde

    @classmethod
    def from_xi(cls, xi_tilde: float, a_tilde: float, **kw) -> NaturalParams:
        return cls(a_tilde=a_tilde, g_tilde=0.5 - xi_tilde, **kw)

    @property
    def has_si(self) -> bool:
        return math.isfinite(self.hbar_omega)

    def energy_to_si(self, e_natural):
        """Energy in joules from energy in units of hbar*omega."""
        if not self.has_si:
            raise ValueError("parameter set carries no SI scale")
        return e_natural * self.hbar_omega

    def energy_from_si(self, e_joule):
        if not self.has_si:
            raise ValueError("parameter set carries no SI scale")
        return e_joule / self.hbar_omega

    def energy_to_mev(self, e_natural):
        return self.energy_to_si(e_natural) / MEV

    def as_dict(self) -> dict:
        d = {"a_tilde": self.a_tilde, "g_tilde": self.g_tilde, "xi_tilde": self.xi_tilde}
        if self.has_si:
            d.update(r_m=self.r, hbar_omega_J=self.hbar_omega)
        return d


def derive_natural(cfg: PhysicalConfig, g_tilde: float | None = None) -> NaturalParams:
    """Convert an SI configuration to natural units.

    The Zeeman energy uses the free-electron Bohr magneton, which makes
    ``g_tilde = g * mass_ratio / 2`` independent of the field. Pass
    ``g_tilde`` to override this with any other convention.
    """
    m_eff = cfg.mass_ratio * M_ELECTRON
    r = math.sqrt(HBAR / (E_CHARGE * cfg.B_z))
    hbar_omega = HBAR * E_CHARGE * cfg.B_z / m_eff
    a_tilde = cfg.alpha / (r * hbar_omega)
    if g_tilde is None:
        g_tilde = cfg.g_factor * MU_BOHR * cfg.B_z / hbar_omega
    return NaturalParams(a_tilde=a_tilde, g_tilde=g_tilde, r=r, hbar_omega=hbar_omega)
