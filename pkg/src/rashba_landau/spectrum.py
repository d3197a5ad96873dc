"""Spin-split Landau levels under Rashba and Zeeman coupling.

Level ``s >= 1`` mixes spin-up in orbital level ``s - 1`` with spin-down in
level ``s``. In natural units the 2x2 block is

    [[s - 1/2 + g,          i sqrt(2s) a],
     [-i sqrt(2s) a,        s + 1/2 - g]]

with eigenvalues ``s +/- sqrt(xi^2 + 2 s a^2)`` and eigenvectors proportional
to ``(kappa^{+1}, 1)`` and ``(kappa^{-1}, 1)``. The lowest level ``s = 0`` is a
single spin-down state with energy ``xi``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .params import NaturalParams
from .polybasis import PolyGauss, eigenfunction, inner_product

DENOMINATOR_FLOOR = 1e-12


class DegenerateLimitError(ValueError):
    pass


class Branch(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"
    LLL = "lll"

    @property
    def sign(self) -> int:
        return {Branch.PLUS: 1, Branch.MINUS: -1, Branch.LLL: 0}[self]


@dataclass(frozen=True)
class LevelKey:
    s: int
    branch: Branch
    m: int

    def __post_init__(self):
        object.__setattr__(self, "branch", Branch(self.branch))
        if self.s < 0 or self.m < 0:
            raise ValueError("s and m must be non-negative")
        if self.s == 0 and self.branch is not Branch.LLL:
            raise ValueError("s = 0 has a single state; use branch 'lll'")
        if self.s > 0 and self.branch is Branch.LLL:
            raise ValueError("branch 'lll' requires s = 0")

    @classmethod
    def lll(cls, m: int) -> LevelKey:
        return cls(0, Branch.LLL, m)

    def __str__(self) -> str:
        if self.branch is Branch.LLL:
            return f"(s=0, m={self.m}, lll)"
        return f"(s={self.s}, m={self.m}, {'+' if self.branch is Branch.PLUS else '-'})"


@dataclass(frozen=True, eq=False)
class Spinor:
    """Two-component state with polynomial-Gaussian components."""

    up: PolyGauss
    down: PolyGauss
    label: str = ""
    energy: float = float("nan")

    def inner(self, other: Spinor) -> complex:
        return inner_product(self.up, other.up) + inner_product(self.down, other.down)

    def norm(self) -> float:
        return math.sqrt(self.inner(self).real)


@dataclass(frozen=True, eq=False)
class EigenState(Spinor):
    key: LevelKey = None
    kappa: complex = 0j
    norm_const: float = 1.0


def _check_s(s: int):
    if s == 0:
        raise ValueError("s = 0 is the lowest Landau level; use lll_energy / LevelKey.lll")
    if s < 0:
        raise ValueError("s must be positive")


def _root(s: int, p: NaturalParams) -> float:
    return math.hypot(p.xi_tilde, math.sqrt(2 * s) * p.a_tilde)


def energy(s: int, branch, p: NaturalParams) -> float:
    """E / hbar omega for level ``s >= 1`` on the given branch."""
    _check_s(s)
    sign = Branch(branch).sign
    if sign == 0:
        raise ValueError("branch must be plus or minus for s >= 1")
    return s + sign * _root(s, p)


def lll_energy(p: NaturalParams) -> float:
    return p.xi_tilde


def kappa(s: int, p: NaturalParams) -> complex:
    """Up/down amplitude ratio of the plus branch, i a sqrt(2s) / (xi + sqrt(xi^2 + 2 s a^2))."""
    _check_s(s)
    beta = math.sqrt(2 * s) * p.a_tilde
    xi = p.xi_tilde
    root = math.hypot(xi, beta)
    # for xi < 0 the sum xi + root cancels; use the conjugate form
    denom = xi + root if xi >= 0 else beta * beta / (root - xi)
    if abs(denom) < DENOMINATOR_FLOOR:
        raise DegenerateLimitError(
            f"kappa is singular at a_tilde={p.a_tilde}, xi_tilde={xi}; "
            "use the decoupled a_tilde = 0 spinors")
    return 1j * beta / denom


def block_matrix(s: int, p: NaturalParams) -> np.ndarray:
    """Hamiltonian block in the basis (up at level s-1, down at level s)."""
    _check_s(s)
    c = 1j * math.sqrt(2 * s) * p.a_tilde
    return np.array([[s - 0.5 + p.g_tilde, c],
                     [np.conj(c), s + 0.5 - p.g_tilde]], dtype=complex)


def spinor_coefficients(s: int, branch, p: NaturalParams):
    """Normalized (up, down) amplitudes multiplying (psi_{s-1,m}, psi_{s,m}).

    Plus is (kappa, 1) N and minus is (1/kappa, 1) N. At ``a_tilde = 0`` the
    levels decouple into pure spin states: plus is the higher of the two, and
    the pure spin-up amplitude keeps the phase of the 1/kappa limit (-i).
    """
    _check_s(s)
    branch = Branch(branch)
    if branch is Branch.LLL:
        raise ValueError("branch must be plus or minus for s >= 1")
    if p.a_tilde == 0:
        take_down = (p.xi_tilde >= 0) == (branch is Branch.PLUS)
        return (0j, 1.0) if take_down else (-1j, 0.0)
    k = kappa(s, p)
    root = math.sqrt(abs(k) ** 2 + 1)
    if branch is Branch.PLUS:
        return k / root, 1 / root
    # N = 1/sqrt(|1/k|^2 + 1) rewritten to stay finite as k -> 0
    return (abs(k) / k) / root, abs(k) / root


def eigenspinor(key: LevelKey, p: NaturalParams) -> EigenState:
    """Normalized eigenstate N (kappa^{+-1} psi_{s-1,m}, psi_{s,m}); (0, psi_{0,m}) for the lowest level."""
    if key.branch is Branch.LLL:
        return EigenState(PolyGauss.zero(), eigenfunction(0, key.m), str(key),
                          lll_energy(p), key, 0j, 1.0)
    up_coef, n = spinor_coefficients(key.s, key.branch, p)
    k = kappa(key.s, p) if p.a_tilde != 0 else 0j
    up = eigenfunction(key.s - 1, key.m) * up_coef
    down = eigenfunction(key.s, key.m) * n
    return EigenState(up, down, str(key), energy(key.s, key.branch, p), key, k, float(n))


def levels(s_max: int, p: NaturalParams):
    """(s, branch, energy) rows: the lowest level then minus/plus for s = 1..s_max."""
    rows = [(0, Branch.LLL, lll_energy(p))]
    for s in range(1, s_max + 1):
        rows.append((s, Branch.MINUS, energy(s, Branch.MINUS, p)))
        rows.append((s, Branch.PLUS, energy(s, Branch.PLUS, p)))
    return rows
