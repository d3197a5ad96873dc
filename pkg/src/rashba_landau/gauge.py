"""Landau-gauge versus symmetric-gauge s = 1 states.

Going from A = (-B y, 0) to A = (B/2)(-y, x) is the gauge function
chi = B x y / 2, and the electron wavefunction picks up exp(-i e chi / hbar),
which is exp(-i x y / 2) in natural units. The Landau-gauge level at k_x = 0
and the symmetric-gauge state generated by f(zbar) = exp(zbar^2 / 4) are the
same state up to exactly this phase.

Both sides use a^dagger = (Pi_x + i Pi_y)/sqrt 2 in their own gauge. In the
Landau gauge that maps phi_0 to -sqrt(2) y phi_0, so the spin-down component
carries -sqrt(2) y. The symmetric side gets its spin-down component from
``polybasis.raise_`` and never touches the Landau formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import GridSpec
from .params import NaturalParams
from .polybasis import PolyGauss, evaluate, raise_
from .spectrum import Branch, spinor_coefficients

PI_QUARTER = math.pi ** 0.25


def chi(x, y):
    """Gauge function in natural units (r^2 B): x y / 2."""
    return 0.5 * np.asarray(x) * np.asarray(y)


def gauge_phase(x, y):
    return np.exp(-1j * chi(x, y))


def landau_s1(branch, p: NaturalParams, x, y):
    """Landau-gauge s = 1 spinor centred on y0 = 0, normalized per unit length in x."""
    up_c, down_c = spinor_coefficients(1, branch, p)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    env = np.exp(-0.5 * y * y) / PI_QUARTER
    return up_c * env + 0j, down_c * (-math.sqrt(2) * y) * env + 0j


def series_seed(terms: int) -> PolyGauss:
    """exp(zbar^2 / 4) truncated to ``terms`` terms, divided by pi^(1/4)."""
    if terms < 1:
        raise ValueError("need at least one series term")
    c = np.zeros((1, 2 * terms - 1))
    for k in range(terms):
        c[0, 2 * k] = math.exp(-k * math.log(4) - math.lgamma(k + 1))
    return PolyGauss(c / PI_QUARTER)


def symmetric_s1(branch, p: NaturalParams, terms: int, x, y):
    """Symmetric-gauge s = 1 spinor N (kappa^{+-1} Psi_0, a^dagger Psi_0) with Psi_0 = f(zbar) e^{-|z|^2/4}."""
    up_c, down_c = spinor_coefficients(1, branch, p)
    seed = series_seed(terms)
    return evaluate(seed * up_c, x, y), evaluate(raise_(seed) * down_c, x, y)


def truncation_estimate(p: NaturalParams, branch, extent: float, terms: int) -> float:
    """Rough bound on the series truncation error anywhere in the window.

    Past the window corner radius R the dropped tail of exp(t), t = R^2/4, is
    at most t^K/K! e^t, and the Gaussian envelope cancels the e^t; the
    spin-down component picks up at most a factor (1 + sqrt 2 R).
    """
    R = math.sqrt(2) * extent
    t = R * R / 4
    log_tail = terms * math.log(t) - math.lgamma(terms + 1) if t > 0 else -math.inf
    up_c, down_c = spinor_coefficients(1, branch, p)
    scale = max(abs(up_c), abs(down_c) * (1 + math.sqrt(2) * R)) / PI_QUARTER
    return scale * math.exp(min(log_tail, 700.0))


@dataclass(frozen=True)
class GaugeCheckReport:
    region: GridSpec
    series_terms: int
    branch: str
    max_abs_deviation: float
    max_rel_deviation: float
    tolerance: float
    fitted_phase: complex
    truncation_estimate: float
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation < self.tolerance

    def as_dict(self) -> dict:
        return {
            "region": self.region.as_dict(),
            "series_terms": self.series_terms,
            "branch": self.branch,
            "max_abs_deviation": self.max_abs_deviation,
            "max_rel_deviation": self.max_rel_deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "fitted_phase": [self.fitted_phase.real, self.fitted_phase.imag],
            "truncation_estimate": self.truncation_estimate,
            "warnings": list(self.warnings),
        }

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"gauge-check {verdict}: branch={self.branch} K={self.series_terms} "
                f"extent={self.region.extent} max|dev|={self.max_abs_deviation:.3e} "
                f"(tol {self.tolerance:.1e})")


def gauge_check(branch, p: NaturalParams, region: GridSpec, terms: int = 40,
                tolerance: float = 1e-8) -> GaugeCheckReport:
    """Compare symmetric_s1 with landau_s1 * exp(-i x y / 2) over ``region``.

    One unit-modulus constant is fitted between the two sides and divided out
    before taking the componentwise maximum deviation.
    """
    branch = Branch(branch)
    X, Y = region.mesh()
    s_up, s_down = symmetric_s1(branch, p, terms, X, Y)
    l_up, l_down = landau_s1(branch, p, X, Y)
    ph = gauge_phase(X, Y)
    l_up, l_down = l_up * ph, l_down * ph
    overlap = np.vdot(l_up, s_up) + np.vdot(l_down, s_down)
    fitted = overlap / abs(overlap) if abs(overlap) > 0 else 1 + 0j
    dev = np.maximum(np.abs(s_up - fitted * l_up), np.abs(s_down - fitted * l_down))
    peak = max(np.abs(l_up).max(), np.abs(l_down).max())
    est = truncation_estimate(p, branch, region.extent, terms)
    warnings = []
    if est > tolerance:
        warnings.append(f"series truncated at K={terms}: estimated error {est:.2e} "
                        f"exceeds tolerance {tolerance:.1e} over extent {region.extent}")
    max_dev = float(dev.max())
    return GaugeCheckReport(region, terms, branch.value, max_dev, max_dev / peak,
                            tolerance, complex(fitted), est, warnings)
