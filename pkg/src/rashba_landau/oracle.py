"""Independent numerical checks of the analytic construction.

Nothing here uses the closed-form spectrum except as the value under test:
the Hamiltonian is applied on a grid by finite differences straight from the
symmetric-gauge operator, inner products come from trapezoidal quadrature,
the 2x2 level block is assembled from ladder matrix elements and handed to
LAPACK, and Landau states are rebuilt from the Laguerre recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.ndimage import correlate1d

from .grid import GridSpec
from .params import NaturalParams
from .polybasis import PolyGauss, eigenfunction, evaluate, inner_product, lower, raise_

MAX_SPACING = 0.02
RESIDUAL_FLOOR = 1e-8
MARGIN_HALF_WIDTHS = 5

# central-difference weights, offsets -w..w
_D1 = {
    2: np.array([-1, 0, 1]) / 2,
    4: np.array([1, -8, 0, 8, -1]) / 12,
    6: np.array([-1, 9, -45, 0, 45, -9, 1]) / 60,
}
_D2 = {
    2: np.array([1, -2, 1]),
    4: np.array([-1, 16, -30, 16, -1]) / 12,
    6: np.array([2, -27, 270, -490, 270, -27, 2]) / 180,
}


def _half_width(order: int) -> int:
    if order not in _D1:
        raise ValueError(f"stencil order must be one of {sorted(_D1)}")
    return order // 2


def _stencil(f: np.ndarray, weights: np.ndarray, axis: int) -> np.ndarray:
    w = len(weights) // 2
    out = correlate1d(f, weights, axis=axis, mode="constant")
    edge = [slice(None)] * f.ndim
    edge[axis] = np.r_[0:w, f.shape[axis] - w:f.shape[axis]]
    out[tuple(edge)] = np.nan
    return out


def apply_hamiltonian_fd(up: np.ndarray, down: np.ndarray, grid: GridSpec,
                         p: NaturalParams, order: int = 4):
    """H applied to gridded spinor components by centered finite differences.

    H = (Pi_x^2 + Pi_y^2)/2 + a (Pi_y sx - Pi_x sy) + g sz with
    Pi_x = -i d/dx - y/2 and Pi_y = -i d/dy + x/2. Points within one stencil
    half-width of the edge come back as NaN.
    """
    h = grid.spacing
    if h > MAX_SPACING + 1e-15:
        raise ValueError(f"grid spacing {h:.4g} too coarse; need h <= {MAX_SPACING} "
                         f"(resolution >= {int(math.ceil(2 * grid.extent / MAX_SPACING)) + 1})")
    _half_width(order)
    X, Y = grid.mesh()

    def pis(f):
        dx = _stencil(f, _D1[order], axis=1) / h
        dy = _stencil(f, _D1[order], axis=0) / h
        return -1j * dx - 0.5 * Y * f, -1j * dy + 0.5 * X * f, dx, dy

    def kinetic(f, dx, dy):
        lap = (_stencil(f, _D2[order], axis=1) + _stencil(f, _D2[order], axis=0)) / h**2
        # (Pi_x^2 + Pi_y^2) = -lap + i (y d/dx - x d/dy) + (x^2 + y^2)/4
        return 0.5 * (-lap + 1j * (Y * dx - X * dy) + 0.25 * (X**2 + Y**2) * f)

    px_u, py_u, dxu, dyu = pis(up)
    px_d, py_d, dxd, dyd = pis(down)
    a, g = p.a_tilde, p.g_tilde
    h_up = kinetic(up, dxu, dyu) + a * (py_d + 1j * px_d) + g * up
    h_down = kinetic(down, dxd, dyd) + a * (py_u - 1j * px_u) - g * down
    return h_up, h_down


def sample(state, grid: GridSpec):
    X, Y = grid.mesh()
    return evaluate(state.up, X, Y), evaluate(state.down, X, Y)


@dataclass(frozen=True)
class ResidualReport:
    label: str
    energy: float
    grid: GridSpec
    order: int
    max_residual: float
    interior_margin: float

    def as_dict(self) -> dict:
        return {"state": self.label, "energy": self.energy, "grid": self.grid.as_dict(),
                "stencil_order": self.order, "max_residual": self.max_residual,
                "interior_margin": self.interior_margin}


def interior_mask(grid: GridSpec, margin: float) -> np.ndarray:
    X, Y = grid.mesh()
    lim = grid.extent - margin + 1e-12
    return (np.abs(X) <= lim) & (np.abs(Y) <= lim)


def residuals(state, p: NaturalParams, grid: GridSpec, energies, order: int = 4) -> list[ResidualReport]:
    """Relative residuals max |H psi - E psi| / max(|psi|, floor) on the interior, one per trial energy.

    H psi is computed once, so negative controls (shifted energies) are cheap.
    """
    up, down = sample(state, grid)
    h_up, h_down = apply_hamiltonian_fd(up, down, grid, p, order)
    margin = MARGIN_HALF_WIDTHS * _half_width(order) * grid.spacing
    mask = interior_mask(grid, margin)
    up, down, h_up, h_down = up[mask], down[mask], h_up[mask], h_down[mask]
    amp = np.maximum(np.sqrt(np.abs(up) ** 2 + np.abs(down) ** 2), RESIDUAL_FLOOR)
    out = []
    for e in energies:
        dev = np.maximum(np.abs(h_up - e * up), np.abs(h_down - e * down)) / amp
        out.append(ResidualReport(getattr(state, "label", ""), float(e), grid, order,
                                  float(np.max(dev)), margin))
    return out


def residual(state, p: NaturalParams, grid: GridSpec, order: int = 4,
             energy: float | None = None) -> ResidualReport:
    """Residual of ``state`` against its own energy (or ``energy`` when given)."""
    e = state.energy if energy is None else energy
    return residuals(state, p, grid, [e], order)[0]


def quadrature_inner(f: np.ndarray, g: np.ndarray, grid: GridSpec) -> complex:
    """Trapezoidal approximation of the integral of conj(f) g over the window."""
    a = grid.axis
    integrand = np.conj(f) * g
    return complex(trapezoid(trapezoid(integrand, a, axis=1), a, axis=0))


def expectation_fd(state, p: NaturalParams, grid: GridSpec, order: int = 4) -> float:
    """<psi|H|psi> with H by finite differences, integrated over the interior."""
    up, down = sample(state, grid)
    h_up, h_down = apply_hamiltonian_fd(up, down, grid, p, order)
    w = _half_width(order)
    sl = (slice(w, -w), slice(w, -w))
    a = grid.axis[w:-w]
    integrand = np.conj(up[sl]) * h_up[sl] + np.conj(down[sl]) * h_down[sl]
    return float(trapezoid(trapezoid(integrand, a, axis=1), a, axis=0).real)


def projected_block(s: int, m: int, p: NaturalParams) -> np.ndarray:
    """<i|H|j> in the basis (up x psi_{s-1,m}, down x psi_{s,m}) from ladder algebra.

    H = (a^dag a + 1/2) + i sqrt(2) a_tilde [[0, a], [-a^dag, 0]] + g_tilde sz.
    """
    lo, hi = eigenfunction(s - 1, m), eigenfunction(s, m)
    basis = [(lo, 0), (hi, 1)]

    def apply(f: PolyGauss, comp: int):
        orbital = raise_(lower(f)) + f * 0.5
        out = [PolyGauss.zero(), PolyGauss.zero()]
        out[comp] = orbital + f * (p.g_tilde if comp == 0 else -p.g_tilde)
        c = 1j * math.sqrt(2) * p.a_tilde
        if comp == 1:
            out[0] = out[0] + lower(f) * c
        else:
            out[1] = out[1] - raise_(f) * c
        return out

    mat = np.zeros((2, 2), dtype=complex)
    for j, (fj, cj) in enumerate(basis):
        hf = apply(fj, cj)
        for i, (fi, ci) in enumerate(basis):
            mat[i, j] = inner_product(fi, hf[ci])
    return mat


def diagonalize_block(s: int, m: int, p: NaturalParams):
    """Eigenvalues (ascending) and eigenvectors of the projected block."""
    return np.linalg.eigh(projected_block(s, m, p))


def laguerre_coeffs(k: int, alpha: int) -> np.ndarray:
    """Power-series coefficients of L_k^(alpha)(t) from the three-term recurrence."""
    prev = np.array([1.0])
    if k == 0:
        return prev
    cur = np.array([1.0 + alpha, -1.0])
    for n in range(1, k):
        # (n+1) L_{n+1} = (2n + 1 + alpha - t) L_n - (n + alpha) L_{n-1}
        nxt = np.zeros(n + 2)
        nxt[: n + 1] += (2 * n + 1 + alpha) * cur
        nxt[1:] -= cur
        nxt[: n] -= (n + alpha) * prev
        prev, cur = cur, nxt / (n + 1)
    return cur


def laguerre_state(n: int, m: int) -> PolyGauss:
    """Closed-form symmetric-gauge state, z^(n-m) L_m^(n-m)(|z|^2/2) or its zbar mirror, normalized."""
    k, d = min(n, m), abs(n - m)
    lc = laguerre_coeffs(k, d)
    size = d + k + 1
    c = np.zeros((size, size), dtype=complex)
    for p_, v in enumerate(lc):
        # t^p = (z zbar)^p / 2^p
        j, kk = (p_ + d, p_) if n >= m else (p_, p_ + d)
        c[j, kk] = v / 2**p_
    norm = math.sqrt(math.factorial(k) / (2 * math.pi * 2**d * math.factorial(k + d)))
    return PolyGauss(c * norm)


def laguerre_crosscheck(n: int, m: int) -> float:
    """Max coefficient difference between the ladder and Laguerre constructions after phase alignment."""
    a = eigenfunction(n, m).coeffs
    b = laguerre_state(n, m).coeffs
    shape = tuple(max(x, y) for x, y in zip(a.shape, b.shape))
    A = np.zeros(shape, dtype=complex)
    B = np.zeros(shape, dtype=complex)
    A[: a.shape[0], : a.shape[1]] = a
    B[: b.shape[0], : b.shape[1]] = b
    overlap = np.vdot(B, A)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.max(np.abs(A - phase * B)))


def fd_level_states(s: int, m: int, p: NaturalParams, grid: GridSpec, order: int = 4):
    """Level-s eigenpairs computed without the ladder construction.

    The basis is (Laguerre psi_{s-1,m} up, Laguerre psi_{s,m} down); matrix
    elements come from the finite-difference Hamiltonian and trapezoidal
    quadrature, and the 2x2 problem goes to ``numpy.linalg.eigh``. Returns
    ``(energies, [(up, down), ...])`` with sampled components, ascending.
    """
    X, Y = grid.mesh()
    f_lo = evaluate(laguerre_state(s - 1, m), X, Y)
    f_hi = evaluate(laguerre_state(s, m), X, Y)
    zero = np.zeros_like(f_lo)
    basis = [(f_lo, zero), (zero, f_hi)]
    applied = [apply_hamiltonian_fd(u, d, grid, p, order) for u, d in basis]
    w = _half_width(order)
    sl = (slice(w, -w), slice(w, -w))
    sub = GridSpec(grid.extent - w * grid.spacing, grid.resolution - 2 * w)
    mat = np.zeros((2, 2), dtype=complex)
    for i, (bu, bd) in enumerate(basis):
        for j, (hu, hd) in enumerate(applied):
            mat[i, j] = (quadrature_inner(bu[sl], hu[sl], sub)
                         + quadrature_inner(bd[sl], hd[sl], sub))
    mat = 0.5 * (mat + mat.conj().T)
    vals, vecs = np.linalg.eigh(mat)
    states = [(vecs[0, c] * f_lo, vecs[1, c] * f_hi) for c in range(2)]
    return vals, states
