"""Exact algebra on wavefunctions ``P(z, zbar) * exp(-|z|^2 / 4)``.

A state is stored as the coefficient table ``c[j, k]`` of ``z**j * zbar**k``
(natural units, lengths in the magnetic length). In the symmetric gauge the
ladder operators act on the polynomial part only:

    a^dagger : P -> (i / sqrt 2) * (z P - 2 dP/dzbar)
    a        : P -> -i sqrt(2) * dP/dz

These follow from ``a^dagger = (Pi_x + i Pi_y) / sqrt 2`` with
``Pi = p + eA`` for the electron, so ``[a, a^dagger] = 1`` and the phase is the
one the Rashba coupling is written in. Lowest-level states depend on ``zbar``
only.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_laguerre

ZERO_TRIM = 1e-300
EQUALITY_ATOL = 1e-12


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.abs(c) > ZERO_TRIM
    if not nz.any():
        return np.zeros((0, 0), dtype=complex)
    rows = np.nonzero(nz.any(axis=1))[0]
    cols = np.nonzero(nz.any(axis=0))[0]
    return c[: rows[-1] + 1, : cols[-1] + 1]


class PolyGauss:
    """Immutable polynomial-times-Gaussian wavefunction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex, ndmin=2, copy=True)
        if c.ndim != 2:
            raise ValueError("coefficient table must be two-dimensional")
        c = _trim(c).copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("PolyGauss is immutable")

    @classmethod
    def zero(cls) -> PolyGauss:
        return cls(np.zeros((1, 1)))

    @classmethod
    def monomial(cls, j: int, k: int, value: complex = 1.0) -> PolyGauss:
        c = np.zeros((j + 1, k + 1), dtype=complex)
        c[j, k] = value
        return cls(c)

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def degree_z(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def degree_zbar(self) -> int:
        return self.coeffs.shape[1] - 1

    def _padded(self, shape) -> np.ndarray:
        out = np.zeros(shape, dtype=complex)
        j, k = self.coeffs.shape
        out[:j, :k] = self.coeffs
        return out

    def __add__(self, other: PolyGauss) -> PolyGauss:
        if not isinstance(other, PolyGauss):
            return NotImplemented
        shape = tuple(max(a, b) for a, b in zip(self.coeffs.shape, other.coeffs.shape))
        return PolyGauss(self._padded(shape) + other._padded(shape))

    def __neg__(self) -> PolyGauss:
        return PolyGauss(-self.coeffs)

    def __sub__(self, other: PolyGauss) -> PolyGauss:
        if not isinstance(other, PolyGauss):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> PolyGauss:
        if isinstance(scalar, PolyGauss):
            return NotImplemented
        return PolyGauss(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> PolyGauss:
        return PolyGauss(self.coeffs / complex(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyGauss):
            return NotImplemented
        shape = tuple(max(a, b) for a, b in zip(self.coeffs.shape, other.coeffs.shape))
        return bool(np.all(np.abs(self._padded(shape) - other._padded(shape)) <= EQUALITY_ATOL))

    __hash__ = None

    def __repr__(self) -> str:
        terms = [f"({v:.6g})z^{j}zb^{k}" for (j, k), v in np.ndenumerate(self.coeffs) if v != 0]
        return "PolyGauss(" + (" + ".join(terms) if terms else "0") + ")"

    def __call__(self, x, y):
        return evaluate(self, x, y)


def lll_state(m: int) -> PolyGauss:
    """Normalized lowest-level state with angular label ``m``: zbar^m / sqrt(2 pi 2^m m!)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    norm = math.exp(-0.5 * (math.log(2 * math.pi) + m * math.log(2) + math.lgamma(m + 1)))
    return PolyGauss.monomial(0, m, norm)


def raise_(psi: PolyGauss) -> PolyGauss:
    """Apply a^dagger."""
    c = psi.coeffs
    if c.size == 0:
        return psi
    j, k = c.shape
    out = np.zeros((j + 1, k), dtype=complex)
    out[1:, :] += c  # z * P
    out[:j, : k - 1] -= 2 * c[:, 1:] * np.arange(1, k)  # -2 dP/dzbar
    return PolyGauss(out * (1j / math.sqrt(2)))


def lower(psi: PolyGauss) -> PolyGauss:
    """Apply a."""
    c = psi.coeffs
    if c.shape[0] <= 1:
        return PolyGauss.zero()
    out = c[1:, :] * np.arange(1, c.shape[0])[:, None]
    return PolyGauss(out * (-1j * math.sqrt(2)))


@lru_cache(maxsize=None)
def eigenfunction(n: int, m: int) -> PolyGauss:
    """Landau level ``n``, angular label ``m``: (a^dagger)^n psi_{0,m} / sqrt(n!)."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    if n == 0:
        return lll_state(m)
    return raise_(eigenfunction(n - 1, m)) / math.sqrt(n)


def _log_moment(n):
    # log of  int z^n zbar^n exp(-|z|^2/2) d^2z = 2 pi 2^n n!
    return math.log(2 * math.pi) + n * math.log(2) + gammaln(n + 1)


def _sectors(phi: PolyGauss, psi: PolyGauss):
    """Yield (conj phi coeffs, phi degrees, psi coeffs, psi degrees) per shared angular momentum j - k."""
    ja, ka = np.nonzero(phi.coeffs)
    jb, kb = np.nonzero(psi.coeffs)
    va = np.conj(phi.coeffs[ja, ka])
    vb = psi.coeffs[jb, kb]
    da, db = ja - ka, jb - kb
    for d in np.intersect1d(da, db):
        sa, sb = da == d, db == d
        yield va[sa], (ja + ka)[sa], vb[sb], (jb + kb)[sb]


def inner_product(phi: PolyGauss, psi: PolyGauss) -> complex:
    """Exact <phi|psi> over the plane.

    Only equal angular momenta j - k couple. Within a sector the integrand is
    a polynomial in t = |z|^2/2 against e^{-t}, so Gauss-Laguerre quadrature
    with enough nodes is exact; unlike summing signed Gaussian moments it does
    not cancel catastrophically for high Landau levels.
    """
    if phi.is_zero or psi.is_zero:
        return 0j
    total = 0j
    for va, la, vb, lb in _sectors(phi, psi):
        nodes = (la.max() + lb.max()) // 4 + 1
        t, w = roots_laguerre(nodes)
        rho = np.sqrt(2 * t)
        sw = np.sqrt(w)
        a = (va[:, None] * rho[None, :] ** la[:, None]).sum(axis=0) * sw
        b = (vb[:, None] * rho[None, :] ** lb[:, None]).sum(axis=0) * sw
        total += 2 * math.pi * np.sum(a * b)
    return complex(total)


def inner_product_moments(phi: PolyGauss, psi: PolyGauss) -> complex:
    """<phi|psi> summed term by term from int z^j zbar^k e^{-|z|^2/2} = delta_jk 2 pi 2^j j!.

    Exact in exact arithmetic but loses digits to cancellation for high levels;
    kept as an independent route for checks.
    """
    if phi.is_zero or psi.is_zero:
        return 0j
    total = 0j
    for va, la, vb, lb in _sectors(phi, psi):
        # split M_n as sqrt(M_a) sqrt(M_b) * M_n / sqrt(M_a M_b) to avoid overflow
        half_a = np.exp(0.5 * _log_moment(la))
        half_b = np.exp(0.5 * _log_moment(lb))
        n = (la[:, None] + lb[None, :]) // 2
        ratio = np.exp(_log_moment(n) - 0.5 * _log_moment(la)[:, None] - 0.5 * _log_moment(lb)[None, :])
        total += np.sum((va * half_a)[:, None] * (vb * half_b)[None, :] * ratio)
    return complex(total)


def norm(psi: PolyGauss) -> float:
    return math.sqrt(max(inner_product(psi, psi).real, 0.0))


def evaluate(psi: PolyGauss, x, y) -> np.ndarray:
    """Values ``P(z, zbar) exp(-|z|^2/4)`` at points ``z = x + iy`` (broadcast)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = x + 1j * y
    if psi.is_zero:
        return np.zeros(z.shape, dtype=complex)
    zb = np.conj(z)
    c = psi.coeffs
    out = np.zeros(z.shape, dtype=complex)
    for j in range(c.shape[0] - 1, -1, -1):
        nz = np.nonzero(c[j])[0]
        if nz.size:
            row = np.full(z.shape, c[j, nz[-1]])
            for k in range(nz[-1] - 1, -1, -1):
                row = row * zb + c[j, k]
            out = out * z + row
        else:
            out = out * z
    return out * np.exp(-0.25 * (x * x + y * y))


def evaluate_points(psi: PolyGauss, points) -> np.ndarray:
    """Evaluate at an iterable of (x, y) pairs, preserving order."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    return evaluate(psi, pts[:, 0], pts[:, 1])
