"""Local spin density of eigenspinors on the plane.

At every point the texture holds the density ``rho = psi^dag psi`` and the
unnormalized spin density ``s_i = psi^dag sigma_i psi``. For a single
spin-split level the in-plane part points along the radius (its tangential
projection vanishes) and flips sign between the two branches.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import map_coordinates
from scipy.signal import find_peaks

from .grid import GridSpec
from .params import NaturalParams
from .polybasis import PolyGauss, evaluate
from .spectrum import Branch, LevelKey, Spinor, eigenspinor

COMPONENTS = ("rho", "sx", "sy", "sz")
DENSITY_MASK = 1e-15
PROMINENCE = 1e-6

DEFAULT_GRID = GridSpec(6.0, 256)


def thread_count() -> int:
    env = os.environ.get("RASHBA_LANDAU_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True, eq=False)
class SpinTexture:
    grid: GridSpec
    rho: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    normalized: bool = False

    def component(self, name: str) -> np.ndarray:
        if name not in COMPONENTS:
            raise ValueError(f"component must be one of {COMPONENTS}")
        return getattr(self, name)

    def radial_projection(self) -> np.ndarray:
        """In-plane spin along the outward radius, (x sx + y sy) / |r| (zero at the origin)."""
        X, Y = self.grid.mesh()
        r = np.hypot(X, Y)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = (X * self.sx + Y * self.sy) / r
        return np.where(r > 0, out, 0.0)

    def tangential_projection(self) -> np.ndarray:
        """In-plane spin along the counter-clockwise tangent, (x sy - y sx) / |r|."""
        X, Y = self.grid.mesh()
        r = np.hypot(X, Y)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = (X * self.sy - Y * self.sx) / r
        return np.where(r > 0, out, 0.0)

    def total(self, name: str = "rho") -> float:
        """Trapezoidal integral of a component over the window."""
        from scipy.integrate import trapezoid

        a = self.grid.axis
        return float(trapezoid(trapezoid(self.component(name), a, axis=1), a, axis=0))


def densities(up: np.ndarray, down: np.ndarray):
    """(rho, sx, sy, sz) from sampled spinor components."""
    pu = np.abs(up) ** 2
    pd = np.abs(down) ** 2
    cross = 2 * np.conj(up) * down
    return pu + pd, cross.real, cross.imag, pu - pd


def spin_density_at(state: Spinor, x, y):
    """(rho, sx, sy, sz) of an analytic spinor at arbitrary points."""
    return densities(evaluate(state.up, x, y), evaluate(state.down, x, y))


def _normalize(rho, sx, sy, sz):
    masked = rho < DENSITY_MASK
    with np.errstate(invalid="ignore", divide="ignore"):
        out = [np.where(masked, np.nan, c / rho) for c in (sx, sy, sz)]
    return out


def texture_from_samples(up: np.ndarray, down: np.ndarray, grid: GridSpec,
                         normalized: bool = False) -> SpinTexture:
    rho, sx, sy, sz = densities(up, down)
    if normalized:
        sx, sy, sz = _normalize(rho, sx, sy, sz)
    return SpinTexture(grid, rho, sx, sy, sz, normalized)


def spin_density(state: Spinor, grid: GridSpec = DEFAULT_GRID, normalized: bool = False,
                 threads: int | None = None) -> SpinTexture:
    """Texture of ``state`` on ``grid``.

    With ``normalized`` the in-plane and z fields are divided by rho, and points
    where rho < 1e-15 become NaN. Rows are evaluated in independent blocks, so the
    result does not depend on the thread count.
    """
    if not isinstance(grid, GridSpec):
        raise TypeError("grid must be a GridSpec")
    X, Y = grid.mesh()
    n = grid.resolution
    workers = threads or thread_count()
    bounds = np.linspace(0, n, min(workers, n) + 1).astype(int)

    def block(i):
        lo, hi = bounds[i], bounds[i + 1]
        return spin_density_at(state, X[lo:hi], Y[lo:hi])

    if len(bounds) > 2:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(block, range(len(bounds) - 1)))
    else:
        parts = [block(0)]
    rho, sx, sy, sz = (np.concatenate([p[c] for p in parts]) for c in range(4))
    if normalized:
        sx, sy, sz = _normalize(rho, sx, sy, sz)
    return SpinTexture(grid, rho, sx, sy, sz, normalized)


def superpose(weights, s: int, branch, p: NaturalParams) -> Spinor:
    """Normalized sum over m of a_m times the (s, branch, m) eigenspinor.

    ``weights`` is an iterable of (m, a_m); repeated m values are summed. Spinors
    with different m are orthonormal, so the norm is (sum |a_m|^2)^(-1/2).
    """
    combined: dict[int, complex] = {}
    for m, a in weights:
        if m < 0:
            raise ValueError("m must be non-negative")
        combined[int(m)] = combined.get(int(m), 0j) + complex(a)
    total = math.sqrt(sum(abs(a) ** 2 for a in combined.values()))
    if total == 0:
        raise ValueError("superposition needs at least one nonzero weight")
    up, down = PolyGauss.zero(), PolyGauss.zero()
    e = float("nan")
    for m, a in sorted(combined.items()):
        if a == 0:
            continue
        st = eigenspinor(LevelKey(s, branch, m), p)
        up = up + st.up * (a / total)
        down = down + st.down * (a / total)
        e = st.energy
    terms = ", ".join(f"{m}:{a:.6g}" for m, a in sorted(combined.items()))
    label = f"(s={s}, {Branch(branch).value}, m-weights {{{terms}}})"
    return Spinor(up, down, label, e)


@dataclass(frozen=True)
class RadialProfile:
    radius: np.ndarray
    mean: np.ndarray
    spread: np.ndarray

    def __iter__(self):
        return iter(zip(self.radius, self.mean, self.spread))

    def local_maxima(self, prominence: float = PROMINENCE) -> np.ndarray:
        """Radii of local maxima of the angular mean, an on-axis peak included."""
        v = self.mean
        mirrored = np.concatenate([v[:0:-1], v])
        scale = np.max(np.abs(v)) or 1.0
        peaks, _ = find_peaks(mirrored, prominence=prominence * scale)
        idx = peaks - (len(v) - 1)
        return self.radius[np.unique(np.abs(idx))]

    @property
    def radius_of_max(self) -> float:
        return float(self.radius[np.argmax(self.mean)])


def radial_profile(t: SpinTexture, component: str = "rho", n_angles: int = 64,
                   radii=None) -> RadialProfile:
    """Angular mean and standard deviation of a texture field on circles.

    Values off the grid nodes come from cubic-spline interpolation. Default
    radii run from 0 to the window half-width in steps of the grid spacing.
    """
    field = t.component(component)
    g = t.grid
    if radii is None:
        h = g.spacing
        radii = np.arange(0, int(np.floor(g.extent / h)) + 1) * h
    radii = np.asarray(radii, dtype=float)
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    xs = radii[:, None] * np.cos(theta)[None, :]
    ys = radii[:, None] * np.sin(theta)[None, :]
    # fractional indices: column follows x, row follows y
    col = (xs + g.extent) / g.spacing
    row = (ys + g.extent) / g.spacing
    vals = map_coordinates(np.nan_to_num(field), [row.ravel(), col.ravel()], order=3,
                           mode="nearest").reshape(xs.shape)
    return RadialProfile(radii, vals.mean(axis=1), vals.std(axis=1))


def ring_values(state: Spinor, radius: float, n_angles: int = 64, component: str = "rho") -> np.ndarray:
    """A texture component evaluated exactly on a circle (no interpolation)."""
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    vals = spin_density_at(state, radius * np.cos(theta), radius * np.sin(theta))
    return vals[COMPONENTS.index(component)]


def to_csv(t: SpinTexture) -> str:
    """``x,y,rho,sx,sy,sz`` rows, y outer and x inner, 17 significant digits."""
    X, Y = t.grid.mesh()
    cols = [X, Y, t.rho, t.sx, t.sy, t.sz]
    flat = np.column_stack([c.ravel() for c in cols])
    lines = ["x,y,rho,sx,sy,sz"]
    lines.extend(",".join(format(v, ".17g") for v in row) for row in flat)
    return "\n".join(lines) + "\n"


def to_json(t: SpinTexture, params: dict | None = None, state: str = "") -> str:
    X, Y = t.grid.mesh()

    def enc(a):
        return [None if not np.isfinite(v) else float(format(v, ".17g")) for v in np.asarray(a).ravel()]

    doc = {
        "grid": {**t.grid.as_dict(), "ordering": "row-major, y outer, x inner"},
        "state": state,
        "normalized": t.normalized,
        "parameters": params or {},
        "x": enc(X), "y": enc(Y),
        "rho": enc(t.rho), "sx": enc(t.sx), "sy": enc(t.sy), "sz": enc(t.sz),
    }
    return json.dumps(doc, sort_keys=True) + "\n"
