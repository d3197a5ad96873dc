"""End-to-end acceptance criteria.

Every test prints one PASS/FAIL line, also repeated in the pytest terminal
summary, with the measured value against its pinned tolerance and the runtime.
"""

import time

import numpy as np
from conftest import ACCEPTANCE_LINES

from rashba_landau import oracle, suite
from rashba_landau.grid import GridSpec
from rashba_landau.params import NaturalParams
from rashba_landau.spectrum import LevelKey, eigenspinor
from rashba_landau.texture import (radial_profile, ring_values, spin_density, spin_density_at,
                                   texture_from_samples)

P = NaturalParams.from_xi(0.4, 0.3)


class Criterion:
    def __init__(self, label, budget):
        self.label = label
        self.budget = budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        return False

    def report(self, ok, detail):
        dt = time.perf_counter() - self.t0
        ok = bool(ok) and dt < self.budget
        line = f"{'PASS' if ok else 'FAIL'}  {self.label}: {detail}  [{dt:.2f} s, budget {self.budget:g} s]"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line


def test_1_spectrum_matches_diagonalization():
    with Criterion("1 spectrum vs 2x2 eigh, s <= 20, 5x5 parameter grid", 1.0) as c:
        r = suite.check_spectrum(20)
        c.report(r["max_energy_error"] < 1e-12 and r["max_overlap_error"] < 1e-12,
                 f"max |dE| = {r['max_energy_error']:.2e}, max ||<v|u>| - 1| = "
                 f"{r['max_overlap_error']:.2e} (tol 1e-12)")


def test_2_schrodinger_residual():
    with Criterion("2 finite-difference residual, s <= 3, m <= 3, both branches", 60.0) as c:
        r = suite.check_residuals(P, suite.residual_keys(3, 3), GridSpec.from_spacing(6.0, 0.01))
        c.report(r["max_residual"] < 1e-4 and r["min_negative_control"] > 1e-2,
                 f"{len(r['states'])} states, max residual {r['max_residual']:.2e} (tol 1e-4), "
                 f"weakest E+0.1 control {r['min_negative_control']:.2e} (> 1e-2)")


def test_3_orthonormality():
    with Criterion("3 orthonormality n, n' <= 6, m <= 6", 10.0) as c:
        r = suite.check_orthonormality(6, 6, GridSpec(10.0, 401))
        c.report(r["max_analytic_error"] < 1e-9 and r["max_quadrature_gap"] < 1e-6,
                 f"analytic {r['max_analytic_error']:.2e} (tol 1e-9), quadrature gap "
                 f"{r['max_quadrature_gap']:.2e} (tol 1e-6, window 10r, 401^2)")


def test_4_gauge_invariance():
    with Criterion("4 gauge invariance, extent 4r, K = 40, both branches", 5.0) as c:
        r = suite.check_gauge(P)
        devs = [x["max_abs_deviation"] for x in r["reports"]]
        c.report(r["passed"], f"max dev plus {devs[0]:.2e}, minus {devs[1]:.2e} (tol 1e-8); "
                              f"K = 2 control failed: {r['truncated_control_failed']}")


def _parity(t):
    """(sx odd in x, sx even in y, sy odd in y, sy even in x) as max violations."""
    return (np.max(np.abs(t.sx[:, ::-1] + t.sx)), np.max(np.abs(t.sx[::-1, :] - t.sx)),
            np.max(np.abs(t.sy[::-1, :] + t.sy)), np.max(np.abs(t.sy[:, ::-1] - t.sy)))


def test_5_texture_structure():
    with Criterion("5 (s=1, m=1, +) texture structure", 10.0) as c:
        st = eigenspinor(LevelKey(1, "plus", 1), P)
        notes = []
        # (a) rho and s_z rotationally symmetric
        a = max(np.std(ring_values(st, r, 64, comp)) for r in (0.5, 1.0, 1.5, 2.5) for comp in ("rho", "sz"))
        notes.append(f"a: spread {a:.1e}")
        # (b) in-plane magnitude rotationally symmetric
        th = 2 * np.pi * np.arange(64) / 64
        b = 0.0
        for r in (0.5, 1.0, 1.5, 2.5):
            _, sx, sy, _ = spin_density_at(st, r * np.cos(th), r * np.sin(th))
            b = max(b, np.std(np.hypot(sx, sy)))
        notes.append(f"b: spread {b:.1e}")
        # (c) dipolar parity, frozen only where the independent oracle state agrees
        g = GridSpec.from_spacing(6.0, 0.02)
        lib = spin_density(st, g)
        _, states = oracle.fd_level_states(1, 1, P, g)
        ref = texture_from_samples(*states[1], g)
        lib_par, ref_par = max(_parity(lib)), max(_parity(ref))
        agree = max(np.max(np.abs(lib.sx - ref.sx)), np.max(np.abs(lib.sy - ref.sy)))
        tangential = max(np.max(np.abs(lib.tangential_projection())),
                         np.max(np.abs(ref.tangential_projection())))
        radial = np.max(np.abs(lib.radial_projection()))
        c_ok = lib_par < 1e-12 and ref_par < 1e-8 and agree < 1e-5 and tangential < 1e-8
        notes.append(f"c: sx odd in x / even in y, sy odd in y / even in x; violation lib {lib_par:.1e}, "
                     f"oracle {ref_par:.1e}; lib-oracle {agree:.1e}; spin radial "
                     f"(tangential {tangential:.1e}, radial up to {radial:.2f})")
        # (d) branch minus flips the in-plane spin
        minus = spin_density(eigenspinor(LevelKey(1, "minus", 1), P), g)
        d = max(np.max(np.abs(minus.sx + lib.sx)), np.max(np.abs(minus.sy + lib.sy)))
        notes.append(f"d: {d:.1e}")
        # (e) lowest level is fully spin down
        lll = spin_density(eigenspinor(LevelKey.lll(1), P), g)
        e_ok = np.all(lll.sx == 0) and np.all(lll.sy == 0) and np.array_equal(lll.sz, -lll.rho)
        notes.append(f"e: {'exact' if e_ok else 'violated'}")
        c.report(a < 1e-8 and b < 1e-8 and c_ok and d < 1e-10 and e_ok, "; ".join(notes))


def test_5c_tangential_parity_is_refuted():
    """The literal tangential (sin t, -cos t) reading fails against the oracle state."""
    g = GridSpec.from_spacing(4.0, 0.02)
    _, states = oracle.fd_level_states(1, 1, P, g)
    ref = texture_from_samples(*states[1], g)
    tang = (np.max(np.abs(ref.sx[::-1, :] + ref.sx)), np.max(np.abs(ref.sx[:, ::-1] - ref.sx)))
    line = (f"NOTE  5c literal 'sx odd in y, even in x': oracle violation {max(tang):.2e}, "
            "so the oracle-confirmed radial parity is what 5 freezes")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert max(tang) > 1e-3


def test_6_structure_counts():
    with Criterion("6 ring radius vs m and ripple counts", 30.0) as c:
        g = GridSpec(6.0, 512)
        radii = {}
        for branch in ("plus", "minus"):
            radii[branch] = [radial_profile(spin_density(eigenspinor(LevelKey(1, branch, m), P), g)).radius_of_max
                             for m in range(1, 5)]
        mono = all(all(b > a for a, b in zip(r, r[1:])) for r in radii.values())
        counts = []
        for s in range(4):
            key = LevelKey.lll(0) if s == 0 else LevelKey(s, "plus", s)
            counts.append(len(radial_profile(spin_density(eigenspinor(key, P), g)).local_maxima()))
        c.report(mono and counts == [1, 2, 3, 4],
                 f"s=1 radius of max rho for m=1..4: plus {np.round(radii['plus'], 3).tolist()}, "
                 f"minus {np.round(radii['minus'], 3).tolist()}; maxima for (s, m=s, +) s=0..3: {counts} "
                 f"(want s+1)")


def test_7_ladder_algebra():
    with Criterion("7 ladder algebra", 1.0) as c:
        r = suite.check_ladder()
        c.report(r["passed"], f"[a, a^dag] - 1: {r['commutator_error']:.1e}, ||a^dag psi_n||^2 - (n+1): "
                              f"{r['raised_norm_error']:.1e}, a psi_0m: {r['lll_annihilation']:.1e} (tol 1e-10)")


def test_verify_quick_budget():
    with Criterion("verify --quick suite", 30.0) as c:
        r = suite.run_suite(P, quick=True)
        c.report(r["passed"], ", ".join(f"{x['name']} {'ok' if x['passed'] else 'FAIL'}" for x in r["checks"]))


def test_verify_full_budget():
    with Criterion("verify --full suite", 300.0) as c:
        r = suite.run_suite(P, quick=False)
        c.report(r["passed"], ", ".join(f"{x['name']} {'ok' if x['passed'] else 'FAIL'}" for x in r["checks"]))
