"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.  Tolerances are fixed here, not calibrated anywhere
else.
"""

import math

import numpy as np
import pytest

from oracles import transfer_matrix_reflection
from vfl.asymptotics import ideal_mirror_closed_forms, large_distance_force, static_radial_integral
from vfl.cli import main
from vfl.forces import (
    AtomProperties,
    Polarizability,
    atom_force,
    atom_force_vacuum,
    cavity_force_split,
    interface_force,
    medium_assisted_semiinfinite,
    screened_semiinfinite,
)
from vfl.fresnel import compose_reflection
from vfl.geometry import CavityScene, InterfaceScene, Layer
from vfl.materials import (
    Constant,
    LorentzOscillators,
    Oscillator,
    PerfectMirror,
    VACUUM,
    response_at,
    static_response,
)
from vfl.quadrature import QuadratureSpec
from vfl.stress import LayerContext, g_minkowski, g_mode, mode_identity_check

PM = PerfectMirror("conducting")
PM_MAG = PerfectMirror("permeable")
MIRROR = LorentzOscillators((Oscillator(1.0, 1.0, 0.05),))
MEDIUM = LorentzOscillators((Oscillator(1.0, 0.5, 0.05),))
SLAB = LorentzOscillators((Oscillator(1.0, 1.0, 0.05),))


def record(name: str, ok: bool, detail: str):
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def fitted_slope(fn, distances):
    values = [fn(d) for d in distances]
    assert all(v.converged for v in values)
    return float(np.polyfit(np.log(distances), np.log(np.abs([v.value for v in values])), 1)[0])


def test_c01_vacuum_casimir_anchor():
    target = math.pi**2 / 240.0
    worst = 0.0
    for d in (1.0, 10.0):
        scene = CavityScene(None, math.inf, PM, 1.0, d, PM, VACUUM)
        screened, _, _ = cavity_force_split(scene)
        worst = max(worst, abs(screened.value * d**4 / target - 1.0))
    record("C01 vacuum-casimir-anchor", worst <= 1e-4, f"max rel dev {worst:.2e} <= 1e-4")


def test_c02_assisted_vanishes_in_vacuum():
    scene = CavityScene(None, math.inf, PM, 1.0, 1.0, PM, VACUUM)
    screened, assisted, _ = cavity_force_split(scene)
    bound = 1e-12 * abs(screened.value)
    record(
        "C02 medium-assisted-vanishing",
        abs(assisted.value) <= bound,
        f"|f2| = {abs(assisted.value):.2e} <= 1e-12*|f1| = {bound:.2e}",
    )


def test_c03_kernels_coincide_in_vacuum():
    rng = np.random.default_rng(303)
    resp = response_at(VACUUM, 0.0)
    worst = 0.0
    for _ in range(1000):
        d = float(rng.uniform(0.3, 3.0))
        ctx = LayerContext(float(rng.uniform(-0.95, 0.95)), float(rng.uniform(-0.95, 0.95)), d, resp)
        xi, k = float(rng.uniform(0.0, 3.0)), float(rng.uniform(0.0, 3.0))
        if xi == 0.0 and k == 0.0:
            continue
        z = float(rng.uniform(0.0, d))
        q = "p" if rng.integers(2) else "s"
        a = g_mode(q, xi, k, ctx, z)
        b = g_minkowski(q, xi, k, ctx)
        worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-30))
    record("C03 vacuum-kernel-coincidence", worst <= 1e-12, f"max rel dev {worst:.2e} <= 1e-12")


def test_c04_split_consistency_random_cavities():
    rng = np.random.default_rng(404)
    worst_ratio = 0.0
    for i in range(10):
        medium = LorentzOscillators((Oscillator(1.0, float(rng.uniform(0.3, 0.8)), 0.05),))
        slab = Constant(float(rng.uniform(1.3, 4.0)), float(rng.uniform(1.0, 1.6)))
        mirrors = []
        for _ in range(2):
            if rng.integers(2):
                mirrors.append(PM if rng.integers(2) else PM_MAG)
            else:
                mirrors.append(Constant(float(rng.uniform(2.0, 8.0)), float(rng.uniform(1.0, 2.0))))
        scene = CavityScene(
            mirror1=mirrors[0],
            gap1=float(rng.uniform(1.2, 2.0)),
            slab_material=slab,
            slab_thickness=float(rng.uniform(0.1, 0.8)),
            gap2=float(rng.uniform(0.5, 1.0)),
            mirror2=mirrors[1],
            medium=medium,
        )
        screened, assisted, total = cavity_force_split(scene)
        combined = screened.error_estimate + assisted.error_estimate + total.error_estimate
        gap = abs(total.value - (screened.value + assisted.value))
        worst_ratio = max(worst_ratio, gap / (3.0 * combined))
    record(
        "C04 split-consistency",
        worst_ratio <= 1.0,
        f"max |fs-(f1+f2)| / (3x combined error) = {worst_ratio:.3f} <= 1",
    )


def test_c05a_ideal_medium_closed_form_assisted():
    med = Constant(2.0, 1.0)
    big = Constant(1e6, 1.0)
    scene = CavityScene(None, math.inf, big, math.inf, 1.0, big, med)
    f2_id, _ = ideal_mirror_closed_forms(2.0, 1.0)
    f2 = large_distance_force("assisted_lifshitz", scene, 1.0)
    dev = abs(f2.value / f2_id - 1.0)
    record("C05a ideal-medium-assisted-closed-form", dev <= 5e-3, f"rel dev {dev:.2e} <= 5e-3")


def test_c05b_ideal_medium_closed_form_screened():
    # The screened force approaches its ideal-mirror limit only like
    # ln(eps)/sqrt(eps); at eps = 1e6 the physical deviation is 2.4%, so the
    # stated 0.5% cannot be met by a correct evaluation.  The criterion is
    # asserted as written; the convergence sequence below documents that the
    # integral itself is right.
    med = Constant(2.0, 1.0)
    _, f1_id = ideal_mirror_closed_forms(2.0, 1.0)
    for eps in (1e8, 1e10):
        big = Constant(eps, 1.0)
        scene = CavityScene(None, math.inf, big, math.inf, 1.0, big, med)
        dev = abs(large_distance_force("screened_lifshitz", scene, 1.0).value / f1_id - 1.0)
        print(f"[acceptance]   (info) screened closed-form deviation at eps={eps:.0e}: {dev:.2e}")
    big = Constant(1e6, 1.0)
    scene = CavityScene(None, math.inf, big, math.inf, 1.0, big, med)
    f1 = large_distance_force("screened_lifshitz", scene, 1.0)
    dev = abs(f1.value / f1_id - 1.0)
    record("C05b ideal-medium-screened-closed-form", dev <= 5e-3, f"rel dev {dev:.2e} <= 5e-3")


def test_c05c_ideal_ratio_one_third():
    f2, f1 = ideal_mirror_closed_forms(1e4, 1.0)
    dev = abs(f2 / f1 * 3.0 - 1.0)
    record("C05c ideal-ratio-one-third", dev <= 1e-2, f"|3 f2/f1 - 1| = {dev:.2e} <= 1e-2")


def test_c06_power_law_suite():
    thick = math.inf
    small_window = [5e-4 * 10 ** (i / 4) for i in range(5)]
    vdw_window = [2e-3 * 10 ** (i / 4) for i in range(5)]
    large_window = [25.0 * 10 ** (i / 4) for i in range(5)]

    checks = []
    s = fitted_slope(lambda d: medium_assisted_semiinfinite(MIRROR, MEDIUM, SLAB, thick, d), small_window)
    checks.append(("assisted small-d", s, -1.0))
    s = fitted_slope(lambda d: screened_semiinfinite(MIRROR, MEDIUM, SLAB, thick, d), vdw_window)
    checks.append(("screened small-d", s, -3.0))
    s = fitted_slope(lambda d: medium_assisted_semiinfinite(MIRROR, MEDIUM, SLAB, thick, d), large_window)
    checks.append(("assisted large-d", s, -4.0))
    s = fitted_slope(lambda d: medium_assisted_semiinfinite(MIRROR, MEDIUM, SLAB, 2e-5, d), vdw_window)
    checks.append(("assisted thin small-d", s, -2.0))
    s = fitted_slope(lambda d: medium_assisted_semiinfinite(MIRROR, MEDIUM, SLAB, 0.2, d), large_window)
    checks.append(("assisted thin large-d", s, -5.0))

    detail = "; ".join(f"{name} {slope:.3f} (target {target})" for name, slope, target in checks)
    ok = all(abs(slope - target) <= 0.05 for _, slope, target in checks)
    record("C06 power-law-suite", ok, detail)


def test_c07_medium_layer_radial_anchor():
    vac0 = static_response(VACUUM)
    plus = static_radial_integral(vac0, PM)
    minus = static_radial_integral(vac0, PM_MAG)
    dev = max(abs(plus.value - 2.0 / 3.0), abs(minus.value + 2.0 / 3.0))
    record("C07 medium-layer-radial-anchor", dev <= 1e-9, f"max |dev| {dev:.2e} <= 1e-9")


def test_c08_atom_forces():
    atom = AtomProperties(alpha_e=Polarizability(1.0))
    worst_cp = 0.0
    worst_ratio = 0.0
    for d in (10.0, 30.0):
        fa_vac = atom_force_vacuum(PM, atom, d)
        fa = atom_force(PM, atom, d)
        cp = 3.0 / (2.0 * math.pi * d**5)
        worst_cp = max(worst_cp, abs(fa_vac.value / cp - 1.0))
        worst_ratio = max(worst_ratio, abs(3.0 * fa.value / fa_vac.value - 1.0))
    osc_atom = AtomProperties(alpha_e=Polarizability(1.0, 1.0, 0.0))
    slope = fitted_slope(
        lambda d: atom_force(MIRROR, osc_atom, d), [2e-3 * 10 ** (i / 4) for i in range(5)]
    )
    ok = worst_cp <= 1e-2 and worst_ratio <= 2e-2 and abs(slope + 2.0) <= 0.05
    record(
        "C08 atom-forces",
        ok,
        f"CP dev {worst_cp:.2e} <= 1e-2; ratio dev {worst_ratio:.2e} <= 2e-2; small-d slope {slope:.3f}",
    )


def test_c09_fresnel_recursion_oracle():
    rng = np.random.default_rng(909)
    worst = 0.0
    worst_dual = 0.0
    for _ in range(1000):
        n_interior = int(rng.integers(0, 3))
        mats = [
            Constant(float(rng.uniform(1.0, 6.0)), float(rng.uniform(1.0, 3.0)))
            for _ in range(n_interior + 2)
        ]
        ds = [float(rng.uniform(0.01, 1.0)) for _ in range(n_interior)]

        def build(ms):
            stack = [Layer(ms[0], math.inf)]
            stack += [Layer(m, d) for m, d in zip(ms[1:-1], ds)]
            stack.append(Layer(ms[-1], math.inf))
            return stack

        stack = build(mats)
        xi, k = float(rng.uniform(0.01, 2.0)), float(rng.uniform(0.0, 2.0))
        q = "p" if rng.integers(2) else "s"
        mine = compose_reflection(q, xi, k, stack)
        ref = transfer_matrix_reflection(q, xi, k, [(ly.material, ly.thickness) for ly in stack])
        worst = max(worst, abs(mine - ref) / max(abs(ref), 1e-14))
        swapped = build([Constant(m.mu, m.epsilon) for m in mats])
        dual = compose_reflection("s" if q == "p" else "p", xi, k, swapped)
        worst_dual = max(worst_dual, abs(mine - dual) / max(abs(mine), 1e-14))
    ok = worst <= 1e-12 and worst_dual <= 1e-12
    record(
        "C09 fresnel-recursion-oracle",
        ok,
        f"transfer-matrix dev {worst:.2e} <= 1e-12; duality dev {worst_dual:.2e} <= 1e-12",
    )


def test_c10_correlator_identity():
    rng = np.random.default_rng(1010)
    worst = 0.0
    for _ in range(100):
        resp = response_at(
            Constant(float(rng.uniform(1.0, 5.0)), float(rng.uniform(1.0, 2.5))), 0.0
        )
        d = float(rng.uniform(0.3, 3.0))
        ctx = LayerContext(float(rng.uniform(-0.9, 0.9)), float(rng.uniform(-0.9, 0.9)), d, resp)
        xi, k = float(rng.uniform(0.01, 3.0)), float(rng.uniform(0.0, 3.0))
        z = float(rng.uniform(0.0, d))
        scale = resp.n_squared * xi * xi + k * k
        for q in ("p", "s"):
            lhs, rhs, diff = mode_identity_check(q, xi, k, ctx, z)
            worst = max(worst, diff / max(abs(lhs), abs(rhs), scale))
    record("C10 correlator-identity", worst <= 1e-12, f"max rel dev {worst:.2e} <= 1e-12")


def test_c11_interface_force():
    spec = QuadratureSpec(rel_tol_outer=1e-6, rel_tol_inner=1e-8)
    sym = interface_force(InterfaceScene(MEDIUM, MEDIUM, 0.5, 0.5), spec)
    scene = InterfaceScene(MEDIUM, Constant(1.4, 1.0), 0.4, 0.7)
    swapped = InterfaceScene(Constant(1.4, 1.0), MEDIUM, 0.7, 0.4)
    a = interface_force(scene, spec)
    b = interface_force(swapped, spec)
    anti_dev = abs(a.value + b.value) / max(abs(a.value), 1e-30)
    tol = 3.0 * (a.error_estimate + b.error_estimate) / max(abs(a.value), 1e-30)
    ok = abs(sym.value) <= 1e-12 and anti_dev <= max(tol, 1e-6)
    record(
        "C11 interface-force",
        ok,
        f"symmetric |f| = {abs(sym.value):.1e} <= 1e-12; swap antisymmetry dev {anti_dev:.2e}",
    )


def test_c12_cli_determinism(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text(
        """
materials:
  mirror: {model: perfect, kind: conducting}
scene:
  type: cavity
  gap1: .inf
  slab: {material: mirror, thickness: 1.0}
  mirror2: mirror
  medium: vacuum
sweep: {d_min: 1.0, d_max: 4.0, points: 3, spacing: log}
compute: {forces: [screened], mode: lorentz, regime: full}
quadrature: {rel_tol_outer: 1.0e-4, rel_tol_inner: 1.0e-6}
"""
    )
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    code1 = main(["run", "--config", str(config), "--output", str(out1), "--no-header-timestamp"])
    code2 = main(["run", "--config", str(config), "--output", str(out2), "--no-header-timestamp"])
    identical = out1.read_bytes() == out2.read_bytes()

    bad = tmp_path / "bad.yaml"
    bad.write_text(config.read_text().replace("mirror2: mirror", "mirror2: au"))
    code_bad = main(["run", "--config", str(bad), "--output", str(tmp_path / "x.csv")])

    ok = code1 == 0 and code2 == 0 and identical and code_bad == 2
    record(
        "C12 cli-determinism",
        ok,
        f"exit codes {code1}/{code2}, byte-identical={identical}, invalid-config exit={code_bad}",
    )
