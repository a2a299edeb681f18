import math

import numpy as np
import pytest

from vfl.geometry import CavityScene, InterfaceScene
from vfl.materials import Constant, LorentzOscillators, Oscillator, PerfectMirror, VACUUM, response_at
from vfl.quadrature import QuadratureSpec
from vfl.stress import (
    LayerContext,
    correlator_traces,
    g_minkowski,
    g_mode,
    interface_force,
    mode_identity_check,
    stress_zz,
)

PM = PerfectMirror("conducting")
LORENTZ = LorentzOscillators((Oscillator(1.0, 1.0, 0.1),))
LOOSE = QuadratureSpec(rel_tol_outer=1e-5, rel_tol_inner=1e-7)


def _random_ctx(rng, unit_response=False):
    if unit_response:
        resp = response_at(VACUUM, 0.0)
    else:
        resp = response_at(Constant(float(rng.uniform(1.0, 5.0)), float(rng.uniform(1.0, 2.5))), 0.0)
    d = float(rng.uniform(0.3, 3.0))
    return (
        LayerContext(
            r_minus=float(rng.uniform(-0.9, 0.9)),
            r_plus=float(rng.uniform(-0.9, 0.9)),
            thickness=d,
            response=resp,
        ),
        d,
    )


def test_vacuum_layer_kernels_coincide():
    # with unit response the medium-aware kernel is the conventional one
    rng = np.random.default_rng(101)
    for _ in range(1000):
        ctx, d = _random_ctx(rng, unit_response=True)
        xi, k = float(rng.uniform(0.0, 3.0)), float(rng.uniform(0.0, 3.0))
        if xi == 0.0 and k == 0.0:
            continue
        z = float(rng.uniform(0.0, d))
        for q in ("p", "s"):
            a = g_mode(q, xi, k, ctx, z)
            b = g_minkowski(q, xi, k, ctx)
            assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


def test_minkowski_frozen_value():
    ctx = LayerContext(0.5, 0.5, 1.0, response_at(VACUUM, 0.0))
    expected = -4.0 * 0.25 * math.exp(-2.0) / (1.0 - 0.25 * math.exp(-2.0))
    assert g_minkowski("p", 0.0, 1.0, ctx) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(-0.140074, abs=1e-6)


def test_minkowski_zero_without_reflection():
    ctx = LayerContext(0.0, 0.7, 1.0, response_at(VACUUM, 0.0))
    assert g_minkowski("p", 1.0, 1.0, ctx) == 0.0


def test_mode_kernel_symmetry():
    # symmetric bounding stacks make g symmetric about the layer center
    ctx = LayerContext(0.6, 0.6, 2.0, response_at(Constant(2.0, 1.3), 0.7))
    for q in ("p", "s"):
        a = g_mode(q, 0.7, 0.9, ctx, 0.35)
        b = g_mode(q, 0.7, 0.9, ctx, 2.0 - 0.35)
        assert a == pytest.approx(b, rel=1e-14)


def test_external_vacuum_layer_vanishes():
    ctx = LayerContext(0.0, 0.8, math.inf, response_at(VACUUM, 0.5), external="left")
    assert g_mode("p", 0.5, 0.5, ctx, -1.0) == 0.0


def test_z_bounds_checked():
    ctx = LayerContext(0.1, 0.1, 1.0, response_at(VACUUM, 0.0))
    with pytest.raises(ValueError):
        g_mode("p", 1.0, 1.0, ctx, 1.5)
    left = LayerContext(0.0, 0.5, math.inf, response_at(VACUUM, 0.0), external="left")
    with pytest.raises(ValueError):
        g_mode("p", 1.0, 1.0, left, 0.5)


def test_identity_check_random_samples():
    rng = np.random.default_rng(7)
    for _ in range(100):
        ctx, d = _random_ctx(rng)
        xi, k = float(rng.uniform(0.01, 3.0)), float(rng.uniform(0.0, 3.0))
        z = float(rng.uniform(0.0, d))
        kap2 = ctx.response.n_squared * xi * xi + k * k
        for q in ("p", "s"):
            lhs, rhs, diff = mode_identity_check(q, xi, k, ctx, z)
            # relative to the kernel scale: the identity may cancel to near zero
            assert diff <= 1e-12 * max(abs(lhs), abs(rhs), kap2)


def test_identity_check_vacuum_reduces_to_minkowski():
    rng = np.random.default_rng(17)
    for _ in range(50):
        ctx, d = _random_ctx(rng, unit_response=True)
        xi, k = float(rng.uniform(0.01, 2.0)), float(rng.uniform(0.0, 2.0))
        z = float(rng.uniform(0.0, d))
        for q in ("p", "s"):
            lhs, _, _ = mode_identity_check(q, xi, k, ctx, z)
            assert lhs == pytest.approx(g_minkowski(q, xi, k, ctx), rel=1e-12)


def test_correlator_traces_sum_to_kernels():
    rng = np.random.default_rng(29)
    for _ in range(100):
        resp = response_at(Constant(float(rng.uniform(1.0, 4.0)), float(rng.uniform(1.0, 2.0))), 0.0)
        d = float(rng.uniform(0.5, 2.0))
        ctx_p = LayerContext(float(rng.uniform(-0.8, 0.8)), float(rng.uniform(-0.8, 0.8)), d, resp)
        ctx_s = LayerContext(float(rng.uniform(-0.8, 0.8)), float(rng.uniform(-0.8, 0.8)), d, resp)
        xi, k = float(rng.uniform(0.01, 2.0)), float(rng.uniform(0.0, 2.0))
        z = float(rng.uniform(0.0, d))
        e_tr, b_tr = correlator_traces(xi, k, ctx_p, ctx_s, z)
        total = g_mode("p", xi, k, ctx_p, z) + g_mode("s", xi, k, ctx_s, z)
        scale = resp.n_squared * xi * xi + k * k
        assert abs((e_tr + b_tr) + total) <= 1e-12 * max(abs(total), scale)


def test_correlator_duality():
    # eps <-> mu (with the TM/TE reflections exchanged) maps the electric
    # trace onto the magnetic one exactly
    rng = np.random.default_rng(23)
    for _ in range(50):
        eps, mu = float(rng.uniform(1.0, 4.0)), float(rng.uniform(1.0, 2.0))
        d = float(rng.uniform(0.5, 2.0))
        resp = response_at(Constant(eps, mu), 0.0)
        resp_sw = response_at(Constant(mu, eps), 0.0)
        r_p = (float(rng.uniform(-0.8, 0.8)), float(rng.uniform(-0.8, 0.8)))
        r_s = (float(rng.uniform(-0.8, 0.8)), float(rng.uniform(-0.8, 0.8)))
        xi, k = float(rng.uniform(0.01, 2.0)), float(rng.uniform(0.0, 2.0))
        z = float(rng.uniform(0.0, d))
        ctx_p = LayerContext(*r_p, d, resp)
        ctx_s = LayerContext(*r_s, d, resp)
        _, b_tr = correlator_traces(xi, k, ctx_p, ctx_s, z)
        e_sw, _ = correlator_traces(xi, k, LayerContext(*r_s, d, resp_sw), LayerContext(*r_p, d, resp_sw), z)
        n2 = eps * mu
        scale = n2 * xi * xi + k * k
        assert abs(n2 * e_sw - b_tr) <= 1e-12 * max(abs(b_tr), scale)


def test_semi_infinite_vacuum_stress_is_zero():
    scene = CavityScene(None, math.inf, Constant(2.0), 0.4, 1.0, PM, VACUUM)
    sample = stress_zz(scene, "gap1", -0.5, spec=LOOSE)
    assert sample.value == pytest.approx(0.0, abs=1e-12)


def test_ideal_vacuum_gap_stress():
    # two facing perfect mirrors across total vacuum width 1: the regularized
    # stress is +pi^2/240 inside, independent of position
    scene = CavityScene(PM, 0.5, VACUUM, 0.0, 0.5, PM, VACUUM)
    target = math.pi**2 / 240.0
    for layer, z in (("gap1", 0.25), ("gap2", 0.1), ("gap2", 0.4)):
        sample = stress_zz(scene, layer, z, spec=LOOSE)
        assert sample.converged
        assert sample.value == pytest.approx(target, rel=1e-5)


def test_minkowski_stress_z_independent():
    scene = CavityScene(PM, 1.0, Constant(2.0), 0.3, 1.0, PM, LORENTZ)
    a = stress_zz(scene, "gap2", 0.1, mode="minkowski", spec=LOOSE)
    b = stress_zz(scene, "gap2", 0.9, mode="minkowski", spec=LOOSE)
    assert a.value == pytest.approx(b.value, rel=1e-9)


def test_stress_discontinuity_at_interface():
    # medium-aware stress jumps across a dielectric/vacuum boundary while the
    # conventional one vanishes in both half-spaces
    scene = InterfaceScene(LORENTZ, VACUUM, 0.3, 0.3)
    lorentz_side = stress_zz(scene, "left", -1e-3, spec=LOOSE)
    vacuum_side = stress_zz(scene, "right", 1e-3, spec=LOOSE)
    assert abs(lorentz_side.value) > 1e-6
    assert vacuum_side.value == pytest.approx(0.0, abs=1e-12)
    for layer, z in (("left", -1e-3), ("right", 1e-3)):
        mink = stress_zz(scene, layer, z, mode="minkowski", spec=LOOSE)
        assert mink.value == pytest.approx(0.0, abs=1e-12)


def test_interface_force_symmetric_media_zero():
    scene = InterfaceScene(LORENTZ, LORENTZ, 0.5, 0.5)
    res = interface_force(scene, LOOSE)
    assert res.value == pytest.approx(0.0, abs=1e-12)


def test_interface_force_vacuum_both_sides_zero():
    res = interface_force(InterfaceScene(VACUUM, VACUUM, 0.5, 0.5), LOOSE)
    assert res.value == pytest.approx(0.0, abs=1e-12)


def test_interface_force_dielectric_vacuum():
    scene = InterfaceScene(LORENTZ, VACUUM, 0.5, 0.5)
    res = interface_force(scene)
    tighter = interface_force(
        scene, QuadratureSpec(rel_tol_outer=5e-7, rel_tol_inner=5e-9)
    )
    assert res.converged
    assert res.value != 0.0
    assert math.copysign(1.0, res.value) == math.copysign(1.0, tighter.value)
    assert res.value == pytest.approx(tighter.value, rel=1e-5)


def test_interface_force_antisymmetric_under_swap():
    scene = InterfaceScene(LORENTZ, Constant(1.5, 1.0), 0.4, 0.7)
    swapped = InterfaceScene(Constant(1.5, 1.0), LORENTZ, 0.7, 0.4)
    a = interface_force(scene, LOOSE)
    b = interface_force(swapped, LOOSE)
    assert a.value == pytest.approx(-b.value, rel=1e-5)


def test_interface_force_equals_stress_difference():
    scene = InterfaceScene(LORENTZ, Constant(1.5, 1.0), 0.4, 0.7)
    f = interface_force(scene, LOOSE)
    right = stress_zz(scene, "right", 0.7, spec=LOOSE)
    left = stress_zz(scene, "left", -0.4, spec=LOOSE)
    assert f.value == pytest.approx(right.value - left.value, rel=3e-5, abs=1e-12)


def test_stress_unknown_layer():
    scene = CavityScene(PM, 1.0, Constant(2.0), 0.3, 1.0, PM, VACUUM)
    with pytest.raises(ValueError, match="unknown layer"):
        stress_zz(scene, "core", 0.0)
    with pytest.raises(ValueError):
        stress_zz(scene, "gap2", 0.0, mode="maxwell")
