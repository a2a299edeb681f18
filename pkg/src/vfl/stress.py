"""Spectral stress kernels, the zz-stress, and the interface force.

The regularized stress in layer j is the double integral

    T_zz(z) = -(1/8 pi^2) * int dxi mu * int dk (k/kappa) * sum_q g_q(xi, k; z)

in units of hbar*Omega_ref^4/c^3.  Two kernels are available: the
medium-aware one (g_mode, which keeps the z-dependent terms that produce
forces on the medium itself) and the conventional baseline (g_minkowski,
z-independent inside each layer and zero in semi-infinite ones).  The two
agree exactly when the layer is empty space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fresnel import POLARIZATIONS, delta_q, kappa, mirror_reflection, slab_interface_rho
from .geometry import CavityScene, InterfaceScene, Layer, validate_scene
from .materials import MaterialResponse, PerfectMirror, response_at
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_spectral_2d
from .results import INTERFACE, ForceResult, StressSample

EIGHT_PI_SQ = 8.0 * math.pi**2


@dataclass(frozen=True)
class LayerContext:
    """Everything g needs about one layer at one (q, xi, k) mode.

    For finite layers r_minus/r_plus are the composed reflections of the
    left and right bounding stacks.  External layers carry thickness=inf,
    external="left"|"right", and only the reflection on their single
    boundary (r_plus for the left-external layer, r_minus for the right).
    """

    r_minus: float
    r_plus: float
    thickness: float
    response: MaterialResponse
    external: str | None = None


def g_mode(q: str, xi: float, k: float, ctx: LayerContext, z: float) -> float:
    """Medium-aware spectral stress kernel for one polarization at depth z."""
    resp = ctx.response
    kap = kappa(xi, k, resp)
    inv_n2 = 1.0 / resp.n_squared
    delta = delta_q(q)
    k2_minus_kap2 = -resp.n_squared * xi * xi

    if ctx.external == "left":
        if z > 0.0:
            raise ValueError(f"z = {z} outside left-external layer (z <= 0)")
        return delta * ctx.r_plus * math.exp(2.0 * kap * z) * k2_minus_kap2 * (1.0 - inv_n2)
    if ctx.external == "right":
        if z < 0.0:
            raise ValueError(f"z = {z} outside right-external layer (z >= 0)")
        return delta * ctx.r_minus * math.exp(-2.0 * kap * z) * k2_minus_kap2 * (1.0 - inv_n2)

    d = ctx.thickness
    if not 0.0 <= z <= d:
        raise ValueError(f"z = {z} outside layer of thickness {d}")
    e_d = math.exp(-2.0 * kap * d)
    den = 1.0 - ctx.r_minus * ctx.r_plus * e_d
    first = (
        2.0
        * ctx.r_minus
        * ctx.r_plus
        * e_d
        * (-kap * kap * (1.0 + inv_n2) + delta * k * k * (1.0 - inv_n2))
    )
    # the two boundary terms multiply in the same order as the external-layer
    # branch, so stresses that should cancel across a transparent boundary
    # cancel exactly instead of leaving rounding residue
    z_minus = delta * ctx.r_minus * math.exp(-2.0 * kap * z) * k2_minus_kap2 * (1.0 - inv_n2)
    z_plus = delta * ctx.r_plus * math.exp(-2.0 * kap * (d - z)) * k2_minus_kap2 * (1.0 - inv_n2)
    return (first + z_minus + z_plus) / den


def g_minkowski(q: str, xi: float, k: float, ctx: LayerContext) -> float:
    """Conventional z-independent kernel; zero in semi-infinite layers."""
    if ctx.external is not None or math.isinf(ctx.thickness):
        return 0.0
    kap = kappa(xi, k, ctx.response)
    e_d = math.exp(-2.0 * kap * ctx.thickness)
    num = -4.0 * kap * kap * ctx.r_minus * ctx.r_plus * e_d
    return num / (1.0 - ctx.r_minus * ctx.r_plus * e_d)


def mode_identity_check(
    q: str, xi: float, k: float, ctx: LayerContext, z: float
) -> tuple[float, float, float]:
    """Cross-check g_mode against the equal-point field-correlator route.

    The left-hand side rebuilds the kernel from the zz-minus-parallel traces
    of the electric and magnetic scattered correlators (TM and TE blocks kept
    separate); the right-hand side is g_mode.  Returns (lhs, rhs, |lhs-rhs|).
    """
    resp = ctx.response
    kap = kappa(xi, k, resp)
    n2 = resp.n_squared
    d = 0.0 if ctx.external is not None else ctx.thickness
    if ctx.external == "left":
        r_minus, r_plus = 0.0, ctx.r_plus
        e_d, e_m, e_p = 0.0, 0.0, math.exp(2.0 * kap * z)
    elif ctx.external == "right":
        r_minus, r_plus = ctx.r_minus, 0.0
        e_d, e_m, e_p = 0.0, math.exp(-2.0 * kap * z), 0.0
    else:
        r_minus, r_plus = ctx.r_minus, ctx.r_plus
        e_d = math.exp(-2.0 * kap * d)
        e_m = math.exp(-2.0 * kap * z)
        e_p = math.exp(-2.0 * kap * (d - z))

    den = 1.0 - r_minus * r_plus * e_d
    s_plus = 2.0 * r_minus * r_plus * e_d + r_minus * e_m + r_plus * e_p
    s_minus = 2.0 * r_minus * r_plus * e_d - (r_minus * e_m + r_plus * e_p)
    k2 = k * k
    kap2 = kap * kap
    xi2 = xi * xi
    if q == "p":
        lhs = -(s_plus * (k2 / n2 + n2 * xi2) + s_minus * kap2 / n2) / den
    else:
        lhs = -(s_plus * (k2 + xi2) + s_minus * kap2) / den
    rhs = g_mode(q, xi, k, ctx, z)
    return lhs, rhs, abs(lhs - rhs)


def correlator_traces(
    xi: float, k: float, ctx_p: LayerContext, ctx_s: LayerContext, z: float
) -> tuple[float, float]:
    """(electric, magnetic) zz-minus-parallel scattered correlator traces.

    Both need the TM and TE bounding reflections of the layer (ctx_p, ctx_s).
    Their sum is -(g_p + g_s), and swapping eps <-> mu together with the two
    reflections maps n^2 * electric onto magnetic exactly.
    """
    resp = ctx_p.response
    kap = kappa(xi, k, resp)
    n2 = resp.n_squared
    k2 = k * k
    kap2 = kap * kap
    kj2 = -n2 * xi * xi  # squared layer wave number continued to i*xi

    def blocks(ctx: LayerContext):
        d = 0.0 if ctx.external is not None else ctx.thickness
        if ctx.external == "left":
            r_minus, r_plus = 0.0, ctx.r_plus
            e_d, e_m, e_p = 0.0, 0.0, math.exp(2.0 * kap * z)
        elif ctx.external == "right":
            r_minus, r_plus = ctx.r_minus, 0.0
            e_d, e_m, e_p = 0.0, math.exp(-2.0 * kap * z), 0.0
        else:
            r_minus, r_plus = ctx.r_minus, ctx.r_plus
            e_d = math.exp(-2.0 * kap * d)
            e_m = math.exp(-2.0 * kap * z)
            e_p = math.exp(-2.0 * kap * (d - z))
        den = 1.0 - r_minus * r_plus * e_d
        s_plus = 2.0 * r_minus * r_plus * e_d + r_minus * e_m + r_plus * e_p
        s_minus = 2.0 * r_minus * r_plus * e_d - (r_minus * e_m + r_plus * e_p)
        return s_plus / den, s_minus / den

    sp_p, sm_p = blocks(ctx_p)
    sp_s, sm_s = blocks(ctx_s)
    electric = (k2 * sp_p + kap2 * sm_p - kj2 * sp_s) / n2
    magnetic = k2 * sp_s + kap2 * sm_s - kj2 * sp_p
    return electric, magnetic


# --- scene plumbing ---------------------------------------------------------


def scene_stack(scene: CavityScene | InterfaceScene) -> tuple[list[Layer], dict[str, int]]:
    """Flatten a scene into an ordered layer stack plus a label -> index map."""
    if isinstance(scene, InterfaceScene):
        layers = [Layer(scene.left, math.inf), Layer(scene.right, math.inf)]
        return layers, {"left": 0, "right": 1}

    layers: list[Layer] = []
    m1, m2 = scene.mirror1_layers, scene.mirror2_layers
    slab_halfspace = math.isinf(scene.slab_thickness) and not isinstance(
        scene.slab_material, PerfectMirror
    )
    if slab_halfspace:
        labels = {}
    elif scene.semi_infinite or not m1:
        layers.append(Layer(scene.medium, math.inf))
        labels = {"gap1": 0}
    else:
        layers.extend(reversed(m1))
        layers.append(Layer(scene.medium, scene.gap1))
        labels = {"gap1": len(layers) - 1}
    layers.append(Layer(scene.slab_material, scene.slab_thickness))
    labels["slab"] = len(layers) - 1
    if m2:
        layers.append(Layer(scene.medium, scene.gap2))
        labels["gap2"] = len(layers) - 1
        layers.extend(m2)
    else:
        layers.append(Layer(scene.medium, math.inf))
        labels["gap2"] = len(layers) - 1
    return layers, labels


def layer_context(
    q: str, xi: float, k: float, layers: list[Layer], index: int
) -> LayerContext:
    """Compose the bounding reflections of one stack layer at one mode."""
    layer = layers[index]
    resp = response_at(layer.material, xi)
    external = None
    if math.isinf(layer.thickness):
        external = "left" if index == 0 else "right"
    r_minus = 0.0
    r_plus = 0.0
    if index > 0:
        r_minus = mirror_reflection(q, xi, k, resp, tuple(reversed(layers[:index])))
    if index < len(layers) - 1:
        r_plus = mirror_reflection(q, xi, k, resp, tuple(layers[index + 1 :]))
    return LayerContext(r_minus, r_plus, layer.thickness, resp, external)


def stress_zz(
    scene: CavityScene | InterfaceScene,
    layer: str,
    z: float,
    mode: str = "lorentz",
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> StressSample:
    """Regularized zz-stress at local coordinate z of the named layer."""
    if mode not in ("lorentz", "minkowski"):
        raise ValueError(f"mode must be lorentz|minkowski, got {mode!r}")
    scene = validate_scene(scene)
    layers, labels = scene_stack(scene)
    if layer not in labels:
        raise ValueError(f"unknown layer {layer!r}; expected one of {sorted(labels)}")
    index = labels[layer]
    material = layers[index].material

    k_scale = _stack_inverse_scale(layers, index, z)

    def integrand(xi: float, k: float) -> float:
        resp = response_at(material, xi)
        if resp.is_conducting:
            return 0.0
        kap = kappa(xi, k, resp)
        if kap == 0.0 or math.isinf(kap):
            return 0.0
        total = 0.0
        for q in POLARIZATIONS:
            ctx_q = layer_context(q, xi, k, layers, index)
            total += (
                g_mode(q, xi, k, ctx_q, z) if mode == "lorentz" else g_minkowski(q, xi, k, ctx_q)
            )
        return -resp.mu * (k / kap) * total / EIGHT_PI_SQ

    result = integrate_spectral_2d(
        integrand, spec, xi_scale=k_scale, k_scale=k_scale
    )
    return StressSample(
        layer, z, result.value, mode, result.error_estimate, result.converged, result.evaluations
    )


def _stack_inverse_scale(layers: list[Layer], index: int, z: float) -> float:
    """Scale hint 1/(2 d_eff) from the shortest decay distance around a point."""
    layer = layers[index]
    candidates = []
    if not math.isinf(layer.thickness):
        candidates.append(layer.thickness)
    elif index == 0 and z < 0.0:
        candidates.append(-z)
    elif index == len(layers) - 1 and z > 0.0:
        candidates.append(z)
    finite = [ly.thickness for ly in layers if 0.0 < ly.thickness < math.inf]
    if finite:
        candidates.append(min(finite))
    d_eff = min(candidates) if candidates else 1.0
    if d_eff <= 0.0:
        d_eff = 1.0
    # overshoot the decay length (x4) to keep the mapped endpoint regular
    return min(4.0 / (2.0 * d_eff), 1e6)


def interface_force(scene: InterfaceScene, spec: QuadratureSpec = DEFAULT_SPEC) -> ForceResult:
    """Force per unit area on the layer spanning (-a0, an) around an interface.

    Positive values push the layer along +z (into the right medium).  The
    value equals the stress difference across the layer and vanishes when the
    two media are identical.
    """
    scene = validate_scene(scene)
    left, right = scene.left, scene.right
    a0, an = scene.a0, scene.an

    spans = [a for a in (a0, an) if a > 0.0]
    k_scale = min(4.0 / (2.0 * min(spans)), 1e6) if spans else 1.0

    def integrand(xi: float, k: float) -> float:
        resp_0 = response_at(left, xi)
        resp_n = response_at(right, xi)
        if resp_0.is_conducting or resp_n.is_conducting:
            return 0.0
        kap_0 = kappa(xi, k, resp_0)
        kap_n = kappa(xi, k, resp_n)
        if kap_0 == 0.0 or kap_n == 0.0:
            return 0.0
        weight = resp_0.mu / kap_0 * (resp_0.n_squared - 1.0) * math.exp(-2.0 * kap_0 * a0)
        weight += resp_n.mu / kap_n * (resp_n.n_squared - 1.0) * math.exp(-2.0 * kap_n * an)
        total = 0.0
        for q in POLARIZATIONS:
            total += delta_q(q) * slab_interface_rho(q, xi, k, resp_0, resp_n)
        return -(xi * xi) * k * weight * total / EIGHT_PI_SQ

    result = integrate_spectral_2d(
        integrand, spec, xi_scale=k_scale, k_scale=k_scale
    )
    return ForceResult(result.value, INTERFACE, result.error_estimate, result.converged, result.evaluations)
