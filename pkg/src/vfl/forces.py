"""Forces on slabs, medium layers and atoms in front of planar mirrors.

Sign convention: the z-axis runs from mirror 1 to mirror 2 and a positive
value means force along +z.  With a semi-infinite cavity (no mirror 1) the
remaining mirror sits at +z, so positive = attraction toward the mirror.
Per-unit-area values are in hbar*Omega_ref^4/c^3; per-atom values (with the
polarizability in l_ref^3) in hbar*Omega_ref^5/c^4 * l_ref^3.

The total force on a slab is evaluated two independent ways: as the stress
difference across the slab, and as the sum of a medium-screened component
(TE/TM weighted by mu and 1/eps of the cavity medium) and a medium-assisted
component proportional to n^2 - 1 of the medium, which vanishes in vacuum
and whose sign is fixed by the mirror alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fresnel import (
    POLARIZATIONS,
    delta_q,
    kappa,
    pressure_bracket,
    reflection_fn,
    slab_rt,
)
from .geometry import CavityScene, MirrorSpec, normalize_mirror, validate_scene
from .materials import VACUUM, DispersionModel, response_at
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_spectral_2d
from .results import (
    ASSISTED,
    ATOM_ASSISTED,
    ATOM_VACUUM,
    MEDIUM_LAYER,
    SCREENED,
    SLAB_TOTAL,
    ForceResult,
)
from .stress import EIGHT_PI_SQ, LayerContext, g_minkowski, g_mode, scene_stack
from .stress import interface_force as interface_force  # re-exported surface

TWO_PI_SQ = 2.0 * math.pi**2


@dataclass(frozen=True)
class Polarizability:
    """Atomic polarizability on the imaginary axis, in l_ref^3.

    omega_0 = None keeps it constant; otherwise a single resonance
    alpha_0 * omega_0^2 / (omega_0^2 + xi^2 + gamma*xi).
    """

    alpha_0: float
    omega_0: float | None = None
    gamma: float = 0.0

    def __post_init__(self):
        if self.alpha_0 < 0.0:
            raise ValueError("polarizability must be >= 0")

    def at(self, xi: float) -> float:
        if self.omega_0 is None:
            return self.alpha_0
        w2 = self.omega_0**2
        return self.alpha_0 * w2 / (w2 + xi * (xi + self.gamma))


@dataclass(frozen=True)
class AtomProperties:
    alpha_e: Polarizability = Polarizability(0.0)
    alpha_m: Polarizability = Polarizability(0.0)


# map-scale hints overshoot the decay length: matching it exactly leaves a
# logarithmic endpoint in the mapped integrand and the node count explodes
SCALE_SAFETY = 4.0


def _k_scale_fn(d: float):
    """Inner-map scale hint for kernels damped by exp(-2*kappa*d)."""
    if not d > 0.0 or math.isinf(d):
        return lambda xi: 1.0
    inv = 1.0 / (2.0 * d)
    return lambda xi: SCALE_SAFETY * math.sqrt(xi / d + inv * inv)


def _scales(d: float):
    """(xi_scale, k_scale_fn): the xi map must cover the support up to ~1/2d."""
    if not d > 0.0 or math.isinf(d):
        return 1.0, (lambda xi: 1.0)
    return SCALE_SAFETY * min(1.0 / (2.0 * d), 1e6), _k_scale_fn(d)


def _gap_exponents(kap: float, d1: float, d2: float) -> tuple[float, float]:
    e1 = 0.0 if math.isinf(d1) else math.exp(-2.0 * kap * d1)
    e2 = math.exp(-2.0 * kap * d2)
    return e1, e2


def _cavity_kernel(scene: CavityScene, weight: str):
    """Shared (xi, k) kernel of the screened/assisted slab-force integrals."""
    m1, m2 = scene.mirror1_layers, scene.mirror2_layers
    d1, d2, d_s = scene.gap1, scene.gap2, scene.slab_thickness
    medium, slab = scene.medium, scene.slab_material
    refl1 = {q: reflection_fn(q, medium, m1) for q in POLARIZATIONS}
    refl2 = {q: reflection_fn(q, medium, m2) for q in POLARIZATIONS}
    screened = weight == "screened"

    def integrand(xi: float, k: float) -> float:
        resp_m = response_at(medium, xi)
        if resp_m.is_conducting:
            return 0.0
        contrast = resp_m.n_squared - 1.0
        if not screened and contrast == 0.0:
            return 0.0
        kap = kappa(xi, k, resp_m)
        if kap == 0.0:
            return 0.0
        e1, e2 = _gap_exponents(kap, d1, d2)
        total = 0.0
        for q in POLARIZATIONS:
            r, t = slab_rt(q, xi, k, resp_m, slab, d_s)
            a = refl1[q](xi, k) * e1 if e1 != 0.0 else 0.0
            b = refl2[q](xi, k) * e2 if e2 != 0.0 else 0.0
            n_q = 1.0 - r * (a + b) + (r * r - t * t) * a * b
            if screened:
                w = 1.0 / resp_m.epsilon if q == "p" else resp_m.mu
                total += w * r * (b - a) / n_q
            else:
                total += delta_q(q) * pressure_bracket(r, t) * (b - a) / n_q
        if screened:
            return k * kap * total / TWO_PI_SQ
        return xi * xi * resp_m.mu * contrast * (k / kap) * total / EIGHT_PI_SQ

    return integrand


def _screened_force(scene: CavityScene, spec: QuadratureSpec) -> ForceResult:
    xi_scale, k_scale = _scales(min(scene.gap1, scene.gap2))
    res = integrate_spectral_2d(
        _cavity_kernel(scene, "screened"), spec, xi_scale=xi_scale, k_scale=k_scale
    )
    return ForceResult(res.value, SCREENED, res.error_estimate, res.converged, res.evaluations)


def _assisted_force(scene: CavityScene, spec: QuadratureSpec) -> ForceResult:
    xi_scale, k_scale = _scales(min(scene.gap1, scene.gap2))
    res = integrate_spectral_2d(
        _cavity_kernel(scene, "assisted"), spec, xi_scale=xi_scale, k_scale=k_scale
    )
    return ForceResult(res.value, ASSISTED, res.error_estimate, res.converged, res.evaluations)


def _gap_contexts(scene: CavityScene):
    """Precompiled reflection closures bounding the two gap layers.

    gap1 entries are None when the slab itself is the left half-space (no
    layer to the left of the slab carries any regularized stress then).
    """
    layers, labels = scene_stack(scene)
    i2 = labels["gap2"]
    i1 = labels.get("gap1")
    medium = scene.medium
    bounds = {}
    for q in POLARIZATIONS:
        gap1_pair = None
        if i1 is not None:
            gap1_pair = (
                reflection_fn(q, medium, tuple(reversed(layers[:i1]))),
                reflection_fn(q, medium, tuple(layers[i1 + 1 :])),
            )
        bounds[q] = (
            gap1_pair,
            reflection_fn(q, medium, tuple(reversed(layers[:i2]))),
            reflection_fn(q, medium, tuple(layers[i2 + 1 :])),
        )
    d1 = layers[i1].thickness if i1 is not None else math.inf
    d2 = layers[i2].thickness
    return bounds, d1, d2


def slab_force_stress_difference(scene: CavityScene, spec: QuadratureSpec = DEFAULT_SPEC) -> ForceResult:
    """Total slab force from the stress just right minus just left of it."""
    scene = validate_scene(scene)
    bounds, d1, d2 = _gap_contexts(scene)
    gap1_external = math.isinf(d1)
    z1 = 0.0 if gap1_external else d1
    medium = scene.medium
    xi_scale, k_scale = _scales(min(scene.gap1, scene.gap2))

    def integrand(xi: float, k: float) -> float:
        resp_m = response_at(medium, xi)
        if resp_m.is_conducting:
            return 0.0
        kap = kappa(xi, k, resp_m)
        if kap == 0.0:
            return 0.0
        total = 0.0
        for q in POLARIZATIONS:
            gap1_pair, r2m, r2p = bounds[q]
            ctx2 = LayerContext(r2m(xi, k), r2p(xi, k), d2, resp_m)
            total += g_mode(q, xi, k, ctx2, 0.0)
            if gap1_pair is not None:
                r1m, r1p = gap1_pair
                ctx1 = LayerContext(
                    0.0 if gap1_external else r1m(xi, k),
                    r1p(xi, k),
                    d1,
                    resp_m,
                    "left" if gap1_external else None,
                )
                total -= g_mode(q, xi, k, ctx1, z1)
        return -resp_m.mu * (k / kap) * total / EIGHT_PI_SQ

    res = integrate_spectral_2d(integrand, spec, xi_scale=xi_scale, k_scale=k_scale)
    return ForceResult(res.value, SLAB_TOTAL, res.error_estimate, res.converged, res.evaluations)


def minkowski_slab_force(scene: CavityScene, spec: QuadratureSpec = DEFAULT_SPEC) -> ForceResult:
    """Baseline slab force from the conventional (z-independent) kernel."""
    scene = validate_scene(scene)
    bounds, d1, d2 = _gap_contexts(scene)
    gap1_finite = not math.isinf(d1)
    medium = scene.medium
    xi_scale, k_scale = _scales(min(scene.gap1, scene.gap2))

    def integrand(xi: float, k: float) -> float:
        resp_m = response_at(medium, xi)
        if resp_m.is_conducting:
            return 0.0
        kap = kappa(xi, k, resp_m)
        if kap == 0.0:
            return 0.0
        total = 0.0
        for q in POLARIZATIONS:
            gap1_pair, r2m, r2p = bounds[q]
            ctx2 = LayerContext(r2m(xi, k), r2p(xi, k), d2, resp_m)
            total += g_minkowski(q, xi, k, ctx2)
            if gap1_pair is not None and gap1_finite:
                r1m, r1p = gap1_pair
                ctx1 = LayerContext(r1m(xi, k), r1p(xi, k), d1, resp_m)
                total -= g_minkowski(q, xi, k, ctx1)
        return -resp_m.mu * (k / kap) * total / EIGHT_PI_SQ

    res = integrate_spectral_2d(integrand, spec, xi_scale=xi_scale, k_scale=k_scale)
    return ForceResult(res.value, SLAB_TOTAL, res.error_estimate, res.converged, res.evaluations)


def cavity_force_split(
    scene: CavityScene, spec: QuadratureSpec = DEFAULT_SPEC
) -> tuple[ForceResult, ForceResult, ForceResult]:
    """(screened, assisted, total) slab forces for one cavity scene.

    screened + assisted and total come from independent routes and agree to
    quadrature accuracy; in a vacuum cavity the assisted part is exactly 0.
    """
    scene = validate_scene(scene)
    screened = _screened_force(scene, spec)
    assisted = _assisted_force(scene, spec)
    total = slab_force_stress_difference(scene, spec)
    return screened, assisted, total


def medium_assisted_semiinfinite(
    mirror: MirrorSpec,
    medium: DispersionModel,
    slab_material: DispersionModel,
    slab_thickness: float,
    d: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ForceResult:
    """Medium-assisted force on a slab facing one mirror across a gap d.

    The semi-infinite-cavity reduction of the finite-cavity kernel (the other
    mirror removed); its sign depends only on the mirror.
    """
    scene = CavityScene(
        mirror1=None,
        gap1=math.inf,
        slab_material=slab_material,
        slab_thickness=slab_thickness,
        gap2=d,
        mirror2=normalize_mirror(mirror),
        medium=medium,
    )
    return _assisted_force(validate_scene(scene), spec)


def screened_semiinfinite(
    mirror: MirrorSpec,
    medium: DispersionModel,
    slab_material: DispersionModel,
    slab_thickness: float,
    d: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ForceResult:
    """Medium-screened force on a slab facing one mirror across a gap d."""
    scene = CavityScene(
        mirror1=None,
        gap1=math.inf,
        slab_material=slab_material,
        slab_thickness=slab_thickness,
        gap2=d,
        mirror2=normalize_mirror(mirror),
        medium=medium,
    )
    return _screened_force(validate_scene(scene), spec)


def medium_layer_force(
    mirror: MirrorSpec,
    medium: DispersionModel,
    d: float,
    d_s: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ForceResult:
    """Force on a layer of the cavity medium itself (thickness d_s, gap d)."""
    if d <= 0.0 or d_s <= 0.0:
        raise ValueError("medium layer force needs d > 0 and d_s > 0")
    mirror_layers = normalize_mirror(mirror)
    refl = {q: reflection_fn(q, medium, mirror_layers) for q in POLARIZATIONS}
    xi_scale, k_scale = _scales(d)

    def integrand(xi: float, k: float) -> float:
        resp_m = response_at(medium, xi)
        if resp_m.is_conducting:
            return 0.0
        contrast = resp_m.n_squared - 1.0
        if contrast == 0.0:
            return 0.0
        kap = kappa(xi, k, resp_m)
        if kap == 0.0:
            return 0.0
        shape = -math.expm1(-2.0 * kap * d_s)
        damp = math.exp(-2.0 * kap * d)
        total = refl["p"](xi, k) - refl["s"](xi, k)
        return xi * xi * resp_m.mu * contrast * (k / kap) * shape * damp * total / EIGHT_PI_SQ

    res = integrate_spectral_2d(integrand, spec, xi_scale=xi_scale, k_scale=k_scale)
    return ForceResult(res.value, MEDIUM_LAYER, res.error_estimate, res.converged, res.evaluations)


def atom_force(
    mirror: MirrorSpec,
    atom: AtomProperties,
    d: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    medium: DispersionModel = VACUUM,
) -> ForceResult:
    """Medium-assisted force per atom of a dilute medium at distance d.

    The dilute limit of the medium-layer force per atom; its sign does not
    depend on whether the polarizability is electric or magnetic.
    """
    if d <= 0.0:
        raise ValueError("atom force needs d > 0")
    mirror_layers = normalize_mirror(mirror)
    refl = {q: reflection_fn(q, medium, mirror_layers) for q in POLARIZATIONS}
    xi_scale, k_scale = _scales(d)

    def integrand(xi: float, k: float) -> float:
        resp_m = response_at(medium, xi)
        if resp_m.is_conducting:
            return 0.0
        alpha = atom.alpha_e.at(xi) + atom.alpha_m.at(xi)
        if alpha == 0.0:
            return 0.0
        kap = kappa(xi, k, resp_m)
        damp = math.exp(-2.0 * kap * d)
        return xi * xi * resp_m.mu * alpha * k * damp * (refl["p"](xi, k) - refl["s"](xi, k)) / math.pi

    res = integrate_spectral_2d(integrand, spec, xi_scale=xi_scale, k_scale=k_scale)
    return ForceResult(res.value, ATOM_ASSISTED, res.error_estimate, res.converged, res.evaluations)


def atom_force_vacuum(
    mirror: MirrorSpec,
    atom: AtomProperties,
    d: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ForceResult:
    """Single-atom (Casimir-Polder type) force in vacuum at distance d."""
    if d <= 0.0:
        raise ValueError("atom force needs d > 0")
    mirror_layers = normalize_mirror(mirror)
    refl = {q: reflection_fn(q, VACUUM, mirror_layers) for q in POLARIZATIONS}
    xi_scale, k_scale = _scales(d)

    def integrand(xi: float, k: float) -> float:
        a_e = atom.alpha_e.at(xi)
        a_m = atom.alpha_m.at(xi)
        if a_e == 0.0 and a_m == 0.0:
            return 0.0
        kap = math.hypot(xi, k)
        damp = math.exp(-2.0 * kap * d)
        two_k2 = 2.0 * kap * kap
        xi2 = xi * xi
        bracket = (a_e * (two_k2 - xi2) - a_m * xi2) * refl["p"](xi, k) + (
            a_m * (two_k2 - xi2) - a_e * xi2
        ) * refl["s"](xi, k)
        return k * damp * bracket / math.pi

    res = integrate_spectral_2d(integrand, spec, xi_scale=xi_scale, k_scale=k_scale)
    return ForceResult(res.value, ATOM_VACUUM, res.error_estimate, res.converged, res.evaluations)
