"""Reduced-integral and closed-form limits of the forces, plus regime labels.

Small distances (d much below the mirror transparency wavelength) use the
quasistatic reduction with u = 2kd; large distances use the radial variables
(v, p) with static material values.  Leading powers: the medium-assisted
slab force falls like 1/d at small d and 1/d^4 at large d, the screened
force like 1/d^3 and 1/d^4, and thin-slab variants are one power steeper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fresnel import (
    POLARIZATIONS,
    delta_q,
    radial_reflection,
    radial_s,
)
from .geometry import CavityScene, Layer, validate_scene
from .materials import (
    DispersionModel,
    MaterialResponse,
    PerfectMirror,
    response_at,
    static_response,
    transparency_scale,
)
from .quadrature import DEFAULT_SPEC, IntegrationResult, QuadratureSpec, integrate_halfline
from .results import ASSISTED, MEDIUM_LAYER, SCREENED, ForceResult

SIXTEEN_PI_SQ = 16.0 * math.pi**2

SMALL_KINDS = (
    "assisted",
    "assisted_lifshitz",
    "screened_lifshitz",
    "assisted_thin",
    "assisted_thin_single_medium",
    "medium",
    "medium_thin",
)
LARGE_KINDS = (
    "assisted",
    "assisted_lifshitz",
    "screened_lifshitz",
    "assisted_thin",
    "medium",
    "medium_thin",
)

_RESULT_KIND = {
    "assisted": ASSISTED,
    "assisted_lifshitz": ASSISTED,
    "screened_lifshitz": SCREENED,
    "assisted_thin": ASSISTED,
    "assisted_thin_single_medium": ASSISTED,
    "medium": MEDIUM_LAYER,
    "medium_thin": MEDIUM_LAYER,
}


class KindSceneMismatch(ValueError):
    """The requested reduced formula does not apply to this scene."""


# --- scene digestion ---------------------------------------------------------


def _semiinfinite_parts(scene: CavityScene):
    scene = validate_scene(scene)
    if not scene.semi_infinite:
        raise KindSceneMismatch("reduced formulas assume a semi-infinite cavity (no mirror 1)")
    if not scene.mirror2_layers:
        raise KindSceneMismatch("reduced formulas need a mirror on the gap side")
    return scene.medium, scene.slab_material, scene.slab_thickness, scene.mirror2_layers


def _single_mirror(mirror_layers: Sequence[Layer]) -> DispersionModel:
    if len(mirror_layers) != 1 or not math.isinf(mirror_layers[0].thickness):
        raise KindSceneMismatch("this reduced formula needs a single-medium (or perfect) mirror")
    return mirror_layers[0].material


def _require_thick(d_s: float):
    if not math.isinf(d_s):
        raise KindSceneMismatch("Lifshitz-configuration formulas need a half-space slab")


def _require_thin(d_s: float):
    if not 0.0 < d_s < math.inf:
        raise KindSceneMismatch("thin-slab formulas need a finite slab thickness")


# --- nonretarded (quasistatic) coefficients ---------------------------------


def _contrast(q: str, inner: MaterialResponse, outer: MaterialResponse) -> float:
    """Quasistatic single-interface reflection (eps or mu contrast)."""
    if q == "p":
        if math.isinf(outer.epsilon):
            return 1.0
        return (outer.epsilon - inner.epsilon) / (outer.epsilon + inner.epsilon)
    if math.isinf(outer.epsilon):
        return -1.0
    return (outer.mu - inner.mu) / (outer.mu + inner.mu)


def nonretarded_reflection_fn(q: str, medium: DispersionModel, mirror_layers: Sequence[Layer]):
    """Quasistatic mirror reflection as a (xi, k) closure (kappa -> k)."""
    layers = [ly for i, ly in enumerate(mirror_layers) if ly.thickness > 0.0 or i == len(mirror_layers) - 1]
    for i, ly in enumerate(layers):
        if isinstance(ly.material, PerfectMirror):
            layers = layers[: i + 1]
            break
    if not layers:
        return lambda xi, k: 0.0
    last = layers[-1]
    terminal_sign = None
    if isinstance(last.material, PerfectMirror):
        terminal_sign = (1.0 if last.material.kind == "conducting" else -1.0) * delta_q(q)
    finite = layers[:-1]
    materials = [medium] + [ly.material for ly in finite]
    thicknesses = [ly.thickness for ly in finite]
    n_finite = len(finite)

    def reflect(xi: float, k: float) -> float:
        resps = [response_at(m, xi) for m in materials]
        if terminal_sign is not None:
            r_acc = terminal_sign
        else:
            r_acc = _contrast(q, resps[-1], response_at(last.material, xi))
        for idx in range(n_finite - 1, -1, -1):
            r_front = _contrast(q, resps[idx], resps[idx + 1])
            phase = math.exp(-2.0 * k * thicknesses[idx])
            r_acc = r_front + (1.0 - r_front * r_front) * r_acc * phase / (1.0 + r_front * r_acc * phase)
        return r_acc

    return reflect


def _nonretarded_slab(q: str, resp_m: MaterialResponse, resp_s, k: float, d_s: float):
    """Quasistatic slab (r, t); resp_s may be a perfect-mirror flag."""
    if isinstance(resp_s, PerfectMirror):
        sign = 1.0 if resp_s.kind == "conducting" else -1.0
        return (sign * delta_q(q), 0.0) if d_s > 0.0 else (0.0, 1.0)
    rho = _contrast(q, resp_m, resp_s)
    if d_s == 0.0:
        return 0.0, 1.0
    e1 = math.exp(-k * d_s)
    e2 = e1 * e1
    den = 1.0 - rho * rho * e2
    return rho * (1.0 - e2) / den, (1.0 - rho * rho) * e1 / den


# --- static (v, p) coefficients ----------------------------------------------


def _static(material: DispersionModel) -> MaterialResponse | PerfectMirror:
    if isinstance(material, PerfectMirror):
        return material
    return static_response(material)


def _radial_r(q: str, p: float, medium: MaterialResponse, other) -> float:
    return radial_reflection(q, p, medium, other)


def static_stack_reflection(
    q: str,
    p: float,
    phase_rate: float,
    medium0: MaterialResponse,
    mirror_layers: Sequence[Layer],
) -> float:
    """Static mirror reflection in the radial variables.

    phase_rate is v/(2 p d); a finite interior layer of thickness d_l
    contributes exp(-2 * phase_rate * s_l * d_l).  Single-medium and perfect
    mirrors need no phase and are v-independent.
    """
    layers = [ly for i, ly in enumerate(mirror_layers) if ly.thickness > 0.0 or i == len(mirror_layers) - 1]
    for i, ly in enumerate(layers):
        if isinstance(ly.material, PerfectMirror):
            layers = layers[: i + 1]
            break
    if not layers:
        return 0.0
    statics = [_static(ly.material) for ly in layers]
    front_statics = [medium0] + statics[:-1]
    r_acc = _radial_r(q, p, front_statics[-1], statics[-1])
    for idx in range(len(layers) - 2, -1, -1):
        resp = statics[idx]
        r_front = _radial_r(q, p, front_statics[idx], resp)
        s_l = radial_s(p, resp.n_squared, medium0.n_squared)
        phase = math.exp(-2.0 * phase_rate * s_l * layers[idx].thickness)
        r_acc = r_front + (1.0 - r_front * r_front) * r_acc * phase / (1.0 + r_front * r_acc * phase)
    return r_acc


def _static_slab_rt(q, p, phase_rate, medium0, slab_static, d_s):
    if isinstance(slab_static, PerfectMirror):
        sign = 1.0 if slab_static.kind == "conducting" else -1.0
        return (sign * delta_q(q), 0.0) if d_s > 0.0 else (0.0, 1.0)
    rho = _radial_r(q, p, medium0, slab_static)
    if d_s == 0.0:
        return 0.0, 1.0
    if math.isinf(d_s) or math.isinf(slab_static.epsilon):
        return rho, 0.0
    s_s = radial_s(p, slab_static.n_squared, medium0.n_squared)
    e1 = math.exp(-phase_rate * s_s * d_s)
    e2 = e1 * e1
    den = 1.0 - rho * rho * e2
    return rho * (1.0 - e2) / den, (1.0 - rho * rho) * e1 / den


# --- small-distance forces ----------------------------------------------------


def small_distance_force(
    kind: str,
    scene: CavityScene,
    d: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ForceResult:
    """Quasistatic reduced integral for one force kind at gap d.

    Kinds: assisted (any slab/mirror), assisted_lifshitz (half-space slab),
    screened_lifshitz, assisted_thin / assisted_thin_single_medium,
    medium, medium_thin.  Advisory validity: d well below the transparency
    wavelength of the mirror.
    """
    if kind not in SMALL_KINDS:
        raise KindSceneMismatch(f"unknown small-distance kind {kind!r}")
    medium, slab, d_s, mirror = _semiinfinite_parts(scene)
    if d <= 0.0:
        raise ValueError("d must be > 0")

    if kind == "assisted_lifshitz":
        _require_thick(d_s)
        kind = "assisted"
    if kind in ("assisted_thin", "medium_thin"):
        _require_thin(d_s)
    if kind == "assisted_thin_single_medium":
        _require_thin(d_s)

    refl = {q: nonretarded_reflection_fn(q, medium, mirror) for q in POLARIZATIONS}

    if kind == "assisted":

        def outer(xi: float) -> IntegrationResult:
            resp_m = response_at(medium, xi)
            contrast = resp_m.n_squared - 1.0
            if contrast == 0.0 or resp_m.is_conducting:
                return None
            resp_s = slab if isinstance(slab, PerfectMirror) else response_at(slab, xi)

            def u_integrand(u: float) -> float:
                k = u / (2.0 * d)
                e_u = math.exp(-u)
                total = 0.0
                for q in POLARIZATIONS:
                    r, t = _nonretarded_slab(q, resp_m, resp_s, k, d_s)
                    big_r = refl[q](xi, k)
                    total += (
                        delta_q(q)
                        * ((1.0 + r) ** 2 - t * t)
                        * big_r
                        * e_u
                        / (1.0 - r * big_r * e_u)
                    )
                return total

            inner = integrate_halfline(u_integrand, 0.0, spec, scale=4.0, rel_tol=spec.rel_tol_inner)
            return inner.scaled(xi * xi * resp_m.mu * contrast)

        pref = 1.0 / (SIXTEEN_PI_SQ * d)

    elif kind == "screened_lifshitz":
        _require_thick(d_s)

        def outer(xi: float) -> IntegrationResult:
            resp_m = response_at(medium, xi)
            if resp_m.is_conducting:
                return None
            resp_s = slab if isinstance(slab, PerfectMirror) else response_at(slab, xi)

            def u_integrand(u: float) -> float:
                k = u / (2.0 * d)
                e_u = math.exp(-u)
                total = 0.0
                for q in POLARIZATIONS:
                    rho_s = (
                        (1.0 if slab.kind == "conducting" else -1.0) * delta_q(q)
                        if isinstance(resp_s, PerfectMirror)
                        else _contrast(q, resp_m, resp_s)
                    )
                    big_r = refl[q](xi, k)
                    w = 1.0 / resp_m.epsilon if q == "p" else resp_m.mu
                    x = rho_s * big_r * e_u
                    total += w * u * u * x / (1.0 - x)
                return total

            inner = integrate_halfline(u_integrand, 0.0, spec, scale=4.0, rel_tol=spec.rel_tol_inner)
            return inner

        pref = 1.0 / (SIXTEEN_PI_SQ * d**3)

    elif kind == "assisted_thin_single_medium":
        # u-independent mirror: the u-integral collapses analytically
        mirror_model = _single_mirror(mirror)
        if isinstance(slab, PerfectMirror) or isinstance(mirror_model, PerfectMirror):
            raise KindSceneMismatch("the single-medium thin form needs material slab and mirror")

        def xi_integrand(xi: float) -> float:
            resp_m = response_at(medium, xi)
            contrast = resp_m.n_squared - 1.0
            if contrast == 0.0 or resp_m.is_conducting:
                return 0.0
            resp_s = response_at(slab, xi)
            resp_mir = response_at(mirror_model, xi)
            term = (resp_s.epsilon / resp_m.epsilon) * _contrast("p", resp_m, resp_mir)
            term -= (resp_s.mu / resp_m.mu) * _contrast("s", resp_m, resp_mir)
            return xi * xi * resp_m.mu * contrast * term

        res = integrate_halfline(xi_integrand, 0.0, spec, scale=1.0, tail="rational")
        res = res.scaled(d_s / (SIXTEEN_PI_SQ * d**2))
        return ForceResult(res.value, _RESULT_KIND[kind], res.error_estimate, res.converged, res.evaluations)

    elif kind == "assisted_thin":

        def outer(xi: float) -> IntegrationResult:
            resp_m = response_at(medium, xi)
            contrast = resp_m.n_squared - 1.0
            if contrast == 0.0 or resp_m.is_conducting:
                return None
            if isinstance(slab, PerfectMirror):
                raise KindSceneMismatch("thin-slab formulas need a material slab")
            resp_s = response_at(slab, xi)
            w_p = resp_s.epsilon / resp_m.epsilon
            w_s = resp_s.mu / resp_m.mu

            def u_integrand(u: float) -> float:
                k = u / (2.0 * d)
                return u * math.exp(-u) * (w_p * refl["p"](xi, k) - w_s * refl["s"](xi, k))

            inner = integrate_halfline(u_integrand, 0.0, spec, scale=4.0, rel_tol=spec.rel_tol_inner)
            return inner.scaled(xi * xi * resp_m.mu * contrast)

        pref = d_s / (SIXTEEN_PI_SQ * d**2)

    elif kind == "medium":

        def outer(xi: float) -> IntegrationResult:
            resp_m = response_at(medium, xi)
            contrast = resp_m.n_squared - 1.0
            if contrast == 0.0 or resp_m.is_conducting:
                return None

            def u_integrand(u: float) -> float:
                k = u / (2.0 * d)
                shape = -math.expm1(-u * d_s / d)
                total = 0.0
                for q in POLARIZATIONS:
                    total += delta_q(q) * refl[q](xi, k)
                return shape * math.exp(-u) * total

            inner = integrate_halfline(u_integrand, 0.0, spec, scale=4.0, rel_tol=spec.rel_tol_inner)
            return inner.scaled(xi * xi * resp_m.mu * contrast)

        pref = 1.0 / (SIXTEEN_PI_SQ * d)

    else:  # medium_thin

        def outer(xi: float) -> IntegrationResult:
            resp_m = response_at(medium, xi)
            contrast = resp_m.n_squared - 1.0
            if contrast == 0.0 or resp_m.is_conducting:
                return None

            def u_integrand(u: float) -> float:
                k = u / (2.0 * d)
                return u * math.exp(-u) * (refl["p"](xi, k) - refl["s"](xi, k))

            inner = integrate_halfline(u_integrand, 0.0, spec, scale=4.0, rel_tol=spec.rel_tol_inner)
            return inner.scaled(xi * xi * resp_m.mu * contrast)

        pref = d_s / (SIXTEEN_PI_SQ * d**2)

    res = _outer_xi_integral(outer, spec)
    res = res.scaled(pref)
    return ForceResult(res.value, _RESULT_KIND[kind], res.error_estimate, res.converged, res.evaluations)


def _outer_xi_integral(outer, spec: QuadratureSpec) -> IntegrationResult:
    """Adaptive xi-integral of a per-xi inner result (rational tail map)."""
    state = {"evals": 0, "failed": 0}

    def integrand(xi: float) -> float:
        inner = outer(xi)
        if inner is None:
            return 0.0
        state["evals"] += inner.evaluations
        if not inner.converged:
            state["failed"] += 1
        return inner.value

    res = integrate_halfline(integrand, 0.0, spec, scale=1.0, tail="rational", rel_tol=spec.rel_tol_outer)
    error = res.error_estimate + spec.rel_tol_inner * abs(res.value) + spec.abs_tol
    return IntegrationResult(res.value, error, res.evaluations + state["evals"], res.converged and state["failed"] == 0)


# --- large-distance forces ----------------------------------------------------


def large_distance_force(
    kind: str,
    scene: CavityScene,
    d: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ForceResult:
    """Static-material radial reduced integral for one force kind at gap d.

    Kinds: assisted (any slab/mirror stack), assisted_lifshitz,
    screened_lifshitz, assisted_thin, medium, medium_thin.  Advisory
    validity: d well beyond the transparency wavelength of the mirror.
    """
    if kind not in LARGE_KINDS:
        raise KindSceneMismatch(f"unknown large-distance kind {kind!r}")
    medium, slab, d_s, mirror = _semiinfinite_parts(scene)
    if d <= 0.0:
        raise ValueError("d must be > 0")
    med0 = static_response(medium)
    if med0.is_conducting:
        raise KindSceneMismatch("large-distance formulas need a non-conducting cavity medium")
    n0 = math.sqrt(med0.n_squared)
    mu0 = med0.mu
    eps0 = med0.epsilon
    contrast0 = med0.n_squared - 1.0
    slab0 = _static(slab)

    if kind in ("assisted", "assisted_lifshitz"):
        if kind == "assisted_lifshitz":
            _require_thick(d_s)

        def p_integrand_factory(v: float):
            rate = v / (2.0 * d)  # times s_l * d_l in each interior phase

            def p_integrand(p: float) -> float:
                e_v = math.exp(-v)
                total = 0.0
                for q in POLARIZATIONS:
                    r, t = _static_slab_rt(q, p, rate / p, med0, slab0, d_s)
                    big_r = static_stack_reflection(q, p, rate / p, med0, mirror)
                    total += (
                        delta_q(q)
                        * ((1.0 + r) ** 2 - t * t)
                        * big_r
                        * e_v
                        / (1.0 - r * big_r * e_v)
                    )
                return total / p**4

            return p_integrand

        pref = mu0 * contrast0 / (2.0**7 * math.pi**2 * n0**3 * d**4)
        res = _vp_double_integral(p_integrand_factory, lambda v: v**3, spec)

    elif kind == "screened_lifshitz":
        _require_thick(d_s)

        def p_integrand_factory(v: float):
            def p_integrand(p: float) -> float:
                e_v = math.exp(-v)
                total = 0.0
                for q in POLARIZATIONS:
                    rho_s = _radial_r(q, p, med0, slab0)
                    rho_m = static_stack_reflection(q, p, v / (2.0 * d * p), med0, mirror)
                    w = 1.0 / eps0 if q == "p" else mu0
                    x = rho_s * rho_m * e_v
                    total += w * x / (1.0 - x)
                return total / (p * p)

            return p_integrand

        pref = 1.0 / (2.0**5 * math.pi**2 * n0 * d**4)
        res = _vp_double_integral(p_integrand_factory, lambda v: v**3, spec)

    elif kind == "assisted_thin":
        _require_thin(d_s)
        if isinstance(slab0, PerfectMirror):
            raise KindSceneMismatch("thin-slab formulas need a material slab")
        mirror_model = _single_mirror(mirror)
        mirror0 = _static(mirror_model)

        def p_integrand(p: float) -> float:
            r_p = radial_reflection("p", p, med0, mirror0)
            r_s = radial_reflection("s", p, med0, mirror0)
            return ((slab0.epsilon / eps0) * r_p - (slab0.mu / mu0) * r_s) / p**4

        pref = 3.0 * mu0 * contrast0 * d_s / (16.0 * math.pi**2 * n0**3 * d**5)
        res = integrate_halfline(p_integrand, 1.0, spec, tail="power")

    elif kind == "medium":
        mirror_model = _single_mirror(mirror)
        mirror0 = _static(mirror_model)
        res = _radial_sum_integral(med0, mirror0, spec)
        pref = (
            3.0
            * mu0
            * contrast0
            / (64.0 * math.pi**2 * n0**3)
            * (1.0 / d**4 - 1.0 / (d + d_s) ** 4)
        )

    else:  # medium_thin
        _require_thin(d_s)
        mirror_model = _single_mirror(mirror)
        mirror0 = _static(mirror_model)

        def p_integrand(p: float) -> float:
            r_p = radial_reflection("p", p, med0, mirror0)
            r_s = radial_reflection("s", p, med0, mirror0)
            return (r_p - r_s) / p**4

        pref = 3.0 * contrast0 * d_s / (16.0 * math.pi**2 * n0 * eps0 * d**5)
        res = integrate_halfline(p_integrand, 1.0, spec, tail="power")

    res = res.scaled(pref)
    return ForceResult(res.value, _RESULT_KIND[kind], res.error_estimate, res.converged, res.evaluations)


def _vp_double_integral(p_integrand_factory, v_weight, spec: QuadratureSpec) -> IntegrationResult:
    state = {"evals": 0, "failed": 0}

    def v_integrand(v: float) -> float:
        inner = integrate_halfline(
            p_integrand_factory(v), 1.0, spec, tail="power", rel_tol=spec.rel_tol_inner
        )
        state["evals"] += inner.evaluations
        if not inner.converged:
            state["failed"] += 1
        return v_weight(v) * inner.value

    res = integrate_halfline(v_integrand, 0.0, spec, scale=4.0, rel_tol=spec.rel_tol_outer)
    error = res.error_estimate + spec.rel_tol_inner * abs(res.value) + spec.abs_tol
    return IntegrationResult(res.value, error, res.evaluations + state["evals"], res.converged and state["failed"] == 0)


def static_radial_integral(
    medium_static: MaterialResponse,
    mirror: DispersionModel | MaterialResponse | PerfectMirror,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> IntegrationResult:
    """int_1^inf dp p^-4 sum_q delta_q R_q(0, p); +-2/3 for ideal mirrors."""
    mirror0 = mirror if isinstance(mirror, (MaterialResponse, PerfectMirror)) else _static(mirror)
    return _radial_sum_integral(medium_static, mirror0, spec)


def _radial_sum_integral(med0, mirror0, spec: QuadratureSpec) -> IntegrationResult:
    def p_integrand(p: float) -> float:
        total = 0.0
        for q in POLARIZATIONS:
            total += delta_q(q) * radial_reflection(q, p, med0, mirror0)
        return total / p**4

    return integrate_halfline(p_integrand, 1.0, spec, tail="power")


def ideal_mirror_closed_forms(eps0: float, mu0: float) -> tuple[float, float]:
    """(assisted, screened) large-distance forces times d^4, ideal mirrors.

    Closed forms for perfectly reflecting slab and mirror in a medium with
    static response (eps0, mu0): the assisted part vanishes in vacuum and the
    screened part reduces to the classic pi^2/240.
    """
    if eps0 < 1.0 or mu0 < 1.0:
        raise ValueError("static responses must be >= 1")
    n0_sq = eps0 * mu0
    root = math.sqrt(mu0 / eps0)
    f2 = math.pi**2 / (45.0 * 2.0**5) * root * (1.0 - 1.0 / n0_sq)
    f1 = math.pi**2 / (15.0 * 2.0**5) * root * (1.0 + 1.0 / n0_sq)
    return f2, f1


# --- regime diagnostics -------------------------------------------------------


@dataclass(frozen=True)
class RegimeScales:
    """Advisory transparency frequency of the mirror and its wavelength."""

    omega: float | None
    wavelength: float | None

    @classmethod
    def for_scene(cls, scene: CavityScene) -> "RegimeScales":
        scales = [
            transparency_scale(ly.material)
            for ly in scene.mirror2_layers
        ]
        scales = [s for s in scales if s is not None]
        if not scales:
            return cls(None, None)
        omega = max(scales)
        if math.isinf(omega):
            return cls(math.inf, 0.0)
        return cls(omega, 2.0 * math.pi / omega)

    def label(self, d: float) -> str:
        if self.wavelength is None:
            return "crossover"
        if self.wavelength == 0.0 or d > 5.0 * self.wavelength:
            return "large"
        if d < self.wavelength / 20.0:
            return "small"
        return "crossover"


def regime_report(
    scene: CavityScene,
    d_values: Sequence[float],
    spec: QuadratureSpec = DEFAULT_SPEC,
    kind: str = "assisted",
) -> list[dict]:
    """Full vs reduced-integral values over a distance grid, with slopes.

    Returns one row per d: full value, small-d and large-d reduced values
    (None where the formula does not apply), the advisory regime label, and
    windowed log-log slopes of each column.
    """
    from .forces import medium_assisted_semiinfinite, medium_layer_force, screened_semiinfinite

    scene = validate_scene(scene)
    medium, slab, d_s, mirror = _semiinfinite_parts(scene)
    scales = RegimeScales.for_scene(scene)

    rows = []
    for d in d_values:
        if kind == "assisted":
            full = medium_assisted_semiinfinite(mirror, medium, slab, d_s, d, spec)
        elif kind == "screened":
            full = screened_semiinfinite(mirror, medium, slab, d_s, d, spec)
        elif kind == "medium":
            full = medium_layer_force(mirror, medium, d, d_s, spec)
        else:
            raise ValueError(f"regime_report kind must be assisted|screened|medium, got {kind!r}")
        small_kind = {"assisted": "assisted", "screened": "screened_lifshitz", "medium": "medium"}[kind]
        try:
            small = small_distance_force(small_kind, scene, d, spec)
        except KindSceneMismatch:
            small = None
        try:
            large = large_distance_force(small_kind if kind != "screened" else "screened_lifshitz", scene, d, spec)
        except KindSceneMismatch:
            large = None
        rows.append(
            {
                "d": d,
                "regime": scales.label(d),
                "full": full.value,
                "full_converged": full.converged,
                "small": None if small is None else small.value,
                "large": None if large is None else large.value,
            }
        )

    _attach_slopes(rows)
    return rows


def _attach_slopes(rows: list[dict]):
    for column in ("full", "small", "large"):
        for r in rows:
            r[f"slope_{column}"] = None
        usable = [i for i, r in enumerate(rows) if r[column] not in (None, 0.0)]
        if len(usable) < 2:
            continue
        xs = [math.log(rows[i]["d"]) for i in usable]
        ys = [math.log(abs(rows[i][column])) for i in usable]
        width = min(3, len(usable))
        for pos, i in enumerate(usable):
            lo = max(0, min(pos - width // 2, len(usable) - width))
            hi = lo + width
            rows[i][f"slope_{column}"] = float(np.polyfit(xs[lo:hi], ys[lo:hi], 1)[0])
