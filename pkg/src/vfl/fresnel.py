"""Fresnel coefficients of interfaces, slabs and layer stacks on the imaginary axis.

Everything is evaluated at imaginary frequency (omega = i*xi), where the
normal wave number is i*kappa with kappa = sqrt(n^2 xi^2 + k^2) real.  All
coefficients are therefore real and free of branch cuts; no complex numbers
appear anywhere in these paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import Layer
from .materials import DispersionModel, MaterialResponse, PerfectMirror, response_at

TM = "p"
TE = "s"
POLARIZATIONS = (TM, TE)


@dataclass(frozen=True)
class Polarization:
    """Mode label q with its sign delta_q = +1 (TM) / -1 (TE)."""

    q: str

    def __post_init__(self):
        if self.q not in (TM, TE):
            raise ValueError(f"polarization must be 'p' or 's', got {self.q!r}")

    @property
    def delta_q(self) -> int:
        return 1 if self.q == TM else -1


def delta_q(q: str) -> int:
    return 1 if q == TM else -1


def kappa(xi: float, k: float, material: DispersionModel | MaterialResponse) -> float:
    """Normal decay constant sqrt(n^2 xi^2 + k^2) in the given medium."""
    if xi == 0.0 and k == 0.0:
        raise ValueError("degenerate mode xi = k = 0")
    resp = material if isinstance(material, MaterialResponse) else response_at(material, xi)
    if math.isinf(resp.epsilon):
        return math.inf
    return math.hypot(math.sqrt(resp.n_squared) * xi, k)


def _gamma(q: str, resp_i: MaterialResponse, resp_j: MaterialResponse) -> float:
    if q == TM:
        if math.isinf(resp_j.epsilon):
            return 0.0
        return resp_i.epsilon / resp_j.epsilon
    return resp_i.mu / resp_j.mu


def interface_rt(
    q: str,
    xi: float,
    k: float,
    mat_i: DispersionModel | MaterialResponse,
    mat_j: DispersionModel | MaterialResponse,
) -> tuple[float, float]:
    """Single-interface (r, t) for incidence from medium i onto medium j.

    Antisymmetric in the media: r_ij = -r_ji.  Conducting limits (flagged
    infinite epsilon, or a perfect-mirror flag as mat_j) reflect +-1 and
    transmit nothing; incidence from inside a perfect mirror is undefined.
    """
    if isinstance(mat_i, PerfectMirror):
        raise ValueError("incidence from inside a perfect mirror is undefined")
    if isinstance(mat_j, PerfectMirror):
        sign = 1.0 if mat_j.kind == "conducting" else -1.0
        return sign * delta_q(q), 0.0
    resp_i = mat_i if isinstance(mat_i, MaterialResponse) else response_at(mat_i, xi)
    resp_j = mat_j if isinstance(mat_j, MaterialResponse) else response_at(mat_j, xi)
    if math.isinf(resp_i.epsilon):
        raise ValueError("incidence medium cannot be a conductor limit")
    ki = kappa(xi, k, resp_i)
    r = _interface_r(q, xi, k, resp_i, resp_j, ki)
    g_q = _gamma(q, resp_i, resp_j)
    g_s = _gamma(TE, resp_i, resp_j)
    t = math.sqrt(g_q / g_s) * (1.0 + r) if g_q > 0.0 else 0.0
    return r, t


def _interface_r(
    q: str,
    xi: float,
    k: float,
    resp_i: MaterialResponse,
    resp_j: MaterialResponse,
    kappa_i: float,
) -> float:
    if math.isinf(resp_j.epsilon):
        # conductor limit: TM reflects +1, TE -1
        return 1.0 if q == TM else -1.0
    kj = kappa(xi, k, resp_j)
    g = _gamma(q, resp_i, resp_j)
    num = kappa_i - g * kj
    den = kappa_i + g * kj
    return num / den if den != 0.0 else 0.0


def mirror_reflection(
    q: str,
    xi: float,
    k: float,
    incidence: DispersionModel | MaterialResponse,
    mirror_layers: Sequence[Layer],
) -> float:
    """Reflection of a mirror stack seen from the incidence medium.

    mirror_layers runs from the cavity outward; an empty stack reflects
    nothing.  A perfect-mirror terminator contributes +/-1 per polarization
    and anything listed behind it is ignored.
    """
    if not mirror_layers:
        return 0.0
    resp_inc = incidence if isinstance(incidence, MaterialResponse) else response_at(incidence, xi)
    # zero-thickness interior layers change nothing; dropping them keeps the
    # conductor-limit corners finite
    layers = [
        ly for i, ly in enumerate(mirror_layers) if ly.thickness > 0.0 or i == len(mirror_layers) - 1
    ]
    # a perfect mirror is opaque wherever it sits; everything behind is moot
    for i, ly in enumerate(layers):
        if isinstance(ly.material, PerfectMirror):
            layers = layers[: i + 1]
            break

    # walk from the back: r_acc is the reflection of everything behind the
    # current interface, seen from the layer in front of it
    last = layers[-1]
    n_finite = len(layers) - 1
    if isinstance(last.material, PerfectMirror):
        sign = 1.0 if last.material.kind == "conducting" else -1.0
        r_acc = sign * delta_q(q)
    else:
        front = layers[-2].material if n_finite else resp_inc
        resp_front = front if isinstance(front, MaterialResponse) else response_at(front, xi)
        resp_back = response_at(last.material, xi)
        r_acc = _interface_r(q, xi, k, resp_front, resp_back, kappa(xi, k, resp_front))

    for idx in range(n_finite - 1, -1, -1):
        layer = layers[idx]
        resp_layer = response_at(layer.material, xi)
        resp_front = response_at(layers[idx - 1].material, xi) if idx > 0 else resp_inc
        r_front = _interface_r(q, xi, k, resp_front, resp_layer, kappa(xi, k, resp_front))
        phase = math.exp(-2.0 * kappa(xi, k, resp_layer) * layer.thickness)
        r_acc = r_front + (1.0 - r_front * r_front) * r_acc * phase / (1.0 + r_front * r_acc * phase)
    return r_acc


def reflection_fn(q: str, incidence: DispersionModel, mirror_layers: Sequence[Layer]):
    """Precompile mirror_reflection into a fast (xi, k) closure.

    Resolves the stack structure once (zero-thickness drops, perfect-mirror
    truncation) so per-sample work is just cached response lookups and the
    backward fold.
    """
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
    materials = [incidence] + [ly.material for ly in finite]
    thicknesses = [ly.thickness for ly in finite]
    n_finite = len(finite)
    q_is_tm = q == TM

    def reflect(xi: float, k: float) -> float:
        resps = [m if isinstance(m, MaterialResponse) else response_at(m, xi) for m in materials]
        if terminal_sign is not None:
            r_acc = terminal_sign
        else:
            resp_front = resps[-1]
            resp_back = response_at(last.material, xi)
            r_acc = _interface_r(q, xi, k, resp_front, resp_back, kappa(xi, k, resp_front))
        for idx in range(n_finite - 1, -1, -1):
            resp_layer = resps[idx + 1]
            resp_front = resps[idx]
            r_front = _interface_r(q, xi, k, resp_front, resp_layer, kappa(xi, k, resp_front))
            phase = math.exp(-2.0 * kappa(xi, k, resp_layer) * thicknesses[idx])
            r_acc = r_front + (1.0 - r_front * r_front) * r_acc * phase / (1.0 + r_front * r_acc * phase)
        return r_acc

    return reflect


def compose_reflection(q: str, xi: float, k: float, stack: Sequence[Layer], from_side: str = "left") -> float:
    """Reflection of an ordered layer stack for incidence from one side.

    The stack must start (on the incidence side) with a semi-infinite layer;
    interior layers are finite and the far end is semi-infinite or a perfect
    mirror.
    """
    if not stack:
        raise ValueError("empty stack")
    layers = list(stack) if from_side == "left" else list(reversed(stack))
    incidence = layers[0]
    if not math.isinf(incidence.thickness):
        raise ValueError("incidence layer must be semi-infinite")
    if isinstance(incidence.material, PerfectMirror):
        raise ValueError("cannot compute incidence from inside a perfect mirror")
    return mirror_reflection(q, xi, k, incidence.material, layers[1:])


def slab_interface_rho(
    q: str,
    xi: float,
    k: float,
    medium: DispersionModel | MaterialResponse,
    slab: DispersionModel | MaterialResponse,
) -> float:
    """Single-interface medium->slab reflection (the slab building block)."""
    resp_m = medium if isinstance(medium, MaterialResponse) else response_at(medium, xi)
    resp_s = slab if isinstance(slab, MaterialResponse) else response_at(slab, xi)
    return _interface_r(q, xi, k, resp_m, resp_s, kappa(xi, k, resp_m))


def slab_rt(
    q: str,
    xi: float,
    k: float,
    medium: DispersionModel | MaterialResponse,
    slab: DispersionModel | MaterialResponse,
    d_s: float,
) -> tuple[float, float]:
    """(r, t) of a slab of thickness d_s immersed in the cavity medium.

    A perfect-mirror slab reflects +/-1 and transmits nothing.
    """
    if isinstance(slab, PerfectMirror):
        sign = 1.0 if slab.kind == "conducting" else -1.0
        return (sign * delta_q(q), 0.0) if d_s > 0.0 else (0.0, 1.0)
    if d_s == 0.0:
        return 0.0, 1.0
    rho = slab_interface_rho(q, xi, k, medium, slab)
    resp_s = slab if isinstance(slab, MaterialResponse) else response_at(slab, xi)
    e1 = math.exp(-kappa(xi, k, resp_s) * d_s)
    e2 = e1 * e1
    den = 1.0 - rho * rho * e2
    return rho * (1.0 - e2) / den, (1.0 - rho * rho) * e1 / den


def thin_slab_rt(
    q: str,
    xi: float,
    k: float,
    medium: DispersionModel | MaterialResponse,
    slab: DispersionModel | MaterialResponse,
    d_s: float,
) -> tuple[float, float]:
    """First-order-in-thickness slab coefficients (r_lin, bracket_lin).

    r_lin = 2 rho kappa_s d_s; bracket_lin approximates (1+r)^2 - t^2 as
    2 kappa d_s / gamma_q.  Advisory: kappa_s d_s << 1.
    """
    resp_m = medium if isinstance(medium, MaterialResponse) else response_at(medium, xi)
    resp_s = slab if isinstance(slab, MaterialResponse) else response_at(slab, xi)
    rho = slab_interface_rho(q, xi, k, resp_m, resp_s)
    kappa_s = kappa(xi, k, resp_s)
    kappa_m = kappa(xi, k, resp_m)
    g = _gamma(q, resp_m, resp_s)
    r_lin = 2.0 * rho * kappa_s * d_s
    bracket_lin = 2.0 * kappa_m * d_s / g
    return r_lin, bracket_lin


def pressure_bracket(r: float, t: float) -> float:
    """(1 + r)^2 - t^2, the slab coupling weight of the medium-assisted kernel."""
    return (1.0 + r) * (1.0 + r) - t * t


def radial_s(p: float, n_sq_layer: float, n_sq_medium: float) -> float:
    """Scaled normal wave number s_l = sqrt(p^2 - 1 + n_l^2/n^2) at p >= 1."""
    if p < 1.0:
        raise ValueError(f"radial variable must be >= 1, got {p}")
    if math.isinf(n_sq_layer):
        return math.inf
    return math.sqrt(p * p - 1.0 + n_sq_layer / n_sq_medium)


def radial_reflection(
    q: str,
    p: float,
    medium: MaterialResponse,
    mirror: MaterialResponse | PerfectMirror,
) -> float:
    """Static single-medium mirror reflection in the large-distance variables.

    R_p = (eps_m p - eps s_m)/(eps_m p + eps s_m) and the mu analog for TE;
    flagged conductors give R_p = +1, R_s = -1, perfect mirrors +/-delta_q.
    """
    if isinstance(mirror, PerfectMirror):
        sign = 1.0 if mirror.kind == "conducting" else -1.0
        return sign * delta_q(q)
    if math.isinf(mirror.epsilon):
        return 1.0 if q == TM else -1.0
    s_m = radial_s(p, mirror.n_squared, medium.n_squared)
    if q == TM:
        num = mirror.epsilon * p - medium.epsilon * s_m
        den = mirror.epsilon * p + medium.epsilon * s_m
    else:
        num = mirror.mu * p - medium.mu * s_m
        den = mirror.mu * p + medium.mu * s_m
    return num / den


def radial_coefficients(
    q: str,
    p: float,
    medium: MaterialResponse,
    mirror: MaterialResponse | PerfectMirror,
) -> tuple[float, float]:
    """(s_m, R(0, p)) of a single-medium mirror for the radial integrals."""
    if isinstance(mirror, PerfectMirror) or math.isinf(mirror.epsilon):
        s_m = math.inf
    else:
        s_m = radial_s(p, mirror.n_squared, medium.n_squared)
    return s_m, radial_reflection(q, p, medium, mirror)


@dataclass(frozen=True)
class ModeCoefficients:
    """Every per-(q, xi, k) quantity the cavity force kernels consume."""

    kappa: float
    rho: float
    r_slab: float
    t_slab: float
    r1: float
    r2: float
    d_q1: float
    d_q2: float
    n_q: float


def cavity_mode_coefficients(
    q: str,
    xi: float,
    k: float,
    *,
    medium: DispersionModel | MaterialResponse,
    slab: DispersionModel | MaterialResponse,
    d_s: float,
    mirror1_layers: Sequence[Layer],
    mirror2_layers: Sequence[Layer],
    d1: float,
    d2: float,
) -> ModeCoefficients:
    """Assemble slab, mirror and denominator data for one cavity mode."""
    resp_m = medium if isinstance(medium, MaterialResponse) else response_at(medium, xi)
    kap = kappa(xi, k, resp_m)
    if isinstance(slab, PerfectMirror):
        rho = (1.0 if slab.kind == "conducting" else -1.0) * delta_q(q)
    else:
        resp_s = slab if isinstance(slab, MaterialResponse) else response_at(slab, xi)
        rho = slab_interface_rho(q, xi, k, resp_m, resp_s)
    r, t = slab_rt(q, xi, k, resp_m, slab, d_s)
    r1 = mirror_reflection(q, xi, k, resp_m, mirror1_layers)
    r2 = mirror_reflection(q, xi, k, resp_m, mirror2_layers)
    a = r1 * math.exp(-2.0 * kap * d1) if not math.isinf(d1) else 0.0
    b = r2 * math.exp(-2.0 * kap * d2)
    n_q = 1.0 - r * (a + b) + (r * r - t * t) * a * b
    d_q1 = 1.0 - a * (r + t * t * b / (1.0 - r * b))
    d_q2 = 1.0 - b * (r + t * t * a / (1.0 - r * a))
    return ModeCoefficients(kap, rho, r, t, r1, r2, d_q1, d_q2, n_q)
