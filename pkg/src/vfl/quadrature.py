"""Adaptive integration over semi-infinite domains.

Half-line integrals are mapped onto (0, 1) and handed to an adaptive
Gauss-Kronrod core (QUADPACK via scipy).  Exponentially decaying integrands
use x = lower - scale*ln(1-t) with a per-integral scale hint (for a kernel
falling like exp(-2*kappa*d) the natural hint is 1/(2d)); power-law tails on
[1, inf) use the reciprocal map x = lower/t.  Non-convergence is a reported
state, never an exception, so distance sweeps can flag individual rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad


class IntegrandError(ValueError):
    """The integrand produced a non-finite sample; .location holds where."""

    def __init__(self, location: float, value: float):
        super().__init__(f"non-finite integrand value {value} at x = {location}")
        self.location = location
        self.value = value


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits shared by every integral of one computation."""

    rel_tol_outer: float = 1e-6
    rel_tol_inner: float = 1e-8
    abs_tol: float = 1e-30
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.rel_tol_outer <= 0 or self.rel_tol_inner <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_SPEC = QuadratureSpec()


@dataclass
class IntegrationResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def __add__(self, other: "IntegrationResult") -> "IntegrationResult":
        return IntegrationResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.evaluations + other.evaluations,
            self.converged and other.converged,
        )

    def scaled(self, factor: float) -> "IntegrationResult":
        return IntegrationResult(
            self.value * factor,
            self.error_estimate * abs(factor),
            self.evaluations,
            self.converged,
        )


def integrate_halfline(
    f: Callable[[float], float],
    lower: float = 0.0,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    scale: float | None = None,
    tail: str = "exp",
    rel_tol: float | None = None,
    abs_floor: float | None = None,
) -> IntegrationResult:
    """Integrate f over [lower, inf) to the spec tolerances.

    tail="exp" expects (at least) exponential decay and honors the scale
    hint; tail="power" (lower > 0) handles algebraic tails like p**-4;
    tail="rational" (x = lower + scale*t/(1-t)) is a robust compromise for
    integrands mixing power-law and exponential behavior.  abs_floor, when
    given, overrides the spec's absolute-tolerance floor.
    """
    if rel_tol is None:
        rel_tol = spec.rel_tol_outer
    if abs_floor is None:
        abs_floor = spec.abs_tol
    if scale is None or not (scale > 0.0) or math.isinf(scale):
        scale = 1.0

    if tail == "power":
        if lower <= 0.0:
            raise ValueError("power-tail mapping needs lower > 0")

        def mapped(t: float) -> float:
            if t <= 0.0:
                return 0.0
            x = lower / t
            fx = f(x)
            if fx == 0.0:
                return 0.0
            y = fx * lower / (t * t)
            if not math.isfinite(y):
                raise IntegrandError(x, y)
            return y

    elif tail == "rational":

        def mapped(t: float) -> float:
            one_minus = 1.0 - t
            if one_minus <= 0.0:
                return 0.0
            x = lower + scale * t / one_minus
            fx = f(x)
            if fx == 0.0:
                return 0.0
            y = fx * scale / (one_minus * one_minus)
            if not math.isfinite(y):
                raise IntegrandError(x, y)
            return y

    elif tail == "exp":

        def mapped(t: float) -> float:
            one_minus = 1.0 - t
            if one_minus <= 0.0:
                return 0.0
            x = lower - scale * math.log(one_minus)
            fx = f(x)
            if fx == 0.0:
                return 0.0
            y = fx * scale / one_minus
            if not math.isfinite(y):
                raise IntegrandError(x, y)
            return y

    else:
        raise ValueError(f"unknown tail mapping {tail!r}")

    out = quad(
        mapped,
        0.0,
        1.0,
        epsabs=abs_floor,
        epsrel=rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    value, abserr, info = out[0], out[1], out[2]
    converged = len(out) == 3
    return IntegrationResult(value, abserr, int(info["neval"]), converged)


def integrate_spectral_2d(
    g: Callable[[float, float], float],
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    xi_scale: float = 1.0,
    k_scale: float | Callable[[float], float] = 1.0,
) -> IntegrationResult:
    """Nested adaptive evaluation of int_0^inf dxi int_0^inf dk g(xi, k).

    The inner k-integral runs at the tighter inner tolerance so its noise
    stays below the outer target; k_scale may be a callable giving the inner
    scale hint as a function of xi (kernels decaying like exp(-2*kappa*d)
    widen with xi).  Inner integrals acquire an absolute floor a few digits
    below the largest inner magnitude seen, so kernels that cancel to
    rounding noise settle instead of subdividing forever; the first outer
    panel spans the whole domain, which pins that scale deterministically.
    The combined error estimate adds the outer estimate, an inner-noise
    bound, and the floor.
    """
    state = {"evals": 0, "inner_failed": 0, "peak": 0.0}
    k_scale_fn = k_scale if callable(k_scale) else (lambda xi: k_scale)

    def outer_integrand(xi: float) -> float:
        inner = integrate_halfline(
            lambda k: g(xi, k),
            0.0,
            spec,
            scale=k_scale_fn(xi),
            rel_tol=spec.rel_tol_inner,
            abs_floor=max(spec.abs_tol, 1e-13 * state["peak"]),
        )
        state["evals"] += inner.evaluations
        state["peak"] = max(state["peak"], abs(inner.value))
        if not inner.converged:
            state["inner_failed"] += 1
        return inner.value

    outer = integrate_halfline(
        outer_integrand, 0.0, spec, scale=xi_scale, rel_tol=spec.rel_tol_outer
    )
    floor = max(spec.abs_tol, 1e-13 * state["peak"])
    error = outer.error_estimate + spec.rel_tol_inner * abs(outer.value) + floor
    converged = outer.converged and state["inner_failed"] == 0
    # an outer integral that cannot beat the inner noise floor has converged
    # to zero at that floor, not failed
    if not converged and abs(outer.value) <= floor and outer.error_estimate <= floor:
        converged = True
    return IntegrationResult(
        outer.value,
        error,
        outer.evaluations + state["evals"],
        converged,
    )
