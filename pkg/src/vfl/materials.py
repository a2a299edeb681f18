"""Material response on the imaginary frequency axis.

All frequencies are dimensionless (units of a global reference frequency),
all lengths in units of c over that frequency.  On the imaginary axis every
passive response is real and >= 1, which keeps the downstream optics in real
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class MaterialError(ValueError):
    """Invalid material parameters or an unsupported response query."""


@dataclass(frozen=True)
class MaterialResponse:
    """Permittivity, permeability and their product at one imaginary frequency."""

    epsilon: float
    mu: float

    @property
    def n_squared(self) -> float:
        return self.epsilon * self.mu

    @property
    def is_conducting(self) -> bool:
        """True for the flagged infinite static response (static Drude)."""
        return math.isinf(self.epsilon)


@dataclass(frozen=True)
class Constant:
    """Dispersionless medium: epsilon and mu fixed at all frequencies."""

    epsilon: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if self.epsilon < 1.0 or self.mu < 1.0:
            raise MaterialError(
                f"constant response must satisfy epsilon, mu >= 1, got ({self.epsilon}, {self.mu})"
            )


@dataclass(frozen=True)
class Drude:
    """Free-carrier permittivity eps(i*xi) = 1 + omega_p^2 / (xi*(xi+gamma)).

    The permeability is a separate constant.  The static limit diverges and is
    reported as a flagged infinity (treated downstream as a conductor).
    """

    omega_p: float
    gamma: float = 0.0
    mu: float = 1.0

    def __post_init__(self):
        if self.omega_p <= 0.0:
            raise MaterialError(f"Drude plasma frequency must be > 0, got {self.omega_p}")
        if self.gamma < 0.0:
            raise MaterialError(f"Drude damping must be >= 0, got {self.gamma}")
        if self.mu < 1.0:
            raise MaterialError(f"permeability must be >= 1, got {self.mu}")


@dataclass(frozen=True)
class Oscillator:
    """One resonance: strength omega_p at frequency omega_0 with damping gamma."""

    omega_0: float
    omega_p: float
    gamma: float = 0.0

    def __post_init__(self):
        if self.omega_0 <= 0.0 or self.omega_p <= 0.0 or self.gamma < 0.0:
            raise MaterialError(
                f"oscillator needs omega_0 > 0, omega_p > 0, gamma >= 0, "
                f"got ({self.omega_0}, {self.omega_p}, {self.gamma})"
            )

    def term(self, xi: float) -> float:
        return self.omega_p**2 / (self.omega_0**2 + xi * (xi + self.gamma))


@dataclass(frozen=True)
class LorentzOscillators:
    """Sum of bound resonances for epsilon and, optionally, for mu."""

    eps_oscillators: tuple[Oscillator, ...] = ()
    mu_oscillators: tuple[Oscillator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "eps_oscillators", tuple(self.eps_oscillators))
        object.__setattr__(self, "mu_oscillators", tuple(self.mu_oscillators))
        if not self.eps_oscillators and not self.mu_oscillators:
            raise MaterialError("Lorentz model needs at least one oscillator")


@dataclass(frozen=True)
class PerfectMirror:
    """Idealized mirror flag; not a response function.

    'conducting' reflects with R_p = +1, R_s = -1, 'permeable' with the
    opposite signs.  Response queries are rejected.
    """

    kind: str = "conducting"

    def __post_init__(self):
        if self.kind not in ("conducting", "permeable"):
            raise MaterialError(f"perfect mirror kind must be conducting|permeable, got {self.kind!r}")


DispersionModel = Constant | Drude | LorentzOscillators | PerfectMirror

VACUUM = Constant(1.0, 1.0)


@lru_cache(maxsize=1 << 16)
def response_at(model: DispersionModel, xi: float) -> MaterialResponse:
    """Evaluate (epsilon, mu) at imaginary frequency xi >= 0.

    Drude at xi = 0 returns a flagged infinite epsilon.  PerfectMirror models
    bypass response evaluation entirely and are rejected here.  Models are
    immutable, so results are memoized per (model, xi).
    """
    if xi < 0.0:
        raise MaterialError(f"imaginary frequency must be >= 0, got {xi}")
    if isinstance(model, PerfectMirror):
        raise MaterialError("a perfect mirror has no material response; use its reflection flags")
    if isinstance(model, Constant):
        return MaterialResponse(model.epsilon, model.mu)
    if isinstance(model, Drude):
        if xi == 0.0:
            return MaterialResponse(math.inf, model.mu)
        return MaterialResponse(1.0 + model.omega_p**2 / (xi * (xi + model.gamma)), model.mu)
    if isinstance(model, LorentzOscillators):
        eps = 1.0 + sum(o.term(xi) for o in model.eps_oscillators)
        mu = 1.0 + sum(o.term(xi) for o in model.mu_oscillators)
        return MaterialResponse(eps, mu)
    raise MaterialError(f"unknown dispersion model {model!r}")


def static_response(model: DispersionModel) -> MaterialResponse:
    """The xi -> 0 limit of response_at (flagged infinite for Drude)."""
    return response_at(model, 0.0)


def transparency_scale(model: DispersionModel) -> float | None:
    """Advisory frequency beyond which the model stops reflecting.

    Used only for regime labeling: sqrt(omega_0^2 + omega_p^2) for dispersive
    models, infinity for perfect mirrors, None for constants (no such scale).
    """
    if isinstance(model, PerfectMirror):
        return math.inf
    if isinstance(model, Drude):
        return model.omega_p
    if isinstance(model, LorentzOscillators):
        return max(
            math.hypot(o.omega_0, o.omega_p)
            for o in model.eps_oscillators + model.mu_oscillators
        )
    return None
