"""Request/response schemas of the force service.

The compute CLI builds the same SweepRequest from its config file and either
executes it in-process or posts it to a running service, so everything a run
needs is in these models.
"""

from __future__ import annotations

import math
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import materials
from ..forces import AtomProperties, Polarizability

ForceKindName = Literal["slab", "screened", "assisted", "medium", "atom", "atom-vacuum", "interface"]
FORCE_KIND_NAMES = ("slab", "screened", "assisted", "medium", "atom", "atom-vacuum", "interface")
ASYMPTOTIC_KINDS = ("screened", "assisted", "medium")


class StrictModel(BaseModel):
    # infinities are semantically meaningful (semi-infinite gaps/layers) and
    # must survive a JSON round trip, hence the string encoding
    model_config = ConfigDict(extra="forbid", ser_json_inf_nan="strings")


class OscillatorSpec(StrictModel):
    omega_0: float = Field(gt=0)
    omega_p: float = Field(gt=0)
    gamma: float = Field(default=0.0, ge=0)

    def to_model(self) -> materials.Oscillator:
        return materials.Oscillator(self.omega_0, self.omega_p, self.gamma)


class ConstantSpec(StrictModel):
    model: Literal["constant"] = "constant"
    epsilon: float = Field(default=1.0, ge=1)
    mu: float = Field(default=1.0, ge=1)

    def to_model(self) -> materials.Constant:
        return materials.Constant(self.epsilon, self.mu)


class DrudeSpec(StrictModel):
    model: Literal["drude"] = "drude"
    omega_p: float = Field(gt=0)
    gamma: float = Field(default=0.0, ge=0)
    mu: float = Field(default=1.0, ge=1)

    def to_model(self) -> materials.Drude:
        return materials.Drude(self.omega_p, self.gamma, self.mu)


class LorentzSpec(StrictModel):
    model: Literal["lorentz"] = "lorentz"
    eps_oscillators: list[OscillatorSpec] = Field(default_factory=list)
    mu_oscillators: list[OscillatorSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _nonempty(self):
        if not self.eps_oscillators and not self.mu_oscillators:
            raise ValueError("lorentz material needs at least one oscillator")
        return self

    def to_model(self) -> materials.LorentzOscillators:
        return materials.LorentzOscillators(
            tuple(o.to_model() for o in self.eps_oscillators),
            tuple(o.to_model() for o in self.mu_oscillators),
        )


class PerfectSpec(StrictModel):
    model: Literal["perfect"] = "perfect"
    kind: Literal["conducting", "permeable"] = "conducting"

    def to_model(self) -> materials.PerfectMirror:
        return materials.PerfectMirror(self.kind)


MaterialSpec = Annotated[
    Union[ConstantSpec, DrudeSpec, LorentzSpec, PerfectSpec], Field(discriminator="model")
]


class LayerSpec(StrictModel):
    material: str
    thickness: float = Field(gt=0)


class SlabSpec(StrictModel):
    material: str
    thickness: float = Field(ge=0)


class CavitySceneSpec(StrictModel):
    type: Literal["cavity"] = "cavity"
    mirror1: str | list[LayerSpec] | None = None
    gap1: float = Field(default=math.inf, ge=0)
    slab: SlabSpec | None = None
    mirror2: str | list[LayerSpec] | None = None
    medium: str = "vacuum"


class InterfaceSceneSpec(StrictModel):
    type: Literal["interface"] = "interface"
    left: str
    right: str
    a0: float | None = Field(default=None, ge=0)
    an: float | None = Field(default=None, ge=0)


SceneSpec = Annotated[Union[CavitySceneSpec, InterfaceSceneSpec], Field(discriminator="type")]


class SweepSpec(StrictModel):
    d_min: float = Field(gt=0)
    d_max: float = Field(gt=0)
    points: int = Field(default=1, ge=1)
    spacing: Literal["log", "linear"] = "log"

    @model_validator(mode="after")
    def _ordered(self):
        if self.d_max < self.d_min:
            raise ValueError("sweep.d_max must be >= sweep.d_min")
        return self

    def distances(self) -> list[float]:
        if self.points == 1:
            return [self.d_min]
        if self.spacing == "linear":
            step = (self.d_max - self.d_min) / (self.points - 1)
            return [self.d_min + i * step for i in range(self.points)]
        ratio = (self.d_max / self.d_min) ** (1.0 / (self.points - 1))
        return [self.d_min * ratio**i for i in range(self.points)]


class ComputeSpec(StrictModel):
    forces: list[ForceKindName] = Field(default_factory=lambda: ["slab"])
    mode: Literal["lorentz", "minkowski", "both"] = "lorentz"
    regime: Literal["full", "small", "large", "all"] = "full"
    medium_layer_thickness: float = Field(default=0.1, gt=0)

    @model_validator(mode="after")
    def _regimes_supported(self):
        if self.regime in ("small", "large"):
            for kind in self.forces:
                if kind not in ASYMPTOTIC_KINDS:
                    raise ValueError(
                        f"compute.regime={self.regime} is only available for "
                        f"{'/'.join(ASYMPTOTIC_KINDS)}, not {kind!r}"
                    )
        return self


class QuadratureSpecModel(StrictModel):
    rel_tol_outer: float = Field(default=1e-6, gt=0)
    rel_tol_inner: float = Field(default=1e-8, gt=0)
    abs_tol: float = Field(default=1e-30, gt=0)
    max_subdivisions: int = Field(default=200, ge=1)


class PolarizabilitySpec(StrictModel):
    alpha_0: float = Field(ge=0)
    omega_0: float | None = Field(default=None, gt=0)
    gamma: float = Field(default=0.0, ge=0)

    def to_model(self) -> Polarizability:
        return Polarizability(self.alpha_0, self.omega_0, self.gamma)


class AtomSpec(StrictModel):
    alpha_e: PolarizabilitySpec | None = None
    alpha_m: PolarizabilitySpec | None = None

    def to_model(self) -> AtomProperties:
        zero = Polarizability(0.0)
        return AtomProperties(
            self.alpha_e.to_model() if self.alpha_e else zero,
            self.alpha_m.to_model() if self.alpha_m else zero,
        )


class UnitsSpec(StrictModel):
    omega_ref: float | None = Field(default=None, gt=0, description="reference frequency in rad/s")
    output: Literal["natural", "pa"] = "natural"

    @model_validator(mode="after")
    def _si_needs_omega(self):
        if self.output == "pa" and self.omega_ref is None:
            raise ValueError("units.output=pa requires units.omega_ref")
        return self


def _check_material_refs(table: dict[str, MaterialSpec], scene) -> None:
    known = set(table) | {"vacuum"}

    def check(name: str | None, where: str):
        if isinstance(name, str) and name not in known:
            raise ValueError(f"{where}: unknown material {name!r}")

    if isinstance(scene, CavitySceneSpec):
        check(scene.medium, "scene.medium")
        if scene.slab is not None:
            check(scene.slab.material, "scene.slab.material")
        for side in ("mirror1", "mirror2"):
            spec = getattr(scene, side)
            if isinstance(spec, str):
                check(spec, f"scene.{side}")
            elif isinstance(spec, list):
                for i, layer in enumerate(spec):
                    check(layer.material, f"scene.{side}[{i}].material")
    else:
        check(scene.left, "scene.left")
        check(scene.right, "scene.right")


class SweepRequest(StrictModel):
    units: UnitsSpec = Field(default_factory=UnitsSpec)
    materials: dict[str, MaterialSpec] = Field(default_factory=dict)
    scene: SceneSpec
    sweep: SweepSpec
    compute: ComputeSpec = Field(default_factory=ComputeSpec)
    quadrature: QuadratureSpecModel = Field(default_factory=QuadratureSpecModel)
    atom: AtomSpec | None = None
    jobs: int = Field(default=1, ge=1, le=64)

    @model_validator(mode="after")
    def _cross_checks(self):
        _check_material_refs(self.materials, self.scene)
        if isinstance(self.scene, CavitySceneSpec):
            if "interface" in self.compute.forces:
                raise ValueError("compute.forces: 'interface' needs scene.type=interface")
        else:
            bad = [k for k in self.compute.forces if k != "interface"]
            if bad:
                raise ValueError(
                    f"compute.forces: interface scenes only support 'interface', got {bad}"
                )
        if any(k in ("atom", "atom-vacuum") for k in self.compute.forces) and self.atom is None:
            raise ValueError("compute.forces: atom kinds need an 'atom' block")
        return self


class ForceRow(StrictModel):
    d: float
    kind: str
    mode: str
    regime: str
    value: float
    value_si: float | None = None
    error_estimate: float
    converged: bool
    sign_toward_nearest_mirror: int
    unit: str


class SweepResponse(StrictModel):
    rows: list[ForceRow]
    warnings: list[str] = Field(default_factory=list)


class CompareRow(StrictModel):
    d: float
    screened: float
    assisted: float
    total: float
    minkowski: float
    ratio_assisted_screened: float | None = None
    ratio_minkowski_total: float | None = None
    converged: bool = True


class CompareRequest(StrictModel):
    units: UnitsSpec = Field(default_factory=UnitsSpec)
    materials: dict[str, MaterialSpec] = Field(default_factory=dict)
    scene: CavitySceneSpec
    sweep: SweepSpec
    quadrature: QuadratureSpecModel = Field(default_factory=QuadratureSpecModel)
    jobs: int = Field(default=1, ge=1, le=64)

    @model_validator(mode="after")
    def _cross_checks(self):
        _check_material_refs(self.materials, self.scene)
        return self


class CompareResponse(StrictModel):
    rows: list[CompareRow]
    warnings: list[str] = Field(default_factory=list)


class MaterialEvalRequest(StrictModel):
    material: MaterialSpec
    xi: list[float] = Field(min_length=1)

    @model_validator(mode="after")
    def _positive(self):
        if any(x <= 0 for x in self.xi):
            raise ValueError("xi values must be > 0")
        return self


class MaterialEvalResponse(StrictModel):
    epsilon: list[float]
    mu: list[float]
    n_squared: list[float]
