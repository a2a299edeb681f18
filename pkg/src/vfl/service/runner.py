"""Execute sweep/compare requests against the core force library.

Distances are dispatched to a bounded worker pool (request.jobs wide); rows
come back in deterministic (d, kind, mode, regime) order regardless of
completion order.  Per-row quadrature trouble is flagged in the row, never
raised, so one bad distance cannot abort a sweep.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor

from .. import asymptotics, forces, geometry, materials
from ..quadrature import QuadratureSpec
from ..results import UNIT_PER_ATOM, ForceResult
from ..units import pressure_si_factor, per_atom_si_factor
from . import models

log = logging.getLogger("vfl.service")

_KIND_LABEL = {
    "slab": "slab_total",
    "screened": "screened",
    "assisted": "assisted",
    "medium": "medium_layer",
    "atom": "atom_assisted",
    "atom-vacuum": "atom_vacuum",
    "interface": "interface",
}


class RunPlan:
    """Resolved request: core materials, scene template, quadrature, atom."""

    def __init__(self, req: models.SweepRequest | models.CompareRequest):
        self.req = req
        self.table: dict[str, materials.DispersionModel] = {"vacuum": materials.VACUUM}
        for name, spec in req.materials.items():
            self.table[name] = spec.to_model()
        self.spec = QuadratureSpec(
            rel_tol_outer=req.quadrature.rel_tol_outer,
            rel_tol_inner=req.quadrature.rel_tol_inner,
            abs_tol=req.quadrature.abs_tol,
            max_subdivisions=req.quadrature.max_subdivisions,
        )
        self.atom = req.atom.to_model() if getattr(req, "atom", None) else None
        self.pressure_si = pressure_si_factor(req.units.omega_ref) if req.units.omega_ref else None
        self.atom_si = per_atom_si_factor(req.units.omega_ref) if req.units.omega_ref else None

    def resolve(self, name: str) -> materials.DispersionModel:
        return self.table[name]

    def mirror_layers(self, spec) -> tuple[geometry.Layer, ...]:
        if spec is None:
            return ()
        if isinstance(spec, str):
            return (geometry.Layer(self.resolve(spec), math.inf),)
        return tuple(geometry.Layer(self.resolve(ly.material), ly.thickness) for ly in spec)

    def cavity_scene(self, d: float) -> geometry.CavityScene:
        sc = self.req.scene
        slab_material = self.resolve(sc.slab.material) if sc.slab else self.resolve(sc.medium)
        slab_thickness = sc.slab.thickness if sc.slab else 0.0
        return geometry.validate_scene(
            geometry.CavityScene(
                mirror1=self.mirror_layers(sc.mirror1) or None,
                gap1=sc.gap1,
                slab_material=slab_material,
                slab_thickness=slab_thickness,
                gap2=d,
                mirror2=self.mirror_layers(sc.mirror2) or None,
                medium=self.resolve(sc.medium),
            )
        )

    def interface_scene(self, d: float) -> geometry.InterfaceScene:
        sc = self.req.scene
        a0 = sc.a0 if sc.a0 is not None else d / 2.0
        an = sc.an if sc.an is not None else d / 2.0
        return geometry.validate_scene(
            geometry.InterfaceScene(self.resolve(sc.left), self.resolve(sc.right), a0, an)
        )

    def si_factor(self, unit: str) -> float | None:
        if unit == UNIT_PER_ATOM:
            return self.atom_si
        return self.pressure_si

    def sign_toward_nearest(self, d: float, kind: str, value: float) -> int:
        if value == 0.0:
            return 0
        sc = self.req.scene
        if isinstance(sc, models.InterfaceSceneSpec) or kind == "interface":
            return 0
        toward_2 = 1 if value > 0.0 else -1
        if kind in ("medium", "atom", "atom-vacuum"):
            return toward_2
        if sc.mirror1 is None or math.isinf(sc.gap1) or d <= sc.gap1:
            return toward_2
        return -toward_2


def _force_row(plan: RunPlan, d: float, kind: str, mode: str, regime: str) -> models.ForceRow:
    result = _evaluate(plan, d, kind, mode, regime)
    si = plan.si_factor(result.unit)
    return models.ForceRow(
        d=d,
        kind=_KIND_LABEL[kind],
        mode=mode,
        regime=regime,
        value=result.value,
        value_si=result.value * si if si is not None else None,
        error_estimate=result.error_estimate,
        converged=result.converged,
        sign_toward_nearest_mirror=plan.sign_toward_nearest(d, kind, result.value),
        unit=result.unit,
    )


_ASYMPTOTIC_NAME = {"screened": "screened_lifshitz", "assisted": "assisted", "medium": "medium"}


def _evaluate(plan: RunPlan, d: float, kind: str, mode: str, regime: str) -> ForceResult:
    spec = plan.spec
    if mode == "minkowski" and kind in ("interface", "medium"):
        # the conventional kernel carries no stress in semi-infinite layers
        # and no z-dependence inside one, so these forces vanish identically
        label = _KIND_LABEL[kind]
        return ForceResult(0.0, label, 0.0, True, 0)

    if kind == "interface":
        return forces.interface_force(plan.interface_scene(d), spec)

    if kind in ("atom", "atom-vacuum"):
        sc = plan.req.scene
        mirror = plan.mirror_layers(sc.mirror2)
        if kind == "atom-vacuum":
            return forces.atom_force_vacuum(mirror, plan.atom, d, spec)
        return forces.atom_force(mirror, plan.atom, d, spec, medium=plan.resolve(sc.medium))

    if kind == "medium":
        sc = plan.req.scene
        mirror = plan.mirror_layers(sc.mirror2)
        d_s = plan.req.compute.medium_layer_thickness
        if regime == "full":
            return forces.medium_layer_force(mirror, plan.resolve(sc.medium), d, d_s, spec)
        scene = geometry.CavityScene(
            None, math.inf, plan.resolve(sc.medium), d_s, d, mirror or None, plan.resolve(sc.medium)
        )
        fn = asymptotics.small_distance_force if regime == "small" else asymptotics.large_distance_force
        return fn("medium", scene, d, spec)

    scene = plan.cavity_scene(d)
    if regime in ("small", "large"):
        fn = asymptotics.small_distance_force if regime == "small" else asymptotics.large_distance_force
        return fn(_ASYMPTOTIC_NAME[kind], scene, d, spec)

    if mode == "minkowski":
        return forces.minkowski_slab_force(scene, spec)
    if kind == "slab":
        return forces.slab_force_stress_difference(scene, spec)
    if kind == "screened":
        return forces._screened_force(scene, spec)
    return forces._assisted_force(scene, spec)


def _row_plan(plan: RunPlan) -> list[tuple[float, str, str, str]]:
    req = plan.req
    modes = ["lorentz", "minkowski"] if req.compute.mode == "both" else [req.compute.mode]
    regimes = {"full": ["full"], "small": ["small"], "large": ["large"], "all": ["full", "small", "large"]}[
        req.compute.regime
    ]
    tasks = []
    for d in req.sweep.distances():
        for kind in req.compute.forces:
            for mode in modes:
                if mode == "minkowski" and kind not in ("slab", "interface", "medium"):
                    continue
                for regime in regimes:
                    if regime != "full" and kind not in models.ASYMPTOTIC_KINDS:
                        continue
                    if regime != "full" and mode == "minkowski":
                        continue
                    if not _asymptotics_applicable(plan, kind, regime):
                        continue
                    tasks.append((d, kind, mode, regime))
    return tasks


def _asymptotics_applicable(plan: RunPlan, kind: str, regime: str) -> bool:
    if regime == "full" or kind not in models.ASYMPTOTIC_KINDS:
        return True
    sc = plan.req.scene
    if not isinstance(sc, models.CavitySceneSpec):
        return False
    semi_infinite = sc.mirror1 is None or math.isinf(sc.gap1)
    if not semi_infinite or sc.mirror2 is None:
        return False
    # the screened reduced forms assume the classical half-space-slab setup
    if kind == "screened" and not (sc.slab and math.isinf(sc.slab.thickness)):
        return False
    # large-distance forms use static responses: a conducting medium has none,
    # and the medium-layer form needs a single-medium mirror
    if regime == "large":
        if materials.static_response(plan.resolve(sc.medium)).is_conducting:
            return False
        if kind == "medium" and isinstance(sc.mirror2, list) and len(sc.mirror2) > 1:
            return False
    return True


def execute_sweep(req: models.SweepRequest) -> models.SweepResponse:
    plan = RunPlan(req)
    tasks = _row_plan(plan)
    warnings: list[str] = []
    if req.compute.regime in ("small", "large") and not tasks:
        raise ValueError(f"compute.regime={req.compute.regime}: no applicable rows for this scene")
    # surface scene-shape problems before dispatching any work
    if isinstance(req.scene, models.CavitySceneSpec):
        plan.cavity_scene(req.sweep.d_min)
    else:
        plan.interface_scene(req.sweep.d_min)

    def work(task):
        d, kind, mode, regime = task
        return _force_row(plan, d, kind, mode, regime)

    if req.jobs > 1:
        with ThreadPoolExecutor(max_workers=req.jobs) as pool:
            rows = list(pool.map(work, tasks))
    else:
        rows = [work(t) for t in tasks]

    for row in rows:
        if not row.converged:
            warnings.append(f"d={row.d} kind={row.kind} regime={row.regime}: quadrature did not converge")
    return models.SweepResponse(rows=rows, warnings=warnings)


def execute_compare(req: models.CompareRequest) -> models.CompareResponse:
    plan = RunPlan(req)
    distances = req.sweep.distances()

    def work(d: float) -> models.CompareRow:
        scene = plan.cavity_scene(d)
        screened, assisted, total = forces.cavity_force_split(scene, plan.spec)
        mink = forces.minkowski_slab_force(scene, plan.spec)
        ratio_as = assisted.value / screened.value if screened.value != 0.0 else None
        ratio_mt = mink.value / total.value if total.value != 0.0 else None
        return models.CompareRow(
            d=d,
            screened=screened.value,
            assisted=assisted.value,
            total=total.value,
            minkowski=mink.value,
            ratio_assisted_screened=ratio_as,
            ratio_minkowski_total=ratio_mt,
            converged=all(r.converged for r in (screened, assisted, total, mink)),
        )

    if req.jobs > 1:
        with ThreadPoolExecutor(max_workers=req.jobs) as pool:
            rows = list(pool.map(work, distances))
    else:
        rows = [work(d) for d in distances]
    warnings = [f"d={row.d}: quadrature did not converge" for row in rows if not row.converged]
    return models.CompareResponse(rows=rows, warnings=warnings)


def evaluate_material(req: models.MaterialEvalRequest) -> models.MaterialEvalResponse:
    model = req.material.to_model()
    eps, mu, n2 = [], [], []
    for x in req.xi:
        resp = materials.response_at(model, x)
        eps.append(resp.epsilon)
        mu.append(resp.mu)
        n2.append(resp.n_squared)
    return models.MaterialEvalResponse(epsilon=eps, mu=mu, n_squared=n2)
