"""Planar scene descriptions.

A scene is a stack of layers along z.  The z-axis points from mirror 1 toward
mirror 2; a positive force on a body means force along +z.  Each finite layer
carries a local coordinate running 0..thickness; the two external layers use
(-inf, 0] and [0, inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .materials import VACUUM, DispersionModel, PerfectMirror


class SceneError(ValueError):
    """Scene validation failure; .violations lists every problem found."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class Layer:
    """One homogeneous slab; thickness may be math.inf only at stack ends."""

    material: DispersionModel
    thickness: float


# A mirror is given from the cavity outward: finite layers first, then a
# semi-infinite terminator (material half-space or perfect mirror).  None or
# an empty tuple means no mirror on that side (zero reflection).
MirrorSpec = DispersionModel | Sequence[Layer] | None


def normalize_mirror(mirror: MirrorSpec) -> tuple[Layer, ...]:
    """Return mirror layers (cavity-adjacent first, terminator last)."""
    if mirror is None:
        return ()
    if isinstance(mirror, (list, tuple)):
        return tuple(mirror)
    return (Layer(mirror, math.inf),)


def _mirror_violations(name: str, layers: tuple[Layer, ...]) -> list[str]:
    # a perfect mirror is opaque, so it terminates the stack wherever it
    # sits; layers behind it are ignored by the optics and by validation
    problems = []
    for i, layer in enumerate(layers):
        if isinstance(layer.material, PerfectMirror):
            return problems
        last = i == len(layers) - 1
        if last:
            if not math.isinf(layer.thickness):
                problems.append(f"{name}: terminator must be semi-infinite or a perfect mirror")
        else:
            if math.isinf(layer.thickness):
                problems.append(f"{name}: semi-infinite interior layer")
        if layer.thickness < 0.0:
            problems.append(f"{name}: negative thickness")
    return problems


@dataclass(frozen=True)
class CavityScene:
    """Mirror 1 | gap1 | slab | gap2 | mirror 2, all immersed in one medium.

    gap1 may be infinite (semi-infinite cavity, equivalently no mirror 1);
    gap2 is the working distance d.
    """

    mirror1: MirrorSpec
    gap1: float
    slab_material: DispersionModel
    slab_thickness: float
    gap2: float
    mirror2: MirrorSpec
    medium: DispersionModel = VACUUM

    @property
    def mirror1_layers(self) -> tuple[Layer, ...]:
        return normalize_mirror(self.mirror1)

    @property
    def mirror2_layers(self) -> tuple[Layer, ...]:
        return normalize_mirror(self.mirror2)

    @property
    def semi_infinite(self) -> bool:
        return math.isinf(self.gap1) or not self.mirror1_layers

    def with_gap2(self, d: float) -> "CavityScene":
        return replace(self, gap2=d)


@dataclass(frozen=True)
class InterfaceScene:
    """Two half-spaces meeting at z = 0; the probed layer spans (-a0, an)."""

    left: DispersionModel
    right: DispersionModel
    a0: float
    an: float


def validate_scene(scene: CavityScene | InterfaceScene):
    """Check invariants and return the scene in normalized form.

    Raises SceneError listing every violation.  Normalization collapses a
    zero-thickness slab (the coefficients it produces are identical either
    way) and replaces an infinite gap1 with an explicit no-mirror side.
    """
    if isinstance(scene, InterfaceScene):
        problems = []
        for name in ("left", "right"):
            if isinstance(getattr(scene, name), PerfectMirror):
                problems.append(f"{name}: interface media must have a material response")
        if scene.a0 < 0.0 or scene.an < 0.0:
            problems.append("negative thickness")
        if scene.a0 + scene.an <= 0.0:
            problems.append("probed layer must have nonzero thickness (a0 + an > 0)")
        if problems:
            raise SceneError(problems)
        return scene

    problems = []
    if isinstance(scene.medium, PerfectMirror):
        problems.append("medium: cavity medium must have a material response")
    if scene.slab_thickness < 0.0:
        problems.append("slab: negative thickness")
    if scene.gap2 <= 0.0:
        problems.append("gap2: must be > 0")
    if scene.gap1 < 0.0:
        problems.append("gap1: negative thickness")
    if math.isinf(scene.gap1) and math.isinf(scene.gap2):
        problems.append("both gaps infinite")
    if math.isinf(scene.slab_thickness) and not isinstance(scene.slab_material, PerfectMirror):
        # a half-space slab is fine when nothing sits behind it
        if not (math.isinf(scene.gap1) or not normalize_mirror(scene.mirror1)):
            problems.append("slab: semi-infinite interior layer")
    problems += _mirror_violations("mirror1", scene.mirror1_layers)
    problems += _mirror_violations("mirror2", scene.mirror2_layers)
    if problems:
        raise SceneError(problems)

    normalized = scene
    if scene.slab_thickness == 0.0 and not isinstance(scene.slab_material, PerfectMirror):
        normalized = replace(normalized, slab_material=normalized.medium)
    if math.isinf(normalized.gap1):
        normalized = replace(normalized, mirror1=None)
    if isinstance(normalized.mirror1, (list, tuple)) or isinstance(normalized.mirror2, (list, tuple)):
        normalized = replace(
            normalized,
            mirror1=normalized.mirror1_layers or None,
            mirror2=normalized.mirror2_layers or None,
        )
    return normalized
