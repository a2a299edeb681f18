"""Result records shared by the stress and force layers."""

from __future__ import annotations

from dataclasses import dataclass

# force kinds
SLAB_TOTAL = "slab_total"
SCREENED = "screened"
ASSISTED = "assisted"
MEDIUM_LAYER = "medium_layer"
ATOM_ASSISTED = "atom_assisted"
ATOM_VACUUM = "atom_vacuum"
INTERFACE = "interface"

FORCE_KINDS = (SLAB_TOTAL, SCREENED, ASSISTED, MEDIUM_LAYER, ATOM_ASSISTED, ATOM_VACUUM, INTERFACE)

# per-unit-area values are in hbar*Omega_ref^4/c^3; per-atom values (with
# polarizabilities in l_ref^3) in hbar*Omega_ref^5/c^4 * l_ref^3
UNIT_PRESSURE = "hbar*Omega_ref^4/c^3"
UNIT_PER_ATOM = "hbar*Omega_ref^5/c^4*l_ref^3"


@dataclass(frozen=True)
class ForceResult:
    """Signed force per unit area (or per atom), +z pointing at mirror 2."""

    value: float
    kind: str
    error_estimate: float
    converged: bool
    evaluations: int = 0

    @property
    def unit(self) -> str:
        return UNIT_PER_ATOM if self.kind in (ATOM_ASSISTED, ATOM_VACUUM) else UNIT_PRESSURE


@dataclass(frozen=True)
class StressSample:
    """Regularized zz-stress at one point of one layer."""

    layer: str
    z: float
    value: float
    mode: str
    error_estimate: float
    converged: bool
    evaluations: int = 0
