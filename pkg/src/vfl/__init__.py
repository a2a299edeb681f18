"""Vacuum forces on planar magnetodielectric structures.

Computes Casimir-type forces from the medium-aware (Lorentz-force) stress
tensor on the imaginary frequency axis: the screened and medium-assisted
slab forces in a planar cavity, forces on layers of the cavity medium,
interface forces, and dilute-limit atom-mirror forces, together with a
conventional-stress baseline, quasistatic/retarded reduced integrals and
ideal-mirror closed forms.
"""

__version__ = "0.1.0"

from .forces import (  # noqa: F401
    AtomProperties,
    Polarizability,
    atom_force,
    atom_force_vacuum,
    cavity_force_split,
    interface_force,
    medium_assisted_semiinfinite,
    medium_layer_force,
    minkowski_slab_force,
    screened_semiinfinite,
    slab_force_stress_difference,
)
from .geometry import CavityScene, InterfaceScene, Layer, validate_scene  # noqa: F401
from .materials import (  # noqa: F401
    Constant,
    DispersionModel,
    Drude,
    LorentzOscillators,
    Oscillator,
    PerfectMirror,
    VACUUM,
    response_at,
    static_response,
)
from .quadrature import IntegrationResult, QuadratureSpec  # noqa: F401
from .results import ForceResult, StressSample  # noqa: F401
from .stress import (  # noqa: F401
    correlator_traces,
    g_minkowski,
    g_mode,
    mode_identity_check,
    stress_zz,
)
