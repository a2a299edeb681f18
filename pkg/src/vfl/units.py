"""Conversion from natural force units to SI.

Internally everything is nondimensionalized with a reference frequency
Omega_ref and length c/Omega_ref.  Forces per unit area carry
hbar*Omega_ref^4/c^3 (Pa); per-atom forces, with the polarizability in
(c/Omega_ref)^3, carry hbar*Omega_ref^2/c (N).
"""

from __future__ import annotations

HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m / s


def pressure_si_factor(omega_ref: float) -> float:
    """Pa per natural pressure unit at the given reference frequency (rad/s)."""
    return HBAR * omega_ref**4 / C_LIGHT**3


def per_atom_si_factor(omega_ref: float) -> float:
    """N per natural per-atom force unit at the given reference frequency."""
    return HBAR * omega_ref**2 / C_LIGHT
