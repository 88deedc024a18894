"""Closed-form relativistic wave-particle kinematics.

Energy-momentum algebra E^2 = p^2 c^2 + m0^2 c^4, the quantum relations
E = hbar*omega and p = hbar*k, the positive dispersion branch
omega(k) = sqrt(c^2 k^2 + (m0 c^2 / hbar)^2), and the phase / group /
particle velocities it implies.  All functions are pure and take an
explicit constants triple; natural units are just hbar = c = m0 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system: action quantum, light speed, rest mass (m0 = 0 allowed)."""

    hbar: float = 1.0
    c: float = 1.0
    m0: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0):
            raise DomainError("hbar must be positive")
        if not (self.c > 0):
            raise DomainError("c must be positive")
        if not (self.m0 >= 0):
            raise DomainError("m0 must be non-negative")

    @classmethod
    def natural(cls, m0: float = 1.0) -> "PhysicalConstants":
        return cls(hbar=1.0, c=1.0, m0=m0)

    @property
    def rest_energy(self) -> float:
        return self.m0 * self.c**2

    @property
    def rest_frequency(self) -> float:
        """m0 c^2 / hbar, the zero-momentum angular frequency."""
        return self.m0 * self.c**2 / self.hbar


def _vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise DomainError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


def energy_from_momentum(p, consts: PhysicalConstants) -> float:
    """Positive root of E^2 = |p|^2 c^2 + m0^2 c^4."""
    p = _vec3(p)
    return math.hypot(float(np.linalg.norm(p)) * consts.c, consts.rest_energy)


def planck_energy(omega: float, consts: PhysicalConstants) -> float:
    """E = hbar * omega."""
    return consts.hbar * omega


def de_broglie_momentum(k, consts: PhysicalConstants) -> np.ndarray:
    """p = hbar * k, componentwise."""
    return consts.hbar * _vec3(k)


def dispersion_omega(k: float, consts: PhysicalConstants) -> float:
    """Positive dispersion branch omega(k) = sqrt(c^2 k^2 + (m0 c^2/hbar)^2).

    For m0 = 0 this reduces exactly to omega = c*k.
    """
    if k < 0:
        raise DomainError("wavenumber magnitude must be >= 0")
    return math.hypot(consts.c * k, consts.rest_frequency)


def phase_velocity(k: float, consts: PhysicalConstants) -> float:
    """omega(k)/k; equals c for m0 = 0 and exceeds c for m0 > 0."""
    if k < 0:
        raise DomainError("wavenumber magnitude must be >= 0")
    if k == 0:
        if consts.m0 > 0:
            raise DomainError("phase velocity diverges at k = 0 for m0 > 0")
        return consts.c
    return dispersion_omega(k, consts) / k


def group_velocity(k, consts: PhysicalConstants) -> np.ndarray:
    """d omega / d k = c^2 k / omega(|k|); subluminal for m0 > 0."""
    k = _vec3(k)
    omega = dispersion_omega(float(np.linalg.norm(k)), consts)
    if omega == 0.0:
        return np.zeros(3)
    return consts.c**2 * k / omega


def particle_velocity(p, consts: PhysicalConstants) -> np.ndarray:
    """v = (p/m0) / sqrt(1 + |p|^2 / (m0 c)^2); requires m0 > 0."""
    p = _vec3(p)
    if consts.m0 <= 0:
        raise DomainError(
            "particle velocity needs m0 > 0; use group_velocity for massless"
        )
    ratio = np.linalg.norm(p) / (consts.m0 * consts.c)
    return p / (consts.m0 * math.hypot(1.0, ratio))


def momentum_from_velocity(v, consts: PhysicalConstants) -> np.ndarray:
    """p = m0 v / sqrt(1 - v^2/c^2); inverse of particle_velocity."""
    v = _vec3(v)
    if consts.m0 <= 0:
        raise DomainError("momentum from velocity needs m0 > 0")
    beta2 = float(np.dot(v, v)) / consts.c**2
    if beta2 >= 1.0:
        raise DomainError("|v| must be below c")
    return consts.m0 * v / math.sqrt(1.0 - beta2)


@dataclass(frozen=True)
class ParticleState:
    """Energy-momentum pair, optionally asserted to sit on the mass shell."""

    E: float
    p: np.ndarray
    on_shell: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", _vec3(self.p))
        object.__setattr__(self, "E", float(self.E))

    @classmethod
    def from_momentum(cls, p, consts: PhysicalConstants) -> "ParticleState":
        p = _vec3(p)
        return cls(E=energy_from_momentum(p, consts), p=p, on_shell=True)

    def shell_defect(self, consts: PhysicalConstants) -> float:
        """Relative defect of E^2 - |p|^2 c^2 - m0^2 c^4."""
        lhs = self.E**2
        rhs = float(np.dot(self.p, self.p)) * consts.c**2 + consts.rest_energy**2
        scale = max(abs(lhs), abs(rhs), 1e-300)
        return abs(lhs - rhs) / scale

    def check(self, consts: PhysicalConstants, tol: float = 1e-12) -> None:
        if self.on_shell:
            if self.E <= 0:
                raise DomainError("on-shell states use the positive-energy branch")
            if self.shell_defect(consts) > tol:
                raise DomainError(
                    f"state flagged on-shell violates the mass shell by "
                    f"{self.shell_defect(consts):.3e} relative"
                )


@dataclass(frozen=True)
class PlaneWave:
    """Monochromatic wave amplitude * exp(i (k . r - omega t))."""

    amplitude: complex
    k: np.ndarray
    omega: float

    def __post_init__(self):
        object.__setattr__(self, "k", _vec3(self.k))
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "omega", float(self.omega))

    @classmethod
    def on_shell(cls, amplitude, k, consts: PhysicalConstants) -> "PlaneWave":
        k = _vec3(k)
        omega = dispersion_omega(float(np.linalg.norm(k)), consts)
        return cls(amplitude=amplitude, k=k, omega=omega)

    def shell_defect(self, consts: PhysicalConstants) -> float:
        target = dispersion_omega(float(np.linalg.norm(self.k)), consts)
        return abs(self.omega - target) / max(abs(target), 1e-300)

    def __call__(self, r, t: float):
        r = np.asarray(r, dtype=float)
        phase = np.tensordot(r, self.k[: r.shape[-1]], axes=([-1], [0]))
        return self.amplitude * np.exp(1j * (phase - self.omega * t))
