"""Finite-difference initial-value solvers and grid identity checks.

Three linear equations are integrated on periodic cubic grids (1D or 3D):

* the massless wave equation       psi_tt = c^2 lap(psi)          (leapfrog)
* the relativistic free equation   psi_tt = c^2 lap(psi) - mu^2 psi, with
  mu = m0 c^2 / hbar                                              (leapfrog)
* the free Schrodinger equation    i hbar psi_t = -(hbar^2/2 m0) lap(psi)
                                                          (Crank-Nicolson)

Space is always the second-order central Laplacian.  Leapfrog starts from
a Taylor step and reports the exactly conserved discrete energy
E = 1/2 ||(u^{n+1}-u^n)/dt||^2 - 1/2 Re<u^{n+1}, L u^n>; Crank-Nicolson is
solved exactly per step by diagonalizing the periodic stencil with FFTs,
so the discrete L2 norm is preserved to rounding.

The module also evaluates pointwise residuals of the nonlinear
Hamilton-Jacobi equations on action fields (two time levels, or closed
forms), and the eigenvalue / log-curvature identities that single out
plane waves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InsufficientDataError,
    NumericalError,
    StabilityError,
    ZeroFieldError,
)
from .fields import Grid, ScalarField
from .kinematics import PhysicalConstants
from .reporting import write_csv

_ZERO_FIELD_CUTOFF = 1e-12

LEAPFROG = "leapfrog"
CRANK_NICOLSON = "crank_nicolson"


@dataclass(frozen=True)
class SolverConfig:
    dt: float
    steps: int
    scheme: str = LEAPFROG
    stability_check: bool = True

    def __post_init__(self):
        if not (self.dt > 0):
            raise DomainError("dt must be positive")
        if self.steps < 1:
            raise DomainError("steps must be >= 1")
        if self.scheme not in (LEAPFROG, CRANK_NICOLSON):
            raise DomainError(f"unknown scheme {self.scheme!r}")


@dataclass
class Diagnostics:
    """Per-step series: step index, physical time, L2 norm, discrete energy."""

    step: np.ndarray
    time: np.ndarray
    norm: np.ndarray
    energy: np.ndarray

    def to_csv(self, path) -> None:
        rows = zip(
            (int(s) for s in self.step), self.time, self.norm, self.energy
        )
        write_csv(path, ["step", "time", "norm", "energy"], rows)


@dataclass
class SolveReport:
    final: ScalarField
    diagnostics: Diagnostics
    measured_order: float | None = None


def _require_solver_grid(grid: Grid) -> None:
    if grid.ndim not in (1, 3):
        raise DomainError("solvers support 1D and 3D grids")
    if not grid.is_cubic():
        raise DomainError("solvers require cubic grids")
    if min(grid.shape) < 8:
        raise DomainError("solvers require at least 8 points per axis")


def laplacian(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Second-order periodic central Laplacian."""
    out = np.zeros_like(values)
    for ax, h in enumerate(grid.spacings):
        out += (
            np.roll(values, 1, axis=ax)
            + np.roll(values, -1, axis=ax)
            - 2 * values
        ) / h**2
    return out


def leapfrog_stability_limit(grid: Grid, c: float, mu: float = 0.0) -> float:
    """Largest stable dt: 2 / sqrt(4 c^2 sum_i h_i^-2 + mu^2).

    In 1D this is (h/c) / sqrt(1 + (mu h / 2c)^2), i.e. the plain CFL bound
    dt <= h/c for mu = 0.
    """
    s = sum(1.0 / h**2 for h in grid.spacings)
    return 2.0 / math.sqrt(4.0 * c**2 * s + mu**2)


def _leapfrog(initial: ScalarField, initial_rate: ScalarField,
              c: float, mu: float, cfg: SolverConfig) -> SolveReport:
    grid = initial.grid
    _require_solver_grid(grid)
    if initial_rate.grid != grid:
        raise DomainError("initial and rate fields must share a grid")
    if cfg.scheme != LEAPFROG:
        raise DomainError("second-order-in-time equations use the leapfrog scheme")
    if cfg.stability_check:
        limit = leapfrog_stability_limit(grid, c, mu)
        if cfg.dt > limit * (1 + 1e-12):
            raise StabilityError(
                f"dt = {cfg.dt:.6g} exceeds the stability limit {limit:.6g}"
            )

    dt = cfg.dt
    c2 = c * c
    mu2 = mu * mu
    w = grid.cell_volume

    # mu == 0 takes the mass-free branch so massless relativistic runs are
    # bit-identical to the wave solver.
    if mu == 0.0:
        apply_op = lambda u: c2 * laplacian(u, grid)
    else:
        apply_op = lambda u: c2 * laplacian(u, grid) - mu2 * u

    def norm(u):
        return math.sqrt(w * float(np.sum(np.abs(u) ** 2)))

    def energy(u_old, u_new, op_old):
        kin = 0.5 * w * float(np.sum(np.abs((u_new - u_old) / dt) ** 2))
        pot = -0.5 * w * float(np.real(np.sum(np.conj(u_new) * op_old)))
        return kin + pot

    steps = np.arange(1, cfg.steps + 1)
    times = initial.time_stamp + dt * steps
    norms = np.empty(cfg.steps)
    energies = np.empty(cfg.steps)

    u_prev = initial.values.astype(np.complex128, copy=True)
    op_prev = apply_op(u_prev)
    u_curr = u_prev + dt * initial_rate.values + 0.5 * dt * dt * op_prev
    norms[0] = norm(u_curr)
    energies[0] = energy(u_prev, u_curr, op_prev)

    for i in range(1, cfg.steps):
        op_curr = apply_op(u_curr)
        u_next = 2 * u_curr - u_prev + dt * dt * op_curr
        norms[i] = norm(u_next)
        energies[i] = energy(u_curr, u_next, op_curr)
        u_prev, u_curr = u_curr, u_next

    final = ScalarField(grid, u_curr, float(times[-1]))
    return SolveReport(
        final=final,
        diagnostics=Diagnostics(steps, times, norms, energies),
    )


def solve_wave(initial: ScalarField, initial_rate: ScalarField,
               consts: PhysicalConstants, cfg: SolverConfig) -> SolveReport:
    """Advance psi_tt = c^2 lap(psi) by leapfrog with a Taylor first step."""
    return _leapfrog(initial, initial_rate, consts.c, 0.0, cfg)


def solve_relativistic(initial: ScalarField, initial_rate: ScalarField,
                       consts: PhysicalConstants, cfg: SolverConfig
                       ) -> SolveReport:
    """Advance psi_tt = c^2 lap(psi) - (m0 c^2/hbar)^2 psi by leapfrog.

    Plane waves rotate at the dispersion frequency
    omega = sqrt(c^2 k^2 + (m0 c^2/hbar)^2) up to O(dt^2, h^2); with
    m0 = 0 the trajectory is bit-identical to solve_wave.
    """
    return _leapfrog(initial, initial_rate, consts.c, consts.rest_frequency, cfg)


def _stencil_eigenvalues(grid: Grid) -> np.ndarray:
    """Eigenvalues of the periodic central Laplacian, one per FFT mode."""
    lam = np.zeros(grid.shape)
    for ax, (n, h) in enumerate(zip(grid.shape, grid.spacings)):
        modes = np.arange(n)
        lam_ax = -(4.0 / h**2) * np.sin(np.pi * modes / n) ** 2
        shape = [1] * grid.ndim
        shape[ax] = n
        lam = lam + lam_ax.reshape(shape)
    return lam


def solve_schrodinger(initial: ScalarField, consts: PhysicalConstants,
                      cfg: SolverConfig) -> SolveReport:
    """Advance i hbar psi_t = -(hbar^2 / 2 m0) lap(psi) by Crank-Nicolson.

    The implicit step (I - dt/2 G) psi^{n+1} = (I + dt/2 G) psi^n with
    G = (i hbar / 2 m0) lap_h is a circulant system and is solved exactly
    by FFT diagonalization; each mode's amplification factor has unit
    modulus, so the L2 norm drifts only at rounding level.  The reported
    energy column is the discrete kinetic energy, conserved by the step.
    """
    grid = initial.grid
    _require_solver_grid(grid)
    if cfg.scheme != CRANK_NICOLSON:
        raise DomainError("the Schrodinger solver uses the Crank-Nicolson scheme")
    if consts.m0 <= 0:
        raise DomainError("the free Schrodinger equation needs m0 > 0")

    dt = cfg.dt
    lam = _stencil_eigenvalues(grid)
    g = 0.5j * consts.hbar / consts.m0 * lam
    amp = (1.0 + 0.5 * dt * g) / (1.0 - 0.5 * dt * g)
    w = grid.cell_volume
    npts = grid.npoints
    kin_weight = -0.5 * consts.hbar**2 / consts.m0 * lam  # >= 0 per mode

    steps = np.arange(1, cfg.steps + 1)
    times = initial.time_stamp + dt * steps
    norms = np.empty(cfg.steps)
    energies = np.empty(cfg.steps)

    u = initial.values.astype(np.complex128, copy=True)
    if not np.all(np.isfinite(u)):
        raise NumericalError("initial field contains non-finite values")
    for i in range(cfg.steps):
        spectrum = amp * np.fft.fftn(u)
        u = np.fft.ifftn(spectrum)
        if not np.all(np.isfinite(u)):
            raise NumericalError(
                f"implicit step produced non-finite values at step {i + 1}",
                diagnostics=Diagnostics(
                    steps[:i], times[:i], norms[:i], energies[:i]
                ),
            )
        norms[i] = math.sqrt(w * float(np.sum(np.abs(u) ** 2)))
        energies[i] = w / npts * float(
            np.sum(kin_weight * np.abs(spectrum) ** 2)
        )

    final = ScalarField(grid, u, float(times[-1]))
    return SolveReport(
        final=final,
        diagnostics=Diagnostics(steps, times, norms, energies),
    )


# ---------------------------------------------------------------------------
# Closed-form action fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearAction:
    """Separated particle-like action S = -E t + p . r."""

    E: float
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (3,):
            raise DomainError("p must be a 3-vector")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "E", float(self.E))


@dataclass(frozen=True)
class WaveAction:
    """Wave-like action S = amplitude * exp(i (k . r - omega t))."""

    amplitude: complex
    k: np.ndarray
    omega: float

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if k.shape != (3,):
            raise DomainError("k must be a 3-vector")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "omega", float(self.omega))


def _pair_time_levels(pair) -> tuple[ScalarField, ScalarField, float]:
    try:
        s0, s1 = pair
    except (TypeError, ValueError):
        raise InsufficientDataError(
            "the time derivative needs two adjacent time levels (S0, S1)"
        ) from None
    if not isinstance(s0, ScalarField) or not isinstance(s1, ScalarField):
        raise InsufficientDataError("time levels must be ScalarFields")
    if s0.grid != s1.grid:
        raise DomainError("time levels must share a grid")
    dt = s1.time_stamp - s0.time_stamp
    if dt <= 0:
        raise InsufficientDataError("time levels must be ordered and distinct")
    return s0, s1, dt


def _central_gradient(values: np.ndarray, grid: Grid) -> list[np.ndarray]:
    return [
        (np.roll(values, -1, axis=ax) - np.roll(values, 1, axis=ax)) / (2 * h)
        for ax, h in enumerate(grid.spacings)
    ]


def hje_residual(S, consts: PhysicalConstants, massless: bool = False, *,
                 grid: Grid | None = None, t: float = 0.0,
                 potential_values=None) -> ScalarField:
    """Pointwise residual of (dS/dt)^2 - c^2 (grad S)^2 - m0^2 c^4 (= 0 if massless).

    ``S`` is either a pair of ScalarFields at two adjacent time levels
    (residual evaluated at the midpoint time: centered dS/dt, averaged
    gradients) or a closed form (LinearAction / WaveAction) evaluated
    exactly on ``grid`` at time ``t``.  ``potential_values`` adds a scalar
    potential inside the squared time derivative (see mechanics).
    """
    mass_term = 0.0 if massless else consts.rest_energy**2
    c2 = consts.c**2

    if isinstance(S, LinearAction):
        if grid is None:
            raise InsufficientDataError("closed-form actions need a target grid")
        dsdt = np.full(grid.shape, -S.E, dtype=np.complex128)
        grads = [
            np.full(grid.shape, S.p[ax], dtype=np.complex128)
            for ax in range(grid.ndim)
        ]
        out_t = t
    elif isinstance(S, WaveAction):
        if grid is None:
            raise InsufficientDataError("closed-form actions need a target grid")
        coords = grid.meshgrid()
        phase = -S.omega * t
        for ax, x in enumerate(coords):
            phase = phase + S.k[ax] * x
        values = S.amplitude * np.exp(1j * phase)
        dsdt = -1j * S.omega * values
        grads = [1j * S.k[ax] * values for ax in range(grid.ndim)]
        out_t = t
    else:
        s0, s1, dt = _pair_time_levels(S)
        grid = s0.grid
        dsdt = (s1.values - s0.values) / dt
        g0 = _central_gradient(s0.values, grid)
        g1 = _central_gradient(s1.values, grid)
        grads = [0.5 * (a + b) for a, b in zip(g0, g1)]
        out_t = 0.5 * (s0.time_stamp + s1.time_stamp)

    if potential_values is not None:
        dsdt = dsdt + potential_values
    residual = dsdt**2
    for g in grads:
        residual = residual - c2 * g**2
    residual = residual - mass_term
    return ScalarField(grid, residual, out_t)


# ---------------------------------------------------------------------------
# Plane-wave identity checks
# ---------------------------------------------------------------------------

def _check_nonzero(f: ScalarField) -> float:
    peak = f.max_abs()
    if peak == 0.0 or float(np.min(np.abs(f.values))) < _ZERO_FIELD_CUTOFF * peak:
        raise ZeroFieldError("field magnitude below 1e-12 of its maximum")
    return peak


def eigen_checks(psi_pair, p_expected, E_expected,
                 consts: PhysicalConstants) -> tuple[float, float]:
    """Defects of the momentum and energy eigenvalue relations.

    Returns max-norms (normalized by max|psi|) of
    (hbar/i) grad psi - p psi on the first level and of
    i hbar dpsi/dt - E psi at the midpoint of the two levels.  Both are
    O(h^2) / O(dt^2) for on-shell plane waves.
    """
    s0, s1, dt = _pair_time_levels(psi_pair)
    peak = _check_nonzero(s0)
    p = np.atleast_1d(np.asarray(p_expected, dtype=float))
    if p.size < s0.grid.ndim:
        raise DomainError("p_expected needs one component per grid axis")

    grads = _central_gradient(s0.values, s0.grid)
    momentum_defect = 0.0
    for ax, g in enumerate(grads):
        defect = (consts.hbar / 1j) * g - p[ax] * s0.values
        momentum_defect = max(momentum_defect, float(np.max(np.abs(defect))))

    dpsi_dt = (s1.values - s0.values) / dt
    psi_mid = 0.5 * (s0.values + s1.values)
    energy_defect = float(
        np.max(np.abs(1j * consts.hbar * dpsi_dt - E_expected * psi_mid))
    )
    return momentum_defect / peak, energy_defect / peak


def log_curvature_check(psi_triple) -> tuple[float, float]:
    """Max-norm estimates of d2 ln(psi)/dx^2 and d2 ln(psi)/dt^2.

    Second log derivatives are formed from the quotient identity
    (psi psi'' - psi'^2)/psi^2 with central differences: spatially on the
    middle level (interior samples only, so non-periodic diagnostics are
    not polluted by the wrap), temporally across the three levels.  Both
    vanish to O(h^2)/O(dt^2) exactly when psi is a plane wave.
    """
    try:
        s0, s1, s2 = psi_triple
    except (TypeError, ValueError):
        raise InsufficientDataError(
            "log curvature needs three equally spaced time levels"
        ) from None
    if s0.grid != s1.grid or s1.grid != s2.grid:
        raise DomainError("time levels must share a grid")
    dt1 = s1.time_stamp - s0.time_stamp
    dt2 = s2.time_stamp - s1.time_stamp
    if dt1 <= 0 or dt2 <= 0 or abs(dt2 - dt1) > 1e-9 * dt1:
        raise InsufficientDataError("time levels must be uniformly spaced")
    for s in (s0, s1, s2):
        _check_nonzero(s)

    grid = s1.grid
    v = s1.values
    space_defect = 0.0
    for ax, h in enumerate(grid.spacings):
        d1 = (np.roll(v, -1, axis=ax) - np.roll(v, 1, axis=ax)) / (2 * h)
        d2 = (
            np.roll(v, -1, axis=ax) - 2 * v + np.roll(v, 1, axis=ax)
        ) / h**2
        curv = (v * d2 - d1**2) / v**2
        interior = [slice(None)] * grid.ndim
        interior[ax] = slice(1, grid.shape[ax] - 1)
        space_defect = max(
            space_defect, float(np.max(np.abs(curv[tuple(interior)])))
        )

    dt = dt1
    d1t = (s2.values - s0.values) / (2 * dt)
    d2t = (s2.values - 2 * s1.values + s0.values) / dt**2
    time_curv = (s1.values * d2t - d1t**2) / s1.values**2
    time_defect = float(np.max(np.abs(time_curv)))
    return space_defect, time_defect
