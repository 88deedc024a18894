"""Nonrelativistic limit as a measured convergence study.

Factoring the rest-energy phase exp(-i m0 c^2 t / hbar) out of a
relativistic plane wave leaves a residual rotation at

    omega(k) - m0 c^2/hbar  =  mu (sqrt(1 + x^2) - 1),   x = hbar k / (m0 c),

which approaches the Schrodinger rate hbar k^2 / (2 m0) with an O(c^-2)
gap (leading term hbar^3 k^4 / (8 m0^3 c^2)).  The study quantifies that
limit two ways per speed value: a closed-form frequency gap, and a field
gap between factored leapfrog evolution of the relativistic equation and
Crank-Nicolson evolution of the Schrodinger equation from the same
initial plane wave over the same physical time.  Both gap sequences are
fitted to  gap ~ C * c^(-q).

Temporal discretization is controlled by holding omega * dt constant
across the sweep, with the constant chosen from the leapfrog phase-error
budget so the scheme error stays a small fraction of the physical gap at
every c (leapfrog advances phases at omega*(1 + (omega dt)^2/24 + ...),
which would otherwise swamp the O(c^-2) signal at large c).  The initial
rate uses the dispersion frequency of the *stencil* wavenumber
(2/h) sin(kh/2): an analytic-frequency rate would seed the backward
branch of the leapfrog recurrence with an O(h^2/c^2) amplitude, the same
order as the signal under measurement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .convergence import OrderFit, fit_order
from .errors import DomainError, InsufficientDataError
from .fields import Grid, ScalarField, plane_wave_field
from .kinematics import PhysicalConstants, dispersion_omega
from .reporting import write_csv, write_json
from .solvers import (
    CRANK_NICOLSON,
    LEAPFROG,
    SolverConfig,
    leapfrog_stability_limit,
    solve_relativistic,
    solve_schrodinger,
)


def factor_rest_energy(psi: ScalarField, consts: PhysicalConstants,
                       t: float) -> ScalarField:
    """Remove the rest-energy phase: psi0 = psi * exp(+i m0 c^2 t / hbar)."""
    return psi.with_values(
        psi.values * np.exp(1j * consts.rest_frequency * t)
    )


def restore_rest_energy(psi0: ScalarField, consts: PhysicalConstants,
                        t: float) -> ScalarField:
    """Inverse of factor_rest_energy: multiply exp(-i m0 c^2 t / hbar) back."""
    return psi0.with_values(
        psi0.values * np.exp(-1j * consts.rest_frequency * t)
    )


@dataclass(frozen=True)
class LimitStudyConfig:
    """Sweep setup; defaults reproduce the desk-scale verification run."""

    k: float = 1.0
    c_values: tuple[float, ...] = (4.0, 8.0, 16.0, 32.0, 64.0, 128.0)
    m0: float = 1.0
    hbar: float = 1.0
    evolution_time: float = 5e-4
    grid_points: int = 64
    mode: int = 1  # the grid length is set to mode * 2*pi / k
    temporal_safety: float = 0.05  # scheme-error budget as a gap fraction
    schrodinger_steps: int = 256

    def __post_init__(self):
        if len(self.c_values) < 4:
            raise InsufficientDataError("need at least 4 c values for a fit")
        if any(b <= a for a, b in zip(self.c_values, self.c_values[1:])):
            raise DomainError("c values must be strictly ascending")
        if any(c <= 0 for c in self.c_values):
            raise DomainError("c values must be positive")
        if self.k < 0:
            raise DomainError("k must be >= 0")
        if self.m0 <= 0 or self.hbar <= 0:
            raise DomainError("m0 and hbar must be positive")
        if self.evolution_time <= 0:
            raise DomainError("evolution time must be positive")
        x_max = self.hbar * self.k / (self.m0 * min(self.c_values))
        if x_max >= 1.0:
            raise DomainError(
                f"expansion parameter hbar k/(m0 c) = {x_max:.3g} must stay "
                "below 1 at the smallest c"
            )


@dataclass(frozen=True)
class LimitRow:
    c: float
    omega_minus_rest: float
    omega_schrodinger: float
    frequency_gap: float
    field_gap: float
    x_param: float


@dataclass
class LimitStudyReport:
    rows: list[LimitRow]
    frequency_fit: OrderFit | None
    field_fit: OrderFit | None
    warnings: list[str] = field(default_factory=list)

    def to_csv(self, path) -> None:
        write_csv(
            path,
            ["c", "freq_gap", "field_gap", "x_param"],
            (
                (r.c, r.frequency_gap, r.field_gap, r.x_param)
                for r in self.rows
            ),
        )

    def summary(self) -> dict:
        def fit_obj(fit: OrderFit | None):
            if fit is None:
                return None
            return {"order": fit.order, "log10_residual": fit.log10_residual}

        return {
            "rows": [
                {
                    "c": r.c,
                    "omega_minus_rest": r.omega_minus_rest,
                    "omega_schrodinger": r.omega_schrodinger,
                    "frequency_gap": r.frequency_gap,
                    "field_gap": r.field_gap,
                    "x_param": r.x_param,
                }
                for r in self.rows
            ],
            "frequency_fit": fit_obj(self.frequency_fit),
            "field_fit": fit_obj(self.field_fit),
            "warnings": list(self.warnings),
        }

    def to_json(self, path) -> None:
        write_json(path, self.summary())


def _omega_minus_rest(consts: PhysicalConstants, k: float) -> float:
    """omega(k) - m0 c^2/hbar = mu x^2 / (1 + sqrt(1 + x^2)), cancellation-free."""
    mu = consts.rest_frequency
    x = consts.hbar * k / (consts.m0 * consts.c)
    return mu * x * x / (1.0 + math.hypot(1.0, x))


def run_limit_study(cfg: LimitStudyConfig) -> LimitStudyReport:
    """Measure frequency and field gaps across the c sweep and fit their order."""
    warnings: list[str] = []
    span = max(cfg.c_values) / min(cfg.c_values)
    if span < 10.0:
        warnings.append(
            f"c values span only a factor {span:.3g}; fits over a wider sweep "
            "are more trustworthy"
        )

    schrodinger_rate = cfg.hbar * cfg.k**2 / (2.0 * cfg.m0)
    consts_per_c = [
        PhysicalConstants(hbar=cfg.hbar, c=c, m0=cfg.m0) for c in cfg.c_values
    ]
    freq_gaps = [
        abs(_omega_minus_rest(cc, cfg.k) - schrodinger_rate)
        for cc in consts_per_c
    ]

    if cfg.k == 0.0:
        # Rest mode: both evolutions are the same constant phase; the gaps
        # vanish identically and there is nothing to evolve or fit.
        rows = [
            LimitRow(c=c, omega_minus_rest=0.0,
                     omega_schrodinger=0.0, frequency_gap=0.0,
                     field_gap=0.0, x_param=0.0)
            for c in cfg.c_values
        ]
        warnings.append("k = 0: gaps are identically zero, no order fitted")
        return LimitStudyReport(rows, None, None, warnings)

    grid = Grid.line(cfg.grid_points, cfg.mode * 2.0 * math.pi / cfg.k)
    k_vec = (cfg.k, 0.0, 0.0)
    tee = cfg.evolution_time

    # One step-size budget for the whole sweep: omega*dt = theta with
    # theta^2 <= 24 * safety * min_c gap(c)/mu(c) keeps the leapfrog phase
    # error at most `safety` of the physical gap everywhere.
    theta = min(
        math.sqrt(
            24.0 * cfg.temporal_safety * gap / cc.rest_frequency
        )
        for gap, cc in zip(freq_gaps, consts_per_c)
    )
    theta = min(theta, 0.5)

    # The Schrodinger endpoint does not depend on c: evolve it once.
    initial = plane_wave_field(grid, cfg.k, omega=0.0, t=0.0)
    consts_nr = PhysicalConstants(hbar=cfg.hbar, c=1.0, m0=cfg.m0)
    schr_cfg = SolverConfig(
        dt=tee / cfg.schrodinger_steps,
        steps=cfg.schrodinger_steps,
        scheme=CRANK_NICOLSON,
    )
    psi_schr = solve_schrodinger(initial, consts_nr, schr_cfg).final

    h = grid.spacing
    k_stencil = (2.0 / h) * math.sin(0.5 * cfg.k * h)

    rows: list[LimitRow] = []
    field_gaps: list[float] = []
    for cc, gap in zip(consts_per_c, freq_gaps):
        omega = dispersion_omega(cfg.k, cc)
        omega_grid = dispersion_omega(k_stencil, cc)
        dt = theta / omega
        cfl = leapfrog_stability_limit(grid, cc.c, cc.rest_frequency)
        dt = min(dt, 0.5 * cfl)
        steps = max(1, math.ceil(tee / dt))
        dt = tee / steps
        run_cfg = SolverConfig(dt=dt, steps=steps, scheme=LEAPFROG)
        rate = initial.with_values(-1j * omega_grid * initial.values)
        rel = solve_relativistic(initial, rate, cc, run_cfg)
        psi0 = factor_rest_energy(rel.final, cc, tee)
        field_gap = float(np.max(np.abs(psi0.values - psi_schr.values)))
        field_gaps.append(field_gap)
        rows.append(
            LimitRow(
                c=cc.c,
                omega_minus_rest=_omega_minus_rest(cc, cfg.k),
                omega_schrodinger=schrodinger_rate,
                frequency_gap=gap,
                field_gap=field_gap,
                x_param=cfg.hbar * cfg.k / (cfg.m0 * cc.c),
            )
        )

    for name, gaps in (("frequency", freq_gaps), ("field", field_gaps)):
        if any(b >= a for a, b in zip(gaps, gaps[1:])):
            warnings.append(f"{name} gap is not strictly decreasing in c")

    def safe_fit(gaps) -> OrderFit | None:
        if any(g <= 0 for g in gaps):
            warnings.append("zero gap encountered; order not fitted")
            return None
        fit = fit_order(cfg.c_values, gaps)
        # gap ~ c^-q, so the decay order is minus the log-log slope
        return OrderFit(order=-fit.order, log10_residual=fit.log10_residual)

    return LimitStudyReport(
        rows=rows,
        frequency_fit=safe_fit(freq_gaps),
        field_fit=safe_fit(field_gaps),
        warnings=warnings,
    )
