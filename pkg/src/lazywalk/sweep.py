"""
Grids of coin observables over the two one-parameter-pair families of
initial conditions:

    family 1: (cos theta, 0, e^{i phi} sin theta)
    family 2: (cos theta, 1, e^{i phi} sin theta) / sqrt(2)
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .asymptotics import asymptotic_kernel, localization_probability
from .observables import (
    PSD_TOL,
    InvalidDensityError,
    bloch_vector,
    coin_density_kernel,
    density_from_kernel,
)
from .thermo import (
    ThermoDomainError,
    eigvalsh3,
    entropy_of_spectrum,
    spectrum_temperature_per_mean_energy,
)
from .walk import ChiralityState

FAMILIES = {1: ChiralityState.family1, 2: ChiralityState.family2}
OBSERVABLES = ("bloch_norm", "entropy_t", "entropy_inf", "abs_temperature", "localization")


@dataclass(frozen=True)
class SweepConfig:
    """
    Grid specification. The theta grid includes both ends of ``theta_range``;
    phi is periodic, so the upper end of ``phi_range`` is excluded.
    """

    family: int = 1
    observable: str = "bloch_norm"
    theta_steps: int = 101
    phi_steps: int = 101
    theta_range: tuple[float, float] = (0.0, np.pi)
    phi_range: tuple[float, float] = (0.0, 2.0 * np.pi)
    t: int = 100

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be 1 or 2, got {self.family}")
        if self.observable not in OBSERVABLES:
            raise ValueError(f"unknown observable {self.observable!r}; choose from {OBSERVABLES}")
        if self.theta_steps < 2 or self.phi_steps < 2:
            raise ValueError("grid sizes must be >= 2")
        for name in ("theta_range", "phi_range"):
            lo, hi = getattr(self, name)
            if not hi > lo:
                raise ValueError(f"{name} must be a nonempty interval, got {(lo, hi)}")
        if self.t < 0:
            raise ValueError("t must be >= 0")

    def thetas(self) -> np.ndarray:
        return np.linspace(*self.theta_range, self.theta_steps)

    def phis(self) -> np.ndarray:
        return np.linspace(*self.phi_range, self.phi_steps, endpoint=False)


def _row_values(cfg: SweepConfig, theta: float, phis: np.ndarray, kernel) -> list[float | None]:
    chis = [FAMILIES[cfg.family](theta, phi) for phi in phis]
    if cfg.observable == "localization":
        return [localization_probability(chi) for chi in chis]

    rhos = density_from_kernel(kernel, np.stack([c.vector for c in chis]))
    if cfg.observable == "bloch_norm":
        return [float(np.linalg.norm(bloch_vector(r))) for r in rhos]

    taus = eigvalsh3(rhos)
    if np.any(taus < -PSD_TOL):
        raise InvalidDensityError(f"negative eigenvalue {taus.min():.3e} in sweep")
    taus = np.where(taus < 0.0, 0.0, taus)
    if cfg.observable in ("entropy_t", "entropy_inf"):
        return [float(s) for s in entropy_of_spectrum(taus)]

    out: list[float | None] = []
    for spec in taus:
        try:
            out.append(abs(spectrum_temperature_per_mean_energy(spec)))
        except ThermoDomainError:
            out.append(None)
    return out


def _kernel_for(cfg: SweepConfig):
    if cfg.observable == "entropy_t":
        return coin_density_kernel(cfg.t)
    return asymptotic_kernel()


def _row_task(args):
    return _row_values(*args)


def sweep_values(cfg: SweepConfig, workers: int = 1) -> list[tuple[float, float, float | None]]:
    """
    Evaluate the observable on the (theta, phi) grid.

    Rows come back ordered by (theta index, phi index) whatever ``workers`` is.
    Cells where the value is undefined (degenerate temperature) hold None.
    """
    kernel = _kernel_for(cfg)
    thetas, phis = cfg.thetas(), cfg.phis()
    tasks = [(cfg, float(th), phis, kernel) for th in thetas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_row_task(t) for t in tasks]
    return [
        (float(th), float(ph), v)
        for th, vals in zip(thetas, rows)
        for ph, v in zip(phis, vals)
    ]
