"""
Spectral thermodynamics of a qutrit density matrix.

Conventions: k_B = 1, natural logarithms, and a traceless Hamiltonian
(energies sum to zero). Under a Gibbs form tau_j = exp(-eps_j / T_G) / Z the
energies follow from the spectrum alone,

    eps_j = -(T_G / 3) log(tau_j^2 / (tau_k tau_l)),

so every quantity here is a function of the eigenvalues only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from .observables import PSD_TOL, InvalidDensityError

__all__ = [
    "ThermoDomainError",
    "DegenerateSpectrumError",
    "Spectrum3",
    "ThermoReport",
    "DEGENERACY_TOL",
    "eigvalsh3",
    "hermitian3_eigenvalues",
    "entropy_of_spectrum",
    "von_neumann_entropy",
    "temperature_per_energy_gap",
    "spectrum_temperature_per_mean_energy",
    "temperature_per_mean_energy",
    "reconstruct_spectrum",
    "gibbs_spectrum",
    "thermo_identity_residual",
    "entropy_energy_slope",
    "thermo_report",
]

DEGENERACY_TOL = 1e-12


class ThermoDomainError(ValueError):
    """A thermodynamic quantity is undefined for the given spectrum."""


class DegenerateSpectrumError(ThermoDomainError):
    """Equal eigenvalues make a temperature infinite or undefined."""


class Spectrum3(NamedTuple):
    """Eigenvalues tau1 >= tau2 >= tau3 of a qutrit density matrix."""

    tau1: float
    tau2: float
    tau3: float

    @property
    def degenerate(self) -> bool:
        return self.tau1 - self.tau3 < DEGENERACY_TOL


def _unit(v):
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    return v / np.where(n == 0.0, 1.0, n)


def _rayleigh(a, u, w):
    # u^dag A w over a stack
    return np.einsum("...i,...ij,...j->...", u.conj(), a, w)


def eigvalsh3(a) -> NDArray[np.float64]:
    """
    Eigenvalues of 3x3 Hermitian matrices in closed form, descending.

    Works on any stack of shape (..., 3, 3). Writes A = q I + p M with
    Tr M = 0 and Tr M^2 = 6, so the eigenvalues of M are 2 cos(phi + 2 pi k / 3)
    with cos(3 phi) = det(M) / 2.

    The trigonometric roots lose about half the digits when two eigenvalues
    coincide, so only the isolated root is taken from them. Its eigenvector
    (a cross product of two rows of A - lambda I) deflates A to a 2x2
    Hermitian block that is solved exactly.
    """
    a = np.asarray(a, dtype=np.complex128)
    q = np.real(np.trace(a, axis1=-2, axis2=-1)) / 3.0
    b = a - q[..., None, None] * np.eye(3)
    p = np.sqrt(np.sum(np.abs(b) ** 2, axis=(-2, -1)) / 6.0)
    # below this the matrix is q * I to working precision and b / p can overflow
    flat = p < 1e-150
    safe_p = np.where(flat, 1.0, p)
    with np.errstate(all="ignore"):
        r = np.real(np.linalg.det(b / safe_p[..., None, None])) / 2.0
    r = np.clip(np.where(flat | ~np.isfinite(r), 1.0, r), -1.0, 1.0)
    phi = np.arccos(r) / 3.0
    hi = q + 2.0 * p * np.cos(phi)
    lo = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    isolated = np.where(r >= 0.0, hi, lo)

    m = a - isolated[..., None, None] * np.eye(3)
    crosses = np.stack(
        [np.cross(m[..., 0, :], m[..., 1, :]),
         np.cross(m[..., 0, :], m[..., 2, :]),
         np.cross(m[..., 1, :], m[..., 2, :])],
        axis=-2,
    )
    best = np.argmax(np.linalg.norm(crosses, axis=-1), axis=-1)
    v = np.take_along_axis(crosses, best[..., None, None], axis=-2)[..., 0, :]
    # A = isolated * I leaves v = 0; any unit vector is then an eigenvector
    v = np.where(np.linalg.norm(v, axis=-1, keepdims=True) == 0.0, np.eye(3)[0], v)
    v = _unit(v)

    e = np.eye(3)[np.argmin(np.abs(v), axis=-1)]
    u1 = _unit(np.cross(v, e).conj())
    u2 = _unit(np.cross(v, u1).conj())
    h11 = np.real(_rayleigh(a, u1, u1))
    h22 = np.real(_rayleigh(a, u2, u2))
    h12 = _rayleigh(a, u1, u2)
    mean = 0.5 * (h11 + h22)
    rad = np.hypot(0.5 * (h11 - h22), np.abs(h12))

    out = np.stack([np.real(_rayleigh(a, v, v)), mean + rad, mean - rad], axis=-1)
    return -np.sort(-out, axis=-1)


def _clamp(taus: NDArray[np.float64], psd_tol: float) -> NDArray[np.float64]:
    if np.any(taus < -psd_tol):
        raise InvalidDensityError(f"negative eigenvalue {taus.min():.3e}")
    return np.where(taus < 0.0, 0.0, taus)


def hermitian3_eigenvalues(rho, herm_tol: float = 1e-10, psd_tol: float = PSD_TOL) -> Spectrum3:
    """
    Descending eigenvalues of a coin density matrix.

    Values in [-psd_tol, 0) are treated as roundoff and set to zero.

    Raises
    ------
    InvalidDensityError
        If ``rho`` is not Hermitian, or an eigenvalue is below ``-psd_tol``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (3, 3):
        raise InvalidDensityError(f"expected a 3x3 matrix, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > herm_tol:
        raise InvalidDensityError("matrix is not Hermitian")
    return Spectrum3(*map(float, _clamp(eigvalsh3(rho), psd_tol)))


def _xlogx(x: NDArray[np.float64]) -> NDArray[np.float64]:
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0.0, x * np.log(np.where(x > 0.0, x, 1.0)), 0.0)


def entropy_of_spectrum(taus, base: float = np.e):
    """-sum tau log tau with 0 log 0 = 0. Vectorized over the last axis."""
    s = -np.sum(_xlogx(taus), axis=-1)
    if base != np.e:
        s = s / np.log(base)
    return s if np.ndim(s) else float(s)


def von_neumann_entropy(rho, base: float = np.e) -> float:
    """S = -Tr(rho log rho), in nats unless ``base`` is given."""
    return entropy_of_spectrum(hermitian3_eigenvalues(rho), base)


def temperature_per_energy_gap(tau_j: float, tau_jprime: float) -> float:
    """T_G / (eps_j' - eps_j) = 1 / log(tau_j / tau_j')."""
    if not (0.0 < tau_j <= 1.0 and 0.0 < tau_jprime <= 1.0):
        raise ThermoDomainError("populations must lie in (0, 1]")
    if abs(tau_j - tau_jprime) < DEGENERACY_TOL:
        raise DegenerateSpectrumError("equal populations: temperature per gap is infinite")
    return float(1.0 / (np.log(tau_j) - np.log(tau_jprime)))


def _mean_energy_bracket(taus):
    # sum_j tau_j log(tau_j^2 / (tau_k tau_l)) = sum_{j<k} (tau_j - tau_k) log(tau_j / tau_k);
    # every pair term is >= 0, so near-degenerate spectra do not cancel
    taus = np.asarray(taus, dtype=float)
    total = 0.0
    for j, k in ((0, 1), (0, 2), (1, 2)):
        d = taus[..., j] - taus[..., k]
        total = total + d * np.log1p(d / taus[..., k])
    return total


def spectrum_temperature_per_mean_energy(spec) -> float:
    """
    T_G / E from the three Gibbs populations (traceless Hamiltonian).

    The value is signed; with the traceless convention it is negative for any
    non-uniform spectrum.

    Raises
    ------
    DegenerateSpectrumError
        Uniform spectrum: E = 0 and the ratio is undefined.
    ThermoDomainError
        A zero population (infinite energy).
    """
    taus = np.asarray(spec, dtype=float)
    if taus.max() - taus.min() < DEGENERACY_TOL:
        raise DegenerateSpectrumError("fully degenerate spectrum has zero mean energy")
    if np.any(taus <= 0.0):
        raise ThermoDomainError("zero population: Gibbs energies diverge")
    return float(-3.0 / _mean_energy_bracket(taus))


def temperature_per_mean_energy(rho) -> float:
    return spectrum_temperature_per_mean_energy(hermitian3_eigenvalues(rho))


def _positive(spec) -> NDArray[np.float64]:
    taus = np.asarray(spec, dtype=float)
    if np.any(taus <= 0.0):
        raise ThermoDomainError("zero population: Gibbs energies diverge")
    return taus


def reconstruct_spectrum(spec, T_G: float) -> NDArray[np.float64]:
    """Traceless energies eps_j = -(T_G/3) log(tau_j^2 / (tau_k tau_l))."""
    if T_G == 0.0:
        raise ThermoDomainError("T_G must be nonzero")
    logs = np.log(_positive(spec))
    return -(T_G / 3.0) * (3.0 * logs - logs.sum())


def gibbs_spectrum(energies, T_G: float) -> NDArray[np.float64]:
    """Populations exp(-eps_j / T_G) / Z."""
    x = -np.asarray(energies, dtype=float) / T_G
    w = np.exp(x - x.max())
    return w / w.sum()


def thermo_identity_residual(spec, T_G: float) -> float:
    """|S - E/T_G - log Z| for the Gibbs state with populations ``spec``."""
    taus = _positive(spec)
    eps = reconstruct_spectrum(taus, T_G)
    energy = float(np.dot(eps, taus))
    x = -eps / T_G
    log_z = x.max() + np.log(np.sum(np.exp(x - x.max())))
    return abs(entropy_of_spectrum(taus) - energy / T_G - log_z)


def entropy_energy_slope(spec, T_G: float, rel_step: float = 1e-5) -> float:
    """
    Central-difference dS/dE along the Gibbs family at fixed energies.

    The energies are reconstructed from ``spec`` at ``T_G``; beta is then
    varied by a relative ``rel_step`` around 1/T_G. For a Gibbs family this
    should return 1/T_G.
    """
    eps = reconstruct_spectrum(spec, T_G)
    beta = 1.0 / T_G
    pts = []
    for b in (beta * (1.0 - rel_step), beta * (1.0 + rel_step)):
        taus = gibbs_spectrum(eps, 1.0 / b)
        pts.append((entropy_of_spectrum(taus), float(np.dot(eps, taus))))
    (s0, e0), (s1, e1) = pts
    if e1 == e0:
        raise DegenerateSpectrumError("mean energy does not vary along the Gibbs family")
    return (s1 - s0) / (e1 - e0)


@dataclass(frozen=True)
class ThermoReport:
    spectrum: Spectrum3
    entropy: float
    temp_per_mean_energy: float | None
    degenerate: bool


def thermo_report(rho) -> ThermoReport:
    """Spectrum, entropy and signed T_G/E; the temperature is None when undefined."""
    spec = hermitian3_eigenvalues(rho)
    try:
        temp = spectrum_temperature_per_mean_energy(spec)
    except ThermoDomainError:
        temp = None
    return ThermoReport(spec, entropy_of_spectrum(spec), temp, spec.degenerate)
