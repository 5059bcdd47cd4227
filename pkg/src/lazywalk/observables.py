"""
Coin-space observables of a walk state.

Everything here is computed from the chirality reduced density matrix

    rho_c = [[P_L, Q1,  Q2 ],
             [Q1*, P_S, Q3 ],
             [Q2*, Q3*, P_R]]

obtained by tracing the joint pure state over position.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from .walk import GROVER, ChiralityState, WalkState, evolve, make_initial_state

__all__ = [
    "InvalidDensityError",
    "Gcp",
    "Interference",
    "GELL_MANN",
    "position_distribution",
    "origin_probability",
    "gcp",
    "interference_terms",
    "gcp_step",
    "coin_density",
    "density_from_parts",
    "check_density",
    "purity",
    "bloch_vector",
    "bloch_norm",
    "density_from_bloch",
    "coin_density_kernel",
    "density_from_kernel",
]

PSD_TOL = 1e-10


class InvalidDensityError(ValueError):
    """Matrix is not a valid density matrix (negative eigenvalue, bad trace, ...)."""


class Gcp(NamedTuple):
    """Global chirality probabilities."""

    P_L: float
    P_S: float
    P_R: float


class Interference(NamedTuple):
    """Site-summed interference terms Q1 = sum a b*, Q2 = sum a c*, Q3 = sum b c*."""

    Q1: complex
    Q2: complex
    Q3: complex


def _gell_mann() -> NDArray[np.complex128]:
    g = np.zeros((8, 3, 3), dtype=np.complex128)
    g[0][0, 1] = g[0][1, 0] = 1
    g[1][0, 1], g[1][1, 0] = -1j, 1j
    g[2][0, 0], g[2][1, 1] = 1, -1
    g[3][0, 2] = g[3][2, 0] = 1
    g[4][0, 2], g[4][2, 0] = -1j, 1j
    g[5][1, 2] = g[5][2, 1] = 1
    g[6][1, 2], g[6][2, 1] = -1j, 1j
    g[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    g.setflags(write=False)
    return g


#: Standard Gell-Mann matrices lambda_1..lambda_8, Tr(l_i l_j) = 2 delta_ij.
GELL_MANN = _gell_mann()


def position_distribution(s: WalkState) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    """Sites and probabilities |a_n|^2 + |b_n|^2 + |c_n|^2 over the stored window."""
    return s.sites, np.sum(np.abs(s.amps) ** 2, axis=1)


def origin_probability(s: WalkState, n: int = 0) -> float:
    return float(np.sum(np.abs(s.at(n)) ** 2))


def gcp(s: WalkState) -> Gcp:
    p = np.sum(np.abs(s.amps) ** 2, axis=0)
    return Gcp(float(p[0]), float(p[1]), float(p[2]))


def interference_terms(s: WalkState) -> Interference:
    a, b, c = s.amps.T
    return Interference(
        complex(np.vdot(b, a)),
        complex(np.vdot(c, a)),
        complex(np.vdot(c, b)),
    )


_GCP_MIX = np.array([[1, 4, 4], [4, 1, 4], [4, 4, 1]], dtype=float) / 9.0
# Forcing vectors multiplying Re Q1, Re Q2, Re Q3. Each sums to zero so the
# update conserves total probability.
_GCP_FORCING = np.array([[-4, -4, 8], [-4, 8, -4], [8, -4, -4]], dtype=float).T / 9.0


def gcp_step(p: Gcp, q: Interference) -> Gcp:
    """
    Advance the global chirality probabilities one step under the Grover coin.

    Only the real parts of the interference terms enter the update.
    """
    re_q = np.array([q[0].real, q[1].real, q[2].real])
    nxt = _GCP_MIX @ np.asarray(p, dtype=float) + _GCP_FORCING @ re_q
    return Gcp(*map(float, nxt))


def density_from_parts(p: Gcp, q: Interference) -> NDArray[np.complex128]:
    P_L, P_S, P_R = p
    Q1, Q2, Q3 = q
    return np.array(
        [
            [P_L, Q1, Q2],
            [np.conj(Q1), P_S, Q3],
            [np.conj(Q2), np.conj(Q3), P_R],
        ],
        dtype=np.complex128,
    )


def coin_density(s: WalkState) -> NDArray[np.complex128]:
    """Chirality reduced density matrix, rows/columns ordered (L, S, R)."""
    return density_from_parts(gcp(s), interference_terms(s))


def check_density(rho, tol: float = 1e-12, psd_tol: float = PSD_TOL) -> NDArray[np.complex128]:
    """
    Validate a 3x3 density matrix and return it as a complex array.

    Raises
    ------
    InvalidDensityError
        If it is not Hermitian or unit-trace within ``tol``, or has an
        eigenvalue below ``-psd_tol``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (3, 3):
        raise InvalidDensityError(f"expected a 3x3 matrix, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > tol:
        raise InvalidDensityError(f"matrix is not Hermitian (deviation {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise InvalidDensityError(f"trace is {tr!r}, expected 1")
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -psd_tol:
        raise InvalidDensityError(f"negative eigenvalue {lo:.3e}")
    return rho


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))


def bloch_vector(rho) -> NDArray[np.float64]:
    """
    Generalized Bloch vector B of a qutrit density matrix.

    Convention: rho = (Id + sqrt(3) B . lambda) / 3, hence
    B_i = (sqrt(3)/2) Tr(rho lambda_i) and |B| = 1 exactly for pure states.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    return (np.sqrt(3.0) / 2.0) * np.real(np.einsum("kij,ji->k", GELL_MANN, rho))


def bloch_norm(rho) -> float:
    return float(np.linalg.norm(bloch_vector(rho)))


def density_from_bloch(b, psd_tol: float = PSD_TOL) -> NDArray[np.complex128]:
    """Inverse of :func:`bloch_vector`; rejects vectors outside the qutrit Bloch body."""
    b = np.asarray(b, dtype=float)
    if b.shape != (8,):
        raise ValueError(f"Bloch vector must have 8 components, got shape {b.shape}")
    rho = (np.eye(3) + np.sqrt(3.0) * np.einsum("k,kij->ij", b, GELL_MANN)) / 3.0
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -psd_tol:
        raise InvalidDensityError(
            f"Bloch vector lies outside the state space (eigenvalue {lo:.3e})"
        )
    return rho


def coin_density_kernel(steps: int, coin=GROVER) -> NDArray[np.complex128]:
    """
    Bilinear kernel K of the coin density after ``steps`` steps.

    By linearity of the walk, for the initial condition (a, b, c)|0>::

        rho_c(t)[j, k] = sum_{x, y} K[j, k, x, y] chi_x conj(chi_y)

    with chi = (a, b, c). K is obtained by evolving the three basis
    chiralities once, which makes grid sweeps over initial conditions cheap.
    """
    basis = [evolve(make_initial_state(ChiralityState(*e)), coin, steps).amps for e in np.eye(3)]
    psi = np.stack(basis)  # (x, site, j)
    return np.einsum("xnj,ynk->jkxy", psi, psi.conj())


def density_from_kernel(kernel, chi) -> NDArray[np.complex128]:
    """Evaluate a bilinear kernel at one chirality (or a batch, shape (..., 3))."""
    chi = chi.vector if isinstance(chi, ChiralityState) else np.asarray(chi, dtype=np.complex128)
    return np.einsum("jkxy,...x,...y->...jk", kernel, chi, chi.conj())
