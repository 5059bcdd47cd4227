"""
Closed-form long-time limit of the coin density matrix for a walker started
at the origin with coin state (a, b, c).

Every entry of the limit is a Hermitian-form in (a, b, c): rho[j, k] is
sum_{x, y} coef[j, k][x, y] * x * conj(y). The coefficients are kept in a
single table of exact (rational, sqrt(6)) pairs over a common denominator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .observables import bloch_norm, coin_density, origin_probability
from .walk import GROVER, ChiralityState, evolve, make_initial_state, step

__all__ = [
    "AsymptoticResult",
    "LIMIT_TERMS",
    "asymptotic_kernel",
    "asymptotic_coin_density",
    "localization_probability",
    "asymptotic_bloch_norm",
    "asymptotic_result",
    "LOCALIZATION_FAMILY1",
    "windowed_origin_probability",
    "bloch_difference_series",
]

SQRT6 = np.sqrt(6.0)
LOCALIZATION_FAMILY1 = 10.0 - 4.0 * SQRT6

# entry (j, k) -> (denominator, {(x, y): (p, q)}) meaning (p + q sqrt6)/denominator
# multiplies x * conj(y); x, y index (a, b, c) as 0, 1, 2. Upper triangle only.
LIMIT_TERMS: dict[tuple[int, int], tuple[int, dict[tuple[int, int], tuple[int, int]]]] = {
    (0, 0): (48, {
        (0, 0): (48, -11), (1, 0): (-48, 18), (2, 0): (-48, 19),
        (0, 1): (-48, 18), (1, 1): (0, 6), (2, 1): (0, 2),
        (0, 2): (-48, 19), (1, 2): (0, 2), (2, 2): (0, 5),
    }),
    (1, 1): (24, {
        (0, 0): (0, 3), (1, 0): (24, -10), (2, 0): (48, -19),
        (0, 1): (24, -10), (1, 1): (24, -6), (2, 1): (24, -10),
        (0, 2): (48, -19), (1, 2): (24, -10), (2, 2): (0, 3),
    }),
    (2, 2): (48, {
        (0, 0): (0, 5), (1, 0): (0, 2), (2, 0): (-48, 19),
        (0, 1): (0, 2), (1, 1): (0, 6), (2, 1): (-48, 18),
        (0, 2): (-48, 19), (1, 2): (-48, 18), (2, 2): (48, -11),
    }),
    (0, 1): (24, {
        (0, 0): (-24, 9), (1, 0): (96, -39), (2, 0): (144, -59),
        (0, 1): (0, 3), (1, 1): (24, -10), (2, 1): (48, -19),
        (0, 2): (0, 1), (1, 2): (0, -1), (2, 2): (0, 1),
    }),
    (0, 2): (48, {
        (0, 0): (-48, 19), (1, 0): (288, -118), (2, 0): (576, -235),
        (0, 1): (0, 2), (1, 1): (96, -38), (2, 1): (288, -118),
        (0, 2): (0, 5), (1, 2): (0, 2), (2, 2): (-48, 19),
    }),
    (1, 2): (24, {
        (0, 0): (0, 1), (1, 0): (48, -19), (2, 0): (144, -59),
        (0, 1): (0, -1), (1, 1): (24, -10), (2, 1): (96, -39),
        (0, 2): (0, 1), (1, 2): (0, 3), (2, 2): (-24, 9),
    }),
}


def asymptotic_kernel() -> NDArray[np.float64]:
    """
    Coefficient tensor K[j, k, x, y] of the limiting coin density.

    Lower-triangle entries are filled by Hermitian conjugation:
    rho[k, j] = conj(rho[j, k]) means K[k, j, x, y] = K[j, k, y, x].
    """
    K = np.zeros((3, 3, 3, 3))
    for (j, k), (den, terms) in LIMIT_TERMS.items():
        for (x, y), (p, q) in terms.items():
            K[j, k, x, y] = (p + q * SQRT6) / den
        if j != k:
            K[k, j] = K[j, k].T
    return K


_KERNEL = asymptotic_kernel()
_KERNEL.setflags(write=False)


def _chi_vector(chi) -> NDArray[np.complex128]:
    if not isinstance(chi, ChiralityState):
        chi = ChiralityState(*chi)
    return chi.vector


def asymptotic_coin_density(chi) -> NDArray[np.complex128]:
    """Limit t -> infinity of the coin density matrix for initial state (a, b, c)|0>."""
    v = _chi_vector(chi)
    return np.einsum("jkxy,x,y->jk", _KERNEL, v, v.conj())


def localization_probability(chi, tol: float = 1e-12) -> float:
    """
    Long-time probability of finding the walker at the origin.

    P(0, inf) = (5 - 2 sqrt6) [(2a + b) a* + (a + b + c) b* + (b + 2c) c*].
    """
    a, b, c = _chi_vector(chi)
    bracket = (2 * a + b) * a.conjugate() + (a + b + c) * b.conjugate() + (b + 2 * c) * c.conjugate()
    if abs(bracket.imag) > tol:
        raise ArithmeticError(f"localization bracket has imaginary part {bracket.imag:.3e}")
    return float((5.0 - 2.0 * SQRT6) * bracket.real)


def asymptotic_bloch_norm(chi) -> float:
    return bloch_norm(asymptotic_coin_density(chi))


@dataclass(frozen=True)
class AsymptoticResult:
    rho_inf: NDArray[np.complex128]
    bloch_norm_inf: float
    localization: float


def asymptotic_result(chi) -> AsymptoticResult:
    rho = asymptotic_coin_density(chi)
    return AsymptoticResult(rho, bloch_norm(rho), localization_probability(chi))


def windowed_origin_probability(chi, center: int, window: int = 11, coin=GROVER) -> float:
    """Mean of P(0, t) over ``window`` consecutive steps centered on ``center``."""
    if window < 1 or center - window // 2 < 0:
        raise ValueError("window must be positive and start at t >= 0")
    start = center - window // 2
    s = evolve(make_initial_state(chi), coin, start)
    total = 0.0
    for k in range(window):
        if k:
            s = step(s, coin)
        total += origin_probability(s)
    return total / window


def bloch_difference_series(chi, steps: int, coin=GROVER) -> NDArray[np.float64]:
    """| |B(t)| - |B_inf| | for t = 1..steps (index t-1)."""
    target = asymptotic_bloch_norm(chi)
    s = make_initial_state(chi)
    out = np.empty(steps)
    for t in range(steps):
        s = step(s, coin)
        out[t] = abs(bloch_norm(coin_density(s)) - target)
    return out
