"""
Three-state (lazy) discrete-time quantum walk on the infinite line.

The joint state lives in coin (x) position space. The coin basis is ordered
(L, S, R): move left, stay, move right. One step applies the coin at every
site and then shifts each chirality component by -1, 0, +1.

Amplitudes are stored densely over the occupied window [n_min, n_max], one
row of three complex numbers per site.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "NORM_TOL",
    "ChiralityState",
    "WalkState",
    "grover_coin",
    "check_coin",
    "make_initial_state",
    "step",
    "evolve",
]

NORM_TOL = 1e-12


def grover_coin() -> NDArray[np.complex128]:
    """
    Return the 3x3 Grover coin in the (L, S, R) basis.

    Diagonal entries are -1/3, off-diagonal entries 2/3. It is the reflection
    about the uniform vector, so (1, 1, 1)/sqrt(3) is its +1 eigenvector.
    """
    return (2.0 / 3.0) * np.ones((3, 3), dtype=np.complex128) - np.eye(3, dtype=np.complex128)


GROVER = grover_coin()
GROVER.setflags(write=False)


def check_coin(coin, tol: float = NORM_TOL) -> NDArray[np.complex128]:
    """Validate a 3x3 unitary coin and return it as a complex array."""
    coin = np.asarray(coin, dtype=np.complex128)
    if coin.shape != (3, 3):
        raise ValueError(f"coin must be 3x3, got shape {coin.shape}")
    err = np.abs(coin.conj().T @ coin - np.eye(3)).max()
    if err > tol:
        raise ValueError(f"coin is not unitary (max |C^dag C - I| = {err:.3e})")
    return coin


@dataclass(frozen=True)
class ChiralityState:
    """Normalized coin state (a, b, c) for the L, S, R chiralities."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, complex(getattr(self, name)))
        norm2 = abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"chirality state is not normalized (|a|^2+|b|^2+|c|^2 = {norm2!r})")

    @property
    def vector(self) -> NDArray[np.complex128]:
        return np.array([self.a, self.b, self.c], dtype=np.complex128)

    @classmethod
    def from_vector(cls, v: Sequence[complex], normalize_tol: float = 0.0) -> "ChiralityState":
        """
        Build from a length-3 vector.

        If ``normalize_tol`` > 0, a vector whose norm is within that distance of
        one is rescaled onto the unit sphere; anything further away is rejected.
        """
        v = np.asarray(v, dtype=np.complex128)
        if v.shape != (3,):
            raise ValueError(f"expected 3 amplitudes, got shape {v.shape}")
        norm = float(np.linalg.norm(v))
        if normalize_tol > 0.0:
            if abs(norm - 1.0) > normalize_tol:
                raise ValueError(f"chirality norm {norm!r} is not within {normalize_tol} of 1")
            v = v / norm
        return cls(*v)

    @classmethod
    def family1(cls, theta: float, phi: float) -> "ChiralityState":
        """(cos theta, 0, e^{i phi} sin theta)."""
        return cls(np.cos(theta), 0.0, np.exp(1j * phi) * np.sin(theta))

    @classmethod
    def family2(cls, theta: float, phi: float) -> "ChiralityState":
        """(cos theta, 1, e^{i phi} sin theta) / sqrt(2)."""
        s = 1.0 / np.sqrt(2.0)
        return cls(s * np.cos(theta), s, s * np.exp(1j * phi) * np.sin(theta))


@dataclass(frozen=True)
class WalkState:
    """
    Pure walk state at time ``t``.

    ``amps[i]`` holds (a_n, b_n, c_n) for site ``n = n_min + i``. Evolution
    functions accept unnormalized states too (the dynamics is linear); only
    :func:`make_initial_state` enforces unit norm.
    """

    t: int
    n_min: int
    amps: NDArray[np.complex128]

    @property
    def n_max(self) -> int:
        return self.n_min + len(self.amps) - 1

    @property
    def window(self) -> tuple[int, int]:
        return self.n_min, self.n_max

    @property
    def sites(self) -> NDArray[np.int64]:
        return np.arange(self.n_min, self.n_max + 1)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def at(self, n: int) -> NDArray[np.complex128]:
        """Amplitudes at site n (zeros outside the stored window)."""
        if self.n_min <= n <= self.n_max:
            return self.amps[n - self.n_min].copy()
        return np.zeros(3, dtype=np.complex128)


def make_initial_state(chi) -> WalkState:
    """Walker localized at site 0 with coin state ``chi``."""
    if not isinstance(chi, ChiralityState):
        chi = ChiralityState(*chi)
    return WalkState(t=0, n_min=0, amps=chi.vector.reshape(1, 3))


def _shift_into(out: NDArray, tossed: NDArray, m: int) -> None:
    # out covers one more site on each side than tossed (length m)
    out[:] = 0.0
    out[:m, 0] = tossed[:, 0]          # a_n(t+1) from site n+1
    out[1:m + 1, 1] = tossed[:, 1]     # b_n(t+1) from site n
    out[2:m + 2, 2] = tossed[:, 2]     # c_n(t+1) from site n-1


def step(s: WalkState, coin=GROVER) -> WalkState:
    """
    Apply one step U = Sh (C x I).

    a_n(t+1) = (C psi_{n+1})_L,  b_n(t+1) = (C psi_n)_S,  c_n(t+1) = (C psi_{n-1})_R.
    The window grows by one site on each side.
    """
    coin = np.asarray(coin, dtype=np.complex128)
    m = len(s.amps)
    out = np.empty((m + 2, 3), dtype=np.complex128)
    _shift_into(out, s.amps @ coin.T, m)
    return WalkState(t=s.t + 1, n_min=s.n_min - 1, amps=out)


def evolve(s: WalkState, coin=GROVER, steps: int = 1) -> WalkState:
    """Apply :func:`step` ``steps`` times. ``steps=0`` returns ``s`` itself."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if steps == 0:
        return s
    coin = np.asarray(coin, dtype=np.complex128)
    m0 = len(s.amps)
    size = m0 + 2 * steps
    # double buffer sized for the final window; the live region is centered
    src = np.zeros((size, 3), dtype=np.complex128)
    dst = np.zeros((size, 3), dtype=np.complex128)
    src[steps:steps + m0] = s.amps
    for k in range(steps):
        lo = steps - k
        m = m0 + 2 * k
        _shift_into(dst[lo - 1:lo + m + 1], src[lo:lo + m] @ coin.T, m)
        src, dst = dst, src
    return WalkState(t=s.t + steps, n_min=s.n_min - steps, amps=src)
