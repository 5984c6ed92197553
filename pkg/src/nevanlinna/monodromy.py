"""Monodromy matrix of a Hamburger Hamiltonian as an exact product.

On each interval H is constant and rank one with ``(xi xi^T J)^2 = 0``, so
the transfer matrix across the interval is exactly ``I - z l xi xi^T J``.
Products are kept as a matrix normalized to max entry magnitude in
[1/2, 1] times ``exp(log_scale)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .hamiltonian import HamburgerHamiltonian

J = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class ScaledMatrix2:
    entries: np.ndarray
    log_scale: float = 0.0

    @classmethod
    def identity(cls) -> "ScaledMatrix2":
        return cls(np.eye(2, dtype=complex), 0.0)

    @classmethod
    def from_matrix(cls, m) -> "ScaledMatrix2":
        m = np.asarray(m, dtype=complex)
        mx = np.abs(m).max()
        if mx == 0:
            return cls(m, 0.0)
        _, e = math.frexp(mx)
        return cls(m * math.ldexp(1.0, -e), e * math.log(2.0))

    def __matmul__(self, other: "ScaledMatrix2") -> "ScaledMatrix2":
        prod = ScaledMatrix2.from_matrix(self.entries @ other.entries)
        return ScaledMatrix2(prod.entries, prod.log_scale + self.log_scale + other.log_scale)

    def log_abs(self, i: int, j: int) -> float:
        """log|w_ij| with i, j 1-based."""
        v = abs(self.entries[i - 1, j - 1])
        return self.log_scale + math.log(v) if v > 0 else -math.inf

    def value(self) -> np.ndarray:
        """Unscaled matrix; overflows for large log_scale."""
        return self.entries * math.exp(self.log_scale)

    def scaled_det(self) -> complex:
        """det(entries) * exp(2 log_scale), formed from the stored entries."""
        m = self.entries
        d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if d == 0:
            return 0j
        log_mag = math.log(abs(d)) + 2.0 * self.log_scale
        if log_mag > 700:
            return complex(math.inf, 0.0)
        return complex(math.exp(log_mag) * d / abs(d))


def interval_factor(l: float, phi: float, z: complex) -> ScaledMatrix2:
    """I - z l xi_phi xi_phi^T J: exact propagator across one interval."""
    if l <= 0:
        raise ValueError("interval length must be positive")
    c, s = math.cos(phi), math.sin(phi)
    zl = z * l
    m = np.array([[1 - zl * c * s, zl * c * c], [-zl * s * s, 1 + zl * c * s]], dtype=complex)
    return ScaledMatrix2.from_matrix(m)


def monodromy(H: HamburgerHamiltonian, z: complex, n: int | None = None) -> ScaledMatrix2:
    """W_H(x_n; z) (default n = N), factors applied as W(x_n) = W(x_{n-1}) M_n."""
    stop = H.n if n is None else n
    if not 0 <= stop <= H.n:
        raise IndexError(f"truncation {stop} outside 0..{H.n}")
    cos_phi, sin_phi = H.trig()
    a, b, c, d, log_scale = _kernels.product(H.lengths, cos_phi, sin_phi, complex(z), 0, stop)
    return ScaledMatrix2(np.array([[a, b], [c, d]]), log_scale)


def log_abs_w22(H: HamburgerHamiltonian, r: float, n: int | None = None) -> float:
    """log|w_{H,22}(ir)|."""
    if r <= 0:
        raise ValueError("r must be positive")
    return monodromy(H, 1j * r, n).log_abs(2, 2)


def log_abs_w22_grid(H: HamburgerHamiltonian, rs) -> np.ndarray:
    """log|w_{H,22}(ir)| over an r-grid at the full truncation."""
    res = w22_with_truncation(H, rs, np.array([H.n]), np.array([np.inf]), tol=0.0)
    return res.values


@dataclass(frozen=True)
class TruncatedW22:
    """log|w22(ir)| per r with the truncation actually used.

    ``reason``: 'tail' (r * tail <= tol * max(1, |v|)), 'doubling' (value moved
    by less than tol * max(1, |v|) since the previous checkpoint; only used
    when some tail is unknown) or 'truncation-limited' (ran out of intervals).
    """

    r: np.ndarray
    values: np.ndarray
    n_used: np.ndarray
    reason: tuple
    history: np.ndarray


_REASONS = {0: "truncation-limited", 1: "tail", 2: "doubling"}


def w22_with_truncation(H, rs, checkpoints, tails, tol=1e-3, doubling=None) -> TruncatedW22:
    rs = np.ascontiguousarray(rs, dtype=float)
    if np.any(rs <= 0):
        raise ValueError("r must be positive")
    checkpoints = np.ascontiguousarray(checkpoints, dtype=np.int64)
    tails = np.ascontiguousarray(tails, dtype=float)
    if checkpoints[-1] > H.n or np.any(np.diff(checkpoints) <= 0):
        raise ValueError("checkpoints must increase and stay within the truncation")
    if doubling is None:
        # the doubling heuristic stands in for tails that are not known (inf)
        doubling = bool(np.any(np.isinf(tails)))
    cos_phi, sin_phi = H.trig()
    hist, stop, reason = _kernels.w22_checkpoints(
        H.lengths, cos_phi, sin_phi, rs, checkpoints, tails, float(tol), bool(doubling)
    )
    values = hist[np.arange(rs.size), stop]
    return TruncatedW22(
        r=rs,
        values=values,
        n_used=checkpoints[stop],
        reason=tuple(_REASONS[int(x)] for x in reason),
        history=hist,
    )


def doubling_checkpoints(n_max: int, n_min: int = 1024) -> np.ndarray:
    """n_max / 2^k, ..., n_max / 2, n_max, all >= n_min (n_max always included)."""
    cks = [n_max]
    while cks[-1] // 2 >= n_min:
        cks.append(cks[-1] // 2)
    return np.array(cks[::-1], dtype=np.int64)


def nevanlinna_logB(J_params, r: float) -> float:
    """log|B(ir)| of a Jacobi matrix, via w_{H,22} = -B."""
    from .jacobi import jacobi_to_hamiltonian

    return log_abs_w22(jacobi_to_hamiltonian(J_params), r)
