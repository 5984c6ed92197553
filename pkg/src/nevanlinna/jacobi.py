"""Jacobi parameters, orthogonal polynomials at zero and the bridge to Hamburger Hamiltonians."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .exponents import (DIVERGENT, INCONCLUSIVE, MIN_ESTIMATION_LENGTH, SUMMABLE,
                        classify_series, convergence_exponent)
from .hamiltonian import HamburgerHamiltonian, HamiltonianError, det_omega_nodes

# rescale p, q once they leave [1/BIG, BIG]
BIG = 1e150
# smallest |sin| of an angle jump accepted by the inverse map
SIN_TOL = 1e-14
BRIDGE_TOL = 1e-12


class JacobiError(ValueError):
    pass


@dataclass(frozen=True)
class JacobiParameters:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        a = np.array(self.diag, dtype=float).ravel()
        b = np.array(self.offdiag, dtype=float).ravel()
        if a.size != b.size:
            raise JacobiError(f"diag has {a.size} entries, offdiag {b.size}")
        if a.size == 0:
            raise JacobiError("need at least one parameter pair")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise JacobiError("parameters must be finite")
        if np.any(b <= 0):
            raise JacobiError("off-diagonal entries must be positive")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "diag", a)
        object.__setattr__(self, "offdiag", b)

    @property
    def n(self) -> int:
        return self.diag.size

    def truncate(self, n: int) -> "JacobiParameters":
        return JacobiParameters(self.diag[:n], self.offdiag[:n])

    def to_dict(self) -> dict:
        return {"a": self.diag.tolist(), "b": self.offdiag.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "JacobiParameters":
        try:
            return cls(data["a"], data["b"])
        except KeyError as exc:
            raise JacobiError(f"missing key {exc}") from None


def load_jacobi(path) -> JacobiParameters:
    with open(path) as fh:
        return JacobiParameters.from_dict(json.load(fh))


def save_jacobi(J: JacobiParameters, path) -> None:
    with open(path, "w") as fh:
        json.dump(J.to_dict(), fh)


@dataclass(frozen=True)
class PolyAtZero:
    """p_n(0), q_n(0) for n = 0..N, stored as mantissa * exp(log_scale[n])."""
    p_mant: np.ndarray
    q_mant: np.ndarray
    log_scale: np.ndarray
    #: the recurrence coefficients, used by k_kernel when the direct formula cancels
    params: Optional["JacobiParameters"] = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.p_mant.size

    @property
    def p(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return self.p_mant * np.exp(self.log_scale)

    @property
    def q(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return self.q_mant * np.exp(self.log_scale)

    def log_norm_sq(self) -> np.ndarray:
        """log(p_n^2 + q_n^2)."""
        return 2.0 * (np.log(np.hypot(self.p_mant, self.q_mant)) + self.log_scale)


def poly_at_zero(J: JacobiParameters) -> PolyAtZero:
    p, q, s = _kernels.poly_recurrence(J.diag, J.offdiag, BIG)
    return PolyAtZero(p, q, s, J)


def _kernel_by_recurrence(J: JacobiParameters, j: int, k: int) -> float:
    # n -> K_{n,k} solves the recurrence with K_{k,k} = 0, K_{k+1,k} = 1/b_k
    a, b = J.diag, J.offdiag
    prev, cur, log_s = 0.0, 1.0 / b[k], 0.0
    for n in range(k + 1, j):
        prev, cur = cur, -(a[n] * cur + b[n - 1] * prev) / b[n]
        mx = max(abs(prev), abs(cur))
        if mx > BIG:
            prev, cur, log_s = prev / mx, cur / mx, log_s + math.log(mx)
    return cur * math.exp(log_s)


def k_kernel(P: PolyAtZero, j: int, k: int) -> float:
    """K_jk = q_j(0) p_k(0) - p_j(0) q_k(0)."""
    if not (0 <= j < P.n and 0 <= k < P.n):
        raise IndexError(f"indices ({j}, {k}) out of range for N = {P.n}")
    if j == k:
        return 0.0
    t1 = P.q_mant[j] * P.p_mant[k]
    t2 = P.p_mant[j] * P.q_mant[k]
    m = t1 - t2
    if P.params is not None and max(j, k) <= P.params.n and abs(m) < 1e-2 * (abs(t1) + abs(t2)):
        # the direct difference has cancelled; fall back to the recurrence in j
        return _kernel_by_recurrence(P.params, j, k) if j > k else -_kernel_by_recurrence(P.params, k, j)
    return float(m * math.exp(P.log_scale[j] + P.log_scale[k]))


def jacobi_to_hamiltonian(J: JacobiParameters) -> HamburgerHamiltonian:
    """Hamburger Hamiltonian with N+1 intervals for N Jacobi parameter pairs.

    l_{n+1} = p_n(0)^2 + q_n(0)^2 and (sin, cos) of phi_{n+1} point along
    (p_n(0), -q_n(0)); the branch is chosen so each jump lies in (0, pi).
    """
    P = poly_at_zero(J)
    if np.any((P.p_mant == 0) & (P.q_mant == 0)):
        raise HamiltonianError("p_n(0) = q_n(0) = 0: inconsistent recurrence")
    log_l = P.log_norm_sq()
    rad = np.hypot(P.p_mant, P.q_mant)
    u, v = P.p_mant / rad, P.q_mant / rad
    # the angle from (-q_n, p_n) to (-q_{n+1}, p_{n+1}) has sine
    # K_{n+1,n} / sqrt(l_{n+1} l_{n+2}) = 1 / (b_n sqrt(l_{n+1} l_{n+2})) > 0;
    # using the identity avoids the cancellation in the cross product
    sin_step = np.exp(-np.log(J.offdiag) - 0.5 * (log_l[:-1] + log_l[1:]))
    cos_step = u[:-1] * u[1:] + v[:-1] * v[1:]
    # reduced to (-pi/2, pi/2]: a jump pi - d is stored as -d
    steps = np.where(cos_step >= 0, np.arctan2(sin_step, cos_step),
                     -np.arctan2(sin_step, -cos_step))
    jumps = np.where(steps > 0, steps, steps + math.pi)
    angles = math.pi / 2 + np.concatenate(([0.0], np.cumsum(jumps)))
    lengths = np.exp(log_l)
    lengths[0] = 1.0
    return HamburgerHamiltonian(lengths, angles, steps=steps)


def jacobi_to_hamiltonian_recursive(J: JacobiParameters) -> HamburgerHamiltonian:
    """Same map by solving a_0 = tan phi_2 and the a_n, b_n relations forward.

    Kept as an independent cross-check; it divides by sines of the jumps
    and loses accuracy on long inputs.
    """
    a, b = J.diag, J.offdiag
    n = J.n
    L = np.empty(n + 1)
    phi = np.empty(n + 1)
    L[0] = 1.0
    phi[0] = math.pi / 2
    steps = np.empty(n)
    u = (math.atan(a[0]) - phi[0]) % math.pi
    steps[0] = u
    phi[1] = phi[0] + u
    L[1] = 1.0 / (b[0] ** 2 * L[0] * math.sin(u) ** 2)
    for k in range(1, n):
        d = steps[k - 1]
        cot_u = -a[k] * L[k] - math.cos(d) / math.sin(d)
        u = math.atan2(1.0, cot_u)
        steps[k] = u
        phi[k + 1] = phi[k] + u
        L[k + 1] = 1.0 / (b[k] ** 2 * L[k] * math.sin(u) ** 2)
    return HamburgerHamiltonian(L, phi, steps=steps)


def hamiltonian_to_jacobi(H: HamburgerHamiltonian) -> JacobiParameters:
    """Inverse of the bridge: N intervals give N-1 parameter pairs."""
    if H.n < 3:
        raise JacobiError("need at least three intervals")
    L, phi = H.lengths, H.angles
    if abs(L[0] - 1.0) > BRIDGE_TOL or abs(math.sin(phi[0]) ** 2 - 1.0) > BRIDGE_TOL:
        raise JacobiError("Hamiltonian is not bridge-normalized (l_1 = 1, phi_1 = pi/2)")
    steps = H.steps
    s = np.sin(steps)
    tol = 0.0 if H.steps_exact else SIN_TOL
    if np.any(np.abs(s) <= tol):
        k = int(np.argmax(np.abs(s) <= tol))
        raise JacobiError(f"angle jump {k + 1} has |sin| below {SIN_TOL:g}")
    b = 1.0 / (np.sqrt(L[:-1] * L[1:]) * np.abs(s))
    a = np.empty(H.n - 1)
    a[0] = math.tan(phi[1])
    if H.n > 2:
        a[1:] = -np.sin(steps[1:] + steps[:-1]) / (L[1:-1] * s[1:] * s[:-1])
    return JacobiParameters(a, b)


def b3_sequence(J: JacobiParameters) -> np.ndarray:
    """b_n b_{n+1} / sqrt(a_{n+1}^2 + b_n^2 + b_{n+1}^2), n = 0..N-2."""
    if J.n < 2:
        raise JacobiError("need N >= 2")
    a, b = J.diag, J.offdiag
    return b[:-1] * b[1:] / np.sqrt(a[1:] ** 2 + b[:-1] ** 2 + b[1:] ** 2)


@dataclass(frozen=True)
class SeriesReport:
    total: float
    partial_sums: np.ndarray
    flag: str


def _series(terms) -> SeriesReport:
    t = np.asarray(terms, dtype=float)
    return SeriesReport(math.fsum(t), np.cumsum(t), classify_series(t))


def carleman_sum(J: JacobiParameters, n: Optional[int] = None) -> SeriesReport:
    """sum_{k<n} 1/b_k with a tail heuristic."""
    n = J.n if n is None else n
    if not 0 <= n <= J.n:
        raise JacobiError(f"n = {n} outside 0..{J.n}")
    return _series(1.0 / J.offdiag[:n])


@dataclass(frozen=True)
class IndeterminacyReport:
    s_n: float
    det_omega: float
    identity_rel_error: float
    identity_ok: bool
    increments: np.ndarray
    flag: str

    def to_dict(self) -> dict:
        return {"S_N": self.s_n, "two_det_omega": 2.0 * self.det_omega,
                "identity_rel_error": self.identity_rel_error, "identity_ok": self.identity_ok,
                "partial_sums": np.cumsum(self.increments).tolist(), "flag": self.flag}


def indeterminacy_diagnostic(J: JacobiParameters, rtol: float = 1e-8) -> IndeterminacyReport:
    """S_N = sum_{j,k<N} K_jk^2, checked against 2 det Omega(0, x_N) of the bridge."""
    if J.n < 2:
        raise JacobiError("need N >= 2")
    P = poly_at_zero(J)
    n = J.n
    p, q = P.p[:n], P.q[:n]
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(q))):
        raise OverflowError("p_n(0), q_n(0) overflow double range; S_N is not representable")
    inc = np.zeros(n)
    for k in range(1, n):
        row = q[k] * p[:k] - p[k] * q[:k]
        inc[k] = 2.0 * math.fsum(row * row)
    s_n = math.fsum(inc)
    det = det_omega_nodes(jacobi_to_hamiltonian(J), 0, n)
    rel = abs(s_n - 2.0 * det) / max(abs(s_n), abs(2.0 * det), np.finfo(float).tiny)
    return IndeterminacyReport(s_n, det, rel, rel <= rtol, inc, classify_series(inc))


@dataclass(frozen=True)
class BerezanskiiReport:
    beta: np.ndarray
    sums: dict
    flags: dict
    beta_limit: float
    beta_spread: float
    limit_verdict: str
    verdict: str
    predicted_rho: Optional[float]

    def to_dict(self) -> dict:
        return {"sums": self.sums, "flags": self.flags, "beta_limit": self.beta_limit,
                "beta_spread": self.beta_spread, "limit_verdict": self.limit_verdict,
                "verdict": self.verdict, "predicted_rho": self.predicted_rho}


def berezanskii_check(J: JacobiParameters) -> BerezanskiiReport:
    """Numerical look at the growth, regularity and relative diagonal conditions."""
    if J.n < 3:
        raise JacobiError("need N >= 3")
    a, b = J.diag, J.offdiag
    # geometric means in the log domain so fast-growing b does not overflow
    lb = np.log(b)
    beta = -a[1:] / (2.0 * np.exp(0.5 * (lb[:-1] + lb[1:])))
    terms = {
        "inverse_b": 1.0 / b[1:],
        "beta_variation": np.abs(np.diff(beta)),
        "log_convexity": np.abs(np.expm1(lb[1:-1] - 0.5 * (lb[:-2] + lb[2:]))),
    }
    sums = {k: math.fsum(v) for k, v in terms.items()}
    flags = {k: classify_series(v) for k, v in terms.items()}
    tail = beta[len(beta) - max(len(beta) // 10, 1):]
    lim = float(np.mean(tail))
    spread = float(np.max(np.abs(tail - lim)))
    if abs(lim) + spread < 1.0:
        limit_verdict = "inside"
    elif abs(lim) - spread > 1.0:
        limit_verdict = "outside"
    else:
        limit_verdict = "boundary"
    if limit_verdict == "outside" or DIVERGENT in flags.values():
        verdict = "hypotheses numerically violated"
    elif limit_verdict == "inside" and all(f == SUMMABLE for f in flags.values()):
        verdict = "hypotheses numerically satisfied"
    else:
        verdict = "inconclusive"
    rho = None
    if J.n >= MIN_ESTIMATION_LENGTH:
        rho = convergence_exponent(b, "counting-slope").value
    return BerezanskiiReport(beta, sums, flags, lim, spread, limit_verdict, verdict, rho)


__all__ = [
    "JacobiParameters", "JacobiError", "PolyAtZero", "poly_at_zero", "k_kernel",
    "jacobi_to_hamiltonian", "jacobi_to_hamiltonian_recursive", "hamiltonian_to_jacobi",
    "b3_sequence", "carleman_sum", "indeterminacy_diagnostic", "berezanskii_check",
    "load_jacobi", "save_jacobi", "SeriesReport", "IndeterminacyReport", "BerezanskiiReport",
    "INCONCLUSIVE",
]
