"""Hamburger Hamiltonians: lengths, angles, det Omega and partition counters.

A Hamburger Hamiltonian is the piecewise constant rank-one Hamiltonian
``H(t) = xi(phi_j) xi(phi_j)^T`` on ``[x_{j-1}, x_j)`` where
``x_n = l_1 + ... + l_n`` and ``xi(phi) = (cos phi, sin phi)^T``.
Only finite truncations are stored; ``length_tail`` optionally carries the
analytic tail ``sum_{j>n} l_j`` of the infinite family the truncation
came from.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import _kernels as _k

#: |sin(phi_{j+1} - phi_j)| below this is not a genuine jump.
JUMP_TOL = 1e-14
#: windows up to this many intervals use the cancellation-free double sum
DOUBLE_SUM_MAX = 512
#: det / (Omega_11 Omega_22) below this triggers the rotated-frame recomputation
CANCELLATION_GUARD = 1e-10
#: tie tolerance (relative) for the sigma-partition termination branch
TIE_TOL = 1e-12


class HamiltonianError(ValueError):
    pass


def reduce_mod_pi(x):
    """Representative of x modulo pi in (-pi/2, pi/2]."""
    r = np.asarray(x, dtype=float) - np.pi * np.round(np.asarray(x, dtype=float) / np.pi)
    return np.where(r <= -np.pi / 2, r + np.pi, r)


@dataclass(frozen=True)
class HamburgerHamiltonian:
    lengths: np.ndarray
    angles: np.ndarray
    length_tail: Optional[Callable[[int], float]] = field(default=None, compare=False, repr=False)
    #: phi_{j+1} - phi_j reduced modulo pi to (-pi/2, pi/2]; pass it when known
    #: exactly, since tiny jumps on top of large cumulative angles (or jumps
    #: close to pi) cannot be recovered from ``angles`` alone
    steps: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        l = np.ascontiguousarray(self.lengths, dtype=float)
        phi = np.ascontiguousarray(self.angles, dtype=float)
        if l.ndim != 1 or phi.shape != l.shape:
            raise HamiltonianError("lengths and angles must be 1-d arrays of equal size")
        if l.size == 0:
            raise HamiltonianError("empty Hamiltonian")
        if not np.all(np.isfinite(l)) or not np.all(l > 0):
            raise HamiltonianError("lengths must be positive and finite")
        if not np.all(np.isfinite(phi)):
            raise HamiltonianError("angles must be finite")
        exact = self.steps is not None
        if not exact:
            steps = reduce_mod_pi(np.diff(phi))
        else:
            steps = np.array(self.steps, dtype=float)
            if steps.shape != (l.size - 1,):
                raise HamiltonianError("steps must have one entry fewer than angles")
            scale = np.maximum(1.0, np.abs(phi[1:]))
            if np.any(np.abs(reduce_mod_pi(np.diff(phi) - steps)) > 1e-8 * scale):
                raise HamiltonianError("steps disagree with the angle differences")
            steps = reduce_mod_pi(steps)
        steps.setflags(write=False)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "steps_exact", exact)
        jumps = np.abs(np.sin(steps))
        # a jump read off cumulative angles is unresolvable below JUMP_TOL;
        # explicitly supplied steps are trusted down to an exact zero
        if jumps.size and jumps.min() <= (0.0 if exact else JUMP_TOL):
            bad = int(np.argmin(jumps))
            raise HamiltonianError(
                f"no angle jump between intervals {bad + 1} and {bad + 2} "
                f"(|sin| = {jumps[bad]:.3g})"
            )
        l.setflags(write=False)
        phi.setflags(write=False)
        object.__setattr__(self, "lengths", l)
        object.__setattr__(self, "angles", phi)

    @property
    def n(self) -> int:
        return self.lengths.size

    @property
    def nodes(self) -> np.ndarray:
        """x_0 = 0, x_1, ..., x_N."""
        cached = self.__dict__.get("_nodes")
        if cached is None:
            cached = np.concatenate(([0.0], np.cumsum(self.lengths)))
            cached.setflags(write=False)
            object.__setattr__(self, "_nodes", cached)
        return cached

    @property
    def total_length(self) -> float:
        return float(self.nodes[-1])

    def local_angles(self, m: int, n: int) -> np.ndarray:
        """Angles of intervals m+1..n relative to interval m+1, modulo pi, from the steps."""
        return np.concatenate(([0.0], np.cumsum(self.steps[m : n - 1])))

    def trig(self) -> tuple[np.ndarray, np.ndarray]:
        cached = self.__dict__.get("_trig")
        if cached is None:
            cached = (np.cos(self.angles), np.sin(self.angles))
            object.__setattr__(self, "_trig", cached)
        return cached

    def step_trig(self) -> tuple[np.ndarray, np.ndarray]:
        cached = self.__dict__.get("_step_trig")
        if cached is None:
            cached = (np.sin(self.steps), np.cos(self.steps))
            object.__setattr__(self, "_step_trig", cached)
        return cached

    def tail_length(self, n: int) -> float:
        """sum_{j>n} l_j of the underlying family (truncation-only if no tail rule)."""
        if self.length_tail is not None:
            return float(self.length_tail(n))
        if n >= self.n:
            return 0.0
        return float(math.fsum(self.lengths[n:]))

    def truncate(self, n: int) -> "HamburgerHamiltonian":
        if not 1 <= n <= self.n:
            raise HamiltonianError(f"truncation {n} outside 1..{self.n}")
        steps = self.steps[: n - 1] if self.steps_exact else None
        return HamburgerHamiltonian(self.lengths[:n], self.angles[:n], self.length_tail, steps)

    def to_dict(self) -> dict:
        doc = {"lengths": self.lengths.tolist(), "angles": self.angles.tolist()}
        if self.steps_exact:
            doc["steps"] = self.steps.tolist()
        return doc

    @classmethod
    def from_dict(cls, data: dict) -> "HamburgerHamiltonian":
        try:
            return cls(np.asarray(data["lengths"], float), np.asarray(data["angles"], float),
                       steps=data.get("steps"))
        except KeyError as exc:
            raise HamiltonianError(f"missing key {exc} in Hamiltonian document") from None


def load_hamiltonian(path) -> HamburgerHamiltonian:
    return HamburgerHamiltonian.from_dict(json.loads(Path(path).read_text()))


def save_hamiltonian(H: HamburgerHamiltonian, path) -> None:
    Path(path).write_text(json.dumps(H.to_dict()))


@dataclass(frozen=True)
class OmegaMatrix:
    """Omega(s, t) = int_s^t H, with its determinant kept separately."""

    entries: np.ndarray
    det: float

    @property
    def trace(self) -> float:
        return float(self.entries[0, 0] + self.entries[1, 1])


def node_position(H: HamburgerHamiltonian, n: int) -> float:
    if not 0 <= n <= H.n:
        raise IndexError(f"node index {n} outside 0..{H.n}")
    if n == 0:
        return 0.0
    return float(math.fsum(H.lengths[:n]))


def _det_double_sum(l: np.ndarray, phi: np.ndarray) -> float:
    # sum_{j<k} l_j l_k sin^2(phi_j - phi_k); every term is nonnegative
    if l.size < 2:
        return 0.0
    s = np.sin(phi[:, None] - phi[None, :])
    terms = np.triu(np.outer(l, l) * s * s, 1)
    return float(math.fsum(terms.ravel()))


def _omega_sums(l: np.ndarray, phi: np.ndarray) -> tuple[float, float, float]:
    return _k.omega_sums(np.ascontiguousarray(l), np.ascontiguousarray(phi), 0.0)


def _det_rotated(l: np.ndarray, phi: np.ndarray, o11: float, o12: float, o22: float) -> float:
    # principal frame: the small directional sums are formed from small sines
    psi = 0.5 * math.atan2(2.0 * o12, o11 - o22)
    big, cross, small = _k.omega_sums(np.ascontiguousarray(l), np.ascontiguousarray(phi), psi)
    return max(big * small - cross * cross, 0.0)


def det_omega_window(l: np.ndarray, phi: np.ndarray) -> float:
    """det int H over a run of intervals with the given lengths and angles."""
    l = np.asarray(l, float)
    phi = np.asarray(phi, float)
    if l.size <= DOUBLE_SUM_MAX:
        return _det_double_sum(l, phi)
    o11, o12, o22 = _omega_sums(l, phi)
    det = o11 * o22 - o12 * o12
    if o11 <= 0 or o22 <= 0 or det / (o11 * o22) < CANCELLATION_GUARD:
        return _det_rotated(l, phi, o11, o12, o22)
    return det


def omega_nodes(H: HamburgerHamiltonian, m: int, n: int) -> OmegaMatrix:
    _check_window(H, m, n)
    l, phi = H.lengths[m:n], H.angles[m:n]
    o11, o12, o22 = _omega_sums(l, phi)
    return OmegaMatrix(np.array([[o11, o12], [o12, o22]]), det_omega_window(l, H.local_angles(m, n)))


def _check_window(H, m, n):
    if not 0 <= m < n <= H.n:
        raise IndexError(f"need 0 <= m < n <= {H.n}, got m={m}, n={n}")


def det_omega_nodes(H: HamburgerHamiltonian, m: int, n: int) -> float:
    """det Omega(x_m, x_n) = 1/2 sum_{j,k=m+1..n} l_j l_k sin^2(phi_j - phi_k)."""
    _check_window(H, m, n)
    return det_omega_window(H.lengths[m:n], H.local_angles(m, n))


def _locate(nodes: np.ndarray, t: float) -> int:
    # index j (0-based interval) with nodes[j] <= t < nodes[j+1]
    return int(np.searchsorted(nodes, t, side="right")) - 1


def _real_window(H: HamburgerHamiltonian, s: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    nodes = H.nodes
    i = min(_locate(nodes, s), H.n - 1)
    k = min(_locate(nodes, t), H.n - 1)
    if nodes[k] == t and k > i:
        k -= 1
    if i == k:
        return np.array([t - s]), np.zeros(1)
    l = np.array(H.lengths[i : k + 1], dtype=float)
    l[0] = nodes[i + 1] - s
    l[-1] = t - nodes[k]
    keep = l > 0
    return l[keep], H.local_angles(i, k + 1)[keep]


def det_omega_real(H: HamburgerHamiltonian, s: float, t: float) -> float:
    """det Omega(s, t) for arbitrary endpoints in [0, x_N]."""
    if not s < t:
        raise ValueError(f"need s < t, got s={s}, t={t}")
    if s < 0 or t > H.total_length * (1 + 1e-15):
        raise ValueError(f"endpoints must lie in [0, {H.total_length}]")
    return det_omega_window(*_real_window(H, s, min(t, H.total_length)))


def b_s_sequence(H: HamburgerHamiltonian, s: int) -> np.ndarray:
    """b_j^(s) = det Omega(x_j, x_{j+s})^(-1/2) for j = 0..N-s (inf where det = 0)."""
    if s < 2:
        raise ValueError("s must be at least 2")
    if H.n < s:
        raise ValueError(f"window s={s} exceeds truncation N={H.n}")
    sin_step, cos_step = H.step_trig()
    b = _k.window_dets(np.ascontiguousarray(H.lengths), sin_step, cos_step, s)
    np.sqrt(b, out=b)
    with np.errstate(divide="ignore"):
        return np.divide(1.0, b, out=b)


def _sweep(H: HamburgerHamiltonian, r: float):
    """Left-to-right sweep cutting windows with det Omega = 1/r^2.

    Returns (points, reached_final) where points are sigma_0 = 0 < sigma_1 < ...
    (cut points only, x_N excluded) and reached_final tells whether the last
    window [sigma_last, x_N] itself has det >= 1/r^2 (up to the tie tolerance).
    """
    target = 1.0 / (r * r)
    l, steps = H.lengths, H.steps
    nodes = H.nodes
    points = [0.0]
    start = 0.0
    j = 0  # current interval (0-based), start lies in [nodes[j], nodes[j+1])
    while True:
        first_len = nodes[j + 1] - start
        # window intervals j..k, with the first one partial
        win_l = [first_len]
        win_phi = [0.0]  # angles relative to interval j
        rel = 0.0
        det = 0.0
        k = j + 1
        found = None
        while k < H.n:
            rel += steps[k - 1]
            sn = np.sin(rel - np.asarray(win_phi))
            q = math.fsum(np.asarray(win_l) * sn * sn)
            full = det + l[k] * q
            if full >= target * (1 - TIE_TOL) and q > 0:
                if k == H.n - 1 and abs(full - target) <= TIE_TOL * target:
                    return points, True
                if full >= target:
                    tau = (target - det) / q
                    tau = min(max(tau, 0.0), l[k])
                    found = (k, tau)
                    break
            det = full
            win_l.append(l[k])
            win_phi.append(rel)
            k += 1
        if found is None:
            return points, det >= target * (1 - TIE_TOL) and det > 0
        k, tau = found
        cut = nodes[k] + tau
        if cut >= nodes[-1]:
            return points, True
        points.append(cut)
        start = cut
        j = k if cut < nodes[k + 1] else k + 1
        if j >= H.n:
            return points, False


def sigma_partition(H: HamburgerHamiltonian, r: float) -> tuple[np.ndarray, int]:
    """Points sigma_0 = 0 < ... < sigma_kappa = x_N and kappa.

    det Omega(sigma_{k-1}, sigma_k) = 1/r^2 for k < kappa and the last window
    has det <= 1/r^2 (ties within 1e-12 relative terminate).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    points, _ = _sweep(H, r)
    pts = np.array(points + [H.total_length])
    return pts, len(pts) - 1


def greedy_partition_count(H: HamburgerHamiltonian, r: float) -> int:
    """Maximal number of consecutive disjoint windows with det Omega >= 1/r^2."""
    if r <= 0:
        raise ValueError("r must be positive")
    points, final_ok = _sweep(H, r)
    return len(points) - 1 + int(final_ok)
