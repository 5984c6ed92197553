"""Lower and upper bound curves for log|w_22(ir)| and closed-form order boxes.

Universal constants are set to 1: curves are meant for slope comparison
against log|w_22(ir)|, not for absolute values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .exponents import log_lp_sum
from .hamiltonian import HamburgerHamiltonian, b_s_sequence, det_omega_nodes

TRUNCATION_ONLY = "truncation-only"
TRUNCATION_LIMITED = "truncation-limited"
H_EMPTY = "h-empty"
DEGENERATE = "degenerate"
HYPOTHESIS_VIOLATED = "hypothesis-violated"
LITERAL_EMPTY = "literal-inverse-empty"

#: largest N the generalized inverses search when analytic tails are available
SEARCH_CAP = 10**15


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class BoundCurve:
    method: str
    r: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)
    flags: tuple = ()
    sample_flags: tuple = ()

    def __post_init__(self):
        r = np.asarray(self.r, float)
        v = np.asarray(self.values, float)
        if r.shape != v.shape:
            raise BoundsError("r and values differ in length")
        if r.size > 1 and np.any(np.diff(r) <= 0):
            raise BoundsError("r grid must be strictly increasing")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "values", v)
        if not self.sample_flags:
            object.__setattr__(self, "sample_flags", tuple("" for _ in r))

    def slope(self, r_lo: float = 0.0, r_hi: float = math.inf) -> float:
        """Least-squares slope of log value against log r over positive values."""
        sel = (self.values > 0) & np.isfinite(self.values) & (self.r >= r_lo) & (self.r <= r_hi)
        if sel.sum() < 2:
            return math.nan
        return float(np.polyfit(np.log(self.r[sel]), np.log(self.values[sel]), 1)[0])

    def rows(self):
        for r, v, f in zip(self.r, self.values, self.sample_flags):
            yield r, v, self.method, ";".join(x for x in (f, *self.flags) if x)


@dataclass(frozen=True)
class Tails:
    """Tail sums sum_{j>n} of a family; any of them may be None (use the truncation)."""
    lengths: Optional[Callable[[int], float]] = None
    steps: Optional[Callable[[int], float]] = None
    weighted: Optional[Callable[[int, float], float]] = None


class _TailEval:
    # resolves each tail to either the analytic rule or the truncation suffix sum
    def __init__(self, H: HamburgerHamiltonian, tails: Optional[Tails], psi: Optional[float]):
        tails = tails or Tails()
        self.n = H.n
        self.flags = set()
        if tails.lengths is None and H.length_tail is not None:
            tails = Tails(H.length_tail, tails.steps, tails.weighted)
        l = H.lengths
        sin_steps = np.abs(np.sin(H.steps))
        self._suffix_l = np.concatenate((np.cumsum(l[::-1])[::-1], [0.0]))
        # |sin(phi_{j+1} - phi_j)| for j = 1..N-1 lives at index j-1
        self._suffix_s = np.concatenate((np.cumsum(sin_steps[::-1])[::-1], [0.0, 0.0]))
        self.psi = psi
        if psi is not None:
            w = l * np.sin(H.angles - psi) ** 2
            self._suffix_w = np.concatenate((np.cumsum(w[::-1])[::-1], [0.0]))
        self.t = tails

    def _pick(self, rule, suffix, n, name):
        if rule is not None:
            return float(rule(n))
        if n > self.n:
            raise _BeyondTruncation()
        self.flags.add(f"{TRUNCATION_ONLY}:{name}")
        return float(suffix[min(n, suffix.size - 1)])

    def lengths(self, n: int) -> float:
        return self._pick(self.t.lengths, self._suffix_l, n, "lengths")

    def steps(self, n: int) -> float:
        return self._pick(self.t.steps, self._suffix_s, n, "steps")

    def weighted(self, n: int) -> float:
        if self.psi is None:
            # sin^2 estimated by 1
            return self.lengths(n)
        rule = None if self.t.weighted is None else (lambda k: self.t.weighted(k, self.psi))
        return self._pick(rule, self._suffix_w, n, "weighted")

    @property
    def analytic(self) -> bool:
        need_w = self.psi is not None and self.t.weighted is None
        return self.t.lengths is not None and not need_w


class _BeyondTruncation(Exception):
    pass


def geometric_grid(r_lo: float, r_hi: float, per_decade: int = 20) -> np.ndarray:
    if not 0 < r_lo < r_hi:
        raise BoundsError("need 0 < r_lo < r_hi")
    if per_decade < 1:
        raise BoundsError("per_decade must be positive")
    decades = math.log10(r_hi / r_lo)
    n = int(round(decades * per_decade))
    return r_lo * 10.0 ** (np.arange(n + 1) / per_decade)


def _grid(r_grid) -> np.ndarray:
    r = np.asarray(r_grid, float)
    if r.ndim != 1 or r.size == 0 or np.any(r <= 0):
        raise BoundsError("r grid must be a nonempty list of positive numbers")
    return r


# ---------------------------------------------------------------- lower bounds

def lower_count_curve(H: HamburgerHamiltonian, s: int, r_grid) -> BoundCurve:
    """k(r) = floor(#{j : b_j^(s) <= r} / s)."""
    if s < 2:
        raise BoundsError("s must be at least 2")
    r = _grid(r_grid)
    b = np.sort(b_s_sequence(H, s))
    counts = np.searchsorted(b, r, side="right")
    k = np.floor(counts / s)
    # every window inside the truncation already counts: more may follow
    sflags = tuple(TRUNCATION_LIMITED if c == b.size else "" for c in counts)
    return BoundCurve("lower-count", r, k, {"s": s}, (), sflags)


def lower_k4_curve(H: HamburgerHamiltonian, s: int, r_grid) -> BoundCurve:
    """(r/s) sum_{j >= h(r)} f_j with f_j = sqrt det Omega(x_j, x_{j+s})."""
    if s < 2:
        raise BoundsError("s must be at least 2")
    r = _grid(r_grid)
    f = 1.0 / b_s_sequence(H, s)
    suffix = np.concatenate((np.cumsum(f[::-1])[::-1], [0.0]))
    values = np.empty_like(r)
    sflags = []
    for i, ri in enumerate(r):
        big = np.flatnonzero(f > 1.0 / ri)
        if big.size == 0:
            h, flag = 0, H_EMPTY
        else:
            h, flag = int(big[-1]) + 1, ""
            if h >= f.size:
                flag = TRUNCATION_LIMITED
        values[i] = ri / s * suffix[h]
        sflags.append(flag)
    return BoundCurve("lower-k4", r, values, {"s": s}, (f"{TRUNCATION_ONLY}:f",), tuple(sflags))


# ---------------------------------------------------------------- upper bounds

def check_k26_hypothesis(H: HamburgerHamiltonian, f, g, nu: float, gamma: float, delta: float,
                         K: float, n_pairs: int = 1000, seed: int = 0,
                         rtol: float = 1e-12) -> list[tuple[int, int]]:
    """Sample m < n and return the pairs violating det^nu <= K (f_n-f_m)^gamma (g_n-g_m)^delta."""
    f = np.asarray(f, float)
    g = np.asarray(g, float)
    top = min(H.n, f.size - 1, g.size - 1)
    if top < 1:
        return []
    rng = np.random.default_rng(seed)
    m = rng.integers(0, top, size=n_pairs)
    n = rng.integers(m + 1, top + 1)
    bad = []
    for mi, ni in zip(m.tolist(), n.tolist()):
        lhs = det_omega_nodes(H, mi, ni) ** nu
        rhs = K * max(f[ni] - f[mi], 0.0) ** gamma * max(g[ni] - g[mi], 0.0) ** delta
        if lhs > rhs * (1 + rtol) + 1e-300:
            bad.append((mi, ni))
    return bad


def upper_k26_curve(H: HamburgerHamiltonian, f, g, nu: float, gamma: float, delta: float,
                    K: float, r_grid, f_inf: Optional[float] = None, g_inf: Optional[float] = None,
                    n_pairs: int = 1000, seed: int = 0) -> BoundCurve:
    """(K/nu) r^(2 nu) (f_inf - f_0)^gamma (g_inf - g_0)^delta."""
    if nu <= 0 or K <= 0 or gamma <= 0 or delta <= 0:
        raise BoundsError("nu, K, gamma, delta must be positive")
    if abs(gamma + delta - 1) > 1e-12:
        raise BoundsError("gamma + delta must equal 1")
    f = np.asarray(f, float)
    g = np.asarray(g, float)
    for name, x in (("f", f), ("g", g)):
        if np.any(np.diff(x) < 0) or np.any(x < 0):
            raise BoundsError(f"{name} must be nonnegative and nondecreasing")
    r = _grid(r_grid)
    flags = []
    if f_inf is None or g_inf is None:
        flags.append(TRUNCATION_ONLY)
    fi = f[-1] if f_inf is None else f_inf
    gi = g[-1] if g_inf is None else g_inf
    bad = check_k26_hypothesis(H, f, g, nu, gamma, delta, K, n_pairs, seed)
    if bad:
        flags.append(HYPOTHESIS_VIOLATED)
    values = K / nu * r ** (2 * nu) * (fi - f[0]) ** gamma * (gi - g[0]) ** delta
    meta = {"nu": nu, "gamma": gamma, "delta": delta, "K": K, "violations": len(bad),
            "pairs": n_pairs, "seed": seed}
    return BoundCurve("upper-k26", r, values, meta, tuple(flags))


def holder_constant(H: HamburgerHamiltonian, alpha: float, max_exact: int = 2000,
                    n_pairs: int = 200000, seed: int = 0) -> tuple[float, bool]:
    """Smallest d with |phi_{m+1} - phi_n| <= d |x_m - x_n|^alpha, and whether it is exact."""
    phi, x = H.angles, H.nodes
    if H.n < 2:
        return 0.0, True
    if H.n <= max_exact:
        m, n = np.triu_indices(H.n + 1, 1)
    else:
        rng = np.random.default_rng(seed)
        m = rng.integers(0, H.n, n_pairs)
        n = rng.integers(m + 1, H.n + 1)
    # phi_{m+1} is angles[m] and phi_n is angles[n-1]
    num = np.abs(phi[m] - phi[n - 1])
    den = (x[n] - x[m]) ** alpha
    return float(np.max(num / den)), H.n <= max_exact


def upper_holder_curve(H: HamburgerHamiltonian, alpha: float, r_grid, d: Optional[float] = None,
                       seed: int = 0) -> BoundCurve:
    """r^(1/(1+alpha)) 2 L (1+alpha) d^(1/(1+alpha))."""
    if alpha <= 0:
        raise BoundsError("alpha must be positive")
    r = _grid(r_grid)
    flags = [TRUNCATION_ONLY]
    if d is None:
        d, exact = holder_constant(H, alpha, seed=seed)
        if not exact:
            flags.append("sampled-d")
    L = H.total_length if H.length_tail is None else H.total_length + H.tail_length(H.n)
    values = r ** (1 / (1 + alpha)) * 2 * L * (1 + alpha) * d ** (1 / (1 + alpha))
    return BoundCurve("upper-holder", r, values, {"alpha": alpha, "d": d}, tuple(flags))


def _check_ge1(**kw):
    for k, v in kw.items():
        if not v >= 1:
            raise BoundsError(f"{k} must be >= 1, got {v}")


def upper_k89_curve(H: HamburgerHamiltonian, alpha: float, beta: float, r_grid) -> BoundCurve:
    """r^(1/(a+b)) 2(a+b) (sum l^(1/a))^(a/(a+b)) (1 + sum |sin dphi|^(1/b))^(b/(a+b))."""
    _check_ge1(alpha=alpha, beta=beta)
    r = _grid(r_grid)
    ab = alpha + beta
    log_l = log_lp_sum(H.lengths, 1 / alpha)
    s_sum = math.exp(log_lp_sum(np.abs(np.sin(H.steps)), 1 / beta)) if H.n > 1 else 0.0
    log_c = math.log(2 * ab) + alpha / ab * log_l + beta / ab * math.log1p(s_sum)
    values = np.exp(np.log(r) / ab + log_c)
    meta = {"alpha": alpha, "beta": beta, "lp_lengths": math.exp(log_l), "lp_steps": s_sum}
    return BoundCurve("upper-k89", r, values, meta, (TRUNCATION_ONLY,))


def upper_k79_curve(H: HamburgerHamiltonian, alpha: float, omega: float, psi: float,
                    r_grid) -> BoundCurve:
    """r^(2/(a+w)) (a+w) (sum l^(1/a))^(a/(a+w)) (sum (l sin^2(phi-psi))^(1/w))^(w/(a+w))."""
    _check_ge1(alpha=alpha, omega=omega)
    r = _grid(r_grid)
    aw = alpha + omega
    log_l = log_lp_sum(H.lengths, 1 / alpha)
    w = H.lengths * np.sin(H.angles - psi) ** 2
    log_w = log_lp_sum(w, 1 / omega)
    flags = [TRUNCATION_ONLY]
    if log_w == -math.inf:
        flags.append(DEGENERATE)
        values = np.zeros_like(r)
    else:
        log_c = math.log(aw) + alpha / aw * log_l + omega / aw * log_w
        values = np.exp(2 * np.log(r) / aw + log_c)
    meta = {"alpha": alpha, "omega": omega, "psi": psi, "lp_lengths": math.exp(log_l),
            "lp_weighted": math.exp(log_w)}
    return BoundCurve("upper-k79", r, values, meta, tuple(flags))


def _first_true(pred, lo: int, hi: int) -> Optional[int]:
    # smallest n in [lo, hi] with pred(n), for pred monotone False...True
    if not pred(hi):
        return None
    if pred(lo):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _monotone_search(pred, n_trunc: int, analytic: bool) -> Optional[int]:
    # search inside the truncation, then gallop beyond it when tails are analytic
    hit = _first_true(pred, 1, n_trunc)
    if hit is not None or not analytic:
        return hit
    lo = n_trunc
    while lo < SEARCH_CAP:
        hi = min(lo * 4, SEARCH_CAP)
        hit = _first_true(pred, lo, hi)
        if hit is not None:
            return hit
        lo = hi
    return None


def k66_G(H: HamburgerHamiltonian, n: int, tails: Optional[Tails] = None) -> float:
    """(1/N) (sum_{j>N} l_j)^(1/2) (sum_{j>N} |sin dphi_j|)^(1/2)."""
    te = _TailEval(H, tails, None)
    return math.sqrt(te.lengths(n) * te.steps(n)) / n


def upper_k66_curve(H: HamburgerHamiltonian, r_grid, tails: Optional[Tails] = None) -> BoundCurve:
    """G^-(log r / sqrt r) log r with G^-(x) = min{N : G(N) < x}."""
    r = _grid(r_grid)
    te = _TailEval(H, tails, None)
    analytic = te.t.lengths is not None and te.t.steps is not None

    def G(n):
        return math.sqrt(te.lengths(n) * te.steps(n)) / n

    values = np.full(r.size, np.nan)
    inverse = np.zeros(r.size, dtype=np.int64)
    sflags = []
    for i, ri in enumerate(r):
        if ri <= 1:
            sflags.append("r<=1")
            continue
        x = math.log(ri) / math.sqrt(ri)
        try:
            n = _monotone_search(lambda k: G(k) < x, H.n, analytic)
        except _BeyondTruncation:
            n = None
        # truncated step tails vanish from N-1 on, so a first hit there says nothing
        if n is None or (n >= H.n - 1 and not analytic):
            sflags.append(TRUNCATION_LIMITED)
            continue
        inverse[i] = n
        values[i] = n * math.log(ri)
        sflags.append("")
    meta = {"G_inverse": inverse.tolist()}
    return BoundCurve("upper-k66", r, values, meta, tuple(sorted(te.flags)), tuple(sflags))


def k49_log_F(te: "_TailEval", n: int, alpha: float, beta: float) -> float:
    tl = te.lengths(n)
    tw = te.weighted(n)
    if tl <= 0 or tw <= 0:
        return math.inf
    return (1 - beta) / alpha * math.log(n) - (alpha + 1) / (2 * alpha) * (math.log(tl) + math.log(tw))


def upper_k49_curve(H: HamburgerHamiltonian, alpha: float, beta: float, psi: Optional[float],
                    r_grid, tails: Optional[Tails] = None, variant: str = "crossing") -> BoundCurve:
    """(r F^-(r)^(1-beta))^(1/(alpha+1)).

    ``variant="literal"`` uses F^-(r) = min{N : F(N) < r}; ``"crossing"`` uses
    min{N : F(N) >= r}, the reading under which F increasing gives a useful
    inverse. ``psi=None`` estimates sin^2(phi_j - psi) by 1.
    """
    _check_ge1(alpha=alpha)
    if not 0 < beta < 1:
        raise BoundsError(f"beta must lie in (0, 1), got {beta}")
    if variant not in ("literal", "crossing"):
        raise BoundsError(f"unknown variant {variant!r}")
    r = _grid(r_grid)
    te = _TailEval(H, tails, psi)
    values = np.full(r.size, np.nan)
    inverse = np.zeros(r.size, dtype=np.int64)
    sflags = []
    for i, ri in enumerate(r):
        lr = math.log(ri)
        try:
            if variant == "literal":
                n = _first_true(lambda k: k49_log_F(te, k, alpha, beta) < lr, 1, 1)
                flag = LITERAL_EMPTY if n is None else ""
            else:
                n = _monotone_search(lambda k: k49_log_F(te, k, alpha, beta) >= lr, H.n, te.analytic)
                if n is not None and n >= H.n and not te.analytic:
                    n = None
                flag = TRUNCATION_LIMITED if n is None else ""
        except _BeyondTruncation:
            n, flag = None, TRUNCATION_LIMITED
        sflags.append(flag)
        if n is None:
            continue
        inverse[i] = n
        values[i] = math.exp((lr + (1 - beta) * math.log(n)) / (alpha + 1))
    meta = {"alpha": alpha, "beta": beta, "psi": psi, "variant": variant,
            "F_inverse": inverse.tolist()}
    return BoundCurve("upper-k49" if variant == "crossing" else "upper-k49-literal", r, values,
                      meta, tuple(sorted(te.flags)), tuple(sflags))


# ---------------------------------------------------------------- order boxes

@dataclass(frozen=True)
class OrderBox:
    lower: float
    upper: float
    lower_method: str
    upper_method: str

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper <= 1:
            raise BoundsError(f"invalid order box [{self.lower}, {self.upper}]")

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper,
                "lower_method": self.lower_method, "upper_method": self.upper_method}


def _k120(alpha, nu, beta):
    if nu >= 2 * alpha - 1:
        return (alpha - beta) / (alpha ** 2 - beta), "K120:nu>=2a-1"
    if nu >= alpha:
        return (nu + 1 - 2 * beta) / ((nu - 1) * (alpha + 1) + 2 - 2 * beta), "K120:a<=nu<2a-1"
    return (nu + 1 - 2 * beta) / (nu ** 2 + 1 - 2 * beta), "K120:nu<a"


def _k118(alpha, nu, beta, gamma):
    if nu >= 2 * alpha - 1:
        return ((alpha - beta + gamma) / (alpha ** 2 - beta + (alpha + 1) * gamma),
                "K118:nu>=2a-1")
    if nu >= alpha:
        return ((nu + 1 - 2 * beta + 2 * gamma)
                / ((nu - 1) * (alpha + 1) + 2 - 2 * beta + 2 * (alpha + 1) * gamma),
                "K118:a<=nu<2a-1")
    return ((nu + 1 - 2 * beta + 2 * gamma) / (nu ** 2 + 1 - 2 * beta + 2 * (nu + 1) * gamma),
            "K118:nu<a")


def _case2(alpha, nu, beta):
    if nu >= alpha:
        return 1 / (alpha + beta), "case2:nu>=a"
    if nu >= alpha - 2 * beta:
        return 1 / ((nu + alpha) / 2 + beta), "case2:a-2b<=nu<a"
    return 1 / (nu + 2 * beta), "case2:nu<a-2b"


CASES = ("K104", "K94", "K91", "K74", "K95", "case1", "case2", "case3", "case4")


def order_box(alpha0: float, beta0: Optional[float] = None, omega0: Optional[float] = None,
              case: str = "K104", *, nu: Optional[float] = None, gamma: Optional[float] = None,
              lower: Optional[float] = None) -> OrderBox:
    """Closed-form [lower, upper] for the order.

    For the mixed-peak cases alpha0, beta0 are the exponents alpha, beta of the
    regular part and ``nu`` (and for case4 ``gamma``) must be given. ``lower``
    overrides the lower side with a known convergence exponent.
    """
    def need(name, value, cond, text):
        if value is None or not cond(value):
            raise BoundsError(f"{case}: {name} must satisfy {text}, got {value}")

    need("alpha0", alpha0, lambda v: v > 0, "> 0")
    lo, lo_tag = 0.0, "trivial"
    if case == "K104":
        need("beta0", beta0, lambda v: v >= 1, ">= 1 (summable increments)")
        up, up_tag = 1 / (alpha0 + beta0), "K104"
    elif case == "K94":
        need("omega0", omega0, lambda v: v > 0, "> 0")
        up, up_tag = 2 / (alpha0 + omega0), "K94"
    elif case == "K91":
        need("alpha0", alpha0, lambda v: v > 1, "> 1")
        need("beta0", beta0, lambda v: 0 < v <= 1, "in (0, 1]")
        up, up_tag = (alpha0 - beta0) / (alpha0 ** 2 - beta0), "K91"
    elif case in ("K74", "K95"):
        need("alpha0", alpha0, lambda v: v > 1, "> 1")
        need("beta0", beta0, lambda v: 0 <= v < alpha0, "in [0, alpha0)")
        lo, lo_tag = 1 / (alpha0 + beta0), "K37:s=2"
        if alpha0 + beta0 >= 2:
            up, up_tag = 1 / (alpha0 + beta0), "K74:a+b>=2"
        else:
            up, up_tag = (1 - beta0) / (alpha0 - beta0), "K74:a+b<2"
    elif case in ("case1", "case2", "case3", "case4"):
        need("alpha0", alpha0, lambda v: v > 1, "> 1")
        need("nu", nu, lambda v: v > 1, "> 1")
        lo, lo_tag = 1 / (alpha0 + beta0), "K37:s=2"
        if case == "case1":
            need("beta0", beta0, lambda v: v > 1, "> 1")
            up, up_tag = 1 / (min(alpha0, nu) + beta0), "K104"
        else:
            need("beta0", beta0, lambda v: 0 <= v <= 1, "in [0, 1]")
            if case == "case2":
                up, up_tag = _case2(alpha0, nu, beta0)
            elif case == "case3":
                need("beta0", beta0, lambda v: v < 1 or nu >= alpha0, "< 1 unless nu >= alpha")
                up, up_tag = _k120(alpha0, nu, beta0)
            else:
                need("gamma", gamma, lambda v: 0 <= v <= beta0, "in [0, beta]")
                up, up_tag = _k118(alpha0, nu, beta0, gamma)
    else:
        raise BoundsError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    if lower is not None:
        lo, lo_tag = float(lower), "convergence-exponent"
    up = min(up, 1.0)
    lo = min(max(lo, 0.0), up)
    return OrderBox(lo, up, lo_tag, up_tag)


def mixed_case_table(alpha: float, nu: float, beta: float, gamma: Optional[float] = None) -> list[dict]:
    """All mixed-peak case formulas that apply to (alpha, nu, beta[, gamma]), one row each."""
    rows = []
    cases = ["case1"] if beta > 1 else ["case2", "case3"] + (["case4"] if gamma is not None else [])
    for case in cases:
        try:
            box = order_box(alpha, beta, case=case, nu=nu, gamma=gamma)
        except BoundsError as exc:
            rows.append({"case": case, "error": str(exc)})
            continue
        rows.append({"case": case, **box.to_dict()})
    if beta <= 1 and nu >= 2 * alpha:
        if alpha + beta < 2:
            rows.append({"case": "case3:nu>=2a", "upper": (1 - beta) / (alpha - beta),
                         "upper_method": "refinement:a+b<2"})
        else:
            rows.append({"case": "case3:nu>=2a", "upper": 1 / (alpha + beta),
                         "upper_method": "refinement:a+b>=2", "exact": True})
    return rows


__all__ = [
    "BoundCurve", "OrderBox", "Tails", "BoundsError", "geometric_grid",
    "lower_count_curve", "lower_k4_curve", "upper_k26_curve", "check_k26_hypothesis",
    "holder_constant", "upper_holder_curve", "upper_k89_curve", "upper_k79_curve",
    "upper_k66_curve", "upper_k49_curve", "k66_G", "order_box", "mixed_case_table", "CASES",
]
