"""Preset families, order fitting and sandwich reports."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import zeta

from . import bounds as B
from .exponents import convergence_exponent
from .hamiltonian import HamburgerHamiltonian
from .jacobi import JacobiParameters, berezanskii_check, jacobi_to_hamiltonian
from .monodromy import doubling_checkpoints, w22_with_truncation

KINDS = ("pure-power", "alternating-power", "mixed-peaks", "berezanskii-power", "explicit")
TRUNCATION_TOL = 1e-3
DEFAULT_N = 2 ** 24
EPS = 0.01


class ExperimentError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict)
    n: int = DEFAULT_N

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ExperimentError(f"unknown family {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.n < 3:
            raise ExperimentError("truncation must have at least 3 intervals")
        p = self.params

        def need(*names):
            missing = [k for k in names if k not in p]
            if missing:
                raise ExperimentError(f"{self.kind} needs parameters {', '.join(missing)}")

        if self.kind == "pure-power":
            need("alpha", "beta")
            if not (p["alpha"] > 1 and p["beta"] >= 0):
                raise ExperimentError("pure-power needs alpha > 1 and beta >= 0")
        elif self.kind == "alternating-power":
            need("alpha0", "alpha1")
            if not p["alpha1"] > p["alpha0"] > 1:
                raise ExperimentError("alternating-power needs alpha1 > alpha0 > 1")
        elif self.kind == "mixed-peaks":
            need("alpha", "nu", "beta")
            g = p.get("gamma", 0.0)
            if not (p["nu"] > 1 and p["alpha"] > 1 and p["beta"] >= 0 and 0 <= g <= p["beta"]):
                raise ExperimentError("mixed-peaks needs nu, alpha > 1, beta >= 0, 0 <= gamma <= beta")
        elif self.kind == "berezanskii-power":
            need("beta")
            if not p["beta"] > 1:
                raise ExperimentError("berezanskii-power needs beta > 1")
            if p.get("profile", "zero") not in ("zero", "constant", "relative"):
                raise ExperimentError("profile must be zero, constant or relative")
        else:
            if not ({"lengths", "angles"} <= p.keys() or {"a", "b"} <= p.keys()):
                raise ExperimentError("explicit family needs lengths/angles or a/b")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "n": self.n}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(d["kind"], dict(d.get("params", {})), int(d.get("n", DEFAULT_N)))


@dataclass(frozen=True)
class Family:
    spec: FamilySpec
    hamiltonian: HamburgerHamiltonian
    tails: B.Tails
    jacobi: Optional[JacobiParameters] = None
    notes: dict = field(default_factory=dict)


def _hurwitz(s: float, q: float) -> float:
    return float(zeta(s, q)) if s > 1 else math.inf


def _power_steps(n: int, beta: float) -> np.ndarray:
    j = np.arange(1, n, dtype=float)
    return np.arcsin(np.minimum(1.0, j ** -beta))


def _angles_from_steps(steps: np.ndarray, phi1: float = 0.0) -> np.ndarray:
    return phi1 + np.concatenate(([0.0], np.cumsum(steps)))


def _pure_power(spec: FamilySpec) -> Family:
    a, b, n = spec.params["alpha"], spec.params["beta"], spec.n
    j = np.arange(1, n + 1, dtype=float)
    steps = _power_steps(n, b)
    tl = lambda N: _hurwitz(a, N + 1)
    H = HamburgerHamiltonian(j ** -a, _angles_from_steps(steps), tl, steps)
    ts = (lambda N: _hurwitz(b, N + 1)) if b > 1 else None
    return Family(spec, H, B.Tails(tl, ts, None))


def _alternating(spec: FamilySpec) -> Family:
    a0, a1, n = spec.params["alpha0"], spec.params["alpha1"], spec.n
    j = np.arange(1, n + 1)
    l = np.where(j % 2 == 0, j.astype(float) ** -a0, j.astype(float) ** -a1)

    def tl(N):
        e0 = 2 * (N // 2 + 1)  # first even index > N
        o0 = N + 1 if N % 2 == 0 else N + 2  # first odd index > N
        return 2.0 ** -a0 * float(zeta(a0, e0 / 2)) + 2.0 ** -a1 * float(zeta(a1, o0 / 2))

    angles = j * (np.pi / 4)
    steps = np.full(n - 1, np.pi / 4)
    H = HamburgerHamiltonian(l, angles, tl, steps)
    return Family(spec, H, B.Tails(tl, None, None))


def zigzag_steps(n: int, beta: float, gamma: float, psi: float = 0.0) -> np.ndarray:
    """Angle steps with |sin dphi_j| = min(1, j^-beta) kept inside |phi_j - psi| <= j^-gamma / 2.

    The walk keeps its direction while the next angle stays inside the
    envelope and turns toward psi otherwise.
    """
    d = np.arcsin(np.minimum(1.0, np.arange(1, n, dtype=float) ** -beta))
    steps = np.empty(n - 1)
    phi, sign = 0.0, 1.0
    for k in range(n - 1):
        env = 0.5 * (k + 2.0) ** -gamma
        if abs(phi + sign * d[k]) > env:
            sign = -1.0 if phi > 0 else 1.0
        steps[k] = sign * d[k]
        phi += steps[k]
    return steps


def measured_rates(H: HamburgerHamiltonian, psi: float = 0.0) -> dict:
    """Fitted decay exponents of |sin dphi_j| and of the envelope of |sin(phi_j - psi)|."""
    n = H.n
    j = np.arange(1, n + 1, dtype=float)
    lo = max(n // 100, 1)
    s = np.abs(np.sin(H.steps))[lo - 1:]
    beta = -np.polyfit(np.log(j[lo - 1:n - 1]), np.log(s), 1)[0]
    w = np.abs(np.sin(H.angles - psi))
    env = np.maximum.accumulate(w[::-1])[::-1][lo - 1:]
    pos = env > 0
    gamma = -np.polyfit(np.log(j[lo - 1:][pos]), np.log(env[pos]), 1)[0] if pos.sum() > 2 else math.inf
    return {"beta": float(beta), "gamma": float(gamma)}


def _mixed(spec: FamilySpec) -> Family:
    p = spec.params
    a, nu, b, n = p["alpha"], p["nu"], p["beta"], spec.n
    g = p.get("gamma", 0.0)
    j = np.arange(1, n + 1, dtype=float)
    l = j ** -a
    k = np.arange(1, int(math.isqrt(n)) + 1)
    l[k * k - 1] = (k * k).astype(float) ** (-nu / 2)

    def tl(N):
        k0 = math.isqrt(N) + 1
        return _hurwitz(a, N + 1) - float(zeta(2 * a, k0)) + float(zeta(nu, k0))

    steps = zigzag_steps(n, b, g)
    H = HamburgerHamiltonian(l, _angles_from_steps(steps), tl, steps)
    ts = (lambda N: _hurwitz(b, N + 1)) if b > 1 else None
    rates = measured_rates(H)
    notes = {"target": {"beta": b, "gamma": g}, "measured": rates}
    return Family(spec, H, B.Tails(tl, ts, None), notes=notes)


def berezanskii_jacobi(beta: float, n: int, profile: str = "zero", value: float = 0.0) -> JacobiParameters:
    b = np.arange(1, n + 1, dtype=float) ** beta
    if profile == "zero":
        a = np.zeros(n)
    elif profile == "constant":
        a = np.full(n, float(value))
    else:
        a = np.zeros(n)
        a[1:] = -2.0 * value * np.sqrt(b[:-1] * b[1:])
    return JacobiParameters(a, b)


def _berezanskii(spec: FamilySpec) -> Family:
    p = spec.params
    beta = p["beta"]
    J = berezanskii_jacobi(beta, spec.n - 1, p.get("profile", "zero"), p.get("value", 0.0))
    H0 = jacobi_to_hamiltonian(J)
    # l_j ~ C j^-beta; C from the last decade makes an asymptotic tail rule
    m = H0.n
    jj = np.arange(m - m // 10, m + 1, dtype=float)
    C = float(np.mean(H0.lengths[m - m // 10 - 1:] * jj ** beta))
    tl = lambda N: C * _hurwitz(beta, N + 1)
    H = HamburgerHamiltonian(H0.lengths, H0.angles, tl, H0.steps)
    return Family(spec, H, B.Tails(tl, None, None), J, {"tail": "asymptotic", "tail_constant": C})


def _explicit(spec: FamilySpec) -> Family:
    p = spec.params
    if "lengths" in p:
        H = HamburgerHamiltonian(p["lengths"], p["angles"], steps=p.get("steps"))
        return Family(spec, H, B.Tails())
    J = JacobiParameters(p["a"], p["b"])
    return Family(spec, jacobi_to_hamiltonian(J), B.Tails(), J)


_GENERATORS = {
    "pure-power": _pure_power,
    "alternating-power": _alternating,
    "mixed-peaks": _mixed,
    "berezanskii-power": _berezanskii,
    "explicit": _explicit,
}


def generate(spec: FamilySpec) -> Family:
    return _GENERATORS[spec.kind](spec)


@dataclass(frozen=True)
class OrderFit:
    slope: float
    intercept: float
    residual: float
    r_window: tuple
    r: np.ndarray
    log_w22: np.ndarray
    n_used: np.ndarray
    reasons: tuple

    @property
    def truncation_limited(self) -> int:
        return sum(1 for x in self.reasons if x == "truncation-limited")

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "residual": self.residual,
                "r_window": list(self.r_window), "truncation_limited": self.truncation_limited}


def evaluate_w22(family: Family, r, n_min: int = 1024, tol: float = TRUNCATION_TOL):
    """log|w22(ir)| per r with the truncation rule applied at doubling checkpoints."""
    H = family.hamiltonian
    cks = doubling_checkpoints(H.n, min(n_min, H.n))
    if family.tails.lengths is not None:
        tails = np.array([family.tails.lengths(int(c)) for c in cks])
    else:
        tails = np.full(cks.size, np.inf)
        tails[-1] = 0.0 if family.spec.kind == "explicit" else np.inf
    return w22_with_truncation(H, r, cks, tails, tol)


def order_fit(family: Family, r_lo: float, r_hi: float, points: Optional[int] = None,
              per_decade: int = 20) -> OrderFit:
    """Least-squares slope of log log|w22(ir)| against log r on a geometric grid."""
    if r_hi / r_lo < 100:
        raise ExperimentError("need r_hi / r_lo >= 100")
    if points is not None:
        if points < 10:
            raise ExperimentError("need at least 10 points")
        r = np.geomspace(r_lo, r_hi, points)
    else:
        r = B.geometric_grid(r_lo, r_hi, per_decade)
    res = evaluate_w22(family, r)
    v = res.values
    if np.any(~np.isfinite(v)) or np.any(v <= 0):
        raise ExperimentError("log|w22(ir)| is not positive on the whole grid")
    x, y = np.log(r), np.log(v)
    slope, intercept = np.polyfit(x, y, 1)
    rms = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return OrderFit(float(slope), float(intercept), rms, (r_lo, r_hi), r, v, res.n_used, res.reason)


# ---------------------------------------------------------------- sandwich

def _exponents(family: Family) -> dict:
    """Nominal alpha0, beta0 (and profile info) of a preset."""
    p, kind = family.spec.params, family.spec.kind
    if kind == "pure-power":
        return {"alpha0": p["alpha"], "beta0": p["beta"]}
    if kind == "alternating-power":
        return {"alpha0": p["alpha0"], "beta0": 0.0}
    if kind == "mixed-peaks":
        return {"alpha0": min(p["alpha"], p["nu"]), "beta0": p["beta"]}
    if kind == "berezanskii-power":
        return {"alpha0": p["beta"], "beta0": None}
    return {}


def upper_curves(family: Family, r) -> list[B.BoundCurve]:
    """Upper-bound curves with parameters just inside the admissible ranges."""
    H, kind = family.hamiltonian, family.spec.kind
    ex = _exponents(family)
    out = []
    if kind == "alternating-power" or kind == "berezanskii-power":
        a = ex["alpha0"] - EPS
        out.append(B.upper_k79_curve(H, a, a, 0.0, r))
        return out
    if kind in ("pure-power", "mixed-peaks"):
        a0, b0 = ex["alpha0"], ex["beta0"]
        a = max(1.0, a0 - EPS)
        if b0 > 1:
            out.append(B.upper_k89_curve(H, a, max(1.0, b0 - EPS), r))
            out.append(B.upper_k66_curve(H, r, family.tails))
        else:
            bb = min(max(b0 - EPS, EPS), 1 - EPS)
            out.append(B.upper_k49_curve(H, a, bb, None, r, family.tails))
            out.append(B.upper_k49_curve(H, a, bb, None, r, family.tails, variant="literal"))
        out.append(B.upper_k79_curve(H, a, a, 0.0, r))
        return out
    out.append(B.upper_k79_curve(H, 1.0, 1.0, 0.0, r))
    return out


def _box(family: Family) -> Optional[dict]:
    p, kind = family.spec.params, family.spec.kind
    try:
        if kind == "pure-power":
            return B.order_box(p["alpha"], p["beta"], case="K74").to_dict()
        if kind == "alternating-power":
            # omega0 = alpha0 with psi = 0; lower bound from b^(3)
            return B.order_box(p["alpha0"], omega0=p["alpha0"], case="K94",
                               lower=1 / p["alpha0"]).to_dict()
        if kind == "mixed-peaks":
            case = "case1" if p["beta"] > 1 else ("case2" if p.get("gamma", 0) == p["beta"] else
                                                 "case4" if p.get("gamma", 0) > 0 else "case3")
            return B.order_box(p["alpha"], p["beta"], case=case, nu=p["nu"],
                               gamma=p.get("gamma")).to_dict()
        if kind == "berezanskii-power":
            return B.order_box(p["beta"], omega0=p["beta"], case="K94", lower=1 / p["beta"]).to_dict()
    except B.BoundsError as exc:
        return {"error": str(exc)}
    return None


def asserted_order(spec: FamilySpec) -> Optional[float]:
    """Order the family is known to have, when the data determine it."""
    p = spec.params
    if spec.kind == "alternating-power":
        return 1 / p["alpha0"]
    if spec.kind == "pure-power" and p["alpha"] + p["beta"] >= 2:
        return 1 / (p["alpha"] + p["beta"])
    if spec.kind == "berezanskii-power" and p.get("profile", "zero") == "zero":
        return 1 / p["beta"]
    if spec.kind == "mixed-peaks" and p["nu"] >= p["alpha"]:
        if p["beta"] > 1 or p.get("gamma", 0) == p["beta"]:
            return 1 / (p["alpha"] + p["beta"])
    return None


@dataclass
class SandwichReport:
    spec: FamilySpec
    fit: OrderFit
    lower: dict
    upper: dict
    box: Optional[dict]
    asserted: Optional[float]
    tol: float
    curves: list
    extra: dict

    @property
    def best_lower(self) -> float:
        vals = [v for k, v in self.lower.items() if k.startswith("lower-count") and np.isfinite(v)]
        return max(vals) if vals else math.nan

    @property
    def best_upper(self) -> float:
        vals = [v for k, v in self.upper.items() if np.isfinite(v) and "literal" not in k]
        return min(vals) if vals else math.nan

    @property
    def passed(self) -> bool:
        a = self.fit.slope
        return bool(self.best_lower <= a + self.tol and a <= self.best_upper + self.tol)

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "fit": self.fit.to_dict(),
                "lower_slopes": self.lower, "upper_slopes": self.upper,
                "best_lower": self.best_lower, "best_upper": self.best_upper,
                "order_box": self.box, "asserted_order": self.asserted,
                "tolerance": self.tol, "pass": self.passed, **self.extra}


def sandwich_report(family: Family, r_lo: float = 1e4, r_hi: float = 1e8, per_decade: int = 20,
                    tol: float = 0.05) -> SandwichReport:
    fit = order_fit(family, r_lo, r_hi, per_decade=per_decade)
    r = fit.r
    H = family.hamiltonian
    curves = []
    lower = {}
    for s in (2, 3, 4):
        c = B.lower_count_curve(H, s, r)
        curves.append(c)
        lower[f"lower-count:s={s}"] = c.slope()
    for s in (2, 3, 4):
        # the k4 curve is a valid bound only once h(r) sits inside the truncation
        c = B.lower_k4_curve(H, s, r)
        curves.append(c)
        lower[f"lower-k4:s={s}"] = c.slope()
    upper = {}
    for c in upper_curves(family, r):
        curves.append(c)
        key = c.method + ":" + ",".join(f"{k}={v:g}" for k, v in c.meta.items()
                                        if k in ("alpha", "beta", "omega") and v is not None)
        upper[key] = c.slope()
    extra = {}
    if family.jacobi is not None:
        J = family.jacobi.truncate(min(family.jacobi.n, 2 ** 20))
        extra["berezanskii_check"] = berezanskii_check(J).to_dict()
    if family.notes:
        extra["notes"] = family.notes
    if family.spec.kind == "mixed-peaks":
        p = family.spec.params
        extra["case_table"] = B.mixed_case_table(p["alpha"], p["nu"], p["beta"], p.get("gamma"))
    return SandwichReport(family.spec, fit, lower, upper, _box(family),
                          asserted_order(family.spec), tol, curves, extra)


PRESETS = {
    "alternating-power": FamilySpec("alternating-power", {"alpha0": 2.0, "alpha1": 3.0}, 2 ** 23),
    "pure-power": FamilySpec("pure-power", {"alpha": 2.0, "beta": 1.0}),
    "berezanskii": FamilySpec("berezanskii-power", {"beta": 2.0}),
    "mixed-peaks": FamilySpec("mixed-peaks", {"alpha": 2.0, "nu": 4.0, "beta": 0.5}, 2 ** 22),
}


def preset(name: str, **overrides) -> FamilySpec:
    """A named preset with parameter overrides (``n`` sets the truncation)."""
    if name not in PRESETS:
        raise ExperimentError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    base = PRESETS[name]
    params = dict(base.params)
    n = int(overrides.pop("n", base.n))
    if name == "mixed-peaks" and "case" in overrides:
        case = int(overrides.pop("case"))
        params.update({1: {"beta": 1.5, "gamma": 0.0}, 2: {"beta": 0.5, "gamma": 0.5},
                       3: {"beta": 0.5, "gamma": 0.0}, 4: {"beta": 0.5, "gamma": 0.25}}[case])
    params.update(overrides)
    return FamilySpec(base.kind, params, n)
