"""Convergence exponents, l^p sums, tails and a finite-data summability heuristic."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp

MIN_ESTIMATION_LENGTH = 64

METHODS = ("ratio-limsup", "counting-slope", "exact-power")


@dataclass(frozen=True)
class ExponentEstimate:
    value: float
    method: str
    window: tuple[int, int]
    residual: float


def convergence_exponent(seq, method: str = "counting-slope", power: Optional[float] = None) -> ExponentEstimate:
    """Estimate inf{a > 0 : sum seq_n^(-a) < inf}.

    ``ratio-limsup`` takes max log n / log alpha_n over the top decade of the
    sorted sequence; ``counting-slope`` regresses log N(r) on log r over the
    two decades of values below the truncation horizon; ``exact-power``
    returns 1/power for data the caller declares to grow like n^power.
    """
    if method == "exact-power":
        if power is None or power <= 0:
            raise ValueError("exact-power needs a positive declared power")
        n = len(seq) if seq is not None else 0
        return ExponentEstimate(1.0 / power, method, (0, n), 0.0)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    raw = np.asarray(seq, dtype=float)
    if raw.size < MIN_ESTIMATION_LENGTH:
        raise ValueError(f"need at least {MIN_ESTIMATION_LENGTH} terms, got {raw.size}")
    if not np.all(raw > 0):
        raise ValueError("sequence must be positive")
    alpha = np.sort(raw[np.isfinite(raw)])
    n_total = alpha.size
    ranks = np.arange(1, n_total + 1, dtype=float)
    if method == "ratio-limsup":
        lo = max(n_total // 10, 1)
        idx = np.arange(lo - 1, n_total)
        idx = idx[alpha[idx] > 1.0]
        if idx.size == 0:
            raise ValueError("top decade has no terms above 1")
        ratios = np.log(ranks[idx]) / np.log(alpha[idx])
        return ExponentEstimate(max(float(ratios.max()), 0.0), method, (int(idx[0]), n_total),
                                float(ratios.std()))
    log_a = np.log(alpha)
    # N(r) is only complete below the values still to come past the truncation;
    # the smallest term among the last tenth of indices stands in for that horizon
    horizon = math.log(raw[raw.size - raw.size // 10:].min())
    sel = (log_a >= horizon - math.log(100.0)) & (log_a <= horizon)
    # N(r) at r = alpha_n counts ties: keep the last rank of each distinct value
    keep = np.r_[np.diff(log_a[sel]) > 0, True]
    xs = log_a[sel][keep]
    ys = np.log(ranks[sel][keep])
    if xs.size < 2:
        raise ValueError("top two decades contain fewer than two distinct values")
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    used = np.flatnonzero(sel)
    return ExponentEstimate(max(float(slope), 0.0), method, (int(used[0]), int(used[-1]) + 1), resid)


def log_lp_sum(seq, p: float) -> float:
    """log sum seq_j^p, evaluated without forming the powers."""
    if p <= 0:
        raise ValueError("p must be positive")
    x = np.asarray(seq, dtype=float)
    x = x[x > 0]
    if x.size == 0:
        return -math.inf
    return float(logsumexp(p * np.log(x)))


def lp_sum(seq, p: float) -> float:
    return math.exp(log_lp_sum(seq, p))


def largest_term_index(seq) -> int:
    return int(np.argmax(np.asarray(seq, dtype=float)))


@dataclass(frozen=True)
class TailSum:
    value: float
    truncation_only: bool


def tail_sum(source, n: int) -> TailSum:
    """sum_{j>n} of a sequence (1-based j) or of a generator with an analytic tail.

    ``source`` may expose ``tail(n)``, be a plain callable ``n -> tail``, or be
    a finite sequence, in which case the truncated sum is returned and flagged.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    tail = getattr(source, "tail", None)
    if callable(tail):
        return TailSum(float(tail(n)), False)
    if callable(source):
        return TailSum(float(source(n)), False)
    x = np.asarray(source, dtype=float)
    return TailSum(float(math.fsum(x[n:])) if n < x.size else 0.0, True)


SUMMABLE = "appears summable"
DIVERGENT = "appears divergent"
INCONCLUSIVE = "inconclusive"


def classify_series(terms) -> str:
    """Heuristic verdict on sum(terms) from the last decade of a finite run.

    Summable if the last-decade increment is below 1e-6 of the total or the
    terms decay at least like n^-1.2; divergent if the terms are
    nondecreasing over the last decade or decay no faster than n^-1.05.
    """
    t = np.abs(np.asarray(terms, dtype=float))
    n = t.size
    if n < 20:
        return INCONCLUSIVE
    total = math.fsum(t)
    if total == 0.0:
        return SUMMABLE
    lo = n // 10
    window = t[lo:]
    if math.fsum(window) < 1e-6 * total:
        return SUMMABLE
    if np.all(np.diff(window) >= -1e-12 * np.abs(window[1:])):
        return DIVERGENT
    idx = np.arange(lo + 1, n + 1, dtype=float)
    pos = window > 0
    if pos.sum() < 5:
        return INCONCLUSIVE
    # decay of the running upper envelope, robust to interlaced zeros
    env = np.maximum.accumulate(window[pos][::-1])[::-1]
    decay = -np.polyfit(np.log(idx[pos]), np.log(env), 1)[0]
    if decay >= 1.2:
        return SUMMABLE
    if decay <= 1.05:
        return DIVERGENT
    return INCONCLUSIVE
