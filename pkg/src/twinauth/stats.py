"""Minimal statistics helpers for the randomness checks.

chi2_sf implements the survival function of the chi-square distribution via
the regularized incomplete gamma function (series expansion for small
arguments, Lentz continued fraction otherwise), so the bit-uniformity test
needs no heavyweight dependency.
"""

from __future__ import annotations

import math

_MAX_ITER = 500
_EPS = 3e-14
_TINY = 1e-300


def _gamma_p_series(a: float, x: float) -> float:
    # P(a, x) by series: x < a + 1
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    # Q(a, x) by Lentz's continued fraction: x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def gammainc_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x)."""
    if a <= 0 or x < 0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_p_series(a, x)
    return _gamma_q_contfrac(a, x)


def chi2_sf(x: float, df: int) -> float:
    """P[X >= x] for X ~ chi-square with df degrees of freedom."""
    if df <= 0:
        raise ValueError("df must be positive")
    if x <= 0:
        return 1.0
    return gammainc_q(df / 2.0, x / 2.0)


def bit_uniformity_pvalue(samples: list[bytes]) -> float:
    """Chi-square test that every bit position of the samples is unbiased."""
    if not samples:
        raise ValueError("no samples")
    width = len(samples[0]) * 8
    n = len(samples)
    counts = [0] * width
    for sample in samples:
        value = int.from_bytes(sample, "big")
        for bit in range(width):
            if value >> bit & 1:
                counts[bit] += 1
    expected = n / 2.0
    stat = sum((c - expected) ** 2 / expected for c in counts) * 2.0
    # times 2: ones and zeros cells both contribute (obs-exp)^2/exp
    return chi2_sf(stat, width)
