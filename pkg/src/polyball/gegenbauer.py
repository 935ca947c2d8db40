"""Gegenbauer (ultraspherical) polynomials C_m^lambda.

Two evaluation routes are provided on purpose: the three-term recurrence

    m C_m = 2 t (m + lambda - 1) C_{m-1} - (m + 2 lambda - 2) C_{m-2},
    C_0 = 1,  C_1 = 2 lambda t,

which is the stable route for |t| <= 1, and the explicit alternating sum

    C_m(t) = sum_k (-1)^k  (lambda)_{m-k} / (k! (m-2k)!)  (2t)^{m-2k},

where (lambda)_j is the rising product lambda (lambda+1) ... (lambda+j-1).
Exact rational coefficient arrays (as polynomials in t) back the kernel
algebra elsewhere in the package.

Degrees m < 0 evaluate to 0 everywhere; this convention makes difference
expressions like C_m - C_{m-2p} valid for every m >= 0.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "gegenbauer",
    "gegenbauer_explicit",
    "gegenbauer_coefficients",
    "generating_function",
    "generating_partial_sum",
]


def _check_lambda(lam) -> float:
    lamf = float(lam)
    if not (lamf > 0):
        raise ValueError("lambda must be positive")
    return lamf


def gegenbauer(lam, m: int, t):
    """C_m^lambda(t) by the three-term recurrence; m < 0 gives 0.

    ``t`` may be a scalar (real or complex) or an ndarray; the result has
    the matching shape.
    """
    lamf = _check_lambda(lam)
    m = int(m)
    scalar = np.ndim(t) == 0
    tv = np.asarray(t, dtype=complex)
    if m < 0:
        out = np.zeros_like(tv)
        return complex(out) if scalar else out
    prev = np.ones_like(tv)  # C_0
    if m == 0:
        return complex(prev) if scalar else prev
    cur = 2.0 * lamf * tv  # C_1
    for k in range(2, m + 1):
        prev, cur = cur, (2.0 * tv * (k + lamf - 1.0) * cur
                          - (k + 2.0 * lamf - 2.0) * prev) / k
    return complex(cur) if scalar else cur


def gegenbauer_explicit(lam, m: int, t):
    """C_m^lambda(t) by the explicit alternating sum (oracle route).

    Real scalar arguments are accumulated in exact rational arithmetic (a
    float is an exact rational, so the only rounding is the final
    conversion): the alternating sum cancels catastrophically in floating
    point for large m, which would make the oracle useless at the
    tolerances it is meant to certify.  Complex or array arguments fall
    back to a floating-point loop and inherit that cancellation.
    """
    m = int(m)
    if np.ndim(t) == 0 and not isinstance(t, complex):
        lamq = Fraction(lam)
        if lamq <= 0:
            raise ValueError("lambda must be positive")
        if m < 0:
            return 0j
        half = m // 2
        tq = Fraction(t)
        u = 4 * tq * tq  # (2t)^2, Horner variable
        acc = Fraction(0)
        for k in range(half + 1):
            rising = Fraction(1)
            for j in range(m - k):
                rising *= lamq + j
            coef = rising / (math.factorial(k) * math.factorial(m - 2 * k))
            acc = acc * u + (-1) ** k * coef
        if m % 2:
            acc *= 2 * tq
        return complex(acc)
    lamf = _check_lambda(lam)
    if m < 0:
        return 0.0 * t if np.ndim(t) else 0j
    tv = np.asarray(t, dtype=complex)
    total = np.zeros_like(tv)
    for k in range(m // 2 + 1):
        rising = 1.0
        for j in range(m - k):
            rising *= lamf + j
        coef = rising / (math.factorial(k) * math.factorial(m - 2 * k))
        total = total + (-1) ** k * coef * (2.0 * tv) ** (m - 2 * k)
    return complex(total) if np.ndim(t) == 0 else total


@lru_cache(maxsize=None)
def _coeff_table(lam: Fraction, m: int) -> tuple:
    if m < 0:
        return ()
    if m == 0:
        return (Fraction(1),)
    if m == 1:
        return (2 * lam,)
    prev2 = _coeff_table(lam, m - 2)
    prev1 = _coeff_table(lam, m - 1)
    out = []
    for k in range(m // 2 + 1):
        a = 2 * (m + lam - 1) * prev1[k] if k < len(prev1) else Fraction(0)
        b = (m + 2 * lam - 2) * prev2[k - 1] if 1 <= k <= len(prev2) else Fraction(0)
        out.append((a - b) / m)
    return tuple(out)


def gegenbauer_coefficients(lam, m: int) -> tuple:
    """Exact coefficients (c_0, ..., c_{floor(m/2)}) of C_m^lambda in t.

    C_m^lambda(t) = sum_k c_k t^{m-2k}, each c_k a Fraction.  ``lam`` must
    be a positive rational (int, Fraction, or numerator/denominator string).
    Empty tuple for m < 0.
    """
    lamq = Fraction(lam)
    if lamq <= 0:
        raise ValueError("lambda must be positive")
    return _coeff_table(lamq, int(m))


def generating_function(lam, t, w) -> complex:
    """Closed form (1 - 2 t w + w^2)^{-lambda} on the principal branch."""
    from .geometry import principal_power

    lamf = _check_lambda(lam)
    base = 1.0 - 2.0 * complex(t) * complex(w) + complex(w) ** 2
    if abs(base) < 1e-14:
        raise ValueError("generating function is singular at these arguments")
    return principal_power(base, -lamf)


def generating_partial_sum(lam, t, w, max_degree: int) -> complex:
    """sum_{m=0}^{max_degree} C_m^lambda(t) w^m, for |t| <= 1 and |w| < 1."""
    lamf = _check_lambda(lam)
    t = complex(t)
    w = complex(w)
    if abs(t) > 1.0 + 1e-12:
        raise ValueError("partial sums require |t| <= 1")
    if abs(w) >= 1.0:
        raise ValueError("partial sums require |w| < 1")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    total = 0j
    prev = 1.0 + 0j  # C_0
    cur = 2.0 * lamf * t  # C_1
    wm = 1.0 + 0j
    for m in range(max_degree + 1):
        if m == 0:
            val = prev
        elif m == 1:
            val = cur
        else:
            prev, cur = cur, (2.0 * t * (m + lamf - 1.0) * cur
                              - (m + 2.0 * lamf - 2.0) * prev) / m
            val = cur
        total += val * wm
        wm *= w
    return total
