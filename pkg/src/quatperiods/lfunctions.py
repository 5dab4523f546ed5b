"""Floating-point central values of twisted L-functions via the smoothed
approximate functional equation, and a numeric probe for the sign.

This is the only module that leaves exact arithmetic. The series
L(s) = sum a_n chi_delta(n) n^{-s} is completed with gamma factor
(2 pi)^{-s} Gamma(s) and conductor M = delta^2 * prod of the level primes
coprime to delta; the Mellin integral split at y0 gives

    lambda(s) = sum_n a_n chi(n) (2 pi n)^{-s} [ Gamma(s, 2 pi n y0)
                + eps * M^{k/2-s} (2 pi n / M ... ) ]   (s = k/2 here)

with upper incomplete Gammas, which for integer s = k/2 are elementary.
Working accuracy is ~1e-12 at the recommended cutoff; decision thresholds in
the acceptance suite are far looser (1e-3 / 1e-6).
"""

from __future__ import annotations

from math import exp, factorial, pi, sqrt

import numpy as np

from . import quadratic

CUTOFF_CONSTANT = 10  # terms per unit of sqrt(conductor); tail < e^-60


class InsufficientCoefficients(ValueError):
    def __init__(self, needed: int, have: int):
        super().__init__(f"need coefficients up to n = {needed}, have {have}")
        self.needed = needed
        self.have = have


class AmbiguousSign(RuntimeError):
    pass


def conductor(level: int, delta: int) -> int:
    """Conductor of the twisted newform: delta^2 times the level primes that
    stay coprime to delta (a level prime dividing delta is absorbed)."""
    m = delta * delta
    for p in quadratic.prime_factors(level):
        if delta % p != 0:
            m *= p
    return m


def required_cutoff(level: int, delta: int) -> int:
    return int(CUTOFF_CONSTANT * sqrt(level) * abs(delta)) + 1


def chi_values(delta: int, nmax: int) -> np.ndarray:
    """chi_delta(n) for 0 <= n <= nmax as an int8 array (multiplicative
    sieve; one Kronecker evaluation per prime)."""
    chi = np.zeros(nmax + 1, dtype=np.int8)
    if nmax >= 1:
        chi[1] = 1
    spf = _smallest_prime_factors(nmax)
    cache = {}
    for n in range(2, nmax + 1):
        p = spf[n]
        cp = cache.get(p)
        if cp is None:
            cp = cache[p] = quadratic.kronecker(delta, p)
        chi[n] = cp * chi[n // p]
    return chi


_SPF_CACHE: dict[int, np.ndarray] = {}


def _smallest_prime_factors(nmax: int) -> np.ndarray:
    for size, table in _SPF_CACHE.items():
        if size >= nmax:
            return table
    spf = np.arange(nmax + 1, dtype=np.int64)
    for p in range(2, int(sqrt(nmax)) + 1):
        if spf[p] == p:
            sl = spf[p * p::p]
            sl[sl == np.arange(p * p, nmax + 1, p)] = p
    _SPF_CACHE.clear()
    _SPF_CACHE[nmax] = spf
    return spf


def _upper_gamma_int(m: int, x: np.ndarray) -> np.ndarray:
    """Gamma(m, x) for integer m >= 1: (m-1)! e^-x sum_{j<m} x^j / j!."""
    acc = np.zeros_like(x)
    term = np.ones_like(x)
    for j in range(m):
        acc += term
        term = term * x / (j + 1)
    return factorial(m - 1) * np.exp(-x) * acc


def _weighted_sum(a, chi, k: int, scale: float, nmax: int) -> float:
    """sum_{n<=nmax} a_n chi(n) (2 pi n)^{-k/2} Gamma(k/2, 2 pi n * scale)."""
    n = np.arange(1, nmax + 1, dtype=np.float64)
    an = np.asarray(a[1:nmax + 1], dtype=np.float64)
    cn = chi[1:nmax + 1].astype(np.float64)
    twopin = 2.0 * pi * n
    weights = _upper_gamma_int(k // 2, twopin * scale)
    return float(np.sum(an * cn * twopin ** (-(k // 2)) * weights))


def _prepare(a, k, level, delta, nmax):
    if delta >= 0 or not quadratic.is_fundamental(delta):
        raise ValueError(f"{delta} is not a negative fundamental discriminant")
    if k % 2 != 0:
        raise ValueError("even weight required")
    needed = required_cutoff(level, delta) if nmax is None else nmax
    if len(a) - 1 < needed:
        raise InsufficientCoefficients(needed, len(a) - 1)
    return needed, conductor(level, delta), chi_values(delta, needed)


def twisted_central_value(a, k: int, level: int, delta: int, epsilon: int,
                          tol: float = 1e-8, nmax: int | None = None) -> float:
    """L(f x chi_delta, k/2) from the coefficients a (index = n).

    ``epsilon`` is the functional equation sign (from the root-number
    computation); epsilon = -1 makes the central value exactly 0 and this
    returns 0.0 by the symmetric formula.
    """
    needed, m, chi = _prepare(a, k, level, delta, nmax)
    s = _weighted_sum(a, chi, k, 1.0 / sqrt(m), needed)
    lam = (1 + epsilon) * s
    return lam * (2.0 * pi) ** (k // 2) / factorial(k // 2 - 1)


def functional_equation_sign_probe(a, k: int, level: int, delta: int,
                                   tol: float = 1e-8, nmax: int | None = None) -> int:
    """Solve for the functional equation sign numerically.

    The completed value lambda(k/2) computed from a split of the Mellin
    integral at y0 is F(y0) + eps * G(y0) for every y0 > 0; two split points
    give one linear equation for eps. Raises AmbiguousSign unless the
    solution is within tolerance of +1 or -1.
    """
    needed, m, chi = _prepare(a, k, level, delta, nmax)
    root = sqrt(m)
    c = 1.35
    w_plus = _weighted_sum(a, chi, k, c / root, needed)       # split at c/sqrt(M)
    w_zero = _weighted_sum(a, chi, k, 1.0 / root, needed)     # symmetric split
    w_minus = _weighted_sum(a, chi, k, 1.0 / (c * root), needed)
    # lambda = W(c) + eps*W(1/c) = (1 + eps)*W(1), so
    # eps = (W(1) - W(c)) / (W(1/c) - W(1)) whenever the denominator is live
    denom = w_minus - w_zero
    scale = max(abs(w_plus), abs(w_zero), abs(w_minus), 1e-300)
    if abs(denom) < 1e-9 * scale:
        raise AmbiguousSign("split points do not separate the sign; reduce tol "
                            "or increase the coefficient cutoff")
    eps = (w_zero - w_plus) / denom
    margin = max(tol * 100, 1e-4)
    if abs(eps - 1) < margin:
        return 1
    if abs(eps + 1) < margin:
        return -1
    raise AmbiguousSign(f"numeric sign {eps} is not close to +1 or -1")
