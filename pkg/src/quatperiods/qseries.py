"""Exact q-expansions: eta products, Eisenstein series, truncated series
arithmetic, and Hecke-projection construction of the two newforms that are
not eta products.

A series is a plain list ``a`` of ints with ``a[n]`` the coefficient of q^n
(index 0 included). Multiplication is exact via Kronecker substitution: pack
coefficients into a big integer, multiply (gmpy2), unpack with borrow
propagation. Everything downstream (Hecke eigenvalue checks, L-values) reads
plain integer coefficient lists.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import gmpy2


def _pack_signed(coeffs, width):
    """Value of the polynomial at 2**(8*width), as an mpz (signed exact)."""
    pos = bytearray(width * len(coeffs))
    neg = bytearray(width * len(coeffs))
    for idx, c in enumerate(coeffs):
        if c > 0:
            pos[idx * width:(idx + 1) * width] = c.to_bytes(width, "little")
        elif c < 0:
            neg[idx * width:(idx + 1) * width] = (-c).to_bytes(width, "little")
    return gmpy2.mpz(int.from_bytes(bytes(pos), "little")) - \
        gmpy2.mpz(int.from_bytes(bytes(neg), "little"))


def mul_trunc(a: list[int], b: list[int], length: int) -> list[int]:
    """Exact product of integer polynomials, truncated to ``length`` coeffs.

    Kronecker substitution: evaluate both at a power of two wide enough that
    product coefficients cannot collide, multiply once, read balanced digits
    back off with borrow propagation.
    """
    a = a[:length]
    b = b[:length]
    if not a or not b:
        return [0] * length
    max_a = max(1, max(abs(x) for x in a))
    max_b = max(1, max(abs(x) for x in b))
    bound = max_a * max_b * min(len(a), len(b))
    bits = max(bound.bit_length() + 2, 8)
    bits = (bits + 7) // 8 * 8
    width = bits // 8

    prod = _pack_signed(a, width) * _pack_signed(b, width)
    nout = min(length, len(a) + len(b) - 1)
    # GMP-side reduction: CPython's % on multi-megabit ints is quadratic
    raw = int(gmpy2.f_mod_2exp(prod, bits * nout))
    data = raw.to_bytes(width * nout, "little")
    out = []
    carry = 0
    half = 1 << (bits - 1)
    full = 1 << bits
    for idx in range(nout):
        digit = int.from_bytes(data[idx * width:(idx + 1) * width], "little") + carry
        if digit >= half:
            digit -= full
            carry = 1
        else:
            carry = 0
        out.append(digit)
    out.extend([0] * (length - len(out)))
    return out


def pow_trunc(a: list[int], e: int, length: int) -> list[int]:
    result = [1] + [0] * (length - 1)
    base = a[:length]
    while e:
        if e & 1:
            result = mul_trunc(result, base, length)
        e >>= 1
        if e:
            base = mul_trunc(base, base, length)
    return result


def dedekind_eta_factor(length: int) -> list[int]:
    """prod_{n>=1} (1 - q^n) truncated, by the pentagonal number theorem."""
    out = [0] * length
    out[0] = 1
    k = 1
    while True:
        n1 = k * (3 * k - 1) // 2
        n2 = k * (3 * k + 1) // 2
        if n1 >= length and n2 >= length:
            break
        sign = -1 if k % 2 else 1
        if n1 < length:
            out[n1] += sign
        if n2 < length:
            out[n2] += sign
        k += 1
    return out


def eta_product(factors, nmax: int) -> list[int]:
    """Coefficients a_1..a_nmax of prod_m eta(m z)^{r_m}, as a list indexed by
    n (a[0] = 0, a[1] = 1 for a normalized newform).

    ``factors`` is a sequence of (multiplier, exponent). The q-valuation
    sum(m*r)/24 must be a positive integer or ValueError is raised.
    """
    val24 = sum(m * r for m, r in factors)
    if val24 % 24 != 0 or val24 <= 0:
        raise ValueError(f"eta product has fractional q-valuation {val24}/24")
    shift = val24 // 24
    length = nmax + 1 - shift
    if length <= 0:
        return [0] * (nmax + 1)
    series = [1] + [0] * (length - 1)
    for m, r in factors:
        base = dedekind_eta_factor((length + m - 1) // m)
        spread = [0] * length
        for idx in range(0, len(base)):
            if idx * m < length:
                spread[idx * m] = base[idx]
        series = mul_trunc(series, pow_trunc(spread, r, length), length)
    return [0] * shift + series[:nmax + 1 - shift]


def sigma1(nmax: int) -> list[int]:
    """sigma_1(n) for n <= nmax (index 0 unused)."""
    out = [0] * (nmax + 1)
    for d in range(1, nmax + 1):
        for n in range(d, nmax + 1, d):
            out[n] += d
    return out


def eisenstein_weight2(d: int, nmax: int) -> list[int]:
    """d*E_2(d z) - E_2(z): a holomorphic weight-2 form on Gamma_0(d).

    Expansion: (d - 1) + 24 * sum_n (sigma_1(n) - d*sigma_1(n/d)) q^n.
    """
    s = sigma1(nmax)
    out = [0] * (nmax + 1)
    out[0] = d - 1
    for n in range(1, nmax + 1):
        t = s[n] - (d * s[n // d] if n % d == 0 else 0)
        out[n] = 24 * t
    return out


def hecke_tp(a: list[int], p: int, k: int, length: int) -> list[int]:
    """T_p on q-expansions of weight-k forms on Gamma_0(N) for p coprime to N:
    (T_p a)_n = a_{pn} + p^{k-1} a_{n/p}."""
    pk = p ** (k - 1)
    out = [0] * length
    out[0] = (1 + pk) * a[0]
    for n in range(1, length):
        if p * n >= len(a):
            raise ValueError("series too short for Hecke operator")
        t = a[p * n]
        if n % p == 0:
            t += pk * a[n // p]
        out[n] = t
    return out


def _normalize_eigenform(a: list[int]) -> list[int]:
    """Divide by a_1; the result must be an integer series with a_1 = 1."""
    lead = a[1]
    if lead == 0:
        raise ValueError("projection lost the newform component (a_1 = 0)")
    if any(c % lead for c in a):
        raise ValueError("projected eigenform is not integral after normalization")
    return [c // lead for c in a]


def _projected_newform(level: int, weight: int, nmax: int) -> list[int]:
    """Unique newform on Gamma_0(level) of the given weight, by exact Hecke
    projection from eta/Eisenstein products. Supports (6, 6) and (10, 4)."""
    if (level, weight) == (6, 6):
        # seed: (weight-4 eta newform on level 6) * (2E_2(2z) - E_2(z)), cuspidal;
        # S_6(Gamma_0(6)) = new + two oldform copies of eta(z)^6 eta(3z)^6,
        # so one factor (T_5 - a_5(old)) isolates the newform line.
        p = 5
        length = p * nmax + 1
        seed = mul_trunc(eta_product(((1, 2), (2, 2), (3, 2), (6, 2)), length - 1),
                         eisenstein_weight2(2, length - 1), length)
        old = eta_product(((1, 6), (3, 6)), p)
        lam_old = old[p]
        t = hecke_tp(seed, p, weight, nmax + 1)
        proj = [t[n] - lam_old * seed[n] for n in range(nmax + 1)]
        return _normalize_eigenform(proj)
    if (level, weight) == (10, 4):
        # seed: product of two weight-2 Eisenstein forms (not cuspidal);
        # kill the Eisenstein eigenvalue sigma_3(3) = 28 and the level-5
        # oldform eigenvalue a_3(eta(z)^4 eta(5z)^4) = 2 with two T_3 factors.
        p = 3
        length = p * p * nmax + 1
        seed = mul_trunc(eisenstein_weight2(2, length - 1),
                         eisenstein_weight2(5, length - 1), length)
        old = eta_product(((1, 4), (5, 4)), p)
        lam_eis = 1 + p ** (weight - 1)
        lam_old = old[p]
        t1 = hecke_tp(seed, p, weight, p * nmax + 1)
        step = [t1[n] - lam_eis * seed[n] for n in range(p * nmax + 1)]
        t2 = hecke_tp(step, p, weight, nmax + 1)
        proj = [t2[n] - lam_old * step[n] for n in range(nmax + 1)]
        return _normalize_eigenform(proj)
    raise ValueError(f"no projection recipe for level {level}, weight {weight}")


@lru_cache(maxsize=32)
def _oracle_cached(oracle: tuple, nmax: int) -> tuple:
    if oracle[0] == "eta":
        return tuple(eta_product(oracle[1], nmax))
    if oracle[0] == "projection":
        return tuple(_projected_newform(oracle[1], oracle[2], nmax))
    raise ValueError(f"unknown oracle kind {oracle[0]!r}")


def newform_coefficients(oracle, nmax: int) -> list[int]:
    """a_0..a_nmax of the case's newform (a_0 = 0, a_1 = 1)."""
    # grow in jumps so repeated calls with nearby lengths share the cache
    padded = max(64, 1 << nmax.bit_length())
    coeffs = _oracle_cached(oracle, padded)
    return list(coeffs[:nmax + 1])


def check_hecke_multiplicativity(a: list[int], k: int, level: int, up_to: int = 100) -> None:
    """Raise unless a_1 = 1, a_{mn} = a_m a_n for coprime m, n, the p^2
    recursion holds off the level, and a_p^2 = p^{k-2} exactly at p | level."""
    from math import gcd

    if a[1] != 1:
        raise ValueError("not normalized: a_1 != 1")
    for m in range(2, up_to + 1):
        for n in range(2, up_to // m + 1):
            if gcd(m, n) == 1 and a[m * n] != a[m] * a[n]:
                raise ValueError(f"multiplicativity fails at ({m}, {n})")
    for p in (2, 3, 5, 7, 11, 13):
        if p * p > up_to:
            break
        if level % p == 0:
            if a[p] ** 2 != p ** (k - 2):
                raise ValueError(f"Atkin-Lehner relation fails at p = {p}")
        elif a[p * p] != a[p] ** 2 - p ** (k - 1):
            raise ValueError(f"p^2 Hecke recursion fails at p = {p}")
