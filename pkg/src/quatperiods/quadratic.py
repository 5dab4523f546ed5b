"""Imaginary quadratic fields: discriminants, Kronecker symbols, class
numbers by reduced forms, genus parity, Pizer's mod-4 criterion, and ideal
class representatives.

Class numbers are exact counts of reduced primitive binary quadratic forms;
no analytic shortcuts. Desk scale only: square-freeness is by trial division
and is capped at |n| <= 10**6.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

SQUAREFREE_CAP = 10**6


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    if n > SQUAREFREE_CAP:
        raise ValueError(f"square-freeness by trial division capped at {SQUAREFREE_CAP}")
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def is_fundamental(d: int) -> bool:
    """Fundamental discriminant of a quadratic field (either sign, != 0, 1)."""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 0."""
    if n < 0:
        raise ValueError("kronecker implemented for n >= 0")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    # factor of 2 in n
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        twos = 0
        while n % 2 == 0:
            n //= 2
            twos += 1
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi on the odd part, with sign handling via reciprocity
    if a < 0:
        # (a/n) = (-1/n)(|a|/n), (-1/n) = (-1)^((n-1)/2) for odd n > 0
        if n % 4 == 3:
            result = -result
        a = -a
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond desk scale."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """All reduced primitive forms (a, b, c) with b^2 - 4ac = d < 0.

    Reduced: |b| <= a <= c, with b >= 0 when |b| = a or a = c.
    """
    if d >= 0:
        raise ValueError("negative discriminants only")
    if d % 4 not in (0, 1):
        raise ValueError("not a discriminant (d mod 4 must be 0 or 1)")
    forms = []
    b = d % 2
    while 3 * b * b <= -d:
        m = (b * b - d) // 4  # = a*c
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if gcd(gcd(a, b), c) == 1:
                    forms.append((a, b, c))
                    if 0 < b < a and a < c:
                        forms.append((a, -b, c))
            a += 1
        b += 2
    return sorted(forms)


def class_number(d: int) -> int:
    """h(d) for a fundamental discriminant d < 0."""
    if not is_fundamental(d) or d > 0:
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    return len(reduced_forms(d))


def genus_parity(d: int) -> int:
    """Parity of h(d) from genus theory: 1 (odd) iff d in {-4, -8} or
    -d is a prime ≡ 3 mod 4; else 0 (even)."""
    if not is_fundamental(d) or d > 0:
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    if d in (-4, -8):
        return 1
    p = -d
    return 1 if p % 4 == 3 and is_prime(p) else 0


def pizer_mod4(d: int) -> bool:
    """True iff d = -p*q with p ≡ 1 mod 4, q ≡ 3 mod 4 prime and (p/q) = -1,
    which forces h(d) ≡ 2 mod 4."""
    if not is_fundamental(d) or d > 0:
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    n = -d
    if n % 4 != 3:  # -pq with p ≡ 1, q ≡ 3 mod 4 is ≡ 1 mod 4
        return False
    ps = prime_factors(n)
    if len(ps) != 2 or ps[0] * ps[1] != n:
        return False
    p = next((x for x in ps if x % 4 == 1), None)
    q = next((x for x in ps if x % 4 == 3), None)
    if p is None or q is None:
        return False
    return kronecker(p, q) == -1


@dataclass(frozen=True)
class IdealRep:
    """Integral ideal Z*a + Z*(-b + sqrt(d))/2 attached to a reduced form.

    ``second`` holds the coordinates of (-b + sqrt(d))/2 in the basis
    {1, (d + sqrt(d))/2} of the maximal order; the ideal norm is ``a``.
    """
    form: tuple[int, int, int]
    second: tuple[int, int]

    @property
    def norm(self) -> int:
        return self.form[0]

    @property
    def is_principal_rep(self) -> bool:
        return self.form[0] == 1


def ideal_class_reps(d: int) -> list[IdealRep]:
    """One integral ideal per class, principal class first."""
    reps = []
    for (a, b, c) in reduced_forms(d):
        # (-b + sqrt(d))/2 = -(b + d)/2 + (d + sqrt(d))/2
        reps.append(IdealRep((a, b, c), (-(b + d) // 2, 1)))
    reps.sort(key=lambda r: (r.form[0] != 1, r.form))
    return reps


def fundamental_discriminants(max_abs: int):
    """Yield the negative fundamental discriminants with |d| <= max_abs,
    in increasing |d|."""
    for n in range(3, max_abs + 1):
        if is_fundamental(-n):
            yield -n
