"""Homogeneous ternary polynomials, the Gram-Laplacian, the finite-group
invariant harmonic subspace, and Hecke operators with eigenvalue extraction.

Polynomials are exact (Fraction coefficients) and act on row vectors:
substitution by a matrix M sends x to x*M, so matrices compose on the right.
Monomials are ordered graded-lexicographically, fixed once and used for every
matrix representation of an operator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import linalg


def monomials(l: int) -> list[tuple[int, int, int]]:
    """Degree-l monomial exponents in graded lex order (x1 > x2 > x3)."""
    out = []
    for e1 in range(l, -1, -1):
        for e2 in range(l - e1, -1, -1):
            out.append((e1, e2, l - e1 - e2))
    return out


class Poly3:
    """Homogeneous polynomial in x1, x2, x3 with exact coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        self.degree = degree
        self.coeffs = {}
        for exps, c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            if sum(exps) != degree:
                raise ValueError(f"monomial {exps} does not have degree {degree}")
            self.coeffs[tuple(exps)] = c

    @classmethod
    def zero(cls, degree: int) -> "Poly3":
        return cls(degree, {})

    def __eq__(self, other):
        return (isinstance(other, Poly3) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "Poly3(0)"
        terms = []
        for exps in monomials(self.degree):
            c = self.coeffs.get(exps)
            if c is None:
                continue
            mono = "*".join(f"x{i+1}^{e}" for i, e in enumerate(exps) if e)
            terms.append(f"{c}*{mono}" if mono else str(c))
        return "Poly3(" + " + ".join(terms) + ")"

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly3(self.degree, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return Poly3(self.degree, {e: c * scalar for e, c in self.coeffs.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self) -> list[Fraction]:
        """Coefficient vector in the fixed graded-lex monomial order."""
        return [self.coeffs.get(e, Fraction(0)) for e in monomials(self.degree)]

    @classmethod
    def from_vector(cls, degree: int, vec) -> "Poly3":
        return cls(degree, dict(zip(monomials(degree), vec)))

    def evaluate(self, v):
        """Value at a point (ints or Fractions)."""
        x1, x2, x3 = v
        total = Fraction(0)
        for (e1, e2, e3), c in self.coeffs.items():
            total += c * x1**e1 * x2**e2 * x3**e3
        return total

    def primitive(self) -> "Poly3":
        """Integer-primitive scalar multiple with positive leading
        (graded-lex first) coefficient."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in self.coeffs.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        scale = Fraction(den, g)
        lead = next(e for e in monomials(self.degree) if e in self.coeffs)
        if self.coeffs[lead] < 0:
            scale = -scale
        return self * scale


def laplace(gram, p: Poly3) -> Poly3:
    """Gram Laplacian: sum_{i,j} (Q^{-1})_{ij} d^2/dx_i dx_j applied to p."""
    if p.degree < 2:
        return Poly3.zero(max(p.degree - 2, 0))
    qinv = linalg.mat_inv(gram)
    out = {}
    for exps, c in p.coeffs.items():
        for i in range(3):
            for j in range(3):
                if qinv[i][j] == 0:
                    continue
                f = exps[i] * (exps[j] - (1 if i == j else 0))
                if f == 0:
                    continue
                new = list(exps)
                new[i] -= 1
                new[j] -= 1
                key = tuple(new)
                out[key] = out.get(key, Fraction(0)) + c * f * qinv[i][j]
    return Poly3(p.degree - 2, out)


def act_rho(matrix, p: Poly3) -> Poly3:
    """(rho(g) p)(x) = p(x F): substitute the linear forms of x -> x*F."""
    forms = [[Fraction(matrix[i][j]) for i in range(3)] for j in range(3)]
    # forms[j] = coefficients of (x F)_j as a linear form in x1, x2, x3
    out = Poly3.zero(p.degree)
    for exps, c in p.coeffs.items():
        term = {(0, 0, 0): c}
        for j in range(3):
            for _ in range(exps[j]):
                term = _mul_linear(term, forms[j])
        out = out + Poly3(p.degree, term)
    return out


def _mul_linear(coeffs, form):
    """Multiply a sparse exponent->coeff dict by a linear form."""
    out = {}
    for exps, c in coeffs.items():
        for i in range(3):
            if form[i] == 0:
                continue
            new = list(exps)
            new[i] += 1
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + c * form[i]
    return out


def harmonic_kernel(gram, l: int) -> list[Poly3]:
    """Basis of ker Delta on the degree-l homogeneous polynomials."""
    mons = monomials(l)
    if l < 2:
        return [Poly3(l, {e: 1}) for e in mons]
    target = monomials(l - 2)
    cols = []
    for e in mons:
        img = laplace(gram, Poly3(l, {e: 1}))
        cols.append([img.coeffs.get(t, Fraction(0)) for t in target])
    matrix = linalg.transpose(cols)  # rows indexed by target monomials
    kernel = linalg.rational_kernel(matrix)
    return [Poly3.from_vector(l, v) for v in kernel]


def invariant_harmonics(gram, rotations, l: int) -> list[Poly3]:
    """Basis of the invariant harmonic space: ker Delta cut by the fixed
    space of every rotation. Exact; basis vectors are integer-primitive."""
    mons = monomials(l)
    # stack: Laplacian rows, then (rho(g) - id) rows for each group element
    stacked = []
    if l >= 2:
        images = [laplace(gram, Poly3(l, {e: 1})) for e in mons]
        for t in monomials(l - 2):
            stacked.append([img.coeffs.get(t, Fraction(0)) for img in images])
    for m in rotations:
        images = [act_rho(m, Poly3(l, {e: 1})) for e in mons]
        for t in mons:
            stacked.append([img.coeffs.get(t, Fraction(0)) - (1 if t == e else 0)
                            for e, img in zip(mons, images)])
    if not stacked:
        return [Poly3(l, {e: 1}) for e in mons]
    kernel = linalg.rational_kernel(stacked)
    return [Poly3.from_vector(l, v).primitive() for v in kernel]


def hecke_coset_reps(order, lat, units, p: int):
    """Left Gamma-coset representatives of the norm-p Hecke set, as exact
    rational rotation matrices. Raises unless there are exactly p+1 cosets."""
    from . import quaternion as qt

    if order.discriminant % p == 0:
        raise ValueError(f"T_{p} is defined only for p coprime to disc(O) = {order.discriminant}")
    elements = order.elements_of_norm(p)
    mats = {}
    for x in elements:
        m = tuple(tuple(r) for r in qt.rotation_matrix(lat, x))
        if m not in mats:
            mats[m] = x
    reps = []
    seen = set()
    for m in sorted(mats):
        if m in seen:
            continue
        reps.append([list(r) for r in m])
        # mark the whole left coset Gamma * x: F(gamma x) = F(gamma) F(x)
        for g in units.rotations:
            gm = tuple(tuple(x) for x in linalg.mat_mul([list(r) for r in g], [list(r) for r in m]))
            seen.add(gm)
    if len(reps) != p + 1:
        raise ValueError(f"T_{p} has {len(reps)} cosets; expected p + 1 = {p + 1}")
    return reps


def hecke_apply(reps, phi: Poly3, p: int) -> Poly3:
    """T_p phi = sum over coset reps gamma of phi(x [p F(gamma)^{-1}]).

    p*F(gamma)^{-1} is the integer matrix of b -> gamma b sigma(gamma) on the
    lattice; this integral normalization is the one matching the classical
    Hecke eigenvalues of the corresponding newform (substituting the bare
    orthogonal matrix F(gamma^{-1}) would rescale degree-l forms by p^-l).
    """
    out = Poly3.zero(phi.degree)
    for m in reps:
        scaled = [[p * x for x in row] for row in linalg.mat_inv(m)]
        out = out + act_rho(scaled, phi)
    return out


def hecke_eigenvalue(reps, phi: Poly3, p: int) -> int:
    """Eigenvalue of T_p on the line spanned by phi; raises if T_p phi is
    not an exact scalar multiple of phi."""
    image = hecke_apply(reps, phi, p)
    lead = next(e for e in monomials(phi.degree) if e in phi.coeffs)
    lam = image.coeffs.get(lead, Fraction(0)) / phi.coeffs[lead]
    if (image - phi * lam).coeffs:
        raise ValueError("Hecke image is not proportional to the eigenform")
    if lam.denominator != 1:
        raise ValueError("Hecke eigenvalue is not an integer")
    return int(lam)
