"""Definite quaternion algebras over Q, orders with explicit bases, the
trace-zero lattice, rotation matrices, and finite unit groups.

Elements are exact: four Fractions against the basis 1, i, j, ij with
i^2 = a, j^2 = b, ij = -ji (a, b < 0). Orders are given by explicit bases and
re-validated (ring axioms, integrality) instead of being computed from
algebra data; everything downstream assumes that validation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from . import linalg


class QuaternionAlgebra:
    """(a, b / Q) with a < 0, b < 0 (definite)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a, b = Fraction(a), Fraction(b)
        if a >= 0 or b >= 0:
            raise ValueError("algebra must be definite: need a < 0 and b < 0")
        self.a = a
        self.b = b

    def __eq__(self, other):
        return isinstance(other, QuaternionAlgebra) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b})"

    def quat(self, c0, c1, c2, c3) -> "Quaternion":
        return Quaternion(self, (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3)))

    def one(self):
        return self.quat(1, 0, 0, 0)

    def gens(self):
        """(i, j, ij)."""
        return self.quat(0, 1, 0, 0), self.quat(0, 0, 1, 0), self.quat(0, 0, 0, 1)


class Quaternion:
    __slots__ = ("alg", "c")

    def __init__(self, alg: QuaternionAlgebra, coords):
        self.alg = alg
        self.c = tuple(Fraction(x) for x in coords)

    def _check(self, other):
        if self.alg != other.alg:
            raise ValueError("operands live in different quaternion algebras")

    def __eq__(self, other):
        return isinstance(other, Quaternion) and self.alg == other.alg and self.c == other.c

    def __hash__(self):
        return hash((self.alg, self.c))

    def __repr__(self):
        return f"Quaternion{self.c}"

    def __add__(self, other):
        self._check(other)
        return Quaternion(self.alg, tuple(x + y for x, y in zip(self.c, other.c)))

    def __sub__(self, other):
        self._check(other)
        return Quaternion(self.alg, tuple(x - y for x, y in zip(self.c, other.c)))

    def __neg__(self):
        return Quaternion(self.alg, tuple(-x for x in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quaternion(self.alg, tuple(x * other for x in self.c))
        self._check(other)
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.c
        y0, y1, y2, y3 = other.c
        return Quaternion(self.alg, (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * (x2 * y3 - x3 * y2),
            x0 * y2 + x2 * y0 + a * (x1 * y3 - x3 * y1),
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def conjugate(self):
        """Standard involution: fixes 1, negates i, j, ij."""
        x0, x1, x2, x3 = self.c
        return Quaternion(self.alg, (x0, -x1, -x2, -x3))

    def trace(self) -> Fraction:
        return 2 * self.c[0]

    def norm(self) -> Fraction:
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.c
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("quaternion with norm 0 has no inverse")
        return self.conjugate() * (1 / n)

    def is_zero(self):
        return all(x == 0 for x in self.c)


def _bilinear(x: Quaternion, y: Quaternion) -> Fraction:
    """Q(x, y) = (Nm(x+y) - Nm(x) - Nm(y)) / 2 = Tr(x sigma(y)) / 2."""
    return ((x + y).norm() - x.norm() - y.norm()) / 2


class Order:
    """Rank-4 Z-order given by an explicit basis (validated at construction)."""

    def __init__(self, alg: QuaternionAlgebra, basis_coords):
        self.alg = alg
        self.basis = tuple(alg.quat(*row) for row in basis_coords)
        if len(self.basis) != 4:
            raise ValueError("an order basis has exactly 4 elements")
        self.basis_matrix = [[Fraction(x) for x in q.c] for q in self.basis]
        if linalg.det(self.basis_matrix) == 0:
            raise ValueError("order basis is not linearly independent")
        self._inv_matrix = linalg.mat_inv(self.basis_matrix)
        self.gram = [[_bilinear(x, y) for y in self.basis] for x in self.basis]
        self._validate()
        d2 = linalg.det([[2 * g for g in row] for row in self.gram])
        root = isqrt(int(d2))
        if root * root != d2:
            raise ValueError("order discriminant is not an integer")
        self.discriminant = root

    def _validate(self):
        if self.coordinates(self.alg.one()) is None:
            raise ValueError("order does not contain 1")
        for x in self.basis:
            if x.trace().denominator != 1 or x.norm().denominator != 1:
                raise ValueError("trace or norm is not integral on the basis")
            for y in self.basis:
                if self.coordinates(x * y) is None:
                    raise ValueError("order basis is not multiplicatively closed")

    def coordinates(self, x: Quaternion):
        """Integer coordinates of x in the order basis, or None."""
        coords = linalg.vec_mat(list(x.c), self._inv_matrix)
        if any(c.denominator != 1 for c in coords):
            return None
        return tuple(int(c) for c in coords)

    def contains(self, x: Quaternion) -> bool:
        return self.coordinates(x) is not None

    def from_coordinates(self, coords) -> Quaternion:
        q = self.alg.quat(0, 0, 0, 0)
        for c, e in zip(coords, self.basis):
            q = q + e * Fraction(c)
        return q

    def elements_of_norm(self, n: int) -> list[Quaternion]:
        """All x in the order with Nm(x) = n (exact lattice enumeration)."""
        vecs = linalg.short_vectors(self.gram, n)
        return [self.from_coordinates(v) for v in vecs]


class TraceZeroLattice:
    """L(O): trace-zero elements of Z + 2O, with its Gram matrix."""

    def __init__(self, order: Order, basis):
        self.order = order
        self.basis = tuple(basis)
        self.basis_matrix = [[Fraction(x) for x in q.c] for q in self.basis]
        gram = [[_bilinear(x, y) for y in self.basis] for x in self.basis]
        if any(g.denominator != 1 for row in gram for g in row):
            raise ValueError("Gram matrix of L(O) must be integral")
        self.gram = [[int(g) for g in row] for row in gram]

    def coordinates(self, x: Quaternion):
        """Rational coordinates of a trace-zero x in the lattice basis."""
        if x.trace() != 0:
            raise ValueError("element does not have trace zero")
        coords = linalg.solve_rational(self.basis_matrix, list(x.c))
        if coords is None:
            raise ValueError("element lies outside the trace-zero space")
        return coords

    def integer_coordinates(self, x: Quaternion):
        coords = self.coordinates(x)
        if any(c.denominator != 1 for c in coords):
            return None
        return tuple(int(c) for c in coords)

    def quaternion(self, v) -> Quaternion:
        q = self.order.alg.quat(0, 0, 0, 0)
        for c, e in zip(v, self.basis):
            q = q + e * Fraction(c)
        return q

    def norm_of(self, v) -> int:
        g = self.gram
        return sum(g[i][j] * v[i] * v[j] for i in range(3) for j in range(3))


def _scaled_integer_rows(rows):
    """Clear denominators: returns (int rows, common denominator)."""
    den = 1
    for row in rows:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    return [[int(x * den) for x in row] for row in rows], den


def computed_trace_zero_basis(order: Order):
    """Independent computation of L(O) = {x in Z + 2O : Tr x = 0}.

    Uses the surjection o -> 2o - Tr(o) from O onto L(O); returns an HNF basis
    in ambient (1, i, j, ij)-coordinates scaled by a common denominator.
    """
    images = []
    for e in order.basis:
        img = e * 2 - order.alg.quat(e.trace(), 0, 0, 0)
        images.append([Fraction(x) for x in img.c])
    int_rows, den = _scaled_integer_rows(images)
    hnf = linalg.row_lattice_hnf(int_rows)
    return hnf, den


def trace_zero_lattice(order: Order, chosen_basis) -> TraceZeroLattice:
    """Build L(O) with the given basis, validating it spans exactly L(O)."""
    for q in chosen_basis:
        if q.trace() != 0:
            raise ValueError("chosen basis element has nonzero trace")
    hnf, den = computed_trace_zero_basis(order)
    chosen_rows = [[Fraction(x) * den for x in q.c] for q in chosen_basis]
    int_chosen, den2 = _scaled_integer_rows(chosen_rows)
    if den2 != 1 or not linalg.lattices_equal(hnf, int_chosen):
        raise ValueError(
            "chosen basis does not span L(O); independently computed basis "
            f"(x{den} denominator cleared): {hnf}")
    return TraceZeroLattice(order, chosen_basis)


def rotation_matrix(lat: TraceZeroLattice, g: Quaternion):
    """F(g): the 3x3 matrix with T(g^-1 x g) = T(x) F(g) on the lattice basis.

    Exact rational entries; rows are the coordinates of g^-1 b_i g.
    """
    if g.norm() == 0:
        raise ValueError("rotation matrix needs an invertible conjugator")
    ginv = g.inverse()
    rows = []
    for bq in lat.basis:
        rows.append(lat.coordinates(ginv * bq * g))
    return rows


def _int_matrix_or_none(m):
    out = []
    for row in m:
        r = []
        for x in row:
            if x.denominator != 1:
                return None
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


class UnitGroup:
    """F(Gamma) for Gamma = units(O)/±1, stored as integer 3x3 matrices."""

    __slots__ = ("rotations", "units", "rotation_set")

    def __init__(self, rotations, units):
        self.rotations = tuple(rotations)
        self.units = tuple(units)
        self.rotation_set = frozenset(self.rotations)

    def __len__(self):
        return len(self.rotations)

    def contains_matrix(self, m) -> bool:
        return m in self.rotation_set


def unit_group(order: Order, lat: TraceZeroLattice) -> UnitGroup:
    """Enumerate Gamma = units(O)/±1 and return the rotation matrices.

    Checks the matrices are integral, of determinant 1, preserve the Gram
    matrix, and form a group (closure under product).
    """
    units = order.elements_of_norm(1)
    seen = {}
    for u in units:
        m = _int_matrix_or_none(rotation_matrix(lat, u))
        if m is None:
            raise ValueError("unit rotation is not integral; basis is not a lattice basis")
        if m not in seen:
            seen[m] = u
    rots = sorted(seen)
    rot_set = set(rots)
    gram = [list(row) for row in lat.gram]
    for m in rots:
        rows = [list(r) for r in m]
        if linalg.det(rows) != 1:
            raise ValueError("unit rotation does not have determinant 1")
        if linalg.mat_mul(linalg.mat_mul(rows, gram), linalg.transpose(rows)) != gram:
            raise ValueError("unit rotation does not preserve the Gram matrix")
        for n in rots:
            prod = tuple(tuple(row) for row in linalg.mat_mul(rows, [list(r) for r in n]))
            if prod not in rot_set:
                raise ValueError("unit rotations are not closed under product")
    return UnitGroup(rots, tuple(seen[m] for m in rots))
