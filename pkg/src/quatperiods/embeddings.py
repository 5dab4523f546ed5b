"""Norm representations in the trace-zero lattice, optimal embeddings and
their unit-group classes, the Eichler count formula, and the class-group
orbit that feeds the period sum.

A vector v with v Q v^T = -Delta determines the embedding sending
sqrt(Delta) to the quaternion a = sum v_i b_i; the embedding is optimal
exactly when b = (t + a)/2 lies in the order (t = 1 for Delta ≡ 1 mod 4,
t = 0 for Delta ≡ 0 mod 4). Since the maximal order of the field is the
only candidate above Z[b], membership is the whole test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from . import linalg, quadratic
from .cases import CaseContext


def represent(gram, n: int) -> list[tuple[int, int, int]]:
    """All integer 3-vectors with v G v^T = n (± pairs included), sorted.

    Fast numpy path over the coordinate box |v_i|^2 <= n (G^{-1})_{ii},
    exact because all values stay far inside int64.
    """
    if n < 0:
        return []
    if n == 0:
        return [(0, 0, 0)]
    g = np.asarray([[int(x) for x in row] for row in gram], dtype=np.int64)
    ginv = linalg.mat_inv(gram)
    bounds = [isqrt(int(n * ginv[i][i])) + 1 for i in range(3)]
    if max(bounds) > 2_000_000:
        raise ValueError("representation box too large for the int64 fast path")
    r1 = np.arange(-bounds[0], bounds[0] + 1, dtype=np.int64)
    r2 = np.arange(-bounds[1], bounds[1] + 1, dtype=np.int64)
    x, y = np.meshgrid(r1, r2, indexing="ij")
    x = x.ravel()
    y = y.ravel()
    out = []
    q11, q12, q13 = g[0]
    q22, q23, q33 = g[1][1], g[1][2], g[2][2]
    base = q11 * x * x + 2 * q12 * x * y + q22 * y * y
    lin = 2 * (q13 * x + q23 * y)
    for z in range(-bounds[2], bounds[2] + 1):
        vals = base + lin * z + q33 * z * z
        hits = np.nonzero(vals == n)[0]
        for idx in hits:
            out.append((int(x[idx]), int(y[idx]), z))
    return sorted(out)


def represent_exact(gram, n: int) -> list[tuple[int, ...]]:
    """Pure-rational reference enumeration (cross-check for the fast path)."""
    return linalg.short_vectors(gram, n)


def _embedding_trace(delta: int) -> int:
    if delta % 4 == 1:
        return 1
    if delta % 4 == 0:
        return 0
    raise ValueError(f"{delta} is not a discriminant")


@dataclass(frozen=True)
class EmbeddingClass:
    """A unit-group class of optimal embeddings, named by its lex-least
    lattice vector. ``witness`` is b = (t + a)/2 in order coordinates."""
    case_id: str
    delta: int
    vector: tuple[int, int, int]
    orbit: tuple
    witness: tuple


@dataclass(frozen=True)
class Orbit:
    """Class-group orbit of one optimal embedding: h_E pairwise-inequivalent
    classes, each tagged with the lattice vector of its distinguished
    generator."""
    case_id: str
    delta: int
    vectors: tuple  # one lattice vector per ideal class, seed first


class OptimalityTester:
    """Vector -> is the associated embedding optimal? (b = (t+a)/2 in O.)

    Precomputes the rational transfer matrix from lattice coordinates to
    order coordinates so each test is a handful of integer operations.
    """

    def __init__(self, ctx: CaseContext):
        self.ctx = ctx
        lat, order = ctx.lattice, ctx.order
        transfer = linalg.mat_mul(lat.basis_matrix, order._inv_matrix)
        one = linalg.vec_mat([Fraction(1), 0, 0, 0], order._inv_matrix)
        den = 1
        for row in transfer + [one]:
            for x in row if isinstance(row[0], Fraction) else row:
                den = den * x.denominator // gcd(den, x.denominator)
        self.den = den
        self.transfer = np.asarray([[int(x * den) for x in row] for row in transfer],
                                   dtype=np.int64)
        self.one = np.asarray([int(x * den) for x in one], dtype=np.int64)

    def witness_coords(self, v, delta: int):
        """Order coordinates of b = (t + a)/2, or None when not in O."""
        t = _embedding_trace(delta)
        num = t * self.one + np.asarray(v, dtype=np.int64) @ self.transfer
        if np.any(num % (2 * self.den)):
            return None
        return tuple(int(c) for c in num // (2 * self.den))

    def accept_mask(self, vectors, delta: int) -> np.ndarray:
        """Vectorized acceptance over an (n, 3) array of lattice vectors."""
        if len(vectors) == 0:
            return np.zeros(0, dtype=bool)
        arr = np.asarray(vectors, dtype=np.int64)
        t = _embedding_trace(delta)
        num = t * self.one[None, :] + arr @ self.transfer
        return ~np.any(num % (2 * self.den), axis=1)


def optimal_embedding_from_vector(ctx: CaseContext, delta: int, v):
    """EmbeddingClass for the vector, or None when the embedding is not
    optimal. Raises if the vector does not have norm -delta."""
    lat = ctx.lattice
    if lat.norm_of(v) != -delta:
        raise ValueError(f"vector {v} has norm {lat.norm_of(v)}, expected {-delta}")
    tester = _tester(ctx)
    witness = tester.witness_coords(v, delta)
    if witness is None:
        return None
    orbit = _vector_orbit(ctx, tuple(v))
    return EmbeddingClass(ctx.case.case_id, delta, min(orbit), tuple(sorted(orbit)), witness)


_TESTERS: dict[str, OptimalityTester] = {}


def _tester(ctx: CaseContext) -> OptimalityTester:
    key = ctx.case.case_id
    if key not in _TESTERS:
        _TESTERS[key] = OptimalityTester(ctx)
    return _TESTERS[key]


def _vector_orbit(ctx: CaseContext, v: tuple) -> set:
    mats = ctx.units.rotations
    return {tuple(int(x) for x in linalg.vec_mat(list(v), [list(r) for r in m]))
            for m in mats}


def accepted_vectors(ctx: CaseContext, delta: int) -> list[tuple[int, int, int]]:
    """All norm-(-delta) vectors whose embedding is optimal."""
    vectors = represent(ctx.gram, -delta)
    mask = _tester(ctx).accept_mask(vectors, delta)
    return [v for v, ok in zip(vectors, mask) if ok]


def gamma_classes(ctx: CaseContext, delta: int, vectors=None) -> list[EmbeddingClass]:
    """Partition the accepted vectors into unit-group classes."""
    if vectors is None:
        vectors = accepted_vectors(ctx, delta)
    tester = _tester(ctx)
    remaining = set(map(tuple, vectors))
    classes = []
    while remaining:
        v = min(remaining)
        orbit = _vector_orbit(ctx, v)
        if not orbit <= remaining:
            raise ValueError("accepted vectors are not closed under the unit group")
        remaining -= orbit
        witness = tester.witness_coords(v, delta)
        classes.append(EmbeddingClass(ctx.case.case_id, delta, min(orbit),
                                      tuple(sorted(orbit)), witness))
    return sorted(classes, key=lambda c: c.vector)


def eichler_count(case, delta: int) -> int:
    """Predicted number of optimal embedding classes:
    h * prod_{p | disc(D)} (1 - (E/p)) * prod_{q | level} (1 + (E/q))."""
    if not quadratic.is_fundamental(delta) or delta > 0:
        raise ValueError(f"{delta} is not a negative fundamental discriminant")
    count = quadratic.class_number(delta)
    for p in quadratic.prime_factors(case.disc_d):
        count *= 1 - quadratic.kronecker(delta, p)
    for q in quadratic.prime_factors(case.level):
        count *= 1 + quadratic.kronecker(delta, q)
    return count


def class_group_orbit(ctx: CaseContext, delta: int, seed: EmbeddingClass) -> Orbit:
    """Transport the seed embedding around the ideal class group.

    For each ideal class representative, builds the left ideal
    I = O i(x) + O i(y) over the seed embedding, finds a generator alpha with
    Nm(alpha) = Nrd(I) (class number one guarantees one), and replaces the
    distinguished trace-zero generator a by alpha^{-1} a alpha. Returns the
    h_E pairwise-distinct unit-group classes; freeness violations raise.
    """
    order, lat = ctx.order, ctx.lattice
    alg = order.alg
    a0 = lat.quaternion(seed.vector)
    vectors = []
    seen = set()
    for rep in quadratic.ideal_class_reps(delta):
        a_norm, b_coef, _ = rep.form
        if rep.is_principal_rep:
            vec = seed.vector
        else:
            # generators of the ideal under the embedding: a and (-b + a0)/2
            gen2 = (alg.quat(-b_coef, 0, 0, 0) + a0) * Fraction(1, 2)
            rows = []
            for e in order.basis:
                for gen in (e * a_norm, e * gen2):
                    coords = order.coordinates(gen)
                    if coords is None:
                        raise ValueError("ideal generator escaped the order")
                    rows.append(list(coords))
            basis = linalg.row_lattice_hnf(rows)
            if len(basis) != 4:
                raise ValueError("ideal lattice is not full rank")
            index = 1
            for i in range(4):
                index *= basis[i][i]
            nrd = isqrt(abs(index))
            if nrd * nrd != abs(index) or nrd != a_norm:
                raise ValueError(f"ideal norm mismatch: [O:I] = {index}, expected {a_norm}^2")
            alpha = _ideal_generator(ctx, basis, nrd)
            # Right order of O*i(ideal) contains the embedded field order, so
            # conjugation by alpha on the left is the direction landing in O.
            a_new = alpha * a0 * alpha.inverse()
            coords = lat.integer_coordinates(a_new)
            if coords is None:
                raise ValueError("transported generator left the trace-zero lattice")
            if _tester(ctx).witness_coords(coords, delta) is None:
                raise ValueError("transported embedding is not optimal")
            vec = coords
        canon = min(_vector_orbit(ctx, tuple(vec)))
        if canon in seen:
            raise ValueError("class-group action is not free on this orbit")
        seen.add(canon)
        vectors.append(tuple(vec))
    return Orbit(ctx.case.case_id, delta, tuple(vectors))


def _ideal_generator(ctx, basis_coords, nrd: int):
    """First generator (deterministic order) of the ideal with norm nrd."""
    order = ctx.order
    quats = [order.from_coordinates(row) for row in basis_coords]
    gram = [[_half_trace(x, y) for y in quats] for x in quats]
    for coeffs in linalg.short_vectors(gram, nrd):
        q = order.alg.quat(0, 0, 0, 0)
        for c, e in zip(coeffs, quats):
            q = q + e * c
        return q
    raise ValueError("no generator of the expected norm; order would have class number > 1")


def _half_trace(x, y):
    return ((x + y).norm() - x.norm() - y.norm()) / 2


def orbit_for(ctx: CaseContext, delta: int):
    """Orbit seeded at the lex-least accepted vector; None if no embeddings."""
    classes = gamma_classes(ctx, delta)
    if not classes:
        return None
    return class_group_orbit(ctx, delta, classes[0])


def ball_vectors(gram, max_norm: int):
    """All (vectors, norms) with 0 < v G v^T <= max_norm, as int64 arrays.

    One pass over the coordinate box, numpy throughout; used by the
    whole-range congruence sweeps.
    """
    g = np.asarray([[int(x) for x in row] for row in gram], dtype=np.int64)
    ginv = linalg.mat_inv(gram)
    bounds = [isqrt(int(max_norm * ginv[i][i])) + 1 for i in range(3)]
    r1 = np.arange(-bounds[0], bounds[0] + 1, dtype=np.int64)
    r2 = np.arange(-bounds[1], bounds[1] + 1, dtype=np.int64)
    x, y = np.meshgrid(r1, r2, indexing="ij")
    x = x.ravel()
    y = y.ravel()
    q11, q12, q13 = g[0]
    q22, q23, q33 = g[1][1], g[1][2], g[2][2]
    base = q11 * x * x + 2 * q12 * x * y + q22 * y * y
    lin = 2 * (q13 * x + q23 * y)
    vecs = []
    norms = []
    for z in range(-bounds[2], bounds[2] + 1):
        vals = base + lin * z + q33 * z * z
        keep = (vals > 0) & (vals <= max_norm)
        if not np.any(keep):
            continue
        idx = np.nonzero(keep)[0]
        block = np.empty((idx.size, 3), dtype=np.int64)
        block[:, 0] = x[idx]
        block[:, 1] = y[idx]
        block[:, 2] = z
        vecs.append(block)
        norms.append(vals[idx])
    if not vecs:
        return np.empty((0, 3), dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(vecs), np.concatenate(norms)


def eichler_sweep(ctx: CaseContext, max_abs: int):
    """Compare the unit-class count with the count formula for every
    fundamental |delta| <= max_abs. Returns (checked, mismatches)."""
    checked = 0
    mismatches = []
    for delta in quadratic.fundamental_discriminants(max_abs):
        found = len(gamma_classes(ctx, delta))
        predicted = eichler_count(ctx.case, delta)
        checked += 1
        if found != predicted:
            mismatches.append((delta, found, predicted))
    return checked, mismatches
