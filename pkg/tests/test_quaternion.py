import random
from fractions import Fraction

import pytest

from quatperiods import cases, linalg, quaternion as qt


@pytest.fixture(scope="module")
def hamilton():
    return qt.QuaternionAlgebra(-1, -1)


@pytest.fixture(scope="module")
def hurwitz(hamilton):
    H = Fraction(1, 2)
    return qt.Order(hamilton, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (H, H, H, H)])


class TestArithmetic:
    def test_defining_relations(self, hamilton):
        i, j, k = hamilton.gens()
        assert i * j == k
        assert j * i == -k
        assert (i * i).c == (-1, 0, 0, 0)

    def test_norm_of_half_unit(self, hamilton):
        w = hamilton.quat(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
        assert w.norm() == 1
        assert w.trace() == 1

    def test_pure_quaternion_trace(self, hamilton):
        i, j, _ = hamilton.gens()
        assert (i + j * 2).trace() == 0

    def test_norm_multiplicative(self, hamilton):
        rng = random.Random(7)
        for _ in range(40):
            x = hamilton.quat(*(Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                                for _ in range(4)))
            y = hamilton.quat(*(rng.randint(-5, 5) for _ in range(4)))
            assert (x * y).norm() == x.norm() * y.norm()

    def test_conjugation_is_involution(self, hamilton):
        x = hamilton.quat(1, 2, 3, 4)
        assert x.conjugate().conjugate() == x
        assert x * x.conjugate() == hamilton.quat(x.norm(), 0, 0, 0)

    def test_mixed_algebra_rejected(self, hamilton):
        other = qt.QuaternionAlgebra(-1, -3)
        with pytest.raises(ValueError):
            hamilton.quat(1, 0, 0, 0) * other.quat(1, 0, 0, 0)

    def test_indefinite_rejected(self):
        with pytest.raises(ValueError):
            qt.QuaternionAlgebra(-1, 1)

    def test_norm_invariant_under_conjugation(self):
        ctx = cases.get_context("C3")
        alg = ctx.order.alg
        rng = random.Random(11)
        for _ in range(25):
            x = alg.quat(0, rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-4, 4))
            g = alg.quat(*(rng.randint(-3, 3) for _ in range(4)))
            if g.norm() == 0:
                continue
            assert (g.inverse() * x * g).norm() == x.norm()


class TestOrder:
    def test_contains_half_unit(self, hurwitz, hamilton):
        w = hamilton.quat(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
        assert hurwitz.coordinates(w) == (0, 0, 0, 1)

    def test_rejects_half_i(self, hurwitz, hamilton):
        assert not hurwitz.contains(hamilton.quat(0, Fraction(1, 2), 0, 0))

    def test_level3_order_contains_w(self):
        ctx = cases.get_context("C2")
        alg = ctx.order.alg
        w = alg.quat(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
        assert ctx.order.contains(w)

    def test_discriminants(self):
        expected = {"C1": 2, "C2": 6, "C3": 6, "C4": 6, "C5": 3, "C6": 10}
        for cid, disc in expected.items():
            assert cases.get_context(cid).order.discriminant == disc

    def test_not_multiplicatively_closed_rejected(self, hamilton):
        with pytest.raises(ValueError):
            qt.Order(hamilton, [(1, 0, 0, 0), (0, Fraction(1, 2), 0, 0),
                                (0, 0, 1, 0), (0, 0, 0, 1)])


class TestTraceZeroLattice:
    def test_gram_matrices_match_presets(self):
        grams = {
            "C1": [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]],
            "C2": [[8, 4, 0], [4, 8, 0], [0, 0, 3]],
            "C5": [[3, 0, 0], [0, 4, -2], [0, -2, 4]],
        }
        for cid, gram in grams.items():
            assert cases.get_context(cid).gram == gram

    def test_wrong_basis_rejected(self, hurwitz, hamilton):
        i, j, k = hamilton.gens()
        with pytest.raises(ValueError, match="does not span"):
            qt.trace_zero_lattice(hurwitz, [i * 2, j * 2, k * 2])

    def test_norm_of_matches_quaternion_norm(self):
        rng = random.Random(3)
        for cid in cases.case_ids():
            lat = cases.get_context(cid).lattice
            for _ in range(20):
                v = [rng.randint(-6, 6) for _ in range(3)]
                assert lat.norm_of(v) == lat.quaternion(v).norm()


class TestRotations:
    def test_identity(self):
        ctx = cases.get_context("C1")
        one = ctx.order.alg.one()
        assert qt.rotation_matrix(ctx.lattice, one) == linalg.identity(3)

    def test_paper_generators_disc2(self):
        ctx = cases.get_context("C1")
        alg = ctx.order.alg
        H = Fraction(1, 2)
        w = alg.quat(H, H, H, H)
        i = alg.quat(0, 1, 0, 0)
        j = alg.quat(0, 0, 1, 0)
        assert qt.rotation_matrix(ctx.lattice, w) == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
        assert qt.rotation_matrix(ctx.lattice, i) == [[-1, -1, -1], [0, 0, 1], [0, 1, 0]]
        assert qt.rotation_matrix(ctx.lattice, j) == [[0, 0, 1], [-1, -1, -1], [1, 0, 0]]

    def test_level3_generator(self):
        # the displayed level-3 generator matrix is the rotation of the
        # conjugate element (= inverse matrix); the group is the same either way
        ctx = cases.get_context("C2")
        alg = ctx.order.alg
        H = Fraction(1, 2)
        w = alg.quat(H, H, H, H)
        expected = [[-1, 1, 0], [-1, 0, 0], [0, 0, 1]]
        assert qt.rotation_matrix(ctx.lattice, w.conjugate()) == expected
        assert ctx.units.contains_matrix(tuple(map(tuple, expected)))

    def test_disc3_level1_generators(self):
        ctx = cases.get_context("C5")
        alg = ctx.order.alg
        i = alg.quat(0, 1, 0, 0)
        w = alg.quat(Fraction(1, 2), 0, Fraction(1, 2), 0)
        assert qt.rotation_matrix(ctx.lattice, i) == [[-1, 0, 0], [0, 0, 1], [0, 1, 0]]
        expected = [[1, 0, 0], [0, 0, 1], [0, -1, -1]]
        assert qt.rotation_matrix(ctx.lattice, w.conjugate()) == expected
        assert ctx.units.contains_matrix(tuple(map(tuple, expected)))

    def test_level5_generator(self):
        ctx = cases.get_context("C6")
        ij = ctx.order.alg.quat(0, 0, 0, 1)
        assert qt.rotation_matrix(ctx.lattice, ij) == [[1, 0, 0], [0, -1, 0], [1, 0, -1]]

    def test_multiplicative(self):
        ctx = cases.get_context("C1")
        alg = ctx.order.alg
        H = Fraction(1, 2)
        gens = [alg.quat(0, 1, 0, 0), alg.quat(0, 0, 1, 0), alg.quat(H, H, H, H)]
        for g in gens:
            for h in gens:
                fg = qt.rotation_matrix(ctx.lattice, g)
                fh = qt.rotation_matrix(ctx.lattice, h)
                assert linalg.mat_mul(fg, fh) == qt.rotation_matrix(ctx.lattice, g * h)

    def test_norm_zero_rejected(self, hamilton):
        ctx = cases.get_context("C1")
        with pytest.raises(ValueError):
            qt.rotation_matrix(ctx.lattice, hamilton.quat(0, 0, 0, 0))


class TestUnitGroup:
    def test_sizes(self):
        expected = {"C1": 12, "C2": 3, "C3": 2, "C4": 3, "C5": 6, "C6": 2}
        for cid, size in expected.items():
            assert len(cases.get_context(cid).units) == size

    def test_disc2_group_is_alternating_of_degree_4(self):
        units = cases.get_context("C1").units
        mats = [tuple(map(tuple, m)) for m in units.rotations]
        assert len(mats) == 12
        # no element of order 6
        for m in mats:
            rows = [list(r) for r in m]
            power = rows
            order = 1
            while power != linalg.identity(3):
                power = linalg.mat_mul(power, rows)
                order += 1
                assert order <= 12
            assert order != 6
        # derived subgroup of order 4 (Klein four group)
        commutators = set()
        for a in mats:
            for b in mats:
                ra, rb = [list(r) for r in a], [list(r) for r in b]
                inv = linalg.mat_mul(linalg.mat_inv(ra), linalg.mat_inv(rb))
                comm = linalg.mat_mul(linalg.mat_mul(ra, rb), inv)
                commutators.add(tuple(tuple(int(x) for x in row) for row in comm))
        # close the generated subgroup
        group = set(commutators)
        frontier = list(group)
        while frontier:
            new = []
            for a in frontier:
                for b in commutators:
                    prod = tuple(tuple(int(x) for x in row) for row in
                                 linalg.mat_mul([list(r) for r in a], [list(r) for r in b]))
                    if prod not in group:
                        group.add(prod)
                        new.append(prod)
            frontier = new
        assert len(group) == 4

    def test_preserve_gram_and_det(self):
        for cid in cases.case_ids():
            ctx = cases.get_context(cid)
            gram = [list(r) for r in ctx.gram]
            for m in ctx.units.rotations:
                rows = [list(r) for r in m]
                assert linalg.det(rows) == 1
                assert linalg.mat_mul(linalg.mat_mul(rows, gram),
                                      linalg.transpose(rows)) == gram
