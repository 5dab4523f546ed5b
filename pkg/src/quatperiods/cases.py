"""The six built-in cases: quaternion order, trace-zero lattice, invariant
harmonic polynomial, local representation types, q-expansion oracle,
congruence rule, and applicability data, plus JSON import/export so further
class-number-one orders can be added without code changes.

A ``Case`` is pure configuration. ``CaseContext`` lazily builds and caches
the validated exact objects (order, lattice, unit group, polynomial) and is
the object the rest of the package works with.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import harmonic, quaternion as qt

ST = "steinberg"
ST_TWISTED = "steinberg_twisted"

CONFIG_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Case:
    """Configuration of one definite Eichler-order case."""
    case_id: str
    algebra: tuple          # (a, b) structure constants, both negative
    order_basis: tuple      # 4 rows of 4 rationals (coords against 1, i, j, ij)
    lattice_basis: tuple    # 3 rows of 4 rationals, trace-zero
    disc_d: int             # discriminant of the algebra
    level: int              # level of the order; disc(O) = disc_d * level
    degree: int             # harmonic degree l
    weight: int             # 2l + 2
    local_types: tuple      # ((p, ST or ST_TWISTED), ...) for p | disc(O)
    oracle: tuple           # q-expansion oracle spec, see qseries.newform_coefficients
    congruence: str         # congruence rule id, see periods
    applicability: tuple    # (modulus, (residues...)) on the discriminant
    class_rule: str         # "prime", "prime_or_pizer", or "h_ndiv_3"

    @property
    def disc_order(self) -> int:
        return self.disc_d * self.level

    def local_type(self, p: int) -> str:
        for q, t in self.local_types:
            if q == p:
                return t
        raise KeyError(f"no local type at p = {p}")

    def applicable(self, delta: int) -> bool:
        mod, residues = self.applicability
        return delta % mod in residues


def _rows(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


H = Fraction(1, 2)

_BUILTIN = [
    Case(
        case_id="C1",
        algebra=(-1, -1),
        order_basis=_rows([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (H, H, H, H)]),
        lattice_basis=_rows([(0, -1, 1, 1), (0, 1, -1, 1), (0, 1, 1, -1)]),
        disc_d=2, level=1, degree=3, weight=8,
        local_types=((2, ST_TWISTED),),
        oracle=("eta", ((1, 8), (2, 8))),
        congruence="cube_sum_mod4",
        applicability=(8, (5,)),
        class_rule="prime",
    ),
    Case(
        case_id="C2",
        algebra=(-1, -1),
        order_basis=_rows([(1, 0, 0, 0), (0, 1, -1, 0), (0, 1, 0, -1), (H, H, H, H)]),
        lattice_basis=_rows([(0, 2, -2, 0), (0, 2, 0, -2), (0, 1, 1, 1)]),
        disc_d=2, level=3, degree=1, weight=4,
        local_types=((2, ST_TWISTED), (3, ST_TWISTED)),
        oracle=("eta", ((1, 2), (2, 2), (3, 2), (6, 2))),
        congruence="x3_square_mod8",
        applicability=(24, (13, 21)),
        class_rule="prime",
    ),
    Case(
        case_id="C3",
        algebra=(-1, -3),
        order_basis=_rows([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (H, H, H, H)]),
        lattice_basis=_rows([(0, 2, 0, 0), (0, 0, 2, 0), (0, 1, 1, 1)]),
        disc_d=3, level=2, degree=1, weight=4,
        local_types=((2, ST_TWISTED), (3, ST_TWISTED)),
        oracle=("eta", ((1, 2), (2, 2), (3, 2), (6, 2))),
        congruence="linear_square_mod6",
        applicability=(24, (17,)),
        class_rule="prime",
    ),
    Case(
        case_id="C4",
        algebra=(-1, -1),
        order_basis=_rows([(1, 0, 0, 0), (0, 1, -1, 0), (0, 1, 0, -1), (H, H, H, H)]),
        lattice_basis=_rows([(0, 2, -2, 0), (0, 2, 0, -2), (0, 1, 1, 1)]),
        disc_d=2, level=3, degree=2, weight=6,
        local_types=((2, ST), (3, ST_TWISTED)),
        oracle=("projection", 6, 6),
        congruence="phi_mod4",
        applicability=(24, (13, 21)),
        class_rule="prime_or_pizer",
    ),
    Case(
        case_id="C5",
        algebra=(-1, -3),
        order_basis=_rows([(1, 0, 0, 0), (0, 1, 0, 0), (H, 0, H, 0), (0, H, 0, H)]),
        lattice_basis=_rows([(0, 0, 1, 0), (0, 1, 0, 1), (0, 1, 0, -1)]),
        disc_d=3, level=1, degree=2, weight=6,
        local_types=((3, ST),),
        oracle=("eta", ((1, 6), (3, 6))),
        congruence="phi_mod6",
        applicability=(3, (2,)),
        class_rule="h_ndiv_3",
    ),
    Case(
        case_id="C6",
        algebra=(-1, -1),
        order_basis=_rows([(1, 0, 0, 0), (0, 0, 0, 1), (0, 1, 2, 0), (H, Fraction(3, 2), H, H)]),
        lattice_basis=_rows([(0, 0, 0, 2), (0, 2, 4, 0), (0, 3, 1, 1)]),
        disc_d=2, level=5, degree=1, weight=4,
        local_types=((2, ST), (5, ST)),
        oracle=("projection", 10, 4),
        congruence="linear_square_mod10",
        applicability=(40, (21, 29)),
        class_rule="prime",
    ),
]

_REGISTRY = {c.case_id: c for c in _BUILTIN}


def case_ids() -> list[str]:
    return [c.case_id for c in _BUILTIN]


def get_case(case_id: str) -> Case:
    try:
        return _REGISTRY[case_id]
    except KeyError:
        raise KeyError(f"unknown case {case_id!r}; known: {', '.join(case_ids())}") from None


class CaseContext:
    """Validated, lazily built exact objects for one case."""

    def __init__(self, case: Case):
        self.case = case
        self._order = None
        self._lattice = None
        self._units = None
        self._phi = None
        self._hecke_reps = {}

    @property
    def order(self) -> qt.Order:
        if self._order is None:
            alg = qt.QuaternionAlgebra(*self.case.algebra)
            order = qt.Order(alg, self.case.order_basis)
            if order.discriminant != self.case.disc_order:
                raise ValueError(
                    f"{self.case.case_id}: order discriminant {order.discriminant} "
                    f"!= disc(D)*level = {self.case.disc_order}")
            self._order = order
        return self._order

    @property
    def lattice(self) -> qt.TraceZeroLattice:
        if self._lattice is None:
            alg = self.order.alg
            basis = [alg.quat(*row) for row in self.case.lattice_basis]
            self._lattice = qt.trace_zero_lattice(self.order, basis)
        return self._lattice

    @property
    def units(self) -> qt.UnitGroup:
        if self._units is None:
            self._units = qt.unit_group(self.order, self.lattice)
        return self._units

    @property
    def gram(self):
        return self.lattice.gram

    @property
    def phi(self) -> harmonic.Poly3:
        """The invariant harmonic polynomial (integer-primitive, positive
        leading coefficient). The space must be one-dimensional."""
        if self._phi is None:
            basis = harmonic.invariant_harmonics(
                self.gram, [list(map(list, m)) for m in self.units.rotations],
                self.case.degree)
            if len(basis) != 1:
                raise ValueError(
                    f"{self.case.case_id}: invariant harmonic space has dimension "
                    f"{len(basis)}, expected 1")
            self._phi = basis[0]
        return self._phi

    def hecke_reps(self, p: int):
        if p not in self._hecke_reps:
            self._hecke_reps[p] = harmonic.hecke_coset_reps(
                self.order, self.lattice, self.units, p)
        return self._hecke_reps[p]

    def hecke_eigenvalue(self, p: int) -> int:
        return harmonic.hecke_eigenvalue(self.hecke_reps(p), self.phi, p)


@lru_cache(maxsize=None)
def get_context(case_id: str) -> CaseContext:
    return CaseContext(get_case(case_id))


def contexts():
    return [get_context(cid) for cid in case_ids()]


# ---------------------------------------------------------------------------
# JSON case files


def case_to_json(case: Case) -> dict:
    return {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "case_id": case.case_id,
        "algebra": {"a": str(case.algebra[0]), "b": str(case.algebra[1])},
        "order_basis": [[str(x) for x in row] for row in case.order_basis],
        "lattice_basis": [[str(x) for x in row] for row in case.lattice_basis],
        "disc_d": case.disc_d,
        "level": case.level,
        "degree": case.degree,
        "weight": case.weight,
        "local_types": {str(p): t for p, t in case.local_types},
        "oracle": _oracle_to_json(case.oracle),
        "congruence": case.congruence,
        "applicability": {"modulus": case.applicability[0],
                          "residues": list(case.applicability[1])},
        "class_rule": case.class_rule,
    }


def _oracle_to_json(oracle):
    if oracle[0] == "eta":
        return {"kind": "eta", "factors": [[m, r] for m, r in oracle[1]]}
    return {"kind": "projection", "level": oracle[1], "weight": oracle[2]}


def _oracle_from_json(doc):
    if doc["kind"] == "eta":
        return ("eta", tuple((int(m), int(r)) for m, r in doc["factors"]))
    if doc["kind"] == "projection":
        return ("projection", int(doc["level"]), int(doc["weight"]))
    raise ValueError(f"unknown oracle kind {doc['kind']!r}")


def case_from_json(doc: dict) -> Case:
    a = Fraction(doc["algebra"]["a"])
    b = Fraction(doc["algebra"]["b"])
    if a >= 0 or b >= 0:
        raise ValueError("config algebra must be definite (a < 0 and b < 0)")
    case = Case(
        case_id=doc["case_id"],
        algebra=(a, b),
        order_basis=_rows([[Fraction(x) for x in row] for row in doc["order_basis"]]),
        lattice_basis=_rows([[Fraction(x) for x in row] for row in doc["lattice_basis"]]),
        disc_d=int(doc["disc_d"]),
        level=int(doc["level"]),
        degree=int(doc["degree"]),
        weight=int(doc["weight"]),
        local_types=tuple(sorted((int(p), t) for p, t in doc["local_types"].items())),
        oracle=_oracle_from_json(doc["oracle"]),
        congruence=doc["congruence"],
        applicability=(int(doc["applicability"]["modulus"]),
                       tuple(int(r) for r in doc["applicability"]["residues"])),
        class_rule=doc["class_rule"],
    )
    if case.weight != 2 * case.degree + 2:
        raise ValueError("weight must equal 2*degree + 2")
    return case


def load_config(path) -> list[Case]:
    """Load case definitions from a JSON file ({"cases": [...]}); the loaded
    cases replace the built-in registry for lookup by id."""
    with open(path) as fh:
        doc = json.load(fh)
    cases = [case_from_json(entry) for entry in doc["cases"]]
    return cases


def install_cases(cases) -> None:
    """Replace registry entries (used by the CLI --config path)."""
    for case in cases:
        _REGISTRY[case.case_id] = case
    get_context.cache_clear()


def dump_builtin_config() -> dict:
    return {"cases": [case_to_json(c) for c in _BUILTIN]}
