"""Root numbers, the per-vector congruences, toric period sums, and the
final verdict for one (case, discriminant) pair.

The global sign is the product of -1 (archimedean factor for an imaginary
quadratic twist) with one local factor per prime dividing disc(O), read off
the Steinberg / twisted-Steinberg table against the splitting behaviour of
the field at that prime. A verdict is ProvenNonzero only when the sign is
+1, the discriminant lies in the case's residue classes, and the case's
class-number condition holds; then the congruence machinery pins a nonzero
period residue.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from . import embeddings, quadratic
from .cases import Case, CaseContext, ST, ST_TWISTED


class LocalSymbol(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class Status(Enum):
    PROVEN_NONZERO = "ProvenNonzero"
    FORCED_ZERO = "ForcedZero"
    INCONCLUSIVE = "Inconclusive"
    NOT_APPLICABLE = "NotApplicable"


class InconsistencyError(RuntimeError):
    """A relation the mathematics guarantees failed; never expected."""


class CongruenceViolation(InconsistencyError):
    """A per-vector congruence failed; would falsify the congruence lemmas."""


def local_symbol_type(delta: int, p: int) -> LocalSymbol:
    s = quadratic.kronecker(delta, p)
    if s == 1:
        return LocalSymbol.SPLIT
    if s == -1:
        return LocalSymbol.INERT
    return LocalSymbol.RAMIFIED


def local_epsilon(local_type: str, symbol: LocalSymbol) -> int:
    """Local sign of the base-changed Steinberg factor.

    Steinberg: +1 iff split. Twisted Steinberg: -1 iff inert.
    """
    if local_type == ST:
        return 1 if symbol == LocalSymbol.SPLIT else -1
    if local_type == ST_TWISTED:
        return -1 if symbol == LocalSymbol.INERT else 1
    raise ValueError(f"unknown local type {local_type!r}")


def global_epsilon(case: Case, delta: int) -> int:
    """Sign of the functional equation of the twisted L-function:
    (-1) * prod over p | disc(O) of the local sign."""
    _require_fundamental(delta)
    eps = -1
    for p, t in case.local_types:
        eps *= local_epsilon(t, local_symbol_type(delta, p))
    return eps


def condition3(case: Case, delta: int) -> bool:
    """Local distinction pattern: the division primes must carry local sign
    -1 and the split (level) primes +1. Equivalent to requiring, at each
    p | disc(D): not split (Steinberg) / inert (twisted Steinberg); and at
    each p | level: split (Steinberg) / not inert (twisted Steinberg)."""
    _require_fundamental(delta)
    for p, t in case.local_types:
        sym = local_symbol_type(delta, p)
        wanted = -1 if case.disc_d % p == 0 else 1
        if local_epsilon(t, sym) != wanted:
            return False
    return True


def embeddable(case: Case, delta: int) -> bool:
    """E embeds in the algebra iff no prime dividing disc(D) splits in E."""
    return all(quadratic.kronecker(delta, p) != 1
               for p in quadratic.prime_factors(case.disc_d))


def _require_fundamental(delta: int) -> None:
    if delta >= 0 or not quadratic.is_fundamental(delta):
        raise ValueError(f"{delta} is not a negative fundamental discriminant")


# ---------------------------------------------------------------------------
# Congruences. Each rule returns the checked residue for one lattice vector;
# CongruenceViolation here would falsify the underlying congruence lemma.

def congruence_check(ctx: CaseContext, v, delta: int) -> int:
    """Verify the case congruence on one norm-(-delta) vector and return the
    residue (of phi(v) or of the squared linear form, per case rule)."""
    if ctx.lattice.norm_of(v) != -delta:
        raise ValueError(f"vector {v} has norm {ctx.lattice.norm_of(v)}, expected {-delta}")
    rule = ctx.case.congruence
    v1, v2, v3 = (int(x) for x in v)
    if rule == "cube_sum_mod4":
        s = v1 + v2 + v3
        if (s * s - delta) % 4:
            raise CongruenceViolation(f"(sum v)^2 != delta mod 4 at {v}, delta={delta}")
        phi = int(ctx.phi.evaluate(v))
        if (phi - s ** 3) % 4:
            raise CongruenceViolation(f"phi != (sum v)^3 mod 4 at {v}")
        if delta % 4 == 1 and phi % 2 == 0:
            raise CongruenceViolation(f"phi even at {v} despite delta = 1 mod 4")
        return phi % 4
    if rule == "x3_square_mod8":
        r = v3 * v3 % 8
        if (r + 3 * delta) % 8:
            raise CongruenceViolation(f"x3^2 != -3 delta mod 8 at {v}")
        return r
    if rule == "linear_square_mod6":
        r = (2 * v1 + v3) ** 2 % 6
        if (r + delta) % 6:
            raise CongruenceViolation(f"(2x1+x3)^2 != -delta mod 6 at {v}")
        return r
    if rule == "phi_mod4":
        phi = int(ctx.phi.evaluate(v))
        if (phi + 3 * delta) % 4:
            raise CongruenceViolation(f"phi != -3 delta mod 4 at {v}")
        return phi % 4
    if rule == "phi_mod6":
        phi = int(ctx.phi.evaluate(v))
        if (phi + delta) % 6:
            raise CongruenceViolation(f"phi != -delta mod 6 at {v}")
        return phi % 6
    if rule == "linear_square_mod10":
        r = (2 * v1 + v3) ** 2 % 10
        if (r + delta) % 10:
            raise CongruenceViolation(f"(2x1+x3)^2 != -delta mod 10 at {v}")
        return r
    raise ValueError(f"unknown congruence rule {rule!r}")


# decisive modulus in which the period residue is pinned per case rule
DECISIVE_MODULUS = {
    "cube_sum_mod4": 2,
    "x3_square_mod8": 2,
    "linear_square_mod6": 2,
    "phi_mod4": 4,
    "phi_mod6": 3,
    "linear_square_mod10": 2,
}


def term_residue(case: Case, delta: int) -> int:
    """Residue of each orbit term phi(T(a_j)) in the decisive modulus,
    implied by the congruence rule (well defined without any orbit)."""
    rule = case.congruence
    if rule in ("cube_sum_mod4", "x3_square_mod8", "linear_square_mod6",
                "linear_square_mod10"):
        return delta % 2  # odd term exactly when delta is odd
    if rule == "phi_mod4":
        return (-3 * delta) % 4
    if rule == "phi_mod6":
        return (-delta) % 3
    raise ValueError(f"unknown congruence rule {rule!r}")


def predicted_period_residue(case: Case, delta: int, h: int) -> int:
    return h * term_residue(case, delta) % DECISIVE_MODULUS[case.congruence]


def congruence_sweep(ctx: CaseContext, max_abs: int) -> int:
    """Check the case congruence on EVERY lattice vector of norm up to
    max_abs (a superset of every fundamental discriminant's vectors).
    Returns the number of vectors checked; any violation raises.

    Vectorized twin of :func:`congruence_check`; the two are compared on
    samples in the test suite.
    """
    import numpy as np

    vecs, norms = embeddings.ball_vectors(ctx.gram, max_abs)
    if len(vecs) == 0:
        return 0
    v1, v2, v3 = vecs[:, 0], vecs[:, 1], vecs[:, 2]
    rule = ctx.case.congruence
    # delta = -n throughout
    if rule == "cube_sum_mod4":
        s = v1 + v2 + v3
        bad = (s * s + norms) % 4 != 0
        phi = _phi_values(ctx, vecs)
        bad |= (phi - s ** 3) % 4 != 0
        odd_delta = norms % 4 == 3
        bad |= odd_delta & (phi % 2 == 0)
    elif rule == "x3_square_mod8":
        bad = (v3 * v3 - 3 * norms) % 8 != 0
    elif rule == "linear_square_mod6":
        bad = ((2 * v1 + v3) ** 2 - norms) % 6 != 0
    elif rule == "phi_mod4":
        bad = (_phi_values(ctx, vecs) - 3 * norms) % 4 != 0
    elif rule == "phi_mod6":
        bad = (_phi_values(ctx, vecs) - norms) % 6 != 0
    elif rule == "linear_square_mod10":
        bad = ((2 * v1 + v3) ** 2 - norms) % 10 != 0
    else:
        raise ValueError(f"unknown congruence rule {rule!r}")
    if np.any(bad):
        idx = int(np.nonzero(bad)[0][0])
        raise CongruenceViolation(
            f"congruence fails at v={tuple(int(t) for t in vecs[idx])}, "
            f"norm {int(norms[idx])}")
    return len(vecs)


def _phi_values(ctx: CaseContext, vecs):
    """phi evaluated on the rows of an int64 array (exact: coefficients are
    integers and the values stay far inside int64 at desk scale)."""
    import numpy as np

    total = np.zeros(len(vecs), dtype=np.int64)
    for (e1, e2, e3), c in ctx.phi.coeffs.items():
        if c.denominator != 1:
            raise ValueError("vectorized evaluation needs integer coefficients")
        total += int(c) * vecs[:, 0] ** e1 * vecs[:, 1] ** e2 * vecs[:, 2] ** e3
    return total


def period_sum(ctx: CaseContext, orbit: embeddings.Orbit) -> int:
    """Exact integer sum of phi over the orbit's distinguished vectors."""
    total = 0
    for v in orbit.vectors:
        total += int(ctx.phi.evaluate(v))
    return total


def class_condition(case: Case, delta: int, h: int) -> bool:
    """The case's class-number hypothesis (the part of the theorem that
    makes the pinned residue nonzero)."""
    if case.class_rule == "prime":
        return quadratic.is_prime(-delta)
    if case.class_rule == "prime_or_pizer":
        return quadratic.is_prime(-delta) or quadratic.pizer_mod4(delta)
    if case.class_rule == "h_ndiv_3":
        return h % 3 != 0
    raise ValueError(f"unknown class rule {case.class_rule!r}")


@dataclass(frozen=True)
class Verdict:
    case_id: str
    delta: int
    h: int
    epsilon: int
    applicable: bool
    congruence_residue: int | None
    period_sum: int | None
    status: Status

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "delta": self.delta,
            "h": self.h,
            "epsilon": self.epsilon,
            "applicable": self.applicable,
            "congruence_residue": self.congruence_residue,
            "period_sum": self.period_sum,
            "status": self.status.value,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def verdict_from_dict(doc: dict) -> Verdict:
    return Verdict(doc["case"], int(doc["delta"]), int(doc["h"]),
                   int(doc["epsilon"]), bool(doc["applicable"]),
                   None if doc["congruence_residue"] is None else int(doc["congruence_residue"]),
                   None if doc["period_sum"] is None else int(doc["period_sum"]),
                   Status(doc["status"]))


def verdict(ctx: CaseContext, delta: int, with_orbit: bool = True) -> Verdict:
    """Full pipeline for one discriminant.

    ForcedZero iff the sign is -1. With sign +1: ProvenNonzero when the
    discriminant is in the case's residue classes and the class-number
    condition holds; otherwise Inconclusive (the method is silent).
    ``with_orbit`` additionally computes the exact period sum (and checks it
    against the congruence-pinned residue).
    """
    case = ctx.case
    _require_fundamental(delta)
    h = quadratic.class_number(delta)
    eps = global_epsilon(case, delta)
    cond3 = condition3(case, delta)
    if cond3 and eps != 1:
        raise InconsistencyError(f"condition 3 holds at {delta} but epsilon = {eps}")
    applicable = case.applicable(delta)
    if applicable and not cond3:
        raise InconsistencyError(
            f"applicability residues must imply condition 3; failed at {delta}")

    residue = None
    exact_sum = None
    modulus = DECISIVE_MODULUS[case.congruence]
    if cond3 or embeddable(case, delta):
        if embeddings.eichler_count(case, delta) > 0:
            residue = predicted_period_residue(case, delta, h)
            if with_orbit:
                orbit = embeddings.orbit_for(ctx, delta)
                if orbit is None:
                    raise InconsistencyError(
                        f"positive embedding count but no optimal vectors at {delta}")
                for v in orbit.vectors:
                    congruence_check(ctx, v, delta)
                exact_sum = period_sum(ctx, orbit)
                if exact_sum % modulus != residue:
                    raise InconsistencyError(
                        f"period sum {exact_sum} != predicted residue {residue} "
                        f"mod {modulus} at {delta}")

    if eps == -1:
        status = Status.FORCED_ZERO
    elif applicable and class_condition(case, delta, h):
        status = Status.PROVEN_NONZERO
        if residue is None or residue == 0:
            raise InconsistencyError(
                f"ProvenNonzero requires a nonzero pinned residue at {delta}")
        if exact_sum == 0:
            raise InconsistencyError(f"ProvenNonzero but period sum is 0 at {delta}")
    else:
        status = Status.INCONCLUSIVE
    return Verdict(case.case_id, delta, h, eps, applicable, residue, exact_sum, status)
