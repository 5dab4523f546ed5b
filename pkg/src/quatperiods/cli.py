"""Command-line front end.

Commands: verify, scan, hecke, lvalue, orbit, selftest. Single results are
JSON on stdout; scans stream CSV or JSON-lines (deterministic row order,
ascending |delta|, independent of the worker count).

Exit codes: 0 success, 1 computational error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import cases, embeddings, lfunctions, periods, qseries, quadratic

CSV_COLUMNS = ["case", "delta", "h", "epsilon", "applicable",
               "congruence_residue", "period_sum", "status"]


class UsageError(Exception):
    pass


def _get_context(args) -> cases.CaseContext:
    if getattr(args, "config", None):
        cases.install_cases(cases.load_config(args.config))
    try:
        return cases.get_context(args.case)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _check_disc(delta: int) -> int:
    if delta >= 0 or not quadratic.is_fundamental(delta):
        raise UsageError(
            f"{delta} is not a negative fundamental discriminant "
            "(--allow-nonmaximal is reserved and not implemented)")
    return delta


def cmd_verify(args) -> int:
    ctx = _get_context(args)
    delta = _check_disc(args.disc)
    v = periods.verdict(ctx, delta, with_orbit=not args.no_orbit)
    print(v.to_json())
    return 0


def _scan_one(case_id: str, delta: int, check_congruence: bool, check_eichler: bool):
    ctx = cases.get_context(case_id)
    v = periods.verdict(ctx, delta, with_orbit=False)
    violations = 0
    if check_congruence:
        for vec in embeddings.represent(ctx.gram, -delta):
            try:
                periods.congruence_check(ctx, vec, delta)
            except periods.CongruenceViolation:
                violations += 1
    if check_eichler:
        predicted = embeddings.eichler_count(ctx.case, delta)
        found = len(embeddings.gamma_classes(ctx, delta))
        if predicted != found:
            violations += 1
    return v, violations


def cmd_scan(args) -> int:
    ctx = _get_context(args)
    if args.max > 10**6:
        raise UsageError("scan bound capped at 10^6")
    deltas = []
    for d in quadratic.fundamental_discriminants(args.max):
        if args.prime_only and not quadratic.is_prime(-d):
            continue
        if args.residue is not None:
            mod, rem = args.residue
            if d % mod != rem % mod:
                continue
        deltas.append(d)

    work = [(ctx.case.case_id, d, args.check_congruence, args.check_eichler)
            for d in deltas]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_scan_worker, work, chunksize=64))
    else:
        results = [_scan_one(*item) for item in work]

    rows = sorted((v for v, _ in results), key=lambda v: -v.delta)
    total_violations = sum(n for _, n in results)
    counts: dict[str, int] = {}
    for v in rows:
        counts[v.status.value] = counts.get(v.status.value, 0) + 1

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if args.format == "csv":
            writer = csv.writer(out)
            writer.writerow(CSV_COLUMNS)
            for v in rows:
                d = v.to_dict()
                writer.writerow([d[c] if d[c] is not None else "" for c in CSV_COLUMNS])
        else:
            for v in rows:
                out.write(v.to_json() + "\n")
        summary = {"rows": len(rows), "violations": total_violations, "status_counts": counts}
        print(json.dumps({"summary": summary}), file=sys.stderr)
    finally:
        if args.out:
            out.close()
    return 0 if total_violations == 0 else 1


def _scan_worker(item):
    return _scan_one(*item)


def cmd_hecke(args) -> int:
    ctx = _get_context(args)
    primes = [int(p) for p in args.primes.split(",")]
    nmax = max(primes)
    coeffs = qseries.newform_coefficients(ctx.case.oracle, nmax)
    rows = []
    for p in primes:
        if not quadratic.is_prime(p):
            raise UsageError(f"{p} is not prime")
        if ctx.case.disc_order % p == 0:
            rows.append({"p": p, "eigenvalue": None, "oracle_ap": coeffs[p],
                         "match": None, "note": "p divides disc(O); T_p undefined"})
            continue
        lam = ctx.hecke_eigenvalue(p)
        rows.append({"p": p, "eigenvalue": lam, "oracle_ap": coeffs[p],
                     "match": lam == coeffs[p]})
    print(json.dumps({"case": ctx.case.case_id, "rows": rows}))
    return 0 if all(r["match"] is not False for r in rows) else 1


def cmd_lvalue(args) -> int:
    ctx = _get_context(args)
    delta = _check_disc(args.disc)
    case = ctx.case
    eps = periods.global_epsilon(case, delta)
    need = lfunctions.required_cutoff(case.disc_order, delta)
    coeffs = qseries.newform_coefficients(case.oracle, need)
    value = lfunctions.twisted_central_value(
        coeffs, case.weight, case.disc_order, delta, eps, tol=args.tol)
    probe = lfunctions.functional_equation_sign_probe(
        coeffs, case.weight, case.disc_order, delta, tol=args.tol)
    print(json.dumps({"case": case.case_id, "delta": delta, "epsilon": eps,
                      "sign_probe": probe, "central_value": value,
                      "cutoff": need}))
    return 0 if probe == eps else 1


def cmd_orbit(args) -> int:
    ctx = _get_context(args)
    delta = _check_disc(args.disc)
    orbit = embeddings.orbit_for(ctx, delta)
    if orbit is None:
        print(json.dumps({"case": ctx.case.case_id, "delta": delta,
                          "embeddings": 0, "vectors": [], "period_sum": None}))
        return 0
    total = periods.period_sum(ctx, orbit)
    print(json.dumps({"case": ctx.case.case_id, "delta": delta,
                      "embeddings": len(embeddings.gamma_classes(ctx, delta)),
                      "vectors": [list(v) for v in orbit.vectors],
                      "period_sum": total}))
    return 0


def cmd_selftest(args) -> int:
    failures = 0

    def check(name, fn):
        nonlocal failures
        try:
            fn()
        except Exception as exc:  # report and keep going
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"PASS {name}")

    def presets():
        for cid in cases.case_ids():
            ctx = cases.get_context(cid)
            ctx.phi  # builds order, lattice, units, harmonic space

    def gamma_sizes():
        for cid, size in (("C1", 12), ("C2", 3), ("C3", 2)):
            assert len(cases.get_context(cid).units) == size, cid

    def hecke():
        for cid in cases.case_ids():
            ctx = cases.get_context(cid)
            coeffs = qseries.newform_coefficients(ctx.case.oracle, 7)
            for p in (3, 5, 7):
                if ctx.case.disc_order % p:
                    assert ctx.hecke_eigenvalue(p) == coeffs[p], (cid, p)

    def eichler():
        for cid in cases.case_ids():
            ctx = cases.get_context(cid)
            for d in quadratic.fundamental_discriminants(120):
                assert (len(embeddings.gamma_classes(ctx, d))
                        == embeddings.eichler_count(ctx.case, d)), (cid, d)

    def congruences():
        for cid in cases.case_ids():
            ctx = cases.get_context(cid)
            for d in quadratic.fundamental_discriminants(120):
                for vec in embeddings.represent(ctx.gram, -d):
                    periods.congruence_check(ctx, vec, d)

    def sample_verdicts():
        expect = {("C1", -19): "ProvenNonzero", ("C1", -7): "ForcedZero",
                  ("C5", -19): "ProvenNonzero"}
        for (cid, d), status in expect.items():
            v = periods.verdict(cases.get_context(cid), d)
            assert v.status.value == status, (cid, d, v.status)

    check("presets build and validate", presets)
    check("unit group sizes 12/3/2", gamma_sizes)
    check("Hecke eigenvalues match q-series oracle (p <= 7)", hecke)
    check("embedding class counts match the count formula (|d| <= 120)", eichler)
    check("per-vector congruences hold (|d| <= 120)", congruences)
    check("sample verdicts", sample_verdicts)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatperiods",
        description="Exact toric periods over definite quaternion orders and "
                    "numeric twisted central L-values")
    parser.add_argument("--config", help="JSON case file overriding the built-in presets")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_case(p):
        p.add_argument("--case", required=True, help="case id (C1..C6)")

    p = sub.add_parser("verify", help="full pipeline for one discriminant")
    add_case(p)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--no-orbit", action="store_true",
                   help="skip the exact orbit/period computation")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan", help="verdicts over all fundamental discriminants")
    add_case(p)
    p.add_argument("--max", type=int, required=True, help="bound on |delta|")
    p.add_argument("--prime-only", action="store_true")
    p.add_argument("--residue", type=_residue_pair, metavar="MOD:REM",
                   help="keep delta with delta ≡ REM (mod MOD)")
    p.add_argument("--check-congruence", action="store_true",
                   help="verify the case congruence on every norm vector")
    p.add_argument("--check-eichler", action="store_true",
                   help="compare class counts with the count formula")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("hecke", help="eigenvalue table with oracle comparison")
    add_case(p)
    p.add_argument("--primes", required=True, help="comma-separated primes")
    p.set_defaults(fn=cmd_hecke)

    p = sub.add_parser("lvalue", help="numeric central value and sign probe")
    add_case(p)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_lvalue)

    p = sub.add_parser("orbit", help="class-group orbit and exact period sum")
    add_case(p)
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("selftest", help="quick built-in consistency checks")
    p.set_defaults(fn=cmd_selftest)
    return parser


def _residue_pair(text: str):
    mod, _, rem = text.partition(":")
    return int(mod), int(rem)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
