import csv
import io
import json
import subprocess
import sys

import pytest

from quatperiods import cases, cli, periods


def run_cli(*argv):
    """Invoke main() in-process, capturing stdout."""
    import contextlib

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()


class TestVerify:
    def test_proven_nonzero(self):
        code, out = run_cli("verify", "--case", "C1", "--disc", "-19")
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "ProvenNonzero"
        assert doc["period_sum"] % 2 == 1

    def test_forced_zero(self):
        code, out = run_cli("verify", "--case", "C1", "--disc", "-7")
        assert code == 0
        assert json.loads(out)["status"] == "ForcedZero"

    def test_nonfundamental_is_usage_error(self):
        code, _ = run_cli("verify", "--case", "C1", "--disc", "-12")
        assert code == 2

    def test_unknown_case_is_usage_error(self):
        code, _ = run_cli("verify", "--case", "C9", "--disc", "-19")
        assert code == 2

    def test_bad_flag_is_usage_error(self):
        code, _ = run_cli("verify", "--case", "C1")
        assert code == 2


class TestScan:
    def test_scan_csv_roundtrip(self, tmp_path):
        out_file = tmp_path / "scan.csv"
        code, _ = run_cli("scan", "--case", "C1", "--max", "120",
                          "--out", str(out_file))
        assert code == 0
        with open(out_file, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["delta"] for r in rows] == sorted(
            (r["delta"] for r in rows), key=lambda s: -int(s))
        # every row round-trips through the verdict JSON schema
        for row in rows:
            doc = {
                "case": row["case"], "delta": int(row["delta"]), "h": int(row["h"]),
                "epsilon": int(row["epsilon"]), "applicable": row["applicable"] == "True",
                "congruence_residue": int(row["congruence_residue"])
                if row["congruence_residue"] else None,
                "period_sum": int(row["period_sum"]) if row["period_sum"] else None,
                "status": row["status"],
            }
            v = periods.verdict_from_dict(doc)
            fresh = periods.verdict(cases.get_context("C1"), v.delta, with_orbit=False)
            assert fresh == v

    def test_checks_report_zero_violations(self, tmp_path):
        code, _ = run_cli("scan", "--case", "C5", "--max", "150",
                          "--check-congruence", "--check-eichler",
                          "--out", str(tmp_path / "x.csv"))
        assert code == 0

    def test_deterministic_across_workers(self, tmp_path):
        f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli("scan", "--case", "C2", "--max", "200", "--out", str(f1))
        run_cli("scan", "--case", "C2", "--max", "200", "--jobs", "3", "--out", str(f2))
        assert f1.read_bytes() == f2.read_bytes()

    def test_jsonl_and_filters(self):
        code, out = run_cli("scan", "--case", "C1", "--max", "100",
                            "--format", "jsonl", "--prime-only",
                            "--residue", "8:5")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert rows and all(r["delta"] % 8 == 5 for r in rows)
        assert all(r["status"] == "ProvenNonzero" for r in rows)


class TestOtherCommands:
    def test_hecke_table(self):
        code, out = run_cli("hecke", "--case", "C1", "--primes", "3,5,7")
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [r["match"] for r in rows] == [True, True, True]
        assert rows[0]["eigenvalue"] == 12

    def test_hecke_skips_level_primes(self):
        code, out = run_cli("hecke", "--case", "C2", "--primes", "2,5")
        assert code == 0
        rows = json.loads(out)["rows"]
        assert rows[0]["eigenvalue"] is None and rows[1]["match"] is True

    def test_lvalue(self):
        code, out = run_cli("lvalue", "--case", "C2", "--disc", "-35",
                            "--tol", "1e-8")
        assert code == 0
        doc = json.loads(out)
        assert doc["epsilon"] == doc["sign_probe"] == 1
        assert abs(doc["central_value"]) > 1e-3

    def test_orbit(self):
        code, out = run_cli("orbit", "--case", "C1", "--disc", "-19")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["vectors"]) == 1 and doc["period_sum"] % 2 == 1

    def test_selftest(self):
        code, out = run_cli("selftest")
        assert code == 0
        assert all(line.startswith("PASS") for line in out.strip().splitlines())


class TestConfig:
    def test_builtin_roundtrip(self, tmp_path):
        doc = cases.dump_builtin_config()
        path = tmp_path / "cases.json"
        path.write_text(json.dumps(doc))
        loaded = cases.load_config(path)
        assert [c.case_id for c in loaded] == cases.case_ids()
        assert loaded[0] == cases.get_case("C1")

    def test_cli_accepts_config(self, tmp_path):
        doc = cases.dump_builtin_config()
        # rename a case to prove the file is honoured
        doc["cases"][0]["case_id"] = "X1"
        path = tmp_path / "cases.json"
        path.write_text(json.dumps(doc))
        code, out = run_cli("--config", str(path), "verify", "--case", "X1",
                            "--disc", "-19")
        assert code == 0
        assert json.loads(out)["status"] == "ProvenNonzero"
        cases.install_cases([])  # restore pristine context cache
        cases.get_context.cache_clear()

    def test_indefinite_algebra_rejected(self, tmp_path):
        doc = cases.dump_builtin_config()
        doc["cases"][0]["algebra"]["a"] = "1"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(ValueError, match="definite"):
            cases.load_config(path)


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "quatperiods.cli", "verify", "--case", "C1",
             "--disc", "-19"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["status"] == "ProvenNonzero"
