import json
from pathlib import Path

import pytest

from zerosum.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestBound:
    def test_k3_n1_exact_values(self, capsys):
        rc, out, _ = run(capsys, "bound", "--k", "3", "--n", "1", "--r", "1")
        assert rc == 0
        assert out.startswith("# config subcommand=bound k=3 n=1 r=1 bits=256\n")
        assert "q = 0.25 (exact 1/4)" in out
        assert "P[0] = 0.421875 (exact 27/64)" in out
        assert "Q = 1.0 (exact 1/1)" in out
        assert "A_finite = 0.839947366596582" in out
        assert "A_finite_vacuous = true" in out
        assert "A_asymptotic = 1.14814814814815 (exact 31/27)" in out
        assert "prior_base = 1.12262648039048" in out

    def test_nonvacuous_at_large_n(self, capsys):
        rc, out, _ = run(capsys, "bound", "--k", "3", "--n", "40", "--r", "1")
        assert rc == 0
        assert "A_finite_vacuous = false" in out

    def test_bits_flag_is_echoed(self, capsys):
        rc, out, _ = run(capsys, "bound", "--k", "3", "--n", "1", "--r", "1",
                         "--bits", "128")
        assert rc == 0
        assert "bits=128" in out.splitlines()[0]

    def test_bits_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("ZEROSUM_BITS", "192")
        rc, out, _ = run(capsys, "bound", "--k", "3", "--n", "1", "--r", "1")
        assert rc == 0
        assert "bits=192" in out.splitlines()[0]

    def test_invalid_params_fail_cleanly(self, capsys):
        rc, _, err = run(capsys, "bound", "--k", "1", "--n", "1", "--r", "1")
        assert rc == 1
        assert "error:" in err


class TestMaxn:
    def test_balanced_324(self, capsys):
        rc, out, _ = run(capsys, "maxn", "--k", "3", "--n", "2", "--r", "4")
        assert rc == 0
        assert "max_witness_N = 7" in out
        assert "E[Z](7) = 0.51575764731943" in out
        assert "E[Z](8) = 2.06303058927772" in out

    def test_explicit_q(self, capsys):
        rc, out, _ = run(capsys, "maxn", "--k", "3", "--n", "1", "--r", "1",
                         "--q", "0.25")
        assert rc == 0
        assert "q=0.25" in out.splitlines()[0]
        assert "max_witness_N = 2" in out

    def test_optimized_q_never_worse(self, capsys):
        rc, out, _ = run(capsys, "maxn", "--k", "3", "--n", "2", "--r", "4",
                         "--optimize-q")
        assert rc == 0
        n_line = next(l for l in out.splitlines() if l.startswith("max_witness_N"))
        assert int(n_line.split("=")[1]) >= 7

    def test_rejects_bad_q(self, capsys):
        rc, _, err = run(capsys, "maxn", "--k", "3", "--n", "1", "--r", "1",
                         "--q", "1.5")
        assert rc == 1 and "error:" in err


class TestWitnessVerify:
    def test_round_trip(self, capsys, tmp_path):
        out_file = str(tmp_path / "cert.json")
        rc, out, _ = run(capsys, "witness", "--k", "3", "--n", "2", "--r", "4",
                         "--N", "7", "--q", "auto", "--trials", "1000",
                         "--seed", "1", "--out", out_file)
        assert rc == 0
        assert "result = success" in out
        assert "trial_index = 0" in out
        assert "vacuous = false" in out
        assert "claim = s_6(C_2^4) > 7" in out
        rc2, out2, _ = run(capsys, "verify", out_file)
        assert rc2 == 0
        assert "verdict = verified" in out2

    def test_failure_reports_z_counts(self, capsys, tmp_path):
        out_file = str(tmp_path / "cert.json")
        rc, out, _ = run(capsys, "witness", "--k", "3", "--n", "1", "--r", "1",
                         "--N", "3", "--q", "auto", "--trials", "4",
                         "--seed", "7", "--out", out_file)
        assert rc == 1
        assert "result = failure" in out
        assert "z_counts = 1,1,1,1" in out
        assert not Path(out_file).exists()

    def test_verify_refutes_tamper(self, capsys, tmp_path):
        out_file = tmp_path / "cert.json"
        run(capsys, "witness", "--k", "3", "--n", "2", "--r", "4",
            "--N", "7", "--q", "auto", "--trials", "1000", "--seed", "1",
            "--out", str(out_file))
        doc = json.loads(out_file.read_text())
        doc["N"] = 6
        doc["claim"] = "s_6(C_2^4) > 6"
        doc["sequence"] = [[0, 0, 0, 0]] * 6
        tampered = tmp_path / "tampered.json"
        tampered.write_text(json.dumps(doc))
        rc, out, _ = run(capsys, "verify", str(tampered))
        assert rc == 2
        assert "verdict = refuted" in out

    def test_verify_malformed(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"schema\": \"zerosum-cert/1\"}")
        rc, out, _ = run(capsys, "verify", str(bad))
        assert rc == 3
        assert "verdict = malformed" in out

    def test_verify_missing_file(self, capsys, tmp_path):
        rc, out, _ = run(capsys, "verify", str(tmp_path / "nope.json"))
        assert rc == 3
        assert "verdict = malformed" in out


class TestCountExact:
    def test_count_from_file(self, capsys, tmp_path):
        seq = tmp_path / "seq.txt"
        seq.write_text("# demo\n0,1\n1,0\n1,1\n0,0\n")
        rc, out, _ = run(capsys, "count", "--n", "2", "--r", "2", "--L", "3",
                         "--seq", str(seq))
        assert rc == 0
        assert "count = 1" in out

    def test_count_bad_file(self, capsys, tmp_path):
        seq = tmp_path / "seq.txt"
        seq.write_text("0,x\n")
        rc, _, err = run(capsys, "count", "--n", "2", "--r", "2", "--L", "2",
                         "--seq", str(seq))
        assert rc == 1 and "error:" in err

    def test_exact_c2(self, capsys):
        rc, out, _ = run(capsys, "exact", "--L", "2", "--n", "2", "--r", "1",
                         "--mmax", "6")
        assert rc == 0
        assert "s = 3" in out
        assert "free_at = 2" in out
        assert "blocked_at = 3" in out
        assert "witness_m = 2" in out

    def test_exact_unknown(self, capsys):
        rc, out, _ = run(capsys, "exact", "--L", "2", "--n", "3", "--r", "1",
                         "--mmax", "4")
        assert rc == 0
        assert "s = unknown" in out
        assert "searched_up_to = 4" in out
        assert "witness_m = 4" in out


class TestSweep:
    def test_golden_file(self, capsys, tmp_path):
        out_csv = tmp_path / "sweep.csv"
        rc, out, _ = run(capsys, "sweep", "--k", "3", "--n-from", "1",
                         "--n-to", "8", "--csv", str(out_csv))
        assert rc == 0
        assert "rows = 8" in out
        assert out_csv.read_bytes() == (DATA / "sweep_k3_n1_8.csv").read_bytes()

    def test_header_schema(self, capsys, tmp_path):
        out_csv = tmp_path / "sweep.csv"
        run(capsys, "sweep", "--k", "4", "--n-from", "2", "--n-to", "3",
            "--csv", str(out_csv))
        header = out_csv.read_text().splitlines()[0]
        assert header == "n,q,Q,a_finite,gap_to_asymptotic,prior_base"

    def test_rejects_bad_range(self, capsys, tmp_path):
        rc, _, err = run(capsys, "sweep", "--k", "3", "--n-from", "5",
                         "--n-to", "2", "--csv", str(tmp_path / "x.csv"))
        assert rc == 1 and "error:" in err


class TestDeterminism:
    def test_repeat_runs_are_byte_identical(self, capsys, tmp_path):
        def one(path):
            rc, out, _ = run(capsys, "witness", "--k", "3", "--n", "2",
                             "--r", "4", "--N", "8", "--q", "auto",
                             "--trials", "60", "--seed", "9", "--out", path)
            assert rc == 0
            return out, Path(path).read_bytes()

        out_a, cert_a = one(str(tmp_path / "a.json"))
        out_b, cert_b = one(str(tmp_path / "b.json"))
        assert cert_a == cert_b
        assert out_a.replace("a.json", "") == out_b.replace("b.json", "")

    def test_thread_count_is_invisible(self, capsys, tmp_path):
        def one(path, threads):
            rc, out, _ = run(capsys, "witness", "--k", "3", "--n", "2",
                             "--r", "4", "--N", "8", "--q", "auto",
                             "--trials", "60", "--seed", "9", "--out", path,
                             "--threads", str(threads))
            assert rc == 0
            return out.replace(path, "<out>"), Path(path).read_bytes()

        serial = one(str(tmp_path / "s.json"), 1)
        parallel = one(str(tmp_path / "p.json"), 4)
        assert serial == parallel

    def test_threads_env_accepted(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("ZEROSUM_THREADS", "2")
        out_file = str(tmp_path / "cert.json")
        rc, out, _ = run(capsys, "witness", "--k", "3", "--n", "2", "--r", "4",
                         "--N", "7", "--q", "auto", "--trials", "10",
                         "--seed", "1", "--out", out_file)
        assert rc == 0
        assert "threads=" not in out.splitlines()[0]
