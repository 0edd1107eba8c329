import json
import subprocess
import sys

import pytest

import xpq.cli as cli
from xpq import (
    CheckResult,
    SystemParams,
    closed_set_from_json,
    orbit_from_json,
    trace_spec_from_json,
)

BASE = [sys.executable, "-m", "xpq.cli"]


def run(*args, env=None, inp=None):
    return subprocess.run(
        BASE + list(args), capture_output=True, text=True, env=env, input=inp
    )


def run_json(*args, **kw):
    proc = run(*args, **kw)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


class TestExitCodes:
    def test_success(self):
        assert run("ktheory", "-p", "2", "-q", "3").returncode == 0

    def test_usage_errors(self):
        assert run("ktheory", "-p", "2").returncode == 1  # missing -q
        assert run("no-such-command").returncode == 1
        assert run("ktheory", "-p", "x", "-q", "3").returncode == 1
        assert run("trace-eval", "-p", "2", "-q", "3", "--trace", "{bad json",
                   "--element", "{}").returncode == 1
        assert run("orbits", "-p", "2", "-q", "3", "--max-den", "7",
                   "--format", "nope").returncode == 1

    def test_domain_errors(self):
        # r shares a factor with pq
        proc = run("stabilizer", "-p", "2", "-q", "3", "-r", "6")
        assert proc.returncode == 2
        assert "factor" in proc.stderr
        # p out of range
        assert run("ktheory", "-p", "1", "-q", "3").returncode == 2
        # fixed points of the identity
        assert run("fix", "-p", "2", "-q", "3", "-m", "0", "-n", "0").returncode == 2

    def test_missing_bound_is_usage_error(self):
        proc = run("orbits", "-p", "2", "-q", "3")
        assert proc.returncode == 1
        assert "max-den" in proc.stderr or "XPQ_MAX_DENOMINATOR" in proc.stderr

    def test_check_failure_returns_3(self, monkeypatch, capsys):
        failing = CheckResult("exact", passed=1, failed=2, failures=["a", "b"])
        monkeypatch.setattr(cli, "run_checks", lambda *a, **k: [failing])
        rc = cli.main(["check", "exact"])
        assert rc == 3
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is False
        assert data["suites"][0]["failures"] == ["a", "b"]

    def test_check_success_in_process(self, capsys):
        rc = cli.main(["check", "exact", "--trials", "4", "--max-den", "12"])
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True
        assert all(s["failed"] == 0 for s in data["suites"])


class TestDeterminism:
    def test_byte_identical_runs(self):
        a = run("orbits", "-p", "2", "-q", "3", "--max-den", "30")
        b = run("orbits", "-p", "2", "-q", "3", "--max-den", "30")
        c = run("orbits", "-p", "2", "-q", "3", "--max-den", "30", "--threads", "4")
        assert a.stdout == b.stdout == c.stdout
        assert a.stdout.endswith("\n")

    def test_sorted_keys(self):
        out = run("ktheory", "-p", "3", "-q", "5").stdout
        data = json.loads(out)
        assert list(data) == sorted(data)


class TestOrbitsCommand:
    def test_json_round_trip(self):
        data = run_json("orbits", "-p", "2", "-q", "3", "--max-den", "7")
        assert [entry["r"] for entry in data["orbits"]] == [1, 5, 7]
        for entry in data["orbits"]:
            orbit = orbit_from_json(entry)
            assert orbit.denominator == entry["r"]

    def test_env_var_bound(self, tmp_path):
        import os

        env = dict(os.environ, XPQ_MAX_DENOMINATOR="7")
        data = json.loads(run("orbits", "-p", "2", "-q", "3", env=env).stdout)
        assert [e["r"] for e in data["orbits"]] == [1, 5, 7]
        # explicit flag wins over the environment
        data = json.loads(
            run("orbits", "-p", "2", "-q", "3", "--max-den", "5", env=env).stdout
        )
        assert [e["r"] for e in data["orbits"]] == [1, 5]

    def test_csv(self):
        proc = run("orbits", "-p", "2", "-q", "3", "--max-den", "7", "--format", "csv")
        assert proc.returncode == 0
        lines = proc.stdout.strip().splitlines()
        assert lines[0].startswith("r,")
        assert len(lines) == 4

    def test_pretty(self):
        proc = run("orbits", "-p", "2", "-q", "3", "--max-den", "7", "--format", "pretty")
        assert proc.returncode == 0 and "1/5" in proc.stdout

    def test_dependence_warning_on_stderr(self):
        proc = run("orbits", "-p", "2", "-q", "4", "--max-den", "5")
        assert proc.returncode == 0
        assert "dependent" in proc.stderr.lower()
        clean = run("orbits", "-p", "2", "-q", "3", "--max-den", "5")
        assert clean.stderr == ""


class TestStabilizerAndFix:
    def test_stabilizer(self):
        data = run_json("stabilizer", "-p", "2", "-q", "3", "-r", "5")
        assert data["basis"] == [[1, 1], [0, 4]]
        assert data["index"] == 4

    def test_fix(self):
        data = run_json("fix", "-p", "2", "-q", "3", "-m", "1", "-n", "1")
        assert data["count"] == 5
        assert data["complete"] is True
        assert data["points"] == ["0/1", "1/5", "2/5", "3/5", "4/5"]

    def test_fix_bounded(self):
        data = run_json(
            "fix", "-p", "2", "-q", "3", "-m", "1", "-n", "1", "--max-den", "1"
        )
        assert data["count"] == 5
        assert data["complete"] is False
        assert data["points"] == ["0/1"]


class TestLift:
    def test_lift(self):
        data = run_json("lift", "-p", "2", "-q", "3", "--point", "3/7", "--depth", "4")
        seq = data["lifts"]
        assert len(seq) == 5 and seq[0] == "3/7"
        # each level multiplies back by pq
        from xpq import QmodZ

        for cur, nxt in zip(seq, seq[1:]):
            assert QmodZ.parse(nxt).mul_int(6) == QmodZ.parse(cur)


class TestTraceCommands:
    SPEC5 = (
        '{"kind":"finite_orbit","orbit":{"p":2,"q":3,"r":5,'
        '"orbit":["1/5","2/5","3/5","4/5"],'
        '"stabilizer":{"basis":[[1,1],[0,4]],"index":4}},'
        '"chi":{"t1":"0/1","t2":"0/1"}}'
    )
    U1 = '{"terms":[{"g":{"x":{"num":"1","a":0,"b":0},"m":0,"n":0},"c":"1"}]}'

    def test_trace_eval_worked(self):
        data = run_json(
            "trace-eval", "-p", "2", "-q", "3",
            "--trace", self.SPEC5, "--element", self.U1,
        )
        exact = data["value"]["exact"]
        assert exact["level"] == 5
        assert exact["coeffs"] == ["-1/4", "0", "0", "0"]
        assert abs(data["value"]["approx"]["re"] + 0.25) < 1e-12
        assert abs(data["value"]["approx"]["im"]) < 1e-12

    def test_trace_eval_from_file(self, tmp_path):
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(self.SPEC5)
        data = run_json(
            "trace-eval", "-p", "2", "-q", "3",
            "--trace", f"@{spec_file}", "--element", self.U1,
        )
        assert data["value"]["exact"]["coeffs"] == ["-1/4", "0", "0", "0"]

    def test_trace_spec_params_mismatch_is_domain_error(self):
        proc = run(
            "trace-eval", "-p", "3", "-q", "5",
            "--trace", self.SPEC5, "--element", self.U1,
        )
        assert proc.returncode == 2

    def test_moments_json_and_csv(self):
        data = run_json(
            "moments", "-p", "2", "-q", "3", "--trace", self.SPEC5, "--n-max", "6"
        )
        values = {row["n"]: row for row in data["values"]}
        assert values[0]["exact"]["coeffs"] == ["1", "0", "0", "0"]
        assert values[1]["exact"]["coeffs"] == ["-1/4", "0", "0", "0"]
        assert values[5]["exact"]["coeffs"] == ["1", "0", "0", "0"]
        assert values[0]["exact"]["level"] == 5

        proc = run(
            "moments", "-p", "2", "-q", "3", "--trace", self.SPEC5,
            "--n-max", "6", "--format", "csv",
        )
        lines = proc.stdout.strip().splitlines()
        assert lines[0] == "n,re,im,exact"
        assert len(lines) == 14
        row5 = dict(zip(lines[0].split(","), lines[12].split(",")))
        assert row5["n"] == "5" and float(row5["re"]) == 1.0

    def test_invariance(self):
        data = run_json(
            "invariance", "-p", "2", "-q", "3", "--trace", self.SPEC5, "--n-max", "12"
        )
        assert data["invariant"] is True

    def test_canonical_spec_needs_no_orbit(self):
        data = run_json(
            "trace-eval", "-p", "2", "-q", "3",
            "--trace", '{"kind":"canonical"}', "--element", self.U1,
        )
        assert data["value"]["exact"]["coeffs"] == ["0"]

    def test_csv_rejected_elsewhere(self):
        proc = run(
            "trace-eval", "-p", "2", "-q", "3", "--trace", '{"kind":"canonical"}',
            "--element", self.U1, "--format", "csv",
        )
        assert proc.returncode == 1


class TestKTheoryCommand:
    def test_worked(self):
        data = run_json("ktheory", "-p", "2", "-q", "3")
        assert data["K0"] == {"rank": 2, "torsion": []}
        assert data["K1"] == {"rank": 2, "torsion": []}
        assert data["matches"] is True
        data = run_json("ktheory", "-p", "3", "-q", "5")
        assert data["K0"] == {"rank": 2, "torsion": [2]}

    def test_lemma36(self):
        data = run_json("lemma36", "-m", "2", "-n", "4")
        assert data["kernel"] == {"rank": 0, "torsion": [2]}
        assert data["cokernel"] == {"rank": 0, "torsion": [2]}


class TestPrimCommands:
    POINTS = (
        '[{"kind":"orbit_char","orbit":{"p":2,"q":3,"r":5,'
        '"orbit":["1/5","2/5","3/5","4/5"],'
        '"stabilizer":{"basis":[[1,1],[0,4]],"index":4}},'
        '"chi":{"t1":"0/1","t2":"1/4"}}]'
    )

    def test_closure_round_trip(self):
        data = run_json("prim-closure", "--points", self.POINTS)
        desc = closed_set_from_json(data)
        assert not desc.is_empty()
        assert data["parts"][0]["part"] == [["0/1", "1/4"]]

    def test_closure_of_infinity(self):
        data = run_json("prim-closure", "--points", '[{"kind":"infinity"}]')
        assert data == {"kind": "all"}

    def test_limit_escaping(self):
        data = run_json("prim-limit", "--sequence", '{"tail":{"kind":"escaping"}}')
        assert data == {"kind": "all"}

    def test_limit_constant_orbit(self):
        seq = (
            '{"tail":{"kind":"constant_orbit","orbit":{"p":2,"q":3,"r":5,'
            '"orbit":["1/5","2/5","3/5","4/5"],'
            '"stabilizer":{"basis":[[1,1],[0,4]],"index":4}},'
            '"chi_limit":{"t1":"0/1","t2":"0/1"}}}'
        )
        data = run_json("prim-limit", "--sequence", seq)
        assert data["kind"] == "union"
        assert data["parts"][0]["part"] == [["0/1", "0/1"]]


class TestMiscCommands:
    def test_icc_witness(self):
        g = '{"x":{"num":"1","a":0,"b":0},"m":0,"n":0}'
        data = run_json("icc-witness", "-p", "2", "-q", "3", "--element", g,
                        "--count", "12")
        texts = [json.dumps(e, sort_keys=True) for e in data["conjugates"]]
        assert len(texts) == len(set(texts)) == 12

    def test_icc_identity_is_domain_error(self):
        g = '{"x":{"num":"0","a":0,"b":0},"m":0,"n":0}'
        proc = run("icc-witness", "-p", "2", "-q", "3", "--element", g)
        assert proc.returncode == 2

    def test_mult_indep(self):
        data = run_json("mult-indep", "-p", "4", "-q", "8")
        assert data == {"independent": False, "witness": {"r": 3, "s": 2}}
        data = run_json("mult-indep", "-p", "2", "-q", "3")
        assert data == {"independent": True, "witness": None}

    def test_mult_indep_no_warning(self):
        proc = run("mult-indep", "-p", "4", "-q", "8")
        assert proc.stderr == ""

    def test_check_all_small(self):
        proc = run("check", "all", "--trials", "3", "--max-den", "12")
        assert proc.returncode == 0, proc.stderr
        data = json.loads(proc.stdout)
        assert data["ok"] is True
        assert {s["suite"] for s in data["suites"]} == {
            "exact", "dynamics", "groupalg", "traces", "ktheory", "primspace"
        }
        assert all(s["failed"] == 0 for s in data["suites"])

    def test_check_unknown_suite(self):
        assert run("check", "nope").returncode == 1

    def test_help(self):
        proc = run("--help")
        assert proc.returncode == 0
        for name in ("orbits", "stabilizer", "fix", "lift", "trace-eval", "moments",
                     "invariance", "ktheory", "lemma36", "prim-closure", "prim-limit",
                     "icc-witness", "mult-indep", "check"):
            assert name in proc.stdout
