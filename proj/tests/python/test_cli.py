"""The command-line tool is exercised as a subprocess: exit codes, formats,
byte-for-byte reproducibility.  Skipped when FORMSPAN_BIN is not set."""

import json
import os
import subprocess

import pytest

BIN = os.environ.get("FORMSPAN_BIN")

pytestmark = pytest.mark.skipif(not BIN, reason="FORMSPAN_BIN not set")


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def test_count_emits_closed_forms():
    r = run("count", "--kind", "symplectic", "--n", "4", "--nprime", "4", "--q", "2")
    assert r.returncode == 0
    rec = json.loads(r.stdout)
    assert rec["context"]["kind"] == "symplectic"
    names = {c["name"] for c in rec["counts"]}
    assert {"points", "P1", "R2"} <= names


def test_phi_exact_fixture_and_reproducibility():
    args = ("phi-exact", "--kind", "symplectic", "--n", "2", "--nprime", "2", "--q", "2")
    a, b = run(*args), run(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    rec = json.loads(a.stdout)
    assert rec["phi"] == "1/2"
    assert rec["numerator"] == "10"


def test_phi_mc_seeded():
    args = ("phi-mc", "--kind", "unitary", "--n", "1", "--nprime", "2", "--q", "2",
            "--samples", "2000", "--seed", "11")
    a, b = run(*args), run(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    rec = json.loads(a.stdout)
    assert rec["samples"] == 2000


def test_verify_bounds_small_exact_csv():
    r = run("verify-bounds", "--grid", "small", "--mode", "exact",
            "--threads", "2", "--format", "csv")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0].startswith("kind,n,nprime,q,")
    assert all(line.rsplit(",", 1)[-1] in ("pass", "exceptional") for line in lines[1:])


def test_verify_bounds_honors_grid_file(tmp_path):
    grids = {"tiny": {"dim_cap": 4, "unitary_q": [2], "symplectic_q": [2], "orthogonal_q": []}}
    path = tmp_path / "grids.json"
    path.write_text(json.dumps(grids))
    r = run("verify-bounds", "--grid", "tiny", "--grid-file", str(path), "--mode", "exact")
    assert r.returncode == 0
    rec = json.loads(r.stdout)
    assert rec["all_ok"] is True
    assert all(rep["context"]["q"] == 2 for rep in rec["reports"])


def test_table1_csv_mentions_constants():
    r = run("table1", "--format", "csv")
    assert r.returncode == 0
    assert "43/16" in r.stdout and "9/5" in r.stdout and "5/3" in r.stdout


def test_verify_identities_clean():
    r = run("verify-identities", "--suite", "gamma")
    assert r.returncode == 0
    rec = json.loads(r.stdout)
    assert rec["all_ok"] is True


def test_q2_experiment_small():
    r = run("q2-experiment", "--max-dim", "2", "--samples", "200", "--seed", "5")
    assert r.returncode == 0
    rec = json.loads(r.stdout)
    assert len(rec["rows"]) == 8


def test_bad_arguments_fail_loudly():
    assert run("phi-exact", "--kind", "symplectic", "--n", "3",
               "--nprime", "2", "--q", "2").returncode != 0
    assert run("count", "--kind", "nosuch", "--n", "2", "--nprime", "2", "--q", "2").returncode != 0
    assert run("nosuch-command").returncode != 0
