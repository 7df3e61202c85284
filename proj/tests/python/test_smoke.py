"""End-to-end checks of the python package against known exact values."""

from fractions import Fraction

import formspan


def test_gaussian_binomial():
    assert formspan.gaussian_binomial(4, 2, 2) == 35
    assert formspan.gaussian_binomial(6, 3, 3) == 33880
    assert formspan.gaussian_binomial(4, 2, 2) == formspan.gaussian_binomial(4, 2, 2)


def test_gl_span_proportion():
    assert formspan.gl_span_proportion(1, 1, 2) == Fraction(2, 3)
    assert formspan.gl_span_proportion(2, 2, 2) == Fraction(16, 35)


def test_exact_phi_fixtures():
    assert formspan.exact_phi("symplectic", 2, 2, 2) == Fraction(1, 2)
    assert formspan.exact_phi("unitary", 1, 1, 2) == Fraction(1, 2)
    assert formspan.exact_phi("gl", 2, 2, 2) == Fraction(19, 35)


def test_exact_phi_report_shape():
    rec = formspan.exact_phi_report("symplectic", 2, 2, 2)
    assert rec["numerator"] == "10"
    assert rec["denominator"] == "20"
    assert rec["bound_satisfied"] is True
    assert isinstance(rec["margin"], Fraction)


def test_bound_values():
    assert formspan.bound("unitary", 1, 1, 2) == Fraction(1, 2)  # exceptional: 2/q^2
    assert formspan.bound("unitary", 2, 2, 2) == Fraction(9, 20)
    assert formspan.bound("symplectic", 2, 2, 3) == Fraction(5, 9)  # headline 5/3 over q
    assert formspan.bound("orthogonal", 2, 2, 3, epsilon="+") == Fraction(43, 48)
    rec = formspan.bound_report("unitary", 1, 1, 2)
    assert rec["exceptional"] is True
    assert rec["c"] == 2


def test_estimate_is_deterministic_in_seed():
    a = formspan.estimate_phi("symplectic", 2, 2, 2, samples=2000, seed=7)
    b = formspan.estimate_phi("symplectic", 2, 2, 2, samples=2000, seed=7)
    assert a == b
    assert a["hits"] + 0 <= a["samples"] == 2000
    assert a["ci_low"] <= a["phat"] <= a["ci_high"]


def test_verify_small_grid():
    run = formspan.verify_bounds(grid="small", mode="exact", threads=2)
    assert run["all_ok"] is True
    assert all(r["verdict"] in ("pass", "exceptional") for r in run["reports"])


def test_identities_all_clean():
    rec = formspan.check_identities("zeta")
    assert rec["all_ok"] is True
    assert all(s["ok"] and s["witnesses"] == [] for s in rec["suites"])


def test_constants_table():
    rows = formspan.constants_table()
    assert {row["c"] for row in rows} == {"9/5", "5/3", "43/16"}
    assert {row["case"] for row in rows} == {"unitary", "symplectic", "orthogonal"}


def test_wilson_interval():
    lo, hi = formspan.wilson_interval(50, 100)
    assert lo < Fraction(1, 2) < hi
    assert formspan.wilson_interval(100, 100)[1] == 1


def test_q2_experiment_small():
    rec = formspan.q2_experiment(max_half_dim=2, samples=500, seed=3)
    assert len(rec["rows"]) == 8
    assert all(row["exact"] for row in rec["rows"])
    assert all(row["phi"] < 1 for row in rec["rows"])
