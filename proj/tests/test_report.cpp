#include <string>

#include "doctest.h"
#include "formspan/report.hpp"

using namespace formspan;
using namespace formspan::report;

TEST_SUITE("report") {

TEST_CASE("rationals serialize exactly with a decimal twin") {
    Json j;
    put_rational(j, "phi", Rat(1, 3));
    CHECK(j["phi"] == "1/3");
    CHECK(j["phi_decimal_lossy"].get<std::string>().substr(0, 6) == "0.3333");
    put_rational(j, "neg", Rat(-5, 4));
    CHECK(j["neg"] == "-5/4");
    CHECK(j["neg_decimal_lossy"] == "-1.25");
    put_rational(j, "whole", Rat(2));
    CHECK(j["whole"] == "2/1");
    CHECK(j["whole_decimal_lossy"] == "2.0");
}

TEST_CASE("sign labels round-trip") {
    CHECK(sign_text(+1) == "+");
    CHECK(sign_text(-1) == "-");
    CHECK(sign_text(0) == "o");
    for (Sign s : {+1, -1, 0}) CHECK(sign_from_text(sign_text(s)) == s);
    CHECK(sign_from_text("+1") == 1);
    CHECK(sign_from_text("-1") == -1);
    CHECK(sign_from_text("0") == 0);
    CHECK(sign_from_text("") == 0);
    CHECK_THROWS_AS((void)sign_from_text("x"), std::invalid_argument);
}

TEST_CASE("context json carries every label") {
    SpanContext ctx{FormKind::Quadratic, 2, 3, 5, 0, +1, -1};
    Json j = context_json(ctx);
    CHECK(j["kind"] == "orthogonal");
    CHECK(j["n"] == 2);
    CHECK(j["nprime"] == 3);
    CHECK(j["q"] == 5);
    CHECK(j["epsilon"] == "o");
    CHECK(j["sigma"] == "+");
    CHECK(j["sigma_prime"] == "-");
    CHECK(j["field_order"] == 5);

    SpanContext herm{FormKind::Hermitian, 1, 2, 4, 0, 0, 0};
    CHECK(context_json(herm)["field_order"] == 16);
    CHECK(context_json(herm)["kind"] == "unitary");
}

TEST_CASE("phi payloads") {
    PhiExact ex = exact_phi(SpanContext{FormKind::Alternating, 2, 2, 2, 0, 0, 0});
    Json j = phi_exact_json(ex);
    CHECK(j["phi"] == "1/2");
    CHECK(j["numerator"] == "10");
    CHECK(j["denominator"] == "20");
    CHECK(j["bound_satisfied"] == true);
    CHECK(j["exceptional"] == false);

    PhiEstimate est = estimate_phi(SpanContext{FormKind::Alternating, 2, 2, 2, 0, 0, 0}, 500, 11);
    Json e = phi_estimate_json(est);
    CHECK(e["samples"] == 500);
    CHECK(e["seed"] == 11);
    CHECK(e.contains("ci_low"));
    CHECK(e.contains("ci_high"));
    CHECK(e.contains("rejection_rate"));
}

TEST_CASE("verify run renders to json and csv") {
    bounds::VerifyRun run = bounds::verify_theorems(
        {SpanContext{FormKind::Alternating, 2, 2, 2, 0, 0, 0},
         SpanContext{FormKind::Quadratic, 2, 2, 2, +1, +1, +1}},
        bounds::VerifyMode::Exact);
    Json j = verify_run_json(run);
    CHECK(j["all_ok"] == true);
    CHECK(j["reports"].size() == 1);
    CHECK(j["skipped"].size() == 1);
    CHECK(j["reports"][0]["verdict"] == "pass");
    CHECK(j["reports"][0]["context"]["kind"] == "symplectic");

    std::string csv = verify_run_csv(run);
    CHECK(csv.find("kind,n,nprime,q,epsilon,sigma,sigma_prime,") == 0);
    CHECK(csv.find("\r\n") != std::string::npos);
    CHECK(csv.find("symplectic,2,2,2,") != std::string::npos);
    CHECK(csv.find("pass") != std::string::npos);
}

TEST_CASE("csv escaping follows the quoting rules") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("with,comma") == "\"with,comma\"");
    CHECK(csv_escape("with\"quote") == "\"with\"\"quote\"");
    CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
    CHECK(csv_row({"a", "b,c"}) == "a,\"b,c\"\r\n");
}

TEST_CASE("constants table") {
    Json t = table1_json();
    REQUIRE(t.size() == 3);
    CHECK(t[0]["case"] == "unitary");
    CHECK(t[0]["c"] == "9/5");
    CHECK(t[1]["case"] == "symplectic");
    CHECK(t[1]["c"] == "5/3");
    CHECK(t[2]["case"] == "orthogonal");
    CHECK(t[2]["c"] == "43/16");
    std::string csv = table1_csv();
    CHECK(csv.find("43/16") != std::string::npos);
    CHECK(csv.find("q^2") != std::string::npos);
}

TEST_CASE("double counting and inclusion-exclusion payloads") {
    ClassicalSpace sp = standard_space(FormKind::Alternating, 4, 2);
    DoubleCountCheck dc = verify_double_counting(
        sp, OrbitSpec{OrbitKind::SingularPoints, 1, 0},
        OrbitSpec{OrbitKind::NonTotallySingularK, 2, 0});
    Json j = double_count_json(dc);
    CHECK(j["identity_holds"] == true);
    CHECK(j["count_constant_over_orbit"] == true);
    CHECK(j["w_orbit_size"] == "15");

    InclusionExclusionReport ie = symplectic_inclusion_exclusion(2, 2);
    Json k = inclusion_exclusion_json(ie);
    CHECK(k["t1"] == "12");
    CHECK(k["t2_identity"] == true);
    CHECK(k["sr2_identity"] == true);
    CHECK(k["phi"] == "1/2");
}

TEST_CASE("q2 experiment payloads") {
    Q2Report rep = q2_orthogonal_experiment(2, 200, 0);
    Json j = q2_report_json(rep);
    CHECK(j["rows"].size() == 8);
    CHECK(j["rows"][0]["exact"] == true);
    CHECK(j["rows"][0].contains("q_phi_high"));
    std::string csv = q2_report_csv(rep);
    CHECK(csv.find("flagged") != std::string::npos);
    CHECK(csv.rfind("\r\n") == csv.size() - 2);
}

}  // TEST_SUITE
