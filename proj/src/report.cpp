#include "formspan/report.hpp"

#include <fstream>
#include <iostream>

namespace formspan::report {

void put_rational(Json& j, const std::string& key, const Rat& value) {
    j[key] = rat_string(value);
    j[key + "_decimal_lossy"] = rat_decimal(value);
}

std::string sign_text(Sign s) { return s > 0 ? "+" : (s < 0 ? "-" : "o"); }

Sign sign_from_text(const std::string& s) {
    if (s == "+" || s == "+1" || s == "1") return +1;
    if (s == "-" || s == "-1") return -1;
    if (s == "o" || s == "0" || s.empty()) return 0;
    throw std::invalid_argument("unrecognized sign label: " + s);
}

Json context_json(const SpanContext& ctx) {
    Json j;
    j["kind"] = context_kind_name(ctx.kind);
    j["n"] = ctx.n;
    j["nprime"] = ctx.nprime;
    j["q"] = ctx.q;
    j["field_order"] = ctx.field_order();
    if (ctx.kind == FormKind::Quadratic) {
        j["epsilon"] = sign_text(ctx.epsilon);
        j["sigma"] = sign_text(ctx.sigma);
        j["sigma_prime"] = sign_text(ctx.sigma_prime);
    }
    return j;
}

Json phi_exact_json(const PhiExact& result) {
    Json j;
    j["context"] = context_json(result.ctx);
    put_rational(j, "phi", result.phi);
    j["numerator"] = result.meet.str();
    j["denominator"] = result.orbit.str();
    Rat bound = bounds::phi_bound_for(result.ctx);
    put_rational(j, "bound", bound);
    j["bound_satisfied"] = result.phi <= bound;
    j["exceptional"] = bounds::is_exceptional(result.ctx);
    put_rational(j, "margin", bound - result.phi);
    return j;
}

Json phi_estimate_json(const PhiEstimate& est) {
    Json j;
    j["context"] = context_json(est.ctx);
    put_rational(j, "phat", est.phat);
    j["hits"] = est.hits;
    j["samples"] = est.samples;
    j["attempts"] = est.attempts;
    put_rational(j, "ci_low", est.ci_low);
    put_rational(j, "ci_high", est.ci_high);
    put_rational(j, "rejection_rate", est.rejection_rate);
    j["seed"] = est.seed;
    return j;
}

Json bound_report_json(const bounds::BoundReport& r) {
    Json j;
    j["context"] = context_json(r.ctx);
    put_rational(j, "c", r.c);
    put_rational(j, "bound", r.phi_bound);
    j["exact"] = r.exact;
    put_rational(j, "phi", r.phi);
    if (!r.exact) {
        put_rational(j, "ci_low", r.ci_low);
        put_rational(j, "ci_high", r.ci_high);
    }
    put_rational(j, "margin", r.margin);
    j["verdict"] = bounds::verdict_name(r.verdict);
    j["exceptional"] = r.exceptional;
    if (r.c1) put_rational(j, "c1", *r.c1);
    if (r.c2) put_rational(j, "c2", *r.c2);
    if (r.cval) put_rational(j, "cval", *r.cval);
    j["decomposition_ok"] = r.decomposition_ok;
    return j;
}

Json verify_run_json(const bounds::VerifyRun& run) {
    Json j;
    j["reports"] = Json::array();
    for (const auto& r : run.reports) j["reports"].push_back(bound_report_json(r));
    j["skipped"] = Json::array();
    for (const auto& [ctx, why] : run.skipped) {
        Json s;
        s["context"] = context_json(ctx);
        s["reason"] = why;
        j["skipped"].push_back(s);
    }
    j["all_ok"] = run.all_ok;
    return j;
}

Json witnesses_json(const std::string& suite, const std::vector<bounds::Witness>& w) {
    Json j;
    j["suite"] = suite;
    j["witnesses"] = Json::array();
    for (const auto& x : w) j["witnesses"].push_back(x.what);
    j["ok"] = w.empty();
    return j;
}

Json double_count_json(const DoubleCountCheck& c) {
    Json j;
    j["w_orbit_size"] = c.w_size.str();
    j["uprime_orbit_size"] = c.uprime_size.str();
    j["uprime_through_each_w"] = c.through_w.str();
    j["w_inside_each_uprime"] = c.w_inside_uprime.str();
    j["count_constant_over_orbit"] = c.constant;
    j["identity_holds"] = c.identity;
    return j;
}

Json inclusion_exclusion_json(const InclusionExclusionReport& r) {
    Json j;
    j["t1"] = r.t1.str();
    j["t2"] = r.t2.str();
    j["t3"] = r.t3.str();
    j["s2"] = r.s2.str();
    j["s3"] = r.s3.str();
    j["s_p2"] = r.sp2.str();
    j["s_r2"] = r.sr2.str();
    j["s_p3"] = r.sp3.str();
    j["s_r3"] = r.sr3.str();
    j["covered"] = r.covered.str();
    j["orbit"] = r.orbit.str();
    put_rational(j, "phi", r.phi);
    j["t2_identity"] = r.t2_identity;
    j["t3_identity"] = r.t3_identity;
    j["sr2_identity"] = r.sr2_identity;
    j["sr3_identity"] = r.sr3_identity;
    j["sandwich"] = r.sandwich;
    return j;
}

namespace {

struct Table1Row {
    const char* case_name;
    const char* field_size;
    const char* c;
    const char* conditions;
};

const Table1Row kTable1[] = {
    {"unitary", "q^2", "9/5", "(n, n', q) != (1, 1, 2)"},
    {"symplectic", "q", "5/3", "n, n' even"},
    {"orthogonal", "q", "43/16", "q >= 3; q odd if n or n' is odd"},
};

}  // namespace

Json table1_json() {
    Json rows = Json::array();
    for (const auto& r : kTable1) {
        Json j;
        j["case"] = r.case_name;
        j["field_size"] = r.field_size;
        j["c"] = r.c;
        j["conditions"] = r.conditions;
        rows.push_back(j);
    }
    return rows;
}

Json q2_report_json(const Q2Report& rep) {
    Json j;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    j["rows"] = Json::array();
    for (const auto& row : rep.rows) {
        Json r;
        r["context"] = context_json(row.ctx);
        r["exact"] = row.exact;
        if (!row.exact) r["samples"] = row.samples;
        put_rational(r, "phi", row.phi);
        put_rational(r, "ci_low", row.ci_low);
        put_rational(r, "ci_high", row.ci_high);
        put_rational(r, "q_phi_low", row.q_phi_low);
        put_rational(r, "q_phi_high", row.q_phi_high);
        r["flagged"] = row.flagged;
        j["rows"].push_back(r);
    }
    return j;
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += "\r\n";
    return out;
}

namespace {

std::vector<std::string> context_csv_fields(const SpanContext& ctx) {
    bool quad = ctx.kind == FormKind::Quadratic;
    return {context_kind_name(ctx.kind),
            std::to_string(ctx.n),
            std::to_string(ctx.nprime),
            std::to_string(ctx.q),
            quad ? sign_text(ctx.epsilon) : "",
            quad ? sign_text(ctx.sigma) : "",
            quad ? sign_text(ctx.sigma_prime) : ""};
}

}  // namespace

std::string verify_run_csv(const bounds::VerifyRun& run) {
    std::string out = csv_row({"kind", "n", "nprime", "q", "epsilon", "sigma", "sigma_prime",
                               "phi", "bound", "margin", "verdict"});
    for (const auto& r : run.reports) {
        std::vector<std::string> f = context_csv_fields(r.ctx);
        f.push_back(rat_string(r.phi));
        f.push_back(rat_string(r.phi_bound));
        f.push_back(rat_string(r.margin));
        f.push_back(bounds::verdict_name(r.verdict));
        out += csv_row(f);
    }
    return out;
}

std::string table1_csv() {
    std::string out = csv_row({"case", "field_size", "c", "conditions"});
    for (const auto& r : kTable1) out += csv_row({r.case_name, r.field_size, r.c, r.conditions});
    return out;
}

std::string q2_report_csv(const Q2Report& rep) {
    std::string out = csv_row({"kind", "n", "nprime", "q", "epsilon", "sigma", "sigma_prime",
                               "exact", "phi", "ci_low", "ci_high", "q_phi_high", "flagged"});
    for (const auto& row : rep.rows) {
        std::vector<std::string> f = context_csv_fields(row.ctx);
        f.push_back(row.exact ? "true" : "false");
        f.push_back(rat_string(row.phi));
        f.push_back(rat_string(row.ci_low));
        f.push_back(rat_string(row.ci_high));
        f.push_back(rat_string(row.q_phi_high));
        f.push_back(row.flagged ? "true" : "false");
        out += csv_row(f);
    }
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

}  // namespace formspan::report
