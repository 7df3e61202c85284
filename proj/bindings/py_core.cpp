// Python bindings.  Every entry point returns a JSON string: rationals travel
// as exact "p/q" text and big counts as decimal strings, so nothing is rounded
// at the language boundary.  The pure-python wrapper turns these into Fractions.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "formspan/bounds.hpp"
#include "formspan/counting.hpp"
#include "formspan/enumeration.hpp"
#include "formspan/report.hpp"
#include "formspan/sampling.hpp"

namespace py = pybind11;

namespace {

using namespace formspan;
using report::Json;

SpanContext make_context(const std::string& kind, int n, int nprime, long q,
                         const std::string& epsilon, const std::string& sigma,
                         const std::string& sigma_prime) {
    SpanContext ctx;
    ctx.kind = context_kind_from_name(kind);
    ctx.n = n;
    ctx.nprime = nprime;
    ctx.q = q;
    if (ctx.kind == FormKind::Quadratic) {
        ctx.epsilon = report::sign_from_text(epsilon);
        ctx.sigma = report::sign_from_text(sigma);
        ctx.sigma_prime = report::sign_from_text(sigma_prime);
    }
    validate_context(ctx);
    return ctx;
}

uint64_t budget_or_default(uint64_t budget) {
    return budget == 0 ? default_budget() : budget;
}

std::string bound_json(const SpanContext& ctx) {
    Json j;
    j["context"] = report::context_json(ctx);
    Rat b = bounds::phi_bound_for(ctx);
    report::put_rational(j, "phi_bound", b);
    report::put_rational(j, "c", b * Rat(ctx.field_order()));
    j["exceptional"] = bounds::is_exceptional(ctx);
    return j.dump();
}

std::string verify_json(const std::string& grid, const std::string& mode, uint64_t budget,
                        uint64_t samples, uint64_t seed, int threads) {
    bounds::VerifyMode m;
    if (mode == "exact")
        m = bounds::VerifyMode::Exact;
    else if (mode == "mc")
        m = bounds::VerifyMode::MonteCarlo;
    else
        throw std::invalid_argument("mode must be exact or mc");
    std::vector<SpanContext> contexts = bounds::grid_preset(grid);
    bounds::VerifyRun run =
        bounds::verify_theorems(contexts, m, budget_or_default(budget), samples, seed, threads);
    return report::verify_run_json(run).dump();
}

std::string identities_json(const std::string& suite) {
    Json out = Json::array();
    bool ok = true;
    auto add_suite = [&](const std::string& name, const std::vector<bounds::Witness>& w) {
        out.push_back(report::witnesses_json(name, w));
        ok = ok && w.empty();
    };
    bool all = suite == "all";
    if (all || suite == "zeta") {
        add_suite("zeta-chain", bounds::zeta_chain_witnesses());
        add_suite("zeta-products", bounds::zeta_product_witnesses());
        add_suite("zeta-three-factor", bounds::zeta_three_factor_witnesses());
    }
    if (all || suite == "gamma") add_suite("gamma-chain", bounds::gamma_chain_witnesses());
    if (all || suite == "boundprod")
        add_suite("spread-products", bounds::bound_product_witnesses());
    if (all || suite == "gl") add_suite("gl-proportion", bounds::gl_lower_bound_witnesses());
    if (all || suite == "caps") add_suite("orthogonal-caps", bounds::orth_cap_witnesses(9, 8));
    if (out.empty()) throw std::invalid_argument("unknown identity suite: " + suite);
    Json top;
    top["suites"] = out;
    top["all_ok"] = ok;
    return top.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact and Monte Carlo span probabilities in finite classical geometries";
    m.attr("__version__") = "0.1.0";

    m.def(
        "gaussian_binomial",
        [](int n, int k, long order) { return counting::gaussian_binomial(n, k, order).str(); },
        py::arg("n"), py::arg("k"), py::arg("order"));

    m.def(
        "gl_span_proportion",
        [](int n, int nprime, long q) {
            return rat_string(counting::gl_span_proportion(n, nprime, q));
        },
        py::arg("n"), py::arg("nprime"), py::arg("q"));

    m.def(
        "exact_phi_json",
        [](const std::string& kind, int n, int nprime, long q, const std::string& epsilon,
           const std::string& sigma, const std::string& sigma_prime, uint64_t budget,
           int threads, int rep_index) {
            SpanContext ctx = make_context(kind, n, nprime, q, epsilon, sigma, sigma_prime);
            PhiExact r = exact_phi(ctx, budget_or_default(budget), threads, rep_index);
            return report::phi_exact_json(r).dump();
        },
        py::arg("kind"), py::arg("n"), py::arg("nprime"), py::arg("q"), py::arg("epsilon") = "o",
        py::arg("sigma") = "+", py::arg("sigma_prime") = "+", py::arg("budget") = 0,
        py::arg("threads") = 1, py::arg("rep_index") = 0);

    m.def(
        "estimate_phi_json",
        [](const std::string& kind, int n, int nprime, long q, const std::string& epsilon,
           const std::string& sigma, const std::string& sigma_prime, uint64_t samples,
           uint64_t seed) {
            SpanContext ctx = make_context(kind, n, nprime, q, epsilon, sigma, sigma_prime);
            PhiEstimate est = estimate_phi(ctx, samples, seed);
            return report::phi_estimate_json(est).dump();
        },
        py::arg("kind"), py::arg("n"), py::arg("nprime"), py::arg("q"), py::arg("epsilon") = "o",
        py::arg("sigma") = "+", py::arg("sigma_prime") = "+", py::arg("samples") = 20000,
        py::arg("seed") = 0);

    m.def(
        "bound_json",
        [](const std::string& kind, int n, int nprime, long q, const std::string& epsilon,
           const std::string& sigma, const std::string& sigma_prime) {
            return bound_json(make_context(kind, n, nprime, q, epsilon, sigma, sigma_prime));
        },
        py::arg("kind"), py::arg("n"), py::arg("nprime"), py::arg("q"), py::arg("epsilon") = "o",
        py::arg("sigma") = "+", py::arg("sigma_prime") = "+");

    m.def("verify_json", &verify_json, py::arg("grid") = "small", py::arg("mode") = "exact",
          py::arg("budget") = 0, py::arg("samples") = 20000, py::arg("seed") = 0,
          py::arg("threads") = 1);

    m.def("identities_json", &identities_json, py::arg("suite") = "all");

    m.def("table1_json", [] { return report::table1_json().dump(); });

    m.def(
        "q2_json",
        [](int max_half_dim, uint64_t samples, uint64_t seed, uint64_t budget) {
            Q2Report rep =
                q2_orthogonal_experiment(max_half_dim, samples, seed, budget_or_default(budget));
            return report::q2_report_json(rep).dump();
        },
        py::arg("max_half_dim") = 6, py::arg("samples") = 20000, py::arg("seed") = 0,
        py::arg("budget") = 0);

    m.def(
        "wilson_json",
        [](uint64_t hits, uint64_t n) {
            auto [lo, hi] = wilson_interval(hits, n);
            Json j;
            j["hits"] = hits;
            j["samples"] = n;
            report::put_rational(j, "phat", n ? Rat(hits, n) : Rat(0));
            report::put_rational(j, "ci_low", lo);
            report::put_rational(j, "ci_high", hi);
            return j.dump();
        },
        py::arg("hits"), py::arg("n"));
}
