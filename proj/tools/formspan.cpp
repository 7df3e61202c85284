// formspan: exact and Monte Carlo verification of span-probability bounds in
// finite classical geometries.  Every run is a pure function of its flags.
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "formspan/bounds.hpp"
#include "formspan/counting.hpp"
#include "formspan/enumeration.hpp"
#include "formspan/report.hpp"
#include "formspan/sampling.hpp"

namespace {

using namespace formspan;
using report::Json;

struct ContextFlags {
    std::string kind = "symplectic";
    int n = 2;
    int nprime = 2;
    long q = 2;
    std::string epsilon = "o";
    std::string sigma = "+";
    std::string sigma_prime = "+";
};

void add_context_flags(CLI::App* cmd, ContextFlags& f) {
    cmd->add_option("--kind", f.kind, "unitary | symplectic | orthogonal | gl")
        ->required();
    cmd->add_option("--n", f.n, "dimension of the fixed subspace U")->required();
    cmd->add_option("--nprime", f.nprime, "dimension of the sampled subspace U'")->required();
    cmd->add_option("--q", f.q,
                    "ground parameter q (the field has order q, or q^2 for unitary)")
        ->required();
    cmd->add_option("--epsilon", f.epsilon, "ambient isometry type +|-|o (orthogonal)");
    cmd->add_option("--sigma", f.sigma, "subspace type of U (orthogonal)");
    cmd->add_option("--sigma-prime", f.sigma_prime, "subspace type of U' (orthogonal)");
}

SpanContext build_context(const ContextFlags& f) {
    SpanContext ctx;
    ctx.kind = context_kind_from_name(f.kind);
    ctx.n = f.n;
    ctx.nprime = f.nprime;
    ctx.q = f.q;
    if (ctx.kind == FormKind::Quadratic) {
        ctx.epsilon = report::sign_from_text(f.epsilon);
        ctx.sigma = report::sign_from_text(f.sigma);
        ctx.sigma_prime = report::sign_from_text(f.sigma_prime);
        if (ctx.ambient_dim() % 2 == 0 && ctx.epsilon == 0)
            throw std::invalid_argument("even orthogonal contexts need --epsilon +|-");
    }
    validate_context(ctx);
    return ctx;
}

int run_count(const ContextFlags& cf, const std::string& format, const std::string& output) {
    SpanContext ctx = build_context(cf);
    if (format != "json") throw std::invalid_argument("count emits json only");
    long order = ctx.field_order();
    int dim = ctx.n;  // counts describe the single space of dimension n
    Json records = Json::array();
    auto add = [&](const std::string& name, const std::string& value) {
        Json j;
        j["name"] = name;
        j["value"] = value;
        records.push_back(j);
    };
    add("points", counting::gaussian_binomial(dim, 1, order).str());
    for (int k = 0; k <= dim; ++k)
        add("subspaces_" + std::to_string(k),
            counting::gaussian_binomial(dim, k, order).str());
    switch (ctx.kind) {
        case FormKind::Linear:
            break;
        case FormKind::Hermitian: {
            add("theta", rat_string(counting::theta(dim, ctx.q)));
            add("zeta", rat_string(counting::zeta(dim, ctx.q)));
            counting::UnitaryPointCounts pc = counting::unitary_point_counts(dim, ctx.q);
            add("P1", pc.p1.str());
            add("N1", pc.n1.str());
            break;
        }
        case FormKind::Alternating: {
            add("P1", counting::symplectic_p1(dim, ctx.q).str());
            for (int k = 2; k <= 3; ++k) {
                add("P" + std::to_string(k), counting::symplectic_pk(dim, k, ctx.q).str());
                add("R" + std::to_string(k), counting::symplectic_rk(dim, k, ctx.q).str());
            }
            add("R2_closed", counting::symplectic_r2_closed(dim, ctx.q).str());
            if (ctx.q == 2) add("R3_closed", counting::symplectic_r3_closed_q2(dim).str());
            break;
        }
        case FormKind::Quadratic: {
            Sign tau = dim % 2 == 0 ? ctx.sigma : 0;
            add("gamma", rat_string(counting::orth_gamma(dim, tau, ctx.q)));
            counting::OrthPointCounts pc = counting::orth_point_counts(dim, tau, ctx.q);
            add("P1", pc.p1.str());
            add("N1", pc.n1.str());
            if (ctx.q % 2 == 1 && dim > 1) {
                add("N1_plus", counting::orth_n1_alpha(dim, tau, +1, ctx.q).str());
                add("N1_minus", counting::orth_n1_alpha(dim, tau, -1, ctx.q).str());
            }
            break;
        }
    }
    Json j;
    j["context"] = report::context_json(ctx);
    j["counts"] = records;
    report::emit(j.dump(2), output);
    return 0;
}

int run_phi_exact(const ContextFlags& cf, uint64_t budget, int threads, int rep_index,
                  const std::string& output) {
    SpanContext ctx = build_context(cf);
    PhiExact ex = exact_phi(ctx, budget, threads, rep_index);
    Json j = report::phi_exact_json(ex);
    report::emit(j.dump(2), output);
    bool ok = j["bound_satisfied"].get<bool>() || j["exceptional"].get<bool>();
    return ok ? 0 : 1;
}

int run_phi_mc(const ContextFlags& cf, uint64_t samples, uint64_t seed,
               const std::string& output) {
    SpanContext ctx = build_context(cf);
    PhiEstimate est = estimate_phi(ctx, samples, seed);
    report::emit(report::phi_estimate_json(est).dump(2), output);
    return 0;
}

// Grid presets live both in the binary and in configs/grids.json; a grid file,
// when given, overrides the built-in table for the named preset.
std::vector<SpanContext> resolve_grid(const std::string& grid, const std::string& grid_file) {
    if (grid_file.empty())
        return bounds::grid_preset(grid);
    std::ifstream in(grid_file);
    if (!in)
        throw std::invalid_argument("cannot open grid file: " + grid_file);
    Json doc = Json::parse(in);
    if (!doc.contains(grid))
        throw std::invalid_argument("grid file has no preset named '" + grid + "'");
    const Json& p = doc.at(grid);
    bounds::GridParams params;
    params.dim_cap = p.at("dim_cap").get<int>();
    params.unitary_q = p.at("unitary_q").get<std::vector<long>>();
    params.symplectic_q = p.at("symplectic_q").get<std::vector<long>>();
    params.orthogonal_q = p.at("orthogonal_q").get<std::vector<long>>();
    return bounds::expand_grid(params);
}

int run_verify_bounds(const std::string& grid, const std::string& grid_file,
                      const std::string& mode, uint64_t budget,
                      uint64_t samples, uint64_t seed, int threads,
                      const std::string& format, const std::string& output) {
    bounds::VerifyMode m;
    if (mode == "exact")
        m = bounds::VerifyMode::Exact;
    else if (mode == "mc")
        m = bounds::VerifyMode::MonteCarlo;
    else
        throw std::invalid_argument("mode must be exact or mc");
    std::vector<SpanContext> contexts = resolve_grid(grid, grid_file);
    bounds::VerifyRun run = bounds::verify_theorems(contexts, m, budget, samples, seed, threads);
    if (format == "json")
        report::emit(report::verify_run_json(run).dump(2), output);
    else if (format == "csv")
        report::emit(report::verify_run_csv(run), output);
    else
        throw std::invalid_argument("format must be json or csv");
    return run.all_ok ? 0 : 1;
}

int run_verify_identities(const std::string& suite, uint64_t budget,
                          const std::string& output) {
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
    if (all || suite == "double-counting") {
        // one configuration per kind at desk scale
        struct Config {
            FormKind kind;
            int dim;
            long q;
            Sign eps;
            OrbitSpec w, up;
        };
        std::vector<Config> configs = {
            {FormKind::Alternating, 4, 2, 0, {OrbitKind::SingularPoints, 1, 0},
             {OrbitKind::NondegK, 2, 0}},
            {FormKind::Hermitian, 2, 2, 0, {OrbitKind::NonsingularPoints, 1, 0},
             {OrbitKind::NonsingularPoints, 1, 0}},
            {FormKind::Quadratic, 5, 3, 0, {OrbitKind::NonsingularAlpha, 1, +1},
             {OrbitKind::NondegSigmaK, 2, +1}},
        };
        for (const auto& c : configs) {
            ClassicalSpace V = standard_space(c.kind, c.dim, static_cast<int>(c.q), c.eps);
            DoubleCountCheck r = verify_double_counting(V, c.w, c.up, budget);
            Json j = report::double_count_json(r);
            j["kind"] = kind_name(c.kind);
            j["dim"] = c.dim;
            j["q"] = c.q;
            j["w_orbit"] = c.w.describe();
            j["uprime_orbit"] = c.up.describe();
            out.push_back(j);
            ok = ok && r.identity;
        }
    }
    if (all || suite == "inclusion-exclusion") {
        InclusionExclusionReport r = symplectic_inclusion_exclusion(2, 2, budget);
        Json j = report::inclusion_exclusion_json(r);
        j["n"] = 2;
        j["nprime"] = 2;
        out.push_back(j);
        ok = ok && r.t2_identity && r.t3_identity && r.sr2_identity && r.sr3_identity &&
             r.sandwich;
    }
    Json top;
    top["suites"] = out;
    top["all_ok"] = ok;
    report::emit(top.dump(2), output);
    return ok ? 0 : 1;
}

int run_table1(const std::string& format, const std::string& output) {
    if (format == "json")
        report::emit(report::table1_json().dump(2), output);
    else if (format == "csv")
        report::emit(report::table1_csv(), output);
    else
        throw std::invalid_argument("format must be json or csv");
    return 0;
}

int run_q2(int max_dim, uint64_t samples, uint64_t seed, uint64_t budget,
           const std::string& format, const std::string& output) {
    Q2Report rep = q2_orthogonal_experiment(max_dim, samples, seed, budget);
    if (format == "json")
        report::emit(report::q2_report_json(rep).dump(2), output);
    else if (format == "csv")
        report::emit(report::q2_report_csv(rep), output);
    else
        throw std::invalid_argument("format must be json or csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "formspan: orbit counts and span-probability bounds for subspaces of finite "
        "classical spaces"};
    app.require_subcommand(1);

    ContextFlags cf;
    std::string format = "json";
    std::string output;
    uint64_t budget = formspan::default_budget();
    uint64_t samples = 20000;
    uint64_t seed = 0;
    int threads = 1;
    int rep_index = 0;
    std::string grid = "small";
    std::string grid_file;
    std::string mode = "exact";
    std::string suite = "all";
    int q2_max = 6;

    CLI::App* count = app.add_subcommand("count", "closed-form orbit counts for one space");
    add_context_flags(count, cf);
    count->add_option("--format", format);
    count->add_option("--output", output);

    CLI::App* pexact = app.add_subcommand("phi-exact", "exact phi by full enumeration");
    add_context_flags(pexact, cf);
    pexact->add_option("--budget", budget, "max subspaces to enumerate");
    pexact->add_option("--threads", threads);
    pexact->add_option("--rep-index", rep_index, "which orbit member to fix as U");
    pexact->add_option("--output", output);

    CLI::App* pmc = app.add_subcommand("phi-mc", "Monte Carlo phi with Wilson interval");
    add_context_flags(pmc, cf);
    pmc->add_option("--samples", samples)->required();
    pmc->add_option("--seed", seed);
    pmc->add_option("--output", output);

    CLI::App* vb = app.add_subcommand("verify-bounds", "check phi <= c/|F| over a named grid");
    vb->add_option("--grid", grid, "small | medium");
    vb->add_option("--grid-file", grid_file, "json file pinning grid presets (defaults to built-in table)");
    vb->add_option("--mode", mode, "exact | mc");
    vb->add_option("--budget", budget);
    vb->add_option("--samples", samples);
    vb->add_option("--seed", seed);
    vb->add_option("--threads", threads);
    vb->add_option("--format", format, "json | csv");
    vb->add_option("--output", output);

    CLI::App* vi = app.add_subcommand("verify-identities",
                                      "inequality grids, double counting, q=2 sums");
    vi->add_option("--suite", suite,
                   "all | zeta | gamma | boundprod | gl | caps | double-counting | "
                   "inclusion-exclusion");
    vi->add_option("--budget", budget);
    vi->add_option("--output", output);

    CLI::App* t1 = app.add_subcommand("table1", "the bound constants per case");
    t1->add_option("--format", format, "json | csv");
    t1->add_option("--output", output);

    CLI::App* q2 = app.add_subcommand("q2-experiment",
                                      "orthogonal |F|=2 sweep (open-problem evidence)");
    q2->add_option("--max-dim", q2_max, "largest per-side dimension (even)");
    q2->add_option("--samples", samples);
    q2->add_option("--seed", seed);
    q2->add_option("--budget", budget);
    q2->add_option("--format", format, "json | csv");
    q2->add_option("--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (count->parsed()) return run_count(cf, format, output);
        if (pexact->parsed()) return run_phi_exact(cf, budget, threads, rep_index, output);
        if (pmc->parsed()) return run_phi_mc(cf, samples, seed, output);
        if (vb->parsed())
            return run_verify_bounds(grid, grid_file, mode, budget, samples, seed, threads, format,
                                     output);
        if (vi->parsed()) return run_verify_identities(suite, budget, output);
        if (t1->parsed()) return run_table1(format, output);
        if (q2->parsed()) return run_q2(q2_max, samples, seed, budget, format, output);
    } catch (const formspan::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
