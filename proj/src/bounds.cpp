#include "formspan/bounds.hpp"

#include <sstream>

namespace formspan::bounds {

using counting::gl_span_proportion;
using counting::orth_gamma;
using counting::orth_n1_alpha;
using counting::orth_point_counts;
using counting::theta;
using counting::zeta;

Rat table_constant(FormKind kind) {
    switch (kind) {
        case FormKind::Linear: return Rat(3, 2);
        case FormKind::Alternating: return Rat(5, 3);
        case FormKind::Hermitian: return Rat(9, 5);
        case FormKind::Quadratic: return Rat(43, 16);
    }
    throw std::logic_error("unreachable");
}

Rat phi_bound_for(const SpanContext& ctx) {
    Rat c = table_constant(ctx.kind);
    if (ctx.kind == FormKind::Hermitian && is_exceptional(ctx)) c = 2;
    return c / Rat(ctx.field_order());
}

bool is_exceptional(const SpanContext& ctx) {
    if (ctx.kind == FormKind::Hermitian)
        return ctx.n == 1 && ctx.nprime == 1 && ctx.q == 2;
    if (ctx.kind == FormKind::Quadratic)
        return ctx.n == 1 && ctx.nprime == 1 && ctx.q == 3 && ctx.epsilon == 1 &&
               ctx.sigma == ctx.sigma_prime;
    return false;
}

UnitaryTerms unitary_c1_c2(int n, int nprime, long q) {
    if (n < 1 || nprime < 1 || q < 2) throw std::invalid_argument("unitary terms need n, n' >= 1, q >= 2");
    UnitaryTerms t;
    t.c1 = theta(n, q) * theta(nprime, q) / ((1 + qpow(q, -1)) * theta(n + nprime, q));
    Rat znum = zeta(n, q) * zeta(nprime, q);
    t.c2 = znum == 0 ? Rat(0) : znum / ((1 - qpow(q, -2)) * zeta(n + nprime, q));
    t.cval = t.c1 + t.c2 / q;
    return t;
}

SymplecticBound symplectic_bound(int n, int nprime, long q) {
    if (n < 2 || nprime < 2 || n % 2 || nprime % 2)
        throw std::invalid_argument("symplectic bound needs n, n' even >= 2");
    SymplecticBound b;
    int mn = std::min(n, nprime);
    b.exact_ratio = (1 - qpow(q, -n)) * (1 - qpow(q, -nprime)) /
                    ((q - 1) * (1 - qpow(q, -n - nprime)));
    b.simplified = (1 - qpow(q, -mn)) / (q - 1);
    b.c = (q >= 3 || mn == 2) ? Rat(3, 2) : Rat(5, 3);
    b.best = b.exact_ratio;
    if (b.simplified < b.best) b.best = b.simplified;
    if (b.c / q < b.best) b.best = b.c / q;
    return b;
}

namespace {

int parity_twist(long q, int k) { return (k * ((q - 1) / 2)) % 2 ? -1 : 1; }

}  // namespace

Rat orth_c1(int n, int nprime, long q, Sign epsilon, Sign sigma, Sign sigma_prime) {
    int dim = n + nprime;
    int m = n / 2, mp = nprime / 2;
    Sign tau = n % 2 == 0 ? sigma : 0;
    Sign taup = nprime % 2 == 0 ? sigma_prime : 0;
    Sign eps = dim % 2 == 0 ? epsilon : 0;
    if (q % 2 == 0) {
        BigInt a = orth_point_counts(n, tau, q).n1;
        BigInt b = orth_point_counts(nprime, taup, q).n1;
        BigInt d = orth_point_counts(dim, eps, q).n1;
        if (d == 0) throw std::logic_error("ambient space without nonsingular points");
        return Rat(q) * Rat(a * b, d);
    }
    // odd-dimensional sides carry a relabel sign; even sides split evenly so
    // their label washes out of the sum
    int s = 1, sp = 1;
    if (n % 2 == 1) s = nprime % 2 == 0 ? sigma : sigma * parity_twist(q, m);
    if (nprime % 2 == 1) sp = n % 2 == 0 ? sigma_prime : sigma_prime * parity_twist(q, mp);
    Rat sum = 0;
    for (int alpha : {+1, -1}) {
        BigInt d = orth_n1_alpha(dim, eps, alpha, q);
        BigInt a = orth_n1_alpha(n, tau, alpha * s, q);
        BigInt b = orth_n1_alpha(nprime, taup, alpha * sp, q);
        if (d == 0) {
            if (a != 0 && b != 0)
                throw std::logic_error("empty ambient point class with nonempty subspace parts");
            continue;
        }
        sum += Rat(a * b, d);
    }
    return Rat(q) * sum;
}

Rat orth_c2(int n, int nprime, long q, Sign epsilon, Sign sigma, Sign sigma_prime) {
    int dim = n + nprime;
    Sign tau = n % 2 == 0 ? sigma : 0;
    Sign taup = nprime % 2 == 0 ? sigma_prime : 0;
    Sign eps = dim % 2 == 0 ? epsilon : 0;
    Rat num = orth_gamma(n, tau, q) * orth_gamma(nprime, taup, q);
    if (num == 0) return 0;
    return num / ((1 - qpow(q, -1)) * orth_gamma(dim, eps, q));
}

OrthTerms orth_bound_terms(const SpanContext& ctx) {
    if (ctx.kind != FormKind::Quadratic)
        throw std::invalid_argument("bound terms are for orthogonal contexts");
    validate_context(ctx);
    int n = ctx.n, np = ctx.nprime;
    long q = ctx.q;
    if (n < 2 || np < 2)
        throw std::invalid_argument("caps need n, n' >= 2 (points follow the exact n=1 formula)");
    OrthTerms t;
    t.c1 = orth_c1(n, np, q, ctx.epsilon, ctx.sigma, ctx.sigma_prime);
    t.c2 = orth_c2(n, np, q, ctx.epsilon, ctx.sigma, ctx.sigma_prime);
    t.cval = t.c1 + t.c2 / q;

    int m = n / 2, mp = np / 2;
    int half = (n + np) / 2;
    t.X1 = (1 + qpow(q, -m)) * (1 + qpow(q, -mp)) / (1 - qpow(q, -half));
    Rat e = 1 / (1 - qpow(q, -1));
    t.X2 = (1 - qpow(q, -1)) * (e + qpow(q, -m + 1)) * (e + qpow(q, -mp + 1)) /
           (q * (1 - qpow(q, -half + 1)));
    // Y1 pairs an even side (half a) with an odd side (half b)
    int a = n % 2 == 0 ? m : mp;
    int b = n % 2 == 0 ? mp : m;
    t.Y1 = (1 + qpow(q, -a)) * (1 + qpow(q, -a - 2 * b)) / (1 - qpow(q, -2 * a - 2 * b));
    t.Z1 = (1 + qpow(q, -m - mp)) / (1 - qpow(q, -m - mp - 1));
    if (n % 2 == 0 && np % 2 == 0)
        t.c1_cap = t.X1;
    else if (n % 2 == 1 && np % 2 == 1)
        t.c1_cap = t.Z1;
    else
        t.c1_cap = t.Y1;
    return t;
}

// ---- inequality grids ------------------------------------------------------

namespace {

bool is_prime_power_long(long n) {
    if (n < 2) return false;
    long p = 0;
    for (long d = 2; d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    while (n > 1) {
        if (n % p) return false;
        n /= p;
    }
    return true;
}

std::vector<long> prime_powers_upto(long q_max) {
    std::vector<long> qs;
    for (long q = 2; q <= q_max; ++q)
        if (is_prime_power_long(q)) qs.push_back(q);
    return qs;
}

Witness make_witness(const std::string& text) { return Witness{text}; }

}  // namespace

std::vector<Witness> zeta_chain_witnesses(long q_max, int index_max) {
    std::vector<Witness> bad;
    for (long q : prime_powers_upto(q_max)) {
        for (int i = 1; 2 * i + 3 <= index_max; ++i)
            if (!(zeta(2 * i + 1, q) < zeta(2 * i + 3, q)))
                bad.push_back(make_witness("odd zeta chain broken at q=" + std::to_string(q) +
                                           " n=" + std::to_string(2 * i + 1)));
        for (int i = 1; 2 * i + 2 <= index_max; ++i)
            if (!(zeta(2 * i + 2, q) < zeta(2 * i, q)))
                bad.push_back(make_witness("even zeta chain broken at q=" + std::to_string(q) +
                                           " n=" + std::to_string(2 * i)));
        int top_odd = index_max % 2 ? index_max : index_max - 1;
        int top_even = index_max % 2 ? index_max - 1 : index_max;
        if (!(zeta(top_odd, q) < 1))
            bad.push_back(make_witness("odd zeta not below 1 at q=" + std::to_string(q)));
        if (!(zeta(top_even, q) > 1))
            bad.push_back(make_witness("even zeta not above 1 at q=" + std::to_string(q)));
        if (zeta(1, q) != 0)
            bad.push_back(make_witness("zeta_1 nonzero at q=" + std::to_string(q)));
    }
    return bad;
}

std::vector<Witness> zeta_product_witnesses(long q_max, int index_max) {
    std::vector<Witness> bad;
    for (long q : prime_powers_upto(q_max))
        for (int i = 1; i <= index_max; ++i)
            for (int j = i + 1; j <= index_max; ++j)
                if (!(zeta(2 * i + 2, q) * zeta(2 * j, q) < zeta(2 * i, q) * zeta(2 * j + 2, q)))
                    bad.push_back(make_witness("zeta product comparison broken at q=" +
                                               std::to_string(q) + " i=" + std::to_string(i) +
                                               " j=" + std::to_string(j)));
    return bad;
}

std::vector<Witness> zeta_three_factor_witnesses(long q_max, int index_max) {
    std::vector<Witness> bad;
    for (long q : prime_powers_upto(q_max))
        for (int n = 1; n <= index_max; ++n)
            for (int np = n; np <= index_max; ++np)
                if (!(zeta(n, q) * zeta(np, q) * zeta(4, q) <=
                      zeta(2, q) * zeta(2, q) * zeta(n + np, q)))
                    bad.push_back(make_witness("three-factor zeta bound broken at q=" +
                                               std::to_string(q) + " n=" + std::to_string(n) +
                                               " n'=" + std::to_string(np)));
    return bad;
}

std::vector<Witness> gamma_chain_witnesses(long q_max, int k_max) {
    std::vector<Witness> bad;
    for (long q : prime_powers_upto(q_max)) {
        for (int k = 2; k <= k_max; ++k) {
            Rat lower = 1 - qpow(q, -k + 1);
            Rat gm = orth_gamma(2 * k, -1, q);
            Rat go = orth_gamma(2 * k + 1, 0, q);
            Rat gp = orth_gamma(2 * k, +1, q);
            Rat upper = (1 - qpow(q, -1)) * (1 / (1 - qpow(q, -1)) + qpow(q, -k + 1));
            bool ok = lower < gm && gm < go && go < 1 && Rat(1) < gp && gp < upper;
            if (!ok)
                bad.push_back(make_witness("gamma chain broken at q=" + std::to_string(q) +
                                           " k=" + std::to_string(k)));
            for (int tau : {+1, -1}) {
                Rat prod = (1 + tau * qpow(q, -k + 1)) * (1 - tau * qpow(q, -k));
                if (orth_gamma(2 * k, tau, q) != prod)
                    bad.push_back(make_witness("gamma product identity broken at q=" +
                                               std::to_string(q) + " k=" + std::to_string(k)));
            }
        }
    }
    return bad;
}

std::vector<Witness> bound_product_witnesses(long q_max, int exp_max) {
    std::vector<Witness> bad;
    for (long q : prime_powers_upto(q_max)) {
        Rat avals[2] = {Rat(1), 1 / (1 - qpow(q, -1))};
        for (const Rat& a : avals)
            for (int y = 0; y <= exp_max; ++y)
                for (int x = 0; x <= y; ++x)
                    for (int l = 0; l <= x; ++l) {
                        Rat lhs = (a + qpow(q, -x)) * (a + qpow(q, -y));
                        Rat rhs = (a + qpow(q, -x + l)) * (a + qpow(q, -y - l));
                        if (!(lhs <= rhs))
                            bad.push_back(make_witness(
                                "spread product bound broken at q=" + std::to_string(q) + " x=" +
                                std::to_string(x) + " y=" + std::to_string(y) + " l=" +
                                std::to_string(l)));
                    }
    }
    return bad;
}

std::vector<Witness> gl_lower_bound_witnesses(long q_max, int dim_sum_max) {
    std::vector<Witness> bad;
    for (long q : prime_powers_upto(q_max))
        for (int n = 1; n < dim_sum_max; ++n)
            for (int np = 1; n + np <= dim_sum_max; ++np) {
                Rat rho = gl_span_proportion(n, np, q);
                if (!(rho > 1 - Rat(3, 2 * q)))
                    bad.push_back(make_witness("gl proportion bound broken at q=" +
                                               std::to_string(q) + " n=" + std::to_string(n) +
                                               " n'=" + std::to_string(np)));
            }
    return bad;
}

std::vector<Witness> orth_cap_witnesses(long q_max, int half_dim_max) {
    std::vector<Witness> bad;
    for (long q : prime_powers_upto(q_max)) {
        if (q % 2 == 0) continue;  // caps are odd-q statements
        if (q < 3) continue;
        for (int n = 2; n <= 2 * half_dim_max; ++n)
            for (int np = n; np <= 2 * half_dim_max; ++np) {
                int dim = n + np;
                std::vector<Sign> epss =
                    dim % 2 == 0 ? std::vector<Sign>{+1, -1} : std::vector<Sign>{0};
                for (Sign e : epss)
                    for (Sign sg : {+1, -1})
                        for (Sign sgp : {+1, -1}) {
                            SpanContext ctx;
                            ctx.kind = FormKind::Quadratic;
                            ctx.n = n;
                            ctx.nprime = np;
                            ctx.q = q;
                            ctx.epsilon = e;
                            ctx.sigma = sg;
                            ctx.sigma_prime = sgp;
                            OrthTerms t = orth_bound_terms(ctx);
                            std::ostringstream tag;
                            tag << "q=" << q << " (" << n << "," << np << "," << int(e) << ","
                                << int(sg) << "," << int(sgp) << ")";
                            if (!(t.c1 <= t.c1_cap))
                                bad.push_back(make_witness("c1 exceeds parity cap at " + tag.str()));
                            if (!(t.c2 / q <= t.X2))
                                bad.push_back(make_witness("c2/q exceeds X2 at " + tag.str()));
                            if (n % 2 != np % 2 && !(t.Y1 <= t.X1))
                                bad.push_back(make_witness("Y1 above X1 at " + tag.str()));
                            if (n % 2 == 1 && np % 2 == 1 && !(t.Z1 <= t.X1))
                                bad.push_back(make_witness("Z1 above X1 at " + tag.str()));
                        }
            }
    }
    return bad;
}

// ---- theorem verification ---------------------------------------------------

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Exceptional: return "exceptional";
    }
    return "?";
}

VerifyRun verify_theorems(const std::vector<SpanContext>& grid, VerifyMode mode,
                          uint64_t budget, uint64_t samples, uint64_t seed, int threads) {
    VerifyRun run;
    for (const SpanContext& ctx : grid) {
        try {
            validate_context(ctx);
        } catch (const std::exception& e) {
            run.skipped.emplace_back(ctx, e.what());
            continue;
        }
        if (!theorem_scope(ctx)) {
            run.skipped.emplace_back(ctx, "outside theorem conditions");
            continue;
        }

        BoundReport r;
        r.ctx = ctx;
        r.exceptional = is_exceptional(ctx);
        r.c = table_constant(ctx.kind);
        if (ctx.kind == FormKind::Hermitian && r.exceptional) r.c = 2;
        r.phi_bound = r.c / Rat(ctx.field_order());

        switch (ctx.kind) {
            case FormKind::Hermitian: {
                UnitaryTerms t = unitary_c1_c2(ctx.n, ctx.nprime, ctx.q);
                r.c1 = t.c1;
                r.c2 = t.c2;
                r.cval = t.cval;
                break;
            }
            case FormKind::Alternating: {
                SymplecticBound b = symplectic_bound(ctx.n, ctx.nprime, ctx.q);
                r.c1 = ctx.q * b.exact_ratio;
                r.c2 = Rat(0);
                r.cval = ctx.q * b.exact_ratio;
                break;
            }
            case FormKind::Quadratic: {
                Rat c1 = orth_c1(ctx.n, ctx.nprime, ctx.q, ctx.epsilon, ctx.sigma,
                                 ctx.sigma_prime);
                Rat c2 = orth_c2(ctx.n, ctx.nprime, ctx.q, ctx.epsilon, ctx.sigma,
                                 ctx.sigma_prime);
                r.c1 = c1;
                r.c2 = c2;
                r.cval = c1 + c2 / ctx.q;
                break;
            }
            case FormKind::Linear:
                break;
        }

        if (mode == VerifyMode::Exact) {
            BigInt total = subspace_total(ctx.ambient_dim(), ctx.nprime, ctx.field_order());
            if (total > BigInt(budget)) {
                run.skipped.emplace_back(ctx, "budget: " + total.str() + " subspaces");
                continue;
            }
            PhiExact ex = exact_phi(ctx, budget, threads);
            r.exact = true;
            r.phi = ex.phi;
            r.ci_low = r.ci_high = ex.phi;
            r.margin = r.phi_bound - ex.phi;
            if (r.exceptional)
                r.verdict = ctx.kind == FormKind::Hermitian && ex.phi > r.phi_bound
                                ? Verdict::Fail
                                : Verdict::Exceptional;
            else
                r.verdict = ex.phi <= r.phi_bound ? Verdict::Pass : Verdict::Fail;
            if (r.cval)
                r.decomposition_ok = ex.phi <= *r.cval / Rat(ctx.field_order());
        } else {
            PhiEstimate est = estimate_phi(ctx, samples, seed);
            r.exact = false;
            r.phi = est.phat;
            r.ci_low = est.ci_low;
            r.ci_high = est.ci_high;
            r.margin = r.phi_bound - est.ci_high;
            if (r.exceptional)
                r.verdict = Verdict::Exceptional;
            else
                r.verdict = est.ci_high <= r.phi_bound ? Verdict::Pass : Verdict::Inconclusive;
        }
        if (r.verdict == Verdict::Fail || !r.decomposition_ok) run.all_ok = false;
        run.reports.push_back(r);
    }
    return run;
}

GridParams grid_preset_params(const std::string& name) {
    if (name == "small") return GridParams{4, {2, 3}, {2, 3}, {3}};
    if (name == "medium") return GridParams{8, {2, 3, 4, 5}, {2, 3, 4, 5}, {3, 4, 5}};
    throw std::invalid_argument("unknown grid preset: " + name);
}

std::vector<SpanContext> expand_grid(const GridParams& p) {
    int dim_cap = p.dim_cap;
    const std::vector<long>&qs_u = p.unitary_q, &qs_s = p.symplectic_q, &qs_o = p.orthogonal_q;
    std::vector<SpanContext> out;
    auto ctx_of = [](FormKind k, int n, int np, long q, Sign e, Sign s, Sign sp) {
        SpanContext c;
        c.kind = k;
        c.n = n;
        c.nprime = np;
        c.q = q;
        c.epsilon = e;
        c.sigma = s;
        c.sigma_prime = sp;
        return c;
    };
    for (long q : qs_u)
        for (int n = 1; n < dim_cap; ++n)
            for (int np = 1; n + np <= dim_cap; ++np)
                out.push_back(ctx_of(FormKind::Hermitian, n, np, q, 0, 0, 0));
    for (long q : qs_s)
        for (int n = 2; n < dim_cap; n += 2)
            for (int np = 2; n + np <= dim_cap; np += 2)
                out.push_back(ctx_of(FormKind::Alternating, n, np, q, 0, 0, 0));
    for (long q : qs_o)
        for (int n = 1; n < dim_cap; ++n)
            for (int np = 1; n + np <= dim_cap; ++np) {
                if (q % 2 == 0 && (n % 2 || np % 2)) continue;
                int dim = n + np;
                std::vector<Sign> epss =
                    dim % 2 == 0 ? std::vector<Sign>{+1, -1} : std::vector<Sign>{0};
                for (Sign e : epss)
                    for (Sign sg : {+1, -1})
                        for (Sign sgp : {+1, -1})
                            out.push_back(ctx_of(FormKind::Quadratic, n, np, q, e, sg, sgp));
            }
    return out;
}

std::vector<SpanContext> grid_preset(const std::string& name) {
    return expand_grid(grid_preset_params(name));
}

}  // namespace formspan::bounds
