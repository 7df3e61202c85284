#include "formspan/sampling.hpp"

namespace formspan {

uint64_t SplitMix64::below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

SplitMix64 substream(uint64_t seed, uint64_t attempt) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (attempt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    SplitMix64 g;
    g.state = z;
    return g;
}

namespace {

// fill + rank check without allocating: returns true when rows are independent
bool draw_full_rank(const Field& f, int dim, int k, SplitMix64& rng, Mat& sample,
                    Mat& scratch) {
    uint64_t order = static_cast<uint64_t>(f.order());
    for (int r = 0; r < k; ++r) {
        uint16_t* row = sample.row(r);
        for (int c = 0; c < dim; ++c) row[c] = static_cast<uint16_t>(rng.below(order));
    }
    return rank_with_scratch(sample, scratch) == k;
}

}  // namespace

Mat random_subspace(const Field& f, int dim, int k, SplitMix64& rng) {
    if (k < 0 || k > dim) throw std::invalid_argument("random_subspace: bad dimension");
    Mat sample(f, k, dim);
    Mat scratch(f, k, dim);
    if (k == 0) return sample;
    int guard = 0;
    while (!draw_full_rank(f, dim, k, rng, sample, scratch)) {
        if (++guard > 1000000) throw std::runtime_error("full-rank draw failed repeatedly");
    }
    sample.rref();
    return sample;
}

std::pair<Rat, Rat> wilson_interval(uint64_t hits, uint64_t n) {
    if (n == 0) throw std::invalid_argument("wilson_interval needs n >= 1");
    if (hits > n) throw std::invalid_argument("wilson_interval needs hits <= n");
    const Rat z(49, 25);
    const Rat z2 = z * z;
    Rat nn(n);
    Rat phat(hits, n);
    Rat denom = 1 + z2 / nn;
    Rat center = (phat + z2 / (2 * nn)) / denom;
    Rat factor = z / denom;
    Rat radicand = phat * (1 - phat) / nn + z2 / (4 * nn * nn);

    // sqrt(a/b) = sqrt(a*b)/b; bracket with integer isqrt, round outward
    BigInt a = boost::multiprecision::numerator(radicand);
    BigInt b = boost::multiprecision::denominator(radicand);
    BigInt ab = a * b;
    BigInt s = isqrt(ab);
    Rat root_hi = (s * s == ab) ? Rat(s, b) : Rat(s + 1, b);

    Rat low = center - factor * root_hi;
    Rat high = center + factor * root_hi;
    if (low < 0) low = 0;
    if (high > 1) high = 1;
    return {low, high};
}

PhiEstimate estimate_phi(const SpanContext& ctx, uint64_t samples, uint64_t seed,
                         int rep_index) {
    if (samples == 0) throw std::invalid_argument("estimate_phi needs samples >= 1");
    validate_context(ctx);
    ClassicalSpace V = context_space(ctx);
    const Field& f = *V.F;

    PhiEstimate out;
    out.ctx = ctx;
    out.seed = seed;

    Mat u = standard_representative(V, ctx.n, ctx.sigma, rep_index);
    MeetTester tester(V, u);

    int k = ctx.nprime;
    Mat sample(f, k, V.dim);
    Mat scratch(f, k, V.dim);

    uint64_t accepted = 0, hits = 0, attempts = 0;
    uint64_t consecutive_rejects = 0;
    while (accepted < samples) {
        SplitMix64 rng = substream(seed, attempts);
        ++attempts;
        int guard = 0;
        while (!draw_full_rank(f, V.dim, k, rng, sample, scratch)) {
            if (++guard > 1000000)
                throw std::runtime_error("full-rank draw failed repeatedly");
        }
        sample.rref();
        if (!orbit_member_uprime(V, ctx, sample)) {
            if (++consecutive_rejects >= 1000000)
                throw std::runtime_error(
                    "rejection guard tripped: orbit looks empty for " + ctx.describe());
            continue;
        }
        consecutive_rejects = 0;
        ++accepted;
        if (tester.meets(sample)) ++hits;
    }

    out.samples = accepted;
    out.hits = hits;
    out.attempts = attempts;
    out.phat = Rat(hits, accepted);
    auto [lo, hi] = wilson_interval(hits, accepted);
    out.ci_low = lo;
    out.ci_high = hi;
    out.rejection_rate = Rat(attempts - accepted, attempts);
    return out;
}

Q2Report q2_orthogonal_experiment(int max_half_dim, uint64_t samples, uint64_t seed,
                                  uint64_t budget) {
    if (max_half_dim < 2 || max_half_dim % 2 != 0)
        throw std::invalid_argument("q2 experiment needs an even per-side dimension cap >= 2");
    Q2Report rep;
    rep.samples = samples;
    rep.seed = seed;
    const Sign signs[2] = {+1, -1};
    for (int n = 2; n <= max_half_dim; n += 2)
        for (int np = n; np <= max_half_dim; np += 2)
            for (Sign eps : signs)
                for (Sign sg : signs)
                    for (Sign sgp : signs) {
                        SpanContext ctx;
                        ctx.kind = FormKind::Quadratic;
                        ctx.n = n;
                        ctx.nprime = np;
                        ctx.q = 2;
                        ctx.epsilon = eps;
                        ctx.sigma = sg;
                        ctx.sigma_prime = sgp;
                        Q2Row row;
                        row.ctx = ctx;
                        BigInt total = subspace_total(ctx.ambient_dim(), np, 2);
                        if (total <= BigInt(budget)) {
                            PhiExact ex = exact_phi(ctx, budget);
                            row.exact = true;
                            row.phi = ex.phi;
                            row.ci_low = row.ci_high = ex.phi;
                        } else {
                            PhiEstimate est = estimate_phi(ctx, samples, seed);
                            row.exact = false;
                            row.samples = est.samples;
                            row.phi = est.phat;
                            row.ci_low = est.ci_low;
                            row.ci_high = est.ci_high;
                        }
                        row.q_phi_low = 2 * row.ci_low;
                        row.q_phi_high = 2 * row.ci_high;
                        row.flagged = row.q_phi_low >= 2;
                        rep.rows.push_back(row);
                    }
    return rep;
}

}  // namespace formspan
