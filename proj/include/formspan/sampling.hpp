#pragma once

#include <cstdint>
#include <utility>

#include "formspan/enumeration.hpp"

namespace formspan {

// SplitMix64: fixed 64-bit generator, bit-stable across platforms.
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), unbiased via rejection of the wrap-around range
    uint64_t below(uint64_t bound);
};

// Independent substream for one attempt: the attempt index is pushed through
// the output mixer, so streams for different attempts never run in lockstep.
SplitMix64 substream(uint64_t seed, uint64_t attempt);

// Uniform k-subspace: k x dim entries drawn uniformly, redrawn until the rank
// is k.  Every subspace has the same number of full-rank representing
// matrices, so the row space is uniform.  Returns the RREF basis.
Mat random_subspace(const Field& f, int dim, int k, SplitMix64& rng);

struct PhiEstimate {
    SpanContext ctx;
    uint64_t samples = 0;   // accepted draws (members of the U'-orbit)
    uint64_t hits = 0;      // accepted draws meeting U non-trivially
    uint64_t attempts = 0;  // total draws including rejected ones
    uint64_t seed = 0;
    Rat phat;               // hits / samples
    Rat ci_low, ci_high;    // 95% Wilson interval, rounded outward
    Rat rejection_rate;     // (attempts - samples) / attempts
};

// 95% Wilson score interval (z = 49/25) for hits successes out of n draws,
// computed in exact rational arithmetic.  The square root is bracketed by
// integer isqrt and rounded outward, so the interval is conservative and
// identical on every platform.
std::pair<Rat, Rat> wilson_interval(uint64_t hits, uint64_t n);

// Monte Carlo phi: rejection-sample uniform U' from its orbit, count meets
// against the standard U.  Deterministic given (ctx, samples, seed).
PhiEstimate estimate_phi(const SpanContext& ctx, uint64_t samples, uint64_t seed,
                         int rep_index = 0);

struct Q2Row {
    SpanContext ctx;
    bool exact = false;     // enumerated exactly (within budget) vs estimated
    uint64_t samples = 0;   // 0 when exact
    Rat phi;                // exact value or point estimate
    Rat ci_low, ci_high;    // equal to phi when exact
    Rat q_phi_low, q_phi_high;  // the interval scaled by q
    bool flagged = false;   // q*ci_low >= 2: interval excludes every c < 2
};

struct Q2Report {
    std::vector<Q2Row> rows;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

// Orthogonal sweep over |F| = 2: even n <= n' <= max_half_dim, both signs of
// epsilon, all four (sigma, sigma') pairs.  Exact enumeration where the
// subspace count fits the budget, Monte Carlo otherwise.  Reports evidence
// only; asserts nothing about the open constant.
Q2Report q2_orthogonal_experiment(int max_half_dim, uint64_t samples, uint64_t seed,
                                  uint64_t budget = default_budget());

}  // namespace formspan
