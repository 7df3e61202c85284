#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formspan/counting.hpp"
#include "formspan/enumeration.hpp"
#include "formspan/sampling.hpp"

namespace formspan::bounds {

// headline constant per kind: unitary 9/5, symplectic 5/3, orthogonal 43/16,
// gl 3/2 (the baseline proportion bound)
Rat table_constant(FormKind kind);

// phi is compared against c / |F|; |F| is q^2 for unitary, q otherwise
Rat phi_bound_for(const SpanContext& ctx);

// the closed list of exceptional parameter sets where the headline constant
// is replaced (unitary) or the bound is void (orthogonal, phi = 1)
bool is_exceptional(const SpanContext& ctx);

struct UnitaryTerms {
    Rat c1, c2;
    Rat cval;  // c1 + c2/q, compared against 9/5 (2 at the exceptional point)
};
UnitaryTerms unitary_c1_c2(int n, int nprime, long q);

struct SymplecticBound {
    Rat exact_ratio;  // (1-q^-n)(1-q^-n')/((q-1)(1-q^-n-n'))
    Rat simplified;   // (1-q^-min)/(q-1)
    Rat c;            // 3/2 when q >= 3 or min(n,n') = 2, else 5/3
    Rat best;         // sharpest of the three as a bound on phi
};
SymplecticBound symplectic_bound(int n, int nprime, long q);

struct OrthTerms {
    Rat c1, c2;
    Rat cval;    // c1 + c2/q, compared against 43/16
    Rat c1_cap;  // parity-appropriate cap: X1, Y1 or Z1
    Rat X1, X2, Y1, Z1;  // X2 caps c2/q
};
// exact c1 via the orbit-intersection sum over the two nonsingular point
// classes (single class for even q); caps need n, n' >= 2
OrthTerms orth_bound_terms(const SpanContext& ctx);
Rat orth_c1(int n, int nprime, long q, Sign epsilon, Sign sigma, Sign sigma_prime);
Rat orth_c2(int n, int nprime, long q, Sign epsilon, Sign sigma, Sign sigma_prime);

// ---- inequality grids: every checker returns the list of failing witnesses
// (expected empty); each witness carries the offending parameters -----------

struct Witness {
    std::string what;
};

// chain 0 = zeta_1 < zeta_3 < ... < 1 < ... < zeta_4 < zeta_2 plus the
// cross-product and three-factor comparisons
std::vector<Witness> zeta_chain_witnesses(long q_max = 16, int index_max = 40);
std::vector<Witness> zeta_product_witnesses(long q_max = 16, int index_max = 20);
std::vector<Witness> zeta_three_factor_witnesses(long q_max = 16, int index_max = 40);

// 1 - q^{-k+1} < gamma_2k^- < gamma_2k+1^o < 1 < gamma_2k^+ < upper envelope,
// plus the product identity gamma = (1 + tau q^{-n/2+1})(1 - tau q^{-n/2})
std::vector<Witness> gamma_chain_witnesses(long q_max = 16, int k_max = 12);

// (a + q^-x)(a + q^-y) <= (a + q^-(x-l))(a + q^-(y+l)) for 0 <= l <= x <= y,
// with both a values used downstream: 1 and 1/(1-1/q)
std::vector<Witness> bound_product_witnesses(long q_max = 16, int exp_max = 20);

// rho > 1 - 3/(2q) on the gl grid
std::vector<Witness> gl_lower_bound_witnesses(long q_max = 16, int dim_sum_max = 24);

// c1 <= parity cap and cap orderings Y1 <= X1, Z1 <= X1 on an odd-q grid
std::vector<Witness> orth_cap_witnesses(long q_max = 16, int half_dim_max = 12);

// ---- theorem verification pipeline ----------------------------------------

enum class Verdict { Pass, Fail, Inconclusive, Exceptional };
const char* verdict_name(Verdict v);

struct BoundReport {
    SpanContext ctx;
    Rat c;          // constant actually applied (exceptional cases override)
    Rat phi_bound;  // c / |F|
    bool exact = true;
    Rat phi;                 // exact value or point estimate
    Rat ci_low, ci_high;     // equal to phi when exact
    Rat margin;              // phi_bound - phi (exact) or phi_bound - ci_high
    Verdict verdict = Verdict::Pass;
    bool exceptional = false;
    std::optional<Rat> c1, c2, cval;  // decomposition terms where defined
    bool decomposition_ok = true;     // phi <= (c1 + c2/q)/|F| when exact
};

enum class VerifyMode { Exact, MonteCarlo };

struct VerifyRun {
    std::vector<BoundReport> reports;
    std::vector<std::pair<SpanContext, std::string>> skipped;
    bool all_ok = true;  // no Fail verdict
};

VerifyRun verify_theorems(const std::vector<SpanContext>& grid, VerifyMode mode,
                          uint64_t budget = default_budget(), uint64_t samples = 20000,
                          uint64_t seed = 0, int threads = 1);

// A grid is generated from its parameters: every legal label combination for
// each kind, both dimension orders, n + n' <= dim_cap.
struct GridParams {
    int dim_cap = 4;
    std::vector<long> unitary_q, symplectic_q, orthogonal_q;
};
std::vector<SpanContext> expand_grid(const GridParams& p);

// named grids: "small" (quick smoke) and "medium" (n+n' <= 8, q <= 5);
// the same parameter sets are pinned in configs/grids.json
GridParams grid_preset_params(const std::string& name);
std::vector<SpanContext> grid_preset(const std::string& name);

}  // namespace formspan::bounds
