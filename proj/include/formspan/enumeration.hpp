#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "formspan/counting.hpp"
#include "formspan/geometry.hpp"
#include "formspan/rational.hpp"

namespace formspan {

// Enumeration refuses to start when the number of subspaces to visit exceeds
// the budget (default 10^7, or the CLASSICAL_SPAN_BUDGET environment variable).
uint64_t default_budget();

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(BigInt req, uint64_t allowed)
        : std::runtime_error("enumeration of " + req.str() + " subspaces exceeds budget " +
                             std::to_string(allowed)),
          required(std::move(req)),
          budget(allowed) {}
    BigInt required;
    uint64_t budget;
};

BigInt subspace_total(int dim, int k, long field_order);

namespace detail {
// Visitors may return void (visit everything) or bool (true stops the walk).
template <typename Fn>
bool visit_stops(Fn&& fn, const Mat& m) {
    if constexpr (std::is_void_v<decltype(fn(m))>) {
        fn(m);
        return false;
    } else {
        return fn(m);
    }
}
}  // namespace detail

// Visit every k-subspace of F^dim exactly once, as its RREF basis matrix.
// Deterministic order: pivot-column patterns lexicographically; within a
// pattern the free entries run through an odometer, last position fastest.
// The Mat passed to fn is a reused workspace: copy it if you keep it.
// Returns true when the visitor stopped the walk early.
template <typename Fn>
bool for_each_rref_pattern(const Field& f, int dim, const std::vector<int>& piv, Mat& work,
                           Fn&& fn) {
    int k = static_cast<int>(piv.size());
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < dim; ++c) work.set(r, c, 0);
    std::vector<bool> isp(dim, false);
    for (int p : piv) isp[p] = true;
    for (int r = 0; r < k; ++r) work.set(r, piv[r], 1);
    std::vector<std::pair<int, int>> free_pos;
    for (int r = 0; r < k; ++r)
        for (int c = piv[r] + 1; c < dim; ++c)
            if (!isp[c]) free_pos.emplace_back(r, c);
    while (true) {
        if (detail::visit_stops(fn, const_cast<const Mat&>(work))) return true;
        size_t i = free_pos.size();
        bool done = true;
        while (i-- > 0) {
            auto [r, c] = free_pos[i];
            int v = work.at(r, c) + 1;
            if (v < f.order()) {
                work.set(r, c, v);
                done = false;
                break;
            }
            work.set(r, c, 0);
        }
        if (done) return false;
    }
}

template <typename Fn>
bool for_each_rref(const Field& f, int dim, int k, Fn&& fn) {
    if (k < 0 || k > dim) return false;
    Mat work(f, k, dim);
    if (k == 0) return detail::visit_stops(fn, const_cast<const Mat&>(work));
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        if (for_each_rref_pattern(f, dim, piv, work, fn)) return true;
        int i = k - 1;
        while (i >= 0 && piv[i] == dim - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    return false;
}

// A verification context: U of dimension n and the orbit of candidates U' of
// dimension n' inside the standard space of dimension n + n'. sigma labels
// apply to quadratic contexts only; epsilon is the ambient quadratic type.
struct SpanContext {
    FormKind kind{FormKind::Linear};
    int n{0};
    int nprime{0};
    long q{0};
    Sign epsilon{0};
    Sign sigma{0};
    Sign sigma_prime{0};

    int ambient_dim() const { return n + nprime; }
    long field_order() const { return kind == FormKind::Hermitian ? q * q : q; }
    std::string describe() const;
};

// Context-level naming: unitary / symplectic / orthogonal / gl.
const char* context_kind_name(FormKind kind);
FormKind context_kind_from_name(const std::string& name);

// Throws std::invalid_argument when the context violates the legality table
// (parities, q constraints, label availability).
void validate_context(const SpanContext& ctx);

// True when the context is inside the scope of the probability theorems
// (e.g. quadratic contexts need q >= 3 there).
bool theorem_scope(const SpanContext& ctx);

ClassicalSpace context_space(const SpanContext& ctx);

// The index-th member (in canonical enumeration order) of the orbit that U is
// drawn from. index 0 is the standard representative; higher indices feed the
// Witt-independence spot checks.
Mat standard_representative(const ClassicalSpace& V, int k, Sign sigma, int index = 0);

// Candidate filter for the U' orbit of a context.
bool orbit_member_uprime(const ClassicalSpace& V, const SpanContext& ctx, const Mat& basis);

// Nontrivial-intersection test against a fixed subspace.
class MeetTester {
public:
    MeetTester(const ClassicalSpace& sp, const Mat& u_basis);
    bool meets(const Mat& candidate);

private:
    const Field* f_;
    Mat u_;
    std::vector<int> upiv_;
    Mat scratch_;
};

struct PhiExact {
    SpanContext ctx;
    BigInt meet{0};     // candidates in the orbit meeting U nontrivially
    BigInt orbit{0};    // orbit size
    Rat phi{0};
    Mat u_basis;
};

PhiExact exact_phi(const SpanContext& ctx, uint64_t budget = default_budget(), int threads = 1,
                   int rep_index = 0);

// Orbits of small subspaces used by the double-counting checks.
enum class OrbitKind {
    AllK,                // every k-subspace
    SingularPoints,      // P1
    NonsingularPoints,   // N1
    NonsingularAlpha,    // N1^alpha (label)
    TotallySingularK,    // P_k
    NonTotallySingularK, // R_k
    NondegK,             // nondegenerate k-subspaces
    NondegSigmaK,        // nondegenerate with subspace type = label
};

struct OrbitSpec {
    OrbitKind kind;
    int k{1};
    Sign label{0};
    std::string describe() const;
};

bool orbit_member(const ClassicalSpace& V, const OrbitSpec& spec, const Mat& basis);
BigInt orbit_size(const ClassicalSpace& V, const OrbitSpec& spec, uint64_t budget = default_budget());

struct DoubleCountCheck {
    BigInt w_size{0};          // |W-orbit|
    BigInt uprime_size{0};     // |U'-orbit|
    BigInt through_w{0};       // |U'(W)| for the canonical W (constant over the orbit)
    BigInt w_inside_uprime{0}; // |W(U'_0)| for the first U' in enumeration order
    bool constant{false};      // |U'(W)| independent of W
    bool identity{false};      // |W| * |U'(W)| == |W(U')| * |U'|
};

// Counts incidences between two orbits and checks the transitivity identity.
DoubleCountCheck verify_double_counting(const ClassicalSpace& V, const OrbitSpec& w_spec,
                                        const OrbitSpec& uprime_spec,
                                        uint64_t budget = default_budget());

// Bonferroni data for the alternating q = 2 analysis: T_k sums over k-subsets
// of the points of U, S_k over k-subspaces of U, split into totally singular
// and non-totally-singular parts.
struct InclusionExclusionReport {
    BigInt t1{0}, t2{0}, t3{0};
    BigInt s2{0}, s3{0};
    BigInt sp2{0}, sp3{0};  // S_{P,k}
    BigInt sr2{0}, sr3{0};  // S_{R,k}
    BigInt covered{0};      // |T| = candidates meeting U
    BigInt orbit{0};
    Rat phi{0};
    bool t2_identity{false};    // T2 = 3 S2
    bool t3_identity{false};    // T3 = S2 + 28 S3
    bool sr2_identity{false};   // S_{R,2} = T1 / 12
    bool sr3_identity{false};   // S_{R,3} = S_{P,2} / 16
    bool sandwich{false};       // T1-T2 <= |T| <= T1-T2+T3 <= T1
};

InclusionExclusionReport symplectic_inclusion_exclusion(int n, int nprime,
                                                        uint64_t budget = default_budget());

// Basis of row(A) meet row(B) (Zassenhaus).
Mat intersection_basis(const Field& f, const Mat& a, const Mat& b);

}  // namespace formspan
