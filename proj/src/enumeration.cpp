#include "formspan/enumeration.hpp"

#include <cstdlib>
#include <thread>
#include <unordered_map>

namespace formspan {

uint64_t default_budget() {
    static uint64_t value = [] {
        if (const char* env = std::getenv("CLASSICAL_SPAN_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<uint64_t>(v);
        }
        return static_cast<uint64_t>(10000000);
    }();
    return value;
}

BigInt subspace_total(int dim, int k, long field_order) {
    return counting::gaussian_binomial(dim, k, field_order);
}

namespace {

void check_budget(const BigInt& total, uint64_t budget) {
    if (total > BigInt(budget)) throw BudgetExceeded(total, budget);
}

bool is_prime_power_int(int n) {
    if (n < 2) return false;
    int p = 0;
    for (int d = 2; d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    while (n > 1) {
        if (n % p != 0) return false;
        n /= p;
    }
    return true;
}

std::string sign_str(Sign s) { return s > 0 ? "+" : (s < 0 ? "-" : "o"); }

}  // namespace

const char* context_kind_name(FormKind kind) {
    switch (kind) {
        case FormKind::Linear: return "gl";
        case FormKind::Alternating: return "symplectic";
        case FormKind::Hermitian: return "unitary";
        case FormKind::Quadratic: return "orthogonal";
    }
    return "?";
}

FormKind context_kind_from_name(const std::string& name) {
    if (name == "gl" || name == "linear") return FormKind::Linear;
    if (name == "symplectic") return FormKind::Alternating;
    if (name == "unitary") return FormKind::Hermitian;
    if (name == "orthogonal") return FormKind::Quadratic;
    throw std::invalid_argument("unknown kind: " + name);
}

std::string SpanContext::describe() const {
    std::string s = std::string(context_kind_name(kind)) + " n=" + std::to_string(n) +
                    " n'=" + std::to_string(nprime) + " q=" + std::to_string(q);
    if (kind == FormKind::Quadratic)
        s += " eps=" + sign_str(epsilon) + " sigma=" + sign_str(sigma) + "/" +
             sign_str(sigma_prime);
    return s;
}

void validate_context(const SpanContext& ctx) {
    if (ctx.n < 1 || ctx.nprime < 1)
        throw std::invalid_argument("context needs n, n' >= 1");
    if (ctx.q < 2 || ctx.q > 256 || !is_prime_power_int(static_cast<int>(ctx.q)))
        throw std::invalid_argument("q must be a prime power in [2, 256]");
    switch (ctx.kind) {
        case FormKind::Linear:
            if (ctx.epsilon != 0 || ctx.sigma != 0 || ctx.sigma_prime != 0)
                throw std::invalid_argument("gl contexts carry no type labels");
            return;
        case FormKind::Alternating:
            if (ctx.n % 2 != 0 || ctx.nprime % 2 != 0)
                throw std::invalid_argument("symplectic contexts need n, n' even");
            if (ctx.epsilon != 0 || ctx.sigma != 0 || ctx.sigma_prime != 0)
                throw std::invalid_argument("symplectic contexts carry no type labels");
            return;
        case FormKind::Hermitian:
            if (ctx.q > 16) throw std::invalid_argument("unitary contexts need q <= 16");
            if (ctx.epsilon != 0 || ctx.sigma != 0 || ctx.sigma_prime != 0)
                throw std::invalid_argument("unitary contexts carry no type labels");
            return;
        case FormKind::Quadratic: {
            int dim = ctx.ambient_dim();
            if (dim % 2 == 0) {
                if (ctx.epsilon != 1 && ctx.epsilon != -1)
                    throw std::invalid_argument("even orthogonal contexts need epsilon = +1/-1");
            } else if (ctx.epsilon != 0) {
                throw std::invalid_argument("odd orthogonal contexts are parabolic (epsilon = o)");
            }
            if (ctx.sigma != 1 && ctx.sigma != -1)
                throw std::invalid_argument("orthogonal contexts need sigma = +1/-1");
            if (ctx.sigma_prime != 1 && ctx.sigma_prime != -1)
                throw std::invalid_argument("orthogonal contexts need sigma' = +1/-1");
            if (ctx.q % 2 == 0 && (ctx.n % 2 != 0 || ctx.nprime % 2 != 0))
                throw std::invalid_argument("orthogonal contexts over even q need n, n' even");
            return;
        }
    }
}

bool theorem_scope(const SpanContext& ctx) {
    switch (ctx.kind) {
        case FormKind::Linear:
        case FormKind::Alternating:
        case FormKind::Hermitian: return true;
        case FormKind::Quadratic: return ctx.q >= 3;
    }
    return false;
}

ClassicalSpace context_space(const SpanContext& ctx) {
    validate_context(ctx);
    return standard_space(ctx.kind, ctx.ambient_dim(), static_cast<int>(ctx.q), ctx.epsilon);
}

namespace {

bool in_u_orbit(const ClassicalSpace& V, int /*k*/, Sign sigma, const Mat& basis) {
    if (V.kind == FormKind::Linear) return true;
    SubspaceClass c = classify_basis(V, basis);
    if (!c.nondeg) return false;
    if (V.kind == FormKind::Quadratic) return c.sigma == sigma;
    return true;
}

}  // namespace

Mat standard_representative(const ClassicalSpace& V, int k, Sign sigma, int index) {
    Mat found;
    int remaining = index;
    uint64_t steps = 0;
    const uint64_t cap = 50000000;
    bool ok = for_each_rref(*V.F, V.dim, k, [&](const Mat& b) -> bool {
        if (++steps > cap) throw std::runtime_error("representative search exhausted its cap");
        if (!in_u_orbit(V, k, sigma, b)) return false;
        if (remaining-- > 0) return false;
        found = b;
        return true;
    });
    if (!ok) throw std::invalid_argument("requested orbit is empty: no subspace matches");
    return found;
}

bool orbit_member_uprime(const ClassicalSpace& V, const SpanContext& ctx, const Mat& basis) {
    return in_u_orbit(V, ctx.nprime, ctx.sigma_prime, basis);
}

MeetTester::MeetTester(const ClassicalSpace& sp, const Mat& u_basis)
    : f_(sp.F), u_(u_basis), scratch_(*sp.F, 16, sp.dim) {
    Mat copy = u_basis;
    std::vector<int> piv = copy.rref();
    if (copy != u_basis) throw std::invalid_argument("MeetTester expects an RREF basis");
    upiv_ = piv;
}

bool MeetTester::meets(const Mat& candidate) {
    const Field& f = *f_;
    int k = candidate.rows(), d = candidate.cols();
    // reduce candidate rows against U's pivots, then rank the residue
    for (int r = 0; r < k; ++r) {
        const uint16_t* src = candidate.row(r);
        uint16_t* dst = scratch_.row(r);
        for (int c = 0; c < d; ++c) dst[c] = src[c];
        for (size_t i = 0; i < upiv_.size(); ++i) {
            int coef = dst[upiv_[i]];
            if (coef == 0) continue;
            const uint16_t* urow = u_.row(static_cast<int>(i));
            for (int c = 0; c < d; ++c)
                dst[c] = static_cast<uint16_t>(f.sub(dst[c], f.mul(coef, urow[c])));
        }
    }
    // in-place elimination on the first k scratch rows
    int rank = 0;
    for (int c = 0; c < d && rank < k; ++c) {
        int pr = -1;
        for (int r = rank; r < k; ++r)
            if (scratch_.at(r, c) != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = c; j < d; ++j) {
                int t = scratch_.at(rank, j);
                scratch_.set(rank, j, scratch_.at(pr, j));
                scratch_.set(pr, j, t);
            }
        int inv = f.inv(scratch_.at(rank, c));
        for (int r = rank + 1; r < k; ++r) {
            int v = scratch_.at(r, c);
            if (v == 0) continue;
            int factor = f.mul(v, inv);
            for (int j = c; j < d; ++j)
                scratch_.set(r, j, f.sub(scratch_.at(r, j), f.mul(factor, scratch_.at(rank, j))));
        }
        ++rank;
    }
    return rank < k;
}

PhiExact exact_phi(const SpanContext& ctx, uint64_t budget, int threads, int rep_index) {
    validate_context(ctx);
    ClassicalSpace V = context_space(ctx);
    BigInt total = subspace_total(V.dim, ctx.nprime, V.F->order());
    check_budget(total, budget);

    PhiExact out;
    out.ctx = ctx;
    out.u_basis = standard_representative(V, ctx.n, ctx.sigma, rep_index);

    int k = ctx.nprime;
    if (threads < 1) threads = 1;

    if (threads == 1) {
        MeetTester tester(V, out.u_basis);
        uint64_t orbit = 0, meet = 0;
        for_each_rref(*V.F, V.dim, k, [&](const Mat& cand) {
            if (!orbit_member_uprime(V, ctx, cand)) return;
            ++orbit;
            if (tester.meets(cand)) ++meet;
        });
        out.orbit = orbit;
        out.meet = meet;
    } else {
        // shard the pivot patterns round-robin; counters are additive
        std::vector<std::vector<int>> patterns;
        {
            std::vector<int> piv(k);
            for (int i = 0; i < k; ++i) piv[i] = i;
            while (true) {
                patterns.push_back(piv);
                int i = k - 1;
                while (i >= 0 && piv[i] == V.dim - k + i) --i;
                if (i < 0) break;
                ++piv[i];
                for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
            }
        }
        std::vector<uint64_t> orbits(threads, 0), meets(threads, 0);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                MeetTester tester(V, out.u_basis);
                Mat work(*V.F, k, V.dim);
                uint64_t orbit = 0, meet = 0;
                for (size_t pi = t; pi < patterns.size(); pi += threads) {
                    for_each_rref_pattern(*V.F, V.dim, patterns[pi], work, [&](const Mat& cand) {
                        if (!orbit_member_uprime(V, ctx, cand)) return;
                        ++orbit;
                        if (tester.meets(cand)) ++meet;
                    });
                }
                orbits[t] = orbit;
                meets[t] = meet;
            });
        }
        for (auto& th : pool) th.join();
        uint64_t orbit = 0, meet = 0;
        for (int t = 0; t < threads; ++t) {
            orbit += orbits[t];
            meet += meets[t];
        }
        out.orbit = orbit;
        out.meet = meet;
    }

    if (out.orbit == 0) throw std::invalid_argument("orbit is empty: " + ctx.describe());
    out.phi = Rat(out.meet, out.orbit);
    return out;
}

std::string OrbitSpec::describe() const {
    switch (kind) {
        case OrbitKind::AllK: return "all k=" + std::to_string(k);
        case OrbitKind::SingularPoints: return "P1";
        case OrbitKind::NonsingularPoints: return "N1";
        case OrbitKind::NonsingularAlpha: return std::string("N1^") + (label > 0 ? "+" : "-");
        case OrbitKind::TotallySingularK: return "P" + std::to_string(k);
        case OrbitKind::NonTotallySingularK: return "R" + std::to_string(k);
        case OrbitKind::NondegK: return "nondeg k=" + std::to_string(k);
        case OrbitKind::NondegSigmaK:
            return "nondeg k=" + std::to_string(k) + " sigma=" + (label > 0 ? "+" : "-");
    }
    return "?";
}

bool orbit_member(const ClassicalSpace& V, const OrbitSpec& spec, const Mat& basis) {
    switch (spec.kind) {
        case OrbitKind::AllK:
            return true;
        case OrbitKind::SingularPoints:
            return V.point_norm(basis.row(0)) == 0;
        case OrbitKind::NonsingularPoints:
            return V.point_norm(basis.row(0)) != 0;
        case OrbitKind::NonsingularAlpha: {
            if (V.point_norm(basis.row(0)) == 0) return false;
            Subspace whole = full_subspace(V);
            return point_class(whole, basis.row(0)).alpha == spec.label;
        }
        case OrbitKind::TotallySingularK: {
            Subspace s{&V, basis};
            return is_totally_singular(s);
        }
        case OrbitKind::NonTotallySingularK: {
            Subspace s{&V, basis};
            return !is_totally_singular(s);
        }
        case OrbitKind::NondegK:
            return classify_basis(V, basis).nondeg;
        case OrbitKind::NondegSigmaK: {
            SubspaceClass c = classify_basis(V, basis);
            if (!c.nondeg) return false;
            return V.kind == FormKind::Quadratic ? c.sigma == spec.label : true;
        }
    }
    return false;
}

BigInt orbit_size(const ClassicalSpace& V, const OrbitSpec& spec, uint64_t budget) {
    check_budget(subspace_total(V.dim, spec.k, V.F->order()), budget);
    uint64_t n = 0;
    for_each_rref(*V.F, V.dim, spec.k, [&](const Mat& b) {
        if (orbit_member(V, spec, b)) ++n;
    });
    return n;
}

DoubleCountCheck verify_double_counting(const ClassicalSpace& V, const OrbitSpec& w_spec,
                                        const OrbitSpec& uprime_spec, uint64_t budget) {
    check_budget(subspace_total(V.dim, w_spec.k, V.F->order()), budget);
    check_budget(subspace_total(V.dim, uprime_spec.k, V.F->order()), budget);
    if (w_spec.k > uprime_spec.k)
        throw std::invalid_argument("W-orbit dimension must not exceed the U'-orbit dimension");

    DoubleCountCheck out;
    std::unordered_map<Mat, uint64_t, MatHash> tally;
    for_each_rref(*V.F, V.dim, w_spec.k, [&](const Mat& b) {
        if (orbit_member(V, w_spec, b)) tally.emplace(b, 0);
    });
    out.w_size = tally.size();
    if (tally.empty()) throw std::invalid_argument("W-orbit is empty");

    const Field& f = *V.F;
    uint64_t uprime_size = 0;
    uint64_t first_inside = 0;
    bool first = true;
    for_each_rref(f, V.dim, uprime_spec.k, [&](const Mat& cand) {
        if (!orbit_member(V, uprime_spec, cand)) return;
        ++uprime_size;
        uint64_t inside = 0;
        // walk the w_spec.k-subspaces of the candidate in coefficient space
        for_each_rref(f, uprime_spec.k, w_spec.k, [&](const Mat& coeff) {
            Mat rows(f, w_spec.k, V.dim);
            for (int r = 0; r < w_spec.k; ++r)
                for (int c = 0; c < V.dim; ++c) {
                    int s = 0;
                    for (int i = 0; i < uprime_spec.k; ++i)
                        s = f.add(s, f.mul(coeff.at(r, i), cand.at(i, c)));
                    rows.set(r, c, s);
                }
            rows.rref();
            auto it = tally.find(rows);
            if (it != tally.end()) {
                ++it->second;
                ++inside;
            }
        });
        if (first) {
            first_inside = inside;
            first = false;
        }
    });
    out.uprime_size = uprime_size;
    out.w_inside_uprime = first_inside;
    if (uprime_size == 0) throw std::invalid_argument("U'-orbit is empty");

    bool constant = true;
    uint64_t through = tally.begin()->second;
    for (const auto& [w, c] : tally)
        if (c != through) {
            constant = false;
            break;
        }
    out.constant = constant;
    out.through_w = through;
    out.identity = constant && out.w_size * out.through_w == out.w_inside_uprime * out.uprime_size;
    return out;
}

Mat intersection_basis(const Field& f, const Mat& a, const Mat& b) {
    int d = a.cols();
    Mat m(f, a.rows() + b.rows(), 2 * d);
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < d; ++c) {
            m.set(r, c, a.at(r, c));
            m.set(r, d + c, a.at(r, c));
        }
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < d; ++c) m.set(a.rows() + r, c, b.at(r, c));
    m.rref();
    // rows whose left half vanished carry the intersection in the right half
    std::vector<int> keep;
    for (int r = 0; r < m.rows(); ++r) {
        bool left_zero = true, right_zero = true;
        for (int c = 0; c < d && left_zero; ++c)
            if (m.at(r, c) != 0) left_zero = false;
        for (int c = 0; c < d && right_zero; ++c)
            if (m.at(r, d + c) != 0) right_zero = false;
        if (left_zero && !right_zero) keep.push_back(r);
    }
    Mat res(f, static_cast<int>(keep.size()), d);
    for (size_t i = 0; i < keep.size(); ++i)
        for (int c = 0; c < d; ++c) res.set(static_cast<int>(i), c, m.at(keep[i], d + c));
    res.rref();
    return res;
}

namespace {

uint64_t choose2(uint64_t a) { return a * (a - 1) / 2; }
uint64_t choose3(uint64_t a) { return a < 3 ? 0 : a * (a - 1) * (a - 2) / 6; }

}  // namespace

InclusionExclusionReport symplectic_inclusion_exclusion(int n, int nprime, uint64_t budget) {
    SpanContext ctx;
    ctx.kind = FormKind::Alternating;
    ctx.n = n;
    ctx.nprime = nprime;
    ctx.q = 2;
    validate_context(ctx);
    ClassicalSpace V = context_space(ctx);
    check_budget(subspace_total(V.dim, nprime, 2), budget);

    InclusionExclusionReport out;
    Mat u = standard_representative(V, n, 0, 0);
    MeetTester tester(V, u);
    const Field& f = *V.F;

    uint64_t orbit = 0, covered = 0, t1 = 0, t2 = 0, t3 = 0;
    uint64_t sp2 = 0, sr2 = 0, sp3 = 0, sr3 = 0;
    for_each_rref(f, V.dim, nprime, [&](const Mat& cand) {
        if (!classify_basis(V, cand).nondeg) return;
        ++orbit;
        Mat inter = intersection_basis(f, u, cand);
        int idim = inter.rows();
        if (idim == 0) return;
        ++covered;
        uint64_t pts = (1u << idim) - 1;  // every point counts: q = 2, all isotropic
        t1 += pts;
        t2 += choose2(pts);
        t3 += choose3(pts);
        for (int k = 2; k <= 3; ++k) {
            if (idim < k) continue;
            for_each_rref(f, idim, k, [&](const Mat& coeff) {
                Mat rows(f, k, V.dim);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < V.dim; ++c) {
                        int s = 0;
                        for (int i = 0; i < idim; ++i)
                            s = f.add(s, f.mul(coeff.at(r, i), inter.at(i, c)));
                        rows.set(r, c, s);
                    }
                Subspace w{&V, rows};  // rows of a product of RREFs: singularity
                                       // tests only need the span
                bool ti = is_totally_singular(w);
                if (k == 2)
                    ti ? ++sp2 : ++sr2;
                else
                    ti ? ++sp3 : ++sr3;
            });
        }
    });

    out.orbit = orbit;
    out.covered = covered;
    out.t1 = t1;
    out.t2 = t2;
    out.t3 = t3;
    out.sp2 = sp2;
    out.sr2 = sr2;
    out.sp3 = sp3;
    out.sr3 = sr3;
    out.s2 = out.sp2 + out.sr2;
    out.s3 = out.sp3 + out.sr3;
    if (orbit == 0) throw std::logic_error("empty symplectic orbit");
    out.phi = Rat(out.covered, out.orbit);

    out.t2_identity = out.t2 == 3 * out.s2;
    out.t3_identity = out.t3 == out.s2 + 28 * out.s3;
    out.sr2_identity = 12 * out.sr2 == out.t1;
    out.sr3_identity = 16 * out.sr3 == out.sp2;
    out.sandwich = out.t1 - out.t2 <= out.covered && out.covered <= out.t1 - out.t2 + out.t3 &&
                   out.t1 - out.t2 + out.t3 <= out.t1;
    return out;
}

}  // namespace formspan
