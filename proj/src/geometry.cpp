#include "formspan/geometry.hpp"

#include <stdexcept>
#include <string>

#include "formspan/counting.hpp"

namespace formspan {

const char* kind_name(FormKind k) {
    switch (k) {
        case FormKind::Linear: return "linear";
        case FormKind::Alternating: return "alternating";
        case FormKind::Hermitian: return "hermitian";
        case FormKind::Quadratic: return "quadratic";
    }
    return "?";
}

int ClassicalSpace::bil(const uint16_t* u, const uint16_t* v) const {
    if (kind == FormKind::Linear) throw std::domain_error("linear spaces carry no form");
    const Field& f = *F;
    bool herm = kind == FormKind::Hermitian;
    int total = 0;
    for (int i = 0; i < dim; ++i) {
        if (u[i] == 0) continue;
        int s = 0;
        const uint16_t* grow = gram.row(i);
        for (int j = 0; j < dim; ++j) {
            if (v[j] == 0 || grow[j] == 0) continue;
            int vj = herm ? f.conj(v[j]) : v[j];
            s = f.add(s, f.mul(grow[j], vj));
        }
        total = f.add(total, f.mul(u[i], s));
    }
    return total;
}

int ClassicalSpace::quad_val(const uint16_t* v) const {
    if (kind != FormKind::Quadratic) throw std::domain_error("quad_val needs a quadratic space");
    const Field& f = *F;
    int total = 0;
    for (int i = 0; i < dim; ++i) {
        if (v[i] == 0) continue;
        const uint16_t* qrow = quad.row(i);
        for (int j = i; j < dim; ++j) {
            if (v[j] == 0 || qrow[j] == 0) continue;
            total = f.add(total, f.mul(qrow[j], f.mul(v[i], v[j])));
        }
    }
    return total;
}

int ClassicalSpace::point_norm(const uint16_t* v) const {
    return kind == FormKind::Quadratic ? quad_val(v) : bil(v, v);
}

namespace {

bool is_prime_power(int n) {
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

// smallest d with x^2 + x + d irreducible over GF(q)
int anisotropic_coeff(const Field& f) {
    std::vector<bool> reducible(f.order(), false);
    for (int c = 0; c < f.order(); ++c) {
        // d = -(c^2 + c) makes c a root
        int d = f.neg(f.add(f.mul(c, c), c));
        reducible[d] = true;
    }
    for (int d = 1; d < f.order(); ++d)
        if (!reducible[d]) return d;
    throw std::logic_error("no irreducible quadratic found");
}

}  // namespace

ClassicalSpace standard_space(FormKind kind, int dim, int q, Sign epsilon) {
    if (dim < 1) throw std::invalid_argument("space dimension must be >= 1");
    if (!is_prime_power(q)) throw std::invalid_argument("q must be a prime power");

    ClassicalSpace sp;
    sp.kind = kind;
    sp.dim = dim;
    sp.q = q;

    switch (kind) {
        case FormKind::Linear: {
            sp.F = &Field::of_order(q);
            sp.gram = Mat(*sp.F, dim, dim);
            if (epsilon != 0) throw std::invalid_argument("linear spaces have no type");
            return sp;
        }
        case FormKind::Alternating: {
            if (dim % 2 != 0) throw std::invalid_argument("alternating spaces have even dimension");
            if (epsilon != 0) throw std::invalid_argument("alternating spaces have no type");
            sp.F = &Field::of_order(q);
            const Field& f = *sp.F;
            sp.gram = Mat(f, dim, dim);
            for (int i = 0; i + 1 < dim; i += 2) {
                sp.gram.set(i, i + 1, 1);
                sp.gram.set(i + 1, i, f.neg(1));
            }
            return sp;
        }
        case FormKind::Hermitian: {
            if (epsilon != 0) throw std::invalid_argument("hermitian spaces have no type");
            if (q > 16) throw std::invalid_argument("hermitian base parameter q > 16 unsupported");
            sp.F = &Field::of_order(q * q);
            sp.gram = Mat::identity(*sp.F, dim);
            return sp;
        }
        case FormKind::Quadratic: {
            sp.F = &Field::of_order(q);
            const Field& f = *sp.F;
            int tail;
            if (dim % 2 == 0) {
                if (epsilon != 1 && epsilon != -1)
                    throw std::invalid_argument("even quadratic dimension needs epsilon = +1/-1");
                tail = epsilon == 1 ? 0 : 2;
            } else {
                if (epsilon != 0)
                    throw std::invalid_argument("odd quadratic dimension is parabolic (epsilon = 0)");
                if (q % 2 == 0)
                    throw std::invalid_argument("odd quadratic dimension needs q odd");
                tail = 1;
            }
            if (dim < tail) throw std::invalid_argument("dimension too small for requested type");
            sp.quad = Mat(f, dim, dim);
            for (int i = 0; i + 1 < dim - tail; i += 2) sp.quad.set(i, i + 1, 1);
            if (tail == 1) {
                sp.quad.set(dim - 1, dim - 1, 1);
            } else if (tail == 2) {
                sp.quad.set(dim - 2, dim - 2, 1);
                sp.quad.set(dim - 2, dim - 1, 1);
                sp.quad.set(dim - 1, dim - 1, anisotropic_coeff(f));
            }
            // polar form
            sp.gram = Mat(f, dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    int c = f.add(sp.quad.at(i, j), sp.quad.at(j, i));
                    sp.gram.set(i, j, c);
                }
            sp.epsilon = epsilon;
            sp.delta = q % 2 == 1 ? f.chi(sp.gram.det()) : 0;
            return sp;
        }
    }
    throw std::logic_error("unreachable");
}

bool Subspace::contains_vector(const uint16_t* v) const {
    const Field& f = *space->F;
    int d = space->dim;
    std::vector<uint16_t> w(v, v + d);
    for (int r = 0; r < basis.rows(); ++r) {
        int lead = -1;
        for (int c = 0; c < d; ++c)
            if (basis.at(r, c) != 0) {
                lead = c;
                break;
            }
        if (lead < 0 || w[lead] == 0) continue;
        int coef = w[lead];  // pivot entry is 1 in RREF
        for (int c = lead; c < d; ++c)
            w[c] = static_cast<uint16_t>(f.sub(w[c], f.mul(coef, basis.at(r, c))));
    }
    for (int c = 0; c < d; ++c)
        if (w[c] != 0) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    for (int r = 0; r < other.basis.rows(); ++r)
        if (!contains_vector(other.basis.row(r))) return false;
    return true;
}

Subspace make_subspace(const ClassicalSpace& sp, Mat rows) {
    if (rows.cols() != sp.dim || &rows.field() != sp.F)
        throw std::invalid_argument("basis does not match the ambient space");
    std::vector<int> piv = rows.rref();
    Mat trimmed(*sp.F, static_cast<int>(piv.size()), sp.dim);
    for (int i = 0; i < trimmed.rows(); ++i)
        for (int j = 0; j < sp.dim; ++j) trimmed.set(i, j, rows.at(i, j));
    return Subspace{&sp, std::move(trimmed)};
}

Subspace full_subspace(const ClassicalSpace& sp) {
    return Subspace{&sp, Mat::identity(*sp.F, sp.dim)};
}

Subspace zero_subspace(const ClassicalSpace& sp) { return Subspace{&sp, Mat(*sp.F, 0, sp.dim)}; }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.space != b.space) throw std::invalid_argument("subspaces of different spaces");
    return make_subspace(*a.space, a.basis.stacked(b.basis));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.space != b.space) throw std::invalid_argument("subspaces of different spaces");
    // left kernel of [A; B]: rows (u | v) with u A + v B = 0; then x = u A
    Mat stacked = a.basis.stacked(b.basis);
    Mat lk = stacked.transpose().kernel();
    Mat prod(*a.space->F, lk.rows(), a.space->dim);
    const Field& f = *a.space->F;
    for (int r = 0; r < lk.rows(); ++r)
        for (int c = 0; c < a.space->dim; ++c) {
            int s = 0;
            for (int i = 0; i < a.basis.rows(); ++i)
                s = f.add(s, f.mul(lk.at(r, i), a.basis.at(i, c)));
            prod.set(r, c, s);
        }
    return make_subspace(*a.space, std::move(prod));
}

Subspace perp(const Subspace& u) {
    const ClassicalSpace& sp = *u.space;
    if (sp.kind == FormKind::Linear) throw std::domain_error("perp needs a form");
    Mat c = u.basis.mul(sp.gram);  // k x dim; condition: c . w^T = 0 (w conjugated if hermitian)
    Mat ker = c.kernel();
    if (sp.kind == FormKind::Hermitian) {
        const Field& f = *sp.F;
        for (int i = 0; i < ker.rows(); ++i)
            for (int j = 0; j < ker.cols(); ++j) ker.set(i, j, f.conj(ker.at(i, j)));
        ker.rref();
    }
    return Subspace{&sp, std::move(ker)};
}

Subspace bilinear_radical(const Subspace& u) { return intersect(u, perp(u)); }

Subspace quadratic_radical(const Subspace& u) {
    const ClassicalSpace& sp = *u.space;
    if (sp.kind != FormKind::Quadratic)
        throw std::domain_error("quadratic radical needs a quadratic space");
    Subspace brad = bilinear_radical(u);
    if (sp.q % 2 == 1) return brad;  // Q vanishes on BRad automatically
    // char 2: Q is additive and semilinear on BRad; its kernel has
    // codimension <= 1 there
    const Field& f = *sp.F;
    int r = brad.dim();
    std::vector<int> qv(r);
    int special = -1;
    for (int i = 0; i < r; ++i) {
        qv[i] = sp.quad_val(brad.basis.row(i));
        if (qv[i] != 0 && special < 0) special = i;
    }
    if (special < 0) return brad;
    Mat rows(f, r - 1, sp.dim);
    int out = 0;
    for (int i = 0; i < r; ++i) {
        if (i == special) continue;
        // Q(b_i - c b_s) = Q(b_i) + c^2 Q(b_s) = 0 with c = sqrt(Q(b_i)/Q(b_s))
        int c = f.sqrt_elem(f.div(qv[i], qv[special]));
        for (int j = 0; j < sp.dim; ++j)
            rows.set(out, j,
                     f.sub(brad.basis.at(i, j), f.mul(c, brad.basis.at(special, j))));
        ++out;
    }
    return make_subspace(sp, std::move(rows));
}

Mat restricted_gram(const ClassicalSpace& sp, const Mat& basis) {
    int k = basis.rows();
    Mat b(*sp.F, k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) b.set(i, j, sp.bil(basis.row(i), basis.row(j)));
    return b;
}

Mat restricted_quad(const ClassicalSpace& sp, const Mat& basis) {
    if (sp.kind != FormKind::Quadratic)
        throw std::domain_error("restricted_quad needs a quadratic space");
    int k = basis.rows();
    Mat c(*sp.F, k, k);
    for (int i = 0; i < k; ++i) {
        c.set(i, i, sp.quad_val(basis.row(i)));
        for (int j = i + 1; j < k; ++j) c.set(i, j, sp.bil(basis.row(i), basis.row(j)));
    }
    return c;
}

bool is_nondegenerate(const Subspace& u) {
    const ClassicalSpace& sp = *u.space;
    Mat g = restricted_gram(sp, u.basis);
    int k = u.basis.rows();
    if (g.rank() == k) return true;
    if (sp.kind != FormKind::Quadratic || sp.q % 2 == 1) return false;
    return quadratic_radical(u).dim() == 0;
}

bool is_totally_singular(const Subspace& u) {
    const ClassicalSpace& sp = *u.space;
    int k = u.basis.rows();
    for (int i = 0; i < k; ++i) {
        if (sp.kind == FormKind::Quadratic && sp.quad_val(u.basis.row(i)) != 0) return false;
        if (sp.kind == FormKind::Hermitian && sp.bil(u.basis.row(i), u.basis.row(i)) != 0)
            return false;
        for (int j = i + 1; j < k; ++j)
            if (sp.bil(u.basis.row(i), u.basis.row(j)) != 0) return false;
    }
    return true;
}

Sign delta_invariant(const ClassicalSpace& sp, const Mat& basis) {
    if (sp.kind != FormKind::Quadratic || sp.q % 2 == 0)
        throw std::domain_error("discriminant label needs a quadratic space with q odd");
    int d = restricted_gram(sp, basis).det();
    if (d == 0) throw std::domain_error("discriminant of a degenerate restriction");
    return sp.F->chi(d);
}

namespace {

// Iterate canonical representatives of the 1-subspaces of the coefficient
// space F^k: leading coordinate 1, earlier coordinates 0. Calls fn(c).
template <typename Fn>
void for_each_point_rep(const Field& f, int k, Fn&& fn) {
    std::vector<uint16_t> c(k, 0);
    for (int lead = k - 1; lead >= 0; --lead) {
        for (int i = 0; i < k; ++i) c[i] = 0;
        c[lead] = 1;
        while (true) {
            fn(c.data());
            int pos = lead + 1;
            while (pos < k) {
                if (c[pos] + 1 < f.order()) {
                    ++c[pos];
                    break;
                }
                c[pos] = 0;
                ++pos;
            }
            if (pos >= k) break;
        }
    }
}

int eval_quad_coeffs(const Field& f, const Mat& qc, const uint16_t* c) {
    int k = qc.rows(), total = 0;
    for (int i = 0; i < k; ++i) {
        if (c[i] == 0) continue;
        for (int j = i; j < k; ++j) {
            if (c[j] == 0 || qc.at(i, j) == 0) continue;
            total = f.add(total, f.mul(qc.at(i, j), f.mul(c[i], c[j])));
        }
    }
    return total;
}

int eval_gram_norm(const Field& f, const Mat& g, const uint16_t* c, bool herm) {
    int k = g.rows(), total = 0;
    for (int i = 0; i < k; ++i) {
        if (c[i] == 0) continue;
        for (int j = 0; j < k; ++j) {
            if (c[j] == 0 || g.at(i, j) == 0) continue;
            int cj = herm ? f.conj(c[j]) : c[j];
            total = f.add(total, f.mul(c[i], f.mul(g.at(i, j), cj)));
        }
    }
    return total;
}

long long point_count_of(const Field& f, int k) {
    long long total = 0, t = 1;
    for (int i = 0; i < k; ++i) {
        total += t;
        t *= f.order();
        if (total > (1LL << 40)) throw std::runtime_error("point iteration too large");
    }
    return total;
}

}  // namespace

long long count_singular_points(const ClassicalSpace& sp, const Mat& basis) {
    const Field& f = *sp.F;
    int k = basis.rows();
    if (sp.kind == FormKind::Alternating) return point_count_of(f, k);
    long long n = 0;
    if (sp.kind == FormKind::Quadratic) {
        Mat qc = restricted_quad(sp, basis);
        for_each_point_rep(f, k, [&](const uint16_t* c) {
            if (eval_quad_coeffs(f, qc, c) == 0) ++n;
        });
    } else {
        Mat g = restricted_gram(sp, basis);
        bool herm = sp.kind == FormKind::Hermitian;
        for_each_point_rep(f, k, [&](const uint16_t* c) {
            if (eval_gram_norm(f, g, c, herm) == 0) ++n;
        });
    }
    return n;
}

long long count_point_class(const ClassicalSpace& sp, const Mat& basis, bool singular,
                            Sign alpha) {
    const Field& f = *sp.F;
    int k = basis.rows();
    if (singular || alpha == 0) {
        long long s = count_singular_points(sp, basis);
        return singular ? s : point_count_of(f, k) - s;
    }
    if (sp.kind != FormKind::Quadratic || sp.q % 2 == 0)
        throw std::invalid_argument("point classes split only for quadratic spaces with q odd");
    if (k < 2) throw std::invalid_argument("point classes need parent dimension >= 2");
    Mat qc = restricted_quad(sp, basis);
    Mat g = restricted_gram(sp, basis);
    long long n = 0;
    long half = (sp.q % 4 == 3) ? 1 : 0;  // parity of (q-1)/2
    if (k % 2 == 0) {
        // class label = chi(beta(v,v)) = chi(2 Q(v))
        for_each_point_rep(f, k, [&](const uint16_t* c) {
            int norm = eval_gram_norm(f, g, c, false);
            if (norm != 0 && f.chi(norm) == alpha) ++n;
        });
    } else {
        // label = type of (v^perp meet U): delta multiplicativity inside U
        int du = g.det();
        if (du == 0) throw std::invalid_argument("point classes need a nondegenerate parent");
        int delta_u = f.chi(du);
        int kp = (k - 1) / 2;
        int twist = (static_cast<long long>(kp) * half) % 2 == 0 ? 1 : -1;
        for_each_point_rep(f, k, [&](const uint16_t* c) {
            int norm = eval_gram_norm(f, g, c, false);
            if (norm == 0) return;
            int tau_w = delta_u * f.chi(norm) * twist;
            if (tau_w == alpha) ++n;
        });
    }
    return n;
}

Sign intrinsic_type_by_counting(const ClassicalSpace& sp, const Mat& basis) {
    if (sp.kind != FormKind::Quadratic)
        throw std::domain_error("intrinsic type is defined for quadratic spaces");
    int k = basis.rows();
    if (k < 1) throw std::invalid_argument("type of the zero space is undefined");
    long long observed = count_singular_points(sp, basis);
    long q = sp.q;
    if (k % 2 == 0) {
        BigInt plus = counting::orth_point_counts(k, 1, q).p1;
        BigInt minus = counting::orth_point_counts(k, -1, q).p1;
        if (plus == minus) throw std::logic_error("type counts collide");
        if (observed == plus) return 1;
        if (observed == minus) return -1;
    } else {
        if (observed == counting::orth_point_counts(k, 0, q).p1) return 0;
    }
    throw std::domain_error("singular point count matches no type: degenerate restriction");
}

SubspaceClass classify(const Subspace& u) { return classify_basis(*u.space, u.basis); }

SubspaceClass classify_basis(const ClassicalSpace& sp, const Mat& basis) {
    SubspaceClass out;
    int k = basis.rows();
    if (k == 0) return out;
    switch (sp.kind) {
        case FormKind::Linear:
            throw std::domain_error("linear spaces carry no classification");
        case FormKind::Alternating:
        case FormKind::Hermitian: {
            Mat g = restricted_gram(sp, basis);
            out.nondeg = g.rank() == k;
            return out;
        }
        case FormKind::Quadratic:
            break;
    }
    const Field& f = *sp.F;
    if (sp.q % 2 == 1) {
        Mat g = restricted_gram(sp, basis);
        int d = g.det();
        out.nondeg = d != 0;
        if (!out.nondeg) return out;
        out.delta = f.chi(d);
        long half_parity = ((sp.q - 1) / 2) % 2;
        auto tau_from_delta = [&](Sign delta, int half_dim) {
            return (static_cast<long long>(half_dim) * half_parity) % 2 == 0 ? delta : -delta;
        };
        if (k % 2 == 0) {
            out.tau = tau_from_delta(out.delta, k / 2);
            out.sigma = out.tau;
        } else {
            out.tau = 0;
            int kp = sp.dim - k;
            if (kp == 0) {
                out.sigma = 1;  // convention for U = V
            } else if (kp % 2 == 0) {
                if (sp.delta == 0)
                    throw std::domain_error("ambient discriminant unavailable for sigma");
                Sign delta_perp = sp.delta * out.delta;
                out.sigma = tau_from_delta(delta_perp, kp / 2);
            } else {
                out.sigma = out.delta;
            }
        }
        return out;
    }
    // q even
    Mat g = restricted_gram(sp, basis);
    int r = g.rank();
    if (r == k) {
        out.nondeg = true;
    } else if (k % 2 == 1) {
        Subspace tmp{&sp, basis};
        out.nondeg = quadratic_radical(tmp).dim() == 0;
    } else {
        out.nondeg = false;
    }
    if (!out.nondeg) return out;
    if (k % 2 == 0) {
        out.tau = intrinsic_type_by_counting(sp, basis);
        out.sigma = out.tau;
    }
    return out;
}

PointClass point_class(const Subspace& parent, const uint16_t* v) {
    const ClassicalSpace& sp = *parent.space;
    if (!parent.contains_vector(v)) throw std::invalid_argument("vector outside the parent space");
    bool zero = true;
    for (int i = 0; i < sp.dim; ++i)
        if (v[i] != 0) zero = false;
    if (zero) throw std::invalid_argument("the zero vector spans no point");
    PointClass out;
    int norm = sp.point_norm(v);
    out.singular = norm == 0;
    if (out.singular || sp.kind != FormKind::Quadratic || sp.q % 2 == 0) return out;
    int k = parent.dim();
    if (k < 2) return out;
    const Field& f = *sp.F;
    int bnorm = f.add(norm, norm);  // beta(v,v) = 2 Q(v)
    long half_parity = ((sp.q - 1) / 2) % 2;
    if (k % 2 == 0) {
        out.alpha = f.chi(bnorm);
    } else {
        Mat g = restricted_gram(sp, parent.basis);
        int du = g.det();
        if (du == 0) throw std::invalid_argument("point classes need a nondegenerate parent");
        int kp = (k - 1) / 2;
        int twist = (static_cast<long long>(kp) * half_parity) % 2 == 0 ? 1 : -1;
        out.alpha = f.chi(du) * f.chi(bnorm) * twist;
    }
    return out;
}

}  // namespace formspan
