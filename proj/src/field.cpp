#include "formspan/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace formspan {

namespace {

// Conway polynomials for every prime power <= 256 with k >= 2, low-degree
// coefficients first, monic leading 1 omitted. Each entry has been verified
// irreducible with x a generator of the multiplicative group.
const std::map<std::pair<int, int>, std::vector<int>> kConway = {
    {{2, 2}, {1, 1}},
    {{2, 3}, {1, 1, 0}},
    {{2, 4}, {1, 1, 0, 0}},
    {{2, 5}, {1, 0, 1, 0, 0}},
    {{2, 6}, {1, 1, 0, 1, 1, 0}},
    {{2, 7}, {1, 1, 0, 0, 0, 0, 0}},
    {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0}},
    {{3, 2}, {2, 2}},
    {{3, 3}, {1, 2, 0}},
    {{3, 4}, {2, 0, 0, 2}},
    {{3, 5}, {1, 2, 0, 0, 0}},
    {{5, 2}, {2, 4}},
    {{5, 3}, {3, 3, 0}},
    {{7, 2}, {3, 6}},
    {{11, 2}, {2, 7}},
    {{13, 2}, {2, 12}},
};

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// digits of idx in base p, length k
void to_digits(int idx, int p, int k, int* d) {
    for (int i = 0; i < k; ++i) {
        d[i] = idx % p;
        idx /= p;
    }
}

int from_digits(const int* d, int p, int k) {
    int idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + d[i];
    return idx;
}

}  // namespace

Field::Field(int p, int k) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (k < 1) throw std::invalid_argument("field degree must be >= 1");
    long long ord = 1;
    for (int i = 0; i < k; ++i) ord *= p;
    if (ord > 256) throw std::invalid_argument("field order > 256 unsupported");
    order_ = static_cast<int>(ord);

    if (k == 1) {
        modulus_ = {p};
    } else {
        auto it = kConway.find({p, k});
        if (it == kConway.end())
            throw std::invalid_argument("no modulus tabulated for GF(" + std::to_string(ord) + ")");
        modulus_ = it->second;
        modulus_.push_back(1);
    }

    // addition: digitwise mod p
    add_.resize(static_cast<size_t>(order_) * order_);
    neg_.resize(order_);
    int da[8], db[8], dc[8];
    for (int a = 0; a < order_; ++a) {
        to_digits(a, p_, k_, da);
        for (int b = 0; b < order_; ++b) {
            to_digits(b, p_, k_, db);
            for (int i = 0; i < k_; ++i) dc[i] = (da[i] + db[i]) % p_;
            add_[static_cast<size_t>(a) * order_ + b] = static_cast<uint16_t>(from_digits(dc, p_, k_));
        }
        for (int i = 0; i < k_; ++i) dc[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<uint16_t>(from_digits(dc, p_, k_));
    }

    // multiplication: polynomial product reduced mod the modulus
    auto poly_mul = [&](int a, int b) {
        int xa[8], xb[8];
        to_digits(a, p_, k_, xa);
        to_digits(b, p_, k_, xb);
        int prod[16] = {0};
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + xa[i] * xb[j]) % p_;
        for (int d = 2 * k_ - 2; d >= k_; --d) {
            int c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            // x^d = x^{d-k} * (-(c0 + ... + c_{k-1} x^{k-1}))
            for (int i = 0; i < k_; ++i)
                prod[d - k_ + i] = (prod[d - k_ + i] + c * (p_ - modulus_[i])) % p_;
        }
        return from_digits(prod, p_, k_);
    };

    mul_.resize(static_cast<size_t>(order_) * order_);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            mul_[static_cast<size_t>(a) * order_ + b] = static_cast<uint16_t>(poly_mul(a, b));

    // generator: x itself for extensions (Conway polynomials guarantee it);
    // smallest primitive root for prime fields.
    auto mult_order_full = [&](int g) {
        int e = g, n = 1;
        while (e != 1) {
            e = mul(e, g);
            ++n;
            if (n > order_) return false;
        }
        return n == order_ - 1;
    };
    gen_ = 0;
    if (k_ == 1) {
        for (int g = 2; g < order_; ++g)
            if (mult_order_full(g)) {
                gen_ = g;
                break;
            }
        if (order_ == 2) gen_ = 1;
    } else {
        gen_ = p_;  // the element "x"
        if (!mult_order_full(gen_))
            throw std::logic_error("tabulated modulus is not primitive");
    }
    if (gen_ == 0) throw std::logic_error("no generator found");

    exp_.resize(order_ - 1);
    log_.assign(order_, -1);
    int e = 1;
    for (int i = 0; i < order_ - 1; ++i) {
        exp_[i] = static_cast<uint16_t>(e);
        if (log_[e] != -1) throw std::logic_error("generator has small order");
        log_[e] = i;
        e = mul(e, gen_);
    }

    inv_.resize(order_);
    inv_[0] = 0;  // guarded by inv()
    for (int a = 1; a < order_; ++a)
        inv_[a] = exp_[(order_ - 1 - log_[a]) % (order_ - 1)];

    frob_.resize(order_);
    conj_.resize(order_);
    for (int a = 0; a < order_; ++a) {
        int f = a;
        for (int i = 1; i < p_; ++i) f = mul(f, a);  // a^p
        frob_[a] = static_cast<uint16_t>(f);
    }
    for (int a = 0; a < order_; ++a) {
        int c = a;
        for (int i = 0; i < k_ / 2; ++i) c = frob_[c];  // a^(p^(k/2))
        conj_[a] = static_cast<uint16_t>(c);
    }
}

const Field& Field::get(int p, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) slot.reset(new Field(p, k));
    return *slot;
}

const Field& Field::of_order(int order) {
    if (order < 2 || order > 256) throw std::invalid_argument("field order out of range");
    int p = 0;
    for (int d = 2; d <= order; ++d)
        if (order % d == 0) {
            p = d;
            break;
        }
    int k = 0, o = order;
    while (o > 1) {
        if (o % p != 0) throw std::invalid_argument("field order must be a prime power");
        o /= p;
        ++k;
    }
    return get(p, k);
}

int Field::inv(int a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(" + std::to_string(order_) + ")");
    return inv_[a];
}

int Field::div(int a, int b) const { return mul(a, inv(b)); }

int Field::pow(int a, long long e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("0 has no inverse");
        return e == 0 ? 1 : 0;
    }
    long long m = e % (order_ - 1);
    if (m < 0) m += order_ - 1;
    return exp_[(log_[a] * m) % (order_ - 1)];
}

int Field::conj(int a) const {
    if (!has_conj()) throw std::domain_error("conjugation needs a quadratic extension");
    return conj_[a];
}

int Field::sqrt_elem(int a) const {
    if (a == 0) return 0;
    if (p_ == 2) {
        // Frobenius is bijective; invert it by iterating k-1 more times.
        int r = a;
        for (int i = 0; i < k_ - 1; ++i) r = frob_[r];
        return r;
    }
    if (log_[a] % 2 != 0) throw std::domain_error("element is not a square");
    return exp_[log_[a] / 2];
}

int Field::chi(int a) const {
    if (p_ == 2) throw std::domain_error("quadratic character needs odd characteristic");
    if (a == 0) return 0;
    return pow(a, (order_ - 1) / 2) == 1 ? 1 : -1;
}

bool Field::is_square(int a) const {
    if (p_ == 2 || a == 0) return true;
    return chi(a) == 1;
}

FieldElem::FieldElem(const Field& f, int v) : f_(&f), v_(v) {
    if (v < 0 || v >= f.order()) throw std::invalid_argument("element index out of range");
}

namespace {
const Field& same_field(const FieldElem& a, const FieldElem& b) {
    if (&a.field() != &b.field()) throw std::invalid_argument("elements from different fields");
    return a.field();
}
}  // namespace

FieldElem FieldElem::operator+(const FieldElem& o) const {
    const Field& f = same_field(*this, o);
    return FieldElem(f, f.add(v_, o.v_));
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
    const Field& f = same_field(*this, o);
    return FieldElem(f, f.sub(v_, o.v_));
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
    const Field& f = same_field(*this, o);
    return FieldElem(f, f.mul(v_, o.v_));
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
    const Field& f = same_field(*this, o);
    return FieldElem(f, f.div(v_, o.v_));
}
FieldElem FieldElem::operator-() const { return FieldElem(*f_, f_->neg(v_)); }
bool FieldElem::operator==(const FieldElem& o) const {
    same_field(*this, o);
    return v_ == o.v_;
}
FieldElem FieldElem::conj() const { return FieldElem(*f_, f_->conj(v_)); }
FieldElem FieldElem::pow(long long e) const { return FieldElem(*f_, f_->pow(v_, e)); }

}  // namespace formspan
