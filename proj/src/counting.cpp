#include "formspan/counting.hpp"

#include <stdexcept>

namespace formspan::counting {

namespace {

BigInt rat_to_int(const Rat& r, const char* what) {
    if (boost::multiprecision::denominator(r) != 1)
        throw std::logic_error(std::string(what) + ": expected an integer value");
    return boost::multiprecision::numerator(r);
}

// (-q)^{-n} as an exact rational
Rat neg_qpow(long q, int n) {
    Rat r = qpow(q, -n);
    return (n % 2 != 0) ? -r : r;
}

}  // namespace

BigInt gaussian_binomial(int n, int k, long order) {
    if (k < 0 || n < 0) throw std::invalid_argument("gaussian_binomial: negative argument");
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= ipow(BigInt(order), static_cast<unsigned>(n - i)) - 1;
        den *= ipow(BigInt(order), static_cast<unsigned>(i + 1)) - 1;
    }
    BigInt res = num / den;
    if (res * den != num) throw std::logic_error("gaussian_binomial: non-exact division");
    return res;
}

Rat gl_span_proportion(int n, int nprime, long q) {
    if (n < 1 || nprime < 1 || q < 2) throw std::invalid_argument("gl_span_proportion: bad context");
    Rat r = 1;
    for (int i = 1; i <= nprime; ++i) r *= (1 - qpow(q, -i)) / (1 - qpow(q, -n - i));
    return r;
}

Rat theta(int n, long q) { return 1 - neg_qpow(q, n); }

Rat zeta(int n, long q) {
    if (n < 1) throw std::invalid_argument("zeta needs n >= 1");
    return theta(n - 1, q) * theta(n, q);
}

UnitaryPointCounts unitary_point_counts(int n, long q) {
    if (n < 1 || q < 2) throw std::invalid_argument("unitary_point_counts: bad context");
    Rat n1 = qpow(q, 2 * n - 2) * theta(n, q) / (1 + qpow(q, -1));
    Rat p1 = qpow(q, 2 * n - 3) * zeta(n, q) / (1 - qpow(q, -2));
    return {rat_to_int(p1, "unitary p1"), rat_to_int(n1, "unitary n1")};
}

BigInt symplectic_p1(int n, long q) {
    return (ipow(BigInt(q), static_cast<unsigned>(n)) - 1) / (q - 1);
}

BigInt symplectic_pk(int n, int k, long q) {
    if (n < 0 || n % 2 != 0) throw std::invalid_argument("symplectic dimension must be even");
    if (k < 0) throw std::invalid_argument("symplectic_pk: negative k");
    if (k == 0) return 1;
    if (2 * k > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= ipow(BigInt(q), static_cast<unsigned>(n - 2 * i)) - 1;
        den *= ipow(BigInt(q), static_cast<unsigned>(k - i)) - 1;
    }
    BigInt res = num / den;
    if (res * den != num) throw std::logic_error("symplectic_pk: non-exact division");
    return res;
}

BigInt symplectic_rk(int n, int k, long q) {
    return gaussian_binomial(n, k, q) - symplectic_pk(n, k, q);
}

BigInt symplectic_r2_closed(int n, long q) {
    // orbit-stabilizer count q^{2(n-1)}(1-q^{-n})/(q^2-1), i.e.
    // 2^{2(n-1)}(1-2^{-n})/3 at q = 2
    Rat r = qpow(q, 2 * (n - 1)) * (1 - qpow(q, -n)) / (q * q - 1);
    return rat_to_int(r, "symplectic r2");
}

BigInt symplectic_r3_closed_q2(int n) {
    Rat r = qpow(2, 3 * (n - 2)) * (1 - qpow(2, -n)) * (1 - qpow(2, -n + 2)) / 3;
    return rat_to_int(r, "symplectic r3 (q=2)");
}

Rat orth_gamma(int n, Sign tau, long q) {
    if (n < 1) throw std::invalid_argument("orth_gamma: n >= 1 required");
    if (n % 2 == 0) {
        if (tau != 1 && tau != -1) throw std::invalid_argument("even dimension needs tau = +1/-1");
        Rat qm = qpow(q, -n / 2);
        return 1 - tau * qm + tau * qm * q - qpow(q, -n + 1);
    }
    if (tau != 0) throw std::invalid_argument("odd dimension is parabolic (tau = 0)");
    return 1 - qpow(q, -n + 1);
}

OrthPointCounts orth_point_counts(int n, Sign tau, long q) {
    Rat p1 = qpow(q, n - 2) * orth_gamma(n, tau, q) / (1 - qpow(q, -1));
    Rat n1 = qpow(q, n - 1) * (1 - tau * qpow(q, -(n / 2)));
    return {rat_to_int(p1, "orth p1"), rat_to_int(n1, "orth n1")};
}

BigInt orth_n1_alpha(int n, Sign tau, Sign alpha, long q) {
    if (q % 2 == 0) throw std::invalid_argument("nonsingular point classes need q odd");
    if (alpha != 1 && alpha != -1) throw std::invalid_argument("alpha must be +1/-1");
    int m = n / 2;
    Rat r;
    if (n % 2 == 0) {
        r = qpow(q, n - 1) * (1 - tau * qpow(q, -m)) / 2;
    } else {
        if (tau != 0) throw std::invalid_argument("odd dimension is parabolic (tau = 0)");
        r = qpow(q, n - 1) * (1 + alpha * qpow(q, -m)) / 2;
    }
    return rat_to_int(r, "orth n1 alpha");
}

Sign orbit_relabel_sign(int dim_u, int dim_perp, long q, Sign delta_v, Sign delta_u,
                        Sign delta_perp) {
    if (q % 2 == 0) throw std::invalid_argument("orbit relabel signs need q odd");
    int m = dim_u / 2, mp = dim_perp / 2;
    auto pm = [&](long long e) { return e % 2 == 0 ? 1 : -1; };
    bool ue = dim_u % 2 == 0, pe = dim_perp % 2 == 0;
    long half = (q - 1) / 2;
    if (ue && pe) return 1;
    if (ue && !pe) return delta_v * pm(static_cast<long long>(m + mp) * half);
    if (!ue && pe) return delta_perp * pm(static_cast<long long>(mp) * half);
    return delta_u * pm(static_cast<long long>(m) * half);
}

}  // namespace formspan::counting
