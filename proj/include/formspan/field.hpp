#pragma once

#include <cstdint>
#include <vector>

namespace formspan {

// Finite field GF(p^k) with p^k <= 256.
//
// Elements are plain ints in [0, order): the index encodes the polynomial
// c0 + c1*x + ... + c_{k-1}*x^{k-1} as base-p digits (c0 least significant).
// Extension fields are built from a fixed table of Conway polynomials, so a
// given order always yields the same arithmetic. Instances are interned and
// immutable; hot loops pass `const Field&` and raw element ints, the checked
// FieldElem wrapper below is for API boundaries.
class Field {
public:
    static const Field& get(int p, int k);
    static const Field& of_order(int order);

    int characteristic() const { return p_; }
    int degree() const { return k_; }
    int order() const { return order_; }

    // Monic modulus coefficients c0..ck (ck = 1); {p} itself for k = 1.
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[a * order_ + b]; }
    int sub(int a, int b) const { return add_[a * order_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * order_ + b]; }
    int inv(int a) const;               // a != 0
    int div(int a, int b) const;        // b != 0
    int pow(int a, long long e) const;  // 0^0 = 1; negative e inverts

    // Image of a under x -> x^p (Frobenius).
    int frob(int a) const { return frob_[a]; }

    // The involutory automorphism a -> a^(p^(k/2)); requires even k.
    int conj(int a) const;
    bool has_conj() const { return k_ % 2 == 0; }

    // Square root; exists for every element iff char 2, otherwise only for
    // squares. Throws if a is a non-square.
    int sqrt_elem(int a) const;

    // Quadratic character: 0 for a = 0, +1 for nonzero squares, -1 otherwise.
    // Odd characteristic only (computed as a^((order-1)/2)).
    int chi(int a) const;
    bool is_square(int a) const;  // char 2: everything is a square

    // Multiplicative generator used for the log tables.
    int generator() const { return gen_; }

private:
    Field(int p, int k);

    int p_, k_, order_, gen_;
    std::vector<int> modulus_;
    std::vector<uint16_t> add_, mul_;
    std::vector<uint16_t> neg_, inv_, frob_, conj_;
    std::vector<int> log_;
    std::vector<uint16_t> exp_;
};

// Value type tying an element to its field; arithmetic between mismatched
// fields throws std::invalid_argument.
class FieldElem {
public:
    FieldElem(const Field& f, int v);

    int value() const { return v_; }
    const Field& field() const { return *f_; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem conj() const;
    FieldElem pow(long long e) const;
    bool is_square() const { return f_->is_square(v_); }

private:
    const Field* f_;
    int v_;
};

}  // namespace formspan
