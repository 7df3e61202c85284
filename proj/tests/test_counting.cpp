#include <vector>

#include "doctest.h"
#include "formspan/counting.hpp"
#include "formspan/geometry.hpp"
#include "formspan/matrix.hpp"
#include "formspan/rational.hpp"

using namespace formspan;
using namespace formspan::counting;

TEST_SUITE("counting") {

TEST_CASE("gaussian binomial fixtures") {
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(4, 3, 2) == 15);
    CHECK(gaussian_binomial(4, 1, 2) == 15);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(8, 4, 2) == 200787);
    CHECK(gaussian_binomial(5, 0, 7) == 1);
    CHECK(gaussian_binomial(5, 5, 7) == 1);
    CHECK(gaussian_binomial(3, 4, 2) == 0);
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= n; ++k)
            for (long q : {2L, 3L, 4L})
                CHECK(gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q));
}

TEST_CASE("trivial-meet proportion without a form") {
    CHECK(gl_span_proportion(1, 1, 2) == Rat(2, 3));
    CHECK(gl_span_proportion(2, 2, 2) == Rat(16, 35));
    CHECK(gl_span_proportion(1, 2, 2) == gl_span_proportion(2, 1, 2));  // symmetric
    for (long q : {2L, 3L, 5L, 16L})
        for (int n = 1; n <= 4; ++n)
            for (int np = 1; np <= 4; ++np)
                CHECK(gl_span_proportion(n, np, q) > 1 - Rat(3, 2 * q));
}

TEST_CASE("hermitian series") {
    CHECK(theta(1, 2) == Rat(3, 2));
    CHECK(theta(2, 2) == Rat(3, 4));
    CHECK(theta(0, 5) == 0);
    CHECK(zeta(1, 7) == 0);  // contains theta_0
    CHECK(zeta(2, 2) == Rat(9, 8));
    CHECK(zeta(3, 2) == theta(2, 2) * theta(3, 2));
}

TEST_CASE("hermitian point counts") {
    auto c1 = unitary_point_counts(1, 2);
    CHECK(c1.p1 == 0);
    CHECK(c1.n1 == 1);
    auto c2 = unitary_point_counts(2, 2);
    CHECK(c2.p1 == 3);
    CHECK(c2.n1 == 2);
    auto c3 = unitary_point_counts(3, 2);
    CHECK(c3.p1 == 9);
    CHECK(c3.n1 == 12);
    CHECK(c3.p1 + c3.n1 == 21);  // (4^3 - 1) / (4 - 1)
}

TEST_CASE("hermitian point counts match direct enumeration") {
    for (long q : {2L, 3L}) {
        for (int n = 1; n <= 3; ++n) {
            ClassicalSpace sp = standard_space(FormKind::Hermitian, n, static_cast<int>(q));
            BigInt iso = count_singular_points(sp, Mat::identity(*sp.F, n));
            BigInt total = gaussian_binomial(n, 1, q * q);
            auto counts = unitary_point_counts(n, q);
            CHECK(counts.p1 == iso);
            CHECK(counts.n1 == total - iso);
        }
    }
}

TEST_CASE("symplectic subspace counts") {
    CHECK(symplectic_p1(4, 2) == 15);
    CHECK(symplectic_p1(2, 3) == 4);
    CHECK(symplectic_pk(4, 2, 2) == 15);
    CHECK(symplectic_rk(4, 2, 2) == 20);
    CHECK(symplectic_rk(4, 3, 2) == 15);  // no totally isotropic 3-subspaces in dim 4
    CHECK(symplectic_r2_closed(4, 2) == 20);
    CHECK(symplectic_r2_closed(8, 2) == 5440);
    CHECK(symplectic_r3_closed_q2(4) == 15);

    for (int n : {2, 4, 6, 8})
        for (long q : {2L, 3L, 5L}) {
            CHECK(symplectic_pk(n, 1, q) == symplectic_p1(n, q));
            CHECK(symplectic_r2_closed(n, q) == symplectic_rk(n, 2, q));
            for (int k = 1; k <= n / 2; ++k)
                CHECK(symplectic_pk(n, k, q) + symplectic_rk(n, k, q) ==
                      gaussian_binomial(n, k, q));
        }
    for (int n : {4, 6, 8, 10}) CHECK(symplectic_r3_closed_q2(n) == symplectic_rk(n, 3, 2));
}

TEST_CASE("orthogonal gamma fixtures") {
    CHECK(orth_gamma(2, +1, 3) == Rat(4, 3));
    CHECK(orth_gamma(2, -1, 3) == 0);
    CHECK(orth_gamma(2, -1, 7) == 0);  // gamma_2^- vanishes for every q
    CHECK(orth_gamma(3, 0, 3) == Rat(8, 9));
    // minus quadric in dim 4 over GF(2) has 5 singular points: 8 * (5/8) / (2 - 1)
    CHECK(orth_gamma(4, -1, 2) == Rat(5, 8));
    // a nondegenerate line has no singular points at all
    CHECK(orth_gamma(1, 0, 5) == 0);
    CHECK(orth_gamma(1, 0, 2) == 0);
}

TEST_CASE("orthogonal point counts") {
    auto p3 = orth_point_counts(3, 0, 3);
    CHECK(p3.p1 == 4);
    CHECK(p3.n1 == 9);
    CHECK(orth_n1_alpha(3, 0, +1, 3) == 6);
    CHECK(orth_n1_alpha(3, 0, -1, 3) == 3);
    auto m2 = orth_point_counts(2, -1, 3);
    CHECK(m2.p1 == 0);
    CHECK(m2.n1 == 4);

    for (int n = 1; n <= 5; ++n)
        for (long q : {3L, 5L})
            for (Sign tau : {+1, -1, 0}) {
                if ((n % 2 == 0) == (tau == 0)) continue;  // tau matches dim parity
                auto c = orth_point_counts(n, tau, q);
                CHECK(c.p1 + c.n1 == gaussian_binomial(n, 1, q));
                CHECK(orth_n1_alpha(n, tau, +1, q) + orth_n1_alpha(n, tau, -1, q) == c.n1);
            }
}

TEST_CASE("orthogonal point counts match direct enumeration") {
    for (int n = 1; n <= 5; ++n) {
        for (long q : {2L, 3L, 4L, 5L}) {
            if (n % 2 == 1 && q % 2 == 0) continue;
            for (Sign tau : {+1, -1, 0}) {
                if ((n % 2 == 0) == (tau == 0)) continue;
                ClassicalSpace sp =
                    standard_space(FormKind::Quadratic, n, static_cast<int>(q), tau);
                Mat id = Mat::identity(*sp.F, n);
                auto c = orth_point_counts(n, tau, q);
                CHECK(c.p1 == count_singular_points(sp, id));
                // the alpha split needs q odd and an ambient of dimension >= 2
                if (q % 2 == 1 && n >= 2) {
                    CHECK(orth_n1_alpha(n, tau, +1, q) == count_point_class(sp, id, false, +1));
                    CHECK(orth_n1_alpha(n, tau, -1, q) == count_point_class(sp, id, false, -1));
                }
            }
        }
    }
}

TEST_CASE("relabel sign matches observed point-class restriction") {
    // V parabolic of dimension 5 over GF(3); every nondegenerate 2-subspace U
    // should restrict ambient nonsingular point classes by the tabulated sign.
    ClassicalSpace sp = standard_space(FormKind::Quadratic, 5, 3, 0);
    Subspace whole = full_subspace(sp);
    SubspaceClass vcls = classify(whole);
    const Field& f = *sp.F;

    // walk 2-subspaces through pairs of coordinate-ish vectors (a fixed probe
    // list keeps this cheap while still hitting both types)
    std::vector<std::vector<uint16_t>> probes = {
        {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1},
        {1, 1, 0, 0, 0}, {1, 0, 1, 0, 2}, {0, 1, 2, 1, 0}, {1, 2, 0, 0, 1}, {0, 0, 1, 1, 1},
    };
    int tested = 0;
    for (size_t i = 0; i < probes.size(); ++i) {
        for (size_t j = i + 1; j < probes.size(); ++j) {
            Mat m(f, 2, 5);
            for (int c = 0; c < 5; ++c) {
                m.set(0, c, probes[i][c]);
                m.set(1, c, probes[j][c]);
            }
            m.rref();
            if (m.rank() != 2) continue;
            SubspaceClass ucls = classify_basis(sp, m);
            if (!ucls.nondeg) continue;
            Subspace u{&sp, m};
            Subspace up = perp(u);
            SubspaceClass pcls = classify(up);
            if (!pcls.nondeg) continue;
            Sign expected =
                orbit_relabel_sign(2, 3, 3, vcls.delta, ucls.delta, pcls.delta);
            // observe the relabel on an actual nonsingular point of U
            for (int a = 0; a < 3; ++a) {
                for (int b = (a == 0 ? 1 : 0); b < 3; ++b) {
                    std::vector<uint16_t> v(5);
                    for (int c = 0; c < 5; ++c)
                        v[c] = static_cast<uint16_t>(f.add(f.mul(a, m.at(0, c)), f.mul(b, m.at(1, c))));
                    PointClass amb = point_class(whole, v.data());
                    if (amb.singular) continue;
                    PointClass loc = point_class(u, v.data());
                    CHECK(amb.alpha == expected * loc.alpha);
                    ++tested;
                }
            }
        }
    }
    CHECK(tested > 20);
}

}  // TEST_SUITE
