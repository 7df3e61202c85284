#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "doctest.h"
#include "formspan/enumeration.hpp"

using namespace formspan;

namespace {

SpanContext ctx_of(FormKind kind, int n, int np, long q, Sign eps = 0, Sign s = 0, Sign sp = 0) {
    return SpanContext{kind, n, np, q, eps, s, sp};
}

}  // namespace

TEST_SUITE("enumeration") {

TEST_CASE("rref walk visits every subspace exactly once") {
    const Field& f2 = Field::get(2, 1);
    std::unordered_set<Mat, MatHash> seen;
    uint64_t visits = 0;
    for_each_rref(f2, 4, 2, [&](const Mat& m) {
        ++visits;
        CHECK(m.rank() == 2);
        Mat copy = m;
        copy.rref();
        CHECK(copy == m);  // already canonical
        seen.insert(m);
    });
    CHECK(visits == 35);
    CHECK(seen.size() == 35);

    // early stop propagates
    int count = 0;
    bool stopped = for_each_rref(f2, 4, 2, [&](const Mat&) { return ++count == 7; });
    CHECK(stopped);
    CHECK(count == 7);

    // k = 0: single empty subspace
    visits = 0;
    for_each_rref(f2, 3, 0, [&](const Mat& m) {
        ++visits;
        CHECK(m.rows() == 0);
    });
    CHECK(visits == 1);
}

TEST_CASE("subspace totals match the gaussian binomial") {
    CHECK(subspace_total(4, 2, 2) == 35);
    CHECK(subspace_total(8, 4, 2) == 200787);
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= n; ++k) {
            uint64_t visits = 0;
            for_each_rref(Field::get(3, 1), n, k, [&](const Mat&) { ++visits; });
            CHECK(BigInt(visits) == subspace_total(n, k, 3));
        }
}

TEST_CASE("context validation accepts the legal shapes") {
    CHECK_NOTHROW(validate_context(ctx_of(FormKind::Linear, 1, 1, 2)));
    CHECK_NOTHROW(validate_context(ctx_of(FormKind::Alternating, 2, 4, 3)));
    CHECK_NOTHROW(validate_context(ctx_of(FormKind::Hermitian, 1, 2, 4)));
    CHECK_NOTHROW(validate_context(ctx_of(FormKind::Quadratic, 2, 2, 3, +1, -1, +1)));
    CHECK_NOTHROW(validate_context(ctx_of(FormKind::Quadratic, 1, 2, 3, 0, +1, -1)));

    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Linear, 0, 1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Linear, 1, 1, 6)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Alternating, 1, 2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Alternating, 2, 2, 3, +1)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Hermitian, 1, 1, 32)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Quadratic, 2, 2, 3, 0, +1, +1)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Quadratic, 1, 2, 3, +1, +1, +1)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Quadratic, 2, 2, 3, +1, 0, +1)), std::invalid_argument);
    CHECK_THROWS_AS(validate_context(ctx_of(FormKind::Quadratic, 1, 2, 4, 0, +1, +1)), std::invalid_argument);
}

TEST_CASE("kind names round-trip") {
    for (FormKind k : {FormKind::Linear, FormKind::Alternating, FormKind::Hermitian, FormKind::Quadratic})
        CHECK(context_kind_from_name(context_kind_name(k)) == k);
    CHECK(context_kind_name(FormKind::Alternating) == std::string("symplectic"));
    CHECK(context_kind_name(FormKind::Quadratic) == std::string("orthogonal"));
    CHECK(context_kind_name(FormKind::Linear) == std::string("gl"));
    CHECK_THROWS_AS((void)context_kind_from_name("projective"), std::invalid_argument);
}

TEST_CASE("theorem scope") {
    CHECK(theorem_scope(ctx_of(FormKind::Linear, 1, 1, 2)));
    CHECK(theorem_scope(ctx_of(FormKind::Alternating, 2, 2, 2)));
    CHECK(theorem_scope(ctx_of(FormKind::Hermitian, 1, 1, 2)));
    CHECK_FALSE(theorem_scope(ctx_of(FormKind::Quadratic, 2, 2, 2, +1, +1, +1)));
    CHECK(theorem_scope(ctx_of(FormKind::Quadratic, 2, 2, 3, +1, +1, +1)));
}

TEST_CASE("standard representative walks the orbit in canonical order") {
    ClassicalSpace sp = standard_space(FormKind::Alternating, 4, 2);
    Mat rep0 = standard_representative(sp, 2, 0, 0);
    CHECK(rep0.rows() == 2);
    CHECK(classify_basis(sp, rep0).nondeg);

    // index steps through distinct members
    std::unordered_set<Mat, MatHash> reps;
    for (int i = 0; i < 20; ++i) {
        Mat r = standard_representative(sp, 2, 0, i);
        CHECK(classify_basis(sp, r).nondeg);
        reps.insert(r);
    }
    CHECK(reps.size() == 20);  // the whole orbit of nondegenerate planes
    CHECK_THROWS_AS((void)standard_representative(sp, 2, 0, 20), std::invalid_argument);

    // empty orbit: a hyperbolic plane has no minus-type planes
    ClassicalSpace o2 = standard_space(FormKind::Quadratic, 2, 3, +1);
    CHECK_THROWS_AS((void)standard_representative(o2, 2, -1, 0), std::invalid_argument);
}

TEST_CASE("orbit membership counts for the candidate side") {
    SpanContext ctx = ctx_of(FormKind::Alternating, 2, 2, 2);
    ClassicalSpace sp = context_space(ctx);
    uint64_t members = 0;
    for_each_rref(*sp.F, 4, 2, [&](const Mat& m) {
        if (orbit_member_uprime(sp, ctx, m)) ++members;
    });
    CHECK(members == 20);
}

TEST_CASE("meet tester agrees with explicit intersection") {
    const Field& f2 = Field::get(2, 1);
    ClassicalSpace sp = standard_space(FormKind::Linear, 4, 2);
    Mat u(f2, 2, 4);
    u.set(0, 0, 1);
    u.set(1, 1, 1);  // span{e1, e2}
    MeetTester tester(sp, u);
    uint64_t meets = 0, total = 0;
    for_each_rref(f2, 4, 2, [&](const Mat& m) {
        ++total;
        Mat copy = m;
        bool got = tester.meets(copy);
        bool want = intersection_basis(f2, u, m).rows() > 0;
        CHECK(got == want);
        if (got) ++meets;
    });
    CHECK(total == 35);
    CHECK(meets == 35 - 16);  // 16 planes are complements of span{e1,e2} in F_2^4

    Mat sloppy(f2, 2, 4);
    sloppy.set(0, 1, 1);
    sloppy.set(1, 0, 1);  // independent but not RREF-ordered
    CHECK_THROWS_AS(MeetTester(sp, sloppy), std::invalid_argument);
}

TEST_CASE("intersection basis fixture") {
    const Field& f3 = Field::get(3, 1);
    Mat a(f3, 2, 4), b(f3, 2, 4);
    a.set(0, 0, 1);
    a.set(1, 1, 1);           // span{e1, e2}
    b.set(0, 1, 1);
    b.set(1, 2, 1);           // span{e2, e3}
    Mat i = intersection_basis(f3, a, b);
    REQUIRE(i.rows() == 1);
    CHECK(i.at(0, 1) == 1);   // exactly span{e2}
    CHECK(i.at(0, 0) == 0);
    CHECK(i.at(0, 2) == 0);
}

TEST_CASE("exact phi fixtures") {
    CHECK(exact_phi(ctx_of(FormKind::Linear, 1, 1, 2)).phi == Rat(1, 3));
    CHECK(exact_phi(ctx_of(FormKind::Linear, 2, 2, 2)).phi == Rat(19, 35));
    CHECK(exact_phi(ctx_of(FormKind::Alternating, 2, 2, 2)).phi == Rat(1, 2));
    CHECK(exact_phi(ctx_of(FormKind::Hermitian, 1, 1, 2)).phi == Rat(1, 2));
    CHECK(exact_phi(ctx_of(FormKind::Quadratic, 1, 1, 3, +1, +1, +1)).phi == 1);
    CHECK(exact_phi(ctx_of(FormKind::Quadratic, 1, 1, 3, +1, -1, -1)).phi == 1);
    CHECK(exact_phi(ctx_of(FormKind::Quadratic, 1, 1, 3, +1, +1, -1)).phi == 0);

    PhiExact r = exact_phi(ctx_of(FormKind::Alternating, 2, 2, 2));
    CHECK(r.orbit == 20);
    CHECK(r.meet == 10);
    CHECK(r.u_basis.rows() == 2);
}

TEST_CASE("phi is symmetric in the two dimensions") {
    CHECK(exact_phi(ctx_of(FormKind::Alternating, 2, 4, 2)).phi ==
          exact_phi(ctx_of(FormKind::Alternating, 4, 2, 2)).phi);
    CHECK(exact_phi(ctx_of(FormKind::Linear, 1, 2, 3)).phi ==
          exact_phi(ctx_of(FormKind::Linear, 2, 1, 3)).phi);
    CHECK(exact_phi(ctx_of(FormKind::Quadratic, 1, 2, 3, 0, +1, -1)).phi ==
          exact_phi(ctx_of(FormKind::Quadratic, 2, 1, 3, 0, -1, +1)).phi);
}

TEST_CASE("phi does not depend on the representative of U") {
    for (int idx : {0, 3, 11}) {
        CHECK(exact_phi(ctx_of(FormKind::Alternating, 2, 2, 2), default_budget(), 1, idx).phi ==
              Rat(1, 2));
        CHECK(exact_phi(ctx_of(FormKind::Quadratic, 2, 2, 3, +1, +1, +1), default_budget(), 1, idx)
                  .phi ==
              exact_phi(ctx_of(FormKind::Quadratic, 2, 2, 3, +1, +1, +1)).phi);
    }
}

TEST_CASE("threaded and single-threaded enumeration agree") {
    SpanContext ctx = ctx_of(FormKind::Alternating, 2, 4, 3);
    PhiExact lone = exact_phi(ctx, default_budget(), 1);
    PhiExact four = exact_phi(ctx, default_budget(), 4);
    CHECK(lone.phi == four.phi);
    CHECK(lone.meet == four.meet);
    CHECK(lone.orbit == four.orbit);
}

TEST_CASE("budget refuses oversized enumerations") {
    CHECK_THROWS_AS((void)exact_phi(ctx_of(FormKind::Alternating, 4, 4, 3), 10), BudgetExceeded);
    try {
        (void)exact_phi(ctx_of(FormKind::Alternating, 4, 4, 3), 10);
    } catch (const BudgetExceeded& e) {
        CHECK(e.budget == 10);
        CHECK(e.required > 10);
    }
    ClassicalSpace sp = standard_space(FormKind::Alternating, 8, 2);
    CHECK_THROWS_AS((void)orbit_size(sp, OrbitSpec{OrbitKind::AllK, 4, 0}, 1000), BudgetExceeded);
}

TEST_CASE("orbit sizes for the small named orbits") {
    ClassicalSpace sp4 = standard_space(FormKind::Alternating, 4, 2);
    CHECK(orbit_size(sp4, OrbitSpec{OrbitKind::AllK, 2, 0}) == 35);
    CHECK(orbit_size(sp4, OrbitSpec{OrbitKind::SingularPoints, 1, 0}) == 15);
    CHECK(orbit_size(sp4, OrbitSpec{OrbitKind::TotallySingularK, 2, 0}) == 15);
    CHECK(orbit_size(sp4, OrbitSpec{OrbitKind::NonTotallySingularK, 2, 0}) == 20);
    CHECK(orbit_size(sp4, OrbitSpec{OrbitKind::NondegK, 2, 0}) == 20);

    ClassicalSpace o3 = standard_space(FormKind::Quadratic, 3, 3, 0);
    CHECK(orbit_size(o3, OrbitSpec{OrbitKind::SingularPoints, 1, 0}) == 4);
    CHECK(orbit_size(o3, OrbitSpec{OrbitKind::NonsingularPoints, 1, 0}) == 9);
    CHECK(orbit_size(o3, OrbitSpec{OrbitKind::NonsingularAlpha, 1, +1}) == 6);
    CHECK(orbit_size(o3, OrbitSpec{OrbitKind::NonsingularAlpha, 1, -1}) == 3);
    CHECK(orbit_size(o3, OrbitSpec{OrbitKind::NondegSigmaK, 1, +1}) == 6);
    CHECK(orbit_size(o3, OrbitSpec{OrbitKind::NondegSigmaK, 1, -1}) == 3);
}

TEST_CASE("double counting over the symplectic 4-space") {
    ClassicalSpace sp = standard_space(FormKind::Alternating, 4, 2);
    DoubleCountCheck dc = verify_double_counting(sp, OrbitSpec{OrbitKind::SingularPoints, 1, 0},
                                                 OrbitSpec{OrbitKind::NonTotallySingularK, 2, 0});
    CHECK(dc.w_size == 15);
    CHECK(dc.uprime_size == 20);
    CHECK(dc.through_w == 4);
    CHECK(dc.w_inside_uprime == 3);
    CHECK(dc.constant);
    CHECK(dc.identity);  // 15 * 4 == 3 * 20
}

TEST_CASE("inclusion-exclusion sums over the alternating q = 2 plane pair") {
    InclusionExclusionReport r = symplectic_inclusion_exclusion(2, 2);
    CHECK(r.t1 == 12);
    CHECK(r.sr2 == 1);
    CHECK(r.sp2 == 0);
    CHECK(r.sr3 == 0);
    CHECK(r.sp3 == 0);
    CHECK(r.orbit == 20);
    CHECK(r.covered == 10);
    CHECK(r.phi == Rat(1, 2));
    CHECK(r.t2_identity);
    CHECK(r.t3_identity);
    CHECK(r.sr2_identity);
    CHECK(r.sr3_identity);
    CHECK(r.sandwich);
}

}  // TEST_SUITE
