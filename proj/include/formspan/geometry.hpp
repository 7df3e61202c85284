#pragma once

#include <cstdint>
#include <vector>

#include "formspan/field.hpp"
#include "formspan/matrix.hpp"

namespace formspan {

enum class FormKind { Linear, Alternating, Hermitian, Quadratic };

const char* kind_name(FormKind k);

// Sign labels: +1 / -1; 0 means "parabolic" or "not applicable" depending on
// context (type of an odd-dimensional space, missing alpha class, ...).
using Sign = int;

// A finite vector space carrying a classical form.
//
//   Linear       no form (GL baseline)
//   Alternating  symplectic beta, beta(v,v) = 0
//   Hermitian    sesquilinear over GF(q^2), beta(u,v) = u G conj(v)^T
//   Quadratic    Q from an upper-triangular coefficient matrix; the polar form
//                beta(u,v) = Q(u+v) - Q(u) - Q(v) is stored as `gram`
//
// `q` is the base parameter: the full field has order q except in the
// hermitian case, where it is q^2.
struct ClassicalSpace {
    FormKind kind{FormKind::Linear};
    int dim{0};
    int q{0};
    const Field* F{nullptr};
    Mat gram;      // bilinear / sesquilinear / polar matrix
    Mat quad;      // Quadratic only: upper-triangular coefficients of Q
    Sign epsilon{0};  // type of the standard model (Quadratic), else 0
    Sign delta{0};    // chi(det gram) when Quadratic with q odd, else 0

    int bil(const uint16_t* u, const uint16_t* v) const;
    int quad_val(const uint16_t* v) const;
    // beta(v,v) for sesquilinear kinds, Q(v) for quadratic: the quantity whose
    // vanishing makes a point singular.
    int point_norm(const uint16_t* v) const;
};

// Fixed models: hyperbolic pairs on adjacent coordinates, then an anisotropic
// tail of dimension 0 / 1 / 2 for epsilon = + / o / -. Hermitian uses the
// identity Gram. epsilon must be o exactly when a quadratic dim is odd (which
// in turn needs q odd); non-quadratic kinds take epsilon = 0.
ClassicalSpace standard_space(FormKind kind, int dim, int q, Sign epsilon = 0);

// Row space of an RREF basis inside a ClassicalSpace.
struct Subspace {
    const ClassicalSpace* space{nullptr};
    Mat basis;  // RREF, rows independent

    int dim() const { return basis.rows(); }
    bool contains_vector(const uint16_t* v) const;
    bool contains(const Subspace& other) const;
};

Subspace make_subspace(const ClassicalSpace& sp, Mat rows);  // canonicalizes
Subspace full_subspace(const ClassicalSpace& sp);
Subspace zero_subspace(const ClassicalSpace& sp);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

// {v in V : beta(u, v) = 0 for all u in U}
Subspace perp(const Subspace& u);

Subspace bilinear_radical(const Subspace& u);   // U meet U^perp
Subspace quadratic_radical(const Subspace& u);  // {v in BRad(U) : Q(v) = 0}, Quadratic only

// Non-degenerate: QRad = 0 for quadratic spaces, BRad = 0 otherwise.
bool is_nondegenerate(const Subspace& u);
bool is_totally_singular(const Subspace& u);

// Form restricted to the row space of `basis`, in basis coordinates.
Mat restricted_gram(const ClassicalSpace& sp, const Mat& basis);
// Upper-triangular coefficients of Q restricted to the row space (Quadratic).
Mat restricted_quad(const ClassicalSpace& sp, const Mat& basis);

// chi(det of restricted polar Gram). Quadratic, q odd, full-rank restriction.
Sign delta_invariant(const ClassicalSpace& sp, const Mat& basis);

// Intrinsic isometry type of the restricted quadratic form, decided by
// counting singular points and matching the count against the closed forms
// for each candidate type (the counts are pairwise distinct, which is
// asserted). Returns +1 / -1 for even dimension, 0 for odd.
Sign intrinsic_type_by_counting(const ClassicalSpace& sp, const Mat& basis);

long long count_singular_points(const ClassicalSpace& sp, const Mat& basis);
long long count_point_class(const ClassicalSpace& sp, const Mat& basis, bool singular, Sign alpha);

struct SubspaceClass {
    bool nondeg{false};
    Sign tau{0};    // intrinsic type of the restricted form
    Sign sigma{0};  // subspace type relative to the ambient space
    Sign delta{0};  // discriminant label (quadratic, q odd)
};

// Full classification of U inside its space. sigma follows the subspace-type
// table: even dim takes its intrinsic type; odd dim takes the type of U^perp
// when that is even-dimensional and the discriminant label otherwise. An odd
// dim subspace with dim(U^perp) = 0 gets sigma = + by convention. Labels are
// only meaningful when `nondeg` holds.
SubspaceClass classify(const Subspace& u);
SubspaceClass classify_basis(const ClassicalSpace& sp, const Mat& basis);

struct PointClass {
    bool singular{false};
    Sign alpha{0};  // nonsingular-point class; 0 when the kind/q has no split
};

// Class of the point <v> inside `parent` (defaults to the whole space).
// For quadratic spaces with q odd and nonsingular v: alpha is the
// discriminant label of <v> when dim(parent) is even, and the type of
// (v^perp meet parent) when dim(parent) is odd and > 1.
PointClass point_class(const Subspace& parent, const uint16_t* v);

}  // namespace formspan
