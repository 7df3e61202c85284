#pragma once

#include "formspan/rational.hpp"

namespace formspan::counting {

using Sign = int;

// Number of k-dimensional subspaces of an n-dimensional space over a field of
// the given order.
BigInt gaussian_binomial(int n, int k, long order);

// Proportion of n'-subspaces meeting a fixed n-subspace trivially (no form).
// Equals prod_{i=1}^{n'} (1 - q^{-i}) / (1 - q^{-n-i}).
Rat gl_span_proportion(int n, int nprime, long q);

// theta_n = 1 - (-q)^{-n},  zeta_n = theta_{n-1} * theta_n (hermitian series)
Rat theta(int n, long q);
Rat zeta(int n, long q);

struct UnitaryPointCounts {
    BigInt p1;  // isotropic points of a nondegenerate hermitian n-space
    BigInt n1;  // nondegenerate points
};
UnitaryPointCounts unitary_point_counts(int n, long q);

// Symplectic space of (even) dimension n over GF(q).
BigInt symplectic_p1(int n, long q);             // points, all isotropic
BigInt symplectic_pk(int n, int k, long q);      // totally isotropic k-subspaces
BigInt symplectic_rk(int n, int k, long q);      // k-subspaces that are not totally isotropic
BigInt symplectic_r2_closed(int n, long q);      // nondegenerate 2-subspaces, product form
BigInt symplectic_r3_closed_q2(int n);           // R3 product form, q = 2

// gamma_n^tau = 1 - tau q^{-n/2} + tau q^{-n/2+1} - q^{-n+1}; tau = 0 for odd n.
Rat orth_gamma(int n, Sign tau, long q);

struct OrthPointCounts {
    BigInt p1;  // singular points
    BigInt n1;  // nonsingular points
};
OrthPointCounts orth_point_counts(int n, Sign tau, long q);

// Size of one nonsingular-point class (q odd): n = 2m even splits N1 evenly;
// n = 2m+1 gives q^{n-1}(1 + alpha q^{-m})/2.
BigInt orth_n1_alpha(int n, Sign tau, Sign alpha, long q);

// Relabel sign s in  N1^alpha(V) meet N1(U) = N1^{alpha*s}(U),  keyed by the
// parities of dim U and dim U^perp (q odd):
//   (even, even) -> +1
//   (even, odd)  -> delta_v    * (-1)^((m+m')(q-1)/2)
//   (odd,  even) -> delta_perp * (-1)^(m'(q-1)/2)
//   (odd,  odd)  -> delta_u    * (-1)^(m(q-1)/2)
// with m = floor(dim_u/2), m' = floor(dim_perp/2).
Sign orbit_relabel_sign(int dim_u, int dim_perp, long q, Sign delta_v, Sign delta_u,
                        Sign delta_perp);

}  // namespace formspan::counting
