#pragma once

// Verification suites for the finite-variable operator algebra: the
// ordered-product factorization of the generating function, the two
// alternative forms of the ratio generating function (sum form and
// matrix-resolvent form), the two rational-function identities behind
// their proofs, and the exploratory commutator probe on the square-free
// monomial subspace.

#include <cstddef>

#include "dellns/report.hpp"
#include "dellns/skew.hpp"

namespace dellns {

// D_N(u) = product of the theta-weighted chain operators, layer by layer
// on the monomial symmetric basis up to the degree bound
Report verify_theorem5(std::size_t nvars, int omega_order, int degree);

// D_N(ut) D_N(u)^{-1} = 1 + sum_i U_i-series * (Z_i-series)^{-1} on the
// symmetric basis; both sides applied to polynomials, exact per layer
Report verify_theorem6(std::size_t nvars, int omega_order, int degree);

// the matrix-resolvent form: 1 + (row of U_i-series) * (matrix
// Z-series)^{-1} * (column of ones); also checks that the operator
// matrix applied to the stacked vector reproduces the stacked Z_i action
Report verify_resolvent(std::size_t nvars, int omega_order, int degree);

// the two rational-function identities underlying the proofs, checked
// exactly on seeded integer exponent vectors in [-2, 3]^N
Report verify_identity_C1(std::size_t nvars, int samples, unsigned seed);
Report verify_identity_C2(std::size_t nvars, int samples, unsigned seed);

// commutators of the chain operators on square-free monomials (expected
// to vanish there, and not in general)
Report squarefree_commutativity_probe(std::size_t nvars, int omega_order);

// the ratio generating function applied to one polynomial through the
// layered triangular solve (no operator-series inversion)
OmegaUSeries<XPoly> ratio_applied(std::size_t nvars, int omega_order, const XPoly& f,
                                  int lo, int hi);

}  // namespace dellns
