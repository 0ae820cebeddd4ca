#pragma once

#include <cstdint>
#include <vector>

#include "qident/laurent.hpp"
#include "qident/qnum.hpp"
#include "qident/report.hpp"

namespace qident {

/// Coefficients [m+1 over r] for r = 0..m+1. Replacing an entry gives the
/// mutated identities used to check that the verifiers can fail.
using BinomialRow = std::vector<QScalar>;

BinomialRow binomial_row(int m);

/// Number of z-variables of the identity for m: m + 1.
inline int identity_context(int m) { return m + 1; }

/// r-th summand with the Vandermonde denominator cleared:
///   c_r * prod_{i<=r}(w - q^m z_i) * prod_{i>r}(z_i - q^m w)
///       * prod_{i<j}(z_i - q^2 z_j)
/// where c_r = [m+1 over r] unless a coefficient is given.
LaurentPoly build_summand(int m, int r);
LaurentPoly build_summand(int m, int r, const QScalar &coefficient);

/// sum_r build_summand(m, r), before any symmetrization.
LaurentPoly build_unsymmetrized_sum(int m, const BinomialRow &row,
                                    int threads = 1);

/// sum_sigma sign(sigma) sigma.(sum_r build_summand(m, r)), i.e. the
/// left-hand side times prod_{i<j}(z_i - z_j). The signed orbit sum is taken
/// through the alternant form of the r-sum, which is exact and avoids
/// expanding (m+1)! copies of a large polynomial.
LaurentPoly build_lhs_cleared(int m, int threads = 1);
LaurentPoly build_lhs_cleared(int m, const BinomialRow &row, int threads = 1);

/// Exact zero test of build_lhs_cleared(m).
VerifyReport verify_identity(int m, int threads = 1);
VerifyReport verify_identity(int m, const BinomialRow &row, int threads = 1);

/// Coefficients of w^0 .. w^{m+1} in build_lhs_cleared(m).
std::vector<LaurentPoly> w_coefficient_identities(int m, int threads = 1);

/// Checks every entry of w_coefficient_identities(m) is zero.
VerifyReport verify_w_coefficients(int m, int threads = 1);

/// Degree bound used for Schwartz-Zippel: total degree in (q, w, z) of
/// q^s * build_lhs_cleared(m), with s clearing the negative q-powers.
std::uint64_t modular_degree_bound(int m);

/// Probabilistic zero test: evaluates the signed symmetrized sum at `trials`
/// random points of (Z/pZ)^* without building the polynomial. A true zero
/// polynomial always passes; a nonzero one passes a trial with probability
/// at most modular_degree_bound(m)/p. Throws ArgumentError when p is not a
/// prime above the degree bound or trials < 1.
VerifyReport verify_identity_modp(int m, int trials, std::uint64_t p,
                                  std::uint64_t seed, int threads = 1);
VerifyReport verify_identity_modp(int m, int trials, std::uint64_t p,
                                  std::uint64_t seed, const BinomialRow &row,
                                  int threads = 1);

/// Value of the signed symmetrized sum at one point (q, w, z1..z_{m+1}).
std::uint64_t evaluate_lhs_cleared_mod_p(int m, const BinomialRow &row,
                                         const std::vector<std::uint64_t> &point,
                                         const PrimeField &field,
                                         int threads = 1);

} // namespace qident
