#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qident/permutation.hpp"
#include "qident/report.hpp"
#include "qident/series.hpp"

namespace qident {

/// The product is not summable q-adically (an expansion index can grow
/// without the q-order falling), or a factor became singular.
class DivergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerator factor (a - b).
struct LinearFactor {
  MonomialRef a;
  MonomialRef b;

  std::string to_string() const;
  auto operator<=>(const LinearFactor &) const = default;
};

/// 1/(q^lead - q^sub) expanded as sum_{n>=0} q^{-lead(n+1) + sub n}; this is
/// what a directed inverse turns into when both of its variables are
/// identified by a delta. Summable only for sub < lead.
struct GeometricFactor {
  int lead = 0;
  int sub = 0;

  std::string to_string() const;
  auto operator<=>(const GeometricFactor &) const = default;
};

/// One summand of a distribution identity:
///   scalar * monomial * prod(numerator factors) * prod(geometric factors)
///          * prod(directed inverses) * prod(deltas).
/// The numerator is kept factored so that a factor can cancel against a
/// directed inverse of the same binomial.
struct DistTerm {
  int num_z = 0;
  QScalar scalar{1};
  /// w/z monomial prefactor (q exponent always 0).
  ExponentVector monomial;
  std::vector<LinearFactor> numerator_factors;
  std::vector<GeometricFactor> geometric;
  std::vector<DirectedInverse> inverses;
  std::vector<DeltaFactor> deltas;

  bool is_zero() const { return scalar.is_zero(); }
  /// scalar * monomial * prod(numerator factors) as a polynomial.
  LaurentPoly numerator() const;
  /// Relabels z_i -> z_{s(i)} everywhere.
  DistTerm permuted(const Permutation &s) const;
  /// Substitutes x := q^shift * y in every factor (deltas included). Linear
  /// factors that collapse to one variable become scalars; inverses that do
  /// become geometric factors. Throws DivergenceError for 1/0.
  DistTerm substituted(VarId x, int shift, VarId y) const;
  /// Removes each numerator factor that matches a directed inverse up to a
  /// q-power and sign: (A - B) * [1/(A - B)] = 1 holds exactly for the
  /// directed expansion.
  void cancel_common_factors();
  std::string to_string() const;
};

/// A DistTerm prepared for repeated coefficient extraction: deltas are
/// resolved by substitution, the numerator is expanded, and the remaining
/// inverses are split into a spanning forest (solved from the target
/// exponents) and free chord indices whose every unit step lowers the
/// q-order.
class CompiledTerm {
public:
  explicit CompiledTerm(const DistTerm &term);
  ~CompiledTerm();
  CompiledTerm(CompiledTerm &&) noexcept;
  CompiledTerm &operator=(CompiledTerm &&) noexcept;

  /// Exact coefficient of target (w/z exponents only) modulo q^{-T-1}.
  QScalar coefficient(const ExponentVector &target, int order) const;
  /// Total w/z degree every monomial of the term has.
  int homogeneous_degree() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Coefficient of one target monomial in the term's distribution, exact
/// modulo O(q^{-T-1}). Targets of the wrong total degree return 0 without
/// any enumeration.
CoeffSeries coeff_of_term(const DistTerm &term, const ExponentVector &target,
                          int order);

/// Sum of the coefficients of several compiled terms at one target.
QScalar sum_coefficient(const std::vector<CompiledTerm> &terms,
                        const ExponentVector &target, int order);

std::vector<CompiledTerm> compile_terms(const std::vector<DistTerm> &terms,
                                        int threads = 1);

/// Left side of the distribution identity: for every sigma in S_{m+1} and
/// k = 0..m+1 one term
///   [m+1 over k] prod_{i<=k} 1/(q^-m z_i - w) prod_{j>k} 1/(q^-m w - z_j)
///                prod_{i<j} (z_i - z_j)/(q^2 z_i - z_j)
/// with sigma applied to the z indices. Ordered by sigma (lexicographic),
/// then k.
std::vector<DistTerm> build_lhs_13(int m);

/// Right side: q^{m-1} delta(w, q^-m z_1) delta(z_1, q^2 z_2) ...
/// delta(z_m, q^2 z_{m+1}) for every sigma in S_{m+1}.
std::vector<DistTerm> build_rhs_13(int m);

/// All targets with w/z exponents inside `region` and the given total degree,
/// in ascending monomial order.
std::vector<ExponentVector> region_targets(const TruncationSpec &region,
                                           int total_degree);

/// Largest per-variable degree span of the numerators of `terms`.
int numerator_margin(const std::vector<DistTerm> &terms);

/// Compares both sides coefficient by coefficient on the interior of the
/// window (shrunk by the numerator margin). On a mismatch the report also
/// carries the single power q^c that best explains LHS = q^c RHS.
VerifyReport verify_13(int m, const TruncationSpec &spec, int threads = 1);

/// The exponent c minimizing mismatches of lhs against q^c * rhs over the
/// listed coefficient pairs, with the number of remaining mismatches.
std::pair<int, std::size_t>
fit_q_power(const std::vector<std::pair<QScalar, QScalar>> &pairs, int order);

} // namespace qident
