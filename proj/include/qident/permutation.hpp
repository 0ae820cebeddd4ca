#pragma once

#include <map>
#include <vector>

#include "qident/laurent.hpp"

namespace qident {

/// A permutation of {1..n}, stored by images; the sign is computed once at
/// construction.
class Permutation {
public:
  /// images[i-1] = s(i). Throws ArgumentError unless images is a bijection
  /// of {1..n}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The transposition (i j) in S_n.
  static Permutation transposition(int n, int i, int j);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  int sign() const { return sign_; }
  const std::vector<int> &images() const { return images_; }

  Permutation inverse() const;

  bool operator==(const Permutation &o) const { return images_ == o.images_; }

private:
  std::vector<int> images_;
  int sign_ = 1;
};

/// (t * s)(i) = t(s(i)).
Permutation operator*(const Permutation &t, const Permutation &s);

/// All of S_n in lexicographic order of the image tuples.
std::vector<Permutation> all_permutations(int n);

/// Relabels z_i -> z_{s(i)}; q and w are fixed. The permutation degree must
/// equal the polynomial's number of z-variables.
LaurentPoly apply_permutation(const LaurentPoly &a, const Permutation &s);

/// Orbit sum over S_n, optionally weighted by sign(sigma). Evaluated term by
/// term over all n! permutations; per-thread partial sums are combined into
/// the same canonical polynomial for every thread count.
LaurentPoly symmetrize(const LaurentPoly &a, int n, bool signed_sum,
                       int threads = 1);

/// Coefficients of a signed orbit sum in the alternant basis.
///
/// sum_sigma sign(sigma) sigma.a = sum_lambda c_lambda * a_lambda, where
/// lambda runs over exponent vectors whose z-part is strictly decreasing and
/// a_lambda = sum_sigma sign(sigma) sigma.z^lambda. A monomial with a repeated
/// z-exponent has zero alternant and contributes nothing.
using AlternantForm = std::map<ExponentVector, mpz_class>;

AlternantForm alternant_form(const LaurentPoly &a, int n);

/// Expands an alternant form back into an ordinary polynomial.
LaurentPoly expand_alternant(const AlternantForm &form, int num_z, int n,
                             int threads = 1);

/// Same value as symmetrize(a, n, true) but computed through the alternant
/// form: cost is linear in the number of terms of a plus n! per surviving
/// alternant.
LaurentPoly antisymmetrize(const LaurentPoly &a, int n, int threads = 1);

} // namespace qident
