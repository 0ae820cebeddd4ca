#pragma once

#include <map>
#include <string>
#include <utility>

#include "qident/laurent.hpp"
#include "qident/qnum.hpp"

namespace qident {

/// q^q_power * var, where var is w or some z_i.
struct MonomialRef {
  int q_power = 0;
  VarId var = VarId::w();

  std::string to_string() const;
  auto operator<=>(const MonomialRef &) const = default;
};

MonomialRef mref(VarId v, int q_power = 0);

/// 1/(lead - sub) expanded with lead dominant:
///   sum_{n>=0} lead^{-n-1} sub^n.
/// The two monomials must involve different variables.
struct DirectedInverse {
  MonomialRef lead;
  MonomialRef sub;

  void validate() const;
  /// q-exponent gained per unit of the expansion index: sub.q - lead.q.
  int slope() const { return sub.q_power - lead.q_power; }
  std::string to_string() const;
  auto operator<=>(const DirectedInverse &) const = default;
};

/// delta(a, b) = sum_{n in Z} a^{-n-1} b^n, the sum of the two directed
/// expansions of 1/(a - b) and 1/(b - a).
struct DeltaFactor {
  MonomialRef a;
  MonomialRef b;

  void validate() const;
  std::string to_string() const;
  auto operator<=>(const DeltaFactor &) const = default;
};

/// Per-variable exponent windows plus the q-order T: coefficients are exact
/// modulo q-exponents below -T.
struct TruncationSpec {
  std::map<VarId, std::pair<int, int>> window;
  int order = 0;

  /// Window [-half_width, half_width] for w and z1..z_num_z.
  static TruncationSpec uniform(int num_z, int half_width, int order);

  void validate() const;
  bool covers(VarId v) const { return window.count(v) != 0; }
  /// True when every windowed variable's exponent lies inside its window and
  /// every other w/z exponent is zero.
  bool contains(const ExponentVector &e) const;
  /// The window shrunk by `margin` on each side (may become empty).
  TruncationSpec shrunk(int margin) const;
  bool empty() const;
};

/// A coefficient known modulo O(q^{-accuracy-1}).
struct CoeffSeries {
  QScalar value;
  int accuracy = 0;

  bool operator==(const CoeffSeries &o) const {
    return value == o.value && accuracy == o.accuracy;
  }
  /// "<value> + O(q^-<accuracy+1>)".
  std::string to_string() const;
};

/// Coefficients of a bilateral series restricted to a window, each exact to
/// the series' q-order. Keys carry only w/z exponents.
struct TruncatedSeries {
  int order = 0;
  std::map<ExponentVector, QScalar> coeffs;

  QScalar coefficient(const ExponentVector &e) const;
  void add(const ExponentVector &e, const QScalar &c);
  TruncatedSeries operator+(const TruncatedSeries &o) const;
  TruncatedSeries operator-(const TruncatedSeries &o) const;
  TruncatedSeries negated() const;
  /// Multiplies by a Laurent polynomial (q allowed) and keeps the window of
  /// `spec`. Terms pushed in from outside the window are missing, so the
  /// product is only reliable on spec.shrunk(degree span of p).
  TruncatedSeries times(const LaurentPoly &p, const TruncationSpec &spec) const;
  /// Entries of *this and o that agree on region (both truncated at the
  /// smaller order).
  bool agrees_with(const TruncatedSeries &o, const TruncationSpec &region) const;
  /// One line per nonzero coefficient: "<monomial> : <coeff> + O(q^-<T+1>)".
  std::string dump() const;
};

/// Coefficients of 1/(lead - sub) inside the window; every coefficient is a
/// single q-monomial (dropped when its exponent is below -T).
TruncatedSeries expand_inverse(const DirectedInverse &f,
                               const TruncationSpec &spec);

/// Coefficients of delta(a, b) inside the window.
TruncatedSeries expand_delta(const DeltaFactor &d, const TruncationSpec &spec);

/// Direction change 1/(A - B) = -1/(B - A) + delta(B, A). Returns the
/// flipped inverse 1/(B - A) (to be negated) and the delta.
std::pair<DirectedInverse, DeltaFactor> reexpand_split(const DirectedInverse &f);

/// Checks f(z) delta(z, w) = f(w) delta(z, w) on the window shrunk by the
/// largest |exponent| of f. f must involve only `z` (and q).
bool delta_property_check(const LaurentPoly &f, VarId z, VarId w,
                          const TruncationSpec &spec);
/// Same with z = z1 and w = w.
bool delta_property_check(const LaurentPoly &f, const TruncationSpec &spec);

} // namespace qident
