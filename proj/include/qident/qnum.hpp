#pragma once

#include <map>
#include <string>

#include "qident/laurent.hpp"
#include "qident/modp.hpp"

namespace qident {

/// Laurent polynomial in q alone.
///
/// Stored as exponent -> nonzero coefficient. This is the coefficient ring of
/// the formal-distribution engine, where values are additionally truncated
/// below a q-order (see truncated_below).
class QScalar {
public:
  QScalar() = default;
  QScalar(long c);
  QScalar(const mpz_class &c);

  static QScalar monomial(int exponent, const mpz_class &c = 1);
  /// Accepts a polynomial that involves only q.
  static QScalar from_poly(const LaurentPoly &p);

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, mpz_class> &coefficients() const { return coeffs_; }
  mpz_class coefficient(int exponent) const;
  int min_exponent() const;
  int max_exponent() const;
  bool is_monomial() const { return coeffs_.size() == 1; }

  QScalar operator-() const;
  QScalar operator+(const QScalar &o) const;
  QScalar operator-(const QScalar &o) const;
  QScalar operator*(const QScalar &o) const;
  QScalar &operator+=(const QScalar &o);
  QScalar &operator-=(const QScalar &o);
  QScalar &operator*=(const QScalar &o);
  bool operator==(const QScalar &o) const { return coeffs_ == o.coeffs_; }

  /// Multiplication by q^k.
  QScalar shifted(int k) const;
  /// Drops every term with exponent below `lowest`.
  QScalar truncated_below(int lowest) const;
  /// Adds c * q^e in place.
  void add_term(int e, const mpz_class &c);
  /// q -> q^{-1}.
  QScalar inverted() const;
  bool is_palindromic() const { return *this == inverted(); }

  /// Value at q = 1.
  mpz_class at_one() const;
  std::uint64_t eval_mod_p(std::uint64_t q_value, const PrimeField &f) const;

  /// Exact quotient; throws std::logic_error when the division leaves a
  /// remainder or the divisor is zero.
  QScalar exact_divide(const QScalar &d) const;

  LaurentPoly to_poly(int num_z) const;

  /// Same text format as LaurentPoly (terms ascending in the exponent of q).
  std::string to_string() const;
  static QScalar parse(std::string_view text);

private:
  std::map<int, mpz_class> coeffs_;
};

/// [i] = (q^i - q^-i)/(q - q^-1) = q^(i-1) + q^(i-3) + ... + q^(1-i); [0] = 0.
QScalar q_int(int i);

/// [n]! = [1][2]...[n]; [0]! = 1.
QScalar q_factorial(int n);

/// [n]!/([r]![n-r]!) by exact division; 0 when r < 0 or r > n.
QScalar q_binomial(int n, int r);

/// sum_{r=0}^{n} (-1)^r [n over r].
QScalar alternating_sum(int n);

} // namespace qident
