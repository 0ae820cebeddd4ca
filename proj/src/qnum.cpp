#include "qident/qnum.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace qident {

QScalar::QScalar(long c) : QScalar(mpz_class(c)) {}

QScalar::QScalar(const mpz_class &c) {
  if (c != 0)
    coeffs_.emplace(0, c);
}

QScalar QScalar::monomial(int exponent, const mpz_class &c) {
  QScalar s;
  if (c != 0)
    s.coeffs_.emplace(exponent, c);
  return s;
}

QScalar QScalar::from_poly(const LaurentPoly &p) {
  if (!p.is_q_only())
    throw ArgumentError("polynomial involves variables other than q: " +
                        p.to_string());
  QScalar s;
  for (const auto &t : p.terms())
    s.coeffs_.emplace(t.exponents[VarId::q()], t.coeff);
  return s;
}

mpz_class QScalar::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? mpz_class(0) : it->second;
}

int QScalar::min_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.begin()->first;
}

int QScalar::max_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  for (auto &[e, c] : r.coeffs_)
    c = -c;
  return r;
}

void QScalar::add_term(int e, const mpz_class &c) {
  if (c == 0)
    return;
  auto [it, inserted] = coeffs_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      coeffs_.erase(it);
  }
}

QScalar QScalar::operator+(const QScalar &o) const {
  QScalar r = *this;
  r += o;
  return r;
}

QScalar QScalar::operator-(const QScalar &o) const {
  QScalar r = *this;
  r -= o;
  return r;
}

QScalar &QScalar::operator+=(const QScalar &o) {
  for (const auto &[e, c] : o.coeffs_)
    add_term(e, c);
  return *this;
}

QScalar &QScalar::operator-=(const QScalar &o) {
  for (const auto &[e, c] : o.coeffs_)
    add_term(e, -c);
  return *this;
}

QScalar QScalar::operator*(const QScalar &o) const {
  QScalar r;
  for (const auto &[ea, ca] : coeffs_)
    for (const auto &[eb, cb] : o.coeffs_)
      r.add_term(ea + eb, ca * cb);
  return r;
}

QScalar &QScalar::operator*=(const QScalar &o) {
  *this = *this * o;
  return *this;
}

QScalar QScalar::shifted(int k) const {
  QScalar r;
  for (const auto &[e, c] : coeffs_)
    r.coeffs_.emplace_hint(r.coeffs_.end(), e + k, c);
  return r;
}

QScalar QScalar::truncated_below(int lowest) const {
  QScalar r;
  r.coeffs_.insert(coeffs_.lower_bound(lowest), coeffs_.end());
  return r;
}

QScalar QScalar::inverted() const {
  QScalar r;
  for (const auto &[e, c] : coeffs_)
    r.coeffs_.emplace(-e, c);
  return r;
}

mpz_class QScalar::at_one() const {
  mpz_class s = 0;
  for (const auto &[e, c] : coeffs_)
    s += c;
  return s;
}

std::uint64_t QScalar::eval_mod_p(std::uint64_t q_value,
                                  const PrimeField &f) const {
  std::uint64_t s = 0;
  for (const auto &[e, c] : coeffs_)
    s = f.add(s, f.mul(f.reduce(c), f.signed_pow(q_value, e)));
  return s;
}

QScalar QScalar::exact_divide(const QScalar &d) const {
  if (d.is_zero())
    throw std::logic_error("division by the zero q-scalar");
  // Long division from the top degree; Laurent shifts make any monomial
  // quotient admissible, so only the remainder can fail.
  QScalar rem = *this;
  QScalar quot;
  const int dtop = d.max_exponent();
  const mpz_class &dlead = d.coeffs_.rbegin()->second;
  const int span = d.max_exponent() - d.min_exponent();
  while (!rem.is_zero() && rem.max_exponent() - rem.min_exponent() >= span) {
    const int rtop = rem.max_exponent();
    const mpz_class &rlead = rem.coeffs_.rbegin()->second;
    if (!mpz_divisible_p(rlead.get_mpz_t(), dlead.get_mpz_t()))
      throw std::logic_error("inexact q-scalar division");
    mpz_class qc;
    mpz_divexact(qc.get_mpz_t(), rlead.get_mpz_t(), dlead.get_mpz_t());
    QScalar step = QScalar::monomial(rtop - dtop, qc);
    quot += step;
    rem -= step * d;
  }
  if (!rem.is_zero())
    throw std::logic_error("inexact q-scalar division: remainder " +
                           rem.to_string());
  return quot;
}

LaurentPoly QScalar::to_poly(int num_z) const {
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(coeffs_.size());
  for (const auto &[e, c] : coeffs_) {
    ExponentVector v;
    v.set(VarId::q(), e);
    terms.push_back({v, c});
  }
  return LaurentPoly::from_terms(num_z, std::move(terms));
}

std::string QScalar::to_string() const { return to_poly(0).to_string(); }

QScalar QScalar::parse(std::string_view text) {
  return from_poly(LaurentPoly::parse(text, 0));
}

QScalar q_int(int i) {
  if (i < 0)
    throw ArgumentError("q_int needs i >= 0");
  QScalar r;
  for (int k = 0; k < i; ++k)
    r.add_term(i - 1 - 2 * k, 1);
  return r;
}

namespace {

// Factorials are memoized; the cache only grows and entries never change,
// so concurrent readers see identical values.
std::mutex factorial_mutex;
std::vector<QScalar> &factorial_cache() {
  static std::vector<QScalar> cache{QScalar(1)};
  return cache;
}

} // namespace

QScalar q_factorial(int n) {
  if (n < 0)
    throw ArgumentError("q_factorial needs n >= 0");
  std::lock_guard lock(factorial_mutex);
  auto &cache = factorial_cache();
  while (static_cast<int>(cache.size()) <= n) {
    int next = static_cast<int>(cache.size());
    cache.push_back(cache.back() * q_int(next));
  }
  return cache[n];
}

QScalar q_binomial(int n, int r) {
  if (n < 0)
    throw ArgumentError("q_binomial needs n >= 0");
  if (r < 0 || r > n)
    return QScalar();
  return q_factorial(n).exact_divide(q_factorial(r) * q_factorial(n - r));
}

QScalar alternating_sum(int n) {
  if (n < 0)
    throw ArgumentError("alternating_sum needs n >= 0");
  QScalar s;
  for (int r = 0; r <= n; ++r) {
    if (r % 2)
      s -= q_binomial(n, r);
    else
      s += q_binomial(n, r);
  }
  return s;
}

} // namespace qident
