#include <doctest.h>

#include <thread>

#include "qident/qnum.hpp"

using namespace qident;

namespace {

QScalar Q(const char *text) { return QScalar::parse(text); }

mpz_class binomial(int n, int r) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, r);
  return b;
}

} // namespace

TEST_CASE("q-integers") {
  CHECK(q_int(0).is_zero());
  CHECK(q_int(1) == QScalar(1));
  CHECK(q_int(2) == Q("1 q^-1 + 1 q^1"));
  CHECK(q_int(3) == Q("1 q^-2 + 1 + 1 q^2"));
  // [i] (q - q^-1) = q^i - q^-i
  for (int i = 0; i <= 12; ++i)
    CHECK(q_int(i) * Q("-1 q^-1 + 1 q^1") ==
          QScalar::monomial(i) - QScalar::monomial(-i));
}

TEST_CASE("q-factorials") {
  CHECK(q_factorial(0) == QScalar(1));
  CHECK(q_factorial(2) == Q("1 q^-1 + 1 q^1"));
  CHECK(q_factorial(3) == Q("1 q^-3 + 2 q^-1 + 2 q^1 + 1 q^3"));
  for (int n = 1; n <= 12; ++n)
    CHECK(q_factorial(n) == q_factorial(n - 1) * q_int(n));
}

TEST_CASE("q-binomials") {
  CHECK(q_binomial(5, 0) == QScalar(1));
  CHECK(q_binomial(2, 1) == Q("1 q^-1 + 1 q^1"));
  CHECK(q_binomial(4, 2).at_one() == 6);
  CHECK(q_binomial(4, -1).is_zero());
  CHECK(q_binomial(4, 5).is_zero());

  for (int n = 0; n <= 12; ++n)
    for (int r = 0; r <= n; ++r) {
      auto b = q_binomial(n, r);
      CHECK(q_factorial(r) * q_factorial(n - r) * b == q_factorial(n));
      CHECK(b.is_palindromic());
      CHECK(b == q_binomial(n, n - r));
      CHECK(b.at_one() == binomial(n, r));
    }
}

TEST_CASE("both mirrored Pascal recurrences hold") {
  // The symmetric binomial is palindromic, so q -> 1/q carries one variant
  // onto the other; both are checked and both hold.
  for (int n = 1; n <= 10; ++n)
    for (int r = 0; r <= n; ++r) {
      auto b = q_binomial(n, r);
      auto first = q_binomial(n - 1, r).shifted(r) +
                   q_binomial(n - 1, r - 1).shifted(r - n);
      auto mirrored = q_binomial(n - 1, r).shifted(-r) +
                      q_binomial(n - 1, r - 1).shifted(n - r);
      CHECK((b - first).is_zero());
      CHECK((b - mirrored).is_zero());
    }
}

TEST_CASE("alternating sums") {
  CHECK(alternating_sum(1).is_zero());
  CHECK(alternating_sum(3).is_zero());
  CHECK(alternating_sum(2) == Q("-1 q^-1 + 2 + -1 q^1"));
  for (int n = 1; n <= 11; n += 2)
    CHECK(alternating_sum(n).is_zero());
  for (int n = 2; n <= 10; n += 2)
    CHECK_FALSE(alternating_sum(n).is_zero());
}

TEST_CASE("exact division rejects remainders") {
  CHECK(q_factorial(5).exact_divide(q_factorial(3)) == q_int(4) * q_int(5));
  CHECK_THROWS_AS(Q("1 q^2 + 1").exact_divide(Q("1 q^1 + 1")), std::logic_error);
  CHECK_THROWS_AS(Q("1").exact_divide(QScalar()), std::logic_error);
}

TEST_CASE("scalar helpers") {
  auto a = Q("3 q^-2 + -1 q^1 + 2 q^5");
  CHECK(a.min_exponent() == -2);
  CHECK(a.max_exponent() == 5);
  CHECK(a.truncated_below(0) == Q("-1 q^1 + 2 q^5"));
  CHECK(a.shifted(2) == Q("3 + -1 q^3 + 2 q^7"));
  CHECK(a.inverted() == Q("2 q^-5 + -1 q^-1 + 3 q^2"));
  CHECK(QScalar::parse(a.to_string()) == a);
  PrimeField f(7);
  CHECK(Q("1 q^-1 + 1 q^1").eval_mod_p(2, f) == 6);
}

TEST_CASE("memoized factorials agree across threads") {
  std::vector<QScalar> out(8);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&, t] { out[t] = q_factorial(9 + t % 3); });
  for (auto &th : pool)
    th.join();
  for (int t = 0; t < 8; ++t)
    CHECK(out[t] == q_factorial(9 + t % 3));
}
