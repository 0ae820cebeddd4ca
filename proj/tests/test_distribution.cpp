#include <doctest.h>

#include "naive_oracle.hpp"
#include "qident/distribution.hpp"

using namespace qident;

namespace {

const VarId w = VarId::w(), z1 = VarId::z(1), z2 = VarId::z(2);

ExponentVector ev(std::initializer_list<std::pair<VarId, int>> powers) {
  ExponentVector e;
  for (auto [v, k] : powers)
    e.add(v, k);
  return e;
}

DistTerm bare(int num_z) {
  DistTerm t;
  t.num_z = num_z;
  return t;
}

} // namespace

TEST_CASE("coefficient of a single term") {
  DistTerm t = bare(2);
  t.inverses = {{mref(z1, 2), mref(z2)}, {mref(z2, 2), mref(z1)}};
  auto c = coeff_of_term(t, ev({{z1, -1}, {z2, -1}}), 10);
  CHECK(c.value == QScalar::parse("1 q^-8 + 1 q^-4"));
  CHECK(c.accuracy == 10);
  CHECK(c.to_string() == "1 q^-8 + 1 q^-4 + O(q^-11)");

  // Wrong total degree: zero without enumeration.
  CHECK(coeff_of_term(t, ev({{z1, -1}}), 10).value.is_zero());

  DistTerm d = bare(1);
  d.deltas = {{mref(w), mref(z1, -1)}};
  for (int n = -4; n <= 4; ++n)
    CHECK(coeff_of_term(d, ev({{w, -n - 1}, {z1, n}}), 10).value ==
          QScalar::monomial(-n));

  CHECK_THROWS_AS(coeff_of_term(t, ev({{VarId::z(3), -2}}), 10), ArgumentError);
  CHECK_THROWS_AS(coeff_of_term(t, ev({{VarId::q(), 1}, {z1, -2}}), 10),
                  ArgumentError);

  // A chord that never lowers the q-order cannot be summed.
  DistTerm bad = bare(2);
  bad.inverses = {{mref(z1), mref(z2, 2)}, {mref(z2), mref(z1)}};
  CHECK_THROWS_AS(CompiledTerm{bad}, DivergenceError);
}

TEST_CASE("engine agrees with brute-force expansion") {
  auto cmp = oracle::random_comparisons(1234, 200);
  CHECK(cmp.size() == 200);
  int nonzero = 0;
  for (const auto &c : cmp) {
    CAPTURE(c.term);
    CAPTURE(exponent_text(c.target));
    CAPTURE(c.order);
    CHECK(c.engine == c.reference);
    if (!c.reference.is_zero())
      ++nonzero;
  }
  CHECK(nonzero > 20);
}

TEST_CASE("engine agrees with brute force on identity terms") {
  for (int m = 0; m <= 1; ++m) {
    auto terms = build_lhs_13(m);
    auto rhs = build_rhs_13(m);
    terms.insert(terms.end(), rhs.begin(), rhs.end());
    auto region = TruncationSpec::uniform(m + 1, 2, 0);
    for (const auto &t : terms) {
      CompiledTerm c(t);
      auto big = oracle::product(t, 10), bigger = oracle::product(t, 14);
      for (const auto &e : region_targets(region, c.homogeneous_degree())) {
        auto a = oracle::read(big, e, 6);
        if (a != oracle::read(bigger, e, 6))
          continue;
        CHECK(c.coefficient(e, 6).truncated_below(-6) == a);
      }
    }
  }
}

TEST_CASE("both sides of the distribution identity") {
  auto l0 = build_lhs_13(0);
  REQUIRE(l0.size() == 2);
  CHECK(l0[0].inverses == std::vector<DirectedInverse>{{mref(w), mref(z1)}});
  CHECK(l0[1].inverses == std::vector<DirectedInverse>{{mref(z1), mref(w)}});

  auto l1 = build_lhs_13(1);
  REQUIRE(l1.size() == 6);
  const DistTerm &t = l1[1];
  CHECK(t.scalar == QScalar::parse("1 q^-1 + 1 q^1"));
  CHECK(t.inverses.size() == 3);
  CHECK(std::count(t.inverses.begin(), t.inverses.end(),
                   DirectedInverse{mref(z1, -1), mref(w)}) == 1);
  CHECK(std::count(t.inverses.begin(), t.inverses.end(),
                   DirectedInverse{mref(w, -1), mref(z2)}) == 1);
  CHECK(std::count(t.inverses.begin(), t.inverses.end(),
                   DirectedInverse{mref(z1, 2), mref(z2)}) == 1);
  CHECK(t.numerator_factors ==
        std::vector<LinearFactor>{{mref(z1), mref(z2)}});

  CHECK(build_lhs_13(2).size() == 24);
  CHECK(build_lhs_13(3).size() == 120);
  for (int m = 0; m <= 3; ++m) {
    auto r = build_rhs_13(m);
    CHECK(r.size() == (m == 3 ? 24u : m == 2 ? 6u : m == 1 ? 2u : 1u));
    for (const auto &x : r) {
      CHECK(x.deltas.size() == static_cast<std::size_t>(m + 1));
      CHECK(x.scalar == QScalar::monomial(m - 1));
    }
  }
}

TEST_CASE("verification of the distribution identity") {
  // m = 0: LHS is delta(w, z1), the right side carries q^-1.
  auto r0 = verify_13(0, TruncationSpec::uniform(1, 6, 8));
  CHECK_FALSE(r0.is_zero());
  CHECK(r0.identity == "delta-distribution");
  CHECK(r0.extra["fitted_exponent"] == 1);
  CHECK(r0.extra["fitted_mismatches"] == 0);

  // For m >= 1 the left side equals q times the stated right side.
  for (int m = 1; m <= 2; ++m) {
    CAPTURE(m);
    auto r = verify_13(m, TruncationSpec::uniform(m + 1, m <= 1 ? 6 : 5, 8));
    CHECK_FALSE(r.is_zero());
    CHECK(r.summand_count == (m == 1 ? 6u : 24u));
    CHECK(r.extra["fitted_exponent"] == 1);
    CHECK(r.extra["fitted_mismatches"] == 0);
    CHECK(r.extra["targets_checked"].get<int>() > 0);
    CHECK(r.extra["nonzero_coefficients"].get<int>() > 0);
  }

  CHECK_THROWS_AS(verify_13(1, TruncationSpec::uniform(2, 0, 8)), ArgumentError);
  // Non-empty interior holding no monomial of the right degree.
  CHECK_THROWS_AS(verify_13(1, TruncationSpec::uniform(2, 1, 8)), ArgumentError);
  TruncationSpec missing = TruncationSpec::uniform(1, 6, 8);
  CHECK_THROWS_AS(verify_13(1, missing), ArgumentError);
}

TEST_CASE("fitting a q-power") {
  std::vector<std::pair<QScalar, QScalar>> pairs{
      {QScalar::parse("2 q^-1"), QScalar::parse("2 q^-2")},
      {QScalar::parse("1 q^0 + 1 q^-3"), QScalar::parse("1 q^-1 + 1 q^-4")}};
  auto [c, miss] = fit_q_power(pairs, 10);
  CHECK(c == 1);
  CHECK(miss == 0);
  auto [c0, miss0] = fit_q_power({{QScalar(1), QScalar(1)}}, 10);
  CHECK(c0 == 0);
  CHECK(miss0 == 0);
}

TEST_CASE("window stability") {
  auto small = verify_13(1, TruncationSpec::uniform(2, 5, 8));
  auto large = verify_13(1, TruncationSpec::uniform(2, 7, 8));
  CHECK(small.extra["fitted_exponent"] == large.extra["fitted_exponent"]);
  CHECK(large.extra["fitted_mismatches"] == 0);
  CHECK(large.extra["targets_checked"].get<int>() >
        small.extra["targets_checked"].get<int>());

  // Interior coefficients do not depend on the window they were read from.
  auto terms = compile_terms(build_lhs_13(1));
  for (const auto &e :
       region_targets(TruncationSpec::uniform(2, 2, 8), -3))
    CHECK(sum_coefficient(terms, e, 8) ==
          sum_coefficient(compile_terms(build_lhs_13(1), 2), e, 8));
}

TEST_CASE("reports do not depend on the thread count") {
  auto spec = TruncationSpec::uniform(3, 5, 8);
  auto ref = verify_13(2, spec, 1).serialize(false, false);
  for (int t : {2, 8})
    CHECK(verify_13(2, spec, t).serialize(false, false) == ref);
}
