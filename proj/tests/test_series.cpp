#include <doctest.h>

#include <random>

#include "qident/series.hpp"

using namespace qident;

namespace {

const VarId w = VarId::w(), z1 = VarId::z(1), z2 = VarId::z(2);

ExponentVector ev(std::initializer_list<std::pair<VarId, int>> powers) {
  ExponentVector e;
  for (auto [v, k] : powers)
    e.add(v, k);
  return e;
}

TruncationSpec box(int num_z, int n, int order) {
  return TruncationSpec::uniform(num_z, n, order);
}

// Every inverse shape occurring for a given m: the two w-facing shapes and
// the pair shape, in both z orders.
std::vector<DirectedInverse> shapes(int m) {
  return {{mref(VarId::z(1), -m), mref(w)},
          {mref(w, -m), mref(VarId::z(2))},
          {mref(VarId::z(1), 2), mref(VarId::z(2))},
          {mref(VarId::z(2), 2), mref(VarId::z(1))},
          {mref(VarId::z(1), -2 * m), mref(VarId::z(2))},
          {mref(VarId::z(1)), mref(w)}};
}

} // namespace

TEST_CASE("directed inverse expansion") {
  auto s = expand_inverse({mref(z1), mref(w)}, box(1, 2, 10));
  CHECK(s.coeffs.size() == 2);
  CHECK(s.coefficient(ev({{z1, -1}})) == QScalar(1));
  CHECK(s.coefficient(ev({{z1, -2}, {w, 1}})) == QScalar(1));
  CHECK(s.coefficient(ev({{z1, -3}, {w, 2}})).is_zero());

  auto p = expand_inverse({mref(z1, 2), mref(z2)}, box(2, 4, 20));
  CHECK(p.coefficient(ev({{z1, -1}})) == QScalar::monomial(-2));
  CHECK(p.coefficient(ev({{z1, -2}, {z2, 1}})) == QScalar::monomial(-4));
  CHECK(p.coefficient(ev({{z1, -3}, {z2, 2}})) == QScalar::monomial(-6));

  auto m1 = expand_inverse({mref(w, -1), mref(z1)}, box(1, 4, 10));
  CHECK(m1.coefficient(ev({{w, -1}})) == QScalar::monomial(1));
  CHECK(m1.coefficient(ev({{w, -2}, {z1, 1}})) == QScalar::monomial(2));

  CHECK_THROWS_AS(expand_inverse({mref(z1), mref(z1, 2)}, box(1, 2, 2)),
                  ArgumentError);
  CHECK_THROWS_AS(expand_inverse({mref(z1), mref(z2)}, box(1, 2, 2)),
                  ArgumentError);
}

TEST_CASE("direction convention") {
  for (int m = 0; m <= 3; ++m)
    for (const auto &f : shapes(m)) {
      auto s = expand_inverse(f, box(2, 6, 10));
      for (const auto &[e, c] : s.coeffs) {
        CHECK(e[f.lead.var] < 0);
        CHECK(e[f.sub.var] >= 0);
        CHECK(c.is_monomial());
      }
    }
}

TEST_CASE("q-order truncation drops low terms") {
  auto s = expand_inverse({mref(z1, 2), mref(z2)}, box(2, 8, 6));
  // q^{-2(n+1)} >= q^-6 keeps n = 0, 1, 2 only.
  CHECK(s.coeffs.size() == 3);
}

TEST_CASE("delta expansion") {
  auto d = expand_delta({mref(z1), mref(w)}, box(1, 4, 10));
  CHECK(d.coefficient(ev({{z1, -1}})) == QScalar(1));
  CHECK(d.coefficient(ev({{z1, -3}, {w, 2}})) == QScalar(1));
  CHECK(d.coefficient(ev({{z1, -3}, {w, 1}})).is_zero());

  auto dq = expand_delta({mref(w), mref(z1, -1)}, box(1, 6, 20));
  for (int n = -5; n <= 5; ++n)
    CHECK(dq.coefficient(ev({{w, -n - 1}, {z1, n}})) == QScalar::monomial(-n));

  for (int m = 0; m <= 3; ++m)
    for (const auto &f : shapes(m)) {
      DeltaFactor ab{f.lead, f.sub}, ba{f.sub, f.lead};
      auto x = expand_delta(ab, box(2, 6, 10));
      auto y = expand_delta(ba, box(2, 6, 10));
      CHECK(x.coeffs == y.coeffs);
    }
}

TEST_CASE("split exactness") {
  for (int m = 0; m <= 3; ++m)
    for (const auto &f : shapes(m)) {
      auto spec = box(2, 6, 10);
      auto [flipped, delta] = reexpand_split(f);
      CHECK(flipped.lead == f.sub);
      CHECK(flipped.sub == f.lead);
      auto lhs = expand_inverse(f, spec) + expand_inverse(flipped, spec);
      auto rhs = expand_delta(delta, spec);
      CHECK(lhs.coeffs == rhs.coeffs);
      // Flipping twice gives back the original direction.
      CHECK(reexpand_split(flipped).first == f);
    }
  auto [flipped, delta] = reexpand_split({mref(z1), mref(w)});
  CHECK(flipped == DirectedInverse{mref(w), mref(z1)});
  CHECK(delta == DeltaFactor{mref(w), mref(z1)});
}

TEST_CASE("multiplying back by the binomial gives 1 on the interior") {
  for (int m = 0; m <= 3; ++m)
    for (const auto &f : shapes(m)) {
      auto spec = box(2, 6, 12);
      LaurentPoly binom =
          make_monomial(2, 1, {{f.lead.var, 1}, {VarId::q(), f.lead.q_power}}) -
          make_monomial(2, 1, {{f.sub.var, 1}, {VarId::q(), f.sub.q_power}});
      auto prod = expand_inverse(f, spec).times(binom, spec);
      TruncatedSeries one;
      one.order = spec.order;
      one.add(ExponentVector(), QScalar(1));
      // Each product term is exact above q^-T once both the n and n+1 terms
      // are kept; stay inside the window and above the lowest kept order.
      TruncationSpec interior = spec.shrunk(1);
      interior.order = spec.order - 2 * std::abs(f.slope()) - 2 * m - 4;
      if (interior.order < 0)
        interior.order = 0;
      TruncatedSeries a = prod, b = one;
      a.order = b.order = interior.order;
      CHECK(a.agrees_with(b, interior));
    }
}

TEST_CASE("delta property") {
  auto spec = box(1, 8, 10);
  CHECK(delta_property_check(LaurentPoly::constant(1, 1), spec));
  CHECK(delta_property_check(LaurentPoly::variable(1, z1), spec));
  auto f = LaurentPoly::variable(1, z1, 2) -
           LaurentPoly::variable(1, z1, -1).scaled(3);
  CHECK(delta_property_check(f, spec));

  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> start(-4, 0), span(0, 4), coeff(-9, 9),
      qexp(-3, 3);
  for (int i = 0; i < 50; ++i) {
    int lo = start(rng), hi = lo + span(rng);
    LaurentPoly g(1);
    for (int e = lo; e <= hi; ++e)
      g += make_monomial(1, coeff(rng), {{z1, e}, {VarId::q(), qexp(rng)}});
    CHECK(delta_property_check(g, spec));
  }
  CHECK_THROWS_AS(delta_property_check(LaurentPoly::variable(1, w), spec),
                  ArgumentError);
}

TEST_CASE("window stability") {
  for (const auto &f : shapes(2)) {
    auto small = expand_inverse(f, box(2, 4, 8));
    auto large = expand_inverse(f, box(2, 7, 8));
    for (const auto &[e, c] : small.coeffs)
      CHECK(large.coefficient(e) == c);
  }
}

TEST_CASE("truncation spec and text output") {
  TruncationSpec bad;
  bad.order = -1;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  TruncationSpec empty;
  empty.window[w] = {2, 1};
  CHECK_THROWS_AS(empty.validate(), ArgumentError);
  CHECK(box(1, 2, 0).shrunk(3).empty());

  CoeffSeries c{QScalar::parse("1 q^-8 + 1 q^-4"), 10};
  CHECK(c.to_string() == "1 q^-8 + 1 q^-4 + O(q^-11)");
  CHECK(CoeffSeries{QScalar(), 3}.to_string() == "0 + O(q^-4)");

  auto s = expand_inverse({mref(z1), mref(w)}, box(1, 2, 4));
  CHECK(s.dump() == "z1^-1 : 1 + O(q^-5)\nw^1 z1^-2 : 1 + O(q^-5)\n");
}
