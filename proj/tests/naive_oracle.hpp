#pragma once

// Brute-force reference for distribution coefficients: expand every factor
// of a term on a box of exponents, multiply the boxes out in full and read
// off the target. Shares nothing with the enumeration engine except the
// factor types.

#include <map>
#include <random>

#include "qident/distribution.hpp"

namespace oracle {

using qident::DeltaFactor;
using qident::DirectedInverse;
using qident::DistTerm;
using qident::ExponentVector;
using qident::LaurentPoly;
using qident::QScalar;
using qident::VarId;

using Series = std::map<ExponentVector, QScalar>;

inline bool in_box(const ExponentVector &e, int box) {
  for (int s = 1; s < qident::kSlots; ++s)
    if (e.slot(s) < -box || e.slot(s) > box)
      return false;
  return true;
}

inline void bump(Series &s, const ExponentVector &e, const QScalar &c) {
  QScalar &slot = s[e];
  slot += c;
  if (slot.is_zero())
    s.erase(e);
}

// a^{-n-1} b^n for n in [lo, hi], as long as both exponents fit in the box.
inline Series geometric(const qident::MonomialRef &a, const qident::MonomialRef &b,
                        long lo, long hi, int box) {
  Series s;
  for (long n = lo; n <= hi; ++n) {
    ExponentVector e;
    e.add(a.var, static_cast<int>(-n - 1));
    e.add(b.var, static_cast<int>(n));
    if (!in_box(e, box))
      continue;
    bump(s, e,
         QScalar::monomial(static_cast<int>(-a.q_power * (n + 1) + b.q_power * n)));
  }
  return s;
}

inline Series expand(const DirectedInverse &f, int box) {
  return geometric(f.lead, f.sub, 0, 2L * box + 2, box);
}

inline Series expand(const DeltaFactor &d, int box) {
  return geometric(d.a, d.b, -2L * box - 2, 2L * box + 2, box);
}

inline Series expand(const LaurentPoly &p) {
  Series s;
  for (const auto &t : p.terms()) {
    ExponentVector e = t.exponents;
    int qe = e[VarId::q()];
    e.set(VarId::q(), 0);
    bump(s, e, QScalar::monomial(qe, t.coeff));
  }
  return s;
}

inline Series multiply(const Series &a, const Series &b, int box) {
  Series out;
  for (const auto &[ea, ca] : a)
    for (const auto &[eb, cb] : b) {
      ExponentVector e = ea + eb;
      if (in_box(e, box))
        bump(out, e, ca * cb);
    }
  return out;
}

// The whole product restricted to the box; coefficients are untruncated.
inline Series product(const DistTerm &t, int box) {
  Series s = expand(t.numerator());
  for (const auto &g : t.geometric) {
    QScalar sum;
    for (long n = 0; n <= 4L * box + 8; ++n)
      sum += QScalar::monomial(static_cast<int>(-g.lead * (n + 1) + g.sub * n));
    Series one;
    one[ExponentVector()] = sum;
    s = multiply(s, one, box);
  }
  for (const auto &f : t.inverses)
    s = multiply(s, expand(f, box), box);
  for (const auto &d : t.deltas)
    s = multiply(s, expand(d, box), box);
  return s;
}

inline QScalar read(const Series &s, const ExponentVector &e, int order) {
  auto it = s.find(e);
  return it == s.end() ? QScalar() : it->second.truncated_below(-order);
}

struct RandomProduct {
  DistTerm term;
  int degree = 0;
};

// One to three factors (inverses, deltas, linear numerators) on w, z1, z2.
inline RandomProduct random_product(std::mt19937 &rng) {
  const VarId vars[] = {VarId::w(), VarId::z(1), VarId::z(2)};
  std::uniform_int_distribution<int> pick(0, 2), qp(-3, 3), count(1, 3),
      kind(0, 5);
  RandomProduct out;
  out.term.num_z = 2;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int a = pick(rng), b = pick(rng);
    while (b == a)
      b = pick(rng);
    qident::MonomialRef x = qident::mref(vars[a], qp(rng)),
                        y = qident::mref(vars[b], qp(rng));
    switch (kind(rng)) {
    case 0:
      out.term.deltas.push_back({x, y});
      out.degree -= 1;
      break;
    case 1:
      out.term.numerator_factors.push_back({x, y});
      out.degree += 1;
      break;
    default:
      out.term.inverses.push_back({x, y});
      out.degree -= 1;
      break;
    }
  }
  return out;
}

struct Comparison {
  std::string term;
  ExponentVector target;
  int order = 0;
  QScalar engine;
  QScalar reference;
};

// Draws random products and targets of matching degree with exponents in
// [-3, 3] and T in [0, 12] until `wanted` comparisons are made. Products the
// engine rejects as divergent and targets where the reference is not yet
// stable between two box sizes are skipped.
inline std::vector<Comparison> random_comparisons(unsigned seed, int wanted) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> ex(-3, 3), order(0, 12);
  std::vector<Comparison> out;
  for (int attempt = 0; attempt < 100 * wanted &&
                        static_cast<int>(out.size()) < wanted;
       ++attempt) {
    auto p = random_product(rng);
    ExponentVector target;
    target.add(VarId::w(), ex(rng));
    target.add(VarId::z(1), ex(rng));
    int rest = p.degree - target[VarId::w()] - target[VarId::z(1)];
    if (rest < -3 || rest > 3)
      continue;
    target.add(VarId::z(2), rest);
    int T = order(rng);
    QScalar fast;
    try {
      fast = qident::CompiledTerm(p.term).coefficient(target, T).truncated_below(
          -T);
    } catch (const qident::DivergenceError &) {
      continue;
    }
    auto a = read(product(p.term, 9), target, T);
    if (a != read(product(p.term, 13), target, T))
      continue;
    out.push_back({p.term.to_string(), target, T, fast, a});
  }
  return out;
}

} // namespace oracle
