#include "qident/series.hpp"

#include <algorithm>
#include <set>

namespace qident {

MonomialRef mref(VarId v, int q_power) { return MonomialRef{q_power, v}; }

std::string MonomialRef::to_string() const {
  if (q_power == 0)
    return var.name();
  return "q^" + std::to_string(q_power) + " " + var.name();
}

void DirectedInverse::validate() const {
  if (lead.var == sub.var)
    throw ArgumentError("directed inverse needs two different variables: " +
                        to_string());
  if (lead.var == VarId::q() || sub.var == VarId::q())
    throw ArgumentError("q cannot be an expansion variable");
}

std::string DirectedInverse::to_string() const {
  return "1/(" + lead.to_string() + " - " + sub.to_string() + ")";
}

void DeltaFactor::validate() const {
  if (a.var == b.var)
    throw ArgumentError("delta needs two different variables: " + to_string());
  if (a.var == VarId::q() || b.var == VarId::q())
    throw ArgumentError("q cannot be a delta variable");
}

std::string DeltaFactor::to_string() const {
  return "delta(" + a.to_string() + ", " + b.to_string() + ")";
}

TruncationSpec TruncationSpec::uniform(int num_z, int half_width, int order) {
  TruncationSpec s;
  s.order = order;
  s.window[VarId::w()] = {-half_width, half_width};
  for (int i = 1; i <= num_z; ++i)
    s.window[VarId::z(i)] = {-half_width, half_width};
  s.validate();
  return s;
}

void TruncationSpec::validate() const {
  if (order < 0)
    throw ArgumentError("q-order T must be >= 0");
  for (const auto &[v, lh] : window)
    if (lh.first > lh.second)
      throw ArgumentError("empty window for " + v.name());
}

bool TruncationSpec::contains(const ExponentVector &e) const {
  for (int s = 1; s < kSlots; ++s) {
    VarId v = VarId::from_slot(s);
    auto it = window.find(v);
    int x = e.slot(s);
    if (it == window.end()) {
      if (x != 0)
        return false;
    } else if (x < it->second.first || x > it->second.second) {
      return false;
    }
  }
  return true;
}

TruncationSpec TruncationSpec::shrunk(int margin) const {
  TruncationSpec s = *this;
  for (auto &[v, lh] : s.window) {
    lh.first += margin;
    lh.second -= margin;
  }
  return s;
}

bool TruncationSpec::empty() const {
  return std::any_of(window.begin(), window.end(), [](const auto &kv) {
    return kv.second.first > kv.second.second;
  });
}

std::string CoeffSeries::to_string() const {
  std::string v = value.is_zero() ? std::string("0") : value.to_string();
  return v + " + O(q^" + std::to_string(-accuracy - 1) + ")";
}

QScalar TruncatedSeries::coefficient(const ExponentVector &e) const {
  auto it = coeffs.find(e);
  return it == coeffs.end() ? QScalar() : it->second;
}

void TruncatedSeries::add(const ExponentVector &e, const QScalar &c) {
  QScalar t = c.truncated_below(-order);
  if (t.is_zero())
    return;
  auto [it, inserted] = coeffs.try_emplace(e, t);
  if (!inserted) {
    it->second += t;
    if (it->second.is_zero())
      coeffs.erase(it);
  }
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries &o) const {
  TruncatedSeries r;
  r.order = std::min(order, o.order);
  for (const auto &[e, c] : coeffs)
    r.add(e, c);
  for (const auto &[e, c] : o.coeffs)
    r.add(e, c);
  return r;
}

TruncatedSeries TruncatedSeries::negated() const {
  TruncatedSeries r = *this;
  for (auto &[e, c] : r.coeffs)
    c = -c;
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries &o) const {
  return *this + o.negated();
}

TruncatedSeries TruncatedSeries::times(const LaurentPoly &p,
                                       const TruncationSpec &spec) const {
  TruncatedSeries r;
  r.order = order;
  for (const auto &[e, c] : coeffs) {
    for (const auto &t : p.terms()) {
      ExponentVector wz = t.exponents;
      int qe = wz[VarId::q()];
      wz.set(VarId::q(), 0);
      ExponentVector key = e + wz;
      if (!spec.contains(key))
        continue;
      r.add(key, c.shifted(qe) * QScalar(t.coeff));
    }
  }
  return r;
}

bool TruncatedSeries::agrees_with(const TruncatedSeries &o,
                                  const TruncationSpec &region) const {
  const int lowest = -std::min(order, o.order);
  std::set<ExponentVector> keys;
  for (const auto &[e, c] : coeffs)
    keys.insert(e);
  for (const auto &[e, c] : o.coeffs)
    keys.insert(e);
  for (const auto &e : keys) {
    if (!region.contains(e))
      continue;
    if (coefficient(e).truncated_below(lowest) !=
        o.coefficient(e).truncated_below(lowest))
      return false;
  }
  return true;
}

std::string TruncatedSeries::dump() const {
  std::string out;
  for (const auto &[e, c] : coeffs) {
    std::string mono = exponent_text(e);
    out += (mono.empty() ? std::string("1") : mono) + " : " +
           CoeffSeries{c, order}.to_string() + "\n";
  }
  return out;
}

namespace {

std::pair<int, int> window_of(const TruncationSpec &spec, VarId v) {
  auto it = spec.window.find(v);
  if (it == spec.window.end())
    throw ArgumentError("truncation window does not cover " + v.name());
  return it->second;
}

// Adds lead^{-n-1} sub^n for n in [lo, hi] (as a and b of a bilateral or
// one-sided sum).
void add_geometric(TruncatedSeries &out, const MonomialRef &a,
                   const MonomialRef &b, long lo, long hi) {
  for (long n = lo; n <= hi; ++n) {
    ExponentVector e;
    e.add(a.var, static_cast<int>(-n - 1));
    e.add(b.var, static_cast<int>(n));
    long qe = -static_cast<long>(a.q_power) * (n + 1) +
              static_cast<long>(b.q_power) * n;
    out.add(e, QScalar::monomial(static_cast<int>(qe)));
  }
}

} // namespace

TruncatedSeries expand_inverse(const DirectedInverse &f,
                               const TruncationSpec &spec) {
  f.validate();
  spec.validate();
  auto [llo, lhi] = window_of(spec, f.lead.var);
  auto [slo, shi] = window_of(spec, f.sub.var);
  TruncatedSeries out;
  out.order = spec.order;
  // n >= 0, n in the sub window, -n-1 in the lead window.
  long lo = std::max<long>({0, slo, -static_cast<long>(lhi) - 1});
  long hi = std::min<long>(shi, -static_cast<long>(llo) - 1);
  add_geometric(out, f.lead, f.sub, lo, hi);
  return out;
}

TruncatedSeries expand_delta(const DeltaFactor &d, const TruncationSpec &spec) {
  d.validate();
  spec.validate();
  auto [alo, ahi] = window_of(spec, d.a.var);
  auto [blo, bhi] = window_of(spec, d.b.var);
  TruncatedSeries out;
  out.order = spec.order;
  long lo = std::max<long>(blo, -static_cast<long>(ahi) - 1);
  long hi = std::min<long>(bhi, -static_cast<long>(alo) - 1);
  add_geometric(out, d.a, d.b, lo, hi);
  return out;
}

std::pair<DirectedInverse, DeltaFactor>
reexpand_split(const DirectedInverse &f) {
  f.validate();
  return {DirectedInverse{f.sub, f.lead}, DeltaFactor{f.sub, f.lead}};
}

bool delta_property_check(const LaurentPoly &f, VarId z, VarId w,
                          const TruncationSpec &spec) {
  int reach = 0;
  std::vector<LaurentPoly::Term> moved;
  for (const auto &t : f.terms()) {
    for (int s = 1; s < kSlots; ++s)
      if (s != z.slot() && t.exponents.slot(s) != 0)
        throw ArgumentError("delta property check needs f in " + z.name() +
                            " only");
    int e = t.exponents[z];
    reach = std::max(reach, std::abs(e));
    ExponentVector m = t.exponents;
    m.set(z, 0);
    m.set(w, e);
    moved.push_back({m, t.coeff});
  }
  LaurentPoly fw = LaurentPoly::from_terms(f.num_z(), std::move(moved));
  TruncatedSeries delta = expand_delta(DeltaFactor{mref(z), mref(w)}, spec);
  TruncatedSeries lhs = delta.times(f, spec);
  TruncatedSeries rhs = delta.times(fw, spec);
  return lhs.agrees_with(rhs, spec.shrunk(reach));
}

bool delta_property_check(const LaurentPoly &f, const TruncationSpec &spec) {
  return delta_property_check(f, VarId::z(1), VarId::w(), spec);
}

} // namespace qident
