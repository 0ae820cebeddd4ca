#include "qident/laurent.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qident {

VarId VarId::z(int i) {
  if (i < 1 || i > kMaxZ)
    throw ArgumentError("z index out of range: " + std::to_string(i));
  return {Kind::Z, i};
}

VarId VarId::from_slot(int slot) {
  if (slot == 0)
    return q();
  if (slot == 1)
    return w();
  return z(slot - 1);
}

std::string VarId::name() const {
  switch (kind) {
  case Kind::Q:
    return "q";
  case Kind::W:
    return "w";
  default:
    return "z" + std::to_string(index);
  }
}

bool ExponentVector::is_constant() const {
  return std::all_of(exps_.begin(), exps_.end(),
                     [](std::int32_t e) { return e == 0; });
}

int ExponentVector::total_degree_wz() const {
  int s = 0;
  for (int i = 1; i < kSlots; ++i)
    s += exps_[i];
  return s;
}

ExponentVector ExponentVector::operator+(const ExponentVector &o) const {
  ExponentVector r = *this;
  r += o;
  return r;
}

ExponentVector ExponentVector::operator-(const ExponentVector &o) const {
  ExponentVector r;
  for (int i = 0; i < kSlots; ++i)
    r.exps_[i] = exps_[i] - o.exps_[i];
  return r;
}

ExponentVector &ExponentVector::operator+=(const ExponentVector &o) {
  for (int i = 0; i < kSlots; ++i)
    exps_[i] += o.exps_[i];
  return *this;
}

std::size_t ExponentVector::hash() const {
  // 64-bit FNV-1a over the exponent words.
  std::uint64_t h = 14695981039346656037ull;
  for (std::int32_t e : exps_) {
    h ^= static_cast<std::uint32_t>(e);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::string exponent_text(const ExponentVector &e) {
  std::string out;
  for (int s = 0; s < kSlots; ++s) {
    if (e.slot(s) == 0)
      continue;
    if (!out.empty())
      out += ' ';
    out += VarId::from_slot(s).name();
    out += '^';
    out += std::to_string(e.slot(s));
  }
  return out;
}

namespace {

bool term_less(const LaurentPoly::Term &a, const LaurentPoly::Term &b) {
  return a.exponents < b.exponents;
}

void check_fits(int num_z, const ExponentVector &e) {
  for (int s = num_z + 2; s < kSlots; ++s)
    if (e.slot(s) != 0)
      throw ContextError("monomial uses z" + std::to_string(s - 1) +
                         " outside a context of " + std::to_string(num_z) +
                         " z-variables");
}

} // namespace

LaurentPoly::LaurentPoly(int num_z) : num_z_(num_z) {
  if (num_z < 0 || num_z > kMaxZ)
    throw ContextError("unsupported number of z-variables: " +
                       std::to_string(num_z));
}

LaurentPoly LaurentPoly::constant(int num_z, const mpz_class &c) {
  return monomial(num_z, ExponentVector{}, c);
}

LaurentPoly LaurentPoly::monomial(int num_z, const ExponentVector &e,
                                  const mpz_class &c) {
  LaurentPoly p(num_z);
  check_fits(num_z, e);
  if (c != 0)
    p.terms_.push_back({e, c});
  return p;
}

LaurentPoly LaurentPoly::variable(int num_z, VarId v, int power) {
  ExponentVector e;
  e.set(v, power);
  return monomial(num_z, e, 1);
}

LaurentPoly LaurentPoly::from_accumulator(int num_z, Accumulator &&acc) {
  LaurentPoly p(num_z);
  p.terms_.reserve(acc.size());
  for (auto &[e, c] : acc) {
    if (c == 0)
      continue;
    check_fits(num_z, e);
    p.terms_.push_back({e, std::move(c)});
  }
  std::sort(p.terms_.begin(), p.terms_.end(), term_less);
  return p;
}

LaurentPoly LaurentPoly::from_terms(int num_z, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  LaurentPoly p(num_z);
  for (auto &t : terms) {
    check_fits(num_z, t.exponents);
    if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0)
        p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

mpz_class LaurentPoly::coefficient(const ExponentVector &e) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), e,
      [](const Term &t, const ExponentVector &x) { return t.exponents < x; });
  if (it != terms_.end() && it->exponents == e)
    return it->coeff;
  return 0;
}

void LaurentPoly::check_context(const LaurentPoly &o) const {
  if (num_z_ != o.num_z_)
    throw ContextError("variable context mismatch: " + std::to_string(num_z_) +
                       " vs " + std::to_string(o.num_z_) + " z-variables");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto &t : r.terms_)
    t.coeff = -t.coeff;
  return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly &o) const {
  check_context(o);
  LaurentPoly r(num_z_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae && b != be) {
    if (a->exponents < b->exponents) {
      r.terms_.push_back(*a++);
    } else if (b->exponents < a->exponents) {
      r.terms_.push_back(*b++);
    } else {
      mpz_class c = a->coeff + b->coeff;
      if (c != 0)
        r.terms_.push_back({a->exponents, std::move(c)});
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, ae);
  r.terms_.insert(r.terms_.end(), b, be);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly &o) const {
  return *this + (-o);
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly &o) const {
  check_context(o);
  if (terms_.empty() || o.terms_.empty())
    return LaurentPoly(num_z_);
  if (o.terms_.size() == 1 && o.terms_[0].coeff == 1)
    return shifted(o.terms_[0].exponents);
  if (terms_.size() == 1 && terms_[0].coeff == 1)
    return o.shifted(terms_[0].exponents);
  Accumulator acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 16);
  mpz_class prod;
  for (const auto &ta : terms_) {
    for (const auto &tb : o.terms_) {
      mpz_mul(prod.get_mpz_t(), ta.coeff.get_mpz_t(), tb.coeff.get_mpz_t());
      acc[ta.exponents + tb.exponents] += prod;
    }
  }
  return from_accumulator(num_z_, std::move(acc));
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
  *this = *this + o;
  return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o) {
  *this = *this - o;
  return *this;
}

LaurentPoly &LaurentPoly::operator*=(const LaurentPoly &o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::scaled(const mpz_class &c) const {
  if (c == 0)
    return LaurentPoly(num_z_);
  LaurentPoly r = *this;
  for (auto &t : r.terms_)
    t.coeff *= c;
  return r;
}

LaurentPoly LaurentPoly::shifted(const ExponentVector &e) const {
  check_fits(num_z_, e);
  LaurentPoly r = *this;
  // A uniform shift preserves the lexicographic order.
  for (auto &t : r.terms_)
    t.exponents += e;
  return r;
}

LaurentPoly LaurentPoly::in_context(int num_z) const {
  LaurentPoly r(num_z);
  for (const auto &t : terms_)
    check_fits(num_z, t.exponents);
  r.terms_ = terms_;
  return r;
}

LaurentPoly LaurentPoly::coeff_of_power(VarId v, int e) const {
  std::vector<Term> out;
  for (const auto &t : terms_) {
    if (t.exponents[v] != e)
      continue;
    Term u = t;
    u.exponents.set(v, 0);
    out.push_back(std::move(u));
  }
  return from_terms(num_z_, std::move(out));
}

std::pair<int, int> LaurentPoly::degree_range(VarId v) const {
  if (terms_.empty())
    return {0, 0};
  int lo = terms_.front().exponents[v], hi = lo;
  for (const auto &t : terms_) {
    lo = std::min(lo, t.exponents[v]);
    hi = std::max(hi, t.exponents[v]);
  }
  return {lo, hi};
}

LaurentPoly LaurentPoly::q_inverted() const {
  std::vector<Term> out = terms_;
  for (auto &t : out)
    t.exponents.set(VarId::q(), -t.exponents[VarId::q()]);
  return from_terms(num_z_, std::move(out));
}

bool LaurentPoly::is_q_only() const {
  for (const auto &t : terms_)
    for (int s = 1; s < kSlots; ++s)
      if (t.exponents.slot(s) != 0)
        return false;
  return true;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i)
      out += " + ";
    out += terms_[i].coeff.get_str();
    std::string ex = exponent_text(terms_[i].exponents);
    if (!ex.empty()) {
      out += ' ';
      out += ex;
    }
  }
  return out;
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ArgumentError("malformed exponent in '" + std::string(whole) + "'");
  return v;
}

VarId parse_var(std::string_view s, std::string_view whole) {
  if (s == "q")
    return VarId::q();
  if (s == "w")
    return VarId::w();
  if (s.size() >= 2 && s[0] == 'z')
    return VarId::z(parse_int(s.substr(1), whole));
  throw ArgumentError("unknown variable '" + std::string(s) + "' in '" +
                      std::string(whole) + "'");
}

} // namespace

LaurentPoly LaurentPoly::parse(std::string_view text, int num_z) {
  std::vector<Term> terms;
  std::istringstream in{std::string(text)};
  std::string tok;
  bool expect_coeff = true;
  bool first = true;
  while (in >> tok) {
    if (tok == "+") {
      if (expect_coeff)
        throw ArgumentError("dangling '+' in '" + std::string(text) + "'");
      expect_coeff = true;
      continue;
    }
    if (expect_coeff) {
      Term t;
      if (t.coeff.set_str(tok, 10) != 0)
        throw ArgumentError("malformed coefficient '" + tok + "'");
      terms.push_back(std::move(t));
      expect_coeff = false;
      first = false;
      continue;
    }
    auto caret = tok.find('^');
    if (caret == std::string::npos)
      throw ArgumentError("expected var^exp, got '" + tok + "'");
    VarId v = parse_var(std::string_view(tok).substr(0, caret), text);
    if (v.kind == VarId::Kind::Z && v.index > num_z)
      throw ContextError("variable " + v.name() + " outside context");
    terms.back().exponents.add(
        v, parse_int(std::string_view(tok).substr(caret + 1), text));
  }
  if (first || expect_coeff)
    throw ArgumentError("empty or truncated polynomial text '" +
                        std::string(text) + "'");
  return from_terms(num_z, std::move(terms));
}

bool LaurentPoly::operator==(const LaurentPoly &o) const {
  return num_z_ == o.num_z_ && terms_ == o.terms_;
}

LaurentPoly operator*(const mpz_class &c, const LaurentPoly &p) {
  return p.scaled(c);
}

LaurentPoly make_monomial(int num_z, long c,
                          std::initializer_list<std::pair<VarId, int>> powers) {
  ExponentVector e;
  for (auto [v, k] : powers)
    e.add(v, k);
  return LaurentPoly::monomial(num_z, e, c);
}

} // namespace qident
