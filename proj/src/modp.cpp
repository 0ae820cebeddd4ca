#include "qident/modp.hpp"

#include <array>

namespace qident {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (std::uint64_t{1} << 63) || !is_prime(p))
    throw ArgumentError("modulus must be a prime below 2^63: " +
                        std::to_string(p));
}

std::uint64_t PrimeField::reduce(const mpz_class &v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
  return r.get_ui();
}

std::uint64_t PrimeField::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p_)
                                          : r);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1)
      r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0)
    throw EvaluationError("inverse of zero");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::signed_pow(std::uint64_t a, std::int64_t e) const {
  if (e >= 0)
    return pow(a, static_cast<std::uint64_t>(e));
  if (a % p_ == 0)
    throw EvaluationError("zero raised to a negative power");
  return pow(inv(a), static_cast<std::uint64_t>(-e));
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0)
      return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b %
                                      n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1)
        r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  // This witness set is exact for all 64-bit integers.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

std::uint64_t eval_mod_p(const LaurentPoly &a,
                         const std::map<VarId, std::uint64_t> &assignment,
                         std::uint64_t p) {
  PrimeField f(p);
  std::array<std::uint64_t, kSlots> value{};
  std::array<bool, kSlots> assigned{};
  for (const auto &[v, x] : assignment) {
    value[v.slot()] = x % p;
    assigned[v.slot()] = true;
  }
  std::uint64_t sum = 0;
  for (const auto &t : a.terms()) {
    std::uint64_t term = f.reduce(t.coeff);
    for (int s = 0; s < kSlots; ++s) {
      int e = t.exponents.slot(s);
      if (e == 0)
        continue;
      if (!assigned[s])
        throw EvaluationError("no value assigned to " +
                              VarId::from_slot(s).name());
      if (e < 0 && value[s] == 0)
        throw EvaluationError("zero assigned to " + VarId::from_slot(s).name() +
                              " which occurs with a negative exponent");
      term = f.mul(term, f.signed_pow(value[s], e));
    }
    sum = f.add(sum, term);
  }
  return sum;
}

} // namespace qident
