#pragma once

#include <cstdint>
#include <map>

#include "qident/laurent.hpp"

namespace qident {

/// Evaluation failures in the prime field (zero raised to a negative power,
/// missing assignment).
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// 2^61 - 1, the default modulus for probabilistic zero tests.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Arithmetic in Z/pZ for a prime p < 2^63.
class PrimeField {
public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t reduce(const mpz_class &v) const;
  std::uint64_t reduce(std::int64_t v) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b %
                                      p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Inverse of a nonzero element.
  std::uint64_t inv(std::uint64_t a) const;
  /// a^e for a signed exponent; throws EvaluationError for 0^negative.
  std::uint64_t signed_pow(std::uint64_t a, std::int64_t e) const;

private:
  std::uint64_t p_;
};

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Residue of a at the assignment. Every variable occurring in a must be
/// assigned; a variable with a negative exponent must be nonzero mod p.
std::uint64_t eval_mod_p(const LaurentPoly &a,
                         const std::map<VarId, std::uint64_t> &assignment,
                         std::uint64_t p);

} // namespace qident
