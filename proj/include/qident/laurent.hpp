#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace qident {

/// Raised when operands live in different variable contexts (different
/// number of z-variables) or a permutation has the wrong degree.
class ContextError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments to a public operation (out-of-range index, malformed text).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Largest supported number of z-variables.
inline constexpr int kMaxZ = 10;
/// Exponent slots: q, w, z1 .. z_kMaxZ.
inline constexpr int kSlots = kMaxZ + 2;

/// A variable symbol: q, w or z_i (i >= 1).
struct VarId {
  enum class Kind : std::uint8_t { Q, W, Z };

  Kind kind = Kind::Q;
  int index = 0;

  static constexpr VarId q() { return {Kind::Q, 0}; }
  static constexpr VarId w() { return {Kind::W, 0}; }
  static VarId z(int i);

  /// Position in an ExponentVector: q -> 0, w -> 1, z_i -> i + 1.
  constexpr int slot() const {
    switch (kind) {
    case Kind::Q:
      return 0;
    case Kind::W:
      return 1;
    default:
      return index + 1;
    }
  }
  static VarId from_slot(int slot);

  std::string name() const;

  auto operator<=>(const VarId &) const = default;
};

/// Exponents of q, w, z1..z_kMaxZ. Absent variables have exponent 0, so the
/// fixed-width array is already canonical; comparison is lexicographic on
/// (q, w, z1, z2, ...).
class ExponentVector {
public:
  ExponentVector() = default;

  int operator[](VarId v) const { return exps_[v.slot()]; }
  int slot(int s) const { return exps_[s]; }
  void set(VarId v, int e) { exps_[v.slot()] = e; }
  void add(VarId v, int e) { exps_[v.slot()] += e; }
  void set_slot(int s, int e) { exps_[s] = e; }

  bool is_constant() const;
  /// Sum of the exponents of w and all z's.
  int total_degree_wz() const;

  ExponentVector operator+(const ExponentVector &o) const;
  ExponentVector operator-(const ExponentVector &o) const;
  ExponentVector &operator+=(const ExponentVector &o);

  std::span<const std::int32_t, kSlots> raw() const { return exps_; }

  std::size_t hash() const;

  auto operator<=>(const ExponentVector &) const = default;

private:
  std::array<std::int32_t, kSlots> exps_{};
};

struct ExponentHash {
  std::size_t operator()(const ExponentVector &e) const { return e.hash(); }
};

/// Exact sparse Laurent polynomial in q, w, z1..zn with integer coefficients.
///
/// Terms are kept sorted by the monomial order of ExponentVector and never
/// carry a zero coefficient, so structural equality is polynomial equality.
/// The context n (number of z-variables) is part of the value; mixing
/// contexts throws ContextError.
class LaurentPoly {
public:
  struct Term {
    ExponentVector exponents;
    mpz_class coeff;

    bool operator==(const Term &o) const {
      return exponents == o.exponents && coeff == o.coeff;
    }
  };

  using Accumulator =
      std::unordered_map<ExponentVector, mpz_class, ExponentHash>;

  explicit LaurentPoly(int num_z = 0);

  static LaurentPoly constant(int num_z, const mpz_class &c);
  static LaurentPoly monomial(int num_z, const ExponentVector &e,
                              const mpz_class &c = 1);
  static LaurentPoly variable(int num_z, VarId v, int power = 1);
  /// Builds a canonical polynomial from an unsorted accumulator.
  static LaurentPoly from_accumulator(int num_z, Accumulator &&acc);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static LaurentPoly from_terms(int num_z, std::vector<Term> terms);

  int num_z() const { return num_z_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of one monomial (0 when absent).
  mpz_class coefficient(const ExponentVector &e) const;

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly &o) const;
  LaurentPoly operator-(const LaurentPoly &o) const;
  LaurentPoly operator*(const LaurentPoly &o) const;
  LaurentPoly &operator+=(const LaurentPoly &o);
  LaurentPoly &operator-=(const LaurentPoly &o);
  LaurentPoly &operator*=(const LaurentPoly &o);

  LaurentPoly scaled(const mpz_class &c) const;
  /// Multiplies by a monomial (exponent shift).
  LaurentPoly shifted(const ExponentVector &e) const;

  /// The same polynomial viewed in a context with more z-variables.
  LaurentPoly in_context(int num_z) const;

  /// Coefficient of v^e, a polynomial not involving v.
  LaurentPoly coeff_of_power(VarId v, int e) const;

  /// Smallest and largest exponent of v over all terms ({0,0} for zero).
  std::pair<int, int> degree_range(VarId v) const;

  /// Substitutes q -> q^{-1}.
  LaurentPoly q_inverted() const;

  /// True when only q (or nothing) occurs.
  bool is_q_only() const;

  /// Canonical text: terms in monomial order joined by " + ", each term
  /// "<coef> q^<a> w^<b> z1^<c1> ..." with zero exponents omitted; "0"
  /// for the zero polynomial.
  std::string to_string() const;
  static LaurentPoly parse(std::string_view text, int num_z);

  bool operator==(const LaurentPoly &o) const;

private:
  void check_context(const LaurentPoly &o) const;

  int num_z_ = 0;
  std::vector<Term> terms_;
};

LaurentPoly operator*(const mpz_class &c, const LaurentPoly &p);

/// Shorthand for c * var^power in context num_z.
LaurentPoly make_monomial(int num_z, long c,
                          std::initializer_list<std::pair<VarId, int>> powers);

/// Renders a single monomial's exponent part ("q^2 z1^-1"), empty for 1.
std::string exponent_text(const ExponentVector &e);

} // namespace qident
