#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qident {

enum class Verdict { Zero, Nonzero };

std::string to_string(Verdict v);

/// Machine-readable outcome of one verification run.
///
/// `verdict == Zero` exactly when `residual` is empty. Parameters that do
/// not apply to a mode stay at their defaults and are left out of the JSON.
struct VerifyReport {
  std::string identity;
  int m = 0;
  std::string mode;
  Verdict verdict = Verdict::Zero;
  /// Serialized nonzero residual terms or coefficient mismatches.
  std::vector<std::string> residual;
  /// Number of residual entries (may exceed residual.size() when capped).
  std::size_t residual_terms = 0;
  std::uint64_t summand_count = 0;
  double elapsed_ms = 0.0;

  // Distribution-mode parameters.
  int window = 0;
  int order = -1;
  // Modular-mode parameters.
  std::uint64_t prime = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  /// Free-form extra fields (fitted scalar, stage list, term counts...).
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool is_zero() const { return verdict == Verdict::Zero; }

  /// Stable JSON shape. Timing is excluded when include_timing is false so
  /// that reports can be compared byte for byte.
  nlohmann::ordered_json to_json(bool include_timing = true) const;
  /// One line (or indented when pretty) ending without a newline.
  std::string serialize(bool pretty = false, bool include_timing = true) const;
};

/// Keeps at most this many residual strings in a report.
inline constexpr std::size_t kResidualCap = 64;

/// Sets verdict/residual from the full list of residual entries, which the
/// caller supplies in a deterministic order.
void set_residual(VerifyReport &report, std::vector<std::string> entries);

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

} // namespace qident
