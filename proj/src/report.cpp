#include "qident/report.hpp"

#include <cmath>

namespace qident {

std::string to_string(Verdict v) {
  return v == Verdict::Zero ? "zero" : "nonzero";
}

nlohmann::ordered_json VerifyReport::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["identity"] = identity;
  j["m"] = m;
  j["mode"] = mode;
  j["verdict"] = to_string(verdict);
  j["residual_terms"] = residual_terms;
  j["summand_count"] = summand_count;
  if (include_timing)
    j["elapsed_ms"] = std::round(elapsed_ms * 1000.0) / 1000.0;
  if (window > 0)
    j["window"] = window;
  if (order >= 0)
    j["order"] = order;
  if (prime != 0) {
    j["prime"] = prime;
    j["trials"] = trials;
    j["seed"] = seed;
  }
  if (!residual.empty())
    j["residual"] = residual;
  for (const auto &[k, v] : extra.items())
    j[k] = v;
  return j;
}

std::string VerifyReport::serialize(bool pretty, bool include_timing) const {
  return to_json(include_timing).dump(pretty ? 2 : -1);
}

void set_residual(VerifyReport &report, std::vector<std::string> entries) {
  report.residual_terms = entries.size();
  report.verdict = entries.empty() ? Verdict::Zero : Verdict::Nonzero;
  if (entries.size() > kResidualCap)
    entries.resize(kResidualCap);
  report.residual = std::move(entries);
}

} // namespace qident
