#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qident/distribution.hpp"

namespace qident {

/// One rewrite round of the proof replay. Every input term has a pivot
/// variable; each directed inverse with the pivot as its subordinate side is
/// re-expanded (1/(A - x) = -1/(x - A) + delta(x, A)). The all-flipped product
/// is the delta-free part; every other piece carries one new delta, which is
/// used to eliminate the pivot from the remaining factors.
struct ProofStage {
  int index = 0;
  std::string action;
  std::size_t input_terms = 0;
  std::size_t targets_checked = 0;
  /// Targets at which the delta-free part has a nonzero coefficient.
  std::size_t free_nonzero = 0;
  /// input == free part + delta parts on every checked target.
  bool reversible = true;
  std::vector<DistTerm> free_part;
  std::vector<DistTerm> delta_part;
  /// Pivot of each delta-part term for the next round.
  std::vector<VarId> next_pivots;
};

struct ReplayResult {
  std::vector<ProofStage> stages;
  /// Terms left after the last round; all factors but the delta chain
  /// should have cancelled in their sum.
  std::vector<DistTerm> final_terms;
  VerifyReport report;
};

/// Splits one term at its pivot (see ProofStage). Exposed for testing.
struct SplitResult {
  DistTerm free_part;
  std::vector<DistTerm> delta_parts;
  std::vector<VarId> next_pivots;
};
SplitResult split_at_pivot(const DistTerm &term, VarId pivot);

/// Replays the proof rewriting of the distribution identity: m + 1 rounds
/// starting from the left side with pivot w, each checked for a vanishing
/// delta-free part and for reversibility, then the final terms are compared
/// with the right side. Requires m >= 1.
ReplayResult proof_replay(int m, const TruncationSpec &spec, int threads = 1);

/// Weight attached to the k-th summand of X_{1,w}; the default is
/// q^{m(k-1)}.
using PropWeight = std::function<QScalar(int m, int k)>;

/// The polynomial obtained from X_{1,w} by multiplying with the symmetric
/// common denominator; X_{1,w} vanishes iff this polynomial does.
LaurentPoly prop_2_1_cleared(int m, const PropWeight &weight = {});

/// Exact check that the delta coefficient X_{1,w} left after the first
/// rewriting round vanishes (1 <= m <= 3).
VerifyReport verify_prop_2_1(int m, const PropWeight &weight = {});

} // namespace qident
