#include "qident/replay.hpp"

#include <algorithm>

#include "qident/parallel.hpp"

namespace qident {

namespace {

// Substitutes x := q^shift y everywhere except in the deltas, which stay as
// they are (f(x) delta(x, y) = f(y) delta(x, y)).
DistTerm substitute_outside_deltas(const DistTerm &t, VarId x, int shift,
                                   VarId y) {
  DistTerm bare = t;
  bare.deltas.clear();
  DistTerm r = bare.substituted(x, shift, y);
  r.deltas = t.deltas;
  return r;
}

int stage_margin(std::initializer_list<const std::vector<DistTerm> *> lists) {
  int margin = 0;
  for (const auto *l : lists)
    margin = std::max(margin, numerator_margin(*l));
  return margin;
}

TruncationSpec interior_of(const TruncationSpec &spec, int margin) {
  TruncationSpec interior = spec.shrunk(margin);
  if (interior.empty())
    throw ArgumentError("window too small: interior region is empty after "
                        "shrinking by the numerator margin " +
                        std::to_string(margin));
  return interior;
}

std::vector<ExponentVector> interior_targets(const TruncationSpec &spec,
                                             int margin, int degree) {
  auto targets = region_targets(interior_of(spec, margin), degree);
  if (targets.empty())
    throw ArgumentError("window too small: no interior monomial of degree " +
                        std::to_string(degree));
  return targets;
}

} // namespace

SplitResult split_at_pivot(const DistTerm &term, VarId pivot) {
  std::vector<std::size_t> flip;
  for (std::size_t i = 0; i < term.inverses.size(); ++i)
    if (term.inverses[i].sub.var == pivot)
      flip.push_back(i);

  SplitResult out;
  out.free_part = term;
  for (std::size_t i : flip) {
    out.free_part.inverses[i] = reexpand_split(term.inverses[i]).first;
    out.free_part.scalar = -out.free_part.scalar;
  }

  // prod O_i = prod(-F_i) + sum_l prod_{i<l}(-F_i) delta_l prod_{i>l} O_i
  for (std::size_t l = 0; l < flip.size(); ++l) {
    DistTerm t = term;
    for (std::size_t i = 0; i < l; ++i) {
      t.inverses[flip[i]] = reexpand_split(term.inverses[flip[i]]).first;
      t.scalar = -t.scalar;
    }
    DeltaFactor d = reexpand_split(term.inverses[flip[l]]).second;
    t.inverses.erase(t.inverses.begin() + static_cast<long>(flip[l]));
    t.deltas.push_back(d);
    // d = delta(q^a pivot, q^b y): pivot := q^{b-a} y.
    t = substitute_outside_deltas(t, d.a.var, d.b.q_power - d.a.q_power,
                                  d.b.var);
    t.cancel_common_factors();
    out.delta_parts.push_back(std::move(t));
    out.next_pivots.push_back(d.b.var);
  }
  return out;
}

ReplayResult proof_replay(int m, const TruncationSpec &spec, int threads) {
  if (m < 1)
    throw ArgumentError("proof replay needs m >= 1");
  spec.validate();
  Stopwatch clock;
  ReplayResult result;
  std::vector<std::string> residual;

  std::vector<DistTerm> current = build_lhs_13(m);
  std::vector<VarId> pivots(current.size(), VarId::w());
  const std::size_t lhs_size = current.size();
  const int degree = -(m + 1);

  for (int round = 1; round <= m + 1; ++round) {
    ProofStage stage;
    stage.index = round;
    stage.action = round == 1 ? "re-expand inverses with w subordinate"
                              : "re-expand inverses with the last identified "
                                "z subordinate";
    stage.input_terms = current.size();
    for (std::size_t i = 0; i < current.size(); ++i) {
      SplitResult s = split_at_pivot(current[i], pivots[i]);
      if (!s.free_part.is_zero())
        stage.free_part.push_back(std::move(s.free_part));
      for (std::size_t j = 0; j < s.delta_parts.size(); ++j) {
        if (s.delta_parts[j].is_zero())
          continue;
        stage.delta_part.push_back(std::move(s.delta_parts[j]));
        stage.next_pivots.push_back(s.next_pivots[j]);
      }
    }

    auto targets = interior_targets(
        spec, stage_margin({&current, &stage.free_part, &stage.delta_part}),
        degree);
    auto in_c = compile_terms(current, threads);
    auto free_c = compile_terms(stage.free_part, threads);
    auto delta_c = compile_terms(stage.delta_part, threads);
    std::vector<QScalar> in_v(targets.size()), free_v(targets.size()),
        delta_v(targets.size());
    parallel_for(targets.size(), threads, [&](std::size_t i) {
      in_v[i] = sum_coefficient(in_c, targets[i], spec.order);
      free_v[i] = sum_coefficient(free_c, targets[i], spec.order);
      delta_v[i] = sum_coefficient(delta_c, targets[i], spec.order);
    });
    stage.targets_checked = targets.size();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (!free_v[i].is_zero()) {
        ++stage.free_nonzero;
        residual.push_back("stage " + std::to_string(round) +
                           ": delta-free part at " + exponent_text(targets[i]) +
                           ": " + CoeffSeries{free_v[i], spec.order}.to_string());
      }
      if (in_v[i] != free_v[i] + delta_v[i]) {
        stage.reversible = false;
        residual.push_back("stage " + std::to_string(round) +
                           ": split not reversible at " +
                           exponent_text(targets[i]));
      }
    }
    current = stage.delta_part;
    pivots = stage.next_pivots;
    result.stages.push_back(std::move(stage));
  }

  // Final comparison against the right side.
  result.final_terms = current;
  auto rhs_terms = build_rhs_13(m);
  auto targets =
      interior_targets(spec, stage_margin({&current, &rhs_terms}), degree);
  auto fin_c = compile_terms(current, threads);
  auto rhs_c = compile_terms(rhs_terms, threads);
  std::vector<std::pair<QScalar, QScalar>> values(targets.size());
  parallel_for(targets.size(), threads, [&](std::size_t i) {
    values[i] = {sum_coefficient(fin_c, targets[i], spec.order),
                 sum_coefficient(rhs_c, targets[i], spec.order)};
  });
  std::size_t final_mismatches = 0;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (values[i].first != values[i].second) {
      ++final_mismatches;
      residual.push_back("final: " + exponent_text(targets[i]) + ": replay " +
                         CoeffSeries{values[i].first, spec.order}.to_string() +
                         " rhs " +
                         CoeffSeries{values[i].second, spec.order}.to_string());
    }

  VerifyReport &report = result.report;
  report.identity = "proof-replay";
  report.m = m;
  report.mode = "replay";
  report.window = spec.window.begin()->second.second;
  report.order = spec.order;
  report.summand_count = lhs_size;

  bool stages_ok = true;
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const auto &s : result.stages) {
    stages_ok = stages_ok && s.free_nonzero == 0 && s.reversible;
    nlohmann::ordered_json j;
    j["stage"] = s.index;
    j["action"] = s.action;
    j["input_terms"] = s.input_terms;
    j["free_terms"] = s.free_part.size();
    j["delta_terms"] = s.delta_part.size();
    j["targets_checked"] = s.targets_checked;
    j["free_nonzero"] = s.free_nonzero;
    j["reversible"] = s.reversible;
    stages.push_back(std::move(j));
  }
  set_residual(report, std::move(residual));
  report.extra["stage_count"] = result.stages.size() + 1;
  report.extra["stages"] = stages;
  report.extra["stages_clean"] = stages_ok;
  report.extra["final_terms"] = current.size();
  report.extra["final_targets_checked"] = targets.size();
  report.extra["final_matches_rhs"] = final_mismatches == 0;
  if (final_mismatches != 0) {
    auto [c, miss] = fit_q_power(values, spec.order);
    report.extra["fitted_scalar"] = QScalar::monomial(c).to_string();
    report.extra["fitted_exponent"] = c;
    report.extra["fitted_mismatches"] = miss;
  }
  report.elapsed_ms = clock.elapsed_ms();
  return result;
}

// ---------------------------------------------------------------------------
// X_{1,w}

namespace {

LaurentPoly lin(int n, VarId a, int qa, VarId b, int qb) {
  return make_monomial(n, 1, {{a, 1}, {VarId::q(), qa}}) +
         make_monomial(n, -1, {{b, 1}, {VarId::q(), qb}});
}

} // namespace

LaurentPoly prop_2_1_cleared(int m, const PropWeight &weight) {
  if (m < 1 || m > 3)
    throw ArgumentError("X_{1,w} check supports 1 <= m <= 3");
  const int n = m + 1;
  const VarId z1 = VarId::z(1);

  // Pair part, shared by every summand:
  // prod_{2<=i<j} (z_i - z_j)(q^2 z_j - z_i)
  LaurentPoly pairs = LaurentPoly::constant(n, 1);
  for (int i = 2; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      pairs *= lin(n, VarId::z(i), 0, VarId::z(j), 0) *
               lin(n, VarId::z(j), 2, VarId::z(i), 0);

  LaurentPoly body(n);
  for (int k = 1; k <= n; ++k) {
    QScalar w = weight ? weight(m, k) : QScalar::monomial(m * (k - 1));
    LaurentPoly kpart = LaurentPoly::constant(n, 1);
    for (int j = k + 1; j <= n; ++j)
      kpart *= lin(n, z1, 0, VarId::z(j), 0);
    for (int j = 2; j <= k; ++j)
      kpart *= lin(n, z1, -2 * m, VarId::z(j), 0);
    for (int l = 1; l <= k; ++l) {
      QScalar c = q_binomial(n, k) * w;
      if ((k - 1 + l - 1) % 2 != 0)
        c = -c;
      LaurentPoly lpart = LaurentPoly::constant(n, 1);
      for (int i = 2; i <= l; ++i)
        lpart *= lin(n, z1, 2, VarId::z(i), 0);
      for (int i = l + 1; i <= n; ++i)
        lpart *= lin(n, VarId::z(i), 2, z1, 0);
      body += c.to_poly(n) * kpart * lpart;
    }
  }
  body *= pairs;

  // Unsigned orbit sum over permutations of z_2..z_n.
  LaurentPoly total(n);
  for (const auto &p : all_permutations(m)) {
    std::vector<int> images{1};
    for (int i = 1; i <= m; ++i)
      images.push_back(p(i) + 1);
    total += apply_permutation(body, Permutation(images));
  }
  return total;
}

VerifyReport verify_prop_2_1(int m, const PropWeight &weight) {
  Stopwatch clock;
  LaurentPoly p = prop_2_1_cleared(m, weight);
  VerifyReport report;
  report.identity = "delta-coefficient";
  report.m = m;
  report.mode = "exact";
  std::uint64_t perms = 1;
  for (int i = 2; i <= m; ++i)
    perms *= static_cast<std::uint64_t>(i);
  report.summand_count = perms * static_cast<std::uint64_t>((m + 1) * (m + 2) / 2);
  std::vector<std::string> residual;
  for (const auto &t : p.terms())
    residual.push_back(LaurentPoly::from_terms(p.num_z(), {t}).to_string());
  set_residual(report, std::move(residual));
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

} // namespace qident
