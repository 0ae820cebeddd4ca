#include "qident/identity.hpp"

#include <random>

#include "qident/parallel.hpp"
#include "qident/permutation.hpp"

namespace qident {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i)
    f *= static_cast<std::uint64_t>(i);
  return f;
}

void check_m(int m) {
  if (m < 0 || m + 1 > kMaxZ)
    throw ArgumentError("m must be in [0, " + std::to_string(kMaxZ - 1) +
                        "], got " + std::to_string(m));
}

void check_row(int m, const BinomialRow &row) {
  if (static_cast<int>(row.size()) != m + 2)
    throw ArgumentError("binomial row must have m + 2 entries");
}

// c1 * a + c2 * q^k * b for single variables a, b.
LaurentPoly linear(int n, VarId a, int qa, long sign, VarId b, int qb) {
  return make_monomial(n, 1, {{a, 1}, {VarId::q(), qa}}) +
         make_monomial(n, sign, {{b, 1}, {VarId::q(), qb}});
}

LaurentPoly pair_product(int m) {
  const int n = identity_context(m);
  LaurentPoly p = LaurentPoly::constant(n, 1);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      p *= linear(n, VarId::z(i), 0, -1, VarId::z(j), 2);
  return p;
}

// prod_{i<=r}(w - q^m z_i) * prod_{i>r}(z_i - q^m w)
LaurentPoly w_factors(int m, int r) {
  const int n = identity_context(m);
  LaurentPoly p = LaurentPoly::constant(n, 1);
  for (int i = 1; i <= r; ++i)
    p *= linear(n, VarId::w(), 0, -1, VarId::z(i), m);
  for (int i = r + 1; i <= n; ++i)
    p *= linear(n, VarId::z(i), 0, -1, VarId::w(), m);
  return p;
}

LaurentPoly multiply_parallel(const LaurentPoly &a, const LaurentPoly &b,
                              int threads) {
  if (threads <= 1 || a.size() < 64)
    return a * b;
  const std::size_t chunks = static_cast<std::size_t>(threads);
  std::vector<LaurentPoly> partial(chunks, LaurentPoly(a.num_z()));
  parallel_for(chunks, threads, [&](std::size_t c) {
    auto terms = a.terms();
    std::size_t begin = terms.size() * c / chunks;
    std::size_t end = terms.size() * (c + 1) / chunks;
    std::vector<LaurentPoly::Term> slice(terms.begin() + begin,
                                         terms.begin() + end);
    partial[c] = LaurentPoly::from_terms(a.num_z(), std::move(slice)) * b;
  });
  LaurentPoly total(a.num_z());
  for (auto &p : partial)
    total += p;
  return total;
}

} // namespace

BinomialRow binomial_row(int m) {
  check_m(m);
  BinomialRow row;
  for (int r = 0; r <= m + 1; ++r)
    row.push_back(q_binomial(m + 1, r));
  return row;
}

LaurentPoly build_summand(int m, int r) {
  check_m(m);
  return build_summand(m, r, q_binomial(m + 1, r));
}

LaurentPoly build_summand(int m, int r, const QScalar &coefficient) {
  check_m(m);
  if (r < 0 || r > m + 1)
    throw ArgumentError("summand index r must be in [0, m+1]");
  const int n = identity_context(m);
  return coefficient.to_poly(n) * w_factors(m, r) * pair_product(m);
}

LaurentPoly build_unsymmetrized_sum(int m, const BinomialRow &row,
                                    int threads) {
  check_m(m);
  check_row(m, row);
  const int n = identity_context(m);
  // The pair product is shared by every summand, so collect the w-parts
  // first and multiply once.
  LaurentPoly wpart(n);
  for (int r = 0; r <= m + 1; ++r)
    wpart += row[r].to_poly(n) * w_factors(m, r);
  return multiply_parallel(wpart, pair_product(m), threads);
}

LaurentPoly build_lhs_cleared(int m, int threads) {
  return build_lhs_cleared(m, binomial_row(m), threads);
}

LaurentPoly build_lhs_cleared(int m, const BinomialRow &row, int threads) {
  return antisymmetrize(build_unsymmetrized_sum(m, row, threads),
                        identity_context(m), threads);
}

VerifyReport verify_identity(int m, int threads) {
  return verify_identity(m, binomial_row(m), threads);
}

VerifyReport verify_identity(int m, const BinomialRow &row, int threads) {
  Stopwatch clock;
  VerifyReport report;
  report.identity = "symmetrized-polynomial";
  report.m = m;
  report.mode = "exact";
  report.summand_count = factorial(m + 1) * static_cast<std::uint64_t>(m + 2);

  LaurentPoly sum = build_unsymmetrized_sum(m, row, threads);
  AlternantForm form = alternant_form(sum, identity_context(m));
  LaurentPoly lhs =
      expand_alternant(form, identity_context(m), identity_context(m), threads);

  std::vector<std::string> residual;
  for (const auto &t : lhs.terms())
    residual.push_back(
        LaurentPoly::from_terms(lhs.num_z(), {t}).to_string());
  set_residual(report, std::move(residual));
  report.extra["unsymmetrized_terms"] = sum.size();
  report.extra["surviving_alternants"] = form.size();
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

std::vector<LaurentPoly> w_coefficient_identities(int m, int threads) {
  LaurentPoly lhs = build_lhs_cleared(m, threads);
  std::vector<LaurentPoly> out;
  for (int e = 0; e <= m + 1; ++e)
    out.push_back(lhs.coeff_of_power(VarId::w(), e));
  return out;
}

VerifyReport verify_w_coefficients(int m, int threads) {
  Stopwatch clock;
  VerifyReport report;
  report.identity = "w-coefficients";
  report.m = m;
  report.mode = "exact";
  report.summand_count = factorial(m + 1) * static_cast<std::uint64_t>(m + 2);
  auto coeffs = w_coefficient_identities(m, threads);
  std::vector<std::string> residual;
  nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    sizes.push_back(coeffs[e].size());
    if (!coeffs[e].is_zero())
      residual.push_back("w^" + std::to_string(e) + ": " +
                         coeffs[e].to_string());
  }
  set_residual(report, std::move(residual));
  report.extra["coefficient_count"] = coeffs.size();
  report.extra["coefficient_terms"] = sizes;
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

std::uint64_t modular_degree_bound(int m) {
  const std::uint64_t n = static_cast<std::uint64_t>(m) + 1;
  const std::uint64_t pairs = n * (n - 1) / 2;
  // (w, z)-degree: n linear factors plus the pair factors.
  // q-degree after clearing: binomial span n^2/2, linear factors m*n,
  // pair factors 2*pairs.
  return n + pairs + n * n / 2 + static_cast<std::uint64_t>(m) * n + 2 * pairs;
}

std::uint64_t evaluate_lhs_cleared_mod_p(int m, const BinomialRow &row,
                                         const std::vector<std::uint64_t> &point,
                                         const PrimeField &f, int threads) {
  check_m(m);
  check_row(m, row);
  const int n = identity_context(m);
  if (static_cast<int>(point.size()) != n + 2)
    throw ArgumentError("evaluation point needs q, w and m+1 z-values");
  const std::uint64_t q = point[0], w = point[1];
  const std::uint64_t qm = f.signed_pow(q, m);
  const std::uint64_t q2 = f.mul(q, q);
  std::vector<std::uint64_t> coeff(row.size());
  for (std::size_t r = 0; r < row.size(); ++r)
    coeff[r] = row[r].eval_mod_p(q, f);

  auto perms = all_permutations(n);
  const std::size_t workers =
      static_cast<std::size_t>(std::max(1, std::min<int>(threads, perms.size())));
  std::vector<std::uint64_t> partial(workers, 0);
  parallel_for(workers, static_cast<int>(workers), [&](std::size_t wk) {
    std::vector<std::uint64_t> z(n), prefix(n + 1), suffix(n + 2);
    std::uint64_t acc = 0;
    std::size_t begin = perms.size() * wk / workers;
    std::size_t end = perms.size() * (wk + 1) / workers;
    for (std::size_t p = begin; p < end; ++p) {
      const auto &s = perms[p];
      for (int i = 1; i <= n; ++i)
        z[i - 1] = point[s(i) + 1];
      // prefix[r] = prod_{i<=r}(w - q^m z_i), suffix[r] = prod_{i>=r}(z_i - q^m w)
      prefix[0] = 1;
      for (int i = 1; i <= n; ++i)
        prefix[i] = f.mul(prefix[i - 1], f.sub(w, f.mul(qm, z[i - 1])));
      suffix[n + 1] = 1;
      for (int i = n; i >= 1; --i)
        suffix[i] = f.mul(suffix[i + 1], f.sub(z[i - 1], f.mul(qm, w)));
      std::uint64_t wsum = 0;
      for (int r = 0; r <= n; ++r)
        wsum = f.add(wsum, f.mul(coeff[r], f.mul(prefix[r], suffix[r + 1])));
      std::uint64_t pairs = 1;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          pairs = f.mul(pairs, f.sub(z[i], f.mul(q2, z[j])));
      std::uint64_t term = f.mul(wsum, pairs);
      acc = s.sign() > 0 ? f.add(acc, term) : f.sub(acc, term);
    }
    partial[wk] = acc;
  });
  std::uint64_t total = 0;
  for (auto v : partial)
    total = f.add(total, v);
  return total;
}

VerifyReport verify_identity_modp(int m, int trials, std::uint64_t p,
                                  std::uint64_t seed, int threads) {
  return verify_identity_modp(m, trials, p, seed, binomial_row(m), threads);
}

VerifyReport verify_identity_modp(int m, int trials, std::uint64_t p,
                                  std::uint64_t seed, const BinomialRow &row,
                                  int threads) {
  check_m(m);
  if (trials < 1)
    throw ArgumentError("modular verification needs trials >= 1");
  if (!is_prime(p) || p <= modular_degree_bound(m))
    throw ArgumentError("modulus must be a prime above the degree bound " +
                        std::to_string(modular_degree_bound(m)));
  PrimeField field(p);
  Stopwatch clock;
  VerifyReport report;
  report.identity = "symmetrized-polynomial";
  report.m = m;
  report.mode = "modular";
  report.prime = p;
  report.trials = trials;
  report.seed = seed;
  report.summand_count = factorial(m + 1) * static_cast<std::uint64_t>(m + 2);

  // Points are drawn serially from one stream so they do not depend on the
  // thread count.
  std::mt19937_64 rng(seed);
  const int n = identity_context(m);
  std::vector<std::string> residual;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::uint64_t> point(n + 2);
    for (auto &x : point)
      x = rng() % (p - 1) + 1;
    std::uint64_t v = evaluate_lhs_cleared_mod_p(m, row, point, field, threads);
    if (v != 0)
      residual.push_back("trial " + std::to_string(t) + ": " +
                         std::to_string(v));
  }
  set_residual(report, std::move(residual));
  report.extra["degree_bound"] = modular_degree_bound(m);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

} // namespace qident
