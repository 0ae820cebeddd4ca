#include "qident/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "qident/parallel.hpp"

namespace qident {

namespace {

int parity_sign(const std::vector<int> &images) {
  // Sign from the cycle decomposition: each cycle of length L contributes
  // (-1)^(L-1).
  std::vector<char> seen(images.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images[j] - 1) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0)
      sign = -sign;
  }
  return sign;
}

} // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (int v : images_) {
    if (v < 1 || v > degree() || hit[v - 1])
      throw ArgumentError("permutation images are not a bijection");
    hit[v - 1] = 1;
  }
  sign_ = parity_sign(images_);
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int i, int j) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  std::swap(im.at(i - 1), im.at(j - 1));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 1; i <= degree(); ++i)
    im[(*this)(i) - 1] = i;
  return Permutation(std::move(im));
}

Permutation operator*(const Permutation &t, const Permutation &s) {
  if (t.degree() != s.degree())
    throw ContextError("composing permutations of different degree");
  std::vector<int> im(s.degree());
  for (int i = 1; i <= s.degree(); ++i)
    im[i - 1] = t(s(i));
  return Permutation(std::move(im));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

namespace {

ExponentVector relabel(const ExponentVector &e, const Permutation &s) {
  ExponentVector r = e;
  for (int i = 1; i <= s.degree(); ++i)
    r.set_slot(s(i) + 1, e.slot(i + 1));
  return r;
}

} // namespace

LaurentPoly apply_permutation(const LaurentPoly &a, const Permutation &s) {
  if (s.degree() != a.num_z())
    throw ContextError("permutation degree " + std::to_string(s.degree()) +
                       " does not match " + std::to_string(a.num_z()) +
                       " z-variables");
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size());
  for (const auto &t : a.terms())
    out.push_back({relabel(t.exponents, s), t.coeff});
  return LaurentPoly::from_terms(a.num_z(), std::move(out));
}

LaurentPoly symmetrize(const LaurentPoly &a, int n, bool signed_sum,
                       int threads) {
  if (n < 1)
    throw ArgumentError("symmetrize needs n >= 1");
  if (n > a.num_z())
    throw ContextError("symmetrize over more z-variables than the context has");
  auto perms = all_permutations(n);
  const std::size_t workers =
      static_cast<std::size_t>(std::max(1, std::min<int>(threads, perms.size())));
  std::vector<LaurentPoly::Accumulator> partial(workers);
  parallel_for(workers, static_cast<int>(workers), [&](std::size_t w) {
    auto &acc = partial[w];
    std::size_t begin = perms.size() * w / workers;
    std::size_t end = perms.size() * (w + 1) / workers;
    for (std::size_t p = begin; p < end; ++p) {
      const auto &s = perms[p];
      const bool negate = signed_sum && s.sign() < 0;
      for (const auto &t : a.terms()) {
        auto &slot = acc[relabel(t.exponents, s)];
        if (negate)
          slot -= t.coeff;
        else
          slot += t.coeff;
      }
    }
  });
  // Integer addition is exact, so merging in a fixed order and sorting gives
  // the same canonical result for every worker count.
  LaurentPoly::Accumulator total = std::move(partial[0]);
  for (std::size_t w = 1; w < workers; ++w)
    for (auto &[e, c] : partial[w])
      total[e] += c;
  return LaurentPoly::from_accumulator(a.num_z(), std::move(total));
}

AlternantForm alternant_form(const LaurentPoly &a, int n) {
  if (n < 1 || n > a.num_z())
    throw ContextError("alternant form over an invalid number of variables");
  AlternantForm form;
  std::vector<int> z(n);
  for (const auto &t : a.terms()) {
    for (int i = 0; i < n; ++i)
      z[i] = t.exponents.slot(i + 2);
    // Inversions relative to decreasing order give the sign of the sorting
    // permutation; a tie means the alternant vanishes.
    int inversions = 0;
    bool repeated = false;
    for (int i = 0; i < n && !repeated; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (z[i] == z[j]) {
          repeated = true;
          break;
        }
        if (z[i] < z[j])
          ++inversions;
      }
    if (repeated)
      continue;
    std::sort(z.begin(), z.end(), std::greater<>());
    ExponentVector key = t.exponents;
    for (int i = 0; i < n; ++i)
      key.set_slot(i + 2, z[i]);
    auto &slot = form[key];
    if (inversions % 2)
      slot -= t.coeff;
    else
      slot += t.coeff;
  }
  std::erase_if(form, [](const auto &kv) { return kv.second == 0; });
  return form;
}

LaurentPoly expand_alternant(const AlternantForm &form, int num_z, int n,
                             int threads) {
  std::vector<LaurentPoly::Term> seeds;
  for (const auto &[e, c] : form)
    seeds.push_back({e, c});
  LaurentPoly base = LaurentPoly::from_terms(num_z, std::move(seeds));
  if (base.is_zero())
    return base;
  return symmetrize(base, n, true, threads);
}

LaurentPoly antisymmetrize(const LaurentPoly &a, int n, int threads) {
  return expand_alternant(alternant_form(a, n), a.num_z(), n, threads);
}

} // namespace qident
