#include "qident/distribution.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qident/parallel.hpp"

namespace qident {

// ---------------------------------------------------------------------------
// DistTerm

std::string LinearFactor::to_string() const {
  return "(" + a.to_string() + " - " + b.to_string() + ")";
}

std::string GeometricFactor::to_string() const {
  return "1/(q^" + std::to_string(lead) + " - q^" + std::to_string(sub) + ")";
}

LaurentPoly DistTerm::numerator() const {
  LaurentPoly p = scalar.to_poly(num_z) *
                  LaurentPoly::monomial(num_z, monomial, 1);
  for (const auto &f : numerator_factors) {
    ExponentVector ea, eb;
    ea.add(f.a.var, 1);
    ea.add(VarId::q(), f.a.q_power);
    eb.add(f.b.var, 1);
    eb.add(VarId::q(), f.b.q_power);
    p *= LaurentPoly::monomial(num_z, ea, 1) +
         LaurentPoly::monomial(num_z, eb, -1);
  }
  return p;
}

namespace {

VarId relabel(VarId v, const Permutation &s) {
  return v.kind == VarId::Kind::Z ? VarId::z(s(v.index)) : v;
}

MonomialRef relabel(MonomialRef r, const Permutation &s) {
  return {r.q_power, relabel(r.var, s)};
}

MonomialRef subst(MonomialRef r, VarId x, int shift, VarId y) {
  if (r.var == x)
    return {r.q_power + shift, y};
  return r;
}

// q^a - q^b
QScalar q_binomial_difference(int a, int b) {
  return QScalar::monomial(a) - QScalar::monomial(b);
}

} // namespace

DistTerm DistTerm::permuted(const Permutation &s) const {
  if (s.degree() != num_z)
    throw ContextError("permutation degree does not match the term");
  DistTerm r = *this;
  for (int i = 1; i <= num_z; ++i)
    r.monomial.set(VarId::z(s(i)), monomial[VarId::z(i)]);
  for (auto &f : r.numerator_factors)
    f = {relabel(f.a, s), relabel(f.b, s)};
  for (auto &f : r.inverses)
    f = {relabel(f.lead, s), relabel(f.sub, s)};
  for (auto &d : r.deltas)
    d = {relabel(d.a, s), relabel(d.b, s)};
  return r;
}

DistTerm DistTerm::substituted(VarId x, int shift, VarId y) const {
  if (x == y)
    throw ArgumentError("substitution must eliminate a variable");
  DistTerm r = *this;
  r.numerator_factors.clear();
  r.inverses.clear();
  r.deltas.clear();

  const int ex = monomial[x];
  if (ex != 0) {
    r.monomial.set(x, 0);
    r.monomial.add(y, ex);
    r.scalar = r.scalar.shifted(shift * ex);
  }
  for (const auto &f : numerator_factors) {
    LinearFactor g{subst(f.a, x, shift, y), subst(f.b, x, shift, y)};
    if (g.a.var == g.b.var) {
      r.scalar *= q_binomial_difference(g.a.q_power, g.b.q_power);
      r.monomial.add(g.a.var, 1);
    } else {
      r.numerator_factors.push_back(g);
    }
  }
  for (const auto &f : inverses) {
    DirectedInverse g{subst(f.lead, x, shift, y), subst(f.sub, x, shift, y)};
    if (g.lead.var == g.sub.var) {
      if (g.lead.q_power == g.sub.q_power)
        throw DivergenceError("substitution makes " + f.to_string() +
                              " singular");
      r.geometric.push_back({g.lead.q_power, g.sub.q_power});
      r.monomial.add(g.lead.var, -1);
    } else {
      r.inverses.push_back(g);
    }
  }
  for (const auto &d : deltas) {
    DeltaFactor g{subst(d.a, x, shift, y), subst(d.b, x, shift, y)};
    if (g.a.var == g.b.var)
      throw DivergenceError("substitution collapses " + d.to_string() +
                            " to a single variable");
    r.deltas.push_back(g);
  }
  return r;
}

void DistTerm::cancel_common_factors() {
  for (std::size_t i = 0; i < numerator_factors.size();) {
    const LinearFactor &f = numerator_factors[i];
    bool cancelled = false;
    for (std::size_t j = 0; j < inverses.size(); ++j) {
      const DirectedInverse &g = inverses[j];
      if (f.a.var == g.lead.var && f.b.var == g.sub.var &&
          f.b.q_power - f.a.q_power == g.sub.q_power - g.lead.q_power) {
        scalar = scalar.shifted(f.a.q_power - g.lead.q_power);
      } else if (f.a.var == g.sub.var && f.b.var == g.lead.var &&
                 f.b.q_power - f.a.q_power == g.lead.q_power - g.sub.q_power) {
        scalar = -scalar.shifted(f.a.q_power - g.sub.q_power);
      } else {
        continue;
      }
      inverses.erase(inverses.begin() + static_cast<long>(j));
      numerator_factors.erase(numerator_factors.begin() + static_cast<long>(i));
      cancelled = true;
      break;
    }
    if (!cancelled)
      ++i;
  }
}

std::string DistTerm::to_string() const {
  std::string out = "(" + scalar.to_string() + ")";
  std::string mono = exponent_text(monomial);
  if (!mono.empty())
    out += " " + mono;
  for (const auto &f : numerator_factors)
    out += " " + f.to_string();
  for (const auto &g : geometric)
    out += " " + g.to_string();
  for (const auto &f : inverses)
    out += " " + f.to_string();
  for (const auto &d : deltas)
    out += " " + d.to_string();
  return out;
}

// ---------------------------------------------------------------------------
// CompiledTerm

struct CompiledTerm::Impl {
  struct DeltaStep {
    VarId x, y;
    int alpha, beta;
  };
  struct Edge {
    int lead_v, sub_v;
    int lead_q, sub_q;
    int slope() const { return sub_q - lead_q; }
  };
  struct Chord {
    int edge;    // -1 for a geometric factor
    int lead_q;  // constant part of the q-exponent is -lead_q
    int dq;      // q-exponent change per unit of the chord index (< 0)
  };
  struct Elim {
    int edge, leaf, parent;
  };
  struct NumGroup {
    ExponentVector wz;
    QScalar coeff;
  };

  int degree = 0;
  bool zero = false;
  std::vector<DeltaStep> steps;
  std::vector<int> vertex_slot;
  std::array<int, kSlots> slot_vertex{};
  std::vector<Edge> edges;
  std::vector<int> tree;                // edge indices
  std::vector<int> tree_pos;            // edge index -> position in tree or -1
  std::vector<Chord> chords;
  std::vector<Elim> elim;               // leaf-first order
  std::vector<int> roots;
  std::vector<int> lead_count;          // per vertex, over all edges
  std::vector<std::vector<long>> column; // per chord: tree index deltas
  std::vector<NumGroup> groups;

  void solve_tree(std::vector<long> &b, std::vector<long> &n) const {
    for (const auto &el : elim) {
      const Edge &e = edges[el.edge];
      long v = (el.leaf == e.sub_v) ? b[el.leaf] : -b[el.leaf];
      n[tree_pos[el.edge]] = v;
      b[el.leaf] = 0;
      if (el.parent == e.sub_v)
        b[el.parent] -= v;
      else
        b[el.parent] += v;
    }
  }

  void build(const DistTerm &input);
  void choose_forest();
  QScalar coefficient(const ExponentVector &target, int order) const;
};

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    p[a] = b;
    return true;
  }
};

} // namespace

void CompiledTerm::Impl::build(const DistTerm &input) {
  degree = input.monomial.total_degree_wz() +
           static_cast<int>(input.numerator_factors.size()) -
           static_cast<int>(input.inverses.size()) -
           static_cast<int>(input.deltas.size());
  if (input.is_zero()) {
    zero = true;
    return;
  }

  // Resolve deltas: delta(q^a x, q^b y) lets x be replaced by q^{b-a} y in
  // the rest of the product; the coefficient of x^e then reads the rest at
  // y-exponent shifted by e + 1.
  DistTerm t = input;
  while (!t.deltas.empty()) {
    DeltaFactor d = t.deltas.front();
    d.validate();
    t.deltas.erase(t.deltas.begin());
    steps.push_back({d.a.var, d.b.var, d.a.q_power, d.b.q_power});
    t = t.substituted(d.a.var, d.b.q_power - d.a.q_power, d.b.var);
  }
  t.cancel_common_factors();
  if (t.is_zero()) {
    zero = true;
    return;
  }

  slot_vertex.fill(-1);
  auto vertex = [&](VarId v) {
    int s = v.slot();
    if (slot_vertex[s] < 0) {
      slot_vertex[s] = static_cast<int>(vertex_slot.size());
      vertex_slot.push_back(s);
    }
    return slot_vertex[s];
  };
  for (const auto &f : t.inverses) {
    f.validate();
    edges.push_back({vertex(f.lead.var), vertex(f.sub.var), f.lead.q_power,
                     f.sub.q_power});
  }
  lead_count.assign(vertex_slot.size(), 0);
  for (const auto &e : edges)
    ++lead_count[e.lead_v];

  choose_forest();

  for (const auto &g : t.geometric) {
    if (g.sub >= g.lead)
      throw DivergenceError("geometric factor " + g.to_string() +
                            " is not summable in powers of 1/q");
    chords.push_back({-1, g.lead, g.sub - g.lead});
    column.emplace_back(tree.size(), 0);
  }

  // Group numerator terms by their w/z monomial.
  LaurentPoly num = t.numerator();
  std::map<ExponentVector, QScalar> by_wz;
  for (const auto &term : num.terms()) {
    ExponentVector wz = term.exponents;
    int qe = wz[VarId::q()];
    wz.set(VarId::q(), 0);
    by_wz[wz] += QScalar::monomial(qe, term.coeff);
  }
  for (auto &[wz, c] : by_wz)
    if (!c.is_zero())
      groups.push_back({wz, std::move(c)});
}

void CompiledTerm::Impl::choose_forest() {
  const int nv = static_cast<int>(vertex_slot.size());
  const int ne = static_cast<int>(edges.size());
  UnionFind comps(nv);
  for (const auto &e : edges)
    comps.unite(e.lead_v, e.sub_v);
  std::map<int, std::vector<int>> comp_vertices, comp_edges;
  for (int v = 0; v < nv; ++v)
    comp_vertices[comps.find(v)].push_back(v);
  for (int i = 0; i < ne; ++i)
    comp_edges[comps.find(edges[i].lead_v)].push_back(i);

  tree_pos.assign(ne, -1);
  std::vector<int> chosen_tree;
  std::vector<Elim> chosen_elim;

  for (const auto &[root_key, verts] : comp_vertices) {
    const auto &cedges = comp_edges[root_key];
    const int need = static_cast<int>(verts.size()) - 1;

    // Returns the leaf-first elimination order for a candidate tree, and
    // whether every chord of the component then lowers the q-order.
    auto try_tree = [&](const std::vector<int> &tree_edges, int root,
                        std::vector<Elim> &order) -> bool {
      // BFS from root over tree edges.
      std::map<int, std::vector<std::pair<int, int>>> adj;
      for (int ei : tree_edges) {
        adj[edges[ei].lead_v].push_back({ei, edges[ei].sub_v});
        adj[edges[ei].sub_v].push_back({ei, edges[ei].lead_v});
      }
      std::vector<int> bfs{root};
      std::map<int, std::pair<int, int>> parent; // vertex -> (edge, parent)
      std::set<int> seen{root};
      for (std::size_t h = 0; h < bfs.size(); ++h)
        for (auto [ei, u] : adj[bfs[h]])
          if (seen.insert(u).second) {
            parent[u] = {ei, bfs[h]};
            bfs.push_back(u);
          }
      if (static_cast<int>(bfs.size()) != need + 1)
        return false;
      order.clear();
      for (auto it = bfs.rbegin(); it != bfs.rend(); ++it)
        if (*it != root)
          order.push_back({parent[*it].first, *it, parent[*it].second});

      // Effective slope of every chord.
      std::vector<int> local_pos(ne, -1);
      for (std::size_t i = 0; i < tree_edges.size(); ++i)
        local_pos[tree_edges[i]] = static_cast<int>(i);
      for (int ci : cedges) {
        if (local_pos[ci] >= 0)
          continue;
        std::vector<long> b(nv, 0);
        b[edges[ci].lead_v] += 1;
        b[edges[ci].sub_v] -= 1;
        long dq = edges[ci].slope();
        for (const auto &el : order) {
          const Edge &e = edges[el.edge];
          long v = (el.leaf == e.sub_v) ? b[el.leaf] : -b[el.leaf];
          b[el.leaf] = 0;
          if (el.parent == e.sub_v)
            b[el.parent] -= v;
          else
            b[el.parent] += v;
          dq += v * e.slope();
        }
        if (dq >= 0)
          return false;
      }
      return true;
    };

    std::vector<int> best;
    std::vector<Elim> best_order;
    bool found = false;
    // Star-like BFS trees first, then every subset of the right size.
    for (int root : verts) {
      std::vector<int> bfs_tree;
      std::vector<int> frontier{root};
      std::set<int> seen{root};
      for (std::size_t h = 0; h < frontier.size(); ++h)
        for (int ei : cedges) {
          int a = edges[ei].lead_v, b = edges[ei].sub_v;
          int other = a == frontier[h] ? b : (b == frontier[h] ? a : -1);
          if (other >= 0 && seen.insert(other).second) {
            bfs_tree.push_back(ei);
            frontier.push_back(other);
          }
        }
      std::vector<Elim> order;
      if (try_tree(bfs_tree, root, order)) {
        best = bfs_tree;
        best_order = order;
        found = true;
        break;
      }
    }
    if (!found && need > 0) {
      const int ce = static_cast<int>(cedges.size());
      std::vector<char> pick(ce, 0);
      std::fill(pick.begin(), pick.begin() + need, 1);
      do {
        std::vector<int> cand;
        UnionFind uf(nv);
        bool acyclic = true;
        for (int i = 0; i < ce && acyclic; ++i)
          if (pick[i]) {
            cand.push_back(cedges[i]);
            acyclic = uf.unite(edges[cedges[i]].lead_v, edges[cedges[i]].sub_v);
          }
        if (!acyclic)
          continue;
        std::vector<Elim> order;
        if (try_tree(cand, verts.front(), order)) {
          best = cand;
          best_order = order;
          found = true;
          break;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    if (!found && need == 0) {
      found = try_tree({}, verts.front(), best_order);
    }
    if (!found)
      throw DivergenceError("no spanning tree makes every free expansion index "
                            "lower the q-order; the product is not summable");
    // The root is the one vertex never eliminated.
    roots.push_back(verts.front());
    std::set<int> eliminated;
    for (const auto &el : best_order)
      eliminated.insert(el.leaf);
    for (int v : verts)
      if (!eliminated.count(v))
        roots.back() = v;
    for (int ei : best)
      chosen_tree.push_back(ei);
    chosen_elim.insert(chosen_elim.end(), best_order.begin(), best_order.end());
  }

  tree = chosen_tree;
  for (std::size_t i = 0; i < tree.size(); ++i)
    tree_pos[tree[i]] = static_cast<int>(i);
  elim = chosen_elim;

  for (int ei = 0; ei < ne; ++ei) {
    if (tree_pos[ei] >= 0)
      continue;
    std::vector<long> b(nv, 0), n(tree.size(), 0);
    b[edges[ei].lead_v] += 1;
    b[edges[ei].sub_v] -= 1;
    solve_tree(b, n);
    long dq = edges[ei].slope();
    for (std::size_t i = 0; i < tree.size(); ++i)
      dq += n[i] * edges[tree[i]].slope();
    chords.push_back({ei, edges[ei].lead_q, static_cast<int>(dq)});
    column.push_back(n);
  }
}

QScalar CompiledTerm::Impl::coefficient(const ExponentVector &target,
                                        int order) const {
  QScalar result;
  if (zero || target.total_degree_wz() != degree)
    return result;

  ExponentVector t = target;
  t.set(VarId::q(), 0);
  long qshift = 0;
  for (const auto &s : steps) {
    long a = t[s.x];
    qshift += static_cast<long>(s.alpha) * a - static_cast<long>(s.beta) * (a + 1);
    t.add(s.y, static_cast<int>(a + 1));
    t.set(s.x, 0);
  }

  const std::size_t nv = vertex_slot.size();
  std::vector<long> b(nv), base(tree.size()), cur(tree.size());
  std::vector<long> idx(chords.size());

  for (const auto &g : groups) {
    ExponentVector r = t - g.wz;
    bool ok = true;
    for (int s = 1; s < kSlots && ok; ++s)
      if (slot_vertex[s] < 0 && r.slot(s) != 0)
        ok = false;
    if (!ok)
      continue;
    for (std::size_t v = 0; v < nv; ++v)
      b[v] = r.slot(vertex_slot[v]) + lead_count[v];
    solve_tree(b, base);
    for (int root : roots)
      if (b[root] != 0)
        ok = false;
    if (!ok)
      continue;

    long q0 = qshift;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const Edge &e = edges[tree[i]];
      q0 += -e.lead_q + base[i] * e.slope();
    }
    for (const auto &c : chords)
      q0 -= c.lead_q;
    // Budget: how far the enumeration may lower the q-order before every
    // contribution of this group falls below q^{-T}.
    const long budget = q0 + g.coeff.max_exponent() + order;
    if (budget < 0)
      continue;

    cur = base;
    // Depth-first over chord indices; each unit of chord c costs -dq.
    auto recurse = [&](auto &&self, std::size_t c, long left) -> void {
      if (c == chords.size()) {
        for (long v : cur)
          if (v < 0)
            return;
        long qtotal = q0 - (budget - left);
        result += g.coeff.shifted(static_cast<int>(qtotal))
                      .truncated_below(-order);
        return;
      }
      const long cost = -chords[c].dq;
      const auto &col = column[c];
      long k = 0;
      for (; k * cost <= left; ++k) {
        self(self, c + 1, left - k * cost);
        for (std::size_t i = 0; i < cur.size(); ++i)
          cur[i] += col[i];
      }
      for (std::size_t i = 0; i < cur.size(); ++i)
        cur[i] -= k * col[i];
    };
    recurse(recurse, 0, budget);
  }
  return result;
}

CompiledTerm::CompiledTerm(const DistTerm &term)
    : impl_(std::make_unique<Impl>()) {
  impl_->build(term);
}
CompiledTerm::~CompiledTerm() = default;
CompiledTerm::CompiledTerm(CompiledTerm &&) noexcept = default;
CompiledTerm &CompiledTerm::operator=(CompiledTerm &&) noexcept = default;

QScalar CompiledTerm::coefficient(const ExponentVector &target,
                                  int order) const {
  if (order < 0)
    throw ArgumentError("q-order T must be >= 0");
  return impl_->coefficient(target, order);
}

int CompiledTerm::homogeneous_degree() const { return impl_->degree; }

CoeffSeries coeff_of_term(const DistTerm &term, const ExponentVector &target,
                          int order) {
  for (int s = term.num_z + 2; s < kSlots; ++s)
    if (target.slot(s) != 0)
      throw ArgumentError("target uses a variable outside the term's context");
  if (target[VarId::q()] != 0)
    throw ArgumentError("target must not carry a q exponent");
  return {CompiledTerm(term).coefficient(target, order), order};
}

QScalar sum_coefficient(const std::vector<CompiledTerm> &terms,
                        const ExponentVector &target, int order) {
  QScalar s;
  for (const auto &t : terms)
    s += t.coefficient(target, order);
  return s;
}

std::vector<CompiledTerm> compile_terms(const std::vector<DistTerm> &terms,
                                        int threads) {
  std::vector<std::unique_ptr<CompiledTerm>> slots(terms.size());
  parallel_for(terms.size(), threads, [&](std::size_t i) {
    slots[i] = std::make_unique<CompiledTerm>(terms[i]);
  });
  std::vector<CompiledTerm> out;
  out.reserve(terms.size());
  for (auto &s : slots)
    out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// The two sides of the distribution identity

std::vector<DistTerm> build_lhs_13(int m) {
  if (m < 0 || m + 1 > kMaxZ)
    throw ArgumentError("m out of range for the distribution identity");
  const int n = m + 1;
  std::vector<DistTerm> base;
  for (int k = 0; k <= n; ++k) {
    DistTerm t;
    t.num_z = n;
    t.scalar = q_binomial(n, k);
    for (int i = 1; i <= k; ++i)
      t.inverses.push_back({mref(VarId::z(i), -m), mref(VarId::w())});
    for (int j = k + 1; j <= n; ++j)
      t.inverses.push_back({mref(VarId::w(), -m), mref(VarId::z(j))});
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        t.inverses.push_back({mref(VarId::z(a), 2), mref(VarId::z(b))});
        t.numerator_factors.push_back({mref(VarId::z(a)), mref(VarId::z(b))});
      }
    base.push_back(std::move(t));
  }
  std::vector<DistTerm> out;
  for (const auto &s : all_permutations(n))
    for (const auto &t : base)
      out.push_back(t.permuted(s));
  return out;
}

std::vector<DistTerm> build_rhs_13(int m) {
  if (m < 0 || m + 1 > kMaxZ)
    throw ArgumentError("m out of range for the distribution identity");
  const int n = m + 1;
  DistTerm t;
  t.num_z = n;
  t.scalar = QScalar::monomial(m - 1);
  t.deltas.push_back({mref(VarId::w()), mref(VarId::z(1), -m)});
  for (int i = 1; i <= m; ++i)
    t.deltas.push_back({mref(VarId::z(i)), mref(VarId::z(i + 1), 2)});
  std::vector<DistTerm> out;
  for (const auto &s : all_permutations(n))
    out.push_back(t.permuted(s));
  return out;
}

std::vector<ExponentVector> region_targets(const TruncationSpec &region,
                                           int total_degree) {
  std::vector<std::pair<VarId, std::pair<int, int>>> vars(region.window.begin(),
                                                          region.window.end());
  // Slot order equals monomial order, so nested ascending loops emit sorted
  // output.
  std::sort(vars.begin(), vars.end(), [](const auto &a, const auto &b) {
    return a.first.slot() < b.first.slot();
  });
  std::vector<ExponentVector> out;
  if (region.empty())
    return out;
  ExponentVector cur;
  auto rec = [&](auto &&self, std::size_t i, int sum) -> void {
    if (i == vars.size()) {
      if (sum == total_degree)
        out.push_back(cur);
      return;
    }
    auto [lo, hi] = vars[i].second;
    for (int e = lo; e <= hi; ++e) {
      cur.set(vars[i].first, e);
      self(self, i + 1, sum + e);
    }
    cur.set(vars[i].first, 0);
  };
  rec(rec, 0, 0);
  return out;
}

int numerator_margin(const std::vector<DistTerm> &terms) {
  int margin = 0;
  for (const auto &t : terms) {
    LaurentPoly num = t.numerator();
    for (int s = 1; s < kSlots; ++s) {
      if (s > t.num_z + 1)
        break;
      auto [lo, hi] = num.degree_range(VarId::from_slot(s));
      margin = std::max(margin, hi - lo);
    }
  }
  return margin;
}

std::pair<int, std::size_t>
fit_q_power(const std::vector<std::pair<QScalar, QScalar>> &pairs, int order) {
  std::set<int> candidates{0};
  for (const auto &[l, r] : pairs)
    if (!l.is_zero() && !r.is_zero())
      candidates.insert(l.max_exponent() - r.max_exponent());
  int best = 0;
  std::size_t best_miss = static_cast<std::size_t>(-1);
  for (int c : candidates) {
    const int lowest = -order + std::max(c, 0);
    std::size_t miss = 0;
    for (const auto &[l, r] : pairs)
      if (l.truncated_below(lowest) != r.shifted(c).truncated_below(lowest))
        ++miss;
    if (miss < best_miss ||
        (miss == best_miss && (std::abs(c) < std::abs(best) ||
                               (std::abs(c) == std::abs(best) && c < best)))) {
      best = c;
      best_miss = miss;
    }
  }
  return {best, best_miss};
}

VerifyReport verify_13(int m, const TruncationSpec &spec, int threads) {
  spec.validate();
  Stopwatch clock;
  const int n = m + 1;
  if (!spec.covers(VarId::w()))
    throw ArgumentError("window must cover w");
  for (int i = 1; i <= n; ++i)
    if (!spec.covers(VarId::z(i)))
      throw ArgumentError("window must cover z" + std::to_string(i));

  auto lhs_terms = build_lhs_13(m);
  auto rhs_terms = build_rhs_13(m);
  const int margin = numerator_margin(lhs_terms);
  TruncationSpec interior = spec.shrunk(margin);
  if (interior.empty())
    throw ArgumentError("window too small: interior region is empty after "
                        "shrinking by the numerator margin " +
                        std::to_string(margin));

  auto lhs = compile_terms(lhs_terms, threads);
  auto rhs = compile_terms(rhs_terms, threads);
  auto targets = region_targets(interior, -(m + 1));
  if (targets.empty())
    throw ArgumentError("window too small: no interior monomial of degree " +
                        std::to_string(-(m + 1)));

  std::vector<std::pair<QScalar, QScalar>> values(targets.size());
  parallel_for(targets.size(), threads, [&](std::size_t i) {
    values[i] = {sum_coefficient(lhs, targets[i], spec.order),
                 sum_coefficient(rhs, targets[i], spec.order)};
  });

  std::vector<std::string> residual;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto &[l, r] = values[i];
    if (!l.is_zero() || !r.is_zero())
      ++nonzero;
    if (l != r)
      residual.push_back(exponent_text(targets[i]) + ": lhs " +
                         CoeffSeries{l, spec.order}.to_string() + " rhs " +
                         CoeffSeries{r, spec.order}.to_string());
  }

  VerifyReport report;
  report.identity = "delta-distribution";
  report.m = m;
  report.mode = "distribution";
  report.window = spec.window.begin()->second.second;
  report.order = spec.order;
  report.summand_count = lhs_terms.size();
  report.extra["rhs_terms"] = rhs_terms.size();
  set_residual(report, std::move(residual));
  report.extra["interior_margin"] = margin;
  report.extra["targets_checked"] = targets.size();
  report.extra["nonzero_coefficients"] = nonzero;
  if (!report.is_zero()) {
    auto [c, miss] = fit_q_power(values, spec.order);
    report.extra["fitted_scalar"] = QScalar::monomial(c).to_string();
    report.extra["fitted_exponent"] = c;
    report.extra["fitted_mismatches"] = miss;
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

} // namespace qident
