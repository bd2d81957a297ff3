#include "gw/weyl.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "gw/errors.hpp"

namespace gw {

namespace {

bool diag(const FixedGraph& g, int v) {
  const auto& p = g.vertices[static_cast<size_t>(v)];
  return p.first == p.second;
}

// sum_D (t + 0)(t - 0)^{1-val} = t^{2 - val} at each diagonal vertex, times
// the product over the remaining vertices of the given (possibly conjugated)
// graph. Vertex-product twist only.
TFunction vertex_product(const FixedGraph& g, std::span<const int> vertices, const WeightAssignment& w) {
  Polynomial num(1L);
  Polynomial den(1L);
  for (int v : vertices) {
    const Rational delta = w.eval(pp_delta_form(g.vertices[static_cast<size_t>(v)]));
    const int exponent = 1 - g.valence(v);
    num *= Polynomial::linear_root(-delta);
    const Polynomial minus = Polynomial::linear_root(delta);
    for (int k = 0; k < exponent; ++k) num *= minus;
    for (int k = 0; k < -exponent; ++k) den *= minus;
  }
  return TFunction(std::move(num), std::move(den));
}

int valuation_or_zero(const TFunction& f) { return f.is_zero() ? kZeroValuation : f.valuation_at_zero(); }

}  // namespace

ExplodedGraph explode(const FixedGraph& g) {
  if (g.target != Target::ProductPP) throw WrongTarget("explode needs a graph on (P^{n-1})^2");
  ExplodedGraph out;
  const int nv = static_cast<int>(g.vertices.size());
  const auto inc = g.incident_edges();
  for (int v = 0; v < nv; ++v) {
    if (diag(g, v)) out.diagonal.push_back({v, g.valence(v)});
  }
  std::vector<int> comp(static_cast<size_t>(nv), -1);
  for (int start = 0; start < nv; ++start) {
    if (diag(g, start) || comp[static_cast<size_t>(start)] >= 0) continue;
    ExplodedGraph::Component c;
    const int id = static_cast<int>(out.components.size());
    std::vector<int> stack{start};
    comp[static_cast<size_t>(start)] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      c.vertices.push_back(v);
      for (int e : inc[static_cast<size_t>(v)]) {
        const int u = g.other_end(e, v);
        if (diag(g, u)) {
          ++c.half_edges;
        } else if (comp[static_cast<size_t>(u)] < 0) {
          comp[static_cast<size_t>(u)] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    out.components.push_back(std::move(c));
  }
  return out;
}

FixedGraph conjugate_component(const FixedGraph& g, std::span<const int> component) {
  FixedGraph out = g;
  for (int v : component) {
    auto& p = out.vertices[static_cast<size_t>(v)];
    if (p.first == p.second) throw WrongTarget("conjugate_component: component contains a diagonal vertex");
    std::swap(p.first, p.second);
  }
  return out;
}

std::vector<FixedGraph> conjugation_patterns(const FixedGraph& g) {
  const auto ex = explode(g);
  const size_t m = ex.components.size();
  if (m > 20) throw std::length_error("too many components for pattern enumeration");
  std::vector<FixedGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    FixedGraph h = g;
    for (size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) h = conjugate_component(h, ex.components[i].vertices);
    }
    out.push_back(std::move(h));
  }
  return out;
}

FixedGraph unordered_image(const FixedGraph& g) {
  FixedGraph out = g;
  for (auto& p : out.vertices) {
    if (p.first > p.second) std::swap(p.first, p.second);
  }
  return out;
}

WeylClass weyl_class(const FixedGraph& g) {
  WeylClass w;
  w.components = static_cast<int>(explode(g).components.size());
  std::set<std::string> seen;
  for (auto& h : conjugation_patterns(g)) {
    auto gs = with_symmetry(std::move(h));
    if (!seen.insert(gs.canonical).second) continue;
    w.members.push_back(std::move(gs));
  }
  std::sort(w.members.begin(), w.members.end(),
            [](const auto& a, const auto& b) { return a.canonical < b.canonical; });
  w.key = w.members.front().canonical;
  for (const auto& p : g.vertices) w.touches_diagonal |= p.first == p.second;
  return w;
}

std::vector<WeylClass> group_weyl_classes(std::span<const GraphWithSymmetry> graphs) {
  std::map<std::string, WeylClass> classes;
  std::unordered_map<std::string, int> present;
  for (const auto& g : graphs) present.emplace(g.canonical, 0);
  for (const auto& g : graphs) {
    if (present[g.canonical]++ > 0) continue;
    WeylClass w = weyl_class(g.graph);
    auto it = classes.find(w.key);
    if (it == classes.end()) {
      for (const auto& m : w.members) {
        if (!present.contains(m.canonical)) {
          throw InvarianceViolation("flip image missing from the graph list: class " + std::to_string(w.members.size()));
        }
      }
      classes.emplace(w.key, std::move(w));
    } else if (it->second.members.size() != w.members.size()) {
      throw InvarianceViolation("Weyl classes of two members differ in size");
    }
  }
  std::vector<WeylClass> out;
  std::size_t total = 0;
  for (auto& [key, w] : classes) {
    total += w.members.size();
    out.push_back(std::move(w));
  }
  if (total != present.size()) throw InvarianceViolation("Weyl classes do not partition the graph list");
  return out;
}

std::vector<WeylClass> weyl_classes(int n, int d, int m, GraphStore& store) {
  std::vector<GraphWithSymmetry> all;
  for (int d1 = 0; d1 <= d; ++d1) {
    const auto& part = store.get(Target::ProductPP, n, Degree{d1, d - d1}, m);
    all.insert(all.end(), part.begin(), part.end());
  }
  return group_weyl_classes(all);
}

bool class_invariance_check(const WeylClass& w, std::span<const Partition2> insertions,
                            const WeightAssignment& small) {
  if (small.mode() != TorusMode::Small) throw std::invalid_argument("class_invariance_check needs small-torus weights");
  std::optional<Rational> ins;
  std::optional<Rational> euler;
  int degenerate0 = 0;
  for (const auto& m : w.members) {
    int degenerate = 0;
    const Rational e = inv_euler_class_residual(m.graph, small, degenerate);
    const Rational i = insertion_value(m.graph, insertions, small);
    if (!ins) {
      ins = i;
      euler = e;
      degenerate0 = degenerate;
      continue;
    }
    if (i != *ins) throw InvarianceViolation("insertion values differ inside a Weyl class");
    if (e != *euler || degenerate != degenerate0) {
      throw InvarianceViolation("normal bundle contributions differ inside a Weyl class");
    }
  }
  return true;
}

HalfEdgeCensus halfedge_census(const WeylClass& w) {
  const auto ex = explode(w.members.front().graph);
  HalfEdgeCensus c;
  int sum_val = 0;
  for (const auto& d : ex.diagonal) {
    c.diagonal_valences.push_back(d.valence);
    sum_val += d.valence;
    c.bound += 2 - d.valence;
  }
  int sum_j = 0;
  int excess = 0;  // sum (j - 1) nu_j
  for (const auto& comp : ex.components) {
    ++c.nu[comp.half_edges];
    sum_j += comp.half_edges;
    excess += comp.half_edges - 1;
  }
  if (ex.diagonal.empty()) throw CensusViolation("class does not touch the diagonal");
  if (sum_j != sum_val) throw CensusViolation("sum j nu_j != sum of diagonal valences");
  if (static_cast<int>(ex.diagonal.size()) != 1 + excess) throw CensusViolation("|D| != 1 + sum (j-1) nu_j");
  c.bound += c.nu.contains(1) ? c.nu.at(1) : 0;
  int rhs = 2;
  for (const auto& [j, count] : c.nu) rhs += j >= 2 ? (j - 2) * count : 0;
  if (c.bound != rhs) throw CensusViolation("nu_1 + sum (2 - val) != 2 + sum (j-2) nu_j");
  c.inequality_holds = c.bound >= 2;
  return c;
}

ClassSumReport class_sum(const WeylClass& w, std::span<const Partition2> insertions,
                         const PerturbedWeights& pw, const LocalizationOptions& opts) {
  ClassSumReport r;
  std::vector<SmallTorusTerm> terms;
  for (const auto& m : w.members) {
    terms.push_back(small_torus_term(m, insertions, pw, opts));
    r.degenerate_members += terms.back().expansion.has_value();
  }
  r.sum = small_torus_sum(terms).value;
  r.valuation = valuation_or_zero(r.sum);
  r.regular_at_zero = r.valuation >= 0;
  if (r.regular_at_zero) r.value_at_zero = r.sum.eval_at_zero();

  const FixedGraph& g = w.members.front().graph;
  const auto ex = explode(g);
  TFunction numerator(1L);
  for (const auto& comp : ex.components) {
    const TFunction tg = vertex_product(g, comp.vertices, pw.small);
    const FixedGraph conj = conjugate_component(g, comp.vertices);
    numerator *= tg + vertex_product(conj, comp.vertices, pw.small);
  }
  for (const auto& d : ex.diagonal) r.diagonal_pole_order += d.valence - 2;
  r.numerator_valuation = valuation_or_zero(numerator);

  if (opts.twist_model != TwistModel::VertexProduct || opts.disable_twist) return r;

  // Twist level: the pattern sum factors over components.
  std::vector<int> diagonal_vertices;
  for (const auto& d : ex.diagonal) diagonal_vertices.push_back(d.vertex);
  const LocalizationOptions plain{opts.disable_twist, opts.printed_edge_sign, opts.twist_model, 1};
  const int sign = twist_factors(g, plain).sign;
  const TFunction predicted = TFunction(static_cast<long>(sign)) *
                              vertex_product(g, diagonal_vertices, pw.small) * numerator;
  const auto patterns = conjugation_patterns(g);
  std::vector<TFunction> pattern_twists;
  for (const auto& p : patterns) pattern_twists.push_back(twist_value(p, pw.small, plain));
  const TFunction pattern_sum = tf_sum(pattern_twists);
  if (!(pattern_sum == predicted)) {
    throw FactorizationMismatch("sum of twists over conjugation patterns does not factor over components");
  }
  if (r.degenerate_members > 0) return r;

  // Full sum: common factor times the pattern sum, with the orbit count
  // carried by |Aut phi(G)|.
  Integer prod_d = 1;
  for (const auto& e : g.edges) prod_d *= e.degree;
  const Rational common = insertion_value(g, insertions, pw.small) * inv_euler_class(g, pw.small) /
                          Rational(Integer(automorphism_order(unordered_image(g)) * prod_d));
  if (!(TFunction(common) * pattern_sum == r.sum)) {
    throw FactorizationMismatch("class sum differs from common factor times pattern sum");
  }
  r.factorization_checked = true;
  return r;
}

}  // namespace gw
