#include "gw/localization.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <queue>
#include <thread>

#include "gw/errors.hpp"
#include "gw/series.hpp"

namespace gw {

namespace {

const FixedPoint& label(const FixedGraph& g, int v) { return g.vertices[static_cast<size_t>(v)]; }

void require_nonzero(const Rational& x, const char* what) {
  if (x == 0) throw DegenerateWeights(std::string(what) + " vanishes for these weights");
}

Rational tangent_euler(const FixedPoint& p, const WeightAssignment& w) {
  Rational e(1);
  for (const auto& x : tangent_weights(p, w)) e *= x;
  require_nonzero(e, "e(T_p X)");
  return e;
}

Rational rpow(const Rational& base, int exponent) {
  if (exponent >= 0) return pow(base, static_cast<unsigned>(exponent));
  return Rational(1) / pow(base, static_cast<unsigned>(-exponent));
}

bool touches_diagonal(const FixedGraph& g) {
  for (const auto& p : g.vertices) {
    if (is_diagonal(p)) return true;
  }
  return false;
}

void check_insertions(Target target, int n, std::span<const Partition2> insertions) {
  for (const auto& mu : insertions) {
    if (target == Target::Projective) {
      if (mu.mu2 != 0 || mu.mu1 < 0 || mu.mu1 > n - 1) {
        throw InvalidPartition("P^{n-1} insertions are H^k with 0 <= k <= n-1, got " + mu.to_string());
      }
    } else if (mu.n() != n) {
      throw InvalidPartition(mu.to_string() + " does not fit the 2 x " + std::to_string(n - 2) + " box");
    }
  }
}

int codim_sum(std::span<const Partition2> insertions) {
  int c = 0;
  for (const auto& mu : insertions) c += mu.codimension();
  return c;
}

template <class F>
auto with_reseed(std::uint64_t seed, F&& fn) {
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt) * kReseedStep;
    try {
      return fn(s);
    } catch (const DegenerateWeights&) {
      if (attempt + 1 >= kMaxReseeds) throw;
    }
  }
}

}  // namespace

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Per-graph pieces

Rational flag_weight(const FixedGraph& g, int v, int e, const WeightAssignment& w) {
  const int u = g.other_end(e, v);
  const Rational alpha = w.eval(curve_data(label(g, v), label(g, u), g.n).tangent);
  require_nonzero(alpha, "curve tangent weight");
  return alpha / g.edges[static_cast<size_t>(e)].degree;
}

Rational edge_factor(const FixedGraph& g, int e, const WeightAssignment& w) {
  const auto& edge = g.edges[static_cast<size_t>(e)];
  const int d = edge.degree;
  const CurveData c = curve_data(label(g, edge.u), label(g, edge.v), g.n);
  const Rational omega = w.eval(c.tangent) / d;
  require_nonzero(omega, "curve tangent weight");

  // Tangent direction: O(2d) minus the infinitesimal reparametrization.
  Rational den(1);
  for (int s = 1; s <= d; ++s) den *= -(s * omega) * (s * omega);
  Rational num(1);
  for (const auto& dir : c.normal) {
    const Rational u = w.eval(dir.weight_at_p);
    const int k = dir.degree * d;
    if (k >= 0) {
      for (int s = 0; s <= k; ++s) {
        Rational x = u - s * omega;
        require_nonzero(x, "H^0 weight of the normal bundle");
        den *= x;
      }
    } else {
      for (int s = 1; s <= -k - 1; ++s) num *= u + s * omega;
    }
  }
  return num / den;
}

namespace {

// With `degenerate` non-null a vanishing flag sum at exponent -1 is skipped
// and counted instead of raising.
Rational vertex_factor_impl(const FixedGraph& g, int v, const WeightAssignment& w, int* degenerate) {
  const FixedPoint& p = label(g, v);
  const Rational eT = tangent_euler(p, w);
  const int nm = g.marks_at(v);
  std::vector<int> flags;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (g.edges[e].u == v || g.edges[e].v == v) flags.push_back(static_cast<int>(e));
  }
  const int val = static_cast<int>(flags.size());
  if (val == 0) {
    // Constant map: M_{0,m} x {p}; only the point class of M_{0,3} integrates.
    return nm == 3 ? Rational(1) / eT : Rational(0);
  }
  Rational prod(1);
  Rational sum(0);
  for (int e : flags) {
    const Rational inv = Rational(1) / flag_weight(g, v, e, w);
    prod *= inv;
    sum += inv;
  }
  const int exponent = val + nm - 3;
  if (exponent == -1 && sum == 0 && degenerate != nullptr) {
    ++*degenerate;
    return rpow(eT, val - 1) * prod;
  }
  if (exponent < 0) require_nonzero(sum, "sum of inverse flag weights");
  return rpow(eT, val - 1) * prod * rpow(sum, exponent);
}

}  // namespace

Rational vertex_factor(const FixedGraph& g, int v, const WeightAssignment& w) {
  return vertex_factor_impl(g, v, w, nullptr);
}

Rational inv_euler_class_residual(const FixedGraph& g, const WeightAssignment& w, int& degenerate) {
  degenerate = 0;
  Rational r(1);
  for (size_t e = 0; e < g.edges.size(); ++e) r *= edge_factor(g, static_cast<int>(e), w);
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    r *= vertex_factor_impl(g, static_cast<int>(v), w, &degenerate);
  }
  return r;
}

Rational inv_euler_class(const FixedGraph& g, const WeightAssignment& w) {
  Rational r(1);
  for (size_t e = 0; e < g.edges.size(); ++e) r *= edge_factor(g, static_cast<int>(e), w);
  for (size_t v = 0; v < g.vertices.size(); ++v) r *= vertex_factor(g, static_cast<int>(v), w);
  return r;
}

Rational insertion_at(const Partition2& mu, const FixedPoint& p, const WeightAssignment& w) {
  switch (p.target) {
    case Target::Projective: return pow(w.value(0, p.first), static_cast<unsigned>(mu.mu1));
    case Target::ProductPP: return schur_eval(mu, w.value(0, p.first), w.value(1, p.second));
    case Target::Grassmannian: return schur_eval(mu, w.value(0, p.first), w.value(0, p.second));
  }
  return 0;
}

Rational insertion_value(const FixedGraph& g, std::span<const Partition2> insertions,
                         const WeightAssignment& w) {
  if (insertions.size() != g.markings.size()) {
    throw std::invalid_argument("need one insertion per marked point");
  }
  Rational r(1);
  for (size_t k = 0; k < insertions.size(); ++k) {
    r *= insertion_at(insertions[k], label(g, g.markings[k]), w);
  }
  return r;
}

TwistFactors twist_factors(const FixedGraph& g, const LocalizationOptions& opts) {
  if (g.target != Target::ProductPP) throw WrongTarget("the twisting class lives on (P^{n-1})^2");
  TwistFactors out;
  auto delta = [&](int v) { return pp_delta_form(label(g, v)); };
  int parity = opts.printed_edge_sign ? static_cast<int>(g.edges.size()) : 0;
  if (opts.twist_model == TwistModel::VertexProduct) {
    for (const auto& e : g.edges) parity += e.degree - 1;
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      const int vi = static_cast<int>(v);
      out.factors.push_back({delta(vi), 1});
      const int exponent = 1 - g.valence(vi);
      if (exponent != 0) out.factors.push_back({-delta(vi), exponent});
    }
  } else {
    for (const auto& e : g.edges) {
      const int d = e.degree;
      const Rational s = moving_factor(label(g, e.u), label(g, e.v)) == 1 ? 1 : -1;
      for (int i = 0; i <= d; ++i) {
        const LinearForm x = Rational(d - i, d) * (s * delta(e.u)) + Rational(i, d) * (s * delta(e.v));
        out.factors.push_back({x, 1});
        if (i > 0 && i < d) out.factors.push_back({-x, -1});
      }
    }
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      const int vi = static_cast<int>(v);
      const int exponent = 1 - g.valence(vi);
      if (exponent == 0) continue;
      out.factors.push_back({delta(vi), exponent});
      out.factors.push_back({-delta(vi), exponent});
    }
  }
  out.sign = parity % 2 == 0 ? 1 : -1;
  return out;
}

TFunction twist_value(const FixedGraph& g, const WeightAssignment& w, const LocalizationOptions& opts) {
  if (g.target != Target::ProductPP) throw WrongTarget("the twisting class lives on (P^{n-1})^2");
  if (opts.disable_twist) return TFunction(1L);
  const TwistFactors tf = twist_factors(g, opts);
  Polynomial num(static_cast<long>(tf.sign));
  Polynomial den(1L);
  for (const auto& f : tf.factors) {
    const Polynomial lin = Polynomial::linear_root(-w.eval(f.c));
    for (int k = 0; k < f.exponent; ++k) num *= lin;
    for (int k = 0; k < -f.exponent; ++k) den *= lin;
  }
  return TFunction(std::move(num), std::move(den));
}

EdgeBundleSides edge_bundle_sides(int d, const Rational& c0, const Rational& cinf) {
  if (d < 0) throw InvalidDegree("edge bundle degree must be >= 0");
  EdgeBundleSides out;
  if (d == 0) {
    out.weight_ratio = c0 * cinf;
    out.closed_form = c0 * cinf;
    return out;
  }
  // H^0(L): the d+1 interpolated weights. H^1(L^dual) has the interior ones,
  // each negated by Serre duality.
  auto weight = [&](int i) -> Rational { return ((d - i) * c0 + i * cinf) / d; };
  Rational h0(1);
  for (int i = 0; i <= d; ++i) h0 *= weight(i);
  Rational h1(1);
  for (int i = 1; i < d; ++i) h1 *= -weight(i);
  if (h1 == 0) throw DegenerateWeights("interior weight of the edge bundle vanishes");
  out.weight_ratio = h0 / h1;
  out.closed_form = (d % 2 == 1 ? 1 : -1) * c0 * cinf;
  return out;
}

Rational edge_bundle_oracle(int d, const Rational& c0, const Rational& cinf) {
  const auto sides = edge_bundle_sides(d, c0, cinf);
  if (sides.weight_ratio != sides.closed_form) {
    throw OracleMismatch("edge bundle: weights give " + to_string(sides.weight_ratio) +
                         ", closed form gives " + to_string(sides.closed_form));
  }
  return sides.closed_form;
}

namespace {

Rational constant_part(const GraphWithSymmetry& g, std::span<const Partition2> insertions,
                       const WeightAssignment& w) {
  return insertion_value(g.graph, insertions, w) * inv_euler_class(g.graph, w) / Rational(g.divisor);
}

}  // namespace

TFunction graph_total(const GraphWithSymmetry& g, std::span<const Partition2> insertions,
                      const WeightAssignment& w, const LocalizationOptions& opts) {
  const Rational c = constant_part(g, insertions, w);
  if (g.graph.target != Target::ProductPP || c == 0) return TFunction(c);
  return TFunction(c) * twist_value(g.graph, w, opts);
}

Rational graph_total_at_zero(const GraphWithSymmetry& g, std::span<const Partition2> insertions,
                             const WeightAssignment& w, const LocalizationOptions& opts) {
  const Rational c = constant_part(g, insertions, w);
  if (g.graph.target != Target::ProductPP || c == 0) return c;
  return c * twist_value(g.graph, w, opts).eval_at_zero();
}

// ---------------------------------------------------------------------------
// Expansions in e

PerturbedWeights PerturbedWeights::from_big(const WeightAssignment& big, int max_edge_degree) {
  if (big.mode() != TorusMode::Big) throw std::invalid_argument("from_big needs big-torus weights");
  PerturbedWeights pw{big.specialize(max_edge_degree), {}};
  for (int i = 0; i < big.n(); ++i) pw.mu.push_back(big.value(1, i));
  return pw;
}

int degenerate_vertex_count(const FixedGraph& g, const WeightAssignment& small) {
  int count = 0;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    const int vi = static_cast<int>(v);
    if (g.valence(vi) != 2 || g.marks_at(vi) != 0) continue;
    Rational sum(0);
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].u == vi || g.edges[e].v == vi) {
        sum += Rational(1) / flag_weight(g, vi, static_cast<int>(e), small);
      }
    }
    count += sum == 0;
  }
  return count;
}

namespace {

using RSeries = TruncatedSeries<Rational>;
using TSeries = TruncatedSeries<TFunction>;

RSeries eval_series(const LinearForm& f, const PerturbedWeights& pw, int order) {
  Rational b(0);
  for (const auto& t : f.terms()) {
    if (t.factor == 1) b += t.coeff * pw.mu[static_cast<size_t>(t.index)];
  }
  return RSeries::linear(order, pw.small.eval(f), b);
}

RSeries series_pow(const RSeries& s, int exponent) {
  RSeries base = exponent < 0 ? s.inverse() : s;
  RSeries r(s.order(), Rational(1));
  for (int k = 0; k < std::abs(exponent); ++k) r *= base;
  return r;
}

RSeries insertion_series(const Partition2& mu, const FixedPoint& p, const PerturbedWeights& pw, int order) {
  const RSeries x(order, pw.small.value(0, p.first));
  const RSeries y = eval_series(LinearForm::var(1, p.second), pw, order);
  RSeries h(order);
  const int k = mu.mu1 - mu.mu2;
  for (int i = 0; i <= k; ++i) h += series_pow(x, i) * series_pow(y, k - i);
  return series_pow(x * y, mu.mu2) * h;
}

RSeries edge_series(const FixedGraph& g, int e, const PerturbedWeights& pw, int order) {
  const auto& edge = g.edges[static_cast<size_t>(e)];
  const int d = edge.degree;
  const CurveData c = curve_data(label(g, edge.u), label(g, edge.v), g.n);
  const RSeries omega = eval_series(c.tangent, pw, order) * RSeries(order, Rational(1, d));
  RSeries den(order, Rational(1));
  for (int s = 1; s <= d; ++s) {
    const RSeries so = omega * RSeries(order, Rational(s));
    den *= RSeries(order, Rational(-1)) * so * so;
  }
  for (const auto& dir : c.normal) {
    const RSeries u = eval_series(dir.weight_at_p, pw, order);
    for (int s = 0; s <= dir.degree * d; ++s) den *= u + RSeries(order, Rational(-s)) * omega;
  }
  return den.inverse();
}

// Returns the vertex factor divided by e^{shifts}; shifts counts the
// vanishing flag sums.
RSeries vertex_series(const FixedGraph& g, int v, const PerturbedWeights& pw, int order, int& shifts) {
  const FixedPoint& p = label(g, v);
  RSeries eT(order, Rational(1));
  for (const auto& f : tangent_forms(p, g.n)) eT *= eval_series(f, pw, order);
  const int nm = g.marks_at(v);
  std::vector<RSeries> inv_flags;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    if (edge.u != v && edge.v != v) continue;
    const int u = g.other_end(static_cast<int>(e), v);
    const RSeries alpha = eval_series(curve_data(p, label(g, u), g.n).tangent, pw, order);
    inv_flags.push_back(alpha.inverse() * RSeries(order, Rational(edge.degree)));
  }
  const int val = static_cast<int>(inv_flags.size());
  if (val == 0) return nm == 3 ? eT.inverse() : RSeries(order);
  RSeries prod(order, Rational(1));
  RSeries sum(order);
  for (const auto& x : inv_flags) {
    prod *= x;
    sum += x;
  }
  const int exponent = val + nm - 3;
  if (exponent < 0 && sum[0] == 0) {
    sum = sum.shift_down();
    if (sum[0] == 0) throw DegenerateWeights("flag-weight sum vanishes to second order");
    ++shifts;
    if (exponent != -1) throw std::logic_error("vanishing flag sum at a vertex of exponent < -1");
  }
  return series_pow(eT, val - 1) * prod * series_pow(sum, exponent);
}

}  // namespace

EpsExpansion graph_total_expansion(const GraphWithSymmetry& gs, std::span<const Partition2> insertions,
                                   const PerturbedWeights& pw, const LocalizationOptions& opts) {
  const FixedGraph& g = gs.graph;
  if (g.target != Target::ProductPP) throw WrongTarget("expansions are for product graphs");
  const int poles = degenerate_vertex_count(g, pw.small);
  const int order = poles + 1;

  RSeries c(order, Rational(1) / Rational(gs.divisor));
  for (size_t k = 0; k < insertions.size(); ++k) {
    c *= insertion_series(insertions[k], label(g, g.markings[k]), pw, order);
  }
  for (size_t e = 0; e < g.edges.size(); ++e) c *= edge_series(g, static_cast<int>(e), pw, order);
  int shifts = 0;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    c *= vertex_series(g, static_cast<int>(v), pw, order, shifts);
  }
  if (shifts != poles) throw std::logic_error("pole count mismatch in expansion");
  c = c.truncated(poles);

  TSeries twist(poles, TFunction(1L));
  if (!opts.disable_twist) {
    const TwistFactors tf = twist_factors(g, opts);
    twist = TSeries(poles, TFunction(static_cast<long>(tf.sign)));
    const TFunction t = TFunction::t();
    for (const auto& f : tf.factors) {
      const RSeries c = eval_series(f.c, pw, 1);
      TSeries lin = TSeries::linear(poles, t + TFunction(c[0]), TFunction(c[1]));
      if (f.exponent < 0) lin = lin.inverse();
      for (int k = 0; k < std::abs(f.exponent); ++k) twist *= lin;
    }
  }
  EpsExpansion out;
  out.pole_order = poles;
  for (int i = 0; i <= poles; ++i) {
    TFunction acc;
    for (int j = 0; j <= i; ++j) acc += TFunction(c[j]) * twist[i - j];
    out.coeffs.push_back(std::move(acc));
  }
  return out;
}

SmallTorusTerm small_torus_term(const GraphWithSymmetry& g, std::span<const Partition2> insertions,
                                const PerturbedWeights& pw, const LocalizationOptions& opts) {
  SmallTorusTerm term;
  if (degenerate_vertex_count(g.graph, pw.small) > 0) {
    term.expansion = graph_total_expansion(g, insertions, pw, opts);
  } else {
    term.value = graph_total(g, insertions, pw.small, opts);
  }
  return term;
}

SmallTorusSum small_torus_sum(std::span<const SmallTorusTerm> terms) {
  std::vector<TFunction> plain;
  int max_pole = 0;
  for (const auto& t : terms) {
    if (t.expansion) max_pole = std::max(max_pole, t.expansion->pole_order);
    else plain.push_back(t.value);
  }
  std::vector<std::vector<TFunction>> by_power(static_cast<size_t>(max_pole) + 1);
  for (const auto& t : terms) {
    if (!t.expansion) continue;
    const int p = t.expansion->pole_order;
    for (int i = 0; i <= p; ++i) {
      by_power[static_cast<size_t>(i - p + max_pole)].push_back(t.expansion->coeffs[static_cast<size_t>(i)]);
    }
  }
  SmallTorusSum out;
  for (int k = 0; k < max_pole; ++k) {
    const TFunction c = tf_sum(by_power[static_cast<size_t>(k)]);
    if (c.is_zero()) continue;
    if (c.valuation_at_zero() < 1) {
      throw InvarianceViolation("e^" + std::to_string(k - max_pole) +
                                " terms of degenerate graphs do not vanish at t = 0");
    }
    ++out.surviving_poles;
  }
  auto& finite = by_power[static_cast<size_t>(max_pole)];
  plain.insert(plain.end(), finite.begin(), finite.end());
  out.value = tf_sum(plain);
  return out;
}

// ---------------------------------------------------------------------------
// GraphStore

const std::vector<GraphWithSymmetry>& GraphStore::get(Target target, int n, Degree degree, int m) {
  std::lock_guard lock(mutex_);
  const auto key = std::tuple(target, n, degree, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  std::vector<GraphWithSymmetry> graphs;
  if (cache_dir_) {
    auto cached = enumerate_graphs_cached(*cache_dir_, target, n, degree, m);
    if (cached.cache_hit) ++disk_hits_;
    graphs = std::move(cached.graphs);
  } else {
    graphs = enumerate_graphs(target, n, degree, m);
  }
  return memo_.emplace(key, std::move(graphs)).first->second;
}

// ---------------------------------------------------------------------------
// Dimensions

DimensionReport dimension_check(int n, int k, int d, int m, std::span<const Partition2> insertions) {
  if (k < 1 || n <= k) throw InvalidDimension("need 1 <= k < n");
  if (d < 0) throw InvalidDegree("degree must be >= 0");
  DimensionReport r;
  r.k = k;
  r.gr_vdim = k * (n - k) + n * d + m - 3;
  r.pp_vdim = k * (n - 1) + n * d + m - 3;
  r.difference = r.pp_vdim - r.gr_vdim;
  r.codim_sum = codim_sum(insertions);
  r.matches = r.codim_sum == r.gr_vdim;
  // Genus one: vdim = c_1 . beta + m on both sides.
  r.genus_one_difference = (n * d + m) - (n * d + m);
  return r;
}

// ---------------------------------------------------------------------------
// Invariants

namespace {

InvariantResult untwisted_invariant(Target target, int n, int d, int vdim,
                                    std::span<const Partition2> insertions, std::uint64_t seed,
                                    GraphStore& store, const LocalizationOptions& opts) {
  if (n < 3) throw InvalidDimension("need n >= 3");
  if (d < 0) throw InvalidDegree("degree must be >= 0");
  check_insertions(target, n, insertions);
  const int m = static_cast<int>(insertions.size());
  const auto& graphs = store.get(target, n, Degree{d, 0}, m);
  InvariantResult r;
  r.graph_count = graphs.size();
  r.codim = codim_sum(insertions);
  r.vdim = vdim;
  std::tie(r.equivariant_sum, r.seed_used) = with_reseed(seed, [&](std::uint64_t s) {
    const auto w = WeightAssignment::random(n, s, TorusMode::Small, std::max(d, 1));
    std::vector<Rational> terms(graphs.size());
    parallel_for(graphs.size(), opts.jobs, [&](std::size_t i) {
      terms[i] = graph_total_at_zero(graphs[i], insertions, w, opts);
    });
    Rational sum(0);
    for (const auto& x : terms) sum += x;
    return std::pair(sum, s);
  });
  r.value = r.codim == r.vdim ? r.equivariant_sum : Rational(0);
  return r;
}

}  // namespace

InvariantResult gr_invariant(int n, int d, std::span<const Partition2> insertions,
                             std::uint64_t seed, GraphStore& store, const LocalizationOptions& opts) {
  const int m = static_cast<int>(insertions.size());
  return untwisted_invariant(Target::Grassmannian, n, d, 2 * (n - 2) + n * d + m - 3, insertions,
                             seed, store, opts);
}

InvariantResult projective_invariant(int n, int d, std::span<const Partition2> insertions,
                                     std::uint64_t seed, GraphStore& store,
                                     const LocalizationOptions& opts) {
  const int m = static_cast<int>(insertions.size());
  return untwisted_invariant(Target::Projective, n, d, (n - 1) + n * d + m - 3, insertions, seed,
                             store, opts);
}

TwistedResult twisted_pp_invariant(int n, Degree degree, std::span<const Partition2> insertions,
                                   std::uint64_t seed, GraphStore& store, TorusMode mode,
                                   const LocalizationOptions& opts) {
  if (n < 3) throw InvalidDimension("need n >= 3");
  if (degree.d1 < 0 || degree.d2 < 0) throw InvalidDegree("bidegree entries must be >= 0");
  check_insertions(Target::ProductPP, n, insertions);
  const int m = static_cast<int>(insertions.size());
  const auto& graphs = store.get(Target::ProductPP, n, degree, m);
  const int max_deg = std::max(degree.total(), 1);

  TwistedResult r;
  r.mode = mode;
  r.graph_count = graphs.size();
  with_reseed(seed, [&](std::uint64_t s) {
    const auto big = WeightAssignment::random(n, s, TorusMode::Big, max_deg);
    std::vector<SmallTorusTerm> terms(graphs.size());
    if (mode == TorusMode::Small) {
      const auto pw = PerturbedWeights::from_big(big, max_deg);
      parallel_for(graphs.size(), opts.jobs, [&](std::size_t i) {
        terms[i] = small_torus_term(graphs[i], insertions, pw, opts);
      });
    } else {
      parallel_for(graphs.size(), opts.jobs, [&](std::size_t i) {
        terms[i].value = graph_total(graphs[i], insertions, big, opts);
      });
    }
    std::vector<SmallTorusTerm> u_terms;
    std::vector<SmallTorusTerm> d_terms;
    r.degenerate_graph_count = 0;
    for (size_t i = 0; i < graphs.size(); ++i) {
      r.degenerate_graph_count += terms[i].expansion.has_value();
      (touches_diagonal(graphs[i].graph) ? d_terms : u_terms).push_back(std::move(terms[i]));
    }
    r.diagonal_graph_count = d_terms.size();
    r.u_total = small_torus_sum(u_terms).value;
    r.diagonal_total = small_torus_sum(d_terms).value;
    r.seed_used = s;
    return 0;
  });
  r.total = r.u_total + r.diagonal_total;
  r.raw_at_zero = r.total.eval_at_zero();
  const int gr_vdim = 2 * (n - 2) + n * degree.total() + m - 3;
  r.value = codim_sum(insertions) == gr_vdim ? r.raw_at_zero : Rational(0);
  return r;
}

CorrespondenceReport correspondence_check(int n, int d, std::span<const Partition2> insertions,
                                          std::uint64_t seed, GraphStore& store,
                                          const LocalizationOptions& opts) {
  if (d < 0) throw InvalidDegree("degree must be >= 0");
  CorrespondenceReport r;
  const auto gr = gr_invariant(n, d, insertions, seed, store, opts);
  r.gr_value = gr.value;
  r.gr_graphs = gr.graph_count;
  Rational sum(0);
  for (int d1 = 0; d1 <= d; ++d1) {
    const Degree deg{d1, d - d1};
    const auto tw = twisted_pp_invariant(n, deg, insertions, seed, store, TorusMode::Small, opts);
    r.per_bidegree.emplace_back(deg, tw.value);
    r.pp_graphs += tw.graph_count;
    sum += tw.value;
  }
  r.pp_value = sum / 2;
  r.equal = r.gr_value == r.pp_value;
  return r;
}

SplitSumReport split_sum_check(int n, int d, std::span<const Partition2> insertions,
                               std::uint64_t seed, GraphStore& store,
                               const LocalizationOptions& opts) {
  SplitSumReport r;
  const auto gr = gr_invariant(n, d, insertions, seed, store, opts);
  r.gr_value = gr.value;
  Rational u(0);
  Rational diag(0);
  for (int d1 = 0; d1 <= d; ++d1) {
    const auto tw = twisted_pp_invariant(n, {d1, d - d1}, insertions, seed, store, TorusMode::Small, opts);
    u += tw.u_total.eval_at_zero();
    diag += tw.diagonal_total.eval_at_zero();
  }
  r.u_half = u / 2;
  r.diagonal_value = diag;
  if (gr.codim == gr.vdim) {
    r.u_matches = r.u_half == r.gr_value;
    r.diagonal_vanishes = r.diagonal_value == 0;
  } else {
    // Off the matching codimension only the non-equivariant parts are compared.
    r.u_matches = r.gr_value == 0;
    r.diagonal_vanishes = true;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lifts

FixedGraph lift_graph(const FixedGraph& gr_graph, int orientation) {
  if (gr_graph.target != Target::Grassmannian) throw WrongTarget("lift_graph needs a Gr(2,n) graph");
  FixedGraph out;
  out.target = Target::ProductPP;
  out.n = gr_graph.n;
  out.edges = gr_graph.edges;
  out.markings = gr_graph.markings;
  const size_t nv = gr_graph.vertices.size();
  out.vertices.assign(nv, FixedPoint::pp(0, 0));
  std::vector<bool> seen(nv, false);
  const auto& root = gr_graph.vertices[0];
  out.vertices[0] = orientation == 0 ? FixedPoint::pp(root.first, root.second)
                                     : FixedPoint::pp(root.second, root.first);
  seen[0] = true;
  const auto inc = gr_graph.incident_edges();
  std::queue<int> todo;
  todo.push(0);
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    const FixedPoint here = out.vertices[static_cast<size_t>(v)];
    for (int e : inc[static_cast<size_t>(v)]) {
      const int u = gr_graph.other_end(e, v);
      if (seen[static_cast<size_t>(u)]) continue;
      const auto& q = gr_graph.vertices[static_cast<size_t>(u)];
      // The shared index keeps its slot; the other one moves.
      const bool keep_first = here.first == q.first || here.first == q.second;
      const int shared = keep_first ? here.first : here.second;
      const int other = q.first == shared ? q.second : q.first;
      out.vertices[static_cast<size_t>(u)] =
          keep_first ? FixedPoint::pp(shared, other) : FixedPoint::pp(other, shared);
      seen[static_cast<size_t>(u)] = true;
      todo.push(u);
    }
  }
  return out;
}

FixedGraph project_graph(const FixedGraph& pp_graph) {
  if (pp_graph.target != Target::ProductPP) throw WrongTarget("project_graph needs a product graph");
  FixedGraph out = pp_graph;
  out.target = Target::Grassmannian;
  for (auto& p : out.vertices) {
    if (p.first == p.second) throw WrongTarget("graph meets the diagonal: " + p.to_string());
    p = FixedPoint::gr(p.first, p.second);
  }
  return out;
}

LiftPairReport lift_pair_check(int n, int d, std::span<const Partition2> insertions,
                               const WeightAssignment& small, GraphStore& store,
                               const LocalizationOptions& opts) {
  if (small.mode() != TorusMode::Small) throw std::invalid_argument("lift_pair_check needs small-torus weights");
  const auto& graphs = store.get(Target::Grassmannian, n, Degree{d, 0}, static_cast<int>(insertions.size()));
  LiftPairReport r;
  r.gr_graphs = graphs.size();
  std::vector<char> bad(graphs.size(), 0);
  std::vector<char> self(graphs.size(), 0);
  parallel_for(graphs.size(), opts.jobs, [&](std::size_t i) {
    const auto a = with_symmetry(lift_graph(graphs[i].graph, 0));
    const auto b = with_symmetry(lift_graph(graphs[i].graph, 1));
    Rational lifted = graph_total_at_zero(a, insertions, small, opts);
    if (a.canonical == b.canonical) {
      self[i] = 1;
    } else {
      lifted += graph_total_at_zero(b, insertions, small, opts);
    }
    bad[i] = lifted != 2 * graph_total_at_zero(graphs[i], insertions, small, opts);
  });
  for (size_t i = 0; i < graphs.size(); ++i) {
    r.mismatches += static_cast<std::size_t>(bad[i]);
    r.self_conjugate += static_cast<std::size_t>(self[i]);
  }
  return r;
}

}  // namespace gw
