#include "gw/gkm.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "gw/errors.hpp"

namespace gw {

std::string target_name(Target t) {
  switch (t) {
    case Target::Projective: return "proj";
    case Target::ProductPP: return "pp";
    case Target::Grassmannian: return "gr";
  }
  return "?";
}

Target parse_target(const std::string& name) {
  if (name == "proj") return Target::Projective;
  if (name == "pp") return Target::ProductPP;
  if (name == "gr") return Target::Grassmannian;
  throw std::invalid_argument("unknown target '" + name + "' (expected gr, pp or proj)");
}

FixedPoint FixedPoint::gr(int i, int j) {
  if (i == j) throw std::invalid_argument("Grassmannian fixed point needs two distinct indices");
  return {Target::Grassmannian, std::min(i, j), std::max(i, j)};
}

std::string FixedPoint::to_string() const {
  switch (target) {
    case Target::Projective: return std::to_string(first);
    case Target::ProductPP: return "(" + std::to_string(first) + "," + std::to_string(second) + ")";
    case Target::Grassmannian: return "<" + std::to_string(first) + std::to_string(second) + ">";
  }
  return "?";
}

bool is_diagonal(const FixedPoint& p) {
  if (p.target != Target::ProductPP) {
    throw WrongTarget("is_diagonal needs a point of (P^{n-1})^2, got " + p.to_string());
  }
  return p.first == p.second;
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm LinearForm::var(int factor, int index) {
  LinearForm f;
  f.terms_.push_back({factor, index, Rational(1)});
  return f;
}

LinearForm LinearForm::operator-() const {
  LinearForm out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
  LinearForm out;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  auto key = [](const LinearForm::Term& t) { return std::pair(t.factor, t.index); };
  while (ia != a.terms_.end() || ib != b.terms_.end()) {
    if (ib == b.terms_.end() || (ia != a.terms_.end() && key(*ia) < key(*ib))) {
      out.terms_.push_back(*ia++);
    } else if (ia == a.terms_.end() || key(*ib) < key(*ia)) {
      out.terms_.push_back(*ib++);
    } else {
      Rational c = ia->coeff + ib->coeff;
      if (c != 0) out.terms_.push_back({ia->factor, ia->index, c});
      ++ia;
      ++ib;
    }
  }
  return out;
}

LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + (-b); }

LinearForm operator*(const Rational& c, const LinearForm& a) {
  if (c == 0) return {};
  LinearForm out = a;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

std::string LinearForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += t.coeff < 0 ? " - " : " + ";
    else if (t.coeff < 0) s += "-";
    Rational mag = abs(t.coeff);
    if (mag != 1) s += gw::to_string(mag) + "*";
    s += "l" + std::to_string(t.index) + "^" + std::to_string(t.factor + 1);
  }
  return s;
}

LinearForm pp_coordinate_form(const FixedPoint& p, int factor) {
  switch (p.target) {
    case Target::Projective: return LinearForm::var(0, p.first);
    case Target::ProductPP: return LinearForm::var(factor, factor == 0 ? p.first : p.second);
    case Target::Grassmannian: return LinearForm::var(0, p.first) + LinearForm::var(0, p.second);
  }
  return {};
}

LinearForm pp_delta_form(const FixedPoint& p) {
  if (p.target != Target::ProductPP) throw WrongTarget("H1 - H2 lives on (P^{n-1})^2");
  return LinearForm::var(0, p.first) - LinearForm::var(1, p.second);
}

// ---------------------------------------------------------------------------
// WeightAssignment

WeightAssignment WeightAssignment::small_torus(std::vector<Rational> values) {
  WeightAssignment w;
  w.n_ = static_cast<int>(values.size());
  w.mode_ = TorusMode::Small;
  w.small_ = std::move(values);
  return w;
}

WeightAssignment WeightAssignment::big_torus(std::vector<Rational> factor1,
                                             std::vector<Rational> factor2,
                                             std::vector<Rational> small) {
  if (factor1.size() != factor2.size() || (!small.empty() && small.size() != factor1.size())) {
    throw std::invalid_argument("weight vectors must have equal length");
  }
  WeightAssignment w;
  w.n_ = static_cast<int>(factor1.size());
  w.mode_ = TorusMode::Big;
  w.f1_ = std::move(factor1);
  w.f2_ = std::move(factor2);
  w.small_ = std::move(small);
  return w;
}

Rational WeightAssignment::value(int factor, int index) const {
  if (mode_ == TorusMode::Small) return small_.at(static_cast<size_t>(index));
  return (factor == 0 ? f1_ : f2_).at(static_cast<size_t>(index));
}

Rational WeightAssignment::eval(const LinearForm& f) const {
  Rational acc(0);
  for (const auto& t : f.terms()) acc += t.coeff * value(t.factor, t.index);
  return acc;
}

namespace {

void check_factor(const std::vector<Rational>& v, int max_edge_degree, const char* what) {
  const int n = static_cast<int>(v.size());
  std::set<Rational> seen(v.begin(), v.end());
  if (static_cast<int>(seen.size()) != n) {
    throw GenericityFailure(std::string(what) + ": weights are not pairwise distinct");
  }
  // Interior weights of covers: a*l_i + b*l_j - d*l_k for a + b = d.
  for (int d = 2; d <= max_edge_degree; ++d) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          for (int a = 1; a < d; ++a) {
            if (a * v[static_cast<size_t>(i)] + (d - a) * v[static_cast<size_t>(j)] ==
                d * v[static_cast<size_t>(k)]) {
              throw GenericityFailure(std::string(what) + ": cover weight vanishes");
            }
          }
        }
      }
    }
  }
}

}  // namespace

void WeightAssignment::validate_generic(int max_edge_degree) const {
  if (mode_ == TorusMode::Small) {
    check_factor(small_, max_edge_degree, "small torus");
    return;
  }
  check_factor(f1_, max_edge_degree, "factor 1");
  check_factor(f2_, max_edge_degree, "factor 2");
  for (const auto& a : f1_) {
    for (const auto& b : f2_) {
      if (a == b) throw GenericityFailure("big torus: H1 - H2 vanishes at a fixed point");
    }
  }
}

WeightAssignment WeightAssignment::specialize(int max_edge_degree) const {
  if (mode_ == TorusMode::Small) return *this;
  std::vector<Rational> values = small_;
  if (values.empty()) {
    if (f1_ != f2_) {
      throw GenericityFailure("specialize needs lambda^1 = lambda^2 or a companion small vector");
    }
    values = f1_;
  }
  WeightAssignment w = small_torus(std::move(values));
  w.validate_generic(max_edge_degree);
  return w;
}

WeightAssignment WeightAssignment::negated() const {
  WeightAssignment w = *this;
  for (auto* v : {&w.f1_, &w.f2_, &w.small_}) {
    for (auto& x : *v) x = -x;
  }
  return w;
}

WeightAssignment WeightAssignment::random(int n, std::uint64_t seed, TorusMode mode,
                                          int max_edge_degree) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-1'000'000, 1'000'000);
  auto draw = [&] {
    std::vector<Rational> v;
    for (int i = 0; i < n; ++i) v.emplace_back(dist(rng));
    return v;
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    WeightAssignment w;
    if (mode == TorusMode::Small) {
      w = small_torus(draw());
    } else {
      auto f1 = draw();
      auto f2 = draw();
      w = big_torus(std::move(f1), std::move(f2), draw());
    }
    try {
      w.validate_generic(max_edge_degree);
      if (mode == TorusMode::Big) w.specialize(max_edge_degree);
      return w;
    } catch (const GenericityFailure&) {
    }
  }
  throw GenericityFailure("could not draw generic weights");
}

// ---------------------------------------------------------------------------
// Points and curves

std::vector<FixedPoint> fixed_points(Target target, int n) {
  std::vector<FixedPoint> out;
  switch (target) {
    case Target::Projective:
      for (int i = 0; i < n; ++i) out.push_back(FixedPoint::proj(i));
      break;
    case Target::ProductPP:
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) out.push_back(FixedPoint::pp(a, b));
      }
      break;
    case Target::Grassmannian:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) out.push_back(FixedPoint::gr(i, j));
      }
      break;
  }
  return out;
}

bool joined(const FixedPoint& p, const FixedPoint& q) {
  if (p.target != q.target || p == q) return false;
  switch (p.target) {
    case Target::Projective: return true;
    case Target::ProductPP: return (p.first == q.first) != (p.second == q.second);
    case Target::Grassmannian: {
      int shared = (p.first == q.first) + (p.first == q.second) + (p.second == q.first) +
                   (p.second == q.second);
      return shared == 1;
    }
  }
  return false;
}

std::vector<FixedPoint> neighbors(const FixedPoint& p, int n) {
  std::vector<FixedPoint> out;
  for (const auto& q : fixed_points(p.target, n)) {
    if (joined(p, q)) out.push_back(q);
  }
  return out;
}

int moving_factor(const FixedPoint& p, const FixedPoint& q) {
  if (p.target != Target::ProductPP) return 0;
  return p.first != q.first ? 1 : 2;
}

std::vector<InvariantEdgeType> invariant_edges(Target target, int n) {
  std::vector<InvariantEdgeType> out;
  const auto pts = fixed_points(target, n);
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (joined(pts[i], pts[j])) out.push_back({pts[i], pts[j], moving_factor(pts[i], pts[j])});
    }
  }
  return out;
}

std::vector<LinearForm> tangent_forms(const FixedPoint& p, int n) {
  std::vector<LinearForm> out;
  auto l = [](int h, int i) { return LinearForm::var(h, i); };
  switch (p.target) {
    case Target::Projective:
      for (int k = 0; k < n; ++k) {
        if (k != p.first) out.push_back(l(0, p.first) - l(0, k));
      }
      break;
    case Target::ProductPP:
      for (int k = 0; k < n; ++k) {
        if (k != p.first) out.push_back(l(0, p.first) - l(0, k));
      }
      for (int k = 0; k < n; ++k) {
        if (k != p.second) out.push_back(l(1, p.second) - l(1, k));
      }
      break;
    case Target::Grassmannian:
      for (int k = 0; k < n; ++k) {
        if (k == p.first || k == p.second) continue;
        out.push_back(l(0, p.first) - l(0, k));
        out.push_back(l(0, p.second) - l(0, k));
      }
      break;
  }
  return out;
}

std::vector<Rational> tangent_weights(const FixedPoint& p, const WeightAssignment& w) {
  std::vector<Rational> out;
  for (const auto& f : tangent_forms(p, w.n())) out.push_back(w.eval(f));
  return out;
}

CurveData curve_data(const FixedPoint& p, const FixedPoint& q, int n) {
  if (!joined(p, q)) throw std::invalid_argument(p.to_string() + " and " + q.to_string() + " are not joined");
  auto l = [](int h, int i) { return LinearForm::var(h, i); };
  CurveData c;
  switch (p.target) {
    case Target::Projective: {
      c.tangent = l(0, p.first) - l(0, q.first);
      for (int k = 0; k < n; ++k) {
        if (k != p.first && k != q.first) c.normal.push_back({l(0, p.first) - l(0, k), 1});
      }
      break;
    }
    case Target::ProductPP: {
      const int h = moving_factor(p, q) - 1;
      const int from = h == 0 ? p.first : p.second;
      const int to = h == 0 ? q.first : q.second;
      const int fixed = h == 0 ? p.second : p.first;
      c.tangent = l(h, from) - l(h, to);
      for (int k = 0; k < n; ++k) {
        if (k != from && k != to) c.normal.push_back({l(h, from) - l(h, k), 1});
      }
      for (int k = 0; k < n; ++k) {
        if (k != fixed) c.normal.push_back({l(1 - h, fixed) - l(1 - h, k), 0});
      }
      break;
    }
    case Target::Grassmannian: {
      // p = <i j>, q = <i k>: the curve moves e_j toward e_k.
      const int i = (p.first == q.first || p.first == q.second) ? p.first : p.second;
      const int j = p.first == i ? p.second : p.first;
      const int k = q.first == i ? q.second : q.first;
      c.tangent = l(0, j) - l(0, k);
      for (int m = 0; m < n; ++m) {
        if (m == i || m == j || m == k) continue;
        c.normal.push_back({l(0, i) - l(0, m), 0});
        c.normal.push_back({l(0, j) - l(0, m), 1});
      }
      c.normal.push_back({l(0, i) - l(0, k), 1});
      break;
    }
  }
  return c;
}

}  // namespace gw
