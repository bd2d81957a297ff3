#pragma once

// Torus-fixed points, invariant curves and tangent weights for
//   P^{n-1}                (used for sanity checks of the localization engine),
//   (P^{n-1})^2            under the big torus ((C*)^n)^2 or the diagonal (C*)^n,
//   Gr(2,n)                under (C*)^n.
//
// Weights are linear forms in the characters lambda_i^h (h = 0 for the first
// factor / the only factor, h = 1 for the second factor). The tangent weight
// of the invariant curve from p toward q is character(p) - character(q).

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gw/rational.hpp"

namespace gw {

enum class Target : std::uint8_t { Projective = 0, ProductPP = 1, Grassmannian = 2 };

std::string target_name(Target t);
/// Accepts "proj", "pp", "gr"; throws std::invalid_argument.
Target parse_target(const std::string& name);

/// A torus-fixed point.
///   Projective:   q_first           (second = 0)
///   ProductPP:    q_first x q_second, order significant
///   Grassmannian: <first second>, stored with first < second
struct FixedPoint {
  Target target = Target::ProductPP;
  int first = 0;
  int second = 0;

  static FixedPoint proj(int i) { return {Target::Projective, i, 0}; }
  static FixedPoint pp(int a, int b) { return {Target::ProductPP, a, b}; }
  /// Throws std::invalid_argument for i == j.
  static FixedPoint gr(int i, int j);

  std::string to_string() const;
  auto operator<=>(const FixedPoint&) const = default;
};

/// True iff the point lies on the diagonal of (P^{n-1})^2; throws WrongTarget
/// for non-product targets.
bool is_diagonal(const FixedPoint& p);

/// Sum of c * lambda_{index}^{factor}. Terms are kept sorted and nonzero.
class LinearForm {
 public:
  LinearForm() = default;
  static LinearForm var(int factor, int index);

  LinearForm operator-() const;
  friend LinearForm operator+(const LinearForm& a, const LinearForm& b);
  friend LinearForm operator-(const LinearForm& a, const LinearForm& b);
  friend LinearForm operator*(const Rational& c, const LinearForm& a);
  friend bool operator==(const LinearForm& a, const LinearForm& b) = default;

  bool is_zero() const { return terms_.empty(); }
  struct Term {
    int factor;
    int index;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };
  const std::vector<Term>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// The character of a fixed point: lambda_i (projective), lambda_a^0 and
/// lambda_b^1 paired per factor, or lambda_i + lambda_j (Grassmannian).
/// For the product, factor h's character is returned by pp_coordinate_form.
LinearForm pp_coordinate_form(const FixedPoint& p, int factor);

enum class TorusMode : std::uint8_t { Big, Small };

/// Numeric values for the torus characters.
///
/// In Small mode, lambda_i^0 = lambda_i^1 = lambda_i. A Big assignment may
/// carry a companion small vector used by specialize().
class WeightAssignment {
 public:
  static WeightAssignment small_torus(std::vector<Rational> values);
  static WeightAssignment big_torus(std::vector<Rational> factor1, std::vector<Rational> factor2,
                                    std::vector<Rational> small = {});

  /// Deterministic pseudorandom integer weights with |lambda| <= 10^6,
  /// rejection-sampled until validate_generic(max_edge_degree) passes.
  static WeightAssignment random(int n, std::uint64_t seed, TorusMode mode, int max_edge_degree);

  int n() const { return n_; }
  TorusMode mode() const { return mode_; }
  Rational value(int factor, int index) const;
  Rational eval(const LinearForm& f) const;

  /// Diagonal (C*)^n assignment; uses the companion small vector if present,
  /// otherwise requires lambda^0 = lambda^1. Throws GenericityFailure when the
  /// result is degenerate for edge degrees up to max_edge_degree.
  WeightAssignment specialize(int max_edge_degree = 1) const;

  /// Checks that every denominator of the localization recipe that depends
  /// only on point and curve data is nonzero for edges of degree up to
  /// max_edge_degree; throws GenericityFailure.
  void validate_generic(int max_edge_degree) const;

  /// The same assignment with every weight negated.
  WeightAssignment negated() const;

  friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;

 private:
  int n_ = 0;
  TorusMode mode_ = TorusMode::Small;
  std::vector<Rational> f1_;
  std::vector<Rational> f2_;
  std::vector<Rational> small_;
};

std::vector<FixedPoint> fixed_points(Target target, int n);

/// True iff p and q are distinct fixed points joined by an invariant curve.
bool joined(const FixedPoint& p, const FixedPoint& q);

/// Fixed points joined to p.
std::vector<FixedPoint> neighbors(const FixedPoint& p, int n);

struct InvariantEdgeType {
  FixedPoint p;
  FixedPoint q;
  /// ProductPP: 1 or 2, the factor in which the curve moves. Otherwise 0.
  int moving_factor = 0;
  auto operator<=>(const InvariantEdgeType&) const = default;
};

/// Unordered invariant curves, each listed once with p < q.
std::vector<InvariantEdgeType> invariant_edges(Target target, int n);

/// ProductPP: factor (1 or 2) whose coordinate differs between p and q.
int moving_factor(const FixedPoint& p, const FixedPoint& q);

/// Symbolic tangent weights at a fixed point (size dim X).
std::vector<LinearForm> tangent_forms(const FixedPoint& p, int n);
std::vector<Rational> tangent_weights(const FixedPoint& p, const WeightAssignment& w);

/// Equivariant splitting of TX restricted to the invariant curve through p
/// and q: the tangent direction plus line bundles given by their weight at p
/// and their degree on the curve (weight at q = weight at p - degree * tangent).
struct CurveData {
  LinearForm tangent;  // tangent weight of the curve at p
  struct Direction {
    LinearForm weight_at_p;
    int degree;
  };
  std::vector<Direction> normal;
};

CurveData curve_data(const FixedPoint& p, const FixedPoint& q, int n);

/// Equivariant restriction of (H1 - H2) at a product point: lambda_a^0 - lambda_b^1.
LinearForm pp_delta_form(const FixedPoint& p);

}  // namespace gw
