#pragma once

// Schubert calculus on Gr(2,n) and its lift to (P^{n-1})^2.
//
// Partitions (mu1 >= mu2) fitting in the 2 x (n-2) box index the Schubert
// basis of H*(Gr(2,n)). The lift of sigma_mu is the Schur polynomial
// S_mu(H1, H2) in the two hyperplane classes. Products are computed by the
// Pieri rule for special classes sigma_p plus the two-row Jacobi-Trudi
// identity sigma_(a,b) = sigma_a sigma_b - sigma_(a+1) sigma_(b-1); the
// quantum versions use the quantum Pieri rule instead. The quantum code is an
// independent oracle and is never used by the localization pipeline.

#include <compare>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gw/rational.hpp"

namespace gw {

struct Partition2 {
  int mu1 = 0;
  int mu2 = 0;
  int box_width = 0;  // n - 2

  /// Validated construction; throws InvalidPartition.
  static Partition2 make(int mu1, int mu2, int n);
  static Partition2 point_class(int n) { return make(n - 2, n - 2, n); }

  int codimension() const { return mu1 + mu2; }
  int n() const { return box_width + 2; }
  /// Complementary partition in the box (Poincare dual).
  Partition2 dual() const { return {box_width - mu2, box_width - mu1, box_width}; }

  std::string to_string() const;

  auto operator<=>(const Partition2&) const = default;
};

/// Class in the Schubert basis.
using CohomologyVector = std::map<Partition2, Integer>;

/// Polynomial in H1, H2 with integer coefficients, keyed by exponents.
using BivariatePolynomial = std::map<std::pair<int, int>, Integer>;

/// All partitions in the 2 x (n-2) box, lexicographic; throws InvalidDimension
/// for n < 3.
std::vector<Partition2> partitions_in_box(int n);

/// S_mu(x1, x2). Uses the bialternant off the diagonal and
/// (mu1 - mu2 + 1) x^(mu1+mu2) on it.
Rational schur_eval(const Partition2& mu, const Rational& x1, const Rational& x2);

/// S_mu as a polynomial in H1, H2: (H1 H2)^mu2 * h_(mu1-mu2)(H1, H2).
BivariatePolynomial schur_polynomial(const Partition2& mu);

BivariatePolynomial multiply(const BivariatePolynomial& a, const BivariatePolynomial& b);

/// Cup product in H*(Gr(2,n)).
CohomologyVector classical_product(const CohomologyVector& a, const CohomologyVector& b, int n);

/// Coefficient of the point class in the product of the given classes.
Integer gr_integral(std::span<const Partition2> classes, int n);

/// Coefficient of H1^(n-1) H2^(n-1).
Integer pp_integral(const BivariatePolynomial& poly, int n);

struct MartinResult {
  Integer lhs;
  Rational rhs;
  bool equal = false;
};

/// Degree-zero correspondence: integral over Gr(2,n) against half the integral
/// over (P^{n-1})^2 of the lifted class times (H1-H2)(H2-H1).
MartinResult martin_check(std::span<const Partition2> classes, int n);

// ---------------------------------------------------------------------------
// Quantum oracle

/// Key: (Schubert class, power of q).
using QuantumVector = std::map<std::pair<Partition2, int>, Integer>;

/// Small quantum product in QH*(Gr(2,n)).
QuantumVector quantum_product(const QuantumVector& a, const QuantumVector& b, int n);

/// Table of 3-point genus-zero invariants <sigma_a, sigma_b, sigma_c>_d for
/// every ordered triple and 0 <= d <= d_max.
class QuantumOracle {
 public:
  QuantumOracle(int n, int d_max);

  int n() const { return n_; }
  int d_max() const { return d_max_; }
  /// Zero for codimension mismatches; throws std::out_of_range for d > d_max.
  Integer invariant(const Partition2& a, const Partition2& b, const Partition2& c, int d) const;

 private:
  int n_;
  int d_max_;
  std::map<std::tuple<Partition2, Partition2, Partition2, int>, Integer> table_;
};

QuantumOracle quantum_pieri_oracle(int n, int d_max);

}  // namespace gw
