#pragma once

// Weyl classes of fixed-locus graphs on (P^{n-1})^2.
//
// Deleting the diagonal vertices (i,i) of a graph leaves components
// G_1..G_M inside the good locus. Conjugating a component swaps the two
// coordinates of each of its labels; the Weyl class of a graph is the set of
// distinct graphs reached by conjugating any subset of its components.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gw/graph.hpp"
#include "gw/localization.hpp"

namespace gw {

struct ExplodedGraph {
  struct DiagonalVertex {
    int vertex;
    int valence;
  };
  struct Component {
    std::vector<int> vertices;
    int half_edges = 0;  // severed edge-ends toward diagonal vertices
  };
  std::vector<DiagonalVertex> diagonal;
  std::vector<Component> components;
};

/// Throws WrongTarget for targets other than (P^{n-1})^2.
ExplodedGraph explode(const FixedGraph& g);

/// (a,b) -> (b,a) on the given vertices (a component of g minus the diagonal).
FixedGraph conjugate_component(const FixedGraph& g, std::span<const int> component);

/// All 2^M conjugation patterns of g (index bit i flips component i).
std::vector<FixedGraph> conjugation_patterns(const FixedGraph& g);

/// The image of g in Gr(2,n)-style unordered labels, with the same edges
/// and markings; its automorphisms permute the conjugation patterns.
FixedGraph unordered_image(const FixedGraph& g);

struct WeylClass {
  std::string key;  // smallest canonical form among the members
  std::vector<GraphWithSymmetry> members;
  int components = 0;
  bool touches_diagonal = false;
};

/// Distinct flip images of g, deduplicated by canonical form.
WeylClass weyl_class(const FixedGraph& g);

/// Groups a graph list into Weyl classes. Every flip image of every graph
/// must itself occur in the list (the list should hold all bidegrees of a
/// fixed total degree); throws InvarianceViolation otherwise.
std::vector<WeylClass> group_weyl_classes(std::span<const GraphWithSymmetry> graphs);

/// All product graphs of total degree d with m markings, grouped.
std::vector<WeylClass> weyl_classes(int n, int d, int m, GraphStore& store);

/// Checks that insertion_value and 1/e(N) (with vanishing flag sums of
/// degenerate vertices left out) agree exactly on all members under the
/// small torus. Throws InvarianceViolation.
bool class_invariance_check(const WeylClass& w, std::span<const Partition2> insertions,
                            const WeightAssignment& small);

struct HalfEdgeCensus {
  std::map<int, int> nu;  // j -> number of components with j half-edges
  std::vector<int> diagonal_valences;
  int bound = 0;          // nu_1 + sum_D (2 - val)
  bool inequality_holds = false;  // bound >= 2
};

/// Throws CensusViolation when the counting identities fail.
HalfEdgeCensus halfedge_census(const WeylClass& w);

struct ClassSumReport {
  TFunction sum;
  bool regular_at_zero = false;
  Rational value_at_zero;  // meaningful when regular_at_zero
  /// Order of vanishing of the sum at t = 0 (kZeroValuation for the zero function).
  int valuation = 0;
  int degenerate_members = 0;
  /// Valuation of prod_i (T(G_i) + T(conj G_i)) and sum_D (val - 2).
  int numerator_valuation = 0;
  int diagonal_pole_order = 0;
  bool factorization_checked = false;
};

inline constexpr int kZeroValuation = 1 << 20;

/// Sum of graph_total over the members under the small torus (degenerate
/// members through their expansions in e). For the vertex-product twist also
/// verifies
///   sum over patterns of T = sign * prod_D t^{2-val} * prod_i (T(G_i) + T(conj G_i))
/// and, when no member is degenerate,
///   sum over members of C / a = I / (e(N) |Aut phi(G)| prod d_e) * sum over patterns of T.
/// Throws FactorizationMismatch.
ClassSumReport class_sum(const WeylClass& w, std::span<const Partition2> insertions,
                         const PerturbedWeights& pw, const LocalizationOptions& opts = {});

}  // namespace gw
