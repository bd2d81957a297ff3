#pragma once

// Decorated trees indexing the torus-fixed loci of M_{0,m}(X, beta).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gw/gkm.hpp"
#include "gw/rational.hpp"

namespace gw {

/// Curve class: (d1, d2) on (P^{n-1})^2, (d, 0) on the other targets.
struct Degree {
  int d1 = 0;
  int d2 = 0;
  int total() const { return d1 + d2; }
  auto operator<=>(const Degree&) const = default;
};

struct GraphEdge {
  int u = 0;
  int v = 0;
  int degree = 1;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct FixedGraph {
  Target target = Target::ProductPP;
  int n = 0;
  std::vector<FixedPoint> vertices;
  std::vector<GraphEdge> edges;
  /// markings[k] is the vertex carrying marked point k+1.
  std::vector<int> markings;

  int valence(int v) const;
  int marks_at(int v) const;
  /// Index of the other endpoint of edge e seen from v.
  int other_end(int e, int v) const { return edges[e].u == v ? edges[e].v : edges[e].u; }
  std::vector<std::vector<int>> incident_edges() const;
  Degree degree() const;
  /// Throws std::logic_error when the tree, label or degree invariants fail.
  void validate() const;

  friend bool operator==(const FixedGraph&, const FixedGraph&) = default;
};

/// A vertex-colored tree with degree-labeled edges; the common substrate of
/// canonical forms and automorphism counts.
struct ColoredTree {
  std::vector<std::string> colors;
  std::vector<GraphEdge> edges;
};

/// Canonical code (minimum over all roots of the AHU code).
std::string canonical_code(const ColoredTree& tree);
/// Order of the group of color- and edge-degree-preserving automorphisms.
std::uint64_t automorphism_count(const ColoredTree& tree);
/// Same, by trying every vertex permutation; only for tiny trees.
std::uint64_t automorphism_count_brute_force(const ColoredTree& tree);

ColoredTree to_colored_tree(const FixedGraph& g);

/// Isomorphic graphs (label, degree and marking preserving) give identical
/// strings; the string decodes back to an isomorphic graph.
std::string canonical_form(const FixedGraph& g);
FixedGraph decode_canonical(const std::string& bytes);

std::uint64_t automorphism_order(const FixedGraph& g);

struct GraphWithSymmetry {
  FixedGraph graph;
  std::string canonical;
  std::uint64_t aut_order = 1;
  /// a_Gamma = aut_order * prod_e d_e
  Integer divisor;
};

GraphWithSymmetry with_symmetry(FixedGraph g);

/// All fixed-locus graphs for M_{0,m}(target, degree), one per isomorphism
/// class, sorted by canonical form. Throws InvalidDegree for negative degrees.
std::vector<GraphWithSymmetry> enumerate_graphs(Target target, int n, Degree degree, int m);

/// Independent generator used by tests: all labeled trees on up to
/// total-degree + 1 vertices with all labelings, deduplicated by brute-force
/// isomorphism testing rather than canonical codes.
std::vector<FixedGraph> enumerate_graphs_naive(Target target, int n, Degree degree, int m);
bool isomorphic_brute_force(const FixedGraph& a, const FixedGraph& b);

// ---------------------------------------------------------------------------
// Enumeration cache

struct CacheKey {
  Target target;
  int n;
  Degree degree;
  int m;
  std::string to_string() const;
  std::string file_name() const;
};

/// Version of the enumeration algorithm; part of every cache key.
inline constexpr int kEnumerationVersion = 1;

/// Writes atomically (temp file then rename).
void write_cache(const std::filesystem::path& dir, const CacheKey& key,
                 const std::vector<GraphWithSymmetry>& graphs);
/// nullopt when no file exists; throws CacheCorruption on checksum, magic or
/// key mismatch.
std::optional<std::vector<GraphWithSymmetry>> read_cache(const std::filesystem::path& dir,
                                                         const CacheKey& key);

struct CachedEnumeration {
  std::vector<GraphWithSymmetry> graphs;
  bool cache_hit = false;
};

/// Reads the cache when present, otherwise enumerates and writes it.
CachedEnumeration enumerate_graphs_cached(const std::filesystem::path& dir, Target target, int n,
                                          Degree degree, int m);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gw
