#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <fstream>

#include "gw/errors.hpp"
#include "gw/graph.hpp"

using namespace gw;

namespace {

FixedGraph pp_graph(std::vector<FixedPoint> vertices, std::vector<GraphEdge> edges, std::vector<int> markings = {}) {
  FixedGraph g;
  g.target = Target::ProductPP;
  g.n = 4;
  g.vertices = std::move(vertices);
  g.edges = std::move(edges);
  g.markings = std::move(markings);
  g.validate();
  return g;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("gw-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("small enumeration counts") {
  const auto p1 = enumerate_graphs(Target::Projective, 2, {1, 0}, 0);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].aut_order == 1);
  CHECK(p1[0].divisor == 1);
  CHECK(enumerate_graphs(Target::Projective, 2, {1, 0}, 1).size() == 2);
  CHECK(enumerate_graphs(Target::Projective, 2, {2, 0}, 0).size() == 3);
  CHECK(enumerate_graphs(Target::Grassmannian, 4, {1, 0}, 0).size() == 12);
  CHECK(enumerate_graphs(Target::ProductPP, 4, {1, 0}, 0).size() == 24);
  CHECK(enumerate_graphs(Target::ProductPP, 4, {0, 0}, 3).size() == 16);
  CHECK_THROWS_AS(enumerate_graphs(Target::ProductPP, 4, {-1, 0}, 0), InvalidDegree);
}

TEST_CASE("fast enumeration matches the naive generator") {
  struct Case {
    Target target;
    int n;
    Degree degree;
    int m;
  };
  const std::vector<Case> cases{
      {Target::Projective, 2, {2, 0}, 1},       {Target::Projective, 3, {2, 0}, 2},
      {Target::Grassmannian, 4, {1, 0}, 2},     {Target::Grassmannian, 4, {2, 0}, 1},
      {Target::ProductPP, 3, {1, 1}, 1},        {Target::ProductPP, 3, {2, 0}, 0},
      {Target::ProductPP, 3, {0, 0}, 3},
  };
  for (const auto& c : cases) {
    const auto fast = enumerate_graphs(c.target, c.n, c.degree, c.m);
    const auto naive = enumerate_graphs_naive(c.target, c.n, c.degree, c.m);
    CHECK(fast.size() == naive.size());
    for (const auto& g : naive) {
      std::size_t hits = 0;
      for (const auto& f : fast) hits += isomorphic_brute_force(g, f.graph);
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("canonical form") {
  using P = FixedPoint;
  const auto path1 = pp_graph({P::pp(0, 1), P::pp(2, 1), P::pp(2, 3)}, {{0, 1, 1}, {1, 2, 1}});
  const auto path2 = pp_graph({P::pp(2, 3), P::pp(0, 1), P::pp(2, 1)}, {{2, 0, 1}, {1, 2, 1}});
  CHECK(canonical_form(path1) == canonical_form(path2));
  CHECK(isomorphic_brute_force(path1, path2));

  const auto marked_a = pp_graph({P::pp(0, 1), P::pp(2, 1)}, {{0, 1, 1}}, {0});
  const auto marked_b = pp_graph({P::pp(0, 1), P::pp(2, 1)}, {{0, 1, 1}}, {1});
  CHECK(canonical_form(marked_a) != canonical_form(marked_b));

  const auto star = pp_graph({P::pp(0, 1), P::pp(2, 1), P::pp(2, 1), P::pp(2, 1)}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  const auto path = pp_graph({P::pp(0, 1), P::pp(2, 1), P::pp(0, 1), P::pp(2, 1)}, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  CHECK(canonical_form(star) != canonical_form(path));

  for (const auto& g : enumerate_graphs(Target::ProductPP, 3, {1, 1}, 2)) {
    CHECK(canonical_form(decode_canonical(g.canonical)) == g.canonical);
  }
}

TEST_CASE("automorphism order") {
  using P = FixedPoint;
  CHECK(automorphism_order(pp_graph({P::pp(0, 1), P::pp(2, 1)}, {{0, 1, 1}})) == 1);
  CHECK(automorphism_order(pp_graph({P::pp(0, 1), P::pp(2, 1), P::pp(3, 1)}, {{0, 1, 1}, {0, 2, 1}})) == 1);
  const auto legs = pp_graph({P::pp(0, 1), P::pp(2, 1), P::pp(2, 1)}, {{0, 1, 1}, {0, 2, 1}});
  CHECK(automorphism_order(legs) == 2);
  CHECK(automorphism_count_brute_force(to_colored_tree(legs)) == 2);
  const auto star = pp_graph({P::pp(0, 1), P::pp(2, 1), P::pp(2, 1), P::pp(2, 1)}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  CHECK(automorphism_order(star) == 6);
  for (const auto& g : enumerate_graphs(Target::ProductPP, 3, {2, 1}, 0)) {
    CHECK(g.aut_order == automorphism_count_brute_force(to_colored_tree(g.graph)));
  }
}

TEST_CASE("graph cache round trip and corruption") {
  const auto dir = fresh_dir("cache");
  const auto first = enumerate_graphs_cached(dir, Target::Grassmannian, 4, {1, 0}, 1);
  CHECK_FALSE(first.cache_hit);
  const auto second = enumerate_graphs_cached(dir, Target::Grassmannian, 4, {1, 0}, 1);
  CHECK(second.cache_hit);
  REQUIRE(second.graphs.size() == first.graphs.size());
  for (std::size_t i = 0; i < first.graphs.size(); ++i) {
    CHECK(second.graphs[i].canonical == first.graphs[i].canonical);
    CHECK(second.graphs[i].divisor == first.graphs[i].divisor);
  }
  const CacheKey key{Target::Grassmannian, 4, {1, 0}, 1};
  const CacheKey other{Target::Grassmannian, 4, {1, 0}, 2};
  CHECK(key.file_name() != other.file_name());

  const auto path = dir / key.file_name();
  std::string bytes;
  {
    std::ifstream in(path, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  bytes[bytes.size() / 2] ^= 0x5a;
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << bytes;
  }
  CHECK_THROWS_AS(read_cache(dir, key), CacheCorruption);
  CHECK_THROWS_AS(enumerate_graphs_cached(dir, Target::Grassmannian, 4, {1, 0}, 1), CacheCorruption);
  CHECK_FALSE(read_cache(dir, other).has_value());
  std::filesystem::remove_all(dir);
}
