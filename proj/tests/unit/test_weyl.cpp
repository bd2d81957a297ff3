#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gw/errors.hpp"
#include "gw/weyl.hpp"

using namespace gw;

namespace {

using P = FixedPoint;

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

// Center (0,0) with single-edge legs to (1,0), (2,0), (3,0).
FixedGraph star() {
  return pp_graph({P::pp(0, 0), P::pp(1, 0), P::pp(2, 0), P::pp(3, 0)}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
}

Partition2 part(int a, int b) { return Partition2::make(a, b, 4); }

}  // namespace

TEST_CASE("explode") {
  const auto u = pp_graph({P::pp(0, 1), P::pp(2, 1)}, {{0, 1, 1}});
  auto ex = explode(u);
  CHECK(ex.diagonal.empty());
  REQUIRE(ex.components.size() == 1);
  CHECK(ex.components[0].half_edges == 0);

  const auto path = pp_graph({P::pp(1, 0), P::pp(0, 0), P::pp(0, 2)}, {{0, 1, 1}, {1, 2, 1}});
  ex = explode(path);
  REQUIRE(ex.diagonal.size() == 1);
  CHECK(ex.diagonal[0].valence == 2);
  REQUIRE(ex.components.size() == 2);
  CHECK(ex.components[0].half_edges == 1);
  CHECK(ex.components[1].half_edges == 1);

  ex = explode(star());
  CHECK(ex.components.size() == 3);
  const auto census = halfedge_census(weyl_class(star()));
  CHECK(census.nu.at(1) == 3);

  FixedGraph gr;
  gr.target = Target::Grassmannian;
  CHECK_THROWS_AS(explode(gr), WrongTarget);
}

TEST_CASE("conjugate_component") {
  const auto g = pp_graph({P::pp(0, 1), P::pp(0, 2)}, {{0, 1, 1}});
  const std::vector<int> all{0, 1};
  const auto c = conjugate_component(g, all);
  CHECK(c.vertices[0] == P::pp(1, 0));
  CHECK(c.vertices[1] == P::pp(2, 0));
  CHECK(g.degree() == Degree{0, 1});
  CHECK(c.degree() == Degree{1, 0});
  const std::vector<int> center{0};
  CHECK_THROWS_AS(conjugate_component(star(), center), WrongTarget);
}

TEST_CASE("weyl_class sizes") {
  const auto u = pp_graph({P::pp(0, 1), P::pp(2, 1)}, {{0, 1, 1}});
  const auto w = weyl_class(u);
  REQUIRE(w.members.size() == 2);
  CHECK(w.members[0].graph.degree() != w.members[1].graph.degree());
  CHECK_FALSE(w.touches_diagonal);

  const auto s = weyl_class(star());
  CHECK(s.members.size() == 8);
  CHECK(s.components == 3);
  CHECK(s.touches_diagonal);
  CHECK(weyl_class(s.members[5].graph).key == s.key);

  // Two identical legs: flipping one or the other gives isomorphic graphs.
  const auto twin = pp_graph({P::pp(0, 0), P::pp(1, 0), P::pp(1, 0)}, {{0, 1, 1}, {0, 2, 1}});
  CHECK(weyl_class(twin).members.size() == 3);
}

TEST_CASE("grouping partitions the graph list") {
  GraphStore store;
  for (int m : {0, 1, 2}) {
    const auto classes = weyl_classes(4, 1, m, store);
    std::size_t members = 0;
    for (const auto& w : classes) members += w.members.size();
    CHECK(members == store.get(Target::ProductPP, 4, {1, 0}, m).size() + store.get(Target::ProductPP, 4, {0, 1}, m).size());
  }
  CHECK(weyl_classes(4, 1, 0, store).size() == 24);
  CHECK_THROWS_AS(group_weyl_classes(store.get(Target::ProductPP, 4, {1, 0}, 0)), InvarianceViolation);
}

TEST_CASE("class invariance") {
  const auto small = WeightAssignment::random(4, 4, TorusMode::Small, 2);
  GraphStore store;
  const std::vector<Partition2> ins{part(1, 0)};
  for (const auto& w : weyl_classes(4, 1, 1, store)) CHECK(class_invariance_check(w, ins, small));
  for (const auto& w : weyl_classes(4, 2, 0, store)) CHECK(class_invariance_check(w, {}, small));

  auto corrupted = weyl_class(star());
  corrupted.members[3].graph.edges[1].degree = 2;
  CHECK_THROWS_AS(class_invariance_check(corrupted, {}, small), InvarianceViolation);
  const auto big = WeightAssignment::random(4, 4, TorusMode::Big, 2);
  CHECK_THROWS_AS(class_invariance_check(weyl_class(star()), {}, big), std::invalid_argument);
}

TEST_CASE("half-edge census") {
  const auto path = pp_graph({P::pp(1, 0), P::pp(0, 0), P::pp(0, 2)}, {{0, 1, 1}, {1, 2, 1}});
  auto c = halfedge_census(weyl_class(path));
  CHECK(c.nu.at(1) == 2);
  CHECK(c.bound == 2);
  CHECK(c.inequality_holds);

  c = halfedge_census(weyl_class(star()));
  CHECK(c.bound == 2);

  // (0,0) - (1,0) - (1,1): one component with two half-edges.
  const auto bridge = pp_graph({P::pp(0, 0), P::pp(1, 0), P::pp(1, 1)}, {{0, 1, 1}, {1, 2, 1}});
  c = halfedge_census(weyl_class(bridge));
  CHECK(c.nu.at(2) == 1);
  CHECK(c.diagonal_valences.size() == 2);
  CHECK(c.bound == 2);

  const auto u = pp_graph({P::pp(0, 1), P::pp(2, 1)}, {{0, 1, 1}});
  CHECK_THROWS_AS(halfedge_census(weyl_class(u)), CensusViolation);
}

TEST_CASE("class sums") {
  GraphStore store;
  const auto big = WeightAssignment::random(4, 6, TorusMode::Big, 1);
  const auto pw = PerturbedWeights::from_big(big, 1);
  const std::vector<Partition2> ins{part(1, 0), part(2, 1), part(2, 2)};
  std::size_t diagonal = 0;
  std::size_t pairs = 0;
  for (const auto& w : weyl_classes(4, 1, 3, store)) {
    const auto s = class_sum(w, ins, pw);
    if (w.touches_diagonal) {
      ++diagonal;
      CHECK(s.regular_at_zero);
      CHECK(s.value_at_zero == 0);
      CHECK(s.valuation >= 1);
      CHECK(s.numerator_valuation - s.diagonal_pole_order >= 2);
      CHECK(s.factorization_checked);
    } else if (w.members.size() == 2) {
      ++pairs;
      const auto gr = with_symmetry(project_graph(w.members[0].graph));
      CHECK(s.regular_at_zero);
      CHECK(s.value_at_zero == 2 * graph_total_at_zero(gr, ins, pw.small));
    }
  }
  CHECK(diagonal == 96);
  CHECK(pairs > 0);
}

TEST_CASE("class sums without markings and with degenerate members") {
  GraphStore store;
  const auto big = WeightAssignment::random(4, 8, TorusMode::Big, 2);
  const auto pw = PerturbedWeights::from_big(big, 2);
  std::size_t degenerate = 0;
  for (const auto& w : weyl_classes(4, 2, 0, store)) {
    if (!w.touches_diagonal) continue;
    const auto s = class_sum(w, {}, pw);
    degenerate += s.degenerate_members > 0;
    CHECK(s.regular_at_zero);
    CHECK(s.value_at_zero == 0);
  }
  CHECK(degenerate > 0);
}
