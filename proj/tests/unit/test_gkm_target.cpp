#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gw/errors.hpp"
#include "gw/gkm.hpp"

using namespace gw;

namespace {

std::vector<Rational> values(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::size_t brute_force_edges(Target target, int n) {
  const auto pts = fixed_points(target, n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto& p = pts[i];
      const auto& q = pts[j];
      bool curve = false;
      if (target == Target::ProductPP) {
        curve = (p.first == q.first) != (p.second == q.second);
      } else if (target == Target::Grassmannian) {
        // <ij> and <kl> span a line iff they share exactly one index.
        const int shared = (p.first == q.first) + (p.first == q.second) + (p.second == q.first) + (p.second == q.second);
        curve = shared == 1;
      } else {
        curve = true;
      }
      count += curve;
    }
  }
  return count;
}

LinearForm character(const FixedPoint& p) {
  switch (p.target) {
    case Target::Projective: return LinearForm::var(0, p.first);
    case Target::Grassmannian: return LinearForm::var(0, p.first) + LinearForm::var(0, p.second);
    case Target::ProductPP: break;
  }
  return pp_coordinate_form(p, 0) + pp_coordinate_form(p, 1);
}

}  // namespace

TEST_CASE("fixed point counts") {
  CHECK(fixed_points(Target::Grassmannian, 4).size() == 6);
  CHECK(fixed_points(Target::ProductPP, 4).size() == 16);
  CHECK(fixed_points(Target::ProductPP, 3).size() == 9);
  CHECK(fixed_points(Target::Projective, 5).size() == 5);
}

TEST_CASE("invariant edge counts agree with a pair scan") {
  CHECK(invariant_edges(Target::Grassmannian, 4).size() == 12);
  CHECK(invariant_edges(Target::ProductPP, 4).size() == 48);
  CHECK(invariant_edges(Target::ProductPP, 3).size() == 18);
  for (int n = 3; n <= 6; ++n) {
    for (Target t : {Target::Grassmannian, Target::ProductPP, Target::Projective}) {
      CHECK(invariant_edges(t, n).size() == brute_force_edges(t, n));
    }
  }
  std::size_t factor1 = 0;
  for (const auto& e : invariant_edges(Target::ProductPP, 4)) factor1 += e.moving_factor == 1;
  CHECK(factor1 == 24);
}

TEST_CASE("tangent weights") {
  const auto big = WeightAssignment::big_torus(values({2, 3, 5}), values({7, 11, 13}));
  CHECK(tangent_weights(FixedPoint::pp(0, 1), big).size() == 4);
  const auto small = WeightAssignment::small_torus(values({2, 3, 5, 7}));
  const auto gr = tangent_weights(FixedPoint::gr(0, 1), small);
  REQUIRE(gr.size() == 4);
  // lambda_i - lambda_k for i in {0,1}, k in {2,3}
  std::vector<Rational> expected = values({2 - 5, 2 - 7, 3 - 5, 3 - 7});
  auto sorted = gr;
  std::sort(sorted.begin(), sorted.end());
  std::sort(expected.begin(), expected.end());
  CHECK(sorted == expected);
}

TEST_CASE("curve tangent is char(p) - char(q) on every target") {
  const auto big = WeightAssignment::big_torus(values({2, 3, 5, 7}), values({11, 13, 17, 19}));
  const auto small = WeightAssignment::small_torus(values({2, 3, 5, 7}));
  for (Target t : {Target::Grassmannian, Target::ProductPP, Target::Projective}) {
    const auto& w = t == Target::ProductPP ? big : small;
    for (const auto& e : invariant_edges(t, 4)) {
      const auto data = curve_data(e.p, e.q, 4);
      CHECK(w.eval(data.tangent) == w.eval(character(e.p)) - w.eval(character(e.q)));
      const auto back = curve_data(e.q, e.p, 4);
      CHECK(w.eval(back.tangent) == -w.eval(data.tangent));
    }
  }
}

TEST_CASE("specialize") {
  const auto primes = WeightAssignment::big_torus(values({2, 3, 5, 7}), values({2, 3, 5, 7}));
  const auto small = primes.specialize(1);
  CHECK(small.mode() == TorusMode::Small);
  CHECK(small.value(1, 2) == 5);
  const auto bad = WeightAssignment::big_torus(values({0, 1, 2, 2}), values({0, 1, 2, 2}));
  CHECK_THROWS_AS(bad.specialize(1), GenericityFailure);
  const auto mixed = WeightAssignment::big_torus(values({2, 3, 5}), values({7, 11, 13}));
  CHECK_THROWS_AS(mixed.specialize(1), GenericityFailure);
  const auto random = WeightAssignment::random(4, 9, TorusMode::Big, 2);
  CHECK(random == WeightAssignment::random(4, 9, TorusMode::Big, 2));
  CHECK_NOTHROW(random.specialize(2));
}

TEST_CASE("is_diagonal") {
  CHECK(is_diagonal(FixedPoint::pp(2, 2)));
  CHECK_FALSE(is_diagonal(FixedPoint::pp(0, 1)));
  CHECK_THROWS_AS(is_diagonal(FixedPoint::gr(0, 1)), WrongTarget);
}
