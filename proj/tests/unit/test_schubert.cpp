#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gw/errors.hpp"
#include "gw/schubert.hpp"

using namespace gw;

namespace {

Partition2 P(int a, int b, int n = 4) { return Partition2::make(a, b, n); }

CohomologyVector basis(const Partition2& p) { return {{p, Integer(1)}}; }

}  // namespace

TEST_CASE("partitions_in_box") {
  const auto four = partitions_in_box(4);
  REQUIRE(four.size() == 6);
  CHECK(four == std::vector<Partition2>{P(0, 0), P(1, 0), P(1, 1), P(2, 0), P(2, 1), P(2, 2)});
  CHECK(partitions_in_box(3).size() == 3);
  CHECK(partitions_in_box(5).size() == 10);
  CHECK_THROWS_AS(partitions_in_box(2), InvalidDimension);
  CHECK_THROWS_AS(P(3, 0), InvalidPartition);
  CHECK_THROWS_AS(P(1, 2), InvalidPartition);
}

TEST_CASE("schur_eval") {
  const Rational a(7);
  const Rational b(-3);
  CHECK(schur_eval(P(1, 0), a, b) == a + b);
  CHECK(schur_eval(P(1, 1), a, b) == a * b);
  CHECK(schur_eval(P(2, 1), 2, 3) == 30);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-50, 50);
  for (const auto& mu : partitions_in_box(6)) {
    for (int k = 0; k < 10; ++k) {
      const Rational x(dist(rng));
      const Rational y(dist(rng));
      CHECK(schur_eval(mu, x, y) == schur_eval(mu, y, x));
      // Diagonal value agrees with the monomial expansion.
      Rational expected(0);
      for (const auto& [exp, c] : schur_polynomial(mu)) {
        Rational term(c);
        for (int i = 0; i < exp.first + exp.second; ++i) term *= x;
        expected += term;
      }
      CHECK(schur_eval(mu, x, x) == expected);
    }
  }
}

TEST_CASE("classical_product") {
  CHECK(classical_product(basis(P(1, 0)), basis(P(1, 0)), 4) ==
        CohomologyVector{{P(2, 0), Integer(1)}, {P(1, 1), Integer(1)}});
  const CohomologyVector x{{P(2, 1), Integer(3)}, {P(1, 0), Integer(-2)}};
  CHECK(classical_product(basis(P(0, 0)), x, 4) == x);
  CHECK(classical_product(basis(P(2, 0)), basis(P(2, 0)), 4) == CohomologyVector{{P(2, 2), Integer(1)}});
  for (const auto& a : partitions_in_box(5)) {
    for (const auto& b : partitions_in_box(5)) {
      CHECK(classical_product(basis(a), basis(b), 5) == classical_product(basis(b), basis(a), 5));
    }
  }
  const auto s = [](int a, int b) { return basis(P(a, b, 5)); };
  CHECK(classical_product(classical_product(s(1, 0), s(2, 1), 5), s(2, 0), 5) ==
        classical_product(s(1, 0), classical_product(s(2, 1), s(2, 0), 5), 5));
}

TEST_CASE("gr_integral") {
  const std::vector<Partition2> four_lines(4, P(1, 0));
  CHECK(gr_integral(four_lines, 4) == 2);
  CHECK(gr_integral(std::vector<Partition2>{P(2, 2)}, 4) == 1);
  CHECK(gr_integral(std::vector<Partition2>{P(1, 0), P(1, 0)}, 4) == 0);
}

TEST_CASE("pp_integral") {
  CHECK(pp_integral({{{3, 3}, Integer(1)}}, 4) == 1);
  CHECK(pp_integral({{{4, 2}, Integer(1)}}, 4) == 0);
  const BivariatePolynomial h1_plus_h2{{{1, 0}, Integer(1)}, {{0, 1}, Integer(1)}};
  CHECK(pp_integral(multiply(h1_plus_h2, h1_plus_h2), 2) == 2);
}

TEST_CASE("martin_check") {
  const std::vector<Partition2> four_lines(4, P(1, 0));
  auto r = martin_check(four_lines, 4);
  CHECK(r.equal);
  CHECK(r.lhs == 2);
  CHECK(r.rhs == 2);
  r = martin_check(std::vector<Partition2>{P(2, 2)}, 4);
  CHECK(r.equal);
  CHECK(r.lhs == 1);
  r = martin_check(std::vector<Partition2>{}, 3);
  CHECK(r.equal);
  CHECK(r.lhs == 0);
  CHECK(r.rhs == 0);
}

TEST_CASE("quantum oracle") {
  const auto oracle = quantum_pieri_oracle(4, 2);
  CHECK(oracle.invariant(P(1, 0), P(2, 1), P(2, 2), 1) == 1);
  CHECK(oracle.invariant(P(2, 2), P(2, 2), P(2, 2), 2) == 1);
  CHECK(oracle.invariant(P(2, 2), P(2, 2), P(0, 0), 1) == 0);
  CHECK(oracle.invariant(P(1, 0), P(1, 0), P(1, 0), 1) == 0);
  CHECK_THROWS_AS(oracle.invariant(P(1, 0), P(1, 0), P(1, 0), 3), std::out_of_range);
  for (int n : {3, 4, 5}) {
    const auto o = quantum_pieri_oracle(n, 0);
    for (const auto& a : partitions_in_box(n)) {
      for (const auto& b : partitions_in_box(n)) {
        for (const auto& c : partitions_in_box(n)) {
          CHECK(o.invariant(a, b, c, 0) == gr_integral(std::vector<Partition2>{a, b, c}, n));
        }
      }
    }
  }
}
