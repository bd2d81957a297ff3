#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gw/errors.hpp"
#include "gw/series.hpp"
#include "gw/tfunction.hpp"

using namespace gw;

namespace {

const TFunction t = TFunction::t();

TFunction lin(long c) { return t + TFunction(c); }  // t + c

TFunction random_function(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::uniform_int_distribution<int> deg(0, 3);
  auto poly = [&] {
    std::vector<Rational> c(static_cast<size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coeff(rng);
    return Polynomial(c);
  };
  Polynomial den;
  while (den.is_zero()) den = poly();
  return TFunction(poly(), den);
}

}  // namespace

TEST_CASE("tf_add examples") {
  CHECK(tf_add(TFunction(1L) / lin(-1), TFunction(1L) / lin(1)) == TFunction(2L) * t / (t * t - TFunction(1L)));
  const TFunction f = (t * t + TFunction(3L)) / lin(1);
  CHECK(tf_add(f, TFunction(0L)) == f);
  const Rational delta(2);
  const TFunction a = TFunction(1L) / TFunction(Polynomial::linear_root(delta));
  const TFunction b = TFunction(1L) / TFunction(Polynomial::linear_root(-delta));
  CHECK(a + b == TFunction(2L) * t / (t * t - TFunction(4L)));
}

TEST_CASE("tf_mul and tf_div examples") {
  CHECK(tf_mul(lin(1), lin(-1)) == t * t - TFunction(1L));
  const TFunction f = lin(3) / lin(-7);
  CHECK(tf_div(f, f) == TFunction(1L));
  CHECK(tf_div(t * t - TFunction(4L), lin(-2)) == lin(2));
  CHECK_THROWS_AS(tf_div(f, TFunction(0L)), DivisionByZero);
}

TEST_CASE("evaluation at zero") {
  CHECK(tf_eval_at_zero((t * t + TFunction(3L)) / lin(1)) == 3);
  const TFunction g = lin(5) / lin(1);
  CHECK(tf_eval_at_zero(g) == 5);
  CHECK(tf_eval_at_zero(t * t * g) == 0);
  CHECK_THROWS_AS(tf_eval_at_zero(TFunction(1L) / t), PoleAtZero);
}

TEST_CASE("valuation at zero") {
  CHECK(tf_valuation_at_zero(t * t * lin(1) / lin(-3)) == 2);
  CHECK(tf_valuation_at_zero(TFunction(1L) / (t * t * t)) == -3);
  CHECK(tf_valuation_at_zero(TFunction(7L)) == 0);
  CHECK_THROWS_AS(tf_valuation_at_zero(TFunction(0L)), ZeroFunction);
}

TEST_CASE("canonical form is independent of construction order") {
  const TFunction a = (lin(1) * lin(2)) / (lin(2) * lin(3));
  const TFunction b = lin(1) / lin(3);
  CHECK(a == b);
  const TFunction c = TFunction(Polynomial({Rational(4), Rational(2)}), Polynomial({Rational(6), Rational(2)}));
  CHECK(c == lin(2) / lin(3));
  CHECK(c.denominator().leading() == 1);
  CHECK((TFunction(0L) / lin(9)).denominator() == Polynomial(1L));
}

TEST_CASE("field laws on random inputs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const TFunction a = random_function(rng);
    const TFunction b = random_function(rng);
    const TFunction c = random_function(rng);
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero() && !b.is_zero()) {
      CHECK((a * b).valuation_at_zero() == a.valuation_at_zero() + b.valuation_at_zero());
      CHECK((a / b) * b == a);
    }
  }
}

TEST_CASE("tf_sum matches a left fold") {
  std::mt19937_64 rng(5);
  std::vector<TFunction> terms;
  TFunction fold(0L);
  for (int i = 0; i < 17; ++i) {
    terms.push_back(random_function(rng));
    fold += terms.back();
  }
  CHECK(tf_sum(terms) == fold);
  CHECK(tf_sum({}) == TFunction(0L));
}

TEST_CASE("polynomial gcd and division") {
  const Polynomial p = Polynomial::linear_root(1) * Polynomial::linear_root(2);
  const Polynomial q = Polynomial::linear_root(2) * Polynomial::linear_root(3);
  CHECK(gcd(p, q) == Polynomial::linear_root(2));
  CHECK(gcd(Polynomial(), Polynomial()) == Polynomial());
  const auto dm = p.divmod(Polynomial::linear_root(1));
  CHECK(dm.quotient == Polynomial::linear_root(2));
  CHECK(dm.remainder.is_zero());
  CHECK_THROWS_AS(p.divmod(Polynomial()), DivisionByZero);
  CHECK(TFunction(p).pow(-2) * TFunction(p).pow(2) == TFunction(1L));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("truncated series") {
  using S = TruncatedSeries<Rational>;
  // (1 + e)^{-1} = 1 - e + e^2 - e^3
  const S inv = S::linear(3, 1, 1).inverse();
  CHECK(inv[0] == 1);
  CHECK(inv[1] == -1);
  CHECK(inv[2] == 1);
  CHECK(inv[3] == -1);
  CHECK_THROWS_AS(S::linear(2, 0, 1).inverse(), DivisionByZero);
  const S prod = S::linear(3, 2, 3) * S::linear(3, 2, 3).inverse();
  CHECK(prod[0] == 1);
  CHECK(prod[1] == 0);
  CHECK(prod[3] == 0);
  const S shifted = S::linear(2, 0, 5).shift_down();
  CHECK(shifted.order() == 1);
  CHECK(shifted[0] == 5);
  CHECK_THROWS_AS(S::linear(2, 1, 5).shift_down(), DivisionByZero);

  using TS = TruncatedSeries<TFunction>;
  const TS x = TS::linear(1, t, TFunction(1L));
  CHECK((x * x)[1] == TFunction(2L) * t);
}
