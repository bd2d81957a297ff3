#include "gw/tfunction.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "gw/errors.hpp"

namespace gw {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return result;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

Polynomial Polynomial::linear_root(const Rational& root) {
  return Polynomial(std::vector<Rational>{-root, Rational(1)});
}

Polynomial Polynomial::monomial(unsigned k) {
  std::vector<Rational> c(k + 1, Rational(0));
  c[k] = 1;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return coeffs_[static_cast<size_t>(i)];
}

int Polynomial::lowest_order() const {
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return static_cast<int>(i);
  }
  throw ZeroFunction("lowest order of the zero polynomial");
}

Rational Polynomial::evaluate(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  const Rational lead = leading();
  for (auto& c : out.coeffs_) c /= lead;
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const auto& big = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
  const auto& small = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
  std::vector<Rational> c = big.coeffs_;
  for (size_t i = 0; i < small.coeffs_.size(); ++i) c[i] += small.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial::DivMod Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial(), *this};
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  const int qd = degree() - dd;
  std::vector<Rational> quot(static_cast<size_t>(qd + 1), Rational(0));
  const Rational& lead = divisor.leading();
  for (int k = qd; k >= 0; --k) {
    const Rational q = rem[static_cast<size_t>(k + dd)] / lead;
    quot[static_cast<size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<size_t>(k + j)] -= q * divisor.coeffs_[static_cast<size_t>(j)];
    }
  }
  rem.resize(static_cast<size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const {
  return divmod(divisor).quotient;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (!unit || i == 0) out << gw::to_string(mag);
    if (i >= 1) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a.monic();
  Polynomial y = b.monic();
  while (!y.is_zero()) {
    Polynomial r = x.divmod(y).remainder.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

// ---------------------------------------------------------------------------
// TFunction

TFunction::TFunction(const Rational& constant) : num_(constant), den_(Rational(1)) {}

TFunction::TFunction(const Polynomial& poly) : num_(poly), den_(Rational(1)) {}

TFunction::TFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  normalize();
}

void TFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  if (den_.degree() > 0) {
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    Polynomial inv(Rational(1) / lead);
    num_ *= inv;
    den_ *= inv;
  }
}

Rational TFunction::eval_at_zero() const {
  const Rational d0 = den_.coefficient(0);
  if (d0 == 0) throw PoleAtZero("denominator vanishes at t = 0: " + to_string());
  return num_.coefficient(0) / d0;
}

int TFunction::valuation_at_zero() const {
  if (num_.is_zero()) throw ZeroFunction("valuation of the zero function");
  return num_.lowest_order() - den_.lowest_order();
}

TFunction TFunction::pow(int exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw DivisionByZero("negative power of the zero function");
    return TFunction(den_, num_).pow(-exponent);
  }
  Polynomial n(Rational(1));
  Polynomial d(Rational(1));
  for (int i = 0; i < exponent; ++i) {
    n *= num_;
    d *= den_;
  }
  return TFunction(std::move(n), std::move(d));
}

TFunction TFunction::operator-() const {
  TFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

TFunction operator+(const TFunction& a, const TFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return TFunction(a.num_ + b.num_, a.den_);
  Polynomial g = gcd(a.den_, b.den_);
  Polynomial ab = a.den_.exact_div(g);
  Polynomial bb = b.den_.exact_div(g);
  return TFunction(a.num_ * bb + b.num_ * ab, a.den_ * bb);
}

TFunction operator-(const TFunction& a, const TFunction& b) { return a + (-b); }

TFunction operator*(const TFunction& a, const TFunction& b) {
  if (a.is_zero() || b.is_zero()) return TFunction();
  // Cross-cancel first so the final gcd works on smaller inputs.
  Polynomial g1 = gcd(a.num_, b.den_);
  Polynomial g2 = gcd(b.num_, a.den_);
  return TFunction(a.num_.exact_div(g1) * b.num_.exact_div(g2),
                   a.den_.exact_div(g2) * b.den_.exact_div(g1));
}

TFunction operator/(const TFunction& a, const TFunction& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero function");
  return a * TFunction(b.den_, b.num_);
}

std::string TFunction::to_string() const {
  if (den_ == Polynomial(Rational(1))) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

TFunction tf_add(const TFunction& a, const TFunction& b) { return a + b; }
TFunction tf_mul(const TFunction& a, const TFunction& b) { return a * b; }
TFunction tf_div(const TFunction& a, const TFunction& b) { return a / b; }
Rational tf_eval_at_zero(const TFunction& f) { return f.eval_at_zero(); }
int tf_valuation_at_zero(const TFunction& f) { return f.valuation_at_zero(); }

TFunction tf_sum(std::span<const TFunction> terms) {
  if (terms.empty()) return TFunction();
  std::vector<TFunction> level(terms.begin(), terms.end());
  while (level.size() > 1) {
    std::vector<TFunction> next;
    next.reserve((level.size() + 1) / 2);
    for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return level.front();
}

}  // namespace gw
