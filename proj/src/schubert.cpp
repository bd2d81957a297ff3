#include "gw/schubert.hpp"

#include <stdexcept>

#include "gw/errors.hpp"

namespace gw {

Partition2 Partition2::make(int mu1, int mu2, int n) {
  if (n < 2) throw InvalidDimension("n must be at least 2, got " + std::to_string(n));
  if (mu2 < 0 || mu1 < mu2 || mu1 > n - 2) {
    throw InvalidPartition("(" + std::to_string(mu1) + "," + std::to_string(mu2) +
                           ") does not fit the 2 x " + std::to_string(n - 2) + " box");
  }
  return {mu1, mu2, n - 2};
}

std::string Partition2::to_string() const {
  return "(" + std::to_string(mu1) + "," + std::to_string(mu2) + ")";
}

std::vector<Partition2> partitions_in_box(int n) {
  if (n < 3) throw InvalidDimension("Gr(2,n) needs n >= 3, got " + std::to_string(n));
  std::vector<Partition2> out;
  for (int a = 0; a <= n - 2; ++a) {
    for (int b = 0; b <= a; ++b) out.push_back({a, b, n - 2});
  }
  return out;
}

Rational schur_eval(const Partition2& mu, const Rational& x1, const Rational& x2) {
  if (x1 == x2) {
    return Rational(mu.mu1 - mu.mu2 + 1) * gw::pow(x1, static_cast<unsigned>(mu.mu1 + mu.mu2));
  }
  const auto a = static_cast<unsigned>(mu.mu1 + 1);
  const auto b = static_cast<unsigned>(mu.mu2);
  Rational num = gw::pow(x1, a) * gw::pow(x2, b) - gw::pow(x2, a) * gw::pow(x1, b);
  return num / (x1 - x2);
}

BivariatePolynomial schur_polynomial(const Partition2& mu) {
  BivariatePolynomial out;
  const int total = mu.mu1 + mu.mu2;
  for (int k = mu.mu2; k <= mu.mu1; ++k) out[{k, total - k}] += 1;
  return out;
}

BivariatePolynomial multiply(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  BivariatePolynomial out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

namespace {

// sigma_p * sigma_(a,b), optionally with the q-terms of the quantum Pieri rule.
void add_pieri_terms(int p, const Partition2& lam, int qdeg, const Integer& coeff, int n,
                     bool quantum, QuantumVector& out) {
  const int w = n - 2;
  if (p < 0 || p > w) return;
  const int a = lam.mu1;
  const int b = lam.mu2;
  // Horizontal strips: a <= a' <= w, b <= b' <= a.
  for (int b2 = b; b2 <= a; ++b2) {
    const int a2 = a + b + p - b2;
    if (a2 < a || a2 > w) continue;
    out[{Partition2{a2, b2, w}, qdeg}] += coeff;
  }
  if (!quantum || b < 1) return;
  // q-terms: a-1 >= nu1 >= b-1 >= nu2 >= 0 with |nu| = a + b + p - n.
  const int size = a + b + p - n;
  for (int nu2 = 0; nu2 <= b - 1; ++nu2) {
    const int nu1 = size - nu2;
    if (nu1 < b - 1 || nu1 > a - 1 || nu1 < nu2) continue;
    out[{Partition2{nu1, nu2, w}, qdeg + 1}] += coeff;
  }
}

QuantumVector apply_special(int p, const QuantumVector& v, int n, bool quantum) {
  QuantumVector out;
  for (const auto& [key, coeff] : v) add_pieri_terms(p, key.first, key.second, coeff, n, quantum, out);
  return out;
}

void accumulate(QuantumVector& into, const QuantumVector& v, int sign) {
  for (const auto& [key, coeff] : v) into[key] += sign * coeff;
}

// sigma_(a,b) * v = sigma_a (sigma_b v) - sigma_(a+1) (sigma_(b-1) v).
QuantumVector apply_schubert(const Partition2& lam, const QuantumVector& v, int n, bool quantum) {
  QuantumVector out;
  accumulate(out, apply_special(lam.mu1, apply_special(lam.mu2, v, n, quantum), n, quantum), 1);
  if (lam.mu2 >= 1) {
    accumulate(out,
               apply_special(lam.mu1 + 1, apply_special(lam.mu2 - 1, v, n, quantum), n, quantum),
               -1);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

QuantumVector product_impl(const QuantumVector& a, const QuantumVector& b, int n, bool quantum) {
  QuantumVector out;
  for (const auto& [key, coeff] : a) {
    QuantumVector term = apply_schubert(key.first, b, n, quantum);
    for (const auto& [k2, c2] : term) out[{k2.first, k2.second + key.second}] += coeff * c2;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

CohomologyVector classical_product(const CohomologyVector& a, const CohomologyVector& b, int n) {
  QuantumVector qa, qb;
  for (const auto& [p, c] : a) qa[{p, 0}] = c;
  for (const auto& [p, c] : b) qb[{p, 0}] = c;
  CohomologyVector out;
  for (const auto& [key, c] : product_impl(qa, qb, n, false)) out[key.first] = c;
  return out;
}

Integer gr_integral(std::span<const Partition2> classes, int n) {
  if (n < 3) throw InvalidDimension("Gr(2,n) needs n >= 3");
  int codim = 0;
  for (const auto& p : classes) codim += p.codimension();
  if (codim != 2 * (n - 2)) return 0;
  CohomologyVector acc{{Partition2::make(0, 0, n), Integer(1)}};
  for (const auto& p : classes) acc = classical_product(acc, {{p, Integer(1)}}, n);
  auto it = acc.find(Partition2::point_class(n));
  return it == acc.end() ? Integer(0) : it->second;
}

Integer pp_integral(const BivariatePolynomial& poly, int n) {
  auto it = poly.find({n - 1, n - 1});
  return it == poly.end() ? Integer(0) : it->second;
}

MartinResult martin_check(std::span<const Partition2> classes, int n) {
  MartinResult r;
  r.lhs = gr_integral(classes, n);
  BivariatePolynomial integrand{{{0, 0}, Integer(1)}};
  for (const auto& p : classes) integrand = multiply(integrand, schur_polynomial(p));
  // (H1 - H2)(H2 - H1) = -H1^2 + 2 H1 H2 - H2^2
  integrand = multiply(integrand, {{{2, 0}, Integer(-1)}, {{1, 1}, Integer(2)}, {{0, 2}, Integer(-1)}});
  r.rhs = Rational(pp_integral(integrand, n)) / 2;
  r.equal = (Rational(r.lhs) == r.rhs);
  return r;
}

QuantumVector quantum_product(const QuantumVector& a, const QuantumVector& b, int n) {
  return product_impl(a, b, n, true);
}

QuantumOracle::QuantumOracle(int n, int d_max) : n_(n), d_max_(d_max) {
  if (d_max < 0) throw InvalidDegree("d_max must be nonnegative");
  const auto basis = partitions_in_box(n);
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      QuantumVector prod = quantum_product({{{a, 0}, Integer(1)}}, {{{b, 0}, Integer(1)}}, n);
      // sigma_a * sigma_b = sum_{c,d} <a,b,c>_d q^d sigma_{c^dual}
      for (const auto& [key, coeff] : prod) {
        if (key.second > d_max) continue;
        table_[{a, b, key.first.dual(), key.second}] = coeff;
      }
    }
  }
}

Integer QuantumOracle::invariant(const Partition2& a, const Partition2& b, const Partition2& c,
                                 int d) const {
  if (d < 0 || d > d_max_) throw std::out_of_range("degree outside the oracle table");
  auto it = table_.find({a, b, c, d});
  return it == table_.end() ? Integer(0) : it->second;
}

QuantumOracle quantum_pieri_oracle(int n, int d_max) { return QuantumOracle(n, d_max); }

}  // namespace gw
