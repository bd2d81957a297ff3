#pragma once

#include <algorithm>
#include <vector>

#include "gw/errors.hpp"

namespace gw {

/// Power series c_0 + c_1 e + ... + c_N e^N truncated after e^N. T is a field
/// type (Rational or TFunction).
template <class T>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order, const T& constant = T(0)) : c_(static_cast<size_t>(order) + 1, T(0)) {
    c_[0] = constant;
  }
  /// a + b e
  static TruncatedSeries linear(int order, const T& a, const T& b) {
    TruncatedSeries s(order, a);
    if (order >= 1) s.c_[1] = b;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  T& operator[](int i) { return c_[static_cast<size_t>(i)]; }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i) {
      if (a[i] == T(0)) continue;
      for (int j = 0; i + j <= r.order(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& b) { return *this = *this * b; }
  TruncatedSeries& operator+=(const TruncatedSeries& b) { return *this = *this + b; }

  /// Throws DivisionByZero when c_0 = 0.
  TruncatedSeries inverse() const {
    if (c_[0] == T(0)) throw DivisionByZero("series with zero constant term");
    TruncatedSeries r(order());
    const T inv0 = T(1) / c_[0];
    r[0] = inv0;
    for (int k = 1; k <= order(); ++k) {
      T acc(0);
      for (int j = 1; j <= k; ++j) acc = acc + c_[static_cast<size_t>(j)] * r[k - j];
      r[k] = T(0) - acc * inv0;
    }
    return r;
  }

  /// Divides by e; requires c_0 = 0 and loses one order of precision.
  TruncatedSeries shift_down() const {
    if (!(c_[0] == T(0))) throw DivisionByZero("shift_down needs a zero constant term");
    TruncatedSeries r(std::max(order() - 1, 0));
    for (int i = 0; i <= r.order() && i + 1 <= order(); ++i) r[i] = c_[static_cast<size_t>(i) + 1];
    return r;
  }

  TruncatedSeries truncated(int order) const {
    TruncatedSeries r(order);
    for (int i = 0; i <= std::min(order, this->order()); ++i) r[i] = c_[static_cast<size_t>(i)];
    return r;
  }

 private:
  std::vector<T> c_;
};

}  // namespace gw
