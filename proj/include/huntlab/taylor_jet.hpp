#pragma once

// Truncated Taylor series in a displacement h about a base point: c[k] is the
// k-th Taylor coefficient, so the k-th derivative is k! * c[k]. Used to obtain
// the high-order density derivatives needed by the integration-by-parts tail.

#include <cmath>
#include <vector>

namespace huntlab {

class TaylorJet {
 public:
  explicit TaylorJet(int order, double c0 = 0.0) : c_(order + 1, 0.0) { c_[0] = c0; }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }

  // (x0 + h)^p
  static TaylorJet power(int order, double x0, double p) {
    TaylorJet j(order);
    double coef = std::pow(x0, p);
    for (int k = 0; k <= order; ++k) {
      j.c_[k] = coef;
      coef *= (p - k) / ((k + 1) * x0);
    }
    return j;
  }

  // -log(x0 + h)
  static TaylorJet neg_log(int order, double x0) {
    TaylorJet j(order, -std::log(x0));
    double xk = 1.0;
    for (int k = 1; k <= order; ++k) {
      xk /= x0;
      j.c_[k] = ((k % 2 == 1) ? -1.0 : 1.0) * xk / k;
    }
    return j;
  }

  TaylorJet operator*(const TaylorJet& o) const {
    TaylorJet r(order());
    for (int n = 0; n <= order(); ++n) {
      double s = 0.0;
      for (int k = 0; k <= n; ++k) s += c_[k] * o.c_[n - k];
      r.c_[n] = s;
    }
    return r;
  }

  TaylorJet operator*(double s) const {
    TaylorJet r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  // this^q; requires c[0] > 0.
  TaylorJet pow(double q) const {
    TaylorJet r(order());
    const double g0 = c_[0];
    r.c_[0] = std::pow(g0, q);
    for (int n = 1; n <= order(); ++n) {
      double s = 0.0;
      for (int k = 1; k <= n; ++k) s += ((q + 1.0) * k - n) * c_[k] * r.c_[n - k];
      r.c_[n] = s / (n * g0);
    }
    return r;
  }

  // Derivatives f(x0), f'(x0), ..., f^(order)(x0).
  std::vector<double> derivatives() const {
    std::vector<double> d(c_.size());
    double fact = 1.0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      d[k] = c_[k] * fact;
    }
    return d;
  }

 private:
  std::vector<double> c_;
};

}  // namespace huntlab
