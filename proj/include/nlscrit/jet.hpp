#pragma once

// Truncated bivariate Taylor polynomials in (du, dv) up to total degree 6,
// with complex coefficients. Evaluating a closed-form f(u, v) on jets seeded
// at (u0, v0) yields every partial derivative of order <= 6 at that point.

#include <array>
#include <complex>

namespace nlscrit {

class Jet {
 public:
  using cplx = std::complex<double>;
  static constexpr int kOrder = 6;
  static constexpr int kSize = (kOrder + 1) * (kOrder + 2) / 2;

  static constexpr int index(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }

  Jet() { c_.fill(0.0); }
  Jet(cplx constant) : Jet() { c_[0] = constant; }  // NOLINT: implicit by design
  Jet(double constant) : Jet(cplx(constant)) {}     // NOLINT

  static Jet variable_u(double u0) {
    Jet j(u0);
    j.c_[index(1, 0)] = 1.0;
    return j;
  }
  static Jet variable_v(double v0) {
    Jet j(v0);
    j.c_[index(0, 1)] = 1.0;
    return j;
  }

  cplx value() const { return c_[0]; }
  /// Coefficient of du^i dv^j (not the derivative).
  cplx coeff(int i, int j) const { return c_[index(i, j)]; }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k < kSize; ++k) r.c_[k] = -c_[k];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
  friend Jet operator*(double s, Jet a) { return a *= cplx(s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int d1 = 0; d1 <= kOrder; ++d1) {
      for (int j1 = 0; j1 <= d1; ++j1) {
        const cplx x = a.c_[index(d1 - j1, j1)];
        if (x == cplx(0.0)) continue;
        for (int d2 = 0; d1 + d2 <= kOrder; ++d2) {
          for (int j2 = 0; j2 <= d2; ++j2)
            r.c_[index(d1 - j1 + d2 - j2, j1 + j2)] += x * b.c_[index(d2 - j2, j2)];
        }
      }
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  /// g(x) where g_k = g^{(k)}(x0) / k!, x0 = x.value().
  friend Jet compose(const Jet& x, const std::array<cplx, kOrder + 1>& g) {
    Jet delta = x;
    delta.c_[0] = 0.0;
    Jet r(g[kOrder]);
    for (int k = kOrder - 1; k >= 0; --k) {
      r = r * delta;
      r.c_[0] += g[k];
    }
    return r;
  }

  friend Jet reciprocal(const Jet& x) {
    const cplx x0 = x.value();
    std::array<cplx, kOrder + 1> g;
    cplx p = 1.0 / x0;
    for (int k = 0; k <= kOrder; ++k) {
      g[k] = p;
      p *= -1.0 / x0;
    }
    return compose(x, g);
  }

  /// Square root continued from the given root of x.value().
  friend Jet sqrt_with_root(const Jet& x, cplx root) {
    const cplx x0 = x.value();
    std::array<cplx, kOrder + 1> g;
    double binom = 1.0;  // binomial(1/2, k)
    cplx p = root;
    for (int k = 0; k <= kOrder; ++k) {
      g[k] = binom * p;
      binom *= (0.5 - k) / (k + 1);
      p /= x0;
    }
    return compose(x, g);
  }

  friend Jet sqrt(const Jet& x) { return sqrt_with_root(x, std::sqrt(x.value())); }

  friend Jet log(const Jet& x) {
    const cplx x0 = x.value();
    std::array<cplx, kOrder + 1> g;
    g[0] = std::log(x0);
    cplx p = 1.0;
    for (int k = 1; k <= kOrder; ++k) {
      p /= x0;
      g[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / double(k);
    }
    return compose(x, g);
  }

 private:
  std::array<cplx, kSize> c_;
};

}  // namespace nlscrit
