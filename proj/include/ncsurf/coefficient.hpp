#pragma once

#include <complex>
#include <string>

#include "ncsurf/rational.hpp"

namespace ncsurf {

/// Exact scalar a + b·i + (c + d·i)·h with rational a, b, c, d, where the
/// formal symbol h satisfies h² = h_sq for a fixed rational h_sq.
///
/// This is the coefficient ring of the free algebras: it holds the Gaussian
/// rationals needed by the W/V relations and additionally carries ℏ = h
/// exactly for the X/Y/Z relations, where only iℏ (not ℏ²) appears. Mixing
/// values that both depend on h but were built with different h_sq throws.
class Coeff {
 public:
  Coeff() = default;
  Coeff(const Rational& re) : re_(re) {}  // NOLINT: implicit lift from Q
  Coeff(long v) : re_(v) {}                // NOLINT
  Coeff(int v) : re_(v) {}                 // NOLINT
  Coeff(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  static Coeff i() { return Coeff(0, 1); }
  /// The formal element h with h² = h_sq.
  static Coeff h(const Rational& h_sq);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  const Rational& h_re() const { return h_re_; }
  const Rational& h_im() const { return h_im_; }
  const Rational& h_sq() const { return h_sq_; }
  bool has_h() const { return h_re_ != 0 || h_im_ != 0; }

  bool is_zero() const { return re_ == 0 && im_ == 0 && !has_h(); }

  Coeff operator-() const;
  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
  friend bool operator==(const Coeff& a, const Coeff& b);

  /// Division by a nonzero rational.
  Coeff divided_by(const Rational& r) const;

  /// Numeric value with h replaced by `h_value`.
  std::complex<double> evaluate(double h_value) const;

  /// Canonical exact text: "4/3", "-1", "2-1/2*i", "1/2*i*h", ...
  std::string str() const;

 private:
  void adopt_h_sq(const Coeff& o);

  Rational re_{0}, im_{0}, h_re_{0}, h_im_{0};
  Rational h_sq_{0};  // meaningful only when has_h()
};

}  // namespace ncsurf
