#pragma once

// Dense univariate polynomials with exact rational coefficients, Sturm
// sequences and certified real-root isolation.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ncsurf/rational.hpp"

namespace ncsurf {

class UniPoly {
 public:
  UniPoly() = default;
  /// Coefficients from the constant term upward; trailing zeros are trimmed.
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly x() { return UniPoly({0, 1}); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  UniPoly derivative() const;
  /// p(q(x)).
  UniPoly compose(const UniPoly& q) const;

  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;
  /// Certified enclosure of {p(t) : lo ≤ t ≤ hi} by interval Horner evaluation.
  std::pair<Rational, Rational> evaluate_interval(const Rational& lo, const Rational& hi) const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const Rational& c);
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of a by b ≠ 0.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'): same distinct roots, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// p, p', −rem(p, p'), ... down to a constant.
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Number of distinct real roots of the polynomial behind `seq` in (a, b].
std::size_t sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b);
/// Number of distinct real roots on the whole line.
std::size_t sturm_count_real(const std::vector<UniPoly>& seq);

/// Rational bound B with every real root in (−B, B).
Rational cauchy_bound(const UniPoly& p);

struct RootInterval {
  Rational lo;
  Rational hi;  // exactly one root in (lo, hi], or lo == hi == root
};

/// Disjoint isolating intervals for every distinct real root, ascending.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p);
/// Same restricted to roots in (a, b].
std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& a, const Rational& b);

/// Bisects an isolating interval of a root of the squarefree polynomial `p`
/// until its width is at most `width`.
RootInterval refine_root(const UniPoly& p, RootInterval iv, const Rational& width);

/// Double approximation of the isolated root, relative error ≤ 1e-12.
double root_to_double(const UniPoly& p, const RootInterval& iv);

struct RootCount {
  std::size_t total_real = 0;
  bool all_simple = false;
};

/// Distinct real root count and whether gcd(p, p') is constant.
RootCount count_simple_roots(const UniPoly& p);

}  // namespace ncsurf
