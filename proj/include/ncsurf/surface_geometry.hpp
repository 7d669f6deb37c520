#pragma once

// Commutative polynomials in x, y, z, the Nambu-Poisson bracket defined by a
// constraint polynomial, and Morse-theoretic genus counting for surfaces
// (P(x) + y²)² + z² = L.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ncsurf/rational.hpp"
#include "ncsurf/univariate.hpp"

namespace ncsurf {

using Exponent3 = std::array<int, 3>;

class CommPolynomial3 {
 public:
  using Terms = std::map<Exponent3, Rational>;

  CommPolynomial3() = default;
  CommPolynomial3(const Rational& c);  // NOLINT: constants convert implicitly
  CommPolynomial3(const Exponent3& e, const Rational& c);
  static CommPolynomial3 x() { return CommPolynomial3({1, 0, 0}, 1); }
  static CommPolynomial3 y() { return CommPolynomial3({0, 1, 0}, 1); }
  static CommPolynomial3 z() { return CommPolynomial3({0, 0, 1}, 1); }
  /// P(x) for a univariate polynomial P.
  static CommPolynomial3 in_x(const UniPoly& p);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  /// ∂/∂(x, y, z)[var].
  CommPolynomial3 partial(int var) const;
  double evaluate(double x, double y, double z) const;
  Rational evaluate(const Rational& x, const Rational& y, const Rational& z) const;

  CommPolynomial3 operator-() const;
  CommPolynomial3& operator+=(const CommPolynomial3& o);
  CommPolynomial3& operator-=(const CommPolynomial3& o);
  friend CommPolynomial3 operator+(CommPolynomial3 a, const CommPolynomial3& b) { return a += b; }
  friend CommPolynomial3 operator-(CommPolynomial3 a, const CommPolynomial3& b) { return a -= b; }
  friend CommPolynomial3 operator*(const CommPolynomial3& a, const CommPolynomial3& b);
  friend bool operator==(const CommPolynomial3&, const CommPolynomial3&) = default;

  /// e.g. "2*x^2*y - z + 1/3"; "0" for zero. Highest degree first.
  std::string str() const;

 private:
  void add_term(const Exponent3& e, const Rational& c);
  Terms terms_;
};

CommPolynomial3 power(const CommPolynomial3& p, unsigned n);

/// Parses sums of products of rationals and x, y, z with optional ^n, e.g.
/// "x^2 - 3/2*x*y + z". Throws ParseError.
CommPolynomial3 parse_comm_polynomial(std::string_view text);

/// {f, g}_C = ∇C · (∇f × ∇g).
CommPolynomial3 poisson_bracket(const CommPolynomial3& f, const CommPolynomial3& g, const CommPolynomial3& C);

enum class Normalization {
  Full,  // (P(x) + y²)² + z² − L
  Half,  // ½(P(x) + y²)² + ½z² − L/2: brackets match the algebra relations
};

/// Constraint polynomial for the surface (P(x) + y²)² + z² = L.
CommPolynomial3 constraint_polynomial(const UniPoly& p, const Rational& level_sq, Normalization norm);

enum class FormTag { GeneralGenus, TorusSphere };

struct SurfaceSpec {
  FormTag form = FormTag::GeneralGenus;
  int genus = 0;       // intended genus for GeneralGenus, informational otherwise
  UniPoly P;           // even degree, positive leading coefficient
  Rational level_sq;   // L: μ² for GeneralGenus, c for TorusSphere

  CommPolynomial3 constraint(Normalization norm) const { return constraint_polynomial(P, level_sq, norm); }
};

/// G(t) = (t − 1)(t − 4)···(t − g²).
UniPoly genus_base_polynomial(int g);

struct MaxBound {
  Rational lower;  // lower ≤ max G on [0, g² + 1] ≤ upper
  Rational upper;
};

/// Certified enclosure of max G on [0, g² + 1]; endpoints and critical points
/// are evaluated exactly or by interval arithmetic.
MaxBound genus_max_bound(int g);

/// P(x) = αG(x²) − μ with level μ². Throws DomainError for g < 1 or μ ≤ 0,
/// AlphaOutOfRange unless 0 < α < 2μ/M, NotRegular if P ± μ has a multiple root.
SurfaceSpec build_genus_polynomial(int g, const Rational& mu, const Rational& alpha);

/// P(x) = x² − μ with level c.
SurfaceSpec torus_sphere_spec(const Rational& mu, const Rational& c);

struct CriticalData {
  std::size_t n_plus = 0;   // #{P = +√L}: maxima and minima of the height x
  std::size_t n_minus = 0;  // #{P = −√L}: saddles
  int chi = 0;
  int genus = 0;            // (2 − χ)/2
  std::vector<double> critical_x_values;
};

/// Morse count of the height function x on the surface. Throws InvalidSpec for
/// odd degree, non-positive leading coefficient or L ≤ 0, and NotRegular when
/// P² − L has a multiple root.
CriticalData euler_characteristic(const SurfaceSpec& spec);

/// Real x with (x² − μ)² = c, ascending: four, three (μ = √c) or two values.
std::vector<double> critical_values_torus_sphere(double mu, double c);

}  // namespace ncsurf
