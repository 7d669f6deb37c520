#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "ncsurf/error.hpp"
#include "ncsurf/surface_geometry.hpp"

using namespace ncsurf;

namespace {

CommPolynomial3 random_poly(std::mt19937_64& rng, int max_degree, int terms) {
  std::uniform_int_distribution<int> e(0, max_degree), num(-6, 6), den(1, 4);
  CommPolynomial3 p;
  for (int t = 0; t < terms; ++t) {
    Exponent3 ex{e(rng), e(rng), e(rng)};
    while (ex[0] + ex[1] + ex[2] > max_degree) ex[static_cast<std::size_t>(e(rng) % 3)] = 0;
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p += CommPolynomial3(ex, c);
  }
  return p;
}

const CommPolynomial3 X = CommPolynomial3::x(), Y = CommPolynomial3::y(), Z = CommPolynomial3::z();

}  // namespace

TEST_CASE("parse and print polynomials") {
  CHECK(parse_comm_polynomial("x^2 - 3/2*x*y + z") == X * X - CommPolynomial3(Rational(3, 2)) * X * Y + Z);
  CHECK(parse_comm_polynomial("2*x^2*y - z + 1/3").str() == "2*x^2*y - z + 1/3");
  CHECK(parse_comm_polynomial("0").str() == "0");
  CHECK(parse_comm_polynomial("x*x*y + 2*x^2*y") == CommPolynomial3(3) * X * X * Y);
  for (const char* bad : {"x^", "2**x", "w", "x +", "", "(x+y)^2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_comm_polynomial(bad), Error);
  }
  CHECK(power(X + Y, 3).evaluate(Rational(1), Rational(2), Rational(0)) == 27);
}

TEST_CASE("bracket examples for the half-normalized torus constraint") {
  const Rational mu(13, 10), c(1);
  const UniPoly P({-mu, 0, 1});
  const CommPolynomial3 C = constraint_polynomial(P, c, Normalization::Half);
  CHECK(poisson_bracket(X, Y, C) == Z);
  const CommPolynomial3 Px = CommPolynomial3::in_x(P);
  const CommPolynomial3 dPx = CommPolynomial3::in_x(P.derivative());
  CHECK(poisson_bracket(Y, Z, C) == dPx * (Px + Y * Y));
  CHECK(poisson_bracket(Z, X, C) == CommPolynomial3(2) * Y * (Px + Y * Y));
  std::mt19937_64 rng(1);
  const CommPolynomial3 f = random_poly(rng, 3, 4);
  CHECK(poisson_bracket(f, f, C).is_zero());
  // The full normalization doubles every bracket.
  const CommPolynomial3 Cfull = constraint_polynomial(P, c, Normalization::Full);
  CHECK(poisson_bracket(X, Y, Cfull) == CommPolynomial3(2) * Z);
}

TEST_CASE("Jacobi, Leibniz and Casimir properties") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const CommPolynomial3 C = random_poly(rng, 4, 5);
    const CommPolynomial3 f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3), h = random_poly(rng, 3, 3);
    auto br = [&](const CommPolynomial3& a, const CommPolynomial3& b) { return poisson_bracket(a, b, C); };
    CHECK((br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))).is_zero());
    CHECK(br(f, g * h) == br(f, g) * h + g * br(f, h));
    CHECK(br(f, g) == -br(g, f));
    CHECK(br(C, g).is_zero());
  }
}

TEST_CASE("genus base polynomial and its maximum") {
  CHECK(genus_base_polynomial(2) == UniPoly({4, -5, 1}));
  const MaxBound m1 = genus_max_bound(1);
  CHECK(m1.lower == 1);
  CHECK(m1.upper == 1);
  const MaxBound m2 = genus_max_bound(2);
  CHECK(m2.lower == 4);
  CHECK(m2.upper == 4);
  // g = 4: the interior maximum exceeds the endpoint values.
  const MaxBound m4 = genus_max_bound(4);
  CHECK(m4.lower <= m4.upper);
  CHECK(m4.upper - m4.lower < Rational(1, 1000));
  const UniPoly G = genus_base_polynomial(4);
  double sampled = 0;
  for (int s = 0; s <= 170000; ++s) sampled = std::max(sampled, G.evaluate(s * 1e-4));
  CHECK(sampled <= m4.upper.get_d() + 1e-9);
  CHECK(sampled >= m4.lower.get_d() - 1e-3);
  CHECK_THROWS_AS(genus_max_bound(0), Error);
}

TEST_CASE("genus-g surfaces: Morse counts") {
  const auto start = std::chrono::steady_clock::now();
  for (int g = 1; g <= 4; ++g) {
    CAPTURE(g);
    const MaxBound M = genus_max_bound(g);
    const Rational mu(1);
    const Rational alpha = mu / M.upper;  // well inside (0, 2μ/M)
    const SurfaceSpec spec = build_genus_polynomial(g, mu, alpha);
    CHECK(spec.P.degree() == 2 * g);
    CHECK(spec.level_sq == 1);
    const CriticalData cd = euler_characteristic(spec);
    CHECK(cd.n_plus == 2);
    CHECK(cd.n_minus == static_cast<std::size_t>(2 * g));
    CHECK(cd.chi == 2 - 2 * g);
    CHECK(cd.genus == g);
    CHECK(cd.chi % 2 == 0);
    CHECK(cd.critical_x_values.size() == static_cast<std::size_t>(2 + 2 * g));
    for (double x : cd.critical_x_values) CHECK(std::fabs(std::fabs(spec.P.evaluate(x)) - 1.0) < 1e-9);

    // Independent oracle: count P ∓ μ roots directly.
    CHECK(count_simple_roots(spec.P - UniPoly::constant(mu)).total_real == 2);
    CHECK(count_simple_roots(spec.P + UniPoly::constant(mu)).total_real == static_cast<std::size_t>(2 * g));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 2.0);
}

TEST_CASE("genus construction errors") {
  CHECK_THROWS_AS(build_genus_polynomial(0, 1, Rational(1, 10)), Error);
  CHECK_THROWS_AS(build_genus_polynomial(1, 0, Rational(1, 10)), Error);
  try {
    build_genus_polynomial(1, 1, 2);  // α = 2μ/M exactly with M = 1
    FAIL("expected AlphaOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphaOutOfRange);
  }
  try {
    build_genus_polynomial(2, 3, Rational(6, 4));  // M = 4
    FAIL("expected AlphaOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphaOutOfRange);
  }
  CHECK_NOTHROW(build_genus_polynomial(2, 3, Rational(149, 100)));
  CHECK_THROWS_AS(build_genus_polynomial(1, 1, 0), Error);
}

TEST_CASE("torus/sphere Morse counts") {
  const CriticalData sphere = euler_characteristic(torus_sphere_spec(Rational(9, 10), 1));
  CHECK(sphere.chi == 2);
  CHECK(sphere.genus == 0);
  CHECK(sphere.critical_x_values.size() == 2);
  const CriticalData torus = euler_characteristic(torus_sphere_spec(Rational(13, 10), 1));
  CHECK(torus.chi == 0);
  CHECK(torus.genus == 1);
  // μ = √c: P² − L has a double root at 0.
  CHECK_THROWS_AS(euler_characteristic(torus_sphere_spec(1, 1)), Error);
  SurfaceSpec odd{FormTag::GeneralGenus, 1, UniPoly({0, 1, 0, 1}), 1};
  CHECK_THROWS_AS(euler_characteristic(odd), Error);
}

TEST_CASE("critical values of the torus/sphere height") {
  auto v = critical_values_torus_sphere(1.3, 1.0);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == doctest::Approx(-std::sqrt(2.3)));
  CHECK(v[1] == doctest::Approx(-std::sqrt(0.3)));
  CHECK(v[2] == doctest::Approx(std::sqrt(0.3)));
  CHECK(v[3] == doctest::Approx(std::sqrt(2.3)));
  auto s = critical_values_torus_sphere(0.9, 1.0);
  REQUIRE(s.size() == 2);
  CHECK(s[1] == doctest::Approx(std::sqrt(1.9)));
  auto t = critical_values_torus_sphere(2.0, 4.0);
  REQUIRE(t.size() == 3);
  CHECK(t[0] == doctest::Approx(-2.0));
  CHECK(t[1] == 0.0);
  CHECK_THROWS_AS(critical_values_torus_sphere(1, 0), Error);
}
