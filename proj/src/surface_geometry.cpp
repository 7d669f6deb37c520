#include "ncsurf/surface_geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ncsurf/error.hpp"

namespace ncsurf {

CommPolynomial3::CommPolynomial3(const Rational& c) { add_term({0, 0, 0}, c); }

CommPolynomial3::CommPolynomial3(const Exponent3& e, const Rational& c) { add_term(e, c); }

CommPolynomial3 CommPolynomial3::in_x(const UniPoly& p) {
  CommPolynomial3 out;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) out.add_term({static_cast<int>(k), 0, 0}, p.coeffs()[k]);
  return out;
}

void CommPolynomial3::add_term(const Exponent3& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int CommPolynomial3::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

CommPolynomial3 CommPolynomial3::partial(int var) const {
  CommPolynomial3 out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent3 f = e;
    --f[var];
    out.add_term(f, c * e[var]);
  }
  return out;
}

double CommPolynomial3::evaluate(double x, double y, double z) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) acc += to_double(c) * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(z, e[2]);
  return acc;
}

Rational CommPolynomial3::evaluate(const Rational& x, const Rational& y, const Rational& z) const {
  auto pw = [](const Rational& b, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= b;
    return r;
  };
  Rational acc = 0;
  for (const auto& [e, c] : terms_) acc += c * pw(x, e[0]) * pw(y, e[1]) * pw(z, e[2]);
  return acc;
}

CommPolynomial3 CommPolynomial3::operator-() const {
  CommPolynomial3 out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

CommPolynomial3& CommPolynomial3::operator+=(const CommPolynomial3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

CommPolynomial3& CommPolynomial3::operator-=(const CommPolynomial3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

CommPolynomial3 operator*(const CommPolynomial3& a, const CommPolynomial3& b) {
  CommPolynomial3 out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return out;
}

std::string CommPolynomial3::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent3, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = a.first[0] + a.first[1] + a.first[2], db = b.first[0] + b.first[1] + b.first[2];
    if (da != db) return da > db;
    return a.first > b.first;
  });
  static constexpr char kVars[3] = {'x', 'y', 'z'};
  std::string out;
  for (const auto& [e, c] : ordered) {
    if (!out.empty()) out += c > 0 ? " + " : " - ";
    else if (c < 0) out += "-";
    Rational mag = abs(c);
    std::string mono;
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += kVars[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) out += to_string(mag);
    else if (mag == 1) out += mono;
    else out += to_string(mag) + "*" + mono;
  }
  return out;
}

CommPolynomial3 power(const CommPolynomial3& p, unsigned n) {
  CommPolynomial3 out(Rational(1));
  for (unsigned i = 0; i < n; ++i) out = out * p;
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  CommPolynomial3 parse() {
    CommPolynomial3 out;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      CommPolynomial3 t = term();
      out += sign < 0 ? -t : t;
      first = false;
      skip();
    }
    return out;
  }

 private:
  CommPolynomial3 term() {
    CommPolynomial3 t(Rational(1));
    t = t * factor();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      skip();
      t = t * factor();
      skip();
    }
    return t;
  }

  CommPolynomial3 factor() {
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    CommPolynomial3 base;
    if (ch == 'x' || ch == 'y' || ch == 'z') {
      ++pos_;
      base = ch == 'x' ? CommPolynomial3::x() : ch == 'y' ? CommPolynomial3::y() : CommPolynomial3::z();
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '/')) ++pos_;
      base = CommPolynomial3(parse_rational(s_.substr(start, pos_ - start)));
    } else {
      fail(std::string("unexpected character '") + ch + "'");
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent after '^'");
      base = power(base, static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

CommPolynomial3 parse_comm_polynomial(std::string_view text) { return PolyParser(text).parse(); }

CommPolynomial3 poisson_bracket(const CommPolynomial3& f, const CommPolynomial3& g, const CommPolynomial3& C) {
  CommPolynomial3 fx = f.partial(0), fy = f.partial(1), fz = f.partial(2);
  CommPolynomial3 gx = g.partial(0), gy = g.partial(1), gz = g.partial(2);
  return C.partial(0) * (fy * gz - fz * gy) + C.partial(1) * (fz * gx - fx * gz) + C.partial(2) * (fx * gy - fy * gx);
}

CommPolynomial3 constraint_polynomial(const UniPoly& p, const Rational& level_sq, Normalization norm) {
  CommPolynomial3 base = CommPolynomial3::in_x(p) + CommPolynomial3::y() * CommPolynomial3::y();
  CommPolynomial3 out = base * base + CommPolynomial3::z() * CommPolynomial3::z() - CommPolynomial3(level_sq);
  if (norm == Normalization::Half) out = out * CommPolynomial3(Rational(1, 2));
  return out;
}

UniPoly genus_base_polynomial(int g) {
  UniPoly out = UniPoly::constant(1);
  for (int j = 1; j <= g; ++j) out = out * UniPoly({Rational(-j * j), Rational(1)});
  return out;
}

MaxBound genus_max_bound(int g) {
  if (g < 1) throw Error(ErrorCode::DomainError, "genus must be at least 1");
  const UniPoly G = genus_base_polynomial(g);
  const Rational a = 0, b = g * g + 1;
  MaxBound out{std::max(G.evaluate(a), G.evaluate(b)), std::max(G.evaluate(a), G.evaluate(b))};
  const UniPoly dG = G.derivative();
  // Tight enough that interval overestimation is far below any sensible α.
  const Rational width(1, 1 << 30);
  for (RootInterval iv : isolate_real_roots(dG, a, b)) {
    iv = refine_root(squarefree_part(dG), iv, width);
    Rational mid = (iv.lo + iv.hi) / 2;
    out.lower = std::max(out.lower, G.evaluate(mid));
    out.upper = std::max(out.upper, G.evaluate_interval(iv.lo, iv.hi).second);
  }
  return out;
}

namespace {

UniPoly even_substitute(const UniPoly& q) {
  // Q(x²)
  std::vector<Rational> c(q.coeffs().empty() ? 0 : 2 * q.coeffs().size() - 1);
  for (std::size_t k = 0; k < q.coeffs().size(); ++k) c[2 * k] = q.coeffs()[k];
  return UniPoly(std::move(c));
}

int sign_at_root(const UniPoly& sf, const UniPoly& p, RootInterval iv) {
  // p has no root at this root of sf, so shrinking the enclosure settles its sign.
  for (int iter = 0; iter < 400; ++iter) {
    auto [lo, hi] = p.evaluate_interval(iv.lo, iv.hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (iv.lo == iv.hi) break;
    iv = refine_root(sf, iv, (iv.hi - iv.lo) / 4);
  }
  throw Error(ErrorCode::NotRegular, "could not separate root from a zero of P");
}

}  // namespace

SurfaceSpec build_genus_polynomial(int g, const Rational& mu, const Rational& alpha) {
  if (g < 1) throw Error(ErrorCode::DomainError, "genus must be at least 1");
  if (mu <= 0) throw Error(ErrorCode::DomainError, "mu must be positive");
  const MaxBound M = genus_max_bound(g);
  if (alpha <= 0 || alpha * M.lower >= 2 * mu) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 2*mu/M)");
  }
  if (alpha * M.upper >= 2 * mu) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha too close to 2*mu/M to certify");
  }
  UniPoly Q = genus_base_polynomial(g) * alpha - UniPoly::constant(mu);
  SurfaceSpec spec{FormTag::GeneralGenus, g, even_substitute(Q), mu * mu};
  for (const UniPoly& side : {spec.P - UniPoly::constant(mu), spec.P + UniPoly::constant(mu)}) {
    if (!count_simple_roots(side).all_simple) throw Error(ErrorCode::NotRegular, "P ± mu has a multiple root");
  }
  return spec;
}

SurfaceSpec torus_sphere_spec(const Rational& mu, const Rational& c) {
  if (c <= 0) throw Error(ErrorCode::DomainError, "c must be positive");
  return SurfaceSpec{FormTag::TorusSphere, 0, UniPoly({-mu, 0, 1}), c};
}

CriticalData euler_characteristic(const SurfaceSpec& spec) {
  const UniPoly& P = spec.P;
  if (P.degree() < 2 || P.degree() % 2 != 0) throw Error(ErrorCode::InvalidSpec, "P must have positive even degree");
  if (P.leading() <= 0) throw Error(ErrorCode::InvalidSpec, "leading coefficient of P must be positive");
  if (spec.level_sq <= 0) throw Error(ErrorCode::InvalidSpec, "level must be positive");

  // Critical points of the height x sit at y = z = 0 with P(x)² = L.
  const UniPoly crit = P * P - UniPoly::constant(spec.level_sq);
  if (!count_simple_roots(crit).all_simple) throw Error(ErrorCode::NotRegular, "P^2 - L has a multiple root");

  CriticalData out;
  for (const RootInterval& iv : isolate_real_roots(crit)) {
    if (sign_at_root(crit, P, iv) > 0) ++out.n_plus;
    else ++out.n_minus;
    out.critical_x_values.push_back(root_to_double(crit, iv));
  }
  out.chi = static_cast<int>(out.n_plus) - static_cast<int>(out.n_minus);
  out.genus = (2 - out.chi) / 2;
  return out;
}

std::vector<double> critical_values_torus_sphere(double mu, double c) {
  if (!(c > 0)) throw Error(ErrorCode::DomainError, "c must be positive");
  const double r = std::sqrt(c);
  std::vector<double> out;
  for (double sq : {mu + r, mu - r}) {
    if (std::fabs(sq) <= 1e-12 * std::max(1.0, r)) {
      out.push_back(0.0);
    } else if (sq > 0) {
      out.push_back(std::sqrt(sq));
      out.push_back(-std::sqrt(sq));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ncsurf
