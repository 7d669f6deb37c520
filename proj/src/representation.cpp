#include "ncsurf/representation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ncsurf/error.hpp"

namespace ncsurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi / 4)) {
    throw Error(ErrorCode::DomainError, "theta must lie in (0, pi/4), got " + std::to_string(theta));
  }
}

double cube_scale(const Matrix& W) {
  double n = W.norm();
  return std::max(1.0, n * n * n);
}

}  // namespace

EllipsePoint ellipse_map_s(const EllipsePoint& x, double mu, double theta) {
  double s = std::sin(theta);
  return {4 * mu * s * s + 2 * x.d * std::cos(2 * theta) - x.d_tilde, x.d};
}

EllipsePoint ellipse_map_s_inverse(const EllipsePoint& x, double mu, double theta) {
  double s = std::sin(theta);
  return {x.d_tilde, 4 * mu * s * s + 2 * x.d_tilde * std::cos(2 * theta) - x.d};
}

EllipsePoint ellipse_point(double beta0, double mu, double c, double theta) {
  double r = std::sqrt(c), ct = std::cos(theta);
  return {mu + r * std::cos(beta0) / ct, mu + r * std::cos(beta0 + 2 * theta) / ct};
}

double ellipse_form(const EllipsePoint& x, double mu, double theta) {
  double h = std::tan(theta);
  double a = x.d + x.d_tilde - 2 * mu, b = x.d - x.d_tilde;
  return a * a + b * b / (h * h);
}

std::pair<double, double> axis_crossings(double mu, double c, double theta) {
  double ct = std::cos(theta), st = std::sin(theta);
  double disc = c - mu * mu * ct * ct;
  if (disc < 0) throw Error(ErrorCode::NoRealCrossing, "ellipse does not meet the axes (c < mu^2 cos^2 theta)");
  double root = std::sqrt(disc);
  return {2 * st * (mu * st - root), 2 * st * (mu * st + root)};
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Degenerate: return "degenerate";
    case Regime::Spherical: return "spherical";
    case Regime::CriticalToral: return "critical-toral";
    case Regime::Toral: return "toral";
    case Regime::Invalid: return "invalid";
  }
  return "?";
}

std::string_view to_string(RepKind k) {
  switch (k) {
    case RepKind::Loop: return "loop";
    case RepKind::String: return "string";
    case RepKind::Degenerate: return "degenerate";
    case RepKind::General: return "general";
  }
  return "?";
}

Regime classify_regime(double mu, double c, double theta) {
  constexpr double eps = 1e-12;
  if (c < 0) return Regime::Invalid;
  if (c == 0) return Regime::Degenerate;
  double r = mu / std::sqrt(c);
  if (r < -1.0 - eps) return Regime::Invalid;
  if (r <= 1.0 + eps) return Regime::Spherical;
  if (r <= (1.0 / std::cos(theta)) * (1.0 + eps)) return Regime::CriticalToral;
  return Regime::Toral;
}

double Representation::hbar() const { return std::tan(theta); }

Matrix Representation::X() const { return (W + W.adjoint()) / 2.0; }

Matrix Representation::Y() const { return (W - W.adjoint()) / (2.0 * kI); }

Matrix Representation::Z() const {
  Matrix x = X(), y = Y();
  return (x * y - y * x) / (kI * hbar());
}

double LoopSpec::theta() const { return kPi * k / n; }

bool is_unitary(const Matrix& U, double tol) {
  if (U.rows() != U.cols()) return false;
  return (U * U.adjoint() - Matrix::Identity(U.rows(), U.cols())).norm() <= tol;
}

std::vector<double> loop_weights(const LoopSpec& spec, double mu, double c) {
  const double theta = spec.theta(), r = std::sqrt(c), ct = std::cos(theta);
  std::vector<double> e(static_cast<std::size_t>(spec.n));
  for (int l = 0; l < spec.n; ++l) e[static_cast<std::size_t>(l)] = mu + r * std::cos(2 * l * theta + spec.beta) / ct;
  return e;
}

Representation construct_loop_rep(const LoopSpec& spec, double mu, double c) {
  if (spec.n < 5) throw Error(ErrorCode::InvalidSpec, "loop dimension n must be at least 5");
  if (spec.k < 1 || std::gcd(spec.k, spec.n) != 1) throw Error(ErrorCode::InvalidSpec, "k must be positive and coprime to n");
  if (4 * spec.k >= spec.n) throw Error(ErrorCode::InvalidSpec, "theta = pi*k/n must be below pi/4");
  if (c <= 0) throw Error(ErrorCode::DomainError, "c must be positive for a loop");
  if (spec.block_dim < 1) throw Error(ErrorCode::InvalidSpec, "block_dim must be positive");
  const bool blocks = spec.block_dim > 1;
  if (!blocks && !spec.phases.empty() && spec.phases.size() != static_cast<std::size_t>(spec.n)) {
    throw Error(ErrorCode::InvalidSpec, "expected " + std::to_string(spec.n) + " phases");
  }
  if (blocks && spec.unitaries.size() != static_cast<std::size_t>(spec.n)) {
    throw Error(ErrorCode::InvalidSpec, "expected " + std::to_string(spec.n) + " block unitaries");
  }

  const std::vector<double> e = loop_weights(spec, mu, c);
  for (int l = 0; l < spec.n; ++l) {
    if (e[static_cast<std::size_t>(l)] <= 0) {
      throw Error(ErrorCode::NonPositiveWeight, "weight e_" + std::to_string(l) + " = " + std::to_string(e[static_cast<std::size_t>(l)]));
    }
  }

  const int n = spec.n, m = spec.block_dim;
  Representation rep;
  rep.W = Matrix::Zero(n * m, n * m);
  for (int l = 0; l < n; ++l) {
    // Weight ẽ_l sits on the edge into vertex l.
    const int row = (l + n - 1) % n;
    const double mag = std::sqrt(e[static_cast<std::size_t>(l)]);
    if (!blocks) {
      double phase = spec.phases.empty() ? 0.0 : spec.phases[static_cast<std::size_t>(l)];
      rep.W(row, l) = std::polar(mag, phase);
    } else {
      const Matrix& U = spec.unitaries[static_cast<std::size_t>(l)];
      if (U.rows() != m || !is_unitary(U)) throw Error(ErrorCode::NotUnitary, "block " + std::to_string(l) + " is not a unitary of size block_dim");
      rep.W.block(row * m, l * m, m, m) = mag * U;
    }
  }
  rep.mu = mu;
  rep.theta = spec.theta();
  rep.c = c;
  rep.regime = classify_regime(mu, c, rep.theta);
  rep.kind = RepKind::Loop;
  return rep;
}

double solve_string_theta(int n, double mu, double c) {
  if (n < 2) throw Error(ErrorCode::DomainError, "string length must be at least 2");
  if (!(c > 0)) throw Error(ErrorCode::DomainError, "c must be positive");
  const double r = mu / std::sqrt(c);
  auto f = [&](double t) { return std::cos(n * t) + r * std::cos(t); };
  double lo = 0.0, hi = kPi / (n + 1);
  double f_lo = f(lo), f_hi = f(hi);
  if (std::fabs(f_hi) <= 1e-14) return hi;
  if (!(f_lo > 0 && f_hi < 0)) throw Error(ErrorCode::NoRoot, "no sign change of cos(n theta) + (mu/sqrt c) cos(theta) in (0, pi/(n+1)]");
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double string_casimir(const StringSpec& spec) {
  if (spec.mu == 0.0) {
    if (!spec.c || !(*spec.c > 0)) throw Error(ErrorCode::InvalidSpec, "a string with mu = 0 needs an explicit c > 0");
    return *spec.c;
  }
  double ratio = spec.mu * std::cos(spec.theta) / std::cos(spec.n * spec.theta);
  return ratio * ratio;
}

std::vector<double> string_weights(const StringSpec& spec) {
  const double r = std::sqrt(string_casimir(spec)), ct = std::cos(spec.theta);
  std::vector<double> e;
  for (int l = 1; l < spec.n; ++l) e.push_back(2 * r * std::sin(l * spec.theta) * std::sin((spec.n - l) * spec.theta) / ct);
  return e;
}

Representation construct_string_rep(const StringSpec& spec) {
  if (spec.n < 1) throw Error(ErrorCode::InvalidSpec, "string length must be positive");
  check_theta(spec.theta);
  if (!spec.phases.empty() && spec.phases.size() != static_cast<std::size_t>(spec.n - 1)) {
    throw Error(ErrorCode::InvalidSpec, "expected " + std::to_string(spec.n - 1) + " phases");
  }
  const double cn = std::cos(spec.n * spec.theta);
  if (spec.mu != 0.0) {
    // The endpoint weights stay positive only if cos nθ and μ have opposite signs.
    if (!(cn * spec.mu < 0)) throw Error(ErrorCode::StringConditionViolated, "sgn(cos n theta) must equal -sgn(mu)");
    if (spec.c) {
      double expect = string_casimir(spec);
      if (std::fabs(*spec.c - expect) > 1e-9 * std::max(1.0, expect)) {
        throw Error(ErrorCode::StringConditionViolated, "c does not satisfy sqrt(c) cos(n theta) + mu cos(theta) = 0");
      }
    }
  } else if (std::fabs(cn) > 1e-12) {
    throw Error(ErrorCode::StringConditionViolated, "mu = 0 requires cos(n theta) = 0");
  }
  const double c = string_casimir(spec);
  const Regime regime = classify_regime(spec.mu, c, spec.theta);
  if (regime == Regime::Spherical && spec.n > 1 && (spec.n + 1) * spec.theta > kPi * (1 + 1e-12)) {
    throw Error(ErrorCode::WindowViolation, "(n+1) theta exceeds pi in the spherical regime");
  }
  const std::vector<double> e = string_weights(spec);
  Representation rep;
  rep.W = Matrix::Zero(spec.n, spec.n);
  for (int l = 1; l < spec.n; ++l) {
    double w = e[static_cast<std::size_t>(l - 1)];
    if (w <= 0) throw Error(ErrorCode::NonPositiveWeight, "weight e_" + std::to_string(l) + " = " + std::to_string(w));
    double phase = spec.phases.empty() ? 0.0 : spec.phases[static_cast<std::size_t>(l - 1)];
    rep.W(l - 1, l) = std::polar(std::sqrt(w), phase);
  }
  rep.mu = spec.mu;
  rep.theta = spec.theta;
  rep.c = c;
  rep.regime = regime;
  rep.kind = RepKind::String;
  return rep;
}

Representation construct_degenerate_rep(double mu, const Matrix& U, double theta) {
  if (mu < 0) throw Error(ErrorCode::NegativeMu, "degenerate representation needs mu >= 0");
  if (!is_unitary(U)) throw Error(ErrorCode::NotUnitary, "U is not unitary");
  check_theta(theta);
  Representation rep;
  rep.W = std::sqrt(mu) * U;
  rep.mu = mu;
  rep.theta = theta;
  rep.c = 0.0;
  rep.regime = Regime::Degenerate;
  rep.kind = RepKind::Degenerate;
  return rep;
}

Matrix casimir_matrix(const Representation& rep) {
  const Matrix D = rep.D(), Dt = rep.D_tilde();
  const Matrix I = Matrix::Identity(rep.dim(), rep.dim());
  const Matrix a = D + Dt - 2.0 * rep.mu * I, b = D - Dt;
  const double h = rep.hbar();
  return a * a + b * b / (h * h);
}

bool RelationReport::passes(double tol) const {
  return residual_wwd <= tol && residual_casimir <= tol && intertwine_residual <= tol && hermitian_residual <= tol &&
         residual_yz <= tol && residual_zx <= tol;
}

RelationReport verify_relations(const Representation& rep) {
  RelationReport out;
  const int N = rep.dim();
  if (N == 0) return out;
  const double h = rep.hbar(), h2 = h * h;
  const Matrix& W = rep.W;
  const Matrix D = rep.D(), Dt = rep.D_tilde();
  const double scale = cube_scale(W);

  out.residual_wwd = ((W * D + Dt * W) * (1 + h2) - 4 * rep.mu * h2 * W - (1 - h2) * (W * Dt + D * W)).norm() / scale;

  const Matrix C = casimir_matrix(rep);
  out.c_estimate = C.trace().real() / (4.0 * N);
  out.residual_casimir = (C - 4 * out.c_estimate * Matrix::Identity(N, N)).norm() / std::max(4 * out.c_estimate, 1.0);
  out.intertwine_residual = (W * Dt - D * W).norm();

  const Matrix X = rep.X(), Y = rep.Y(), Z = rep.Z();
  out.hermitian_residual = std::max({(X - X.adjoint()).norm(), (Y - Y.adjoint()).norm(), (Z - Z.adjoint()).norm()});
  const Matrix X2 = X * X, Y2 = Y * Y;
  const Matrix rhs_yz = kI * h * (2.0 * X2 * X + X * Y2 + Y2 * X - 2 * rep.mu * X);
  const Matrix rhs_zx = kI * h * (2.0 * Y2 * Y + Y * X2 + X2 * Y - 2 * rep.mu * Y);
  out.residual_yz = (Y * Z - Z * Y - rhs_yz).norm() / scale;
  out.residual_zx = (Z * X - X * Z - rhs_zx).norm() / scale;
  return out;
}

double edge_consistency_residual(const Representation& rep, double zero_tol) {
  const MatrixGraph g = matrix_graph(rep.W, zero_tol);
  const Matrix D = rep.D(), Dt = rep.D_tilde();
  double worst = 0.0;
  for (auto [i, j] : g.edges) {
    EllipsePoint xi{D(i, i).real(), Dt(i, i).real()};
    EllipsePoint sx = ellipse_map_s(xi, rep.mu, rep.theta);
    worst = std::max({worst, std::fabs(sx.d - D(j, j).real()), std::fabs(sx.d_tilde - Dt(j, j).real())});
  }
  return worst;
}

double f_beta(double beta, int n, int k, double mu, double c) {
  const double theta = kPi * k / n, r = std::sqrt(c), ct = std::cos(theta);
  double prod = 1.0;
  for (int l = 0; l < n; ++l) prod *= mu + r * std::cos(2 * l * theta + beta) / ct;
  return prod;
}

double f_beta_residual(double beta, int n, int k, double mu, double c) {
  const double theta = kPi * k / n;
  const double amp = std::pow(std::sqrt(c) / std::cos(theta), n) * std::pow(-0.5, n - 1);
  return f_beta(beta, n, k, mu, c) - amp * std::cos(n * beta);
}

}  // namespace ncsurf
