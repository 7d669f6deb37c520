#include "ncsurf/berezin_toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ncsurf/error.hpp"

namespace ncsurf {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix int_power(const Matrix& A, int e) {
  Matrix out = Matrix::Identity(A.rows(), A.cols());
  for (int i = 0; i < e; ++i) out = out * A;
  return out;
}

double rotated_diff(const Matrix& A, const Matrix& B, int r) {
  const int N = static_cast<int>(A.rows());
  double worst = 0.0;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) worst = std::max(worst, std::abs(A(a, b) - B((a + r) % N, (b + r) % N)));
  }
  return worst;
}

// Smallest entrywise difference over all cyclic relabelings of B.
std::pair<double, int> best_rotation(const Matrix& A, const Matrix& B) {
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int r = 0; r < A.rows(); ++r) {
    double d = rotated_diff(A, B, r);
    if (d < best) {
      best = d;
      arg = r;
    }
  }
  return {best, arg};
}

}  // namespace

ClockShift clock_shift(int N) {
  if (N < 5) throw Error(ErrorCode::NTooSmall, "clock and shift need N >= 5");
  ClockShift cs;
  cs.N = N;
  cs.q = std::polar(1.0, -2 * kPi / N);
  cs.chi = std::polar(1.0, -kPi / N);
  cs.S = Matrix::Zero(N, N);
  cs.T = Matrix::Zero(N, N);
  for (int l = 0; l < N; ++l) {
    cs.S(l, (l + 1) % N) = 1.0;
    cs.T(l, l) = std::polar(1.0, -2 * kPi * l / N);
  }
  return cs;
}

Matrix face_function_matrix(int r1, int r2, const ClockShift& cs) {
  const int N = cs.N;
  auto mod = [N](long v) { return static_cast<int>(((v % N) + N) % N); };
  // S is a permutation matrix, so S⁻¹ = Sᵀ and S^N = T^N = I.
  const Matrix Sinv = cs.S.transpose();
  const Matrix A = int_power(Sinv, mod(r1)) * int_power(cs.T, mod(r2));
  const cplx phase = std::polar(1.0, -kPi * static_cast<double>(static_cast<long>(r1) * r2) / N);
  return phase * A;
}

double BTSpec::theta() const { return kPi / N; }

BTMatrices bt_matrices(const BTSpec& spec) {
  const ClockShift cs = clock_shift(spec.N);
  const int N = spec.N;
  BTMatrices out;
  out.D = Matrix::Zero(N, N);
  out.Z = Matrix::Zero(N, N);
  for (int l = 1; l <= N; ++l) {
    double arg = spec.mu + spec.nu * std::cos((2 * l + 1) * kPi / N);
    if (arg < 0) throw Error(ErrorCode::ComplexSqrt, "mu + nu cos((2l+1) pi/N) < 0 at l = " + std::to_string(l));
    out.D(l - 1, l - 1) = std::sqrt(arg);
    out.Z(l - 1, l - 1) = -spec.nu * std::sin(2 * kPi * l / N);
  }
  const Matrix DS = out.D * cs.S, SinvD = cs.S.transpose() * out.D;
  out.X = 0.5 * (DS + SinvD);
  out.Y = cplx(0.0, -0.5) * (DS - SinvD);
  return out;
}

double BTResiduals::max() const { return *std::max_element(residuals.begin(), residuals.end()); }

BTResiduals verify_bt_relations(const Matrix& X, const Matrix& Y, const Matrix& Z, const BTSpec& spec) {
  const double theta = spec.theta(), h = std::tan(theta), ct = std::cos(theta);
  const cplx ih(0.0, h);
  const Eigen::Index N = X.rows();
  const Matrix I = Matrix::Identity(N, N);
  const Matrix Zc = ct * Z;
  const Matrix K = X * X + Y * Y - spec.mu * I;
  BTResiduals out;
  out.residuals[0] = (X * Y - Y * X - ih * Zc).norm();
  out.residuals[1] = (Y * Zc - Zc * Y - ih * (X * K + K * X)).norm();
  out.residuals[2] = (Zc * X - X * Zc - ih * (Y * K + K * Y)).norm();
  const double level = spec.nu * ct;
  out.residuals[3] = (K * K + Zc * Zc - level * level * I).norm();
  return out;
}

LoopComparison compare_with_loop_rep(const BTSpec& spec) {
  if (!(spec.nu > 0) || spec.mu / spec.nu <= 1.0) throw Error(ErrorCode::RegimeMismatch, "the torus form needs mu/nu > 1");
  const double theta = spec.theta();
  LoopComparison out;
  out.c = std::pow(spec.nu * std::cos(theta), 2);
  const Regime regime = classify_regime(spec.mu, out.c, theta);
  if (regime != Regime::Toral && regime != Regime::CriticalToral) {
    throw Error(ErrorCode::RegimeMismatch, "loop parameters are not in a toral regime");
  }
  const BTMatrices bt = bt_matrices(spec);
  const Matrix W_bt = bt.X + cplx(0.0, 1.0) * bt.Y;

  LoopSpec loop;
  loop.n = spec.N;
  loop.k = 1;
  loop.beta = kPi / spec.N;
  const Representation matched = construct_loop_rep(loop, spec.mu, out.c);
  std::tie(out.max_entry_diff, out.rotation) = best_rotation(W_bt, matched.W);
  out.equivalent = out.max_entry_diff <= 1e-10;

  try {
    const Representation surface = construct_loop_rep(loop, spec.mu, spec.nu * spec.nu);
    out.surface_gap = best_rotation(W_bt, surface.W).first;
  } catch (const Error&) {
    out.surface_gap = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace ncsurf
