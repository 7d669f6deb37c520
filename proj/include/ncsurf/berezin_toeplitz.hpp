#pragma once

// Clock-and-shift matrices, face-function monomials, and the torus matrices
// X, Y, Z built from them, with the comparison against the loop
// representation of the same dimension.

#include <array>

#include "ncsurf/representation.hpp"

namespace ncsurf {

struct ClockShift {
  int N = 0;
  Matrix S;   // ones on the superdiagonal and S[N−1, 0] = 1: S D S⁻¹ shifts diagonals up
  Matrix T;   // diag(1, q, …, q^{N−1})
  cplx q;     // e^{−2πi/N}
  cplx chi;   // e^{−πi/N}
};

/// Throws NTooSmall for N < 5.
ClockShift clock_shift(int N);

/// χ^{r₁r₂} S^{−r₁} T^{r₂}.
Matrix face_function_matrix(int r1, int r2, const ClockShift& cs);

struct BTSpec {
  double mu = 0.0;
  double nu = 1.0;
  int N = 0;
  double theta() const;  // π/N
};

struct BTMatrices {
  Matrix X;
  Matrix Y;
  Matrix Z;
  Matrix D;  // diag √(μ + ν cos((2l + 1)π/N)), l = 1..N
};

/// X = ½(DS + S⁻¹D), Y = −(i/2)(DS − S⁻¹D), Z = diag(−ν sin(2πl/N)).
/// Throws ComplexSqrt when μ + ν cos(·) < 0, NTooSmall for N < 5.
BTMatrices bt_matrices(const BTSpec& spec);

struct BTResiduals {
  // [X,Y] = iℏ cosθ Z; [Y, cosθ Z] = iℏ(X K + K X); [cosθ Z, X] = iℏ(Y K + K Y);
  // K² + (cosθ Z)² = (ν cosθ)² I, with K = X² + Y² − μ and ℏ = tan(π/N).
  std::array<double, 4> residuals{};
  double max() const;
};

BTResiduals verify_bt_relations(const Matrix& X, const Matrix& Y, const Matrix& Z, const BTSpec& spec);

struct LoopComparison {
  double max_entry_diff = 0.0;  // vs the loop with c = (ν cosθ)², β = π/N
  bool equivalent = false;      // max_entry_diff ≤ 1e-10
  double c = 0.0;
  int rotation = 0;             // cyclic relabeling that aligned the two
  double surface_gap = 0.0;     // vs the loop with c = ν², β = π/N; NaN if that loop has a non-positive weight
};

/// Compares W_BT = X + iY with the single-loop representation (n = N, k = 1,
/// β = π/N, phases 0). Throws RegimeMismatch unless μ/ν > 1 and the loop is in
/// the toral or critical-toral regime.
LoopComparison compare_with_loop_rep(const BTSpec& spec);

}  // namespace ncsurf
