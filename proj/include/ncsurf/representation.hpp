#pragma once

// Finite-dimensional hermitian representations of the torus/sphere algebra:
// the ellipse map on diagonal data, closed-form loop/string/degenerate
// constructions, relation checks, graph-based classification and
// decomposition, loop canonicalization and the loop index.

#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ncsurf {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct EllipsePoint {
  double d = 0.0;
  double d_tilde = 0.0;
};

/// s(d, d̃) = (4μ sin²θ + 2d cos 2θ − d̃, d).
EllipsePoint ellipse_map_s(const EllipsePoint& x, double mu, double theta);
EllipsePoint ellipse_map_s_inverse(const EllipsePoint& x, double mu, double theta);

/// √c·(μ/√c + cos β₀/cos θ, μ/√c + cos(β₀ + 2θ)/cos θ).
EllipsePoint ellipse_point(double beta0, double mu, double c, double theta);

/// (d + d̃ − 2μ)² + (d − d̃)²/ℏ²; equals 4c on the constraint ellipse.
double ellipse_form(const EllipsePoint& x, double mu, double theta);

/// a± = 2 sin θ (μ sin θ ± √(c − μ² cos²θ)). Throws NoRealCrossing when the
/// square root is imaginary.
std::pair<double, double> axis_crossings(double mu, double c, double theta);

enum class Regime { Degenerate, Spherical, CriticalToral, Toral, Invalid };
std::string_view to_string(Regime r);

/// c = 0 → Degenerate; μ/√c < −1 → Invalid; (−1, 1] → Spherical (−1 itself
/// is the trivial one-point string and is also reported Spherical);
/// (1, 1/cos θ] → CriticalToral; beyond → Toral. Boundaries are compared with
/// a relative slack of 1e-12.
Regime classify_regime(double mu, double c, double theta);

enum class RepKind { Loop, String, Degenerate, General };
std::string_view to_string(RepKind k);

struct Representation {
  Matrix W;
  double mu = 0.0;
  double theta = 0.0;  // ℏ = tan θ
  double c = 0.0;      // target Casimir value / 4
  Regime regime = Regime::Invalid;
  RepKind kind = RepKind::General;

  int dim() const { return static_cast<int>(W.rows()); }
  double hbar() const;
  Matrix D() const { return W * W.adjoint(); }
  Matrix D_tilde() const { return W.adjoint() * W; }
  Matrix X() const;
  Matrix Y() const;
  Matrix Z() const;  // [X, Y]/(iℏ)
};

struct LoopSpec {
  int n = 0;
  int k = 1;                    // θ = πk/n
  double beta = 0.0;
  std::vector<double> phases;   // α_0..α_{n−1}; empty means all zero
  int block_dim = 1;
  std::vector<Matrix> unitaries;  // U_0..U_{n−1} when block_dim > 1

  double theta() const;
};

/// ẽ_l = μ + √c cos(2lθ + β)/cos θ for l = 0..n−1.
std::vector<double> loop_weights(const LoopSpec& spec, double mu, double c);

/// W[l, l+1] = √ẽ_{l+1} e^{iα_{l+1}}, W[n−1, 0] = √ẽ_0 e^{iα_0}; blocks
/// √ẽ_l U_l for block_dim > 1. Throws InvalidSpec (n < 5, gcd(k, n) ≠ 1,
/// θ ≥ π/4, bad phase/unitary counts), NotUnitary, NonPositiveWeight.
Representation construct_loop_rep(const LoopSpec& spec, double mu, double c);

/// The θ ∈ (0, π/(n+1)] with cos nθ + (μ/√c) cos θ = 0, by bisection.
/// Throws DomainError for n < 2 or c ≤ 0, NoRoot without a sign change.
double solve_string_theta(int n, double mu, double c);

struct StringSpec {
  int n = 1;
  double theta = 0.0;
  double mu = 0.0;
  std::vector<double> phases;   // α_1..α_{n−1}; empty means all zero
  std::optional<double> c;      // needed when μ = 0 (c is then free)
};

/// Casimir value of the string: μ² cos²θ / cos² nθ, or spec.c when μ = 0.
double string_casimir(const StringSpec& spec);

/// ẽ_l = 2√c sin(lθ) sin((n − l)θ)/cos θ for l = 1..n−1.
std::vector<double> string_weights(const StringSpec& spec);

/// W[l−1, l] = √ẽ_l e^{iα_l}. Throws WindowViolation, StringConditionViolated,
/// NonPositiveWeight, InvalidSpec.
Representation construct_string_rep(const StringSpec& spec);

/// W = √μ U. Throws NegativeMu, NotUnitary.
Representation construct_degenerate_rep(double mu, const Matrix& U, double theta);

struct RelationReport {
  double residual_wwd = 0.0;
  double residual_casimir = 0.0;
  double c_estimate = 0.0;
  double intertwine_residual = 0.0;
  double hermitian_residual = 0.0;  // max over X, Y, Z of ‖A − A†‖_F
  double residual_yz = 0.0;         // [Y,Z] = iℏ(2X³ + XY² + Y²X − 2μX)
  double residual_zx = 0.0;         // [Z,X] = iℏ(2Y³ + YX² + X²Y − 2μY)

  bool passes(double tol) const;
};

RelationReport verify_relations(const Representation& rep);

/// Casimir matrix (D + D̃ − 2μ)² + (D − D̃)²/ℏ².
Matrix casimir_matrix(const Representation& rep);

/// max over edges i→j of |x_j − s(x_i)| with x_i = (D_ii, D̃_ii).
double edge_consistency_residual(const Representation& rep, double zero_tol = -1.0);

struct MatrixGraph {
  int n = 0;
  double zero_tol = 0.0;
  std::vector<std::pair<int, int>> edges;  // sorted
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;

  bool has_edge(int i, int j) const;
};

/// Edge i→j iff |W_ij| > zero_tol; a negative zero_tol selects 1e-9·max|W_ij|.
MatrixGraph matrix_graph(const Matrix& W, double zero_tol = -1.0);

enum class ComponentKind { Loop, String, Degenerate, Other };
std::string_view to_string(ComponentKind k);

struct GraphComponent {
  ComponentKind kind = ComponentKind::Other;
  std::vector<int> vertices;  // ascending
  std::vector<int> transmitters;
  std::vector<int> receivers;
  int size() const { return static_cast<int>(vertices.size()); }
};

/// Weakly connected components with loop/string detection; transmitters and
/// receivers are cross-checked against the diagonals of D̃ and D.
/// Throws InconsistentGraph on mismatch.
std::vector<GraphComponent> graph_classify(const MatrixGraph& g, const Representation& rep);

struct Decomposition {
  std::vector<Representation> parts;
  std::vector<int> permutation;  // new position p holds old index permutation[p]
};

Decomposition decompose(const Representation& rep, double zero_tol = -1.0);
Representation direct_sum(const std::vector<Representation>& parts);
/// P W Pᵀ with (P W Pᵀ)[a, b] = W[perm[a], perm[b]].
Matrix permute(const Matrix& W, const std::vector<int>& perm);

struct RepIndex {
  cplx z;
  double power_residual = 0.0;  // ‖Wⁿ − zI‖_F / max(1, |z|)
};

/// Product of the cycle entries. Throws NotSingleLoop.
RepIndex rep_index(const Representation& rep, double zero_tol = -1.0);

/// Splits a block-cyclic loop into single loops, one per eigenvalue of the
/// holonomy. Throws NotBlockCyclic.
std::vector<Representation> canonicalize_loop(const Representation& rep, double tol = 1e-9);

/// Invariant comparison: dimension, Casimir, and index for loops.
/// Throws MixedKinds unless both are single loops or both single strings.
bool reps_equivalent(const Representation& a, const Representation& b, double tol);

/// f(β) = Π_l (μ + √c cos(2lθ + β)/cos θ), θ = πk/n.
double f_beta(double beta, int n, int k, double mu, double c);
/// f(β) − (√c/cos θ)ⁿ (−1/2)^{n−1} cos nβ: independent of β.
double f_beta_residual(double beta, int n, int k, double mu, double c);

/// Unitary check ‖U U† − I‖_F ≤ tol.
bool is_unitary(const Matrix& U, double tol = 1e-10);

}  // namespace ncsurf
