#pragma once

// Spectra of φ(X), eigenvalue-branch detection between critical values of
// the height function, μ sweeps, and commutator-versus-bracket convergence.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ncsurf/representation.hpp"
#include "ncsurf/surface_geometry.hpp"

namespace ncsurf {

/// Ascending eigenvalues. Throws NotHermitian if ‖H − H†‖_F > 1e-12·‖H‖_F.
std::vector<double> hermitian_eigenvalues(const Matrix& H);

struct BranchInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;   // eigenvalues strictly inside
  int branches = 0;        // 1, 2, or 0 when indeterminate (< 4 eigenvalues)
  double ratio = 0.0;      // M₀/M₁ of the interleaving test
};

/// One entry per open interval between consecutive critical values.
/// Two branches iff splitting the interval's eigenvalues into odd- and
/// even-indexed subsequences lowers the largest |second difference| by at
/// least `threshold`.
std::vector<BranchInterval> detect_branches(const std::vector<double>& spectrum,
                                            const std::vector<double>& critical_values,
                                            double threshold = 2.0);

struct SpectrumReport {
  double mu = 0.0;
  double c = 0.0;
  int N = 0;
  std::vector<double> eigenvalues;
  std::vector<double> gaps;  // λ_{i+1} − λ_i
  std::vector<double> critical_values;
  std::vector<BranchInterval> intervals;

  /// Interval index holding eigenvalue i, or −1.
  int interval_of(std::size_t i) const;
  std::vector<int> branch_pattern() const;
};

SpectrumReport position_spectrum(const Representation& rep, double threshold = 2.0);

/// The N-dimensional representation used for μ sweeps: a string with θ solved
/// from the string condition in the spherical regime, else a loop with
/// k = 1, θ = π/N, β = 0.
Representation sweep_representation(double mu, double c, int N);

struct SweepEntry {
  double mu = 0.0;
  std::optional<SpectrumReport> report;
  std::string error;  // set when construction failed
};

/// Results in input order; `threads` > 1 fans the μ values out to workers.
std::vector<SweepEntry> sweep_mu(const std::vector<double>& mu_values, double c, int N, int threads = 1,
                                 double threshold = 2.0);

/// CSV with header "mu,i,lambda,gap,interval,branches" (i is 1-based);
/// failed entries produce a single row with "error:<message>" as branches.
void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries);

/// Minimal two-panel scatter: index vs λ and index vs gap, one series per μ.
void write_sweep_svg(std::ostream& os, const std::vector<SweepEntry>& entries);

/// Fully symmetrized matrix image of p under x, y, z → X, Y, Z.
Matrix symmetrized_substitution(const CommPolynomial3& p, const Matrix& X, const Matrix& Y, const Matrix& Z);

struct ConvergencePoint {
  int N = 0;
  double error = 0.0;
};

/// ‖[F, G]/(iℏ) − Sym({f, g})‖_F / ‖Sym({f, g})‖_F per representation, with
/// the bracket taken for ½(x² + y² − μ)² + ½z². Throws DegreeTooHigh when
/// deg f + deg g > 4.
std::vector<ConvergencePoint> commutator_vs_bracket(const CommPolynomial3& f, const CommPolynomial3& g,
                                                    const std::vector<Representation>& reps);

/// Formats with 17 significant digits.
std::string format_double(double v);

}  // namespace ncsurf
