#include "ncsurf/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

#include "ncsurf/error.hpp"

namespace ncsurf {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> hermitian_eigenvalues(const Matrix& H) {
  if (H.rows() != H.cols()) throw Error(ErrorCode::NotHermitian, "matrix is not square");
  if ((H - H.adjoint()).norm() > 1e-12 * H.norm()) throw Error(ErrorCode::NotHermitian, "matrix is not hermitian");
  if (H.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double max_second_difference(const std::vector<double>& v) {
  double m = 0.0;
  for (std::size_t i = 2; i < v.size(); ++i) m = std::max(m, std::fabs(v[i] - 2 * v[i - 1] + v[i - 2]));
  return m;
}

}  // namespace

std::vector<BranchInterval> detect_branches(const std::vector<double>& spectrum,
                                            const std::vector<double>& critical_values, double threshold) {
  std::vector<double> sorted = spectrum;
  std::sort(sorted.begin(), sorted.end());
  std::vector<BranchInterval> out;
  for (std::size_t k = 1; k < critical_values.size(); ++k) {
    BranchInterval iv;
    iv.lo = critical_values[k - 1];
    iv.hi = critical_values[k];
    std::vector<double> inside, odd, even;
    for (double v : sorted) {
      if (v > iv.lo && v < iv.hi) inside.push_back(v);
    }
    iv.count = inside.size();
    if (inside.size() < 4) {
      out.push_back(iv);
      continue;
    }
    for (std::size_t i = 0; i < inside.size(); ++i) (i % 2 == 0 ? even : odd).push_back(inside[i]);
    const double m0 = max_second_difference(inside);
    const double m1 = std::max(max_second_difference(odd), max_second_difference(even));
    if (m1 == 0.0) {
      iv.ratio = m0 > 0 ? INFINITY : 1.0;
      iv.branches = m0 > 0 ? 2 : 1;
    } else {
      iv.ratio = m0 / m1;
      iv.branches = iv.ratio >= threshold ? 2 : 1;
    }
    out.push_back(iv);
  }
  return out;
}

int SpectrumReport::interval_of(std::size_t i) const {
  const double v = eigenvalues[i];
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (v > intervals[k].lo && v < intervals[k].hi) return static_cast<int>(k);
  }
  return -1;
}

std::vector<int> SpectrumReport::branch_pattern() const {
  std::vector<int> out;
  for (const auto& iv : intervals) out.push_back(iv.branches);
  return out;
}

SpectrumReport position_spectrum(const Representation& rep, double threshold) {
  SpectrumReport out;
  out.mu = rep.mu;
  out.c = rep.c;
  out.N = rep.dim();
  out.eigenvalues = hermitian_eigenvalues(rep.X());
  for (std::size_t i = 1; i < out.eigenvalues.size(); ++i) out.gaps.push_back(out.eigenvalues[i] - out.eigenvalues[i - 1]);
  if (rep.c > 0) {
    out.critical_values = critical_values_torus_sphere(rep.mu, rep.c);
    out.intervals = detect_branches(out.eigenvalues, out.critical_values, threshold);
  }
  return out;
}

Representation sweep_representation(double mu, double c, int N) {
  const double theta = std::numbers::pi / N;
  const Regime regime = classify_regime(mu, c, theta);
  if (regime == Regime::Invalid) throw Error(ErrorCode::DomainError, "mu < -sqrt(c): no representation");
  if (regime == Regime::Degenerate) throw Error(ErrorCode::DomainError, "c must be positive for a sweep");
  if (regime == Regime::Spherical) {
    StringSpec spec;
    spec.n = N;
    spec.mu = mu;
    spec.theta = solve_string_theta(N, mu, c);
    spec.c = c;
    return construct_string_rep(spec);
  }
  LoopSpec spec;
  spec.n = N;
  spec.k = 1;
  spec.beta = 0.0;
  return construct_loop_rep(spec, mu, c);
}

std::vector<SweepEntry> sweep_mu(const std::vector<double>& mu_values, double c, int N, int threads,
                                 double threshold) {
  std::vector<SweepEntry> out(mu_values.size());
  auto work = [&](std::size_t i) {
    out[i].mu = mu_values[i];
    try {
      out[i].report = position_spectrum(sweep_representation(mu_values[i], c, N), threshold);
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), mu_values.size());
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < mu_values.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < mu_values.size(); i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries) {
  os << "mu,i,lambda,gap,interval,branches\n";
  for (const auto& e : entries) {
    if (!e.report) {
      std::string msg = e.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      os << format_double(e.mu) << ",,,,,error:" << msg << "\n";
      continue;
    }
    const SpectrumReport& r = *e.report;
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      os << format_double(e.mu) << ',' << (i + 1) << ',' << format_double(r.eigenvalues[i]) << ',';
      if (i < r.gaps.size()) os << format_double(r.gaps[i]);
      os << ',';
      int iv = r.interval_of(i);
      if (iv >= 0) os << iv << ',' << r.intervals[static_cast<std::size_t>(iv)].branches;
      else os << ',';
      os << '\n';
    }
  }
}

Matrix symmetrized_substitution(const CommPolynomial3& p, const Matrix& X, const Matrix& Y, const Matrix& Z) {
  const Eigen::Index n = X.rows();
  Matrix out = Matrix::Zero(n, n);
  const Matrix* gens[3] = {&X, &Y, &Z};
  for (const auto& [e, coeff] : p.terms()) {
    std::vector<int> letters;
    for (int v = 0; v < 3; ++v) letters.insert(letters.end(), static_cast<std::size_t>(e[v]), v);
    // next_permutation from the sorted multiset visits each distinct ordering once.
    Matrix sum = Matrix::Zero(n, n);
    std::size_t count = 0;
    do {
      Matrix prod = Matrix::Identity(n, n);
      for (int v : letters) prod = prod * *gens[v];
      sum += prod;
      ++count;
    } while (std::next_permutation(letters.begin(), letters.end()));
    out += to_double(coeff) * sum / static_cast<double>(count);
  }
  return out;
}

std::vector<ConvergencePoint> commutator_vs_bracket(const CommPolynomial3& f, const CommPolynomial3& g,
                                                    const std::vector<Representation>& reps) {
  if (f.degree() + g.degree() > 4) throw Error(ErrorCode::DegreeTooHigh, "deg f + deg g must not exceed 4");
  std::vector<ConvergencePoint> out;
  for (const auto& rep : reps) {
    const CommPolynomial3 x = CommPolynomial3::x(), y = CommPolynomial3::y(), z = CommPolynomial3::z();
    const CommPolynomial3 base = x * x + y * y - CommPolynomial3(Rational(rep.mu));
    const CommPolynomial3 C = (base * base + z * z) * CommPolynomial3(Rational(1, 2));
    const CommPolynomial3 bracket = poisson_bracket(f, g, C);

    const Matrix X = rep.X(), Y = rep.Y(), Z = rep.Z();
    const Matrix F = symmetrized_substitution(f, X, Y, Z), G = symmetrized_substitution(g, X, Y, Z);
    const Matrix target = symmetrized_substitution(bracket, X, Y, Z);
    const Matrix lhs = (F * G - G * F) / (cplx(0.0, 1.0) * rep.hbar());
    double denom = target.norm();
    if (denom == 0.0) denom = 1.0;
    out.push_back({rep.dim(), (lhs - target).norm() / denom});
  }
  return out;
}

}  // namespace ncsurf
