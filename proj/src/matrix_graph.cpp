#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "ncsurf/error.hpp"
#include "ncsurf/representation.hpp"

namespace ncsurf {

namespace {

double resolve_tol(const Matrix& W, double zero_tol) {
  if (zero_tol >= 0) return zero_tol;
  return W.size() == 0 ? 0.0 : 1e-9 * W.cwiseAbs().maxCoeff();
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
      a = parent_[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

// Vertex sets of the weakly connected components, ordered by smallest vertex.
std::vector<std::vector<int>> weak_components(const MatrixGraph& g) {
  UnionFind uf(g.n);
  for (auto [i, j] : g.edges) uf.unite(i, j);
  std::vector<std::vector<int>> comps;
  std::vector<int> slot(static_cast<std::size_t>(g.n), -1);
  for (int v = 0; v < g.n; ++v) {
    int r = uf.find(v);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(v);
  }
  return comps;
}

ComponentKind component_kind(const MatrixGraph& g, const std::vector<int>& verts) {
  int sources = 0, sinks = 0;
  bool all_one = true;
  for (int v : verts) {
    if (g.has_edge(v, v)) return ComponentKind::Degenerate;
    std::size_t in = g.in[static_cast<std::size_t>(v)].size(), out = g.out[static_cast<std::size_t>(v)].size();
    if (in > 1 || out > 1) return ComponentKind::Other;
    if (in == 0) ++sources;
    if (out == 0) ++sinks;
    if (in != 1 || out != 1) all_one = false;
  }
  if (all_one) return ComponentKind::Loop;
  // Weakly connected with all degrees ≤ 1 and one source/sink: a directed path.
  if (sources == 1 && sinks == 1) return ComponentKind::String;
  return ComponentKind::Other;
}

RepKind rep_kind_of(ComponentKind k) {
  switch (k) {
    case ComponentKind::Loop: return RepKind::Loop;
    case ComponentKind::String: return RepKind::String;
    case ComponentKind::Degenerate: return RepKind::Degenerate;
    case ComponentKind::Other: return RepKind::General;
  }
  return RepKind::General;
}

Matrix submatrix(const Matrix& W, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = W(rows[a], cols[b]);
  }
  return out;
}

Matrix matrix_power(Matrix base, int n) {
  Matrix out = Matrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

}  // namespace

bool MatrixGraph::has_edge(int i, int j) const {
  const auto& o = out[static_cast<std::size_t>(i)];
  return std::find(o.begin(), o.end(), j) != o.end();
}

MatrixGraph matrix_graph(const Matrix& W, double zero_tol) {
  MatrixGraph g;
  g.n = static_cast<int>(W.rows());
  g.zero_tol = resolve_tol(W, zero_tol);
  g.out.assign(static_cast<std::size_t>(g.n), {});
  g.in.assign(static_cast<std::size_t>(g.n), {});
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (std::abs(W(i, j)) > g.zero_tol) {
        g.edges.emplace_back(i, j);
        g.out[static_cast<std::size_t>(i)].push_back(j);
        g.in[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
  return g;
}

std::string_view to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Loop: return "loop";
    case ComponentKind::String: return "string";
    case ComponentKind::Degenerate: return "degenerate";
    case ComponentKind::Other: return "other";
  }
  return "?";
}

std::vector<GraphComponent> graph_classify(const MatrixGraph& g, const Representation& rep) {
  if (g.n != rep.dim()) throw Error(ErrorCode::InconsistentGraph, "graph and representation sizes differ");
  const Matrix D = rep.D(), Dt = rep.D_tilde();
  // A vertex without incoming edges has column norm² ≤ N·tol²; one with an
  // edge has column norm² > tol².
  const double small = g.n * g.zero_tol * g.zero_tol * (1 + 1e-9) + 1e-300;
  const double large = g.zero_tol * g.zero_tol;
  std::vector<GraphComponent> out;
  for (auto& verts : weak_components(g)) {
    GraphComponent comp;
    comp.kind = component_kind(g, verts);
    for (int v : verts) {
      bool transmitter = g.in[static_cast<std::size_t>(v)].empty();
      bool receiver = g.out[static_cast<std::size_t>(v)].empty();
      double dt = Dt(v, v).real(), d = D(v, v).real();
      if (transmitter ? dt > small : dt <= large) {
        throw Error(ErrorCode::InconsistentGraph, "vertex " + std::to_string(v) + ": transmitter status disagrees with D~");
      }
      if (receiver ? d > small : d <= large) {
        throw Error(ErrorCode::InconsistentGraph, "vertex " + std::to_string(v) + ": receiver status disagrees with D");
      }
      if (transmitter) comp.transmitters.push_back(v);
      if (receiver) comp.receivers.push_back(v);
    }
    comp.vertices = std::move(verts);
    out.push_back(std::move(comp));
  }
  return out;
}

Matrix permute(const Matrix& W, const std::vector<int>& perm) { return submatrix(W, perm, perm); }

Decomposition decompose(const Representation& rep, double zero_tol) {
  const MatrixGraph g = matrix_graph(rep.W, zero_tol);
  Decomposition out;
  for (const auto& verts : weak_components(g)) {
    Representation part = rep;
    part.W = submatrix(rep.W, verts, verts);
    part.kind = rep_kind_of(component_kind(g, verts));
    out.parts.push_back(std::move(part));
    out.permutation.insert(out.permutation.end(), verts.begin(), verts.end());
  }
  return out;
}

Representation direct_sum(const std::vector<Representation>& parts) {
  Representation out;
  if (parts.empty()) return out;
  out = parts.front();
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.W.rows();
  out.W = Matrix::Zero(total, total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.W.block(at, at, p.W.rows(), p.W.cols()) = p.W;
    at += p.W.rows();
  }
  if (parts.size() > 1) out.kind = RepKind::General;
  return out;
}

RepIndex rep_index(const Representation& rep, double zero_tol) {
  const MatrixGraph g = matrix_graph(rep.W, zero_tol);
  const auto comps = weak_components(g);
  if (g.n < 2 || comps.size() != 1 || component_kind(g, comps.front()) != ComponentKind::Loop) {
    throw Error(ErrorCode::NotSingleLoop, "matrix graph is not a single directed cycle");
  }
  RepIndex out{cplx(1.0, 0.0), 0.0};
  int v = 0;
  for (int step = 0; step < g.n; ++step) {
    int next = g.out[static_cast<std::size_t>(v)].front();
    out.z *= rep.W(v, next);
    v = next;
  }
  const Matrix residual = matrix_power(rep.W, g.n) - out.z * Matrix::Identity(g.n, g.n);
  out.power_residual = residual.norm() / std::max(1.0, std::abs(out.z));
  return out;
}

std::vector<Representation> canonicalize_loop(const Representation& rep, double tol) {
  const int N = rep.dim();
  if (N == 0) throw Error(ErrorCode::NotBlockCyclic, "empty representation");
  const Matrix D = rep.D(), Dt = rep.D_tilde();
  const double scale = std::max(1.0, D.diagonal().real().cwiseAbs().maxCoeff());

  // Vertices sharing the same diagonal data (d_i, d̃_i) form one block.
  std::vector<int> group_of(static_cast<std::size_t>(N), -1);
  std::vector<std::vector<int>> groups;
  for (int v = 0; v < N; ++v) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      int r = groups[gi].front();
      if (std::abs(D(v, v) - D(r, r)) <= tol * scale && std::abs(Dt(v, v) - Dt(r, r)) <= tol * scale) {
        group_of[static_cast<std::size_t>(v)] = static_cast<int>(gi);
        groups[gi].push_back(v);
        break;
      }
    }
    if (group_of[static_cast<std::size_t>(v)] < 0) {
      group_of[static_cast<std::size_t>(v)] = static_cast<int>(groups.size());
      groups.push_back({v});
    }
  }
  const int n = static_cast<int>(groups.size());
  const int m = static_cast<int>(groups.front().size());
  for (const auto& grp : groups) {
    if (static_cast<int>(grp.size()) != m) throw Error(ErrorCode::NotBlockCyclic, "blocks have different sizes");
  }

  // Every edge out of a block must land in one successor block.
  const MatrixGraph g = matrix_graph(rep.W);
  std::vector<int> succ(static_cast<std::size_t>(n), -1);
  for (auto [i, j] : g.edges) {
    int a = group_of[static_cast<std::size_t>(i)], b = group_of[static_cast<std::size_t>(j)];
    int& s = succ[static_cast<std::size_t>(a)];
    if (s >= 0 && s != b) throw Error(ErrorCode::NotBlockCyclic, "a block has edges into two different blocks");
    s = b;
  }
  std::vector<int> order = {0};
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  seen[0] = true;
  for (int step = 1; step <= n; ++step) {
    int nxt = succ[static_cast<std::size_t>(order.back())];
    if (nxt < 0) throw Error(ErrorCode::NotBlockCyclic, "a block has no outgoing edges");
    if (step == n) {
      if (nxt != 0) throw Error(ErrorCode::NotBlockCyclic, "blocks do not close into a single cycle");
      break;
    }
    if (seen[static_cast<std::size_t>(nxt)]) throw Error(ErrorCode::NotBlockCyclic, "blocks do not form a single cycle");
    seen[static_cast<std::size_t>(nxt)] = true;
    order.push_back(nxt);
  }

  std::vector<double> mags(static_cast<std::size_t>(n));
  std::vector<Matrix> U(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    const auto& rows = groups[static_cast<std::size_t>(order[static_cast<std::size_t>(l)])];
    const auto& cols = groups[static_cast<std::size_t>(order[static_cast<std::size_t>((l + 1) % n)])];
    Matrix B = submatrix(rep.W, rows, cols);
    Matrix BB = B * B.adjoint();
    double e = BB.trace().real() / m;
    if (!(e > 0) || (BB - e * Matrix::Identity(m, m)).norm() > tol * std::max(1.0, e)) {
      throw Error(ErrorCode::NotBlockCyclic, "block " + std::to_string(l) + " is not a multiple of a unitary");
    }
    mags[static_cast<std::size_t>(l)] = std::sqrt(e);
    U[static_cast<std::size_t>(l)] = B / std::sqrt(e);
  }

  Matrix H = Matrix::Identity(m, m);
  for (const auto& u : U) H = H * u;
  // H is unitary, hence normal: its Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<Matrix> schur(H);
  std::vector<double> gammas;
  for (int j = 0; j < m; ++j) gammas.push_back(std::arg(schur.matrixT()(j, j)));
  std::sort(gammas.begin(), gammas.end());

  std::vector<Representation> out;
  for (double gamma : gammas) {
    Representation single = rep;
    single.kind = RepKind::Loop;
    single.W = Matrix::Zero(n, n);
    for (int l = 0; l < n; ++l) {
      cplx v = mags[static_cast<std::size_t>(l)];
      if (l == n - 1) v *= std::polar(1.0, gamma);
      single.W(l, (l + 1) % n) = v;
    }
    out.push_back(std::move(single));
  }
  return out;
}

bool reps_equivalent(const Representation& a, const Representation& b, double tol) {
  auto kind_of = [](const Representation& r) {
    const MatrixGraph g = matrix_graph(r.W);
    const auto comps = weak_components(g);
    if (comps.size() != 1) return ComponentKind::Other;
    return component_kind(g, comps.front());
  };
  ComponentKind ka = kind_of(a), kb = kind_of(b);
  bool ok_kind = (ka == ComponentKind::Loop || ka == ComponentKind::String);
  if (!ok_kind || ka != kb) throw Error(ErrorCode::MixedKinds, "equivalence needs two single loops or two single strings");
  if (a.dim() != b.dim()) return false;
  double ca = verify_relations(a).c_estimate, cb = verify_relations(b).c_estimate;
  if (std::fabs(ca - cb) > tol * std::max(1.0, std::fabs(ca))) return false;
  if (ka == ComponentKind::String) return true;
  cplx za = rep_index(a).z, zb = rep_index(b).z;
  return std::abs(za - zb) <= tol * std::max(1.0, std::abs(za));
}

}  // namespace ncsurf
