#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncsurf/berezin_toeplitz.hpp"
#include "ncsurf/error.hpp"
#include "ncsurf/free_algebra.hpp"
#include "ncsurf/rational.hpp"
#include "ncsurf/representation.hpp"
#include "ncsurf/spectral.hpp"
#include "ncsurf/surface_geometry.hpp"

namespace ncsurf::cli {

namespace {

using json = nlohmann::json;

constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double number(const std::string& flag, const std::string& text) {
  try {
    return to_double(parse_rational(text));
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Rational exact(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> number_list(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text)) out.push_back(number(flag, s));
  return out;
}

json matrix_to_json(const Matrix& W) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < W.cols(); ++j) row.push_back({W(i, j).real(), W(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix W(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n) throw UsageError("W must be square");
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& e = row.at(static_cast<std::size_t>(j));
      W(i, j) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return W;
}

json report_to_json(const RelationReport& r, double tol) {
  return {{"residual_wwd", r.residual_wwd},         {"residual_casimir", r.residual_casimir},
          {"c_estimate", r.c_estimate},             {"intertwine_residual", r.intertwine_residual},
          {"hermitian_residual", r.hermitian_residual}, {"residual_yz", r.residual_yz},
          {"residual_zx", r.residual_zx},           {"tolerance", tol},
          {"passes", r.passes(tol)}};
}

void print_report(std::ostream& out, const RelationReport& r, double tol) {
  out << "residual_wwd: " << format_double(r.residual_wwd) << "\n"
      << "residual_casimir: " << format_double(r.residual_casimir) << "\n"
      << "c_estimate: " << format_double(r.c_estimate) << "\n"
      << "intertwine_residual: " << format_double(r.intertwine_residual) << "\n"
      << "hermitian_residual: " << format_double(r.hermitian_residual) << "\n"
      << "residual_yz: " << format_double(r.residual_yz) << "\n"
      << "residual_zx: " << format_double(r.residual_zx) << "\n"
      << "verification: " << (r.passes(tol) ? "pass" : "FAIL") << "\n";
}

json components_to_json(const std::vector<GraphComponent>& comps) {
  json arr = json::array();
  for (const auto& c : comps) {
    arr.push_back({{"kind", std::string(to_string(c.kind))},
                   {"size", c.size()},
                   {"vertices", c.vertices},
                   {"transmitters", c.transmitters},
                   {"receivers", c.receivers}});
  }
  return arr;
}

std::string pattern_str(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i] == 0 ? "?" : std::to_string(p[i]);
  }
  return s + ")";
}

json intervals_to_json(const SpectrumReport& r) {
  json arr = json::array();
  for (const auto& iv : r.intervals) {
    arr.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"count", iv.count}, {"branches", iv.branches},
                   {"ratio", std::isfinite(iv.ratio) ? json(iv.ratio) : json("inf")}});
  }
  return arr;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << content;
}

// Option storage for every subcommand.
struct Options {
  bool json_out = false;
  // genus
  int g = 1;
  std::string mu, alpha, hbar2, overlap = "WWVV", c, beta = "0", phases, theta, nu = "auto";
  // rep / spectrum / sweep
  std::string kind, in_path, out_path, svg_path, mu_list, n_list = "10,20,40,80", f_text, g_text;
  int n = 0, k = 1, threads = 1;
  double tol = 1e-10, threshold = 2.0;
};

int cmd_genus(const Options& o, std::ostream& out) {
  const Rational mu = exact("--mu", o.mu), alpha = exact("--alpha", o.alpha);
  const SurfaceSpec spec = build_genus_polynomial(o.g, mu, alpha);
  const CriticalData cd = euler_characteristic(spec);
  json j = {{"g", o.g},
            {"mu", to_string(mu)},
            {"alpha", to_string(alpha)},
            {"P", spec.P.str()},
            {"chi", cd.chi},
            {"genus", cd.genus},
            {"n_plus", cd.n_plus},
            {"n_minus", cd.n_minus},
            {"critical_x", cd.critical_x_values}};
  out << j.dump(2) << "\n";
  return cd.genus == o.g ? 0 : kVerifyFailed;
}

int cmd_confluence(const Options& o, std::ostream& out) {
  const AlgebraParams params(exact("--mu", o.mu), exact("--hbar2", o.hbar2));
  const ReductionSystem system = build_torus_system(params);
  for (char ch : o.overlap) {
    if (ch != 'W' && ch != 'V') throw UsageError("--overlap: letters must be W or V");
  }
  const OverlapResult res = check_overlap_resolvable(system, Word(o.overlap));
  if (o.json_out) {
    json rules = json::array();
    for (const auto& r : system.rules()) rules.push_back({{"pattern", r.pattern.str()}, {"replacement", r.replacement.str()}});
    json forms = json::array();
    for (const auto& p : res.normal_forms) forms.push_back(p.str());
    out << json{{"mu", to_string(params.mu)},     {"hbar2", to_string(params.hbar_sq)},
                {"overlap", o.overlap},           {"rules", rules},
                {"resolvable", res.resolvable},   {"witness", res.witness.str()},
                {"normal_forms", forms}}
               .dump(2)
        << "\n";
  } else {
    out << "resolvable: " << (res.resolvable ? "true" : "false") << ", witness: " << res.witness.str() << "\n";
    for (std::size_t i = 0; i < res.normal_forms.size(); ++i) out << "normal form " << i + 1 << ": " << res.normal_forms[i].str() << "\n";
  }
  return res.resolvable ? 0 : kVerifyFailed;
}

Representation build_rep(const Options& o) {
  if (o.n < 1) throw UsageError("--n must be positive");
  const double mu = number("--mu", o.mu);
  if (o.kind == "loop") {
    if (o.c.empty()) throw UsageError("--c is required for --kind loop");
    LoopSpec spec;
    spec.n = o.n;
    spec.k = o.k;
    spec.beta = number("--beta", o.beta);
    if (!o.phases.empty()) spec.phases = number_list("--phases", o.phases);
    return construct_loop_rep(spec, mu, number("--c", o.c));
  }
  if (o.kind == "string") {
    StringSpec spec;
    spec.n = o.n;
    spec.mu = mu;
    if (!o.c.empty()) spec.c = number("--c", o.c);
    if (!o.theta.empty()) {
      spec.theta = number("--theta", o.theta);
    } else {
      if (!spec.c) throw UsageError("--kind string needs --theta or --c");
      spec.theta = solve_string_theta(o.n, mu, *spec.c);
    }
    if (!o.phases.empty()) spec.phases = number_list("--phases", o.phases);
    return construct_string_rep(spec);
  }
  if (o.kind == "degenerate") {
    const double theta = o.theta.empty() ? std::numbers::pi / 8 : number("--theta", o.theta);
    return construct_degenerate_rep(mu, Matrix::Identity(o.n, o.n), theta);
  }
  throw UsageError("--kind must be loop, string or degenerate");
}

json rep_to_json(const Representation& rep, const RelationReport& report, double tol) {
  return {{"kind", std::string(to_string(rep.kind))},
          {"n", rep.dim()},
          {"mu", rep.mu},
          {"theta", rep.theta},
          {"hbar", rep.hbar()},
          {"c", rep.c},
          {"regime", std::string(to_string(rep.regime))},
          {"W", matrix_to_json(rep.W)},
          {"verification", report_to_json(report, tol)}};
}

bool casimir_matches(const Representation& rep, const RelationReport& r, double tol) {
  return std::fabs(r.c_estimate - rep.c) <= tol * std::max(1.0, rep.c);
}

int cmd_rep_construct(const Options& o, std::ostream& out) {
  const Representation rep = build_rep(o);
  const RelationReport report = verify_relations(rep);
  const json j = rep_to_json(rep, report, o.tol);
  if (!o.out_path.empty()) write_file(o.out_path, j.dump(2) + "\n");
  if (o.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << "kind: " << to_string(rep.kind) << ", n: " << rep.dim() << ", regime: " << to_string(rep.regime)
        << ", c: " << format_double(rep.c) << "\n";
    print_report(out, report, o.tol);
  }
  return report.passes(o.tol) && casimir_matches(rep, report, o.tol) ? 0 : kVerifyFailed;
}

Representation load_rep(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("--in: cannot open '" + path + "'");
  json j;
  try {
    f >> j;
    Representation rep;
    rep.W = matrix_from_json(j.at("W"));
    rep.mu = j.at("mu").get<double>();
    rep.theta = j.at("theta").get<double>();
    rep.c = j.value("c", 0.0);
    rep.regime = classify_regime(rep.mu, rep.c, rep.theta);
    return rep;
  } catch (const json::exception& e) {
    throw UsageError("--in: malformed representation file: " + std::string(e.what()));
  }
}

int cmd_rep_verify(const Options& o, std::ostream& out) {
  const Representation rep = load_rep(o.in_path);
  const RelationReport report = verify_relations(rep);
  const auto comps = graph_classify(matrix_graph(rep.W), rep);
  const bool ok = report.passes(o.tol) && casimir_matches(rep, report, o.tol);
  if (o.json_out) {
    out << json{{"verification", report_to_json(report, o.tol)}, {"components", components_to_json(comps)}, {"passes", ok}}.dump(2)
        << "\n";
  } else {
    print_report(out, report, o.tol);
    for (const auto& c : comps) out << "component: " << to_string(c.kind) << "(" << c.size() << ")\n";
  }
  return ok ? 0 : kVerifyFailed;
}

int cmd_rep_classify(const Options& o, std::ostream& out) {
  json j;
  if (!o.mu.empty()) {
    if (o.c.empty() || o.theta.empty()) throw UsageError("classify needs --mu, --c and --theta together");
    j["regime"] = std::string(to_string(classify_regime(number("--mu", o.mu), number("--c", o.c), number("--theta", o.theta))));
  }
  if (!o.in_path.empty()) {
    const Representation rep = load_rep(o.in_path);
    j["components"] = components_to_json(graph_classify(matrix_graph(rep.W), rep));
  }
  if (j.is_null()) throw UsageError("classify needs --mu/--c/--theta or --in");
  if (o.json_out) {
    out << j.dump(2) << "\n";
  } else {
    if (j.contains("regime")) out << "regime: " << j["regime"].get<std::string>() << "\n";
    if (j.contains("components")) {
      for (const auto& c : j["components"]) out << "component: " << c["kind"].get<std::string>() << "(" << c["size"].get<int>() << ")\n";
    }
  }
  return 0;
}

void emit_spectra(const Options& o, const std::vector<SweepEntry>& entries, std::ostream& out, bool csv_to_stdout) {
  std::ostringstream csv;
  write_sweep_csv(csv, entries);
  if (!o.out_path.empty()) write_file(o.out_path, csv.str());
  if (!o.svg_path.empty()) {
    std::ostringstream svg;
    write_sweep_svg(svg, entries);
    write_file(o.svg_path, svg.str());
  }
  if (o.json_out) {
    json arr = json::array();
    for (const auto& e : entries) {
      json item = {{"mu", e.mu}};
      if (e.report) {
        item["N"] = e.report->N;
        item["eigenvalues"] = e.report->eigenvalues;
        item["critical_values"] = e.report->critical_values;
        item["intervals"] = intervals_to_json(*e.report);
        item["branches"] = e.report->branch_pattern();
      } else {
        item["error"] = e.error;
      }
      arr.push_back(item);
    }
    out << arr.dump(2) << "\n";
  } else if (csv_to_stdout && o.out_path.empty()) {
    out << csv.str();
  } else {
    for (const auto& e : entries) {
      out << "mu=" << format_double(e.mu) << ": ";
      if (e.report) out << "branches " << pattern_str(e.report->branch_pattern()) << ", " << e.report->N << " eigenvalues\n";
      else out << e.error << "\n";
    }
  }
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const Representation rep = build_rep(o);
  SweepEntry entry;
  entry.mu = rep.mu;
  entry.report = position_spectrum(rep, o.threshold);
  emit_spectra(o, {entry}, out, false);
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.n < 1) throw UsageError("--n must be positive");
  const auto entries = sweep_mu(number_list("--mu", o.mu_list), number("--c", o.c), o.n, o.threads, o.threshold);
  emit_spectra(o, entries, out, true);
  bool any_failed = false;
  for (const auto& e : entries) any_failed = any_failed || !e.report;
  return any_failed ? kVerifyFailed : 0;
}

int cmd_bt(const Options& o, std::ostream& out) {
  BTSpec spec;
  spec.N = o.n;
  spec.mu = number("--mu", o.mu);
  const bool automatic = o.nu == "auto";
  spec.nu = automatic ? 1.0 / std::cos(std::numbers::pi / std::max(o.n, 1)) : number("--nu", o.nu);
  const BTMatrices m = bt_matrices(spec);
  const BTResiduals res = verify_bt_relations(m.X, m.Y, m.Z, spec);
  const double tol = 1e-12 * spec.N;
  bool ok = res.max() <= tol;
  json cmp;
  try {
    const LoopComparison lc = compare_with_loop_rep(spec);
    cmp = {{"max_entry_diff", lc.max_entry_diff}, {"c", lc.c},       {"equivalent", lc.equivalent},
           {"rotation", lc.rotation},             {"surface_gap", lc.surface_gap}};
    ok = ok && lc.equivalent;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RegimeMismatch) throw;
    cmp = {{"error", e.what()}};
  }
  const json j = {{"N", spec.N}, {"mu", spec.mu}, {"nu", spec.nu}, {"residuals", res.residuals}, {"tolerance", tol}, {"loop_comparison", cmp}};
  if (o.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << "N: " << spec.N << ", mu: " << format_double(spec.mu) << ", nu: " << format_double(spec.nu) << "\n";
    for (std::size_t i = 0; i < res.residuals.size(); ++i) out << "relation " << i + 1 << " residual: " << format_double(res.residuals[i]) << "\n";
    if (cmp.contains("error")) {
      out << "loop comparison: " << cmp["error"].get<std::string>() << "\n";
    } else {
      out << "loop comparison: max_entry_diff " << format_double(cmp["max_entry_diff"].get<double>()) << ", c "
          << format_double(cmp["c"].get<double>()) << ", equivalent " << (cmp["equivalent"].get<bool>() ? "true" : "false") << "\n";
    }
  }
  return ok ? 0 : kVerifyFailed;
}

int cmd_converge(const Options& o, std::ostream& out) {
  CommPolynomial3 f, g;
  try {
    f = parse_comm_polynomial(o.f_text);
    g = parse_comm_polynomial(o.g_text);
  } catch (const Error& e) {
    throw UsageError(std::string("--f/--g: ") + e.what());
  }
  const double mu = number("--mu", o.mu.empty() ? "1.3" : o.mu), c = number("--c", o.c.empty() ? "1" : o.c);
  std::vector<Representation> reps;
  for (const auto& s : split(o.n_list)) reps.push_back(sweep_representation(mu, c, static_cast<int>(number("--n", s))));
  const auto points = commutator_vs_bracket(f, g, reps);
  if (o.json_out) {
    json arr = json::array();
    for (const auto& p : points) arr.push_back({{"N", p.N}, {"error", p.error}});
    out << json{{"f", f.str()}, {"g", g.str()}, {"mu", mu}, {"c", c}, {"points", arr}}.dump(2) << "\n";
  } else {
    out << "N,error\n";
    for (const auto& p : points) out << p.N << "," << format_double(p.error) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Noncommutative surface algebras: rewriting, representations, spectra", "ncsurf"};
  app.require_subcommand(1);

  auto* genus = app.add_subcommand("genus", "Build the genus-g constraint polynomial and count critical points");
  genus->add_option("--g", o.g, "genus (>= 1)")->required();
  genus->add_option("--mu", o.mu, "level constant, exact (p/q)")->required();
  genus->add_option("--alpha", o.alpha, "scale of G, exact, in (0, 2 mu / M)")->required();
  genus->add_flag("--json", o.json_out, "accepted for uniformity; output is always JSON");

  auto* confluence = app.add_subcommand("confluence", "Check an overlap ambiguity of the torus reduction system");
  confluence->add_option("--mu", o.mu, "mu, exact")->default_val("0");
  confluence->add_option("--hbar2", o.hbar2, "hbar^2, exact, in (0, 1)")->required();
  confluence->add_option("--overlap", o.overlap, "overlap word")->capture_default_str();
  confluence->add_flag("--json", o.json_out);

  auto* rep = app.add_subcommand("rep", "Construct, verify or classify representations");
  rep->require_subcommand(1);
  auto* construct = rep->add_subcommand("construct", "Build a loop, string or degenerate representation");
  construct->add_option("--kind", o.kind, "loop | string | degenerate")->required();
  construct->add_option("--n", o.n, "dimension")->required();
  construct->add_option("--k", o.k, "loop winding: theta = pi k / n")->capture_default_str();
  construct->add_option("--mu", o.mu, "mu")->required();
  construct->add_option("--c", o.c, "Casimir value / 4");
  construct->add_option("--beta", o.beta, "loop phase shift")->capture_default_str();
  construct->add_option("--theta", o.theta, "string/degenerate theta (string: solved from --c if absent)");
  construct->add_option("--phases", o.phases, "comma-separated entry phases");
  construct->add_option("--tol", o.tol, "verification tolerance")->capture_default_str();
  construct->add_option("--out", o.out_path, "write the representation JSON here");
  construct->add_flag("--json", o.json_out);
  auto* verify = rep->add_subcommand("verify", "Verify the relations for a representation file");
  verify->add_option("--in", o.in_path, "representation JSON")->required();
  verify->add_option("--tol", o.tol, "verification tolerance")->capture_default_str();
  verify->add_flag("--json", o.json_out);
  auto* classify = rep->add_subcommand("classify", "Regime of (mu, c, theta) and/or graph components of a file");
  classify->add_option("--mu", o.mu);
  classify->add_option("--c", o.c);
  classify->add_option("--theta", o.theta);
  classify->add_option("--in", o.in_path, "representation JSON");
  classify->add_flag("--json", o.json_out);

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of X with branch detection");
  spectrum->add_option("--kind", o.kind, "loop | string")->required();
  spectrum->add_option("--n", o.n)->required();
  spectrum->add_option("--k", o.k)->capture_default_str();
  spectrum->add_option("--mu", o.mu)->required();
  spectrum->add_option("--c", o.c)->required();
  spectrum->add_option("--beta", o.beta)->capture_default_str();
  spectrum->add_option("--theta", o.theta);
  spectrum->add_option("--threshold", o.threshold, "branch ratio threshold")->capture_default_str();
  spectrum->add_option("--out", o.out_path, "CSV output");
  spectrum->add_option("--svg", o.svg_path, "SVG output");
  spectrum->add_flag("--json", o.json_out);

  auto* sweep = app.add_subcommand("sweep", "Spectra and branch patterns over a list of mu values");
  sweep->add_option("--mu", o.mu_list, "comma-separated mu values")->required();
  sweep->add_option("--n", o.n)->required();
  sweep->add_option("--c", o.c)->required();
  sweep->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  sweep->add_option("--threshold", o.threshold, "branch ratio threshold")->capture_default_str();
  sweep->add_option("--out", o.out_path, "CSV output (stdout if absent)");
  sweep->add_option("--svg", o.svg_path, "SVG output");
  sweep->add_flag("--json", o.json_out);

  auto* bt = app.add_subcommand("bt", "Clock-and-shift torus matrices and the loop comparison");
  bt->add_option("--n", o.n)->required();
  bt->add_option("--mu", o.mu)->required();
  bt->add_option("--nu", o.nu, "nu, or auto for 1/cos(pi/N)")->capture_default_str();
  bt->add_flag("--json", o.json_out);

  auto* converge = app.add_subcommand("converge", "Commutator vs Poisson bracket error over N");
  converge->add_option("--f", o.f_text, "polynomial in x, y, z")->required();
  converge->add_option("--g", o.g_text, "polynomial in x, y, z")->required();
  converge->add_option("--n", o.n_list, "comma-separated dimensions")->capture_default_str();
  converge->add_option("--mu", o.mu, "mu (default 1.3)");
  converge->add_option("--c", o.c, "c (default 1)");
  converge->add_flag("--json", o.json_out);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("ncsurf");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kUsage;
  }

  try {
    if (genus->parsed()) return cmd_genus(o, out);
    if (confluence->parsed()) return cmd_confluence(o, out);
    if (construct->parsed()) return cmd_rep_construct(o, out);
    if (verify->parsed()) return cmd_rep_verify(o, out);
    if (classify->parsed()) return cmd_rep_classify(o, out);
    if (spectrum->parsed()) return cmd_spectrum(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (bt->parsed()) return cmd_bt(o, out);
    if (converge->parsed()) return cmd_converge(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace ncsurf::cli
