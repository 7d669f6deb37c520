#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = ncsurf::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "ncsurf_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("confluence") {
  const Run r = run({"confluence", "--mu", "1", "--hbar2", "1/3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("resolvable: true, witness: 0\n", 0) == 0);
  const Run j = run({"confluence", "--mu", "3/2", "--hbar2", "0.25", "--json"});
  CHECK(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["resolvable"] == true);
  CHECK(doc["mu"] == "3/2");
  CHECK(doc["hbar2"] == "1/4");
  CHECK(run({"confluence", "--hbar2", "2"}).code == 2);
  CHECK(run({"confluence", "--hbar2", "1/3", "--overlap", "WXV"}).code == 2);
  CHECK(run({"confluence", "--hbar2", "1/3", "--overlap", "WWV"}).code == 2);
  CHECK(run({"confluence"}).code == 2);
}

TEST_CASE("genus") {
  const Run r = run({"genus", "--g", "3", "--mu", "1", "--alpha", "1/1000"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["chi"] == -4);
  CHECK(doc["genus"] == 3);
  CHECK(doc["alpha"] == "1/1000");
  const Run bad = run({"genus", "--g", "1", "--mu", "1", "--alpha", "2"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("AlphaOutOfRange") != std::string::npos);
}

TEST_CASE("rep construct, verify and classify") {
  const fs::path file = scratch("loop.json");
  const Run c = run({"rep", "construct", "--kind", "loop", "--n", "30", "--k", "1", "--mu", "1.3", "--c", "1", "--out", file.string()});
  CHECK(c.code == 0);
  CHECK(c.out.find("verification: pass") != std::string::npos);
  CHECK(fs::exists(file));

  const Run v = run({"rep", "verify", "--in", file.string(), "--json"});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["passes"] == true);
  CHECK(json::parse(v.out)["components"][0]["kind"] == "loop");

  const Run cl = run({"rep", "classify", "--mu", "0.9", "--c", "1", "--theta", "0.1"});
  CHECK(cl.code == 0);
  CHECK(cl.out == "regime: spherical\n");

  // Tampered file: verification fails with exit 1.
  json doc = json::parse(slurp(file));
  doc["W"][0][1][0] = doc["W"][0][1][0].get<double>() + 1e-3;
  const fs::path tampered = scratch("tampered.json");
  std::ofstream(tampered) << doc.dump();
  CHECK(run({"rep", "verify", "--in", tampered.string()}).code == 1);

  const Run s = run({"rep", "construct", "--kind", "string", "--n", "30", "--mu", "0.9", "--c", "1", "--json"});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["regime"] == "spherical");
  CHECK(run({"rep", "construct", "--kind", "degenerate", "--n", "3", "--mu", "4"}).code == 0);
}

TEST_CASE("usage errors exit 2 and name the flag") {
  const Run n4 = run({"rep", "construct", "--kind", "loop", "--n", "4", "--k", "1", "--mu", "1.3", "--c", "1"});
  CHECK(n4.code == 2);
  CHECK_FALSE(n4.err.empty());
  const Run badmu = run({"rep", "construct", "--kind", "loop", "--n", "30", "--mu", "abc", "--c", "1"});
  CHECK(badmu.code == 2);
  CHECK(badmu.err.find("--mu") != std::string::npos);
  CHECK(run({"rep", "construct", "--kind", "spiral", "--n", "5", "--mu", "1"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"rep", "verify", "--in", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep over three mu values writes 90 rows") {
  const fs::path csv = scratch("eig.csv");
  const Run r = run({"sweep", "--mu", "0.9,1.1,1.3", "--n", "30", "--c", "1", "--out", csv.string(), "--threads", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("mu=0.90000000000000002: branches (1)") != std::string::npos);
  CHECK(r.out.find("mu=1.1000000000000001: branches (1,2,1)") != std::string::npos);
  const std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 91);

  // Determinism: a second run is byte-identical.
  const fs::path again = scratch("eig2.csv");
  run({"sweep", "--mu", "0.9,1.1,1.3", "--n", "30", "--c", "1", "--out", again.string()});
  CHECK(slurp(again) == text);

  const Run j = run({"sweep", "--mu", "1.3", "--n", "30", "--c", "1", "--json"});
  CHECK(json::parse(j.out)[0]["branches"] == json::array({1, 2, 1}));
  CHECK(run({"sweep", "--mu", "-3", "--n", "30", "--c", "1"}).code == 1);
}

TEST_CASE("spectrum") {
  const fs::path svg = scratch("spec.svg");
  const Run r = run({"spectrum", "--kind", "loop", "--n", "30", "--mu", "1.3", "--c", "1", "--svg", svg.string(), "--json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)[0]["eigenvalues"].size() == 30);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("bt") {
  const Run r = run({"bt", "--n", "30", "--mu", "1.3", "--nu", "auto", "--json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["residuals"].size() == 4);
  CHECK(doc["loop_comparison"]["max_entry_diff"].get<double>() <= 1e-10);
  CHECK(std::abs(doc["loop_comparison"]["c"].get<double>() - 1.0) < 1e-12);
  CHECK(run({"bt", "--n", "30", "--mu", "1.3", "--nu", "1"}).code == 0);
  CHECK(run({"bt", "--n", "3", "--mu", "1.3"}).code == 2);
  CHECK(run({"bt", "--n", "30", "--mu", "0.5", "--nu", "1"}).code == 2);
}

TEST_CASE("converge") {
  const Run r = run({"converge", "--f", "x^2", "--g", "y^2", "--n", "10,20,40"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("N,error\n", 0) == 0);
  CHECK(run({"converge", "--f", "x^3", "--g", "y^2"}).code == 2);
  CHECK(run({"converge", "--f", "x^", "--g", "y"}).code == 2);
  const Run j = run({"converge", "--f", "x", "--g", "y", "--n", "10,20", "--json"});
  for (const auto& p : json::parse(j.out)["points"]) CHECK(p["error"].get<double>() <= 1e-10);
}
