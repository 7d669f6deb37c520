#include "ncsurf/free_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "ncsurf/error.hpp"

namespace ncsurf {

namespace {

int letter_rank(char ch) {
  switch (ch) {
    case 'V': return 0;
    case 'W': return 1;
    case 'X': return 0;
    case 'Y': return 1;
    case 'Z': return 2;
    default: return static_cast<int>(ch);
  }
}

}  // namespace

Word::Word(std::string letters) : letters_(std::move(letters)) {}

std::size_t misordering_index(const Word& w) {
  const std::string& s = w.letters();
  std::size_t count = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (std::size_t kp = k + 1; kp < s.size(); ++kp) {
      if (letter_rank(s[k]) > letter_rank(s[kp])) ++count;
    }
  }
  return count;
}

WordOrder word_compare(const Word& p, const Word& q) {
  if (p == q) return WordOrder::Equal;
  if (p.degree() != q.degree()) return p.degree() < q.degree() ? WordOrder::Less : WordOrder::Greater;
  std::string sp = p.letters(), sq = q.letters();
  std::sort(sp.begin(), sp.end());
  std::sort(sq.begin(), sq.end());
  if (sp != sq) return WordOrder::Incomparable;
  std::size_t ip = misordering_index(p), iq = misordering_index(q);
  if (ip == iq) return WordOrder::Incomparable;
  return ip < iq ? WordOrder::Less : WordOrder::Greater;
}

// ---------------------------------------------------------------------------
// NCPolynomial

NCPolynomial::NCPolynomial(const Word& w, const Coeff& c) { add_term(w, c); }

std::size_t NCPolynomial::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

Coeff NCPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Coeff() : it->second;
}

void NCPolynomial::add_term(const Word& w, const Coeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPolynomial NCPolynomial::operator-() const {
  NCPolynomial out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Coeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  Terms scaled;
  for (const auto& [w, coeff] : terms_) {
    Coeff product = coeff * c;
    if (!product.is_zero()) scaled.emplace(w, product);
  }
  terms_ = std::move(scaled);
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) out.add_term(wa * wb, ca * cb);
  }
  return out;
}

std::string NCPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")";
    if (!w.empty()) out += "*" + w.letters();
  }
  return out;
}

NCPolynomial commutator(const NCPolynomial& a, const NCPolynomial& b) { return a * b - b * a; }

NCPolynomial power(const NCPolynomial& a, unsigned n) {
  NCPolynomial out = NCPolynomial::constant(1);
  for (unsigned k = 0; k < n; ++k) out = out * a;
  return out;
}

NCPolynomial substitute(const NCPolynomial& p, const std::map<char, NCPolynomial>& images) {
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    NCPolynomial term = NCPolynomial::constant(c);
    for (char ch : w.letters()) {
      auto it = images.find(ch);
      term = term * (it == images.end() ? NCPolynomial::letter(ch) : it->second);
    }
    out += term;
  }
  return out;
}

std::complex<double> evaluate_commutative(const NCPolynomial& p,
                                          const std::map<char, std::complex<double>>& values,
                                          double h_value) {
  std::complex<double> sum = 0.0;
  for (const auto& [w, c] : p.terms()) {
    std::complex<double> term = c.evaluate(h_value);
    for (char ch : w.letters()) {
      auto it = values.find(ch);
      if (it == values.end()) throw Error(ErrorCode::DomainError, std::string("no value for letter ") + ch);
      term *= it->second;
    }
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Rewriting

ReductionSystem::ReductionSystem(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (const Rule& r : rules_) {
    if (r.pattern.empty()) throw Error(ErrorCode::InvalidSpec, "rule with empty pattern");
    for (const auto& [w, c] : r.replacement.terms()) {
      if (word_compare(w, r.pattern) != WordOrder::Less) compatible_ = false;
    }
  }
}

std::vector<Match> find_matches(const Word& w, const ReductionSystem& system) {
  std::vector<Match> out;
  const std::string& s = w.letters();
  for (std::size_t r = 0; r < system.rules().size(); ++r) {
    const std::string& pat = system.rules()[r].pattern.letters();
    for (auto pos = s.find(pat); pos != std::string::npos; pos = s.find(pat, pos + 1)) out.push_back({r, pos});
  }
  return out;
}

bool is_irreducible(const Word& w, const ReductionSystem& system) {
  for (const Rule& r : system.rules()) {
    if (w.letters().find(r.pattern.letters()) != std::string::npos) return false;
  }
  return true;
}

NCPolynomial apply_match(const Word& w, const Match& m, const ReductionSystem& system) {
  const Rule& rule = system.rules().at(m.rule);
  const std::string& s = w.letters();
  Word left(s.substr(0, m.position));
  Word right(s.substr(m.position + rule.pattern.degree()));
  NCPolynomial out;
  for (const auto& [mid, c] : rule.replacement.terms()) out.add_term(left * mid * right, c);
  return out;
}

namespace {

std::size_t chain_bound(std::size_t degree) { return 10 * (degree + 1) * (degree + 1); }

// Memoized normal forms of single words. Normal forms only depend on the
// system, so the cache is valid for the lifetime of one reduce() call.
class WordReducer {
 public:
  explicit WordReducer(const ReductionSystem& system) : system_(system) {}

  const NCPolynomial& normal_form(const Word& w, std::size_t depth, std::size_t bound) {
    if (auto it = memo_.find(w.letters()); it != memo_.end()) return it->second;
    if (depth > bound) {
      throw Error(ErrorCode::NonTerminating, "rewrite chain longer than " + std::to_string(bound) + " at " + w.str());
    }
    NCPolynomial result;
    std::optional<Match> first;
    for (std::size_t r = 0; r < system_.rules().size() && !first; ++r) {
      auto pos = w.letters().find(system_.rules()[r].pattern.letters());
      if (pos != std::string::npos) first = Match{r, pos};
    }
    if (!first) {
      result = NCPolynomial(w);
    } else {
      NCPolynomial rewritten = apply_match(w, *first, system_);
      for (const auto& [word, c] : rewritten.terms()) {
        result += normal_form(word, depth + 1, bound) * c;
      }
    }
    return memo_.emplace(w.letters(), std::move(result)).first->second;
  }

 private:
  const ReductionSystem& system_;
  std::unordered_map<std::string, NCPolynomial> memo_;
};

void require_compatible(const ReductionSystem& system) {
  if (!system.is_compatible()) {
    throw Error(ErrorCode::IncompatibleOrder, "reduction system is not compatible with the word order");
  }
}

}  // namespace

NCPolynomial reduce(const NCPolynomial& p, const ReductionSystem& system) {
  require_compatible(system);
  WordReducer reducer(system);
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) out += reducer.normal_form(w, 0, chain_bound(w.degree())) * c;
  return out;
}

NCPolynomial reduce_randomized(const NCPolynomial& p, const ReductionSystem& system, std::mt19937_64& rng) {
  require_compatible(system);
  NCPolynomial current = p;
  const std::size_t max_steps = 1'000'000;
  for (std::size_t step = 0; step < max_steps; ++step) {
    std::vector<Word> reducible;
    for (const auto& [w, c] : current.terms()) {
      if (!is_irreducible(w, system)) reducible.push_back(w);
    }
    if (reducible.empty()) return current;
    const Word w = reducible[std::uniform_int_distribution<std::size_t>(0, reducible.size() - 1)(rng)];
    auto matches = find_matches(w, system);
    const Match m = matches[std::uniform_int_distribution<std::size_t>(0, matches.size() - 1)(rng)];
    Coeff c = current.coefficient(w);
    current -= NCPolynomial(w, c);
    current += apply_match(w, m, system) * c;
  }
  throw Error(ErrorCode::NonTerminating, "randomized reduction exceeded step budget");
}

// ---------------------------------------------------------------------------
// Torus / sphere algebra

AlgebraParams::AlgebraParams(Rational mu_, Rational hbar_sq_, double c_)
    : mu(std::move(mu_)), hbar_sq(std::move(hbar_sq_)), c(c_) {
  if (hbar_sq <= 0 || hbar_sq >= 1) {
    throw Error(ErrorCode::DomainError, "hbar^2 must lie in (0, 1), got " + to_string(hbar_sq));
  }
  if (!(c >= 0.0)) throw Error(ErrorCode::DomainError, "c must be nonnegative");
}

double AlgebraParams::hbar() const { return std::sqrt(to_double(hbar_sq)); }
double AlgebraParams::theta() const { return std::atan(hbar()); }
std::complex<double> AlgebraParams::q() const { return std::polar(1.0, 2.0 * theta()); }

namespace {

ReductionSystem torus_shaped_system(const Rational& w_coeff, const Rational& wvw_coeff) {
  const Word W("W"), V("V");
  NCPolynomial f1(W, w_coeff);
  f1.add_term(Word("WVW"), wvw_coeff);
  f1.add_term(Word("VWW"), -1);
  NCPolynomial f2(V, w_coeff);
  f2.add_term(Word("VWV"), wvw_coeff);
  f2.add_term(Word("VVW"), -1);
  return ReductionSystem({{Word("WWV"), f1}, {Word("WVV"), f2}});
}

}  // namespace

ReductionSystem build_torus_system(const AlgebraParams& params) {
  const Rational& h2 = params.hbar_sq;
  Rational w_coeff = 4 * params.mu * h2 / (1 + h2);
  Rational wvw_coeff = 2 * (1 - h2) / (1 + h2);
  w_coeff.canonicalize();
  wvw_coeff.canonicalize();
  return torus_shaped_system(w_coeff, wvw_coeff);
}

ReductionSystem build_symmetrized_torus_system(const Rational& mu, const Rational& hbar_sq) {
  if (hbar_sq <= 0) throw Error(ErrorCode::DomainError, "hbar^2 must be positive");
  Rational lhs = 1 + Rational(4, 3) * hbar_sq;
  Rational w_coeff = 4 * mu * hbar_sq / lhs;
  Rational wvw_coeff = 2 * (1 - Rational(2, 3) * hbar_sq) / lhs;
  w_coeff.canonicalize();
  wvw_coeff.canonicalize();
  return torus_shaped_system(w_coeff, wvw_coeff);
}

OverlapResult check_overlap_resolvable(const ReductionSystem& system, const Word& overlap) {
  auto matches = find_matches(overlap, system);
  std::vector<NCPolynomial> one_step;
  for (const Match& m : matches) {
    NCPolynomial rewritten = apply_match(overlap, m, system);
    if (std::find(one_step.begin(), one_step.end(), rewritten) == one_step.end()) one_step.push_back(rewritten);
  }
  if (one_step.size() < 2) {
    throw Error(ErrorCode::NoOverlap, overlap.str() + " admits fewer than two distinct rewrites");
  }
  OverlapResult result;
  for (const auto& p : one_step) result.normal_forms.push_back(reduce(p, system));
  result.resolvable = true;
  for (std::size_t k = 1; k < result.normal_forms.size(); ++k) {
    NCPolynomial diff = result.normal_forms.front() - result.normal_forms[k];
    if (!diff.is_zero()) {
      result.resolvable = false;
      result.witness = diff;
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Genus-g relations

GenusRelations build_genus_relations(const std::vector<Rational>& p_coeffs, const Rational& hbar_sq) {
  if (p_coeffs.size() < 2) throw Error(ErrorCode::DegreeZero, "P must have degree at least 1");
  if (p_coeffs.back() == 0) throw Error(ErrorCode::InvalidSpec, "leading coefficient of P is zero");

  const NCPolynomial X = NCPolynomial::letter('X');
  const NCPolynomial Y = NCPolynomial::letter('Y');
  const NCPolynomial Z = NCPolynomial::letter('Z');
  const Coeff ih = Coeff::i() * Coeff::h(hbar_sq);

  NCPolynomial p_of_x;
  for (std::size_t r = 0; r < p_coeffs.size(); ++r) p_of_x += power(X, static_cast<unsigned>(r)) * Coeff(p_coeffs[r]);
  const NCPolynomial inner = p_of_x + Y * Y;

  NCPolynomial sum;
  for (std::size_t r = 1; r < p_coeffs.size(); ++r) {
    if (p_coeffs[r] == 0) continue;
    NCPolynomial group;
    for (std::size_t i = 0; i < r; ++i) {
      group += power(X, static_cast<unsigned>(i)) * inner * power(X, static_cast<unsigned>(r - 1 - i));
    }
    sum += group * Coeff(p_coeffs[r]);
  }

  GenusRelations out;
  out.phi_x = sum * ih;
  out.phi_y = (Y * Y * Y * Coeff(2) + Y * p_of_x + p_of_x * Y) * ih;
  out.rules = ReductionSystem({
      {Word("ZY"), Y * Z - out.phi_x},
      {Word("ZX"), X * Z + out.phi_y},
      {Word("YX"), X * Y - Z * ih},
  });
  return out;
}

NCPolynomial consistency_defect(const NCPolynomial& phi_x, const NCPolynomial& phi_y) {
  return commutator(NCPolynomial::letter('X'), phi_x) + commutator(NCPolynomial::letter('Y'), phi_y);
}

bool check_consistency_identity(const std::vector<Rational>& p_coeffs, const Rational& hbar_sq) {
  GenusRelations rel = build_genus_relations(p_coeffs, hbar_sq);
  return consistency_defect(rel.phi_x, rel.phi_y).is_zero();
}

// ---------------------------------------------------------------------------
// Casimir

NCPolynomial casimir_element(const AlgebraParams& params) {
  const NCPolynomial W = NCPolynomial::letter('W');
  const NCPolynomial V = NCPolynomial::letter('V');
  const NCPolynomial D = W * V;
  const NCPolynomial Dt = V * W;
  const NCPolynomial sum = D + Dt - NCPolynomial::constant(Coeff(2 * params.mu));
  const NCPolynomial diff = D - Dt;
  Rational inv_h2 = 1 / params.hbar_sq;
  return sum * sum + diff * diff * Coeff(inv_h2);
}

CasimirReport casimir_residuals(const AlgebraParams& params, const NCPolynomial& casimir) {
  const ReductionSystem system = build_torus_system(params);
  const NCPolynomial W = NCPolynomial::letter('W');
  const NCPolynomial V = NCPolynomial::letter('V');
  CasimirReport report;
  report.w_commutator = reduce(commutator(W, casimir), system);
  report.v_commutator = reduce(commutator(V, casimir), system);
  report.d_commutator = reduce(commutator(W * V, V * W), system);
  return report;
}

bool casimir_centrality(const AlgebraParams& params) {
  return casimir_residuals(params, casimir_element(params)).central();
}

std::vector<Word> enumerate_basis(std::size_t max_degree) {
  std::vector<Word> out;
  for (std::size_t i = 0; i <= max_degree; ++i) {
    for (std::size_t j = 0; i + 2 * j <= max_degree; ++j) {
      for (std::size_t k = 0; i + 2 * j + k <= max_degree; ++k) {
        std::string s(i, 'V');
        for (std::size_t t = 0; t < j; ++t) s += "WV";
        s += std::string(k, 'W');
        out.emplace_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end(), GradedLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational symmetrized_rescale(const Rational& hbar_prime_sq) {
  if (hbar_prime_sq < 0 || hbar_prime_sq >= 3) {
    throw Error(ErrorCode::DomainError, "hbar'^2 must lie in [0, 3)");
  }
  Rational out = 3 * hbar_prime_sq / (3 - hbar_prime_sq);
  out.canonicalize();
  return out;
}

}  // namespace ncsurf
