#pragma once

// Exact arithmetic in free associative algebras over the letters {W, V} and
// {X, Y, Z}, rewriting with reduction systems, and the identity checks for
// the torus/sphere algebra and the genus-g relations.

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ncsurf/coefficient.hpp"
#include "ncsurf/rational.hpp"

namespace ncsurf {

/// A monomial of the free algebra: a finite sequence of letters. The empty
/// word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::string letters);

  const std::string& letters() const { return letters_; }
  std::size_t degree() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  friend Word operator*(const Word& a, const Word& b) { return Word(a.letters_ + b.letters_); }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

  /// "1" for the empty word, otherwise the juxtaposed letters.
  std::string str() const { return letters_.empty() ? "1" : letters_; }

 private:
  std::string letters_;
};

/// Graded order used for storage and serialization: degree, then lexicographic.
struct GradedLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.letters() < b.letters();
  }
};

/// Number of pairs k < k' whose letters appear in decreasing alphabet rank
/// (V < W, X < Y < Z). For words over {W, V} this counts the W...V pairs.
std::size_t misordering_index(const Word& w);

enum class WordOrder { Less, Greater, Equal, Incomparable };

/// The partial order compatible with the torus reduction system: lower total
/// degree is smaller; among permutations of the same letters the smaller
/// misordering index is smaller; anything else is incomparable.
WordOrder word_compare(const Word& p, const Word& q);

class NCPolynomial {
 public:
  using Terms = std::map<Word, Coeff, GradedLess>;

  NCPolynomial() = default;
  explicit NCPolynomial(const Word& w, const Coeff& c = Coeff(1));
  static NCPolynomial constant(const Coeff& c) { return NCPolynomial(Word(), c); }
  static NCPolynomial letter(char ch) { return NCPolynomial(Word(std::string(1, ch))); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;
  std::size_t size() const { return terms_.size(); }
  Coeff coefficient(const Word& w) const;

  void add_term(const Word& w, const Coeff& c);

  NCPolynomial operator-() const;
  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  NCPolynomial& operator*=(const Coeff& c);
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend NCPolynomial operator*(NCPolynomial a, const Coeff& c) { return a *= c; }
  friend NCPolynomial operator*(const Coeff& c, NCPolynomial a) { return a *= c; }
  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) { return a.terms_ == b.terms_; }

  /// Canonical text: terms in graded order, e.g. "(4/3)*W + (-1)*VWW + (2/3)*WVW".
  std::string str() const;

 private:
  Terms terms_;
};

NCPolynomial commutator(const NCPolynomial& a, const NCPolynomial& b);
NCPolynomial power(const NCPolynomial& a, unsigned n);

/// Algebra homomorphism defined on letters; letters without an image are kept.
NCPolynomial substitute(const NCPolynomial& p, const std::map<char, NCPolynomial>& images);

/// Value after replacing letters by commuting complex numbers and h by `h_value`.
std::complex<double> evaluate_commutative(const NCPolynomial& p,
                                          const std::map<char, std::complex<double>>& values,
                                          double h_value);

struct Rule {
  Word pattern;
  NCPolynomial replacement;
};

class ReductionSystem {
 public:
  ReductionSystem() = default;
  explicit ReductionSystem(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  /// True iff every monomial of every replacement is Less than its pattern.
  bool is_compatible() const { return compatible_; }

 private:
  std::vector<Rule> rules_;
  bool compatible_ = true;
};

/// One possible rewrite: rule index and the letter offset of its pattern.
struct Match {
  std::size_t rule;
  std::size_t position;
  friend bool operator==(const Match&, const Match&) = default;
};

std::vector<Match> find_matches(const Word& w, const ReductionSystem& system);
bool is_irreducible(const Word& w, const ReductionSystem& system);
/// left · replacement · right for the given match.
NCPolynomial apply_match(const Word& w, const Match& m, const ReductionSystem& system);

/// Normal form: rewrites the leftmost occurrence of the first applicable rule
/// until no pattern occurs. Throws IncompatibleOrder when the system is not
/// compatible with word_compare and NonTerminating when a rewrite chain
/// exceeds 10·(degree+1)² steps.
NCPolynomial reduce(const NCPolynomial& p, const ReductionSystem& system);

/// Same fixpoint reached by rewriting a randomly chosen match of a randomly
/// chosen reducible term at every step.
NCPolynomial reduce_randomized(const NCPolynomial& p, const ReductionSystem& system, std::mt19937_64& rng);

/// Exact parameters of the torus/sphere algebra. c is the Casimir value / 4.
struct AlgebraParams {
  Rational mu;
  Rational hbar_sq;
  double c = 0.0;

  /// Throws DomainError unless 0 < hbar_sq < 1 and c >= 0.
  AlgebraParams(Rational mu, Rational hbar_sq, double c = 0.0);

  double hbar() const;
  double theta() const;              // arctan ℏ, in (0, π/4)
  std::complex<double> q() const;    // e^{2iθ}
};

/// σ₁: W²V → (4μℏ²/(1+ℏ²))W + (2(1−ℏ²)/(1+ℏ²))WVW − VW²,
/// σ₂: WV² → (4μℏ²/(1+ℏ²))V + (2(1−ℏ²)/(1+ℏ²))VWV − V²W.
ReductionSystem build_torus_system(const AlgebraParams& params);

/// Relations of the fully symmetrized ordering, written as a reduction system
/// in the same shape as build_torus_system.
ReductionSystem build_symmetrized_torus_system(const Rational& mu, const Rational& hbar_sq);

struct OverlapResult {
  bool resolvable = false;
  NCPolynomial witness;                     // zero iff resolvable
  std::vector<NCPolynomial> normal_forms;   // one per distinct first rewrite
};

/// Reduces every distinct one-step rewrite of `overlap` and compares the
/// normal forms. Throws NoOverlap if fewer than two distinct rewrites exist.
OverlapResult check_overlap_resolvable(const ReductionSystem& system, const Word& overlap);

struct GenusRelations {
  NCPolynomial phi_x;
  NCPolynomial phi_y;
  ReductionSystem rules;  // ZY → YZ − φ̂_X, ZX → XZ + φ̂_Y, YX → XY − iℏZ
};

/// Relations over {X, Y, Z} for P(x) = Σ a_r x^r; iℏ is carried exactly as
/// i·h with h² = hbar_sq. Throws DegreeZero if P is constant and InvalidSpec
/// if the leading coefficient vanishes.
GenusRelations build_genus_relations(const std::vector<Rational>& p_coeffs, const Rational& hbar_sq);

/// [X, φ̂_X] + [Y, φ̂_Y] expanded in the free algebra.
NCPolynomial consistency_defect(const NCPolynomial& phi_x, const NCPolynomial& phi_y);
bool check_consistency_identity(const std::vector<Rational>& p_coeffs, const Rational& hbar_sq);

/// Ĉ = (D + D̃ − 2μ)² + (D − D̃)²/ℏ² with D = WV, D̃ = VW.
NCPolynomial casimir_element(const AlgebraParams& params);

struct CasimirReport {
  NCPolynomial w_commutator;   // normal form of [W, Ĉ]
  NCPolynomial v_commutator;   // normal form of [V, Ĉ]
  NCPolynomial d_commutator;   // normal form of [D, D̃]
  bool central() const { return w_commutator.is_zero() && v_commutator.is_zero() && d_commutator.is_zero(); }
};

CasimirReport casimir_residuals(const AlgebraParams& params, const NCPolynomial& casimir);
bool casimir_centrality(const AlgebraParams& params);

/// Words V^i (WV)^j W^k with i + 2j + k ≤ max_degree, in graded order.
std::vector<Word> enumerate_basis(std::size_t max_degree);

/// 3ℏ'²/(3 − ℏ'²): the ℏ² of the symmetrized ordering that matches ℏ'.
/// Requires 0 ≤ hbar_prime_sq < 3 (DomainError otherwise).
Rational symmetrized_rescale(const Rational& hbar_prime_sq);

}  // namespace ncsurf
