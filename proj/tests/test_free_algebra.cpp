#include <doctest.h>

#include <random>
#include <set>

#include "ncsurf/error.hpp"
#include "ncsurf/free_algebra.hpp"

using namespace ncsurf;

namespace {

Rational random_rational(std::mt19937_64& rng, int num_max, int den_max, bool allow_zero = true) {
  std::uniform_int_distribution<int> num(-num_max, num_max), den(1, den_max);
  for (;;) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    if (allow_zero || r != 0) return r;
  }
}

Rational random_hbar_sq(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(2, 40);
  int d = den(rng);
  std::uniform_int_distribution<int> num(1, d - 1);
  Rational r(num(rng), d);
  r.canonicalize();
  return r;
}

Word random_word(std::mt19937_64& rng, std::size_t max_degree) {
  std::uniform_int_distribution<std::size_t> len(0, max_degree);
  std::bernoulli_distribution coin(0.5);
  std::string s;
  for (std::size_t k = len(rng); k > 0; --k) s += coin(rng) ? 'W' : 'V';
  return Word(s);
}

// Every word over {W, V} of exactly the given degree.
std::vector<Word> all_words(std::size_t degree) {
  std::vector<Word> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << degree); ++mask) {
    std::string s;
    for (std::size_t b = 0; b < degree; ++b) s += (mask >> b) & 1 ? 'W' : 'V';
    out.emplace_back(s);
  }
  return out;
}

NCPolynomial poly(std::initializer_list<std::pair<const char*, Coeff>> terms) {
  NCPolynomial p;
  for (const auto& [w, c] : terms) p.add_term(Word(w), c);
  return p;
}

}  // namespace

TEST_CASE("misordering index counts W-before-V pairs") {
  CHECK(misordering_index(Word("WV")) == 1);
  CHECK(misordering_index(Word("VW")) == 0);
  CHECK(misordering_index(Word("WWVV")) == 4);
  CHECK(misordering_index(Word("")) == 0);
  CHECK(misordering_index(Word("WVWV")) == 3);
}

TEST_CASE("word_compare") {
  CHECK(word_compare(Word("WV"), Word("VW")) == WordOrder::Greater);
  CHECK(word_compare(Word("W"), Word("VV")) == WordOrder::Less);
  CHECK(word_compare(Word("WV"), Word("VV")) == WordOrder::Incomparable);
  CHECK(word_compare(Word("WVW"), Word("WVW")) == WordOrder::Equal);
  CHECK(word_compare(Word("VVW"), Word("W")) == WordOrder::Greater);
}

TEST_CASE("torus system coefficients") {
  SUBCASE("mu = 0, hbar^2 = 1/3 drops the linear term") {
    ReductionSystem R = build_torus_system(AlgebraParams(0, Rational(1, 3)));
    CHECK(R.rules()[0].replacement == poly({{"WVW", 1}, {"VWW", -1}}));
    CHECK(R.rules()[0].replacement.size() == 2);
    CHECK(R.rules()[1].replacement.size() == 2);
  }
  SUBCASE("mu = 1, hbar^2 = 1/2") {
    ReductionSystem R = build_torus_system(AlgebraParams(1, Rational(1, 2)));
    CHECK(R.rules()[0].replacement.coefficient(Word("W")) == Coeff(Rational(4, 3)));
    CHECK(R.rules()[0].replacement.size() == 3);
    CHECK(R.rules()[1].replacement.coefficient(Word("V")) == Coeff(Rational(4, 3)));
    CHECK(R.rules()[1].replacement.coefficient(Word("VWV")) == Coeff(Rational(2, 3)));
  }
  SUBCASE("replacements are below their patterns") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
      ReductionSystem R = build_torus_system(AlgebraParams(random_rational(rng, 9, 5), random_hbar_sq(rng)));
      CHECK(R.is_compatible());
      for (const auto& rule : R.rules()) {
        for (const auto& [w, c] : rule.replacement.terms()) CHECK(word_compare(w, rule.pattern) == WordOrder::Less);
      }
    }
  }
  CHECK_THROWS_AS(AlgebraParams(1, Rational(1)), Error);
  CHECK_THROWS_AS(AlgebraParams(1, Rational(0)), Error);
}

TEST_CASE("reduce examples") {
  const AlgebraParams params(1, Rational(1, 3));
  const ReductionSystem R = build_torus_system(params);
  CHECK(reduce(NCPolynomial(Word("WWV")), R).str() == "(1)*W + (-1)*VWW + (1)*WVW");
  CHECK(reduce(NCPolynomial(Word("")), R) == NCPolynomial(Word("")));
  CHECK(reduce(NCPolynomial(Word("VWVW")), R) == NCPolynomial(Word("VWVW")));
  CHECK(reduce(NCPolynomial(), R).is_zero());

  const AlgebraParams general(Rational(3, 7), Rational(2, 5));
  const ReductionSystem G = build_torus_system(general);
  // 4μℏ²/(1+ℏ²) = (24/35)/(7/5) = 24/49, 2(1−ℏ²)/(1+ℏ²) = (6/5)/(7/5) = 6/7.
  CHECK(reduce(NCPolynomial(Word("WWV")), G) == poly({{"W", Coeff(Rational(24, 49))}, {"WVW", Coeff(Rational(6, 7))}, {"VWW", -1}}));
}

TEST_CASE("incompatible systems are rejected") {
  ReductionSystem bad({{Word("VW"), NCPolynomial(Word("WV"))}});
  CHECK_FALSE(bad.is_compatible());
  CHECK_THROWS_AS(reduce(NCPolynomial(Word("VW")), bad), Error);
}

TEST_CASE("normal forms: idempotent, irreducible, linear") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const AlgebraParams params(random_rational(rng, 6, 4), random_hbar_sq(rng));
    const ReductionSystem R = build_torus_system(params);
    NCPolynomial p, q;
    for (int t = 0; t < 4; ++t) {
      p.add_term(random_word(rng, 7), random_rational(rng, 5, 3));
      q.add_term(random_word(rng, 7), random_rational(rng, 5, 3));
    }
    const NCPolynomial rp = reduce(p, R), rq = reduce(q, R);
    CHECK(reduce(rp, R) == rp);
    for (const auto& [w, c] : rp.terms()) {
      CHECK(w.letters().find("WWV") == std::string::npos);
      CHECK(w.letters().find("WVV") == std::string::npos);
    }
    const Coeff alpha(random_rational(rng, 7, 3), random_rational(rng, 7, 3));
    const Coeff beta(random_rational(rng, 7, 3));
    CHECK(reduce(p * alpha + q * beta, R) == rp * alpha + rq * beta);
  }
}

TEST_CASE("confluence: random rewrite orders agree on random words") {
  std::mt19937_64 rng(77);
  const AlgebraParams params(Rational(5, 4), Rational(1, 3));
  const ReductionSystem R = build_torus_system(params);
  for (int t = 0; t < 100; ++t) {
    const Word w = random_word(rng, 8);
    const NCPolynomial canonical = reduce(NCPolynomial(w), R);
    for (int rep = 0; rep < 3; ++rep) {
      CAPTURE(w.str());
      CHECK(reduce_randomized(NCPolynomial(w), R, rng) == canonical);
    }
  }
}

TEST_CASE("W^2V^2 overlap is resolvable for random parameters") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const AlgebraParams params(random_rational(rng, 20, 7), random_hbar_sq(rng));
    const OverlapResult res = check_overlap_resolvable(build_torus_system(params), Word("WWVV"));
    CHECK(res.resolvable);
    CHECK(res.witness.is_zero());
    CHECK(res.normal_forms.size() == 2);
  }
}

TEST_CASE("corrupted sigma_1 breaks confluence") {
  const Rational mu(3, 2), h2(1, 3);
  const AlgebraParams params(mu, h2);
  const ReductionSystem good = build_torus_system(params);
  std::vector<Rule> rules = good.rules();
  // Replace the 4μℏ²/(1+ℏ²) coefficient of σ₁ by 4μ/(1+ℏ²).
  Rational corrupted = 4 * mu / (1 + h2);
  rules[0].replacement.add_term(Word("W"), Coeff(Rational(corrupted - rules[0].replacement.coefficient(Word("W")).re())));
  const OverlapResult res = check_overlap_resolvable(ReductionSystem(rules), Word("WWVV"));
  CHECK_FALSE(res.resolvable);
  CHECK_FALSE(res.witness.is_zero());
}

TEST_CASE("single rule has no overlap") {
  const ReductionSystem R = build_torus_system(AlgebraParams(1, Rational(1, 2)));
  ReductionSystem single({R.rules()[0]});
  CHECK_THROWS_AS(check_overlap_resolvable(single, Word("WWV")), Error);
  try {
    check_overlap_resolvable(single, Word("WWV"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoOverlap);
  }
}

TEST_CASE("basis words are exactly the irreducible words") {
  const ReductionSystem R = build_torus_system(AlgebraParams(1, Rational(1, 3)));
  const std::size_t max_degree = 7;
  std::set<Word> basis;
  for (const Word& w : enumerate_basis(max_degree)) basis.insert(w);
  std::set<Word> irreducible;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    for (const Word& w : all_words(d)) {
      if (is_irreducible(w, R)) irreducible.insert(w);
    }
  }
  CHECK(basis == irreducible);
}

TEST_CASE("enumerate_basis") {
  CHECK(enumerate_basis(0) == std::vector<Word>{Word("")});
  CHECK(enumerate_basis(1) == std::vector<Word>{Word(""), Word("V"), Word("W")});
  const auto b2 = enumerate_basis(2);
  CHECK(b2.size() == 7);
  CHECK(b2 == std::vector<Word>{Word(""), Word("V"), Word("W"), Word("VV"), Word("VW"), Word("WV"), Word("WW")});
  for (std::size_t d = 0; d <= 6; ++d) {
    std::size_t triples = 0;
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = 0; i + 2 * j <= d; ++j)
        for (std::size_t k = 0; i + 2 * j + k <= d; ++k) ++triples;
    CHECK(enumerate_basis(d).size() == triples);
  }
}

TEST_CASE("Casimir element is central") {
  CHECK(casimir_centrality(AlgebraParams(1, Rational(1, 3))));
  CHECK(casimir_centrality(AlgebraParams(0, Rational(1, 2))));
  std::mt19937_64 rng(99);
  for (int t = 0; t < 5; ++t) CHECK(casimir_centrality(AlgebraParams(random_rational(rng, 9, 4), random_hbar_sq(rng))));
}

TEST_CASE("Casimir without the 1/hbar^2 factor is not central") {
  const AlgebraParams params(1, Rational(1, 3));
  const NCPolynomial W = NCPolynomial::letter('W'), V = NCPolynomial::letter('V');
  const NCPolynomial sum = W * V + V * W - NCPolynomial::constant(Coeff(2));
  const NCPolynomial diff = W * V - V * W;
  const CasimirReport rep = casimir_residuals(params, sum * sum + diff * diff);
  CHECK_FALSE(rep.central());
  CHECK(rep.d_commutator.is_zero());
}

TEST_CASE("torus relations vanish commutatively at order hbar^2") {
  // pattern − replacement evaluated with commuting w, v equals
  // 4ℏ²/(1+ℏ²)·(w²v − μw), which is O(ℏ²).
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  const AlgebraParams params(Rational(7, 5), Rational(1, 4));
  const ReductionSystem R = build_torus_system(params);
  const double h2 = 0.25, mu = 1.4;
  for (int t = 0; t < 5; ++t) {
    std::complex<double> w(u(rng), u(rng)), v(u(rng), u(rng));
    const auto& s1 = R.rules()[0];
    std::complex<double> val = evaluate_commutative(NCPolynomial(s1.pattern) - s1.replacement, {{'W', w}, {'V', v}}, 0.0);
    std::complex<double> expect = 4 * h2 / (1 + h2) * (w * w * v - mu * w);
    CHECK(std::abs(val - expect) < 1e-12);
  }
}

TEST_CASE("genus relations specialize to the torus/sphere case") {
  const Rational mu(6, 5), h2(1, 3);
  const GenusRelations rel = build_genus_relations({-mu, 0, 1}, h2);
  const NCPolynomial X = NCPolynomial::letter('X'), Y = NCPolynomial::letter('Y');
  const Coeff ih = Coeff::i() * Coeff::h(h2);
  const NCPolynomial expect_x = (X * X * X * Coeff(2) + X * Y * Y + Y * Y * X - X * Coeff(2 * mu)) * ih;
  const NCPolynomial expect_y = (Y * Y * Y * Coeff(2) + Y * X * X + X * X * Y - Y * Coeff(2 * mu)) * ih;
  CHECK(rel.phi_x == expect_x);
  CHECK(rel.phi_y == expect_y);
  CHECK(rel.rules.rules().size() == 3);

  const GenusRelations zero_mu = build_genus_relations({0, 0, 1}, h2);
  CHECK(zero_mu.phi_y == (Y * Y * Y * Coeff(2) + Y * X * X + X * X * Y) * ih);

  CHECK_THROWS_AS(build_genus_relations({Rational(1)}, h2), Error);
  CHECK_THROWS_AS(build_genus_relations({1, 2, 0}, h2), Error);
}

TEST_CASE("phi_X coefficients for a random quartic P") {
  // Coefficient of X^i Y² X^j is iℏ·a_{i+j+1}; of X^m it is iℏ·Σ_r r·a_r·a_{m−r+1}.
  std::mt19937_64 rng(8);
  std::vector<Rational> a(5);
  for (auto& v : a) v = random_rational(rng, 9, 5, false);
  const Rational h2(2, 7);
  const Coeff ih = Coeff::i() * Coeff::h(h2);
  const GenusRelations rel = build_genus_relations(a, h2);
  std::size_t expected_terms = 0;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; i + j <= 3; ++j) {
      Word w(std::string(static_cast<std::size_t>(i), 'X') + "YY" + std::string(static_cast<std::size_t>(j), 'X'));
      CHECK(rel.phi_x.coefficient(w) == Coeff(a[static_cast<std::size_t>(i + j + 1)]) * ih);
      ++expected_terms;
    }
  }
  for (int m = 0; m <= 7; ++m) {
    Rational c = 0;
    for (int r = 1; r <= 4; ++r) {
      int idx = m - r + 1;
      if (idx >= 0 && idx <= 4) c += r * a[static_cast<std::size_t>(r)] * a[static_cast<std::size_t>(idx)];
    }
    CHECK(rel.phi_x.coefficient(Word(std::string(static_cast<std::size_t>(m), 'X'))) == Coeff(c) * ih);
    if (c != 0) ++expected_terms;
  }
  CHECK(rel.phi_x.size() == expected_terms);
}

TEST_CASE("consistency identity holds for random P and fails when perturbed") {
  CHECK(check_consistency_identity({Rational(-1), 0, 1}, Rational(1, 3)));
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> a(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : a) v = random_rational(rng, 12, 6);
    a.back() = random_rational(rng, 12, 6, false);
    const Rational h2 = random_hbar_sq(rng);
    CHECK(check_consistency_identity(a, h2));

    GenusRelations rel = build_genus_relations(a, h2);
    NCPolynomial perturbed = rel.phi_x;
    // Pure X^m terms commute with X, so perturb the Y² coefficient.
    perturbed.add_term(Word("YY"), Coeff::i() * Coeff::h(h2) * Coeff(Rational(1, 97)));
    CHECK_FALSE(consistency_defect(perturbed, rel.phi_y).is_zero());
  }
}

TEST_CASE("genus relations vanish commutatively at hbar = 0") {
  const GenusRelations rel = build_genus_relations({Rational(-2), Rational(1, 3), 0, Rational(-1, 2), 1}, Rational(1, 5));
  const std::map<char, std::complex<double>> pt = {{'X', 0.3}, {'Y', -1.1}, {'Z', 0.7}};
  for (const auto& rule : rel.rules.rules()) {
    auto val = evaluate_commutative(NCPolynomial(rule.pattern) - rule.replacement, pt, 0.0);
    CHECK(std::abs(val) < 1e-12);
  }
}

TEST_CASE("symmetrized ordering") {
  CHECK(symmetrized_rescale(Rational(1, 3)) == Rational(3, 8));
  CHECK(symmetrized_rescale(Rational(0)) == 0);
  CHECK(symmetrized_rescale(Rational(3, 4)) == 1);
  CHECK_THROWS_AS(AlgebraParams(1, symmetrized_rescale(Rational(3, 4))), Error);
  CHECK_THROWS_AS(symmetrized_rescale(Rational(3)), Error);

  // With ℏ² = 3ℏ'²/(3 − ℏ'²) the symmetrized relations coincide with the
  // standard ones at parameter ℏ', μ unchanged.
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const Rational mu = random_rational(rng, 9, 4), hp = random_hbar_sq(rng);
    const ReductionSystem sym = build_symmetrized_torus_system(mu, symmetrized_rescale(hp));
    const ReductionSystem std_sys = build_torus_system(AlgebraParams(mu, hp));
    for (std::size_t r = 0; r < 2; ++r) CHECK(sym.rules()[r].replacement == std_sys.rules()[r].replacement);
    CHECK(check_overlap_resolvable(sym, Word("WWVV")).resolvable);
  }
}

TEST_CASE("NCPolynomial serialization and ring laws") {
  const NCPolynomial W = NCPolynomial::letter('W'), V = NCPolynomial::letter('V');
  CHECK(NCPolynomial().str() == "0");
  CHECK(NCPolynomial::constant(Coeff(Rational(-1, 2))).str() == "(-1/2)");
  CHECK((W * V - V * W).str() == "(-1)*VW + (1)*WV");
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    NCPolynomial a, b, c;
    for (int k = 0; k < 3; ++k) {
      a.add_term(random_word(rng, 3), random_rational(rng, 4, 3));
      b.add_term(random_word(rng, 3), random_rational(rng, 4, 3));
      c.add_term(random_word(rng, 3), random_rational(rng, 4, 3));
    }
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
  CHECK(substitute(W * V, {{'W', V}, {'V', W}}) == V * W);
}
