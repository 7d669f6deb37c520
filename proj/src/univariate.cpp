#include "ncsurf/univariate.hpp"

#include <algorithm>
#include <cmath>

#include "ncsurf/error.hpp"

namespace ncsurf {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::compose(const UniPoly& q) const {
  UniPoly out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * q + UniPoly::constant(*it);
  return out;
}

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UniPoly::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

std::pair<Rational, Rational> UniPoly::evaluate_interval(const Rational& lo, const Rational& hi) const {
  Rational acc_lo = 0, acc_hi = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    // [acc_lo, acc_hi] * [lo, hi] + c
    Rational cands[4] = {acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi};
    acc_lo = *std::min_element(std::begin(cands), std::end(cands)) + *it;
    acc_hi = *std::max_element(std::begin(cands), std::end(cands)) + *it;
  }
  return {acc_lo, acc_hi};
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (auto& v : c) v = -v;
  return UniPoly(std::move(c));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const Rational& s) {
  std::vector<Rational> c = a.coeffs_;
  for (auto& v : c) v *= s;
  return UniPoly(std::move(c));
}

std::string UniPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] == 0) continue;
    if (!out.empty()) out += coeffs_[k] > 0 ? " + " : " - ";
    else if (coeffs_[k] < 0) out += "-";
    Rational mag = abs(coeffs_[k]);
    bool unit = mag == 1 && k > 0;
    if (!unit) out += to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += "x";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DomainError, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    Rational f = rem[static_cast<std::size_t>(k)] / b.leading();
    if (f == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  Rational inv = 1 / x.leading();
  return x * inv;
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  return divmod(p, gcd(p, p.derivative())).first;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UniPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps signs and stops coefficient growth.
    Rational scale = 1 / abs(r.leading());
    seq.push_back(-(r * scale));
  }
  return seq;
}

namespace {

int sign(const Rational& v) { return sgn(v); }

std::size_t variations(const std::vector<int>& signs) {
  std::size_t count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::size_t variations_at(const std::vector<UniPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(sign(p.evaluate(x)));
  return variations(signs);
}

std::size_t variations_at_infinity(const std::vector<UniPoly>& seq, bool positive) {
  std::vector<int> signs;
  for (const auto& p : seq) {
    int s = sign(p.leading());
    if (!positive && p.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

}  // namespace

std::size_t sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b) {
  if (seq.empty() || b <= a) return 0;
  std::size_t va = variations_at(seq, a), vb = variations_at(seq, b);
  return va > vb ? va - vb : 0;
}

std::size_t sturm_count_real(const std::vector<UniPoly>& seq) {
  if (seq.empty()) return 0;
  std::size_t vm = variations_at_infinity(seq, false), vp = variations_at_infinity(seq, true);
  return vm > vp ? vm - vp : 0;
}

Rational cauchy_bound(const UniPoly& p) {
  if (p.degree() <= 0) return 1;
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading())));
  return m + 1;
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& a, const Rational& b) {
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;
  const UniPoly sf = squarefree_part(p);
  const auto seq = sturm_sequence(sf);
  std::vector<std::pair<Rational, Rational>> stack = {{a, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    std::size_t n = sturm_count(seq, lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({lo, hi});
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.push_back({lo, mid});
    stack.push_back({mid, hi});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p) {
  Rational bound = cauchy_bound(p);
  return isolate_real_roots(p, -bound, bound);
}

RootInterval refine_root(const UniPoly& p, RootInterval iv, const Rational& width) {
  if (iv.lo == iv.hi) return iv;
  int s_hi = sign(p.evaluate(iv.hi));
  if (s_hi == 0) return {iv.hi, iv.hi};
  // The root lies in (lo, hi]; p(hi) ≠ 0, so p changes sign strictly inside.
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int s_mid = sign(p.evaluate(mid));
    if (s_mid == 0) return {mid, mid};
    if (s_mid == s_hi) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
  }
  return iv;
}

double root_to_double(const UniPoly& p, const RootInterval& iv) {
  const UniPoly sf = squarefree_part(p);
  // The scale must come from the refined interval, not the coarse isolating one.
  RootInterval fine = iv;
  for (;;) {
    const double scale = std::max(1.0, std::min(std::fabs(fine.lo.get_d()), std::fabs(fine.hi.get_d())));
    const Rational width(1e-15 * scale);
    if (fine.hi - fine.lo <= width) break;
    fine = refine_root(sf, fine, width);
  }
  return to_double(Rational((fine.lo + fine.hi) / 2));
}

RootCount count_simple_roots(const UniPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::DomainError, "zero polynomial");
  RootCount out;
  out.total_real = sturm_count_real(sturm_sequence(squarefree_part(p)));
  out.all_simple = gcd(p, p.derivative()).degree() <= 0;
  return out;
}

}  // namespace ncsurf
