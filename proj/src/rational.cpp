#include "ncsurf/rational.hpp"

#include <cctype>
#include <cmath>

#include "ncsurf/error.hpp"

namespace ncsurf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::IncompatibleOrder: return "IncompatibleOrder";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NoRealCrossing: return "NoRealCrossing";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::WindowViolation: return "WindowViolation";
    case ErrorCode::StringConditionViolated: return "StringConditionViolated";
    case ErrorCode::NegativeMu: return "NegativeMu";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InconsistentGraph: return "InconsistentGraph";
    case ErrorCode::NotBlockCyclic: return "NotBlockCyclic";
    case ErrorCode::NotSingleLoop: return "NotSingleLoop";
    case ErrorCode::MixedKinds: return "MixedKinds";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::ComplexSqrt: return "ComplexSqrt";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

Rational parse_decimal(std::string_view s, std::string_view original) {
  auto fail = [&] { throw Error(ErrorCode::ParseError, "not a number: '" + std::string(original) + "'"); };
  if (s.empty()) fail();

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') fail();
    ++pos;
    std::string exp_text(s.substr(pos));
    if (exp_text.empty()) fail();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != exp_text.size()) fail();
    exponent += e;
  }

  mpz_class numerator(digits, 10);
  mpz_class scale = 1;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational out = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, text);
  Rational num = parse_decimal(trim(s.substr(0, slash)), text);
  Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational out = num / den;
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rational& r) {
  // mpq_get_d truncates; pick the nearer of the two bracketing doubles.
  const double d = r.get_d();
  if (!std::isfinite(d)) return d;
  const double other = std::nextafter(d, sgn(r) >= 0 ? INFINITY : -INFINITY);
  if (!std::isfinite(other)) return d;
  const Rational ed(d), eo(other);
  return abs(Rational(r - eo)) < abs(Rational(r - ed)) ? other : d;
}

}  // namespace ncsurf
